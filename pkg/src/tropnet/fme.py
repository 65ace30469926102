"""Exact Fourier-Motzkin elimination for small rational systems.

A constraint ``(coeffs, const)`` stands for ``sum(c * x[v]) + const >= 0``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Hashable, Optional, Sequence

Constraint = tuple[dict, Fraction]


def _normalise(coeffs: dict, const: Fraction) -> Optional[Constraint]:
    coeffs = {v: Fraction(c) for v, c in coeffs.items() if c != 0}
    if not coeffs:
        return None
    scale = abs(coeffs[min(coeffs, key=repr)])
    return {v: c / scale for v, c in coeffs.items()}, const / scale


def _prune(system: list[Constraint]) -> list[Constraint]:
    """Among constraints with equal (normalised) left sides keep the tightest."""
    best: dict = {}
    for coeffs, const in system:
        key = tuple(sorted(coeffs.items(), key=lambda kv: repr(kv[0])))
        if key not in best or const < best[key][1]:
            best[key] = (coeffs, const)
    return list(best.values())


def _value(coeffs: dict, const: Fraction, x: dict) -> Fraction:
    return const + sum(c * x[v] for v, c in coeffs.items())


def solve(system: Sequence[Constraint], order: Sequence[Hashable]):
    """Decide feasibility; returns ``(feasible, assignment_or_None)``.

    Variables are eliminated in ``order``; back-substitution takes the midpoint
    of each variable's admissible interval (or its finite end when one-sided).
    """
    current: list[Constraint] = []
    for coeffs, const in system:
        norm = _normalise(coeffs, Fraction(const))
        if norm is None:
            if const < 0:
                return False, None
            continue
        current.append(norm)
    current = _prune(current)
    stages = []
    for var in order:
        pos, neg, rest = [], [], []
        for coeffs, const in current:
            c = coeffs.get(var, 0)
            (pos if c > 0 else neg if c < 0 else rest).append((coeffs, const))
        stages.append((var, pos, neg))
        new = list(rest)
        for cp, kp in pos:
            for cn, kn in neg:
                a, b = -cn[var], cp[var]
                merged = {}
                for v in set(cp) | set(cn):
                    merged[v] = a * cp.get(v, 0) + b * cn.get(v, 0)
                merged.pop(var, None)
                const = a * kp + b * kn
                norm = _normalise(merged, const)
                if norm is None:
                    if const < 0:
                        return False, None
                    continue
                new.append(norm)
        current = _prune(new)
    # anything left has no variables by construction
    x: dict = {}
    for var, pos, neg in reversed(stages):
        lo = hi = None
        for coeffs, const in pos:
            c = coeffs[var]
            others = {v: k for v, k in coeffs.items() if v != var}
            bound = -_value(others, const, x) / c
            lo = bound if lo is None else max(lo, bound)
        for coeffs, const in neg:
            c = coeffs[var]
            others = {v: k for v, k in coeffs.items() if v != var}
            bound = -_value(others, const, x) / c
            hi = bound if hi is None else min(hi, bound)
        if lo is not None and hi is not None:
            if lo > hi:  # pragma: no cover - excluded by elimination
                return False, None
            x[var] = (lo + hi) / 2
        else:
            x[var] = lo if lo is not None else hi if hi is not None else Fraction(0)
    return True, x
