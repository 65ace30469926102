"""Rhombus cones on tableaux, boundary maps and Horn feasibility."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Sequence

from .errors import NonFiniteEntry, NTooLarge, TraceMismatch
from .fme import solve
from .multipath import Tableau
from .tropical import to_weight

DEFAULT_HORN_CAP = 5


class Violation(NamedTuple):
    family: int
    k: int
    i: int
    lhs: object
    rhs: object


def _rhombi(n: int, families: Sequence[int]):
    """Yield (family, k, i, plus, minus) index pairs for the rhombus inequalities."""
    for k in range(n):
        for i in range(1, k + 1):
            if 1 in families:
                yield 1, k, i, ((k + 1, i), (k, i - 1)), ((k + 1, i - 1), (k, i))
            if 2 in families:
                yield 2, k, i, ((k + 1, i), (k, i)), ((k + 1, i + 1), (k, i - 1))
            if 3 in families:
                yield 3, k, i, ((k, i), (k, i - 1)), ((k + 1, i), (k - 1, i - 1))


def rhombus_inequalities(n: int, families=(1, 2, 3)):
    return list(_rhombi(n, families))


def _check(t: Tableau, families, slack) -> tuple[bool, list[Violation]]:
    bad = []
    for fam, k, i, plus, minus in _rhombi(t.n, families):
        lhs = t[plus[0]] + t[plus[1]]
        rhs = t[minus[0]] + t[minus[1]]
        if not lhs + slack >= rhs:
            bad.append(Violation(fam, k, i, lhs, rhs))
    return not bad, bad


def in_C2(t: Tableau, slack=0) -> tuple[bool, list[Violation]]:
    return _check(t, (1, 2), slack)


def in_C3(t: Tableau, slack=0) -> tuple[bool, list[Violation]]:
    return _check(t, (1, 2, 3), slack)


class GZData:
    """Rows ``h^(k) = (h^(k)_1, ..., h^(k)_k)`` for ``k = 1..n``."""

    __slots__ = ("n", "rows")

    def __init__(self, n: int, rows):
        rows = tuple(tuple(r) for r in rows)
        if len(rows) != n or any(len(r) != k + 1 for k, r in enumerate(rows)):
            raise ValueError("GZ rows must have lengths 1..n")
        self.n, self.rows = n, rows

    def __getitem__(self, ki):
        k, i = ki
        if not 0 < i <= k <= self.n:
            raise KeyError(ki)
        return self.rows[k - 1][i - 1]

    def __eq__(self, other):
        return isinstance(other, GZData) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return f"GZData({[list(map(str, r)) for r in self.rows]})"


def _require_finite(t: Tableau):
    if not t.is_finite():
        raise NonFiniteEntry("tableau has -inf entries")


def boundary_horizontal(t: Tableau) -> GZData:
    _require_finite(t)
    return GZData(t.n, [[t[k, i] - t[k, i - 1] for i in range(1, k + 1)]
                        for k in range(1, t.n + 1)])


def gz_to_tableau(h: GZData) -> Tableau:
    """Inverse of :func:`boundary_horizontal` on the slice ``t[k, 0] = 0``."""
    rows = [[Fraction(0)]]
    for k in range(1, h.n + 1):
        row = [Fraction(0)]
        for i in range(1, k + 1):
            row.append(row[-1] + h[k, i])
        rows.append(row)
    return Tableau(h.n, rows)


def in_GZ(h: GZData, slack=0) -> bool:
    for k in range(1, h.n):
        for i in range(1, k + 1):
            if not (h[k + 1, i] + slack >= h[k, i] and h[k, i] + slack >= h[k + 1, i + 1]):
                return False
    return True


@dataclass(frozen=True)
class HornTriple:
    lam: tuple
    mu: tuple
    nu: tuple

    def __post_init__(self):
        if not len(self.lam) == len(self.mu) == len(self.nu):
            raise ValueError("lambda, mu, nu must have equal length")

    @property
    def n(self) -> int:
        return len(self.lam)

    def is_sorted(self) -> bool:
        return all(all(a >= b for a, b in zip(v, v[1:])) for v in (self.lam, self.mu, self.nu))

    def trace_defect(self):
        return sum(self.lam) + sum(self.mu) - sum(self.nu)

    @classmethod
    def of(cls, lam, mu, nu) -> "HornTriple":
        conv = lambda v: tuple(to_weight(x) for x in v)
        return cls(conv(lam), conv(mu), conv(nu))


def boundary_outer(t: Tableau) -> HornTriple:
    """Outer boundary differences; check ``is_sorted()`` on the result."""
    _require_finite(t)
    n = t.n
    lam = tuple(t[i, 0] - t[i - 1, 0] for i in range(1, n + 1))
    mu = tuple(t[n, i] - t[n, i - 1] for i in range(1, n + 1))
    nu = tuple(t[i, i] - t[i - 1, i - 1] for i in range(1, n + 1))
    return HornTriple(lam, mu, nu)


def horn_boundary(triple: HornTriple) -> dict:
    """Boundary entries of a tableau with ``t[0,0] = 0`` and outer boundary ``triple``."""
    n = triple.n
    fixed = {(0, 0): Fraction(0)}
    for k in range(1, n + 1):
        fixed[k, 0] = fixed[k - 1, 0] + triple.lam[k - 1]
        fixed[k, k] = fixed[k - 1, k - 1] + triple.nu[k - 1]
    for i in range(1, n + 1):
        fixed[n, i] = fixed[n, i - 1] + triple.mu[i - 1]
    return fixed


def horn_feasible(triple: HornTriple, cap: int = DEFAULT_HORN_CAP, slack=0):
    """Is there a tableau in C3 with ``t[0,0] = 0`` whose outer boundary is ``triple``?

    Returns ``(feasible, witness_or_None)``.  ``slack`` relaxes each inequality.
    """
    triple = HornTriple.of(triple.lam, triple.mu, triple.nu)
    if triple.trace_defect() != 0:
        raise TraceMismatch(f"sum(lambda) + sum(mu) - sum(nu) = {triple.trace_defect()}")
    n = triple.n
    if n > cap:
        raise NTooLarge(f"n={n} exceeds the elimination cap {cap}")
    slack = Fraction(slack)
    fixed = horn_boundary(triple)
    interior = [(k, i) for k in range(1, n) for i in range(1, k)]
    system = []
    for _, _, _, plus, minus in _rhombi(n, (1, 2, 3)):
        coeffs: dict = {}
        const = slack
        for idx, sign in ((plus[0], 1), (plus[1], 1), (minus[0], -1), (minus[1], -1)):
            if idx in fixed:
                const += sign * fixed[idx]
            else:
                coeffs[idx] = coeffs.get(idx, 0) + sign
        system.append((coeffs, const))
    ok, x = solve(system, interior)
    if not ok:
        return False, None
    values = {**fixed, **x}
    return True, Tableau.from_function(n, lambda k, i: values[k, i])
