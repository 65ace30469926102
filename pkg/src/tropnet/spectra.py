"""Eigenvalues of real symmetric matrices and the tableaux they induce."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import NoConvergence, NotSymmetric
from .hive import HornTriple
from .multipath import Tableau


@dataclass(frozen=True)
class Spectrum:
    eigenvalues: tuple[float, ...]
    residual: float


def _as_symmetric(m) -> np.ndarray:
    a = np.array(m, dtype=float)
    if a.size == 0:
        a = a.reshape(0, 0)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise NotSymmetric(f"expected a square matrix, got shape {a.shape}")
    scale = max(1.0, float(np.abs(a).max(initial=0.0)))
    if np.abs(a - a.T).max(initial=0.0) > 1e-12 * scale:
        raise NotSymmetric("matrix is not symmetric")
    return (a + a.T) / 2


def eigenvalues_symmetric(m, tol: float = 1e-12, max_sweeps: int = 100) -> Spectrum:
    """Cyclic Jacobi rotations; eigenvalues returned in decreasing order."""
    a = _as_symmetric(m)
    n = a.shape[0]
    if n == 0:
        return Spectrum((), 0.0)
    orig = a.copy()
    v = np.eye(n)
    norm = float(np.linalg.norm(a))
    mask = ~np.eye(n, dtype=bool)
    for _ in range(max_sweeps):
        off = float(np.linalg.norm(a[mask]))
        if off <= tol * max(norm, 1e-300):
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                ap, aq = a[:, p].copy(), a[:, q].copy()
                a[:, p], a[:, q] = c * ap - s * aq, s * ap + c * aq
                ap, aq = a[p, :].copy(), a[q, :].copy()
                a[p, :], a[q, :] = c * ap - s * aq, s * ap + c * aq
                vp, vq = v[:, p].copy(), v[:, q].copy()
                v[:, p], v[:, q] = c * vp - s * vq, s * vp + c * vq
    else:
        raise NoConvergence(f"Jacobi did not converge in {max_sweeps} sweeps")
    vals = np.diag(a)
    order = np.argsort(-vals, kind="stable")
    resid = float(np.abs(orig @ v - v * vals).max(initial=0.0))
    return Spectrum(tuple(float(vals[j]) for j in order), resid)


def principal_tableau(m) -> Tableau:
    """``t[k, i]`` = sum of the i largest eigenvalues of the leading k x k block."""
    a = _as_symmetric(m)
    n = a.shape[0]
    rows = [[0.0]]
    for k in range(1, n + 1):
        ev = eigenvalues_symmetric(a[:k, :k]).eigenvalues
        row = [0.0]
        for x in ev:
            row.append(row[-1] + x)
        rows.append(row)
    return Tableau(n, rows)


def random_symmetric(n: int, rng: np.random.Generator, scale: float = 1.0) -> np.ndarray:
    a = rng.uniform(-scale, scale, size=(n, n))
    return (a + a.T) / 2


def sample_horn_instance(n: int, seed: int, scale: float = 1.0):
    """Random ``A``, ``B``, ``C = A + B`` and the triple of their spectra."""
    rng = np.random.default_rng(seed)
    a = random_symmetric(n, rng, scale)
    b = random_symmetric(n, rng, scale)
    c = a + b
    triple = HornTriple(*(eigenvalues_symmetric(x).eigenvalues for x in (a, b, c)))
    return a, b, c, triple


def rationalize_triple(triple: HornTriple, denominator: int = 10**6) -> HornTriple:
    """Round to ``1/denominator`` and move the trace defect into the last ``nu``."""
    conv = lambda v: [Fraction(round(x * denominator), denominator) for x in v]
    lam, mu, nu = conv(triple.lam), conv(triple.mu), conv(triple.nu)
    if nu:
        nu[-1] = sum(lam) + sum(mu) - sum(nu[:-1])
    return HornTriple(tuple(lam), tuple(mu), tuple(nu))
