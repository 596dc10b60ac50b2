"""Cut-cover linear program for the two-dimensional variation of a finite set.

For a finite set, every line that misses all points splits it into two parts
(a *cut*).  With ``d(p, q) = |f(p) - f(q)|``:

* upper side: weights ``w_g >= 0`` on cuts with
  ``sum(w_g : g separates p, q) >= d(p, q)`` for every pair give
  ``cvar(f, S) <= sum_g w_g * crossings_g(S) <= vf(S) * sum(w)``;
* lower side: a pair flow ``y >= 0`` with at most unit load on every cut is
  approached by long closed walks that use pair ``{p, q}`` about ``y_pq``
  times per unit of variation factor (lines through points add at most one
  crossing).

So the variation equals the common optimum of the two programs.  The float
optimum from HiGHS is turned into an exact certificate by rationalising both
solutions and checking feasibility and equal objectives in rational arithmetic.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np
from scipy.optimize import linprog

from .geometry import achievable_labelings

_DOUBLE_TOL = 1e-9


@dataclass(frozen=True)
class CutStructure:
    points: tuple
    cuts: np.ndarray  # (G, m) bool: side of each point, canonical up to swap
    pairs: tuple  # ((i, j), ...) with i < j
    separates: np.ndarray  # (G, P) bool
    cuts_of_pair: tuple  # per pair, indices of the cuts separating it
    pairs_of_cut: tuple  # per cut, indices of the pairs it separates


@lru_cache(maxsize=256)
def cut_structure(points: tuple) -> CutStructure:
    labels = achievable_labelings(points)
    m = len(points)
    strict = labels[(labels != 0).all(axis=1) & (labels < 0).any(axis=1)]
    cuts = strict > 0
    pairs = tuple(itertools.combinations(range(m), 2))
    if pairs:
        ii = np.array([p[0] for p in pairs])
        jj = np.array([p[1] for p in pairs])
        sep = cuts[:, ii] != cuts[:, jj]
    else:
        sep = np.zeros((len(cuts), 0), dtype=bool)
    cuts.setflags(write=False)
    sep.setflags(write=False)
    by_pair = tuple(tuple(np.flatnonzero(sep[:, k]).tolist()) for k in range(sep.shape[1]))
    by_cut = tuple(tuple(np.flatnonzero(sep[g]).tolist()) for g in range(sep.shape[0]))
    return CutStructure(points, cuts, pairs, sep, by_pair, by_cut)


@dataclass(frozen=True)
class CutCover:
    """Solution of the cut-cover program.

    ``value`` is the exact optimum when ``certified``; otherwise ``lower`` and
    ``upper`` are rigorous bounds and ``value`` is the float optimum.
    """

    value: object
    lower: object
    upper: object
    certified: bool
    weights: np.ndarray  # (G,) float cut weights
    flow: np.ndarray  # (P,) float pair flow
    structure: CutStructure

    def pair_slack(self, dist: np.ndarray) -> np.ndarray:
        """``sum(w_g : g separates p, q) - d(p, q)`` as an (m, m) float array."""
        m = len(self.structure.points)
        cover = self.weights @ self.structure.separates if len(self.weights) else np.zeros(0)
        out = np.zeros((m, m))
        for k, (i, j) in enumerate(self.structure.pairs):
            out[i, j] = out[j, i] = max(cover[k] - dist[i, j], 0.0)
        return out


def _lcm_den(values) -> int:
    den = 1
    for v in values:
        den = den * v.denominator // math.gcd(den, v.denominator)
    return den


def _rationalise(x: np.ndarray, max_den: int) -> list:
    return [Fraction(0) if abs(v) < 1e-13 else Fraction(float(v)).limit_denominator(max_den) for v in x]


def _check_exact(cs: CutStructure, dist, w, y):
    """Exact feasibility of both programs; returns the common objective or None."""
    if any(v < 0 for v in w) or any(v < 0 for v in y):
        return None
    upper = sum(w, Fraction(0))
    lower = sum((d * v for d, v in zip(dist, y) if v), Fraction(0))
    if upper != lower:
        return None
    for k, cols in enumerate(cs.cuts_of_pair):
        if sum((w[g] for g in cols if w[g]), Fraction(0)) < dist[k]:
            return None
    for rows in cs.pairs_of_cut:
        if sum((y[k] for k in rows if y[k]), Fraction(0)) > 1:
            return None
    return upper


def _repair_upper(cs: CutStructure, dist, w) -> Fraction:
    """Make rational cut weights exactly feasible by topping up deficits."""
    w = [max(v, Fraction(0)) for v in w]
    for k, cols in enumerate(cs.cuts_of_pair):
        deficit = dist[k] - sum((w[g] for g in cols), Fraction(0))
        if deficit > 0:
            w[cols[0]] += deficit
    return sum(w, Fraction(0))


def _repair_lower(cs: CutStructure, dist, y) -> Fraction:
    y = [max(v, Fraction(0)) for v in y]
    load = max((sum((y[k] for k in rows), Fraction(0)) for rows in cs.pairs_of_cut), default=Fraction(0))
    scale = max(load, Fraction(1))
    return sum((d * v for d, v in zip(dist, y)), Fraction(0)) / scale


def solve_cut_cover(points: tuple, values: list) -> CutCover:
    """Solve the cut-cover program for the value list aligned with ``points``."""
    cs = cut_structure(points)
    exact = all(isinstance(v, Fraction) for v in values)
    P = len(cs.pairs)
    if exact:
        dist = [abs(values[i] - values[j]) for i, j in cs.pairs]
    else:
        dist = [abs(complex(values[i]) - complex(values[j])) for i, j in cs.pairs]
    G = cs.separates.shape[0]
    zero = Fraction(0) if exact else 0.0
    if P == 0 or all(d == 0 for d in dist):
        return CutCover(zero, zero, zero, True, np.zeros(G), np.zeros(P), cs)

    d_float = np.array([float(d) for d in dist])
    res = linprog(
        -d_float,
        A_ub=cs.separates.astype(float),
        b_ub=np.ones(G),
        bounds=(0, None),
        method="highs",
    )
    if res.status != 0:  # pragma: no cover - the program is always feasible and bounded
        raise RuntimeError(f"cut-cover program failed: {res.message}")
    y = np.maximum(res.x, 0.0)
    w = np.maximum(-res.ineqlin.marginals, 0.0)
    opt = float(-res.fun)

    if not exact:
        cover = w @ cs.separates
        ok = (cover >= d_float - _DOUBLE_TOL).all() and (y @ cs.separates.T <= 1 + _DOUBLE_TOL).all()
        ok = ok and abs(w.sum() - opt) <= _DOUBLE_TOL * max(1.0, opt)
        return CutCover(opt, opt, opt, bool(ok), w, y, cs)

    base = _lcm_den(dist)
    for max_den in (base * 60, base * 10_000, 10**7):
        wq = _rationalise(w, max_den)
        yq = _rationalise(y, max_den)
        value = _check_exact(cs, dist, wq, yq)
        if value is not None:
            return CutCover(value, value, value, True, np.array([float(v) for v in wq]), y, cs)
    wq = _rationalise(w, 10**9)
    yq = _rationalise(y, 10**9)
    lo = _repair_lower(cs, dist, yq)
    hi = _repair_upper(cs, dist, wq)
    return CutCover(opt, lo, hi, False, w, y, cs)
