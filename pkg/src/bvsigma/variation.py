"""Curve variation, two-dimensional variation and the BV norm on finite sets."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Optional, Sequence

import numpy as np

from .cutlp import CutCover, solve_cut_cover
from .functions import FunctionOnSet, as_finite_set
from .geometry import PlanarPoint, achievable_labelings, pt, vf, vf_counts


class Status(str, Enum):
    EXACT = "Exact"
    LOWER_BOUND = "LowerBound"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class SearchConfig:
    """Knobs for :func:`var_search`.

    ``certify`` turns on the cut-cover bound (exact value + pruning);
    ``node_budget`` caps the number of expanded search nodes.
    """

    max_list_length: int = 8
    stabilization_window: int = 2
    exhaustive_threshold: int = 10
    certify: bool = True
    node_budget: int = 50_000

    def __post_init__(self):
        for name in ("max_list_length", "stabilization_window", "exhaustive_threshold", "node_budget"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive")


@dataclass(frozen=True)
class SearchStats:
    lists_explored: int = 0
    max_length: int = 0
    complete: bool = True
    stabilized: bool = False
    best_by_length: tuple = ()


@dataclass(frozen=True)
class VarEstimate:
    """Result of a variation computation.

    ``certificate`` is a point list with ``cvar/vf == certificate_value``.  When
    the cut-cover program is certified, ``value`` is the exact variation and may
    exceed ``certificate_value`` (the supremum is then only approached by ever
    longer lists).
    """

    value: object
    certificate: tuple
    status: Status
    certificate_value: object
    upper: object = None
    search_stats: SearchStats = field(default_factory=SearchStats)

    @property
    def attained(self) -> bool:
        return self.certificate_value == self.value


def cvar(f: FunctionOnSet, S: Sequence) -> object:
    """Sum of successive absolute differences of ``f`` along the list ``S``."""
    S = [pt(p) for p in S]
    if not S:
        raise ValueError("empty point list")
    vals = [f(p) for p in S]
    zero = Fraction(0) if f.exact else 0.0
    return sum((abs(b - a) for a, b in zip(vals, vals[1:])), zero)


def ratio(f: FunctionOnSet, S: Sequence) -> object:
    c = cvar(f, S)
    if len(S) == 1:
        return c
    v = vf(S)
    return c / v if f.exact else c / float(v)


def _check_domain(f: FunctionOnSet, sigma) -> tuple:
    pts = as_finite_set(sigma)
    if pts != f.domain:
        raise ValueError("domain of f must equal the set")
    return pts


def _dist_matrix(vals: list, exact: bool):
    m = len(vals)
    if exact:
        exact_d = [[abs(vals[i] - vals[j]) for j in range(m)] for i in range(m)]
    else:
        exact_d = [[abs(complex(vals[i]) - complex(vals[j])) for j in range(m)] for i in range(m)]
    return exact_d, np.array([[float(v) for v in row] for row in exact_d])


def _collinear(points: Sequence[PlanarPoint]) -> bool:
    if len(points) <= 2:
        return True
    p, q = points[0], points[-1]
    if p == q:
        return all(r == p for r in points)
    return all((q.x - p.x) * (r.y - p.y) == (q.y - p.y) * (r.x - p.x) for r in points)


def var_collinear(f: FunctionOnSet, sigma: Iterable) -> object:
    """Classical variation along the line: sum of jumps between neighbours."""
    pts = _check_domain(f, sigma)
    if not _collinear(pts):
        raise ValueError("points are not collinear")
    # sorted tuples are already ordered along any common line
    return cvar(f, pts)


def var_exhaustive(f: FunctionOnSet, sigma: Iterable, max_len: int) -> VarEstimate:
    """Brute-force maximum of cvar/vf over all lists of length <= ``max_len``.

    Lists with two equal consecutive points are skipped.  Guardrail: at most 6
    points and length 7.
    """
    pts = _check_domain(f, sigma)
    m = len(pts)
    if m > 6 or max_len > 7:
        raise ValueError("var_exhaustive is limited to 6 points and lists of length 7")
    if max_len < 1:
        raise ValueError("max_len must be positive")
    vals = f.values()
    zero = Fraction(0) if f.exact else 0.0
    best, best_seq, explored = zero, (0,), 0
    labels = achievable_labelings(pts)
    exact_d, _ = _dist_matrix(vals, f.exact)
    for length in range(2, max_len + 1):
        seqs = np.array(
            [s for s in itertools.product(range(m), repeat=length) if all(a != b for a, b in zip(s, s[1:]))],
            dtype=np.int64,
        ).reshape(-1, length)
        if not len(seqs):
            continue
        explored += len(seqs)
        # one row per list, maximised over all labellings
        lab = labels[:, seqs].astype(np.int16)  # (K, B, L)
        a, b = lab[:, :, :-1], lab[:, :, 1:]
        hit = (a * b) < 0
        prev_off = np.ones_like(hit)
        prev_off[:, :, 1:] = lab[:, :, :-2] != 0
        hit |= (a == 0) & prev_off
        hit[:, :, -1] |= (a[:, :, -1] != 0) & (b[:, :, -1] == 0)
        vfs = hit.sum(axis=2).max(axis=0)
        for row, v in zip(seqs, vfs):
            c = sum((exact_d[i][j] for i, j in zip(row, row[1:])), zero)
            r = c / int(v) if f.exact else c / float(v)
            if r > best:
                best, best_seq = r, tuple(int(i) for i in row)
    cert = tuple(pts[i] for i in best_seq)
    stats = SearchStats(lists_explored=explored + m, max_length=max_len, complete=True)
    return VarEstimate(best, cert, Status.EXACT, best, None, stats)


@lru_cache(maxsize=256)
def _chain_seeds(pts: tuple) -> list:
    """Orders of the points along a family of generic directions."""
    dirs = {(1, 0), (0, 1), (1, 1), (1, -1)}
    for p, q in itertools.combinations(pts, 2):
        dx, dy = q.x - p.x, q.y - p.y
        dirs.add((-dy, dx))
        dirs.add((dy, -dx))
    seeds = []
    for dx, dy in sorted(dirs):
        order = sorted(range(len(pts)), key=lambda k: (dx * pts[k].x + dy * pts[k].y, -dy * pts[k].x + dx * pts[k].y))
        if tuple(order) not in seeds:
            seeds.append(tuple(order))
    return seeds


class _Search:
    """Iterative-deepening branch and bound over index lists."""

    def __init__(self, pts, vals, exact, cfg: SearchConfig, cover: Optional[CutCover]):
        self.pts, self.vals, self.exact, self.cfg = pts, vals, exact, cfg
        self.m = len(pts)
        self.labels = achievable_labelings(pts).astype(np.int16)
        self.exact_d, self.dist = _dist_matrix(vals, exact)
        self.D = float(self.dist.max())
        self.cover = cover
        if cover is not None:
            self.U = float(cover.upper)
            self.target = cover.value if cover.certified else None
            self.slack = cover.pair_slack(self.dist)
        else:
            self.U = float("inf")
            self.target = None
            self.slack = np.zeros((self.m, self.m))
        lab = self.labels
        # opp[i][:, j]: i and j strictly opposite; onto[i][:, j]: i off the line, j on it
        self.opp = [(lab[:, [i]] * lab) < 0 for i in range(self.m)]
        self.onto = [(lab[:, [i]] != 0) & (lab == 0) for i in range(self.m)]
        self.zero = lab == 0
        self.best = Fraction(0) if exact else 0.0
        self.best_key = (1, (0,))
        self.nodes = 0
        self.complete = True
        self.done = False
        self.margin = 1e-9 * max(1.0, self.D)
        self.depth = 1

    def _value(self, seq) -> object:
        c = sum((self.exact_d[i][j] for i, j in zip(seq, seq[1:])), Fraction(0) if self.exact else 0.0)
        v = int(vf_counts(self.labels, seq).max())
        return c / v if self.exact else c / float(v)

    def offer(self, seq) -> None:
        r = self._value(seq)
        key = (len(seq), tuple(seq))
        if r > self.best or (r == self.best and key < self.best_key):
            self.best, self.best_key = r, key
        if self.target is not None and self.best >= self.target - (0 if self.exact else self.margin):
            self.done = True

    def _stop(self) -> bool:
        return self.done and self.best_key[0] <= self.depth

    def run(self):
        for seed in _chain_seeds(self.pts):
            self.offer(seed)
        best_by_len = []
        for depth in range(2, self.cfg.max_list_length + 1):
            if self.done and self.best_key[0] <= depth:
                break
            self.depth = depth
            for start in range(self.m):
                core = np.zeros(len(self.labels), dtype=np.int16)
                self._expand([start], core, 0.0, 0.0, 1, depth)
                if not self.complete or self._stop():
                    break
            best_by_len.append(self.best)
            if not self.complete:
                break
        w = self.cfg.stabilization_window
        stable = len(best_by_len) > w and best_by_len[-1] == best_by_len[-1 - w]
        return best_by_len, stable

    def _expand(self, seq, core, c, waste, v, depth):
        if self.nodes >= self.cfg.node_budget:
            self.complete = False
            return
        self.nodes += 1
        last = seq[-1]
        i = len(seq) - 1  # index of the new segment
        enter = self.zero[:, last] if i == 0 else self.zero[:, last] & (self.labels[:, seq[-2]] != 0)
        inc = self.opp[last] | enter[:, None]
        child_core = core[:, None] + inc
        child_vf = (child_core + self.onto[last]).max(axis=0)
        child_c = c + self.dist[last]
        child_waste = waste + self.slack[last]
        r = depth - len(seq) - 1  # segments still allowed after the child
        best_f = float(self.best)
        for j in range(self.m):
            if j == last:
                continue
            vj = int(child_vf[j])
            cj = child_c[j]
            if cj / vj >= best_f - self.margin:
                self.offer(seq + [j])
                best_f = float(self.best)
                if self._stop():
                    return
            if r <= 0:
                continue
            b1 = (cj + r * self.D) / vj
            b2 = self.U - child_waste[j] / min(vj + r, depth - 1)
            if min(b1, b2, self.U) < best_f - self.margin:
                continue
            seq.append(j)
            self._expand(seq, child_core[:, j], cj, child_waste[j], vj, depth)
            seq.pop()
            if not self.complete or self._stop():
                return
            best_f = float(self.best)


def var_search(f: FunctionOnSet, sigma: Iterable, cfg: SearchConfig = SearchConfig()) -> VarEstimate:
    """Two-dimensional variation of ``f`` on the finite set ``sigma``.

    Lists are searched by iterative-deepening branch and bound (no two equal
    consecutive points, length <= ``cfg.max_list_length``).  With
    ``cfg.certify`` the cut-cover program supplies the exact value and the
    pruning bound; otherwise the status follows the exhaustion/stabilisation
    rule: Exact only for small sets whose search completed and whose best value
    did not move over the last ``stabilization_window`` lengths.
    """
    pts = _check_domain(f, sigma)
    vals = f.values()
    exact = f.exact
    if len(pts) == 1:
        zero = Fraction(0) if exact else 0.0
        return VarEstimate(zero, pts, Status.EXACT, zero, zero, SearchStats(1, 1, True, True))
    cover = solve_cut_cover(pts, vals) if cfg.certify else None
    search = _Search(pts, vals, exact, cfg, cover)
    best_by_len, stable = search.run()
    cert = tuple(pts[k] for k in search.best_key[1])
    stats = SearchStats(
        lists_explored=search.nodes,
        max_length=len(best_by_len) + 1,
        complete=search.complete,
        stabilized=stable,
        best_by_length=tuple(best_by_len),
    )
    best = search.best
    if cover is not None and cover.certified:
        return VarEstimate(cover.value, cert, Status.EXACT, best, cover.value, stats)
    if cover is not None:
        return VarEstimate(best, cert, Status.LOWER_BOUND, best, cover.upper, stats)
    ok = len(pts) <= cfg.exhaustive_threshold and search.complete and stable
    return VarEstimate(best, cert, Status.EXACT if ok else Status.LOWER_BOUND, best, None, stats)


@dataclass(frozen=True)
class NormReport:
    norm_name: str
    value: object
    status: Status
    parameters: dict = field(default_factory=dict)
    upper: object = None

    @property
    def exact(self) -> bool:
        return self.status is Status.EXACT


def bv_norm(f: FunctionOnSet, sigma: Iterable, cfg: SearchConfig = SearchConfig()) -> NormReport:
    """``sup|f| + var(f, sigma)``."""
    est = var_search(f, sigma, cfg)
    sup = f.sup_norm()
    upper = None if est.upper is None else sup + est.upper
    return NormReport("BV", sup + est.value, est.status, {"certificate": est.certificate}, upper)
