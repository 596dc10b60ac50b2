"""Worked computations on small sets, each returning a report dict with a ``passed`` flag."""
from __future__ import annotations

import random
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from typing import Callable, Sequence

from .csets import harmonic, kray_set, parabola_set, truncate
from .functions import FunctionOnSet
from .geometry import ORIGIN, PlanarPoint, pt, vf
from .isomorphisms import (
    compose_operator,
    interleaving_demo,
    lpam_apply,
    lpam_construct,
    random_lpam_instance,
    swap_bijection_demo,
    PointBijection,
    Continuity,
)
from .norms import check_spoke_equivalence, d_norm, psi_ell1
from .variation import SearchConfig, Status, bv_norm
from .isomorphisms import canonical_kray

PARABOLA_MAX_N = 12


def _map(fn: Callable, items: Sequence, threads: int = 1) -> list:
    """Ordered map, optionally over a thread pool; results keep input order."""
    if threads <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=threads) as ex:
        return list(ex.map(fn, items))


def d_sharpness(cfg: SearchConfig = SearchConfig()) -> dict:
    """chi_0 and the constant 1 on {-1, 1} u {0}: D = 1, BV = 3 and D = 2, BV = 1."""
    s1 = [pt(-1), pt(1)]
    sigma = s1 + [ORIGIN]
    rows = []
    for name, f in (("chi_0", FunctionOnSet.indicator(sigma, [ORIGIN])), ("one", FunctionOnSet.constant(sigma, 1))):
        d = d_norm(f, s1, ORIGIN, cfg)
        b = bv_norm(f, sigma, cfg)
        rows.append({"function": name, "D": d.value, "BV": b.value, "status": [d.status, b.status]})
    ok = (rows[0]["D"], rows[0]["BV"], rows[1]["D"], rows[1]["BV"]) == (1, 3, 2, 1)
    ok = ok and all(s is Status.EXACT for r in rows for s in r["status"])
    return {"demo": "d-sharpness", "rows": rows, "passed": bool(ok)}


def bv_no_hom(N: int = 8, size: int = 100, seed: int = 0, cfg: SearchConfig = SearchConfig()) -> dict:
    rep = swap_bijection_demo(N, size, seed, cfg)
    return {
        "demo": "bv-no-hom",
        "N": N,
        "family_size": size,
        "max_ratio": rep.max_ratio,
        "min_ratio": rep.min_ratio,
        "max_witness": rep.max_witness,
        "min_witness": rep.min_witness,
        "tainted": rep.tainted,
        "passed": bool(rep.passed),
    }


def parabola_lists(n: int) -> list:
    """Increasing list ``[l_0 + i l_0^2, ..., l_n + i l_n^2]`` with ``l_j = 1/(n + 1 - j)``."""
    return [PlanarPoint(Fraction(1, n + 1 - j), Fraction(1, (n + 1 - j) ** 2)) for j in range(n + 1)]


def parabola_family(N: int, size: int = 20, seed: int = 0) -> list:
    sigma = truncate(kray_set([0], harmonic), N)
    rng = random.Random(seed)
    fam = [FunctionOnSet.from_rule(sigma, lambda p: p.x), FunctionOnSet.indicator(sigma, [ORIGIN])]
    while len(fam) < size:
        fam.append(FunctionOnSet({p: rng.randint(-3, 3) for p in sigma}))
    return fam[:size]


def parabola(N: int = 8, size: int = 20, seed: int = 0, cfg: SearchConfig = SearchConfig(), threads: int = 1) -> dict:
    """The map t -> t + i t^2 from {0} u {1/j} onto the parabola set.

    Checks ``||Phi f|| <= ||f|| <= 2 ||Phi f||`` on a family and that increasing
    lists on the parabola have vf 2 (1 for a single segment).
    """
    if N > PARABOLA_MAX_N:
        raise ValueError(f"N is limited to {PARABOLA_MAX_N} (search cost)")
    sigma = truncate(kray_set([0], harmonic), N)
    tau = truncate(parabola_set(), N)
    h = PointBijection.from_forward({p: PlanarPoint(p.x, p.x * p.x) for p in sigma}, Continuity.HOMEOMORPHISM)
    assert h.target == tau
    vfs = {n: vf(parabola_lists(n)) for n in range(1, 7)}
    vf_ok = all(v == (1 if n == 1 else 2) for n, v in vfs.items())

    def one(f):
        a = bv_norm(f, sigma, cfg)
        b = bv_norm(compose_operator(f, h), tau, cfg)
        ok = a.exact and b.exact and b.value <= a.value <= 2 * b.value
        return {"sigma": a.value, "tau": b.value, "exact": a.exact and b.exact, "holds": bool(ok)}

    rows = _map(one, parabola_family(N, size, seed), threads)
    return {
        "demo": "parabola",
        "N": N,
        "vf_increasing": {str(n): v for n, v in vfs.items()},
        "rows": rows,
        "passed": bool(vf_ok and all(r["holds"] for r in rows)),
    }


def interleave(k: int = 2, l: int = 1, n: int = 8, N=None) -> dict:
    rep = interleaving_demo(k, l, n, N)
    rows = [{"n": m, "sp_sigma": a, "sp_tau": b, "bound": 2 * m} for m, a, b in rep.rows]
    return {"demo": "interleave", "k": k, "l": l, "rows": rows, "passed": bool(rep.passed)}


def lpam(count: int = 50, seed: int = 0, sizes=(3, 4, 5)) -> dict:
    """Random (C, alpha, x0, y0): the defining conditions, checked exactly, plus sample points."""
    rng = random.Random(seed)
    rows = []
    for t in range(count):
        n = sizes[t % len(sizes)]
        C, alpha, x0, y0 = random_lpam_instance(rng, n)
        h = lpam_construct(C, alpha, x0, y0)
        conds = dict(h.conditions)
        # boundary and shared edges, sampled at rational points
        vs = C.vertices
        pts_ok = True
        for j in range(n):
            a, b = vs[j], vs[(j + 1) % n]
            for s in (Fraction(1, 3), Fraction(1, 2), Fraction(5, 7)):
                on_side = a + (b - a).scale(s)
                on_edge = a + (x0 - a).scale(s)
                pts_ok &= lpam_apply(h, on_side) == alpha(on_side)
                pts_ok &= h.pieces[j](on_edge) == h.pieces[j - 1](on_edge)
        conds["samples"] = bool(pts_ok)
        rows.append({"n": n, "conditions": conds, "passed": all(conds.values())})
    return {"demo": "lpam", "count": count, "rows": rows, "passed": all(r["passed"] for r in rows)}


def spoke_equiv(ks=(1, 2, 3), N: int = 6, size: int = 100, seed: int = 0, cfg: SearchConfig = SearchConfig(), threads: int = 1) -> dict:
    """``Sp/(2k+1) <= BV <= 3 Sp`` on strict k-ray truncations."""
    rng = random.Random(seed)
    rows = []
    for k in ks:
        _, part = canonical_kray(k, N)
        pts = part.points()
        fams = [FunctionOnSet({p: rng.randint(-3, 3) for p in pts}) for _ in range(size)]
        checks = _map(lambda f: check_spoke_equivalence(f, part, cfg), fams, threads)
        worst_low = min(c.mid / c.lhs for c in checks if c.lhs) if any(c.lhs for c in checks) else None
        worst_high = max(c.mid / c.rhs for c in checks if c.rhs) if any(c.rhs for c in checks) else None
        rows.append(
            {
                "k": k,
                "functions": size,
                "all_exact": all(c.status is Status.EXACT for c in checks),
                "all_hold": all(c.passed for c in checks),
                "min_bv_over_lhs": worst_low,
                "max_bv_over_rhs": worst_high,
            }
        )
    return {"demo": "spoke-equiv", "N": N, "rows": rows, "passed": all(r["all_hold"] and r["all_exact"] for r in rows)}


def psi(N: int = 10) -> dict:
    """First-difference map on {0} u {1/n}: values for three sample functions and linearity."""
    pts = truncate(kray_set([0], harmonic), N)
    samples = {
        "chi_1": FunctionOnSet.indicator(pts, [pt(1)]),
        "one": FunctionOnSet.constant(pts, 1),
        "identity": FunctionOnSet.from_rule(pts, lambda p: p.x),
    }
    rows = []
    for name, f in samples.items():
        seq, norm = psi_ell1(f)
        bv = bv_norm(f, pts)
        rows.append({"function": name, "sequence": list(seq), "ell1": norm, "bv": bv.value})
    f, g = samples["chi_1"], samples["identity"]
    lhs = psi_ell1(f * 3 + g)[0]
    rhs = tuple(3 * a + b for a, b in zip(psi_ell1(f)[0], psi_ell1(g)[0]))
    return {"demo": "psi", "N": N, "rows": rows, "linear": lhs == rhs, "passed": lhs == rhs}


DEMOS = {
    "d-sharpness": d_sharpness,
    "bv-no-hom": bv_no_hom,
    "parabola": parabola,
    "interleave": interleave,
    "lpam": lpam,
    "spoke-equiv": spoke_equiv,
    "psi": psi,
}
