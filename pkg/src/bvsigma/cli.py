"""Command-line front end: JSON manifests in, deterministic JSON reports out.

Exit codes: 0 success, 2 invalid input, 3 a demo's check failed.
"""
from __future__ import annotations

import argparse
import enum
import json
import math
import os
import random
import sys
from fractions import Fraction
from importlib import resources

import jsonschema
import numpy as np

from . import __version__, demos
from .csets import CSetSpec, classify_rays, kray_set, parabola_set, real_cset, spiral_set, truncate
from .functions import FunctionOnSet
from .geometry import PlanarPoint, pt, vf
from .isomorphisms import (
    AffineMap,
    ConvexPolygon,
    PointBijection,
    distortion_estimate,
    lpam_construct,
    lpam_transport,
    move_isolated_point,
    order_matching_homeo,
)
from .membership import CustomRule, FunctionRule, Indicator, Poly2, ac_test_kray, harmonic_increment_rule
from .norms import d_norm, spoke_norm
from .variation import SearchConfig, bv_norm, cvar, var_search

EXIT_OK, EXIT_INVALID, EXIT_DEMO_FAILED = 0, 2, 3


class InputError(ValueError):
    pass


# -- JSON encoding ------------------------------------------------------------------


def encode(obj):
    """JSON-ready form: rationals as "p/q", complex as [re, im], points as [x, y]."""
    if isinstance(obj, enum.Enum):
        return obj.value
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, PlanarPoint):
        return [str(obj.x), str(obj.y)]
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        v = float(obj)
        return v if math.isfinite(v) else str(v)
    if isinstance(obj, complex):
        return [encode(obj.real), encode(obj.imag)]
    if isinstance(obj, dict):
        return {str(k): encode(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [encode(v) for v in obj]
    raise TypeError(f"cannot encode {type(obj).__name__}")


def dumps(report: dict) -> str:
    return json.dumps(encode(report), sort_keys=True, indent=2)


# -- manifest decoding -----------------------------------------------------------------


def _schema() -> dict:
    return json.loads(resources.files("bvsigma").joinpath("schemas/manifest.json").read_text())


def validate_manifest(data) -> dict:
    try:
        jsonschema.validate(data, _schema(), cls=jsonschema.Draft202012Validator)
    except jsonschema.ValidationError as exc:
        path = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise InputError(f"manifest invalid at {path}: {exc.message}") from None
    return data


def load_manifest(path: str) -> dict:
    try:
        text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
        data = json.loads(text)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read manifest: {exc}") from None
    return validate_manifest(data)


def _scalar(v):
    if isinstance(v, float):
        return v
    return Fraction(v)


def _value(v):
    if isinstance(v, list):
        return complex(float(v[0]), float(v[1]))
    return _scalar(v)


def _point(v) -> PlanarPoint:
    return pt(_scalar(v[0]), _scalar(v[1]))


def _points_arg(text: str) -> list:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"--points is not JSON: {exc}") from None
    validate_manifest({"list": data})
    return [_point(p) for p in data]


def build_spec(s: dict) -> CSetSpec:
    b = s["builder"]
    if b == "real_cset":
        return real_cset(s.get("rule", "harmonic"), s.get("negative_rule"))
    if b == "kray_set":
        if "angles" not in s:
            raise InputError("kray_set needs angles (multiples of pi)")
        angles = [_scalar(a) for a in s["angles"]]
        return kray_set(angles, s.get("rule", "harmonic"), [_point(p) for p in s.get("extras", [])])
    if b == "parabola":
        return parabola_set()
    return spiral_set(s.get("precision", 10**6))


def build_set(s: dict) -> tuple:
    """Finite point set and, for builder sets, the spec it was truncated from."""
    if "points" in s:
        return tuple(sorted({_point(p) for p in s["points"]})), None
    spec = build_spec(s)
    if "N" not in s:
        raise InputError("builder sets need a truncation N")
    return truncate(spec, s["N"]), spec


def build_rule(r: dict, spec=None) -> FunctionRule:
    kind = r["kind"]
    if kind == "poly2":
        return Poly2({(n, m): _value(c) for n, m, c in r["coefficients"]})
    if kind == "indicator":
        return Indicator(_point(p) for p in r["points"])
    if kind == "identity":
        return Poly2.identity()
    if kind == "constant":
        c = _value(r["value"])
        return CustomRule(lambda p: c, "constant")
    if spec is None or not spec.is_ray_set:
        raise InputError("harmonic_increment needs a ray-set builder")
    return harmonic_increment_rule(spec)


def build_function(fdesc: dict, points, spec=None) -> FunctionOnSet:
    if "table" in fdesc:
        f = FunctionOnSet({_point(p): _value(v) for p, v in fdesc["table"]})
        if points is not None and f.domain != tuple(points):
            raise InputError("function table domain differs from the set")
        return f
    return build_rule(fdesc["rule"], spec).on_points(points)


def build_config(m: dict, args) -> SearchConfig:
    c = dict(m.get("config", {}))
    for name in ("max_list_length", "node_budget"):
        v = getattr(args, name, None)
        if v is not None:
            c[name] = v
    if getattr(args, "no_certify", False):
        c["certify"] = False
    return SearchConfig(**c)


def _require(m: dict, *keys):
    missing = [k for k in keys if k not in m]
    if missing:
        raise InputError(f"manifest lacks {', '.join(missing)}")


def _set_and_function(m: dict):
    _require(m, "set", "function")
    points, spec = build_set(m["set"])
    fdesc = m["function"]
    if "rule" in fdesc and fdesc["rule"]["kind"] == "harmonic_increment":
        # values are tied to ray positions, so evaluate on the truncation directly
        return points, spec, build_rule(fdesc["rule"], spec).on_truncation(spec, m["set"]["N"])
    return points, spec, build_function(fdesc, points, spec)


# -- commands ----------------------------------------------------------------------------


def _manifest(args) -> dict:
    if not args.manifest:
        raise InputError("this command needs --manifest")
    return load_manifest(args.manifest)


def cmd_vf(args) -> dict:
    if args.points:
        S = _points_arg(args.points)
    else:
        m = _manifest(args)
        _require(m, "list")
        S = [_point(p) for p in m["list"]]
    return {"inputs": {"list": S}, "result": {"vf": vf(S), "segments": len(S) - 1}}


def cmd_cvar(args) -> dict:
    m = _manifest(args)
    points, _, f = _set_and_function(m)
    _require(m, "list")
    S = [_point(p) for p in m["list"]]
    return {"inputs": {"set": points, "list": S}, "result": {"cvar": cvar(f, S), "vf": vf(S)}}


def _estimate_report(est) -> dict:
    st = est.search_stats
    return {
        "value": est.value,
        "status": est.status,
        "certificate": list(est.certificate),
        "certificate_value": est.certificate_value,
        "attained": est.attained,
        "upper": est.upper,
        "lists_explored": st.lists_explored,
        "max_length": st.max_length,
    }


def cmd_var(args) -> dict:
    m = _manifest(args)
    points, _, f = _set_and_function(m)
    est = var_search(f, points, build_config(m, args))
    return {"inputs": {"set": points}, "result": _estimate_report(est)}


def _norm_report(rep) -> dict:
    return {"norm": rep.norm_name, "value": rep.value, "status": rep.status, "upper": rep.upper, "parameters": rep.parameters}


def cmd_bv_norm(args) -> dict:
    m = _manifest(args)
    points, _, f = _set_and_function(m)
    return {"inputs": {"set": points}, "result": _norm_report(bv_norm(f, points, build_config(m, args)))}


def cmd_d_norm(args) -> dict:
    m = _manifest(args)
    points, _, f = _set_and_function(m)
    z = _points_arg(args.z)[0] if args.z else (_point(m["z"]) if "z" in m else None)
    if z is None:
        raise InputError("d-norm needs the isolated point z (--z or manifest z)")
    s1 = [p for p in points if p != z]
    if len(s1) == len(points):
        raise InputError("z must be a point of the set")
    return {"inputs": {"set": points, "z": z}, "result": _norm_report(d_norm(f, s1, z, build_config(m, args)))}


def _partition(m: dict, points, spec):
    if spec is not None:
        return classify_rays(spec, m["set"]["N"])
    return classify_rays(points)


def cmd_spoke_norm(args) -> dict:
    m = _manifest(args)
    points, spec, f = _set_and_function(m)
    part = _partition(m, points, spec)
    return {"inputs": {"set": points, "k": part.k}, "result": _norm_report(spoke_norm(f, part))}


def _partition_report(part) -> dict:
    return {
        "k": part.k,
        "directions": list(part.directions),
        "rays": [list(r) for r in part.rays],
        "leftovers": list(part.leftovers),
        "structural": part.structural,
    }


def cmd_classify_rays(args) -> dict:
    if args.points:
        pts = _points_arg(args.points)
        return {"inputs": {"set": pts}, "result": _partition_report(classify_rays(pts))}
    m = _manifest(args)
    _require(m, "set")
    if "builder" in m["set"]:
        spec = build_spec(m["set"])
        part = classify_rays(spec, m["set"].get("N"))
        return {"inputs": {"builder": m["set"]["builder"]}, "result": _partition_report(part)}
    points, _ = build_set(m["set"])
    return {"inputs": {"set": points}, "result": _partition_report(classify_rays(points))}


def cmd_ac_test(args) -> dict:
    m = _manifest(args)
    _require(m, "set", "function")
    if "builder" not in m["set"] or "rule" not in m["function"]:
        raise InputError("ac-test needs a builder set and a function rule")
    spec = build_spec(m["set"])
    rule = build_rule(m["function"]["rule"], spec)
    kw = {}
    if "schedule" in m:
        kw["schedule"] = m["schedule"]
    if "tol" in m:
        kw["tol"] = m["tol"]
    v = ac_test_kray(rule, spec, **kw)
    return {
        "inputs": {"builder": m["set"]["builder"], "rule": m["function"]["rule"]["kind"]},
        "result": {
            "verdict": v.verdict,
            "witness": v.witness,
            "schedule": list(v.schedule),
            "margins": list(v.margins),
            "tails": list(v.tails),
            "slopes": list(v.slopes),
            "variation_lower_bound": v.variation_lower_bound,
        },
    }


def _build_map(m: dict, points, spec) -> tuple:
    mp = m["map"]
    kind = mp["kind"]
    if kind == "table":
        return PointBijection.from_forward({_point(a): _point(b) for a, b in mp["pairs"]}), None
    if kind == "isolated_move":
        x, y = _point(mp["x"]), _point(mp["y"])
        return move_isolated_point([p for p in points if p != x], x, y), x
    if kind == "order_matching":
        _require(m, "target")
        tpoints, tspec = build_set(m["target"])
        sp = classify_rays(spec, m["set"]["N"]) if spec is not None else classify_rays(points)
        tp = classify_rays(tspec, m["target"]["N"]) if tspec is not None else classify_rays(tpoints)
        return order_matching_homeo(sp, tp), None
    C = ConvexPolygon(tuple(_point(v) for v in mp["polygon"]))
    alpha = AffineMap(tuple(tuple(_scalar(c) for c in row) for row in mp["matrix"]), _point(mp["translation"]))
    h = lpam_construct(C, alpha, _point(mp["x0"]), _point(mp["y0"]))
    return lpam_transport(h, points), None


def cmd_iso_distortion(args) -> dict:
    m = _manifest(args)
    _require(m, "set", "map")
    points, spec = build_set(m["set"])
    h, z = _build_map(m, points, spec)
    if h.source != tuple(points):
        raise InputError("the map's source differs from the set")
    fam_cfg = m.get("family", {})
    rng = random.Random(fam_cfg.get("seed", 0))
    lo, hi = fam_cfg.get("low", -3), fam_cfg.get("high", 3)
    family = [FunctionOnSet({p: rng.randint(lo, hi) for p in points}) for _ in range(fam_cfg.get("size", 20))]
    norm = m.get("norm", "BV")
    if norm == "D" and z is None:
        _require(m, "z")
        z = _point(m["z"])
    rep = distortion_estimate(h, family, norm, build_config(m, args), z=z)
    return {
        "inputs": {"set": points, "map": m["map"]["kind"], "norm": norm, "family_size": len(family)},
        "result": {
            "max_ratio": rep.max_ratio,
            "min_ratio": rep.min_ratio,
            "max_witness": rep.max_witness,
            "min_witness": rep.min_witness,
            "tainted": rep.tainted,
        },
    }


def cmd_demo(args) -> dict:
    name = args.name
    kw = {}
    if name in ("bv-no-hom", "parabola") and args.N is not None:
        kw["N"] = args.N
    if name == "spoke-equiv" and args.N is not None:
        kw["N"] = args.N
    if name == "psi" and args.N is not None:
        kw["N"] = args.N
    if name in ("bv-no-hom", "parabola", "spoke-equiv") and args.size is not None:
        kw["size"] = args.size
    if name in ("bv-no-hom", "parabola", "spoke-equiv", "lpam") and args.seed is not None:
        kw["seed"] = args.seed
    if name in ("parabola", "spoke-equiv"):
        kw["threads"] = args.threads
    if name == "interleave":
        kw.update(k=args.k, l=args.l, n=args.n, N=args.N)
    if name == "lpam" and args.count is not None:
        kw["count"] = args.count
    report = demos.DEMOS[name](**kw)
    return {"inputs": {"demo": name, **{k: v for k, v in kw.items() if k != "threads"}}, "result": report}


COMMANDS = {
    "vf": cmd_vf,
    "cvar": cmd_cvar,
    "var": cmd_var,
    "bv-norm": cmd_bv_norm,
    "d-norm": cmd_d_norm,
    "spoke-norm": cmd_spoke_norm,
    "classify-rays": cmd_classify_rays,
    "ac-test": cmd_ac_test,
    "iso-distortion": cmd_iso_distortion,
    "demo": cmd_demo,
}


def _threads_default() -> int:
    try:
        return max(1, int(os.environ.get("BVSIGMA_THREADS", "1")))
    except ValueError:
        return 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="bvsigma", description="Variation, BV norms and composition operators on planar point sets.")
    p.add_argument("--version", action="version", version=f"bvsigma {__version__}")
    p.add_argument("--threads", type=int, default=None, help="worker threads for demo families (default: BVSIGMA_THREADS or 1)")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, help_, manifest=True, points=False, search=False):
        sp = sub.add_parser(name, help=help_)
        if manifest:
            sp.add_argument("--manifest", help="manifest JSON file, or - for stdin")
        if points:
            sp.add_argument("--points", help='inline point list, e.g. "[[-1,0],[0,0],[1,0]]"')
        if search:
            sp.add_argument("--max-list-length", dest="max_list_length", type=int)
            sp.add_argument("--node-budget", dest="node_budget", type=int)
            sp.add_argument("--no-certify", dest="no_certify", action="store_true", help="skip the cut-cover bound")
        return sp

    add("vf", "variation factor of a point list", points=True)
    add("cvar", "curve variation of a function along a list")
    add("var", "two-dimensional variation", search=True)
    add("bv-norm", "sup norm plus variation", search=True)
    add("d-norm", "isolated-point norm", search=True).add_argument("--z", help="isolated point as [[x, y]]")
    add("spoke-norm", "spoke norm on a strict ray set")
    add("classify-rays", "group a set by rays through 0", points=True)
    add("ac-test", "numerical absolute-continuity test on a ray set")
    add("iso-distortion", "observed norm ratios of a composition operator", search=True)
    d = sub.add_parser("demo", help="worked computations with pass/fail")
    d.add_argument("name", choices=sorted(demos.DEMOS))
    d.add_argument("--N", type=int)
    d.add_argument("--n", type=int, default=8)
    d.add_argument("--k", type=int, default=2)
    d.add_argument("--l", type=int, default=1)
    d.add_argument("--size", type=int)
    d.add_argument("--seed", type=int)
    d.add_argument("--count", type=int)
    return p


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.threads is None:
        args.threads = _threads_default()
    try:
        body = COMMANDS[args.command](args)
    except (InputError, ValueError, KeyError, TypeError) as exc:
        msg = exc.args[0] if exc.args else str(exc)
        print(json.dumps({"command": args.command, "error": str(msg)}, sort_keys=True), file=sys.stderr)
        return EXIT_INVALID
    report = {"command": args.command, "version": __version__, **body}
    print(dumps(report), file=out)
    if args.command == "demo" and not body["result"]["passed"]:
        return EXIT_DEMO_FAILED
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":  # pragma: no cover
    main()
