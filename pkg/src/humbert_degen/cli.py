"""Command-line front end.

Every subcommand prints one report.  JSON reports always carry the keys
``schema, command, inputs, assertions, pass, duration_s``; the command's outputs
sit next to them at the top level.  Exit status: 0 all assertions pass, 1 some
assertion fails, 2 usage error.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor

from . import checks, corank1, corank2, families, mumford
from .siegel import DiscriminantVector, SamplingFailed, enumerate_vectors, humbert_residual, sample_point

SCHEMA = 1
RESERVED = ("schema", "command", "inputs", "assertions", "pass", "duration_s")
THREADS_ENV = "HUMBERT_DEGEN_THREADS"


class UsageError(Exception):
    pass


def _cx(z: complex) -> list[float]:
    z = complex(z)
    return [z.real, z.imag]


def _parse_vector(text: str) -> DiscriminantVector:
    try:
        coeffs = [int(x) for x in text.split(",")]
    except ValueError:
        raise UsageError(f"--v expects five comma-separated integers, got {text!r}")
    if len(coeffs) != 5:
        raise UsageError(f"--v expects five comma-separated integers, got {text!r}")
    try:
        return DiscriminantVector.from_coefficients(*coeffs)
    except ValueError as exc:
        raise UsageError(f"--v {text}: {exc}")


def _parse_heights(text: str) -> list[float]:
    return [float(x) for x in text.split(",")]


def _family(args) -> mumford.FamilyId:
    if args.family == "inf":
        return mumford.INFINITY
    if args.c is None or args.e is None:
        raise UsageError("--family ce requires --c and --e")
    return (args.c, args.e)


def cmd_enumerate_vectors(args):
    vecs = enumerate_vectors(args.m, args.bound)
    ok = all(v.discriminant() == args.m ** 2 and math.gcd(*v.coefficients()) == 1 for v in vecs)
    outputs = {"count": len(vecs), "vectors": [list(v.coefficients()) for v in vecs]}
    return {"m": args.m, "bound": args.bound}, outputs, {"discriminant_and_primitive": ok}


def cmd_humbert_sample(args):
    v = _parse_vector(args.v)
    inputs = {"v": list(v.coefficients()), "seed": args.seed}
    try:
        tau = sample_point(v, args.seed)
    except SamplingFailed as exc:
        return inputs, {"m": v.m, "tau": None, "reason": str(exc)}, {"sampled": False}
    res = abs(humbert_residual(v, tau))
    outputs = {"m": v.m, "tau": [_cx(tau.tau11), _cx(tau.tau12), _cx(tau.tau22)], "residual": res}
    asserts = {"residual_below_1e-12": res < 1e-12, "positive_definite": tau.imag_det() > 0}
    return inputs, outputs, asserts


def cmd_limit_corank1(args):
    v = _parse_vector(args.v)
    tau22 = complex(args.tau22)
    heights = _parse_heights(args.heights)
    try:
        pts = corank1.track_limit_corank1(v, tau22, heights)
    except corank1.InvalidVector as exc:
        outputs = {"limit": None, "reason": str(exc)}
        return {"v": list(v.coefficients())}, outputs, {"has_limit": False}
    curve = corank1.corank1_limit(v)
    limit = curve.point(tau22)
    dists = [p.distance(limit) for p in pts]
    outputs = {
        "limit": [_cx(limit.q), _cx(limit.z), _cx(limit.tau)],
        "branches": [[_cx(b.q), _cx(b.z), _cx(b.tau)] for b in curve.branches(tau22)],
        "heights": heights,
        "distances": dists,
    }
    asserts = {
        "monotone": all(d2 < d1 for d1, d2 in zip(dists, dists[1:])),
        "final_below_1e-6": dists[-1] < 1e-6,
    }
    return {"v": list(v.coefficients()), "tau22": _cx(tau22)}, outputs, asserts


def cmd_limit_corank2(args):
    z = complex(args.z)
    heights = _parse_heights(args.heights)
    pts = corank2.psi_limit_family(args.m, z, heights)
    target = corank2.psi_limit(z)
    dists = [max(abs(x - y) for x, y in zip(p, target)) for p in pts]
    outputs = {"limit": [_cx(x) for x in target], "heights": heights, "distances": dists}
    return {"m": args.m, "z": _cx(z)}, outputs, {"final_below_1e-6": dists[-1] < 1e-6}


def cmd_count_boundary_points(args):
    pts = corank2.boundary_intersection_points(args.m)
    expected = checks.totient(args.m) + 1
    outputs = {
        "count": len(pts),
        "phi_plus_one": expected,
        "points": [{"tag": p.tag, "value": [_cx(x) for x in p.to_complex()], "branches": len(p.branches)} for p in pts],
    }
    return {"m": args.m}, outputs, {"count_is_phi_plus_one": len(pts) == expected}


def cmd_branch_multiplicity(args):
    m = args.m
    if args.a is not None and args.b is not None:
        pairs = [(args.a, args.b)]
    else:
        pairs = [(a, b) for a, b in corank2.admissible_branches(m) if b != 0]
    rows = []
    for a, b in pairs:
        bo = corank2.branch_multiplicity(a, b, m)
        rows.append({"a": a, "b": b, "orders": list(bo.orders), "smooth": bo.smooth, "cancellation": bo.cancellation})
    return {"m": m, "a": args.a, "b": args.b}, {"branches": rows}, {}


def cmd_orbit_sl2(args):
    m = args.m
    start = corank1.TorsionClass(args.c, args.e, m)
    orbit = corank1.sl2_mod_m_orbit(m, start)
    expected = checks.order_m_count(m)
    outputs = {
        "orbit_size": len(orbit),
        "expected_size": expected,
        "classes_mod_sign": len({c.canonical() for c in orbit}),
    }
    asserts = {"transitive": orbit == corank1.order_m_classes(m) and len(orbit) == expected}
    return {"m": m, "start": [args.c, args.e]}, outputs, asserts


def cmd_verify_y_action(args):
    report = mumford.verify_group_law(args.samples, args.seed)
    return {"samples": args.samples, "seed": args.seed}, report.details, {
        "rst_identity": report.details["rst_identity"],
        "homomorphism": report.details["failures"] == 0,
    }


def cmd_verify_ideal_invariance(args):
    fams = [_family(args)] if args.family else [(c, 1) for c in range(args.m + 1)] + [mumford.INFINITY]
    rows, asserts = [], {}
    for fam in fams:
        rep = mumford.verify_ideal_invariance(args.m, fam)
        label = "inf" if fam == mumford.INFINITY else f"c={fam[0]},e={fam[1]}"
        rows.append({**rep.details, "family": label, "passed": rep.passed})
        asserts[label] = rep.passed
    return {"m": args.m, "family": args.family}, {"results": rows}, asserts


def cmd_fiber_dualgraph(args):
    graph = mumford.degenerate_fiber(args.m, args.stratum)
    n = mumford.chain_shift(args.m, mumford.StratumId(args.stratum))
    oracle = mumford.quotient_cycle_oracle(3 * n + 2, n)
    asserts = {
        "cycle": graph.cycle_length() == n,
        "matches_oracle": oracle.cycle_length() == graph.cycle_length(),
        "genus_one": graph.arithmetic_genus() == 1,
    }
    outputs = graph.to_dict()
    outputs["polygon"] = n
    return {"m": args.m, "stratum": args.stratum}, outputs, asserts, graph


def cmd_classify_surface(args):
    return {"m": args.m, "stratum": args.stratum}, mumford.classify_fiber(args.m, args.stratum), {}


def cmd_exponent_check(args):
    fam = _family(args)
    v = families.family_vector(args.m, fam)
    tau = sample_point(v, args.seed)
    w = families.subvariety_image(v, tau)
    exponent = families.exponent_of_subtorus(v, tau)
    line_dist = families.line_distance(w, families.expected_line(fam))
    outputs = {"exponent": exponent, "line": [_cx(x) for x in w], "line_distance": line_dist}
    asserts = {"exponent_is_m": exponent == args.m, "line_matches": line_dist < 1e-8}
    inputs = {"m": args.m, "family": args.family, "c": args.c, "e": args.e, "seed": args.seed}
    return inputs, outputs, asserts


def cmd_verify_all(args):
    threads = int(os.environ.get(THREADS_ENV) or 1)
    jobs = checks.plan(args.m_max, args.seed)
    with ThreadPoolExecutor(max(threads, 1)) as pool:
        results = list(pool.map(lambda job: job[0](*job[1]), jobs))
    outputs = {"checks": [{"name": r.name, "passed": r.passed, "details": _jsonable(r.details)} for r in results]}
    return {"m_max": args.m_max, "seed": args.seed}, outputs, {r.name: r.passed for r in results}


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(x) for x in obj]
    if isinstance(obj, complex):
        return _cx(obj)
    if hasattr(obj, "item"):
        return obj.item()
    return obj


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="humbert-degen", description=__doc__.splitlines()[0])
    parser.add_argument("--format", choices=["json", "dot", "text"], default="json")
    parser.add_argument("--out", help="write the report here instead of stdout")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        p = sub.add_parser(name, help=help_)
        p.set_defaults(func=func, usage=p.format_usage)
        # accept the global flags after the subcommand too
        p.add_argument("--format", choices=["json", "dot", "text"], default=argparse.SUPPRESS)
        p.add_argument("--out", default=argparse.SUPPRESS)
        return p

    p = add("enumerate-vectors", cmd_enumerate_vectors, "primitive vectors of discriminant m^2")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--bound", type=int, required=True)

    p = add("humbert-sample", cmd_humbert_sample, "random point of H_2(v)")
    p.add_argument("--v", required=True, help="a,b,c,d,e")
    p.add_argument("--seed", type=int, default=0)

    p = add("limit-corank1", cmd_limit_corank1, "track e1-images towards the corank-1 boundary")
    p.add_argument("--v", required=True, help="a,b,c,d,e")
    p.add_argument("--tau22", default="1j")
    p.add_argument("--heights", default="5,10,20,40")

    p = add("limit-corank2", cmd_limit_corank2, "track psi(T_{z, ih}) towards the peripheral P^1")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--z", default="0")
    p.add_argument("--heights", default="10,20,40,60")

    p = add("count-boundary-points", cmd_count_boundary_points, "C_m meets the peripheral P^1")
    p.add_argument("--m", type=int, required=True)

    p = add("branch-multiplicity", cmd_branch_multiplicity, "vanishing orders of origin branches")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--a", type=int)
    p.add_argument("--b", type=int)

    p = add("orbit-sl2", cmd_orbit_sl2, "SL(2, Z/m)-orbit of a torsion class")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--c", type=int, default=0)
    p.add_argument("--e", type=int, default=1)

    p = add("verify-y-action", cmd_verify_y_action, "group law of the Y action")
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)

    p = add("verify-ideal-invariance", cmd_verify_ideal_invariance, "Y_c / Y_inf preserve the curve ideals")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--family", choices=["ce", "inf"])
    p.add_argument("--c", type=int)
    p.add_argument("--e", type=int)

    for name, func, help_ in (
        ("fiber-dualgraph", cmd_fiber_dualgraph, "dual graph of the degenerate elliptic curve"),
        ("classify-surface", cmd_classify_surface, "degenerate surface and curve over a stratum"),
    ):
        p = add(name, func, help_)
        p.add_argument("--m", type=int, required=True)
        p.add_argument("--stratum", choices=["I", "II", "III"], required=True)

    p = add("exponent-check", cmd_exponent_check, "exponent of the embedded elliptic curve")
    p.add_argument("--family", choices=["ce", "inf"], required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--c", type=int)
    p.add_argument("--e", type=int)
    p.add_argument("--seed", type=int, default=0)

    p = add("verify-all", cmd_verify_all, "run every acceptance check")
    p.add_argument("--m-max", type=int, default=12)
    p.add_argument("--seed", type=int, default=0)
    return parser


def _render_text(report: dict) -> str:
    lines = []
    for key, value in report.items():
        lines.append(f"{key}: {json.dumps(_jsonable(value), sort_keys=True)}")
    return "\n".join(lines) + "\n"


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    start = time.perf_counter()
    try:
        if getattr(args, "m", None) is not None and args.m < 2:
            raise UsageError("--m must be at least 2")
        if args.format == "dot" and args.command != "fiber-dualgraph":
            raise UsageError("--format dot is only available for fiber-dualgraph")
        result = args.func(args)
    except (UsageError, ValueError) as exc:
        sys.stderr.write(args.usage())
        print(f"{parser.prog} {args.command}: error: {exc}", file=sys.stderr)
        return 2
    inputs, outputs, asserts = result[:3]
    passed = all(asserts.values())
    if args.format == "dot":
        text = result[3].to_dot()
    else:
        report = {
            "schema": SCHEMA,
            "command": args.command,
            "inputs": inputs,
            "assertions": asserts,
            "pass": passed,
            "duration_s": round(time.perf_counter() - start, 6),
        }
        for key, value in outputs.items():
            if key in RESERVED:
                raise RuntimeError(f"output key {key!r} collides with the report schema")
            report[key] = value
        report = _jsonable(report)
        if args.format == "json":
            text = json.dumps(report, sort_keys=True) + "\n"
        else:
            text = _render_text(report)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0 if passed else 1


def main() -> None:
    sys.exit(run())
