"""Command-line interface.

Subcommands:
    count     exact N(B) for one bound or a geometric grid
    constant  the predicted leading constant (quadrature + Euler product)
    verify    self-checks; exit 0 iff all pass
    report    merge a counts CSV and a constant JSON into report.json

Exit codes: 0 success, 1 verification failure, 2 usage error,
3 numeric non-convergence.
"""

from __future__ import annotations

import argparse
import math
import random
import sys

from . import archimedean, counter, densities, report, surface, torsor

EXIT_OK = 0
EXIT_VERIFY_FAIL = 1
EXIT_USAGE = 2
EXIT_NO_CONVERGENCE = 3


def _parse_grid(spec: str) -> list[int]:
    try:
        start_s, factor_s, steps_s = spec.split(":")
        start, factor, steps = int(start_s), float(factor_s), int(steps_s)
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"grid must be <start>:<factor>:<steps>, got {spec!r}"
        ) from None
    if start < 1 or factor <= 1.0 or steps < 1:
        raise argparse.ArgumentTypeError(
            f"grid needs start >= 1, factor > 1, steps >= 1, got {spec!r}"
        )
    values: list[int] = []
    v = float(start)
    for _ in range(steps):
        b = round(v)
        if not values or b > values[-1]:
            values.append(b)
        v *= factor
    return values


def _cmd_count(args) -> int:
    if (args.B is None) == (args.grid is None):
        print("count: exactly one of --B / --grid is required", file=sys.stderr)
        return EXIT_USAGE
    bounds = [args.B] if args.B is not None else args.grid
    records = counter.count_series(bounds, method=args.method, workers=args.threads)
    if args.out:
        report.emit(records, counts_path=args.out)
        print(f"wrote {args.out}")
    else:
        sys.stdout.write(report.counts_csv_bytes(records).decode("utf-8"))
    return EXIT_OK


def _cmd_constant(args) -> int:
    breakdown = report.peyre_constant(args.prime_limit, args.tol)
    payload = report.constant_json_bytes(breakdown)
    if args.out:
        with open(args.out, "wb") as fh:
            fh.write(payload)
        print(f"wrote {args.out}")
    else:
        sys.stdout.write(payload.decode("utf-8"))
    return EXIT_OK


def _cmd_report(args) -> int:
    records = report.read_counts_csv(args.counts)
    breakdown = report.read_constant_json(args.constant)
    torsor_records = [r for r in records if r.method == "torsor"]
    fit = report.fit_polynomial(torsor_records) if len(torsor_records) >= 8 else None
    report.emit(records, breakdown, fit, report_path=args.out)
    if fit is not None and breakdown.c_total:
        print(f"a5 = {fit.a[5]:.6g}, a5/c = {fit.a[5] / breakdown.c_total:.6g}")
    print(f"wrote {args.out}")
    return EXIT_OK


class _Checker:
    def __init__(self):
        self.failures = 0

    def check(self, name: str, ok: bool, detail: str = ""):
        if ok:
            print(f"ok   - {name}")
        else:
            self.failures += 1
            print(f"FAIL - {name}" + (f": {detail}" if detail else ""))


def _verify_geometry(c: _Checker, seed: int):
    rng = random.Random(seed)
    bad = 0
    for _ in range(2000):
        t, u, v = rng.randint(-50, 50), rng.randint(-50, 50), rng.randint(1, 50)
        p = surface.psi_param(t, u, v)
        if surface.evaluate_forms(p.coords) != (0, 0):
            bad += 1
        g = math.gcd(math.gcd(t, u), v)
        t2, u2, v2 = t // g, u // g, v // g
        if surface.phi_project(p) != (t2, u2, v2):
            bad += 1
    c.check("psi images on surface and phi round trip (2000 random)", bad == 0, f"{bad} failures")
    c.check(
        "seven interior points at height 1",
        surface.oracle_count(1) == 7,
        f"got {surface.oracle_count(1)}",
    )
    q = surface.canonicalize((0, 0, 0, 0, 1))
    c.check("singularity detected at (0:0:0:0:1)", surface.is_singular_point(q))
    e5 = surface.canonicalize((0, 0, 0, 1, 0))
    c.check("line point classified on E5", surface.classify(e5) is surface.PointClass.ON_E5)


def _verify_bijection(c: _Checker, B: int):
    bounds = list(range(1, B + 1))
    torsor_counts = [r.count for r in counter.count_series(bounds, method="torsor")]
    _, pts = surface.oracle_count(B, collect=True)
    heights = sorted(surface.height(p) for p in pts)
    import bisect

    oracle_counts = [bisect.bisect_right(heights, b) for b in bounds]
    mism = [b for b, x, y in zip(bounds, torsor_counts, oracle_counts) if x != y]
    c.check(
        f"count_torsor == oracle_count for B = 1..{B}",
        not mism,
        f"first mismatch at B={mism[0]}" if mism else "",
    )
    sample = [p for p in pts if surface.height(p) <= min(B, 50)]
    bad = sum(1 for p in sample if torsor.psi_map(torsor.lift(p)) != p)
    c.check(f"lift/psi round trip on {len(sample)} points", bad == 0, f"{bad} failures")


def _verify_densities(c: _Checker, seed: int):
    rng = random.Random(seed)
    bad = 0
    trials = 0
    while trials < 200:
        eta = tuple(rng.randint(1, 50) for _ in range(6))
        if not densities.coprim_eta(eta):
            continue
        p1 = eta[0] * eta[2] * eta[3] * eta[4] * eta[5]
        a1 = rng.randint(-10**6, 10**6)
        if math.gcd(a1, p1) != 1:
            continue
        trials += 1
        allowed, modulus = densities.admissible_c3_count(eta, a1)
        from fractions import Fraction

        if Fraction(allowed, modulus) != densities.theta1(eta):
            bad += 1
    c.check("admissible-c3 density equals theta1 (200 random eta)", bad == 0, f"{bad} failures")
    worst = max(
        abs(densities.local_factor(p, 0.0) - (1 + 6 / p + 1 / p**2))
        for p in densities.primes_up_to(1000)
    )
    c.check("local factor at s=0 equals 1 + 6/p + 1/p^2", worst < 1e-12, f"worst {worst:.2e}")
    bad = 0
    for p in (2, 3, 5, 7):
        for s in (0.1, 0.25, 1.0):
            diff = abs(densities.local_factor(p, s) - densities.local_factor_bruteforce(p, s, 40))
            if diff > densities.local_factor_tail_bound(p, s, 40) + 1e-13:
                bad += 1
    c.check("local factor matches truncated lattice sum", bad == 0, f"{bad} failures")


def _verify_archimedean(c: _Checker, seed: int):
    c.check("g1(0, 1/4) = 4", archimedean.g1(0.0, 0.25) == 4.0)
    v = archimedean.g2(1.0, tol=1e-8)
    c.check("g2(1) = 10/3", abs(v.value - 10.0 / 3.0) < 1e-6, f"got {v.value}")
    qa = archimedean.omega_infinity(1e-4, scheme="adaptive")
    qg = archimedean.omega_infinity(1e-4, scheme="gauss")
    c.check(
        "omega: adaptive and Gauss schemes agree",
        abs(qa.value - qg.value) <= qa.error_estimate + qg.error_estimate + 1e-6,
        f"{qa.value} vs {qg.value}",
    )
    mc, se = archimedean.omega_infinity_mc(seed, 200_000)
    c.check(
        "omega: Monte Carlo within 3 standard errors",
        abs(mc - qa.value) <= 3 * se + qa.error_estimate,
        f"mc {mc} +- {se}, quad {qa.value}",
    )


def _cmd_verify(args) -> int:
    c = _Checker()
    suite = args.suite
    try:
        if suite in ("all", "geometry"):
            _verify_geometry(c, args.seed)
        if suite in ("all", "bijection"):
            _verify_bijection(c, args.B)
        if suite in ("all", "densities"):
            _verify_densities(c, args.seed)
        if suite in ("all", "archimedean"):
            _verify_archimedean(c, args.seed)
    except archimedean.QuadratureError as exc:
        print(f"ERROR - quadrature did not converge: {exc}")
        return EXIT_NO_CONVERGENCE
    if c.failures:
        print(f"{c.failures} check(s) failed")
        return EXIT_VERIFY_FAIL
    print("all checks passed")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="torsorcount",
        description="Exact rational-point counts on the D4 quartic del Pezzo surface",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", help="exact point counts")
    p.add_argument("--B", type=int, help="single height bound")
    p.add_argument("--grid", type=_parse_grid, help="geometric grid <start>:<factor>:<steps>")
    p.add_argument("--method", choices=("torsor", "oracle"), default="torsor")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--out", help="write counts CSV here")
    p.set_defaults(func=_cmd_count)

    p = sub.add_parser("constant", help="predicted leading constant")
    p.add_argument("--prime-limit", type=int, default=10**6)
    p.add_argument("--tol", type=float, default=1e-5)
    p.add_argument("--out", help="write constant JSON here")
    p.set_defaults(func=_cmd_constant)

    p = sub.add_parser("verify", help="self checks")
    p.add_argument(
        "--suite",
        choices=("all", "bijection", "densities", "archimedean", "geometry"),
        default="all",
    )
    p.add_argument("--B", type=int, default=100)
    p.add_argument("--seed", type=int, default=1)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("report", help="assemble report.json")
    p.add_argument("--counts", required=True)
    p.add_argument("--constant", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_report)

    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except archimedean.QuadratureError as exc:
        print(f"numeric non-convergence: {exc}", file=sys.stderr)
        return EXIT_NO_CONVERGENCE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
