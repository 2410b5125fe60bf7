"""Command-line front end.

Subcommands: noise, filter, metrics, bench, calibrate, verify-minimax.
Filter specs use the grammar ``family[:strategy][:key=value...]`` where
family is identity|vmf|bvdf|ddf|acwddf, strategy is exact|minimax|rgb, and
keys are q (minimax degree), p (Minkowski order), window (side length),
lambda and T (ACWDDF smoothing level and threshold), slope and intercept
(chromaticity calibration).  Examples: ``bvdf:minimax:q=4``,
``acwddf:rgb:lambda=2:T=10.8``, ``ddf:exact:p=2``, ``vmf``.
"""

from __future__ import annotations

import argparse
import sys

from .bench import BenchPlan, parse_plan_file, render, run_bench
from .calibration import fit_angular_chromaticity, verify_minimax
from .distance import ACOS_COEFFICIENTS, ASIN_COEFFICIENTS, FastAcosTable
from .filters import REPLICATE, BorderPolicy, apply_filter, parse_filter_spec
from .image import FormatError, read_image, write_image
from .metrics import compare
from .noise import NoiseParams, corrupt_image


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dirfilt",
        description="Vector directional filtering benchmark tool.",
        epilog=__doc__.split("\n\n")[1],
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_noise = sub.add_parser("noise", help="corrupt an image with impulsive noise")
    p_noise.add_argument("--in", dest="src", required=True, help="input image (ppm/png)")
    p_noise.add_argument("--out", dest="dst", required=True, help="output image")
    p_noise.add_argument("--phi", type=float, default=0.10, help="sample corruption probability")
    p_noise.add_argument("--phi1", type=float, default=0.25)
    p_noise.add_argument("--phi2", type=float, default=0.25)
    p_noise.add_argument("--phi3", type=float, default=0.25)
    p_noise.add_argument("--impulse", choices=("saltpepper", "uniform"), default="saltpepper")
    p_noise.add_argument("--seed", type=int, default=0)

    p_filter = sub.add_parser("filter", help="apply one filter spec to an image")
    p_filter.add_argument("--in", dest="src", required=True)
    p_filter.add_argument("--out", dest="dst", required=True)
    p_filter.add_argument("--spec", required=True, help="filter spec, e.g. bvdf:minimax:q=4")
    p_filter.add_argument("--border", choices=("replicate", "reflect"), default="replicate")
    p_filter.add_argument("--parallel", type=int, default=1, metavar="WORKERS",
                          help="row-partition across threads (not used for timing)")

    p_metrics = sub.add_parser("metrics", help="compare two images (MAE/PSNR/NCD)")
    p_metrics.add_argument("--ref", required=True, help="reference (clean) image")
    p_metrics.add_argument("--test", required=True, help="image under test")

    p_bench = sub.add_parser("bench", help="run a benchmark plan")
    p_bench.add_argument("--plan", help="plan file (key = value lines)")
    p_bench.add_argument("--image", action="append", default=[], help="test image (repeatable)")
    p_bench.add_argument("--filter", action="append", default=[], help="filter spec (repeatable)")
    p_bench.add_argument("--phi", action="append", type=float, default=[], help="noise level")
    p_bench.add_argument("--seed", type=int, default=0)
    p_bench.add_argument("--repetitions", type=int, default=10)
    p_bench.add_argument("--format", choices=("csv", "markdown"), default="csv")

    p_cal = sub.add_parser("calibrate", help="fit the angle-vs-chromaticity line")
    p_cal.add_argument("--pairs", type=int, default=10**6)
    p_cal.add_argument("--seed", type=int, default=0)
    p_cal.add_argument("--p", type=float, default=2.0)
    p_cal.add_argument("--method", choices=("tls", "ols"), default="tls")

    p_ver = sub.add_parser("verify-minimax", help="measure the polynomial error bounds")
    p_ver.add_argument("--grid", type=int, default=10**6, help="grid points per polynomial")

    return parser


def _cmd_noise(args) -> int:
    params = NoiseParams(
        phi=args.phi, phi1=args.phi1, phi2=args.phi2, phi3=args.phi3,
        impulse=args.impulse, seed=args.seed,
    )
    img = read_image(args.src)
    write_image(corrupt_image(img, params), args.dst)
    print(f"wrote {args.dst} (phi={args.phi:g}, impulse={args.impulse}, seed={args.seed})")
    return 0


def _cmd_filter(args) -> int:
    spec = parse_filter_spec(args.spec)
    img = read_image(args.src)
    out = apply_filter(img, spec, BorderPolicy(args.border), workers=args.parallel)
    write_image(out, args.dst)
    print(f"wrote {args.dst} ({spec.name})")
    return 0


def _cmd_metrics(args) -> int:
    ref = read_image(args.ref)
    test = read_image(args.test)
    rep = compare(ref, test)
    print("mae,psnr,ncd_x1000")
    print(rep.csv_row().rsplit(",", 1)[0])
    return 0


def _cmd_bench(args) -> int:
    if args.plan:
        with open(args.plan) as fh:
            plan = parse_plan_file(fh.read())
    else:
        if not args.image or not args.filter:
            print("bench needs --plan or at least one --image and --filter", file=sys.stderr)
            return 2
        plan = BenchPlan(
            images=tuple(args.image),
            specs=tuple(parse_filter_spec(s) for s in args.filter),
            phis=tuple(args.phi) if args.phi else (0.10, 0.15),
            seed=args.seed,
            repetitions=args.repetitions,
            output_format=args.format,
        )
    outcome = run_bench(plan)
    print(render(outcome, plan.output_format), end="")
    print(f"# seed={plan.seed} repetitions={plan.repetitions}", file=sys.stderr)
    for err in outcome.errors:
        print(f"error: {err}", file=sys.stderr)
    return 0 if outcome.ok else 1


def _cmd_calibrate(args) -> int:
    fit = fit_angular_chromaticity(args.pairs, args.seed, args.p, args.method)
    print(f"pairs    : {fit.sample_count}")
    print(f"seed     : {args.seed}")
    print(f"method   : {fit.method}")
    print(f"slope    : {fit.slope:.6f}")
    print(f"intercept: {fit.intercept:.6f}")
    print(f"rms      : {fit.fit_error:.6f}")
    print(f"mean|r|  : {fit.mean_abs_residual:.6f}")
    print(f"rms_orth : {fit.rms_orthogonal:.6f}")
    return 0


def _cmd_verify_minimax(args) -> int:
    print("role q stated_bound measured_max ratio")
    worst = 0.0
    for role, coeffs in (("asin", ASIN_COEFFICIENTS), ("acos", ACOS_COEFFICIENTS)):
        for q in sorted(coeffs):
            table = FastAcosTable.for_degree(q)
            poly = table.asin_poly if role == "asin" else table.acos_poly
            ref = "asin_composed" if role == "asin" else "acos_direct"
            measured = verify_minimax(poly, ref, args.grid)
            ratio = measured / poly.bound
            worst = max(worst, ratio)
            print(f"{role} {q} {poly.bound:.9e} {measured:.9e} {ratio:.4f}")
    print(f"# worst measured/stated ratio: {worst:.4f}")
    return 0


_COMMANDS = {
    "noise": _cmd_noise,
    "filter": _cmd_filter,
    "metrics": _cmd_metrics,
    "bench": _cmd_bench,
    "calibrate": _cmd_calibrate,
    "verify-minimax": _cmd_verify_minimax,
}


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (FormatError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
