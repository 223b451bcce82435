"""Command-line verification runner.

A thin shell over the suites: every number in a report comes from a module
operation.  Exit code 0 iff no row failed; flagged rows never fail a build.
"""
from __future__ import annotations

import argparse
import sys

from .report import write_report
from .suites import SUITES, SuiteConfig, run_suite


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="gausslip",
        description="Verification suites for Gaussian-measure operator calculus")
    p.add_argument("--suite", choices=SUITES, default="all")
    p.add_argument("--f", action="append", dest="functions", metavar="NAME",
                   help="catalog function (repeatable), e.g. cos:1, const:2.5, "
                        "hermite:3, expansion:/path.json")
    p.add_argument("--alpha", type=float, default=0.5)
    p.add_argument("--beta", type=float, default=0.5)
    p.add_argument("--kind", default="bessel_potential")
    p.add_argument("--representation", default="spectral",
                   choices=("spectral", "integral"))
    p.add_argument("--t-min", type=float, default=0.0125)
    p.add_argument("--t-max", type=float, default=4.0)
    p.add_argument("--t-count", type=int, default=16)
    p.add_argument("--x-radius", type=float, default=3.0)
    p.add_argument("--x-count", type=int, default=121)
    p.add_argument("--degree-cap", type=int, default=40)
    p.add_argument("--nodes", type=int, default=64)
    p.add_argument("--tol", type=float, default=1e-6)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--out", metavar="PATH", default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--quiet", action="store_true", help="print only the summary")
    return p


def config_from_args(args) -> SuiteConfig:
    kwargs = dict(
        alpha=args.alpha, beta=args.beta,
        kind=args.kind, representation=args.representation,
        t_min=args.t_min, t_max=args.t_max, t_count=args.t_count,
        x_radius=args.x_radius, x_count=args.x_count,
        degree_cap=args.degree_cap, nodes=args.nodes,
        tol=args.tol, seed=args.seed,
    )
    if args.functions:
        kwargs["functions"] = tuple(args.functions)
    return SuiteConfig(**kwargs)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    config = config_from_args(args)
    report = run_suite(args.suite, config)
    if not args.quiet:
        for row in report.rows:
            status = "PASS" if row.passed else "FAIL"
            flag = " [flagged]" if row.flagged else ""
            print(f"[{status}] {row.name}: computed={row.computed:.10g} "
                  f"oracle={row.oracle:.10g} rel_err={row.rel_err:.3g}{flag}")
    s = report.summary
    print(f"suite={report.suite} total={s['total']} passed={s['passed']} "
          f"failed={s['failed']} flagged={s['flagged']}")
    if args.out:
        write_report(report, format=args.format, path=args.out)
        print(f"report written to {args.out} ({args.format})")
    return 0 if s["failed"] == 0 else 1


if __name__ == "__main__":
    sys.exit(main())
