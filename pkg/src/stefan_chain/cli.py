"""Command-line entry point: ``stefan-chain <subcommand> [flags]``.

Exit codes: 0 success, 1 a check failed (report still written), 2 bad
flags or parameters, 3 degenerate similarity root, 4 singular or
non-monotone transformation, 5 any other numerical failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import mkdv as mk
from . import stefan_fd as sfd
from . import transforms as tr
from . import verification as ver
from .errors import DegenerateRoot, InvalidParams, NonMonotone, SingularDenominator, StefanChainError
from .similarity import BcKind, SimilarityParams, build_solution

EXIT_OK, EXIT_FAILED, EXIT_USAGE, EXIT_DEGENERATE, EXIT_SINGULAR, EXIT_NUMERIC = 0, 1, 2, 3, 4, 5


def _finite(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not math.isfinite(value):
        raise argparse.ArgumentTypeError(f"not finite: {text!r}")
    return value


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value <= 0:
        raise argparse.ArgumentTypeError(f"must be positive: {text!r}")
    return value


def _float_list(text: str) -> list[float]:
    return [_finite(part) for part in text.split(",") if part.strip()]


def _add_params(p: argparse.ArgumentParser, with_t: bool = True) -> None:
    g = p.add_argument_group("problem parameters")
    g.add_argument("--bc", choices=[k.value for k in BcKind], default="dirichlet",
                   help="fixed-face condition (default: dirichlet)")
    g.add_argument("--v0", type=_finite, default=1.0, help="face temperature scale (default: 1)")
    g.add_argument("--l0", type=_finite, default=1.0, help="latent heat scale (default: 1)")
    g.add_argument("--wm0", type=_finite, default=0.5, help="melt temperature scale (default: 0.5)")
    g.add_argument("--h0", type=_finite, default=1.0, help="heat transfer scale (default: 1)")
    g.add_argument("--sigma", type=_finite, default=1.0, help="Cole-Hopf constant (default: 1)")
    g.add_argument("--m", type=_finite, default=1.0, help="exponential map constant (default: 1)")
    if with_t:
        g.add_argument("--t", type=_finite, default=1.0, help="evaluation time (default: 1)")


def _add_output(p: argparse.ArgumentParser, what: str) -> None:
    p.add_argument("-o", "--output", default="-", help=f"{what} destination, '-' for stdout (default: -)")


def _params(args) -> SimilarityParams:
    return SimilarityParams(L0=args.l0, v0=args.v0, w_m0=args.wm0, h0=args.h0, bc_kind=args.bc,
                            sigma=args.sigma, m=args.m)


def _write(text: str, dest: str) -> None:
    if dest == "-":
        sys.stdout.write(text)
    else:
        Path(dest).write_text(text)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _r(x: float) -> str:
    return repr(float(x))


# ---------------------------------------------------------------------------
# subcommands


def cmd_gamma(args) -> int:
    sol = build_solution(_params(args))
    _write(_dump({"gamma": sol.gamma, "coeff_a": sol.coeff_a, "coeff_b": sol.coeff_b, "bc": args.bc}),
           args.output)
    return EXIT_OK


def cmd_chain(args) -> int:
    sol = build_solution(_params(args))
    t = args.t
    s = sol.s(t)
    zs = np.linspace(0.0, s, args.samples)
    zs[0], zs[-1] = 0.0, s
    buf = io.StringIO()
    out = csv.writer(buf, lineterminator="\n")
    out.writerow(["z", "t", "w", "w_z", "x", "psi", "y", "theta"])
    for z in zs:
        c = tr.chain_sample(sol, float(z), t)
        out.writerow([_r(c.z), _r(c.t), _r(c.w), _r(c.w_z), _r(c.x), _r(c.psi), _r(c.y), _r(c.theta)])
    _write(buf.getvalue(), args.output)
    bc = tr.boundary_curves(sol, t)
    summary = {"s": bc.s, "X0": bc.X0, "X1": bc.X1, "Y0": bc.Y0, "Y1": bc.Y1}
    if args.summary:
        Path(args.summary).write_text(_dump(summary))
    elif args.output != "-":
        Path(args.output + ".json").write_text(_dump(summary))
    else:
        sys.stderr.write(json.dumps(summary) + "\n")
    return EXIT_OK


def _merge(reports: list[ver.ResidualReport], tol) -> dict:
    if len(reports) == 1:
        return reports[0].to_dict()
    residuals = []
    for rep in reports:
        for r in rep.to_dict()["residuals"]:
            residuals.append({**r, "id": f"{rep.suite}: {r['id']}"})
    return {"suite": "+".join(rep.suite for rep in reports), "grid": reports[0].grid,
            "residuals": residuals, "tolerance": tol, "passed": all(rep.passed for rep in reports),
            "reports": [rep.to_dict() for rep in reports]}


def cmd_verify(args) -> int:
    suites = ver.SUITES if args.suite == "all" else tuple(args.suite.split(","))
    unknown = [s for s in suites if s not in ver.SUITES]
    if unknown:
        raise InvalidParams(f"unknown suite(s): {', '.join(unknown)}")
    sol = build_solution(_params(args))
    grid = ver.Grid(n_z=args.nz, n_t=args.nt)
    reports = ver.verify_suites(sol, suites, grid=grid, tol=args.tol)
    doc = _merge(reports, args.tol)
    _write(_dump(doc), args.output)
    return EXIT_OK if doc["passed"] else EXIT_FAILED


def cmd_fd(args) -> int:
    if args.config:
        cfg = sfd.FdConfig.from_json(args.config)
    else:
        cfg = sfd.FdConfig.for_family(_params(args), n_xi=args.n_xi, dt=args.dt, t0=args.t0, t_end=args.t_end)
    fd = sfd.fd_solve(cfg)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    sfd.write_trajectory_csv(fd, out_dir / f"{args.prefix}_trajectory.csv")
    sfd.write_field_csv(fd, out_dir / f"{args.prefix}_field.csv", stride=args.field_stride)
    report = sfd.fd_compare(fd, build_solution(cfg.params), tol=args.tol, stride=args.field_stride)
    text = report.to_json(indent=2) + "\n"
    (out_dir / f"{args.prefix}_report.json").write_text(text)
    _write(text, args.output)
    return EXIT_OK if report.passed else EXIT_FAILED


def cmd_converge(args) -> int:
    base = _params(args)
    report = ver.verify_convergence(base, args.h0_list, tol=args.tol)
    dirichlet = build_solution(base.replace(bc_kind=BcKind.DIRICHLET))
    gamma_rows = [["h0", "gamma_robin", "gamma_dirichlet", "gap"]]
    for h, g, gap in zip(report.notes["h0"], report.notes["gamma_robin"], report.notes["gaps"]):
        gamma_rows.append([_r(h), _r(g), _r(dirichlet.gamma), _r(gap)])
    fd_rows = [["h0", "s_rel_gap", "w_rel_gap"]]
    fd_gaps = []
    if not args.skip_fd:
        for h in report.notes["h0"]:
            cfg = sfd.FdConfig.for_family(base.replace(bc_kind=BcKind.ROBIN, h0=h), n_xi=args.n_xi, dt=args.dt)
            cmp_ = sfd.fd_compare(sfd.fd_solve(cfg), dirichlet, stride=max(1, int(round(0.05 / cfg.dt))))
            s_gap = cmp_.residual("s relative error").max_abs
            w_gap = cmp_.residual("w relative error").max_abs
            fd_rows.append([_r(h), _r(s_gap), _r(w_gap)])
            fd_gaps.append(w_gap)
    doc = report.to_dict()
    if fd_gaps:
        fd_decreasing = all(b < a for a, b in zip(fd_gaps, fd_gaps[1:]))
        doc["notes"]["fd_w_gaps"] = fd_gaps
        doc["notes"]["fd_strictly_decreasing"] = fd_decreasing
        doc["passed"] = doc["passed"] and (fd_decreasing or len(fd_gaps) < 2)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    for name, rows in (("converge_gamma.csv", gamma_rows), ("converge_fd.csv", fd_rows)):
        with open(out_dir / name, "w", newline="") as fh:
            csv.writer(fh, lineterminator="\n").writerows(rows)
    _write(_dump(doc), args.output)
    return EXIT_OK if doc["passed"] else EXIT_FAILED


def cmd_mkdv(args) -> int:
    p = mk.KinkParams(amp=args.amp, y_min=args.y_min, y_max=args.y_max, n_y=args.ny, n_t=args.nt,
                      t_range=(0.0, args.t_end))
    report = mk.verify_mkdv(p, tol=args.tol, reflect=not args.no_reflect, levels=args.levels)
    if args.samples_csv:
        mk.write_samples_csv(mk.hodograph_to_psi(p), args.samples_csv)
    _write(report.to_json(indent=2) + "\n", args.output)
    return EXIT_OK if report.passed else EXIT_FAILED


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="stefan-chain",
        description="Similarity solutions of the one-phase Stefan problem, their Cole-Hopf/reciprocal "
                    "images, and numerical checks of every link.",
        epilog="exit codes: 0 ok, 1 check failed, 2 bad flags, 3 degenerate root, "
               "4 singular/non-monotone map, 5 other numerical failure")
    sub = parser.add_subparsers(dest="command", required=True, metavar="subcommand")

    p = sub.add_parser("gamma", help="solve for the similarity root and profile coefficients")
    _add_params(p, with_t=False)
    _add_output(p, "JSON")
    p.set_defaults(func=cmd_gamma)

    p = sub.add_parser("chain", help="sample w, x, psi, y, theta across [0, s(t)] as CSV")
    _add_params(p)
    p.add_argument("--samples", type=_positive_int, default=11, help="points including both ends (default: 11)")
    p.add_argument("--summary", default=None,
                   help="JSON file for {s, X0, X1, Y0, Y1} (default: <output>.json, or stderr for stdout)")
    _add_output(p, "CSV")
    p.set_defaults(func=cmd_chain)

    p = sub.add_parser("verify", help="run residual suites and emit a JSON report")
    _add_params(p, with_t=False)
    p.add_argument("--suite", default="all", help="p1, p2, p3, p4, signs, all, or a comma list (default: all)")
    p.add_argument("--tol", type=_finite, default=None,
                   help="override every residual tolerance (default: per-residual tolerances)")
    p.add_argument("--nz", type=_positive_int, default=32, help="spatial grid nodes (default: 32)")
    p.add_argument("--nt", type=_positive_int, default=16, help="grid times (default: 16)")
    _add_output(p, "JSON")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("fd", help="front-fixing finite-difference run compared with the closed form")
    _add_params(p, with_t=False)
    p.add_argument("--config", default=None, help="JSON run configuration (overrides the parameter flags)")
    p.add_argument("--n-xi", type=_positive_int, default=200, help="nodes in xi (default: 200)")
    p.add_argument("--dt", type=_finite, default=1e-4, help="time step (default: 1e-4)")
    p.add_argument("--t0", type=_finite, default=0.25, help="start time (default: 0.25)")
    p.add_argument("--t-end", type=_finite, default=1.0, help="end time (default: 1)")
    p.add_argument("--tol", type=_finite, default=1e-3, help="relative error tolerance (default: 1e-3)")
    p.add_argument("--field-stride", type=_positive_int, default=100,
                   help="write every k-th time step of the field (default: 100)")
    p.add_argument("--out-dir", default=".", help="directory for CSV/JSON files (default: .)")
    p.add_argument("--prefix", default="fd", help="file name prefix (default: fd)")
    _add_output(p, "JSON report")
    p.set_defaults(func=cmd_fd)

    p = sub.add_parser("converge", help="Robin-to-Dirichlet convergence as h0 grows")
    _add_params(p, with_t=False)
    p.add_argument("--h0-list", type=_float_list, default=list(ver.DEFAULT_H0_LADDER),
                   help="comma-separated h0 values (default: 10,100,1000,10000)")
    p.add_argument("--tol", type=_finite, default=1e-3, help="bound on the final gamma gap (default: 1e-3)")
    p.add_argument("--n-xi", type=_positive_int, default=200, help="FD nodes (default: 200)")
    p.add_argument("--dt", type=_finite, default=1e-4, help="FD time step (default: 1e-4)")
    p.add_argument("--skip-fd", action="store_true", help="only the gamma table")
    p.add_argument("--out-dir", default=".", help="directory for the gap tables (default: .)")
    _add_output(p, "JSON report")
    p.set_defaults(func=cmd_converge)

    p = sub.add_parser("mkdv", help="kink solution and its hodograph image")
    p.add_argument("--amp", type=_finite, default=2.0, help="kink amplitude (default: 2)")
    p.add_argument("--ny", type=_positive_int, default=400, help="x samples (default: 400)")
    p.add_argument("--nt", type=_positive_int, default=40, help="t samples (default: 40)")
    p.add_argument("--y-min", type=_finite, default=0.75, help="left end of the y range (default: 0.75)")
    p.add_argument("--y-max", type=_finite, default=3.0, help="right end of the y range (default: 3)")
    p.add_argument("--t-end", type=_finite, default=0.25, help="final time, start is 0 (default: 0.25)")
    p.add_argument("--levels", type=_positive_int, default=3, help="refinement levels (default: 3)")
    p.add_argument("--tol", type=_finite, default=mk.CASIMIR_TOL, help="FD residual bound (default: 1e-3)")
    p.add_argument("--no-reflect", action="store_true", help="test the field without time reversal")
    p.add_argument("--samples-csv", default=None, help="also write y,t,x,v,psi samples here")
    _add_output(p, "JSON report")
    p.set_defaults(func=cmd_mkdv)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InvalidParams as exc:
        print(f"stefan-chain: invalid parameters: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DegenerateRoot as exc:
        print(f"stefan-chain: degenerate root: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except (SingularDenominator, NonMonotone) as exc:
        where = {k: getattr(exc, k) for k in ("z", "t", "location") if getattr(exc, k, None) is not None}
        print(f"stefan-chain: {type(exc).__name__}: {exc} {json.dumps(where)}", file=sys.stderr)
        return EXIT_SINGULAR
    except StefanChainError as exc:
        print(f"stefan-chain: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
