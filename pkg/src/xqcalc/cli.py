"""Command-line front end.

Subcommands:

* ``verify``  -- run a named verification suite, emit a JSON report.
* ``evolve``  -- trace <Q(t), psi> for a solution over a time grid.
* ``taylor``  -- compare a solution's truncation with its formal jet.
* ``huygens`` -- trace a radial bump signal through the 1d/2d/3d solutions.
* ``flux``    -- divergence-theorem report over random vector fields.

Exit codes: 0 all checks passed, 1 a check failed, 2 usage or parse error.
Reports and traces are byte-identical for identical flags and seed; the
environment variable XQCALC_SEED supplies the seed when --seed is absent.
"""

from __future__ import annotations

import argparse
import os
import sys
from typing import Sequence

from .distributions import pair_callable
from .parsing import PolyParseError, parse_poly
from .polynomials import DimensionMismatchError, UniPoly
from .quadrature import QuadConfig
from .verify import (
    SUITE_NAMES,
    DIM3_EXPANSION_NOTE,
    report_to_json,
    run_flux,
    run_suite,
)
from .wave import (
    SolutionKind,
    jet_pairing,
    pair_solution,
    radial_bump,
    solution_at,
    solution_jet,
)

_KIND_CHOICES = tuple(kind.value for kind in SolutionKind)


def _default_seed() -> int:
    raw = os.environ.get("XQCALC_SEED", "0")
    try:
        return int(raw)
    except ValueError:
        return 0


def _write_text(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", newline="") as fh:
            fh.write(text)


def _trace_csv(rows: Sequence[tuple[float, str, float]]) -> str:
    lines = ["t,series,value"]
    for t, series, value in rows:
        lines.append(f"{t:.12g},{series},{value:.12g}")
    return "\n".join(lines) + "\n"


def _trace_json(rows: Sequence[tuple[float, str, float]]) -> str:
    from .verify import _json_render

    payload = {
        "schema": 1,
        "rows": [{"t": t, "series": series, "value": value} for t, series, value in rows],
    }
    return _json_render(payload, 0) + "\n"


def _grid(t0: float, t1: float, steps: int) -> list[float]:
    if steps < 2:
        raise ValueError("steps must be at least 2")
    return [t0 + (t1 - t0) * i / (steps - 1) for i in range(steps)]


def cmd_verify(args: argparse.Namespace) -> int:
    quad = None
    if args.quad_nodes is not None or args.quad_panels is not None:
        quad = QuadConfig(args.quad_nodes or 16, args.quad_panels or 8)
    report = run_suite(
        args.suite,
        dims=args.dim or None,
        seed=args.seed,
        tol=args.tol,
        quad=quad,
    )
    _write_text(args.out, report_to_json(report))
    return 0 if report.passed else 1


def cmd_evolve(args: argparse.Namespace) -> int:
    kind = SolutionKind(args.kind)
    psi = parse_poly(args.psi, kind.output_dim)
    series = pair_solution(kind, psi)
    rows = [(t, kind.value, series.eval(t)) for t in _grid(args.t0, args.t1, args.steps)]
    text = _trace_csv(rows) if args.format == "csv" else _trace_json(rows)
    _write_text(args.out, text)
    return 0


def _format_coeffs(series: UniPoly, order: int) -> str:
    return "[" + ", ".join(f"{series.coeff(k):.12g}" for k in range(order)) + "]"


def cmd_taylor(args: argparse.Namespace) -> int:
    kind = SolutionKind(args.kind)
    psi = parse_poly(args.psi, kind.output_dim)
    order = args.order
    truncated = pair_solution(kind, psi).truncate(order)
    jet = solution_jet(kind, order)
    series = jet_pairing(jet, psi).truncate(order)
    residual = truncated - series
    print(f"solution {kind.value}, truncation below t^{order}")
    print(f"  solution coefficients: {_format_coeffs(truncated, order)}")
    print(f"  jet coefficients:      {_format_coeffs(series, order)}")
    print(f"  max residual:          {residual.max_abs_coeff():.3e}")
    if kind is SolutionKind.D3_VELOCITY:
        print(f"  note: {DIM3_EXPANSION_NOTE}")
    return 0


def cmd_huygens(args: argparse.Namespace) -> int:
    if args.radius <= 0 or args.width <= 0:
        raise ValueError("radius and width must be positive")
    cfg = QuadConfig(args.quad_nodes or 16, args.quad_panels or 8)
    kinds = (SolutionKind.D1_SPHERE, SolutionKind.D2_VELOCITY, SolutionKind.D3_VELOCITY)
    rows: list[tuple[float, str, float]] = []
    grid = _grid(args.t0, args.t1, args.steps)
    for kind in kinds:
        bump = radial_bump(args.radius, args.width, kind.output_dim)
        for t in grid:
            rows.append((t, kind.value, pair_callable(solution_at(kind, t), bump, cfg)))
    _write_text(args.out, _trace_csv(rows))
    return 0


def cmd_flux(args: argparse.Namespace) -> int:
    report = run_flux(seed=args.seed, count=args.count, max_degree=args.max_degree)
    _write_text(args.out, report_to_json(report))
    return 0 if report.passed else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="xqcalc",
        description="Distribution calculus: verification suites and solution traces.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_verify = sub.add_parser("verify", help="run a verification suite")
    p_verify.add_argument("--suite", choices=("all",) + SUITE_NAMES, default="all")
    p_verify.add_argument("--dim", type=int, choices=(1, 2, 3), action="append")
    p_verify.add_argument("--seed", type=int, default=_default_seed())
    p_verify.add_argument("--tol", type=float, default=None,
                          help="override every check tolerance")
    p_verify.add_argument("--quad-nodes", type=int, default=None)
    p_verify.add_argument("--quad-panels", type=int, default=None)
    p_verify.add_argument("--out", default=None)
    p_verify.set_defaults(func=cmd_verify)

    p_evolve = sub.add_parser("evolve", help="trace a solution pairing over time")
    p_evolve.add_argument("--kind", choices=_KIND_CHOICES, required=True)
    p_evolve.add_argument("--psi", required=True, help="polynomial test function")
    p_evolve.add_argument("--t0", type=float, default=0.0)
    p_evolve.add_argument("--t1", type=float, default=1.0)
    p_evolve.add_argument("--steps", type=int, default=11)
    p_evolve.add_argument("--out", default=None)
    p_evolve.add_argument("--format", choices=("csv", "json"), default="csv")
    p_evolve.set_defaults(func=cmd_evolve)

    p_taylor = sub.add_parser("taylor", help="compare a solution with its formal jet")
    p_taylor.add_argument("--kind", choices=_KIND_CHOICES, required=True)
    p_taylor.add_argument("--psi", required=True)
    p_taylor.add_argument("--order", type=int, default=5, choices=range(1, 9),
                          metavar="1..8")
    p_taylor.set_defaults(func=cmd_taylor)

    p_huygens = sub.add_parser(
        "huygens", help="trace a radial bump through the 1d/2d/3d solutions"
    )
    p_huygens.add_argument("--radius", type=float, default=3.0)
    p_huygens.add_argument("--width", type=float, default=0.5)
    p_huygens.add_argument("--t0", type=float, default=0.0)
    p_huygens.add_argument("--t1", type=float, default=6.0)
    p_huygens.add_argument("--steps", type=int, default=25)
    p_huygens.add_argument("--out", default=None)
    p_huygens.add_argument("--quad-nodes", type=int, default=None)
    p_huygens.add_argument("--quad-panels", type=int, default=None)
    p_huygens.set_defaults(func=cmd_huygens)

    p_flux = sub.add_parser("flux", help="divergence-theorem property report")
    p_flux.add_argument("--seed", type=int, default=_default_seed())
    p_flux.add_argument("--count", type=int, default=100)
    p_flux.add_argument("--max-degree", type=int, default=6)
    p_flux.add_argument("--out", default=None)
    p_flux.set_defaults(func=cmd_flux)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except PolyParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (DimensionMismatchError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
