"""Command-line interface.

Subcommands
-----------
classify      exact periodic-orbit answer for one map
orbit         follow one seed until repeat, certified escape, or cap
oracle        brute-force cross-check of the classifier over parameter grids
bounds        landmark curves (certified decimals) over a shift range
modscan       cycle survey over Z_M ranges, checkpoint-resumable CSV
latticecheck  does a rational polynomial map step*Z into itself?
conjugate     normal-form reduction of an integer quadratic

Exit codes: 0 success (and agreement), 1 verified disagreement (anomaly),
2 usage error, 3 I/O or checkpoint failure.

Grids accept comma lists and inclusive ranges: "4,6,8", "-10..5000", "1,3..5".
Workers default to the ORBITFORGE_WORKERS environment variable.  All integer
output is full decimal, never scientific notation.
"""

from __future__ import annotations

import argparse
import json
import multiprocessing
import os
import sys
from fractions import Fraction
from pathlib import Path

from .classify import (
    classify_power,
    classify_quad,
    solve_pronic,
)
from .kernel import (
    DecimalApprox,
    approx_band_floor,
    approx_band_floor_q,
    approx_max_fixed_point,
    approx_max_fixed_point_q,
    band_floor_is_real_q,
    format_decimal,
    perfect_square_root,
)
from .maps import PowerMap, QuadMap, RationalPoly, conjugacy_of_quad, lattice_check, parse_rational
from .modular import CheckpointError, max_cycle_scan, read_checkpoint
from .oracle import cross_check, escape_bound, iterate_with_escape

__all__ = ["main", "entrypoint", "parse_grid", "render_classification_json"]

MODSCAN_CSV_HEADER = "modulus,max_cycle_length,cycle_count,nodes_on_cycles,max_tail_length"
BOUNDS_CSV_HEADER = "k,max_fixed_point,band_floor,max_fixed_point_minus_1,marked,witness_j"


def parse_grid(text: str) -> list[int]:
    """Parse '2', '4,6,8', '-10..5000', or mixes into an integer list."""
    values: list[int] = []
    for part in text.split(","):
        part = part.strip()
        if ".." in part:
            lo_text, hi_text = part.split("..", 1)
            lo, hi = int(lo_text), int(hi_text)
            if hi < lo:
                raise ValueError(f"empty range: {part!r}")
            values.extend(range(lo, hi + 1))
        elif part:
            values.append(int(part))
    if not values:
        raise ValueError(f"empty grid: {text!r}")
    return values


def _grid(text: str) -> list[int]:
    try:
        return parse_grid(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _build_map(family: str, params: list[int]):
    if family == "power":
        if len(params) != 2:
            raise ValueError("power maps take two integers: degree shift")
        return PowerMap(params[0], params[1])
    if len(params) != 3:
        raise ValueError("quad maps take three integers: a b c")
    return QuadMap(params[0], params[1], params[2])


def _resolve_workers(args) -> int:
    workers = args.workers
    if workers is None:
        workers = int(os.environ.get("ORBITFORGE_WORKERS", "1"))
    if workers < 1:
        raise ValueError("workers must be >= 1")
    return workers


def _check_format(args, allowed: tuple[str, ...]) -> str:
    if args.format not in allowed:
        raise ValueError(
            f"format {args.format!r} is not supported here (choose from {', '.join(allowed)})"
        )
    return args.format


def _emit(text: str, out: Path | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        out.write_text(text, encoding="utf-8")


# ====================================================================
# renderers
# ====================================================================


def _map_payload(the_map) -> dict:
    if isinstance(the_map, PowerMap):
        return {"family": "power", "degree": the_map.degree, "shift": the_map.shift}
    return {"family": "quad", "a": the_map.a, "b": the_map.b, "c": the_map.c}


def _map_label(the_map) -> str:
    if isinstance(the_map, PowerMap):
        return f"power degree={the_map.degree} shift={the_map.shift}"
    return f"quad a={the_map.a} b={the_map.b} c={the_map.c}"


def _dump(payload) -> str:
    return json.dumps(payload, indent=2) + "\n"


def render_classification_json(the_map, cls) -> str:
    """Canonical JSON for a classification; parsing and re-rendering it with
    json.dumps(..., indent=2) reproduces the bytes exactly."""
    witness = None
    if cls.witness is not None or cls.condition is not None:
        witness = {"j": cls.witness, "condition": cls.condition}
    return _dump(
        {
            "map": _map_payload(the_map),
            "fixed_points": [str(p) for p in cls.fixed_points],
            "two_cycles": [[str(p) for p in c.points] for c in cls.two_cycles],
            "higher_cycles": [[str(p) for p in c.points] for c in cls.higher_cycles],
            "verdict": cls.behavior,
            "witness": witness,
        }
    )


def _render_classification_table(the_map, cls) -> str:
    lines = [f"map: {_map_label(the_map)}"]
    lines.append(
        "fixed points: " + (", ".join(str(p) for p in cls.fixed_points) or "none")
    )
    if cls.two_cycles:
        lines.append(
            "2-cycles: " + "; ".join("(" + ", ".join(map(str, c.points)) + ")" for c in cls.two_cycles)
        )
    else:
        lines.append("2-cycles: none")
    if cls.higher_cycles:
        lines.append(
            "higher cycles: "
            + "; ".join("(" + ", ".join(map(str, c.points)) + ")" for c in cls.higher_cycles)
        )
    else:
        lines.append("higher cycles: none")
    lines.append(f"verdict: {cls.behavior}")
    if cls.witness is not None or cls.condition is not None:
        lines.append(f"witness: j={cls.witness} ({cls.condition})")
    else:
        lines.append("witness: none")
    return "\n".join(lines) + "\n"


def _decimal_minus_one(d: DecimalApprox) -> str:
    scaled = round(d.as_fraction() * 10**d.digits)
    return format_decimal(scaled - 10**d.digits, d.digits)


# ====================================================================
# subcommand handlers
# ====================================================================


def cmd_classify(args) -> int:
    fmt = _check_format(args, ("table", "json"))
    the_map = _build_map(args.family, args.params)
    cls = classify_power(the_map) if isinstance(the_map, PowerMap) else classify_quad(the_map)
    if fmt == "json":
        _emit(render_classification_json(the_map, cls), args.out)
    else:
        _emit(_render_classification_table(the_map, cls), args.out)
    return 0


def cmd_orbit(args) -> int:
    fmt = _check_format(args, ("table", "json"))
    the_map = _build_map(args.family, args.params)
    cap = args.cap if args.cap is not None else 4 * escape_bound(the_map).bound + 4
    trace = iterate_with_escape(the_map, args.seed, cap)
    if fmt == "json":
        payload = {
            "map": _map_payload(the_map),
            "seed": str(trace.seed),
            "points": [str(p) for p in trace.points],
            "outcome": trace.outcome,
            "cycle": [str(p) for p in trace.cycle.points] if trace.cycle else None,
            "tail_length": trace.tail_length,
            "escape_step": trace.escape_step,
            "certificate": trace.certificate,
        }
        _emit(_dump(payload), args.out)
        return 0
    lines = [f"map: {_map_label(the_map)}", f"seed: {trace.seed}"]
    lines.append("trace: " + " -> ".join(str(p) for p in trace.points))
    if trace.outcome == "enters_cycle":
        cyc = ", ".join(str(p) for p in trace.cycle.points)
        lines.append(
            f"outcome: enters cycle ({cyc}) period={trace.cycle.period} tail={trace.tail_length}"
        )
    elif trace.outcome == "escapes":
        lines.append(f"outcome: escapes at step {trace.escape_step}: {trace.certificate}")
    else:
        lines.append(f"outcome: truncated at cap {trace.cap}")
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def _oracle_task(the_map) -> tuple[str, bool, str]:
    report = cross_check(the_map)
    return _map_label(the_map), report.agree, report.diff


def cmd_oracle(args) -> int:
    fmt = _check_format(args, ("table", "json"))
    if args.family == "power":
        if args.m is None or args.k is None:
            raise ValueError("oracle power needs --m and --k grids")
        if any(m < 1 for m in args.m):
            raise ValueError("degrees must be >= 1")
        maps = [PowerMap(m, k) for m in args.m for k in args.k]
    else:
        if args.a is None or args.b is None or args.c is None:
            raise ValueError("oracle quad needs --a, --b and --c grids")
        maps = [
            QuadMap(a, b, c)
            for a in args.a
            if a != 0  # zero leading coefficient is not a quadratic; skipped
            for b in args.b
            for c in args.c
        ]
        if not maps:
            raise ValueError("grid contains no valid quadratics")
    workers = _resolve_workers(args)
    disagreements: list[tuple[str, str]] = []
    lines: list[str] = []
    if workers > 1 and len(maps) > 1:
        chunk = max(1, len(maps) // (workers * 8))
        with multiprocessing.Pool(workers) as pool:
            results = pool.imap(_oracle_task, maps, chunksize=chunk)
            for label, agree, diff in results:
                if not agree:
                    disagreements.append((label, diff))
                if fmt == "table":
                    lines.append(f"{label}: {'agree' if agree else 'DISAGREE: ' + diff}")
    else:
        for the_map in maps:
            label, agree, diff = _oracle_task(the_map)
            if not agree:
                disagreements.append((label, diff))
            if fmt == "table":
                lines.append(f"{label}: {'agree' if agree else 'DISAGREE: ' + diff}")
    if fmt == "json":
        payload = {
            "checked": len(maps),
            "agree": len(maps) - len(disagreements),
            "disagreements": [{"map": label, "diff": diff} for label, diff in disagreements],
        }
        _emit(_dump(payload), args.out)
    else:
        lines.append(
            f"checked {len(maps)} maps: "
            + ("all agree" if not disagreements else f"{len(disagreements)} disagreements")
        )
        _emit("\n".join(lines) + "\n", args.out)
    return 1 if disagreements else 0


def _bounds_rows(ks: list[int], digits: int, odd_linear: bool) -> list[dict]:
    rows = []
    for k in ks:
        if k < 0:
            raise ValueError("shift grid must be nonnegative (real fixed points)")
        if odd_linear:
            q = Fraction(k) - Fraction(1, 4)
            top = approx_max_fixed_point_q(q, digits)
            floor = approx_band_floor_q(q, digits) if band_floor_is_real_q(q) else None
            if perfect_square_root(k) is not None:
                marked, witness = "square", perfect_square_root(k)
            elif perfect_square_root(k - 1) is not None:
                marked, witness = "square_plus_one", perfect_square_root(k - 1)
            else:
                marked, witness = "", None
        else:
            if k == 0:
                top = DecimalApprox("1." + "0" * digits, digits, Fraction(0))
            else:
                top = approx_max_fixed_point(2, k, digits)
            floor = approx_band_floor(2, k, digits) if k >= 2 else None
            hit = solve_pronic(k)
            marked, witness = (hit[1], hit[0]) if hit else ("", None)
        rows.append(
            {
                "k": k,
                "top": top,
                "floor": floor,
                "top_minus_one": _decimal_minus_one(top),
                "marked": marked,
                "witness": witness,
            }
        )
    return rows


def _bounds_csv(rows: list[dict]) -> str:
    lines = [BOUNDS_CSV_HEADER]
    for r in rows:
        lines.append(
            ",".join(
                [
                    str(r["k"]),
                    r["top"].value,
                    r["floor"].value if r["floor"] else "",
                    r["top_minus_one"],
                    r["marked"],
                    "" if r["witness"] is None else str(r["witness"]),
                ]
            )
        )
    return "\n".join(lines) + "\n"


def _bounds_svg(rows: list[dict]) -> str:
    """Deterministic, self-contained landmark chart.

    Solid curves for the max fixed point and the band floor, a dashed curve
    one below the fixed point, and dots at the marked parameters.
    """
    width, height, margin = 800, 480, 55
    ks = [r["k"] for r in rows]
    k_lo, k_hi = min(ks), max(ks)
    v_hi = max(float(r["top"].as_fraction()) for r in rows) + 0.5
    k_span = max(k_hi - k_lo, 1)

    def sx(k: float) -> float:
        return margin + (k - k_lo) * (width - 2 * margin) / k_span

    def sy(v: float) -> float:
        return height - margin - v * (height - 2 * margin) / v_hi

    def path(points: list[tuple[float, float]]) -> str:
        return " ".join(f"{x:.2f},{y:.2f}" for x, y in points)

    top_pts = [(sx(r["k"]), sy(float(r["top"].as_fraction()))) for r in rows]
    dash_pts = [(sx(r["k"]), sy(float(Fraction(r["top_minus_one"])))) for r in rows]
    floor_pts = [
        (sx(r["k"]), sy(float(r["floor"].as_fraction()))) for r in rows if r["floor"]
    ]
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<line x1="{margin}" y1="{height - margin}" x2="{width - margin}" '
        f'y2="{height - margin}" stroke="black"/>',
        f'<line x1="{margin}" y1="{margin}" x2="{margin}" y2="{height - margin}" '
        f'stroke="black"/>',
        f'<text x="{margin}" y="{height - margin + 30}" font-size="12">{k_lo}</text>',
        f'<text x="{width - margin}" y="{height - margin + 30}" font-size="12" '
        f'text-anchor="end">{k_hi}</text>',
        f'<text x="{width // 2}" y="{height - 12}" font-size="12" '
        f'text-anchor="middle">parameter</text>',
        f'<polyline fill="none" stroke="#1f4e9c" stroke-width="1.5" points="{path(top_pts)}"/>',
        f'<polyline fill="none" stroke="#1f4e9c" stroke-width="1" '
        f'stroke-dasharray="6 4" points="{path(dash_pts)}"/>',
    ]
    if floor_pts:
        parts.append(
            f'<polyline fill="none" stroke="#b24d22" stroke-width="1.5" '
            f'points="{path(floor_pts)}"/>'
        )
    for r in rows:
        if r["marked"]:
            x = sx(r["k"])
            y = sy(float(r["top"].as_fraction()))
            parts.append(f'<circle cx="{x:.2f}" cy="{y:.2f}" r="4" fill="#137a13"/>')
    parts.append(
        f'<text x="{width - margin}" y="{margin}" font-size="12" text-anchor="end">'
        "solid: max fixed point / band floor; dashed: fixed point - 1; "
        "dots: cycle-bearing parameters</text>"
    )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def cmd_bounds(args) -> int:
    fmt = _check_format(args, ("table", "json", "csv", "svg"))
    if args.digits < 1:
        raise ValueError("digits must be >= 1")
    rows = _bounds_rows(args.k, args.digits, args.odd_linear)
    if fmt == "svg":
        _emit(_bounds_svg(rows), args.out)
    elif fmt == "json":
        payload = [
            {
                "k": r["k"],
                "max_fixed_point": r["top"].value,
                "band_floor": r["floor"].value if r["floor"] else None,
                "max_fixed_point_minus_1": r["top_minus_one"],
                "marked": r["marked"] or None,
                "witness_j": r["witness"],
            }
            for r in rows
        ]
        _emit(_dump(payload), args.out)
    elif fmt == "csv":
        _emit(_bounds_csv(rows), args.out)
    else:
        lines = [BOUNDS_CSV_HEADER.replace(",", "  ")]
        for r in rows:
            lines.append(
                "  ".join(
                    [
                        str(r["k"]),
                        r["top"].value,
                        r["floor"].value if r["floor"] else "-",
                        r["top_minus_one"],
                        r["marked"] or "-",
                        "-" if r["witness"] is None else str(r["witness"]),
                    ]
                )
            )
        _emit("\n".join(lines) + "\n", args.out)
    return 0


def _scan_csv_row(summary) -> str:
    return (
        f"{summary.modulus},{summary.max_cycle_length},{summary.cycle_count},"
        f"{summary.nodes_on_cycles},{summary.max_tail_length}\n"
    )


def cmd_modscan(args) -> int:
    _check_format(args, ("csv",))
    the_map = _build_map(args.family, args.params)
    if args.stride < 1:
        raise ValueError("stride must be >= 1")
    moduli = sorted(set(args.M))[:: args.stride]
    workers = _resolve_workers(args)
    resume = False
    if args.checkpoint is not None and args.checkpoint.exists() and args.checkpoint.stat().st_size:
        done = read_checkpoint(args.checkpoint, the_map)  # may raise CheckpointError
        resume = done is not None and args.out is not None and args.out.exists()
        if done is not None and not resume:
            args.checkpoint.unlink()  # checkpoint without a CSV to extend: restart
    rows = max_cycle_scan(
        the_map, moduli, workers=workers, checkpoint_path=args.checkpoint
    )
    if args.out is None:
        sys.stdout.write(MODSCAN_CSV_HEADER + "\n")
        for row in rows:
            sys.stdout.write(_scan_csv_row(row.summary))
    else:
        with open(args.out, "a" if resume else "w", encoding="ascii", newline="") as fh:
            if not resume:
                fh.write(MODSCAN_CSV_HEADER + "\n")
            for row in rows:
                fh.write(_scan_csv_row(row.summary))
                fh.flush()
    return 0


def cmd_latticecheck(args) -> int:
    fmt = _check_format(args, ("table", "json"))
    poly = RationalPoly(args.coeffs)
    cert = lattice_check(poly)  # ValueError for degree < 2 -> usage error
    orbit: list[Fraction] = []
    anomaly = False
    if cert.holds:
        x = Fraction(cert.step)
        orbit.append(x)
        for _ in range(5):
            x = poly(x)
            orbit.append(x)
        anomaly = any(v.denominator != 1 or v.numerator % cert.step for v in orbit)
    if fmt == "json":
        payload = {
            "coefficients": [str(c) for c in poly.coeffs],
            "step": cert.step,
            "holds": cert.holds,
            "reason": cert.reason,
            "sample_orbit": [str(v) for v in orbit] if cert.holds else None,
            "anomaly": anomaly,
        }
        _emit(_dump(payload), args.out)
    else:
        terms = " + ".join(
            f"{c}*x^{i}" if i else str(c) for i, c in enumerate(poly.coeffs) if c
        )
        lines = [
            f"polynomial: {terms}",
            f"step: {cert.step}",
            f"holds: {'yes' if cert.holds else 'no'} ({cert.reason})",
        ]
        if cert.holds:
            lines.append(
                f"sample orbit (seed {cert.step}): " + " -> ".join(str(v) for v in orbit)
            )
            lines.append(
                "orbit stays in the lattice"
                if not anomaly
                else "ANOMALY: orbit left the lattice"
            )
        _emit("\n".join(lines) + "\n", args.out)
    return 1 if anomaly else 0


def cmd_conjugate(args) -> int:
    fmt = _check_format(args, ("table", "json"))
    the_map = QuadMap(args.a, args.b, args.c)
    con = conjugacy_of_quad(the_map)
    if fmt == "json":
        payload = {
            "map": _map_payload(the_map),
            "scale": str(con.scale),
            "offset": str(con.offset),
            "q": str(con.q),
        }
        _emit(_dump(payload), args.out)
    else:
        lines = [
            f"map: {_map_label(the_map)}",
            f"normal form: x^2 - ({con.q})",
            f"push: r = {con.scale}*s + {con.offset}",
            f"pull: s = (r - {con.offset}) / {con.scale}",
        ]
        _emit("\n".join(lines) + "\n", args.out)
    return 0


# ====================================================================
# parser assembly
# ====================================================================


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="orbitforge",
        description="Exact classification and verification of periodic integer orbits.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--format", choices=("table", "json", "csv", "svg"), default=None
    )
    common.add_argument("--out", type=Path, default=None)
    common.add_argument("--workers", type=int, default=None)
    common.add_argument("--cap", type=int, default=None)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", parents=[common], help="classify one map")
    p.add_argument("family", choices=("power", "quad"))
    p.add_argument("params", nargs="+", type=int)
    p.set_defaults(handler=cmd_classify, default_format="table")

    p = sub.add_parser("orbit", parents=[common], help="trace one seed")
    p.add_argument("family", choices=("power", "quad"))
    p.add_argument("params", nargs="+", type=int)
    p.add_argument("--seed", type=int, required=True)
    p.set_defaults(handler=cmd_orbit, default_format="table")

    p = sub.add_parser("oracle", parents=[common], help="cross-check grids")
    p.add_argument("family", choices=("power", "quad"))
    p.add_argument("--m", type=_grid, default=None)
    p.add_argument("--k", type=_grid, default=None)
    p.add_argument("--a", type=_grid, default=None)
    p.add_argument("--b", type=_grid, default=None)
    p.add_argument("--c", type=_grid, default=None)
    p.set_defaults(handler=cmd_oracle, default_format="table")

    p = sub.add_parser("bounds", parents=[common], help="landmark curves")
    p.add_argument("--k", type=_grid, required=True)
    p.add_argument("--digits", type=int, default=3)
    p.add_argument(
        "--odd-linear",
        action="store_true",
        help="evaluate the family x^2 - (k - 1/4), the normal form of quadratics "
        "with odd linear coefficient; marks k = j^2 and k = j^2 + 1",
    )
    p.set_defaults(handler=cmd_bounds, default_format="table")

    p = sub.add_parser("modscan", parents=[common], help="cycle survey over Z_M")
    p.add_argument("family", choices=("power", "quad"))
    p.add_argument("params", nargs="+", type=int)
    p.add_argument("--M", type=_grid, required=True)
    p.add_argument("--stride", type=int, default=1)
    p.add_argument("--checkpoint", type=Path, default=None)
    p.set_defaults(handler=cmd_modscan, default_format="csv")

    p = sub.add_parser(
        "latticecheck", parents=[common], help="lattice stability of a rational polynomial"
    )
    p.add_argument("coeffs", nargs="+", type=_rational, help="constant term first")
    p.set_defaults(handler=cmd_latticecheck, default_format="table")

    p = sub.add_parser("conjugate", parents=[common], help="normal form of a quadratic")
    p.add_argument("a", type=int)
    p.add_argument("b", type=int)
    p.add_argument("c", type=int)
    p.set_defaults(handler=cmd_conjugate, default_format="table")

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.format is None:
        args.format = args.default_format
    try:
        return args.handler(args)
    except CheckpointError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entrypoint() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    entrypoint()
