"""Command-line front end.

Exit status: 0 on success, 1 for unreadable or malformed input, 2 when a
computed result violates an internal consistency check.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path
from typing import List, Optional, Sequence

from . import fixtures
from .cohomology import barcode_to_json, bars_from_json, persistent_cohomology
from .complex import (
    ComplexError,
    FilteredComplex,
    build_vr,
    read_distance_matrix,
    read_filtration,
    read_points,
    write_filtration,
)
from .cup import CupLengthDiagram, cup_length_diagram, invariant_from_diagram
from .distances import bottleneck, erosion
from .flags import InternalConsistencyError, LCupBarcode, all_lcup_barcodes, lcup_barcode, phi_rank
from .invariants import StepInvariant, mobius_invert
from .linalg import check_field
from .svg import emit_svg

FORMATS = ("points", "distmat", "filtration", "invariant-json")
FIXTURES = ("pinched-torus", "two-disk", "torus-vs-wedge", "t2s3-vs-s1s2s1")


class InputError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    # usage mistakes are input errors, not the argparse default status 2
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


# -- input ---------------------------------------------------------------------

def _guess_format(path: str) -> str:
    suffix = Path(path).suffix.lower()
    if suffix == ".json":
        return "invariant-json"
    if suffix in (".csv", ".pts", ".xyz"):
        return "points"
    if suffix in (".dist", ".dm", ".distmat"):
        return "distmat"
    return "filtration"


def load_complex(args) -> FilteredComplex:
    fmt = args.format or _guess_format(args.input)
    if fmt == "filtration":
        return read_filtration(args.input)
    if fmt == "points":
        pts = read_points(args.input)
        return build_vr(max_dim=args.max_dim, max_scale=args.max_scale, points=pts)
    if fmt == "distmat":
        return build_vr(read_distance_matrix(args.input), args.max_dim, args.max_scale)
    raise InputError(f"format {fmt!r} does not describe a filtration")


def _read_json(path: str):
    try:
        return json.loads(Path(path).read_text())
    except json.JSONDecodeError as e:
        raise InputError(f"{path}:{e.lineno}: invalid JSON ({e.msg})") from e


def load_invariant(path: str) -> StepInvariant:
    """An invariant JSON, or a cup-length diagram JSON (converted to its invariant)."""
    data = _read_json(path)
    try:
        if isinstance(data, dict) and "bars" in data and "grid" in data:
            return invariant_from_diagram(CupLengthDiagram.from_json(data))
        return StepInvariant.from_json(data)
    except (KeyError, TypeError, ValueError) as e:
        raise InputError(f"{path}: not an invariant ({e})") from e


def load_bars(path: str, degree: Optional[int]) -> List[tuple]:
    """Bars from barcode JSON, l-cup barcode JSON, or a list of [birth, death] pairs."""
    data = _read_json(path)
    try:
        if isinstance(data, dict) and "bars" in data:
            return [b for b in LCupBarcode.from_json(data).bars]
        if isinstance(data, list) and data and isinstance(data[0], dict):
            triples = bars_from_json(data)
            return [(b, d) for p, b, d in triples if degree is None or p == degree]
        return [(float(b), math.inf if d == "inf" else float(d)) for b, d in data]
    except (KeyError, TypeError, ValueError) as e:
        raise InputError(f"{path}: not a barcode ({e})") from e


# -- output --------------------------------------------------------------------

def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"


def _emit(args, payload, svg_obj=None) -> None:
    text = payload if isinstance(payload, str) else _dump(payload)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    if getattr(args, "svg", None) and svg_obj is not None:
        emit_svg(svg_obj, args.svg)


def _num(x: float):
    return "inf" if x == math.inf else x


def _decimal(x: float) -> str:
    return "inf" if x == math.inf else f"{x:.10f}"


# -- subcommands ---------------------------------------------------------------

def cmd_vr(args) -> int:
    c = load_complex(args)
    counts = {}
    for d in c.dims.tolist():
        counts[str(d)] = counts.get(str(d), 0) + 1
    stats = {
        "vertices": c.vertex_count,
        "simplices": len(c),
        "by_dimension": counts,
        "max_dim": c.max_dim,
        "grid_size": len(c.grid),
        "max_value": c.grid[-1] if c.grid else None,
    }
    if args.out:
        Path(args.out).write_text(write_filtration(c))
    sys.stdout.write(_dump(stats))
    return 0


def cmd_barcode(args) -> int:
    bc = persistent_cohomology(load_complex(args), args.field)
    _emit(args, barcode_to_json(bc), [b.interval for b in bc.bars])
    return 0


def cmd_cupdgm(args) -> int:
    bc = persistent_cohomology(load_complex(args), args.field)
    dgm = cup_length_diagram(bc)
    _emit(args, dgm.to_json(), dgm)
    return 0


def cmd_cuplength(args) -> int:
    bc = persistent_cohomology(load_complex(args), args.field)
    inv = invariant_from_diagram(cup_length_diagram(bc), bc.grid)
    _emit(args, inv.to_json(), inv)
    return 0


def cmd_lcup(args) -> int:
    bc = persistent_cohomology(load_complex(args), args.field)
    res = lcup_barcode(bc, args.ell, args.deg)
    _emit(args, res.to_json(), res.bars)
    return 0


def cmd_phirank(args) -> int:
    bc = persistent_cohomology(load_complex(args), args.field)
    inv = phi_rank(bc, args.max_ell)
    _emit(args, inv.to_json(), inv)
    return 0


def cmd_erosion(args) -> int:
    i1, i2 = load_invariant(args.first), load_invariant(args.second)
    try:
        res = erosion(i1, i2)
    except ValueError as e:
        raise InputError(str(e)) from e
    lines = _decimal(res.value) + "\n"
    if args.candidates:
        lines += json.dumps(res.candidates) + "\n"
    _emit(args, lines)
    return 0


def cmd_bottleneck(args) -> int:
    b1, b2 = load_bars(args.first, args.deg), load_bars(args.second, args.deg)
    _emit(args, _decimal(bottleneck(b1, b2)) + "\n")
    return 0


def _check(ok: bool, what: str) -> None:
    if not ok:
        raise InternalConsistencyError(f"reproduction check failed: {what}")


def repro(name: str) -> dict:
    """Recompute a fixture; raises InternalConsistencyError on a mismatch."""
    if name == "pinched-torus":
        c = fixtures.pinched_torus()
        bc = persistent_cohomology(c)
        dgm = cup_length_diagram(bc)
        inv = invariant_from_diagram(dgm, c.grid)
        expected = StepInvariant.from_function(c.grid, fixtures.pinched_torus_cup)
        _check(inv == expected, "cup-length invariant")
        _check(
            dict(dgm.entries) == {(0.0, 3.0): 1, (1.0, math.inf): 1, (2.0, math.inf): 1, (2.0, 3.0): 2},
            "cup-length diagram",
        )
        lcups = all_lcup_barcodes(bc)
        return {
            "fixture": name,
            "barcode": [[b.degree, b.birth, _num(b.death)] for b in bc.bars],
            "cup_length_diagram": dgm.to_json(),
            "cup_length_invariant": inv.to_json(),
            "lcup_barcodes": [x.to_json() for x in lcups],
        }
    if name == "two-disk":
        c = fixtures.two_disk()
        bc = persistent_cohomology(c)
        dgm = cup_length_diagram(bc)
        inv = invariant_from_diagram(dgm, c.grid)
        value = mobius_invert(inv).at(1.0, 1.0)
        _check(dict(dgm.entries) == {(0.0, 2.0): 1, (1.0, 3.0): 1}, "cup-length diagram")
        _check(value == -1, "Möbius value at [1, 1]")
        return {
            "fixture": name,
            "cup_length_diagram": dgm.to_json(),
            "mobius_at": {"interval": [1.0, 1.0], "value": value},
        }
    if name == "torus-vs-wedge":
        res = erosion(fixtures.vr_torus_cup(), fixtures.vr_wedge_cup())
        _check(abs(res.value - math.pi / 3) < 1e-9, "erosion distance")
        return {"fixture": name, "erosion": res.value, "expected": math.pi / 3}
    if name == "t2s3-vs-s1s2s1":
        res = erosion(fixtures.vr_torus_wedge_sphere_rank(), fixtures.vr_product_wedge_circle_rank())
        _check(abs(res.value - math.pi / 3) < 1e-9, "erosion distance")
        return {"fixture": name, "erosion": res.value, "expected": math.pi / 3}
    raise InputError(f"unknown fixture {name!r}; choose from {', '.join(FIXTURES)}")


def cmd_repro(args) -> int:
    _emit(args, repro(args.fixture))
    return 0


# -- parser --------------------------------------------------------------------

def _common(p: argparse.ArgumentParser, with_input: bool = True) -> None:
    if with_input:
        p.add_argument("input", help="input file")
        p.add_argument("--format", choices=FORMATS, help="input format (guessed from the suffix if omitted)")
        p.add_argument("--field", type=int, default=2, metavar="P", help="prime characteristic (default 2)")
        p.add_argument("--max-dim", type=int, default=2, metavar="D", help="top simplex dimension for Rips input")
        p.add_argument("--max-scale", type=float, default=math.inf, metavar="S", help="largest Rips edge length")
    p.add_argument("--out", metavar="PATH", help="write the result here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="pcup", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("vr", help="build a filtration and print its statistics")
    _common(p)
    p.set_defaults(run=cmd_vr)

    for name, fn, text in (
        ("barcode", cmd_barcode, "persistent cohomology barcode with representatives"),
        ("cupdgm", cmd_cupdgm, "persistent cup-length diagram"),
        ("cuplength", cmd_cuplength, "persistent cup-length invariant"),
    ):
        p = sub.add_parser(name, help=text)
        _common(p)
        p.add_argument("--svg", metavar="PATH", help="also draw the result")
        p.set_defaults(run=fn)

    p = sub.add_parser("lcup", help="barcode of the persistent l-cup module in one degree")
    _common(p)
    p.add_argument("--ell", type=int, required=True, metavar="L")
    p.add_argument("--deg", type=int, required=True, metavar="P")
    p.add_argument("--svg", metavar="PATH")
    p.set_defaults(run=cmd_lcup)

    p = sub.add_parser("phirank", help="rank invariant of the persistent cup module")
    _common(p)
    p.add_argument("--max-ell", type=int, metavar="L")
    p.add_argument("--svg", metavar="PATH")
    p.set_defaults(run=cmd_phirank)

    p = sub.add_parser("erosion", help="erosion distance between two invariant JSON files")
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("--candidates", action="store_true", help="also print the checked eps values")
    _common(p, with_input=False)
    p.set_defaults(run=cmd_erosion)

    p = sub.add_parser("bottleneck", help="bottleneck distance between two barcode JSON files")
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("--deg", type=int, help="keep only bars of this degree (cohomology barcodes)")
    _common(p, with_input=False)
    p.set_defaults(run=cmd_bottleneck)

    p = sub.add_parser("repro", help="recompute one of the built-in examples")
    p.add_argument("fixture", choices=FIXTURES)
    _common(p, with_input=False)
    p.set_defaults(run=cmd_repro)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if hasattr(args, "field"):
            check_field(args.field)
            if args.max_dim < 0:
                raise InputError("--max-dim must be >= 0")
        return args.run(args)
    except (InternalConsistencyError, ArithmeticError) as e:
        print(f"pcup: internal consistency error: {e}", file=sys.stderr)
        return 2
    except (ComplexError, InputError, ValueError, KeyError, OSError) as e:
        print(f"pcup: error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
