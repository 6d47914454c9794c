"""Command-line surface over the library.

Every run resolves its configuration (surface, metric, command parameters,
seed) and emits it as the first JSON line, followed by one JSON line per
result; censuses and orbit tables can additionally be persisted as CSV.
Exit codes: 0 success, 2 precondition violation (malformed word,
unsupported signature, unreadable file, bad parameters), 3 search budget
exhausted or instability.

Current syntax: terms joined by '+', each ``weight*word`` with a rational
weight, a bare ``word`` (weight 1), or ``weight*bndry(j)`` for the j-th
boundary circle (1-based), e.g. ``2*a + 3/2*ab + 1*bndry(1)``.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from pathlib import Path

from .boundary_order import intersection_number, self_intersection
from .decompose import (
    DecompositionError,
    disjoint_simple_curves,
    hull,
    is_binding,
    standard_decomposition,
)
from .dt_census import DTError, build_arc_system, enumerate_census, write_census_csv
from .hyperbolic import GeometryError, HyperbolicStructure, curve_length, from_fenchel_nielsen
from .measures import (
    NotLocallyFiniteError,
    homogeneous_ball_volume,
    homogeneous_ball_volume_quadrature,
    orbit_counting_experiment,
    thurston_ball_estimate,
)
from .mcg import MCGError, orbit_ball, twist_generators
from .surface import (
    CurveClass,
    RationalCurrent,
    SurfaceError,
    SurfaceSig,
    build_standard_spine,
    canonicalize_curve,
)
from .words import WordError

SCHEMA_VERSION = 1


class CliError(Exception):
    def __init__(self, message: str, code: int = 2):
        super().__init__(message)
        self.code = code


def _read_json(path: str) -> dict:
    try:
        with open(path) as f:
            return json.load(f)
    except OSError as e:
        raise CliError(f"unreadable file: {path}: {e.strerror}")
    except json.JSONDecodeError as e:
        raise CliError(f"unreadable file: {path}: not valid JSON ({e})")


def load_surface(spec: str):
    """Surface from 'g,n' or from a JSON file {genus, boundary[, half_edge_order]}."""
    if os.path.exists(spec) or spec.endswith(".json"):
        data = _read_json(spec)
        sig = SurfaceSig(int(data["genus"]), int(data["boundary"]))
        order = data.get("half_edge_order")
        return build_standard_spine(sig, tuple(order) if order else None)
    try:
        g, n = (int(x) for x in spec.split(","))
    except ValueError:
        raise CliError(f"malformed surface spec {spec!r}: want 'g,n' or a JSON file")
    return build_standard_spine(SurfaceSig(g, n))


def load_metric(path: str, spine) -> HyperbolicStructure:
    data = _read_json(path)
    return from_fenchel_nielsen(
        spine.sig,
        spine,
        lengths=data.get("lengths", []),
        twists=data.get("twists", []),
        boundary_lengths=data.get("boundary_lengths", []),
    )


def parse_current(text: str, spine) -> RationalCurrent:
    pairs = []
    for term in text.split("+"):
        term = term.strip()
        if not term:
            raise CliError(f"malformed current term in {text!r}")
        if "*" in term:
            w_str, word = term.split("*", 1)
            try:
                w = Fraction(w_str.strip())
            except ValueError:
                raise CliError(f"malformed weight {w_str!r}")
        else:
            w, word = Fraction(1), term
        word = word.strip()
        if word.startswith("bndry(") and word.endswith(")"):
            j = int(word[6:-1]) - 1
            if not 0 <= j < spine.sig.n_boundary:
                raise CliError(f"no boundary circle {j + 1}")
            word = spine.boundary_words[j]
        pairs.append((word, w))
    try:
        return RationalCurrent.from_words(spine, pairs)
    except WordError as e:
        raise CliError(f"malformed word: {e}")


def _emit(lines, out_path: str | None):
    body = "\n".join(json.dumps(line, sort_keys=True, default=str) for line in lines) + "\n"
    if out_path:
        Path(out_path).write_text(body)
    else:
        sys.stdout.write(body)


def _grid(text: str) -> list[float]:
    try:
        grid = [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise CliError(f"malformed grid {text!r}")
    if not grid:
        raise CliError("empty grid")
    return grid


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="currents",
        description="intersection numbers, censuses and orbit experiments "
        "for curves on surfaces with boundary",
    )
    p.add_argument("--surface", default="1,1", help="'g,n' or surface JSON file")
    p.add_argument("--metric", default=None, help="metric JSON file")
    p.add_argument("--seed", type=int, default=0, help="seed recorded in the run config")
    p.add_argument("--out", default=None, help="output file (default stdout)")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("intersect", help="geometric intersection number")
    s.add_argument("word1")
    s.add_argument("word2")

    s = sub.add_parser("selfint", help="self-intersection number")
    s.add_argument("word")

    s = sub.add_parser("census", help="multi-curve census by arc-coordinate length")
    s.add_argument("--L", type=float, required=True)
    s.add_argument("--csv", default=None, help="persist the census stream as CSV")

    s = sub.add_parser("thurston", help="ball-mass estimates along a grid")
    s.add_argument("--grid", required=True, help="comma-separated radii")

    s = sub.add_parser("homvol", help="homogeneous ball volume closed form")
    s.add_argument("--d", type=float, required=True)
    s.add_argument("--N", type=int, required=True)
    s.add_argument("--L", type=float, required=True)
    s.add_argument("--ell", type=float, required=True)
    s.add_argument("--mass", type=float, default=1.0)

    s = sub.add_parser("decompose", help="standard decomposition of a current")
    s.add_argument("--current", required=True)

    s = sub.add_parser("binding", help="binding test for a current")
    s.add_argument("--current", required=True)
    s.add_argument("--bound", type=float, default=None)

    s = sub.add_parser("hull", help="hull of an scc-free current")
    s.add_argument("--current", required=True)
    s.add_argument("--bound", type=float, default=None)

    s = sub.add_parser("orbit-count", help="orbit-ball counts along a grid")
    s.add_argument("--curve", required=True)
    s.add_argument("--grid", required=True)
    s.add_argument("--slack", type=float, default=2.0)
    s.add_argument("--max-depth", type=int, default=200000,
                   help="search budget (visited currents)")
    s.add_argument("--csv", default=None, help="persist the orbit table as CSV")

    s = sub.add_parser("twist", help="apply a named twist generator")
    s.add_argument("--phi", required=True, help="generator name, e.g. T_a or T_a^-1")
    s.add_argument("--on", required=True, help="word to act on")
    return p


def run(args) -> int:
    spine = load_surface(args.surface)
    h = load_metric(args.metric, spine) if args.metric else None
    config = {
        "schema": SCHEMA_VERSION,
        "surface": {"genus": spine.sig.genus, "boundary": spine.sig.n_boundary,
                     "half_edge_order": list(spine.half_edge_order)},
        "metric": args.metric,
        "seed": args.seed,
        "command": args.command,
        "parameters": {
            k: v for k, v in vars(args).items()
            if k not in {"surface", "metric", "seed", "out", "command"} and v is not None
        },
    }
    lines: list[dict] = [{"config": config}]
    code = 0

    if args.command == "intersect":
        try:
            c1, _ = canonicalize_curve(args.word1, spine)
            c2, _ = canonicalize_curve(args.word2, spine)
        except WordError as e:
            raise CliError(f"malformed word: {e}")
        lines.append({"iota": intersection_number(c1, c2, spine),
                      "class1": c1.word, "class2": c2.word})

    elif args.command == "selfint":
        try:
            cls, _ = canonicalize_curve(args.word, spine)
        except WordError as e:
            raise CliError(f"malformed word: {e}")
        lines.append({"selfint": self_intersection(cls, spine), "class": cls.word})

    elif args.command == "census":
        arcs = build_arc_system(spine, h)
        if args.csv:
            rec = write_census_csv(args.csv, arcs, args.L)
        else:
            rec = enumerate_census(arcs, args.L)
        lines.append({
            "L": rec.L, "count_all": rec.count_all,
            "count_internal": rec.count_internal,
            "arc_lengths": list(arcs.lengths), "collar_weights": list(arcs.col),
            "csv": args.csv,
        })

    elif args.command == "thurston":
        arcs = build_arc_system(spine, h)
        for est in thurston_ball_estimate(arcs, _grid(args.grid)):
            lines.append({
                "L": est.L, "count_internal": est.count_internal,
                "count_all": est.count_all, "m_hat": est.m_hat,
                "cross_check_ratio": est.cross_check_ratio,
            })

    elif args.command == "homvol":
        value = homogeneous_ball_volume(args.d, args.N, args.L, args.ell, args.mass)
        quadr = homogeneous_ball_volume_quadrature(args.d, args.N, args.L, args.ell, args.mass)
        lines.append({"value": value, "quadrature": quadr,
                      "rel_gap": abs(value / quadr - 1.0)})

    elif args.command == "decompose":
        c = parse_current(args.current, spine)
        dec = standard_decomposition(c, spine)
        lines.append({
            "gamma": str(dec.gamma), "alpha": str(dec.alpha),
            "boundary_weights": [str(w) for w in dec.boundary],
        })

    elif args.command == "binding":
        c = parse_current(args.current, spine)
        bound = args.bound
        lines.append({
            "binding": is_binding(c, spine, h, bound),
            "bound_used": bound if bound is not None else "2*length+1",
        })

    elif args.command == "hull":
        c = parse_current(args.current, spine)
        desc = hull(c, spine, h, args.bound)
        lines.append({
            "full": desc.full,
            "pieces": [
                {
                    "boundary": [b.word for b in piece.boundary_classes],
                    "genus": piece.sig.genus if piece.sig else None,
                    "n_boundary": piece.sig.n_boundary if piece.sig else None,
                    "ambient_boundary_inside": list(piece.peripheral_in_s),
                    "coincident_boundary_flag": piece.coincident_boundary,
                }
                for piece in desc.pieces
            ],
            "bound_used": args.bound if args.bound is not None else "2*length+1",
        })

    elif args.command == "orbit-count":
        if h is None:
            raise CliError("orbit-count needs --metric")
        c = parse_current(args.curve, spine)
        table = orbit_counting_experiment(
            c, h, _grid(args.grid), slack=args.slack, max_elements=args.max_depth
        )
        for L, count, norm, st, sl in zip(
            table.grid, table.counts, table.normalized, table.stable, table.slack_used
        ):
            lines.append({"L": L, "count": count, "normalized": norm,
                          "stable": st, "slack_used": sl})
        lines.append({"slope_fit": table.slope_fit,
                      "top_pair_slope": table.top_pair_slope,
                      "dimension": table.dimension})
        if args.csv:
            rows = ["L,count,normalized,stable,slack_used"] + [
                f"{L},{c_},{n},{int(s)},{sl}" for L, c_, n, s, sl in zip(
                    table.grid, table.counts, table.normalized,
                    table.stable, table.slack_used)
            ]
            Path(args.csv).write_text("\n".join(rows) + "\n")
        if not table.all_stable():
            code = 3

    elif args.command == "twist":
        gens = {g.name: g for g in twist_generators(spine)}
        gens.update({f"{g.name}^-1": g.inverse_map() for g in twist_generators(spine)})
        if args.phi not in gens:
            raise CliError(f"unknown generator {args.phi!r}; have {sorted(gens)}")
        try:
            cls, _ = canonicalize_curve(args.on, spine)
        except WordError as e:
            raise CliError(f"malformed word: {e}")
        img = gens[args.phi].apply_class(cls)
        lines.append({"phi": args.phi, "on": cls.word, "image": img.word})

    _emit(lines, args.out or _default_out(args))
    return code


def _default_out(args) -> str | None:
    out_dir = os.environ.get("CURRENTS_OUT_DIR")
    if not out_dir:
        return None
    Path(out_dir).mkdir(parents=True, exist_ok=True)
    return str(Path(out_dir) / f"{args.command}.jsonl")


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return run(args)
    except CliError as e:
        print(f"error: {e}", file=sys.stderr)
        return e.code
    except (WordError, SurfaceError, GeometryError, DTError,
            DecompositionError, MCGError, NotLocallyFiniteError) as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return 2
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
