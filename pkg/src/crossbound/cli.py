"""Command-line surface.

Exit codes of ``bound`` are a stable contract: 0 when a lower bound was
certified, 10 when the claim was refuted with counterexample drawings,
20 when a resource guard made the run inconclusive, and 2 on input or
verification errors.  ``check-certificate`` exits 0 exactly when the
certificate is consistent.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

from .bounds import BoundProblem, DeletionFamily, theorem2_lower_bound
from .certs import check_certificate, serialize_certificate
from .config import RunConfig
from .drawing import parse_drawing, serialize_drawing
from .errors import CrossboundError, FormatError
from .export import layout_drawing, render_figure, serialize_layout
from .families import (
    complete_odd,
    cycle_family,
    parse_tile,
    petersen,
    petersen_deletion_sets,
    tile_power_close,
)
from .graphs import (
    parse_decomposition,
    parse_graph,
    serialize_decomposition,
    serialize_graph,
    verify_transitive_decomposition,
)
from .oracle import exact_crossing_number

EXIT_BOUND = 0
EXIT_REFUTED = 10
EXIT_INCONCLUSIVE = 20
EXIT_INPUT = 2


def _parse_rational(text: str) -> Fraction:
    # rationals only; floats would break the exactness contract
    if "/" in text:
        num, den = text.split("/")
        return Fraction(int(num), int(den))
    return Fraction(int(text))


def _config_from_args(args) -> RunConfig:
    overrides = {}
    for name in (
        "max_enum_edges",
        "max_oracle_edges",
        "max_frontier",
        "latent_path_cap",
        "root_strategy",
        "parallelism",
    ):
        value = getattr(args, name, None)
        if value is not None:
            overrides[name] = value
    return RunConfig.from_env(**overrides)


def _add_config_flags(sub):
    sub.add_argument("--max-enum-edges", type=int, dest="max_enum_edges")
    sub.add_argument("--max-oracle-edges", type=int, dest="max_oracle_edges")
    sub.add_argument("--max-frontier", type=int, dest="max_frontier")
    sub.add_argument("--latent-cap", type=int, dest="latent_path_cap")
    sub.add_argument(
        "--root-strategy", choices=("first", "best"), dest="root_strategy"
    )
    sub.add_argument("--parallelism", type=int, dest="parallelism")


def serialize_deletion_family(family: DeletionFamily) -> str:
    lines = ["deletion-family 1", f"d {family.d}", "begin-target"]
    lines.append(family.target.canonical_text().rstrip("\n"))
    lines.append("end-target")
    for es in family.deletion_sets:
        lines.append("begin-set")
        lines += [f"e {u} {v}" for u, v in sorted(es)]
        lines.append("end-set")
    return "\n".join(lines) + "\n"


def parse_deletion_family(text: str) -> DeletionFamily:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0] != "deletion-family 1":
        raise FormatError("not a deletion-family file")
    if not lines[1].startswith("d "):
        raise FormatError("missing d line")
    d = int(lines[1].split()[1])
    if lines[2] != "begin-target":
        raise FormatError("missing target block")
    pos = 3
    target_lines = []
    while lines[pos] != "end-target":
        target_lines.append(lines[pos])
        pos += 1
    target = parse_graph("\n".join(target_lines))
    pos += 1
    sets = []
    while pos < len(lines):
        if lines[pos] != "begin-set":
            raise FormatError(f"expected begin-set, got {lines[pos]!r}")
        pos += 1
        es = set()
        while lines[pos] != "end-set":
            f = lines[pos].split()
            es.add((min(int(f[1]), int(f[2])), max(int(f[1]), int(f[2]))))
            pos += 1
        sets.append(frozenset(es))
        pos += 1
    return DeletionFamily(tuple(sets), d, target)


def cmd_generate(args) -> int:
    config = _config_from_args(args)
    prefix = Path(args.out_prefix)
    if args.family == "petersen":
        kind = "paired" if args.paired else "rotation"
        g, dec = petersen(args.n, args.k, kind, config)
    elif args.family == "complete-odd":
        g, dec = complete_odd(args.r, config)
    elif args.family == "cycle":
        g, dec = cycle_family(args.n, config)
    elif args.family == "tile":
        tile = parse_tile(Path(args.file).read_text())
        g, dec = tile_power_close(tile, args.power, config=config)
    elif args.family == "petersen-deletion":
        sets = petersen_deletion_sets(args.n, args.k)
        target_g, _ = petersen(args.n - 4, args.k - 2, "rotation", config)
        family = DeletionFamily(tuple(sets), 2, target_g)
        path = prefix.with_suffix(".delfam")
        path.write_text(serialize_deletion_family(family))
        print(f"wrote {path}")
        return 0
    else:  # pragma: no cover - argparse restricts choices
        raise FormatError(f"unknown family {args.family}")
    gpath = prefix.with_suffix(".graph")
    dpath = prefix.with_suffix(".decomp")
    gpath.write_text(serialize_graph(g))
    dpath.write_text(serialize_decomposition(dec))
    print(f"wrote {gpath} ({g.num_vertices} vertices, {g.num_edges} edges)")
    print(f"wrote {dpath} ({dec.t} parts)")
    return 0


def cmd_bound(args) -> int:
    config = _config_from_args(args)
    graph = parse_graph(Path(args.graph).read_text())
    parts = parse_decomposition(Path(args.decomp).read_text(), graph)
    dec = verify_transitive_decomposition(graph, parts, config)
    problem = BoundProblem(dec, _parse_rational(args.c))
    family = None
    if args.deletion_family:
        if args.mode != "2":
            raise FormatError("--deletion-family requires --mode 2")
        family = parse_deletion_family(Path(args.deletion_family).read_text())
    mode = "algorithm2" if args.mode == "2" else "algorithm1"
    cert = theorem2_lower_bound(
        problem, mode, family, args.prior or "", config
    )
    text = serialize_certificate(cert)
    out = Path(args.out) if args.out else Path("certificate.txt")
    out.write_text(text)
    if cert.outcome == "bound":
        print(
            f"bound: cr(G) >= {cert.bound_value()} "
            f"(frontier empty at level {cert.ell} of {cert.t})"
        )
        print(f"certificate: {out}")
        return EXIT_BOUND
    if cert.outcome == "refuted":
        crs = sorted(d.num_crossings() for d in cert.drawings)
        print(
            f"refuted: {len(cert.drawings)} drawing(s) of G with "
            f"crossings {crs} < c*t = {problem.ct()}"
        )
        print(f"certificate: {out}")
        return EXIT_REFUTED
    print("inconclusive: resource guard tripped; no claim certified")
    print(f"certificate: {out}")
    return EXIT_INCONCLUSIVE


def cmd_check_certificate(args) -> int:
    problems = check_certificate(Path(args.certificate).read_text())
    if problems:
        print(f"FAIL: {problems[0]}")
        for extra in problems[1:]:
            print(f"      {extra}")
        return 1
    print("certificate consistent")
    return 0


def cmd_oracle(args) -> int:
    config = _config_from_args(args)
    graph = parse_graph(Path(args.graph).read_text())
    result = exact_crossing_number(graph, args.max_k, config)
    if not result.known:
        print(f"unknown (no good drawing with <= {args.max_k} crossings)")
        return 3
    print(result.value)
    if args.witness:
        Path(args.witness).write_text(serialize_drawing(result.witness))
        print(f"witness: {args.witness}", file=sys.stderr)
    return 0


def cmd_export(args) -> int:
    drawing = parse_drawing(Path(args.drawing).read_text())
    prefix = Path(args.out_prefix)
    pos = layout_drawing(drawing)
    layout_path = prefix.with_suffix(".layout.txt")
    layout_path.write_text(serialize_layout(drawing, pos))
    figure_path = prefix.with_suffix(".png")
    render_figure(drawing, str(figure_path), pos)
    print(f"wrote {layout_path}")
    print(f"wrote {figure_path}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="crossbound",
        description="Certified lower bounds on crossing numbers of "
        "generalized periodic graphs.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    gen = subs.add_parser("generate", help="emit family graph files")
    gen_subs = gen.add_subparsers(dest="family", required=True)
    gp = gen_subs.add_parser("petersen")
    gp.add_argument("n", type=int)
    gp.add_argument("k", type=int)
    gp.add_argument("--paired", action="store_true",
                    help="antipodal paired decomposition (n=4h+2, k=2h)")
    gco = gen_subs.add_parser("complete-odd")
    gco.add_argument("r", type=int)
    gcy = gen_subs.add_parser("cycle")
    gcy.add_argument("n", type=int)
    gt = gen_subs.add_parser("tile")
    gt.add_argument("--file", required=True)
    gt.add_argument("--power", type=int, required=True)
    gpd = gen_subs.add_parser("petersen-deletion")
    gpd.add_argument("n", type=int)
    gpd.add_argument("k", type=int)
    for sub in (gp, gco, gcy, gt, gpd):
        sub.add_argument("--out-prefix", required=True)
        _add_config_flags(sub)

    bound = subs.add_parser("bound", help="run the lower-bound search")
    bound.add_argument("--graph", required=True)
    bound.add_argument("--decomp", required=True)
    bound.add_argument("--c", required=True, help="rational, e.g. 2/5")
    bound.add_argument("--mode", choices=("1", "2"), default="1")
    bound.add_argument("--deletion-family")
    bound.add_argument("--prior", help="note documenting the certified "
                                       "bound on the previous family member")
    bound.add_argument("--out")
    _add_config_flags(bound)

    chk = subs.add_parser("check-certificate", help="re-validate a certificate")
    chk.add_argument("certificate")

    orc = subs.add_parser("oracle", help="exact crossing number, small graphs")
    orc.add_argument("--graph", required=True)
    orc.add_argument("--max-k", type=int, default=6)
    orc.add_argument("--witness")
    _add_config_flags(orc)

    exp = subs.add_parser("export", help="layout text and figure for a drawing")
    exp.add_argument("--drawing", required=True)
    exp.add_argument("--out-prefix", required=True)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "generate": cmd_generate,
        "bound": cmd_bound,
        "check-certificate": cmd_check_certificate,
        "oracle": cmd_oracle,
        "export": cmd_export,
    }
    try:
        return handlers[args.command](args)
    except (CrossboundError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
