"""Command-line interface.

Four subcommands:

* ``dims INSTANCE.json``      - E2 page, d2 profile and dimension table
* ``classify GRAPH.json``     - reduce a graph and report component shapes
* ``verify-table [TABLE.tsv]``- replay the consistency checks on the rank table
* ``group NAME [--degree N]`` - graded basis and restriction targets

Exit codes: 0 on success, 1 when verify-table finds a mismatch, 2 on
validation errors (malformed documents, unknown names, bad flags).

Input files are looked up as given; when not found and the
``TORSIONCOMPLEX_FIXTURES`` environment variable points at a directory, the
path is retried relative to that directory.  ``verify-table`` without an
argument uses the packaged table.  All output is deterministic.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import __version__
from .abelian import AbelianGroup, ParseError, dim_hom_to_f2, parse_abelian
from .appendix import (
    default_n_overrides_path,
    default_table_path,
    load_n_overrides,
    load_table,
    verify_table,
)
from .cohomology import GroupInstance, dims
from .d2 import ASSUME0, INTERVAL, CapacityExceeded, NegativeRank, d2_profile, rank_formula
from .graphs import (
    Component,
    GraphOfGroups,
    InvalidStabilizer,
    classify,
    invariants,
    shape_components,
)
from .groups import (
    C2,
    C4,
    Q8,
    STABILIZER_TYPES,
    UnsupportedPair,
    basis,
    cohomology_dim,
    restriction_matrix,
    twist_matrix,
)
from .spectral import NegativeDimension, TopologyInvariants, assemble_e2


class CliError(Exception):
    """Validation failure; the message goes to stderr and the exit code is 2."""


def _resolve_path(raw: str) -> Path:
    path = Path(raw)
    if path.exists():
        return path
    fixtures = os.environ.get("TORSIONCOMPLEX_FIXTURES")
    if fixtures:
        candidate = Path(fixtures) / raw
        if candidate.exists():
            return candidate
    raise CliError(f"file not found: {raw}")


def _load_json(path: Path) -> dict:
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise CliError(f"{path}: {exc}") from exc
    if not isinstance(data, dict):
        raise CliError(f"{path}: expected a JSON object")
    return data


def _parse_torsion(doc: dict, key: str, path: Path) -> AbelianGroup | None:
    if key not in doc:
        return None
    raw = doc[key]
    if not isinstance(raw, str):
        raise CliError(f"{path}: {key} must be a string")
    try:
        return parse_abelian(raw)
    except ParseError as exc:
        raise CliError(f"{path}: {key}: {exc}") from exc


def _int_field(doc: dict, key: str, path: Path, default: int | None = None) -> int:
    if key not in doc:
        if default is None:
            raise CliError(f"{path}: missing required field {key!r}")
        return default
    value = doc[key]
    if not isinstance(value, int) or isinstance(value, bool):
        raise CliError(f"{path}: {key} must be an integer")
    return value


_SHAPE_KEYS = ("o", "iota", "theta", "rho")


def _build_components(doc: dict, path: Path) -> tuple[list[Component], bool]:
    """Component list plus whether it came from an explicit graph."""
    raw = doc.get("components")
    if not isinstance(raw, dict) or not raw:
        raise CliError(f"{path}: components must be a non-empty object")
    if "vertices" in raw:
        try:
            graph = GraphOfGroups.from_dict(raw)
        except (InvalidStabilizer, ValueError) as exc:
            raise CliError(f"{path}: {exc}") from exc
        return classify(graph), True
    unknown = set(raw) - set(_SHAPE_KEYS)
    if unknown:
        raise CliError(
            f"{path}: unknown component keys {sorted(unknown)}; expected "
            f"{list(_SHAPE_KEYS)} or an explicit graph"
        )
    counts = {}
    for key in _SHAPE_KEYS:
        counts[key] = _int_field(raw, key, path, default=0)
        if counts[key] < 0:
            raise CliError(f"{path}: components.{key} must be nonnegative")
    if not any(counts.values()):
        raise CliError(f"{path}: components are all zero")
    return shape_components(**counts), False


def load_instance(path: Path) -> tuple[GroupInstance, str]:
    """Parse an instance document; returns the instance and its d2 policy."""
    doc = _load_json(path)
    m = _int_field(doc, "m", path)
    beta1 = _int_field(doc, "beta1", path)
    c = _int_field(doc, "c", path, default=0)
    n = _int_field(doc, "N", path, default=0)
    h1_tors = _parse_torsion(doc, "h1_quotient_tors", path)
    if h1_tors is not None:
        derived = dim_hom_to_f2(h1_tors)
        if "N" in doc and n != derived:
            raise CliError(
                f"{path}: N={n} contradicts h1_quotient_tors "
                f"(dim Hom = {derived})"
            )
        n = derived
    sl_tors = _parse_torsion(doc, "sl_ab_tors", path)
    comps, _ = _build_components(doc, path)
    policy = doc.get("d2_policy", ASSUME0)
    if policy not in (ASSUME0, INTERVAL):
        raise CliError(f"{path}: d2_policy must be 'assume0' or 'interval'")
    try:
        topology = TopologyInvariants(beta1=beta1, n_torsion=n, c=c)
        instance = GroupInstance(
            m=m,
            topology=topology,
            components=tuple(comps),
            sl_ab_tors=sl_tors,
            h1_quotient_tors=h1_tors,
        )
    except ValueError as exc:
        raise CliError(f"{path}: {exc}") from exc
    return instance, policy


def instance_formula_rank(instance: GroupInstance) -> int | None:
    """The exact d2 rank when abelianization data pins it, else None."""
    if instance.sl_ab_tors is None:
        return None
    inv = invariants(list(instance.components))
    if any(c.kind == "other" for c in instance.components):
        return None
    return rank_formula(
        inv.o,
        inv.theta,
        inv.rho,
        instance.topology.n_torsion,
        dim_hom_to_f2(instance.sl_ab_tors),
    )


def evaluate_instance(instance: GroupInstance, policy: str, max_degree: int):
    """(page, profile, table) for one instance."""
    comps = list(instance.components)
    page = assemble_e2(comps, instance.topology)
    profile = d2_profile(comps, instance_formula_rank(instance), policy)
    table = dims(page, profile, max_degree)
    return page, profile, table


def cmd_dims(args: argparse.Namespace) -> int:
    path = _resolve_path(args.instance)
    instance, doc_policy = load_instance(path)
    policy = args.policy or doc_policy
    comps = list(instance.components)
    try:
        page, profile, table = evaluate_instance(instance, policy, args.max_degree)
    except (NegativeDimension, NegativeRank, CapacityExceeded, ValueError) as exc:
        raise CliError(f"{path}: {exc}") from exc
    inv = invariants(comps)
    print(f"instance m={instance.m} (delta={instance.delta})")
    print(
        f"components: o={inv.o} iota={inv.iota} theta={inv.theta} "
        f"rho={inv.rho} other={len(comps) - inv.o - inv.iota - inv.theta - inv.rho}"
    )
    for line in page.to_lines():
        print(line)
    rank = instance_formula_rank(instance)
    if rank is None:
        print(f"rank d2^(0,1): undetermined (policy {policy})")
    else:
        print(f"rank d2^(0,1) from abelianization data: {rank}")
    for line in profile.to_lines(comps):
        print(line)
    for line in table.to_lines():
        print(line)
    return 0


def cmd_classify(args: argparse.Namespace) -> int:
    path = _resolve_path(args.graph)
    doc = _load_json(path)
    graph_doc = doc.get("components", doc)
    if not isinstance(graph_doc, dict) or "vertices" not in graph_doc:
        raise CliError(f"{path}: expected a graph object with 'vertices'")
    try:
        graph = GraphOfGroups.from_dict(graph_doc)
    except (InvalidStabilizer, ValueError) as exc:
        raise CliError(f"{path}: {exc}") from exc
    comps = classify(graph)
    inv = invariants(comps)
    other = len(comps) - inv.o - inv.iota - inv.theta - inv.rho
    print(
        f"components: o={inv.o} iota={inv.iota} theta={inv.theta} "
        f"rho={inv.rho} other={other}"
    )
    print(f"invariants: v={inv.v} chi={inv.chi} sum_h2_xsprime={inv.sum_h2_xsprime}")
    for comp in comps:
        g = comp.graph
        print(f"component {comp.kind}: {len(g.vertices)} vertices, {len(g.edges)} edges")
        for v in g.sorted_vertices():
            print(f"  vertex {v.id}: {v.stab}")
        for e in g.sorted_edges():
            kind = "loop at" if e.is_loop else "edge"
            where = f"{e.a}" if e.is_loop else f"{e.a}-{e.b}"
            print(f"  {kind} {where}: {e.stab} (labels {e.label_a},{e.label_b})")
    return 0


def cmd_verify_table(args: argparse.Namespace) -> int:
    if args.table:
        table_path = _resolve_path(args.table)
    else:
        table_path = default_table_path()
    try:
        rows = load_table(table_path)
    except (OSError, ValueError) as exc:
        raise CliError(str(exc)) from exc
    overrides: dict[int, int] = {}
    n_path = Path(args.n_values) if args.n_values else None
    if n_path is None:
        sibling = table_path.parent / "n2_torsion.tsv"
        packaged = default_n_overrides_path()
        n_path = sibling if sibling.exists() else packaged
    if n_path.exists():
        try:
            overrides = load_n_overrides(n_path)
        except (OSError, ValueError) as exc:
            raise CliError(str(exc)) from exc
    report = verify_table(rows, overrides, strict=args.strict)
    for row in report.reports:
        if row.status == "ok":
            detail = f"rank={row.formula_rank} D={row.d_value}"
            print(f"delta={row.delta} m={row.m}: ok ({detail})")
        else:
            why = "; ".join(row.messages)
            print(f"delta={row.delta} m={row.m}: {row.status} ({why})")
    print(
        f"rows={len(report.reports)} passed={report.passed} "
        f"failed={report.failed} skipped={report.skipped}"
    )
    return 0 if report.ok else 1


def _image_names(group: str, edge_group: str, label: int, q: int) -> list[str]:
    """'name -> image' strings for one restriction in degree q."""
    mat = restriction_matrix(group, edge_group, label, q)
    dom = basis(group, q)
    cod = basis(edge_group, q)
    out = []
    for j, cls in enumerate(dom):
        terms = [cod[i].name for i in range(mat.rows) if mat.entry(i, j)]
        out.append(f"{cls.name} -> {' + '.join(terms) if terms else '0'}")
    return out


def cmd_group(args: argparse.Namespace) -> int:
    name = args.name
    if name not in STABILIZER_TYPES:
        raise CliError(
            f"unknown group {name!r}; expected one of {', '.join(STABILIZER_TYPES)}"
        )
    if args.degree is not None:
        if args.degree < 0:
            raise CliError("--degree must be nonnegative")
        classes = basis(name, args.degree)
        print(
            ", ".join(f"{c.name} ({c.flag})" for c in classes) if classes else "(none)"
        )
        return 0
    dims_mod4 = tuple(cohomology_dim(name, q) for q in range(4))
    print(f"H*({name}; F2): dims {dims_mod4} for q mod 4 = (0, 1, 2, 3); period 4")
    for q in range(4):
        classes = basis(name, q)
        line = ", ".join(f"{c.name} ({c.flag})" for c in classes) if classes else "(none)"
        print(f"  q={q}: {line}")
    targets: list[tuple[str, int]] = []
    labels = (1, 2, 3) if name == Q8 else (1,)
    for edge_group in (C4, C2):
        for label in labels:
            try:
                restriction_matrix(name, edge_group, label, 0)
            except UnsupportedPair:
                continue
            targets.append((edge_group, label))
    if targets:
        print("restrictions:")
        for edge_group, label in targets:
            parts: list[str] = []
            for q in range(4):
                parts.extend(_image_names(name, edge_group, label, q))
            suffix = f" label {label}" if name == Q8 else ""
            print(f"  -> {edge_group}{suffix}: " + ", ".join(parts))
    if name in (C4, Q8):
        parts = []
        for q in range(4):
            mat = twist_matrix(name, q)
            dom = basis(name, q)
            cod = basis(C4, q)
            for j, cls in enumerate(dom):
                terms = [cod[i].name for i in range(mat.rows) if mat.entry(i, j)]
                parts.append(f"{cls.name} -> {' + '.join(terms) if terms else '0'}")
        print("loop twist (canonical labels): " + ", ".join(parts))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="torsioncomplex",
        description=(
            "Mod-2 cohomology of arithmetic groups from their 2-torsion "
            "subcomplex graphs"
        ),
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_dims = sub.add_parser("dims", help="dimension table for one instance")
    p_dims.add_argument("instance", help="instance document (JSON)")
    p_dims.add_argument(
        "--max-degree", type=int, default=5, help="top degree of the table (>= 2)"
    )
    p_dims.add_argument(
        "--policy",
        choices=(ASSUME0, INTERVAL),
        default=None,
        help="override the instance's policy for undetermined d2 ranks",
    )
    p_dims.set_defaults(func=cmd_dims)

    p_classify = sub.add_parser("classify", help="reduce and classify a graph")
    p_classify.add_argument("graph", help="graph document (JSON)")
    p_classify.set_defaults(func=cmd_classify)

    p_verify = sub.add_parser("verify-table", help="check the rank table")
    p_verify.add_argument(
        "table", nargs="?", default=None, help="table TSV (default: packaged)"
    )
    p_verify.add_argument(
        "--n-values", default=None, help="side TSV with (delta, n2) pairs"
    )
    p_verify.add_argument(
        "--strict",
        action="store_true",
        help="treat rows with missing N data as failures instead of skips",
    )
    p_verify.set_defaults(func=cmd_verify_table)

    p_group = sub.add_parser("group", help="graded basis of one stabilizer type")
    p_group.add_argument("name", help="C2, C4, C6, Q8, Di12 or Te24")
    p_group.add_argument("--degree", type=int, default=None)
    p_group.set_defaults(func=cmd_group)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
