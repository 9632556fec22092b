"""Acceptance gate: one test per shipped claim, one printed verdict per run.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the verdict lines.
Every test here re-derives its expected values either from an independent
oracle (tests/oracles.py) or from literal frozen numbers; none of them trust
the engine's own tables.
"""

import io
import json
import contextlib
import random
import tempfile
import time
from pathlib import Path

import torsioncomplex
from torsioncomplex import (
    C2,
    C4,
    C6,
    DI12,
    Q8,
    TE24,
    CLOSED_FORM_KINDS,
    Component,
    Edge,
    GraphOfGroups,
    ShapeMismatch,
    TopologyInvariants,
    Vertex,
    assemble_e2,
    closed_formula,
    cohomology_dim,
    component_e2,
    d2_profile,
    default_n_overrides_path,
    default_table_path,
    dims,
    iota_component,
    kernel_dim,
    load_n_overrides,
    load_table,
    o_component,
    rank,
    reduce_graph,
    rho_component,
    shape_kind_components,
    theta_component,
    verify_table,
)
from torsioncomplex.cli import main
from torsioncomplex.gf2 import from_rows

import oracles

INSTANCES = Path(torsioncomplex.__file__).parent / "data" / "instances"


def checked(label):
    """Decorator printing one verdict line per criterion."""

    def wrap(fn):
        def run():
            try:
                fn()
            except BaseException:
                print(f"{label}: FAIL", flush=True)
                raise
            print(f"{label}: PASS", flush=True)

        run.__name__ = fn.__name__
        return run

    return wrap


# ------------------------------------------------------------- criterion 1
# Stabilizer cohomology dimensions agree with independent group-theoretic
# models: the normalized bar complex, a minimal free resolution, and direct
# monomial counting in the stated ring presentations.


@checked("criterion 1 (stabilizer cohomology vs oracles)")
def test_criterion_1_stabilizer_tables():
    start = time.monotonic()

    for group, n in ((C2, 2), (C4, 4)):
        elems, e, mul = oracles.cyclic(n)
        got = oracles.bar_homology_dims(elems, e, mul, 6)
        assert got == [cohomology_dim(group, q) for q in range(6)], group

    # C6 and Q8 are the expensive bar computations; pin their boundary
    # ranks too so a rank-routine regression cannot hide in the dims.
    elems, e, mul = oracles.cyclic(6)
    ranks = oracles.bar_boundary_ranks(elems, e, mul, 6)
    assert ranks == oracles.FROZEN_BAR_RANKS["C6"]
    chains = [5**q for q in range(7)]
    got = [1] + [chains[q] - ranks[q - 1] - ranks[q] for q in range(1, 6)]
    assert got == [cohomology_dim(C6, q) for q in range(6)]

    elems, e, mul = oracles.quaternion8()
    ranks = oracles.bar_boundary_ranks(elems, e, mul, 5)
    assert ranks == oracles.FROZEN_BAR_RANKS["Q8"]
    chains = [7**q for q in range(6)]
    got = [1] + [chains[q] - ranks[q - 1] - ranks[q] for q in range(1, 5)]
    assert got == [cohomology_dim(Q8, q) for q in range(5)]

    # degree 5 for Q8 via a minimal free resolution instead (the bar
    # complex would need a 117649-column rank there)
    betti = oracles.minimal_resolution_betti(elems, e, mul, [(1, 0), (0, 1)], 5)
    assert betti == [cohomology_dim(Q8, q) for q in range(6)]

    # order 12 and 24: monomial counts in F2[e]⊗Λ(b) presentations, with
    # honest group models cross-checking the surprising low degrees
    for group, poly, ext in ((DI12, 2, 1), (TE24, 4, 3)):
        for q in range(12):
            count = sum(
                1
                for a in range(q // poly + 1)
                for eps in (0, 1)
                if poly * a + ext * eps == q
            )
            assert count == cohomology_dim(group, q), (group, q)

    elems, e, mul = oracles.dicyclic12()
    assert oracles.bar_homology_dims(elems, e, mul, 4) == [
        cohomology_dim(DI12, q) for q in range(4)
    ]
    elems, e, mul = oracles.binary_tetrahedral()
    assert oracles.bar_homology_dims(elems, e, mul, 3) == [1, 0, 0]

    assert time.monotonic() - start < 60.0


# ------------------------------------------------------------- criterion 2
# The four connected-component types produce the documented E2 columns, and
# the resulting amalgam cohomology totals match the stated values.


@checked("criterion 2 (component E2 tables and amalgam totals)")
def test_criterion_2_component_tables():
    expected_tables = {
        "o": ((1, 1), (1, 1), (1, 1), (1, 1)),
        "iota": ((1, 0), (0, 1), (0, 1), (2, 1)),
        "theta": ((1, 2), (2, 1), (4, 3), (2, 3)),
        "rho": ((1, 1), (1, 1), (2, 2), (2, 2)),
    }
    # dim H^q of the free product with amalgamation carried by the
    # component, for q = 0 then residues 0,1,2,3 of q mod 4 with q >= 1
    expected_totals = {
        "o": (1, (2, 2, 2, 2)),
        "iota": (1, (2, 0, 1, 3)),
        "theta": (1, (4, 4, 5, 5)),
        "rho": (1, (3, 2, 3, 4)),
    }
    makers = {
        "o": o_component,
        "iota": iota_component,
        "theta": theta_component,
        "rho": rho_component,
    }
    for kind, maker in makers.items():
        e2 = component_e2(maker())
        assert e2.table == expected_tables[kind], kind
        h0, tail = expected_totals[kind]
        assert e2.dim(0, 0) == h0, kind
        for q in range(1, 13):
            total = e2.dim(0, q) + e2.dim(1, q - 1)
            assert total == tail[q % 4], (kind, q, total)


# ------------------------------------------------------------- criterion 3
# The assembled engine agrees with the closed dimension formulas on every
# supported shape over the full advertised parameter box.


@checked("criterion 3 (closed formulas over the parameter box)")
def test_criterion_3_closed_formula_sweep():
    capacity = {"o": 1, "iota": 0, "theta": 2, "rho": 1}
    start = time.monotonic()
    cases = 0
    for kind in CLOSED_FORM_KINDS:
        comps = shape_kind_components(kind)
        cap = sum(capacity[c.kind] for c in comps)
        for beta1_prime in range(21):
            for n in (0, 1):
                if beta1_prime - n < 0:
                    continue
                for c in (0, 1):
                    try:
                        t = TopologyInvariants(
                            beta1=beta1_prime - n, n_torsion=n, c=c
                        )
                    except ValueError:
                        continue  # negative second Betti number
                    for r1 in range(cap + 1):
                        try:
                            expected = closed_formula(kind, t, r1, max_degree=9)
                        except ShapeMismatch:
                            continue
                        page = assemble_e2(comps, t)
                        profile = d2_profile(comps, formula_rank=r1)
                        got = dims(page, profile, max_degree=9)
                        assert got.entries == expected.entries, (
                            kind,
                            beta1_prime,
                            n,
                            c,
                            r1,
                        )
                        cases += 1
    elapsed = time.monotonic() - start
    assert cases > 800, cases
    assert elapsed < 10.0, elapsed


# ------------------------------------------------------------- criterion 4
# Twelve documented dimension tables reproduce end to end through the CLI.


def run_cli(argv):
    out, err = io.StringIO(), io.StringIO()
    try:
        with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
            code = main(argv)
    except SystemExit as exc:
        code = exc.code
    return code, out.getvalue(), err.getvalue()


def parse_dim_lines(output):
    """Read the piecewise dim table back into {q: dim} for q = 0..5."""
    lines = output.split("dim_F2 H^q:\n", 1)[1].splitlines()
    pieces = []
    for line in lines:
        label, value = (part.strip() for part in line.split(":"))
        pieces.append((label, int(value)))

    def lookup(q):
        for label, value in pieces:
            if label == f"q={q}":
                return value
            if label.startswith("q>=") and q >= int(label[3:]):
                return value
            if label.startswith("q=4k+"):
                j = int(label[5:])
                if q >= j and (q - j) % 4 == 0:
                    return value
        raise AssertionError(f"no piece covers q={q}: {pieces}")

    return {q: lookup(q) for q in range(6)}


@checked("criterion 4 (documented instance tables via the CLI)")
def test_criterion_4_golden_instances():
    golden = {
        "m7": (2, 2, 2, 2, 2),
        "m15": (3, 4, 4, 4, 4),
        "m35": (3, 5, 5, 5, 5),
        "m91": (5, 9, 9, 9, 9),
        "m115": (7, 13, 13, 13, 13),
        "m11": (1, 2, 4, 3, 1),
        "m2": (2, 3, 4, 3, 2),
        "m6": (3, 5, 7, 6, 4),
        "m22": (6, 11, 13, 12, 10),
        "m37": (11, 20, 20, 19, 19),
        "m235": (14, 27, 27, 27, 27),
        "m427": (22, 43, 43, 43, 43),
    }
    for name, expected in golden.items():
        code, out, err = run_cli(["dims", str(INSTANCES / f"{name}.json")])
        assert code == 0 and err == "", name
        table = parse_dim_lines(out)
        assert table[0] == 1, name
        got = tuple(table[q] for q in range(1, 6))
        assert got == expected, (name, got, expected)


# ------------------------------------------------------------- criterion 5
# The shipped 134-row rank table passes verification: no failures, exactly
# the four stated skips, and the cross-checks D <= o and D = rank hold.


@checked("criterion 5 (rank table regression)")
def test_criterion_5_table_regression():
    start = time.monotonic()
    rows = load_table(default_table_path())
    overrides = load_n_overrides(default_n_overrides_path())
    for row in rows:
        if row.delta >= 296 and row.m not in (142, 1227, 1411, 1555):
            assert row.delta in overrides, row.delta
    report = verify_table(rows, overrides)
    assert (report.passed, report.failed, report.skipped) == (130, 0, 4)
    assert report.ok
    for rep in report.reports:
        if rep.status == "ok" and rep.formula_rank is not None:
            assert rep.d_value == rep.formula_rank, rep.delta
    for row in rows:
        d = sum(1 for f in row.image_d2_psl.factors if f % 2 == 0)
        assert d <= row.o, row.delta
    assert time.monotonic() - start < 5.0


# ------------------------------------------------------------- criterion 6
# Randomized structural properties, at least a thousand cases in total.


def subdivide(g, edge_id, mid_stab, fresh):
    target = next(e for e in g.edges if e.id == edge_id)
    mid = Vertex(fresh, mid_stab)
    e1 = Edge(fresh, target.stab, target.a, fresh, target.label_a, 1)
    e2 = Edge(fresh + 1, target.stab, fresh, target.b, 1, target.label_b)
    return GraphOfGroups(
        g.vertices + (mid,),
        tuple(e for e in g.edges if e.id != edge_id) + (e1, e2),
    )


def permute_labels(g, perm):
    stab_of = {v.id: v.stab for v in g.vertices}
    edges = []
    for e in g.edges:
        la = perm[e.label_a] if stab_of[e.a] == Q8 else e.label_a
        lb = perm[e.label_b] if stab_of[e.b] == Q8 else e.label_b
        edges.append(Edge(e.id, e.stab, e.a, e.b, la, lb))
    return GraphOfGroups(g.vertices, tuple(edges))


def random_subdivided(rng, maker):
    # midpoint ids stay below 100 so that, offset into per-component blocks
    # of 100, discovery order still follows construction order
    g = maker().graph
    fresh = 50
    for _ in range(rng.randrange(4)):
        edge_id = rng.choice([e.id for e in g.edges])
        g = subdivide(g, edge_id, rng.choice((C4, DI12)), fresh)
        fresh += 5
    return g


@checked("criterion 6 (randomized properties, >= 1000 cases)")
def test_criterion_6_randomized_properties():
    rng = random.Random(20260818)
    makers = (o_component, iota_component, theta_component, rho_component)
    cases = 0

    # reduction is idempotent
    for _ in range(250):
        g = random_subdivided(rng, rng.choice(makers))
        reduced = reduce_graph(g)
        assert reduce_graph(reduced) == reduced
        cases += 1

    # E2 columns do not depend on how the three order-4 subgroups are named
    for _ in range(200):
        maker = rng.choice((theta_component, rho_component))
        comp = maker()
        base = component_e2(comp)
        values = [1, 2, 3]
        rng.shuffle(values)
        perm = dict(zip((1, 2, 3), values))
        permuted = Component(comp.kind, permute_labels(comp.graph, perm))
        e2 = component_e2(permuted)
        for q in range(4):
            assert e2.dim(0, q) == base.dim(0, q)
            assert e2.dim(1, q) == base.dim(1, q)
        cases += 1

    # rank-nullity over F2
    for _ in range(300):
        nrows, ncols = rng.randrange(9), rng.randrange(1, 9)
        m = from_rows(
            [[rng.randrange(2) for _ in range(ncols)] for _ in range(nrows)],
            cols=ncols,
        )
        assert rank(m) + kernel_dim(m) == ncols
        cases += 1

    # dimension tables are 4-periodic above the virtual cohomological dim
    for _ in range(150):
        kind = rng.choice(CLOSED_FORM_KINDS)
        t = TopologyInvariants(
            beta1=rng.randrange(1, 12), n_torsion=rng.randrange(2), c=rng.randrange(2)
        )
        comps = shape_kind_components(kind)
        try:
            page = assemble_e2(comps, t)
        except Exception:
            continue
        profile = d2_profile(comps, formula_rank=None)
        table = dims(page, profile, max_degree=13)
        for q in range(2, 10):
            assert table.value(q) == table.value(q + 4), (kind, t, q)
        cases += 1

    # the counts fast path and an explicit graph agree through the CLI
    pool = (2, 5, 6, 7, 10, 11, 13)
    for _ in range(110):
        counts = {}
        kinds = []
        for kind, maker in (
            ("o", o_component),
            ("iota", iota_component),
            ("theta", theta_component),
            ("rho", rho_component),
        ):
            k = rng.randrange(3)
            if k:
                counts[kind] = k
                kinds.extend([maker] * k)
        if not kinds:
            continue
        vertices, edges = [], []
        for i, maker in enumerate(kinds):
            g = random_subdivided(rng, maker)
            base = 100 * (i + 1)
            vertices.extend(
                {"id": base + v.id, "stab": v.stab} for v in g.vertices
            )
            edges.extend(
                {
                    "id": base + e.id,
                    "stab": e.stab,
                    "a": base + e.a,
                    "b": base + e.b,
                    "label_a": e.label_a,
                    "label_b": e.label_b,
                }
                for e in g.edges
            )
        chi = counts.get("iota", 0) - counts.get("theta", 0)
        floor = max(1, 1 - chi)
        shared = {"m": rng.choice(pool), "beta1": rng.randrange(floor, floor + 6)}
        fast = dict(shared, components=counts)
        graph = dict(shared, components={"vertices": vertices, "edges": edges})
        out_pair = []
        with tempfile.TemporaryDirectory() as iodir:
            for doc in (fast, graph):
                path = Path(iodir) / "case.json"
                path.write_text(json.dumps(doc), encoding="utf-8")
                code, out, err = run_cli(["dims", str(path)])
                assert code == 0, err
                out_pair.append(out)
        assert out_pair[0] == out_pair[1]
        cases += 1

    assert cases >= 1000, cases
