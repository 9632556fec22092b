"""Graphs of groups for non-central 2-torsion subcomplexes.

The quotient of the 2-torsion subcomplex by the group action is a finite
graph whose vertices and edges are decorated with stabilizer types.  Edge
stabilizers are cyclic (Z/4 in practice, Z/2 allowed for generality).  A Q8
vertex sees up to three conjugacy classes of Z/4 subgroups, so each end of
an edge carries an *edge-class label* in {1, 2, 3}; at non-Q8 vertices the
label is always 1.

Two reduction moves shrink a graph without changing the outcome of the
spectral machinery:

* merge: a degree-2 vertex sitting between two distinct edges of the same
  cyclic type, where both edge inclusions induce ring isomorphisms
  (Z/4 -> Z/4, Z/4 -> Di12, Z/2 -> Z/2, Z/2 -> Z/6), is removed and the two
  edges are spliced into one, keeping the outer end labels;
* cut: a terminal vertex whose single edge includes isomorphically is
  removed together with that edge (quaternionic and binary tetrahedral
  terminals are never cut).

Both moves are applied in ascending vertex-id order until none applies.
Merging an all-cyclic cycle stops at a single vertex carrying a loop: loops
themselves are never merged away.

Reduced connected components are matched against four shapes:

* ``o``:     one vertex (Z/4 or Di12) carrying one Z/4 loop,
* ``iota``:  two Te24 vertices joined by one Z/4 edge,
* ``theta``: two Q8 vertices joined by three Z/4 edges,
* ``rho``:   a Q8 vertex with a Z/4 loop plus a Z/4 edge to a Te24 vertex;

anything else is carried through as ``other`` with its graph attached.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import groups
from .groups import C2, C4, C6, DI12, Q8, TE24

__all__ = [
    "InvalidStabilizer",
    "Vertex",
    "Edge",
    "GraphOfGroups",
    "Component",
    "SubcomplexInvariants",
    "reduce_graph",
    "connected_components",
    "components",
    "classify",
    "invariants",
    "o_component",
    "iota_component",
    "theta_component",
    "rho_component",
    "shape_components",
]

_EDGE_TYPES = (C2, C4)

# Edge-into-vertex inclusions inducing mod-2 ring isomorphisms; these drive
# both reduction moves.
_ISO_INCLUSIONS = {
    (C4, C4),
    (C4, DI12),
    (C2, C2),
    (C2, C6),
}


class InvalidStabilizer(Exception):
    """Raised when a graph decoration is not a supported stabilizer type."""


@dataclass(frozen=True)
class Vertex:
    id: int
    stab: str


@dataclass(frozen=True)
class Edge:
    id: int
    stab: str
    a: int
    b: int
    label_a: int = 1
    label_b: int = 1

    @property
    def is_loop(self) -> bool:
        return self.a == self.b

    def ends(self) -> tuple[tuple[int, int], tuple[int, int]]:
        """Both (vertex id, label) ends; a loop yields two ends at one vertex."""
        return ((self.a, self.label_a), (self.b, self.label_b))


@dataclass(frozen=True)
class GraphOfGroups:
    vertices: tuple[Vertex, ...]
    edges: tuple[Edge, ...]

    def __post_init__(self) -> None:
        seen_v: dict[int, str] = {}
        for v in self.vertices:
            if v.stab not in groups.STABILIZER_TYPES:
                raise InvalidStabilizer(f"vertex {v.id}: unknown stabilizer {v.stab!r}")
            if v.id in seen_v:
                raise ValueError(f"duplicate vertex id {v.id}")
            seen_v[v.id] = v.stab
        seen_e: set[int] = set()
        end_labels: dict[int, list[int]] = {v.id: [] for v in self.vertices}
        for e in self.edges:
            if e.stab not in _EDGE_TYPES:
                raise InvalidStabilizer(
                    f"edge {e.id}: stabilizer {e.stab!r} is not a cyclic edge type"
                )
            if e.id in seen_e:
                raise ValueError(f"duplicate edge id {e.id}")
            seen_e.add(e.id)
            for vid, label in e.ends():
                if vid not in seen_v:
                    raise ValueError(f"edge {e.id} touches missing vertex {vid}")
                if label not in (1, 2, 3):
                    raise ValueError(f"edge {e.id}: label {label!r} not in 1..3")
                if seen_v[vid] != Q8 and label != 1:
                    raise ValueError(
                        f"edge {e.id}: label {label} at non-Q8 vertex {vid}"
                    )
                end_labels[vid].append(label)
        for vid, labels in end_labels.items():
            if seen_v[vid] == Q8 and len(labels) != len(set(labels)):
                raise ValueError(
                    f"Q8 vertex {vid} reuses an edge-class label: {sorted(labels)}"
                )

    def vertex(self, vid: int) -> Vertex:
        for v in self.vertices:
            if v.id == vid:
                return v
        raise KeyError(vid)

    def degree(self, vid: int) -> int:
        return sum(1 for e in self.edges for end, _ in e.ends() if end == vid)

    def sorted_vertices(self) -> tuple[Vertex, ...]:
        return tuple(sorted(self.vertices, key=lambda v: v.id))

    def sorted_edges(self) -> tuple[Edge, ...]:
        return tuple(sorted(self.edges, key=lambda e: e.id))

    def to_dict(self) -> dict:
        return {
            "vertices": [{"id": v.id, "stab": v.stab} for v in self.sorted_vertices()],
            "edges": [
                {
                    "id": e.id,
                    "stab": e.stab,
                    "a": e.a,
                    "b": e.b,
                    "label_a": e.label_a,
                    "label_b": e.label_b,
                }
                for e in self.sorted_edges()
            ],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "GraphOfGroups":
        try:
            vertices = tuple(
                Vertex(int(v["id"]), str(v["stab"])) for v in data["vertices"]
            )
            edges = tuple(
                Edge(
                    int(e["id"]),
                    str(e["stab"]),
                    int(e["a"]),
                    int(e["b"]),
                    int(e.get("label_a", 1)),
                    int(e.get("label_b", 1)),
                )
                for e in data.get("edges", [])
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"malformed graph document: {exc}") from exc
        return cls(vertices, edges)


def _mergeable(graph: GraphOfGroups, vid: int) -> tuple[Edge, Edge] | None:
    """The two spliceable edges at ``vid``, or None if the merge move fails."""
    v = graph.vertex(vid)
    incident = [e for e in graph.sorted_edges() if vid in (e.a, e.b)]
    if len(incident) != 2 or any(e.is_loop for e in incident):
        return None
    e1, e2 = incident
    if e1.stab != e2.stab:
        return None
    if (e1.stab, v.stab) not in _ISO_INCLUSIONS:
        return None
    return e1, e2


def _cuttable(graph: GraphOfGroups, vid: int) -> Edge | None:
    """The terminal edge to drop at ``vid``, or None if the cut move fails."""
    v = graph.vertex(vid)
    incident = [e for e in graph.sorted_edges() if vid in (e.a, e.b)]
    if len(incident) != 1 or incident[0].is_loop:
        return None
    edge = incident[0]
    if (edge.stab, v.stab) not in _ISO_INCLUSIONS:
        return None
    return edge


def _far_end(edge: Edge, vid: int) -> tuple[int, int]:
    """The (vertex, label) end of ``edge`` away from ``vid``."""
    if edge.a == vid:
        return edge.b, edge.label_b
    return edge.a, edge.label_a


def reduce_graph(graph: GraphOfGroups) -> GraphOfGroups:
    """Apply merge and cut moves until neither applies.  Idempotent.

    Deterministic: vertices are scanned in ascending id order, merges before
    cuts, restarting after every move.  The spliced edge keeps the smaller of
    the two edge ids.
    """
    current = graph
    while True:
        acted = False
        for v in current.sorted_vertices():
            pair = _mergeable(current, v.id)
            if pair is None:
                continue
            e1, e2 = pair
            (u, label_u) = _far_end(e1, v.id)
            (w, label_w) = _far_end(e2, v.id)
            new_edge = Edge(min(e1.id, e2.id), e1.stab, u, w, label_u, label_w)
            current = GraphOfGroups(
                tuple(x for x in current.vertices if x.id != v.id),
                tuple(x for x in current.edges if x.id not in (e1.id, e2.id))
                + (new_edge,),
            )
            acted = True
            break
        if acted:
            continue
        for v in current.sorted_vertices():
            edge = _cuttable(current, v.id)
            if edge is None:
                continue
            current = GraphOfGroups(
                tuple(x for x in current.vertices if x.id != v.id),
                tuple(x for x in current.edges if x.id != edge.id),
            )
            acted = True
            break
        if not acted:
            return GraphOfGroups(current.sorted_vertices(), current.sorted_edges())


def connected_components(graph: GraphOfGroups) -> list[GraphOfGroups]:
    """Split into connected components, ordered by smallest vertex id."""
    parent = {v.id: v.id for v in graph.vertices}

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in graph.edges:
        ra, rb = find(e.a), find(e.b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)

    groups_by_root: dict[int, list[int]] = {}
    for v in graph.vertices:
        groups_by_root.setdefault(find(v.id), []).append(v.id)

    out = []
    for root in sorted(groups_by_root):
        vids = set(groups_by_root[root])
        out.append(
            GraphOfGroups(
                tuple(v for v in graph.sorted_vertices() if v.id in vids),
                tuple(e for e in graph.sorted_edges() if e.a in vids),
            )
        )
    return out


@dataclass(frozen=True)
class Component:
    """A classified connected component; ``graph`` is the actual subgraph."""

    kind: str  # "o" | "iota" | "theta" | "rho" | "other"
    graph: GraphOfGroups

    def __repr__(self) -> str:
        return f"Component({self.kind})"


def _match_shape(g: GraphOfGroups) -> str:
    stabs = sorted(v.stab for v in g.vertices)
    n_loops = sum(1 for e in g.edges if e.is_loop)
    if any(e.stab != C4 for e in g.edges):
        return "other"
    if len(g.vertices) == 1 and len(g.edges) == 1 and n_loops == 1:
        # The merged survivor of an all-cyclic cycle may be Di12; the ring is
        # the same as for Z/4, so both count as the circle shape.
        if stabs[0] in (C4, DI12):
            return "o"
        return "other"
    if stabs == [TE24, TE24] and len(g.edges) == 1 and n_loops == 0:
        return "iota"
    if stabs == [Q8, Q8] and len(g.edges) == 3 and n_loops == 0:
        return "theta"
    if stabs == [Q8, TE24] and len(g.edges) == 2 and n_loops == 1:
        loop = next(e for e in g.edges if e.is_loop)
        bridge = next(e for e in g.edges if not e.is_loop)
        q8_id = next(v.id for v in g.vertices if v.stab == Q8)
        if loop.a == q8_id and q8_id in (bridge.a, bridge.b):
            return "rho"
    return "other"


def components(graph: GraphOfGroups) -> list[Component]:
    """Classify each connected component of ``graph`` as-is (no reduction)."""
    return [Component(_match_shape(g), g) for g in connected_components(graph)]


def classify(graph: GraphOfGroups) -> list[Component]:
    """Reduce, then classify.  The shapes of the reduced components."""
    return components(reduce_graph(graph))


@dataclass(frozen=True)
class SubcomplexInvariants:
    o: int
    iota: int
    theta: int
    rho: int
    v: int
    chi: int
    sum_h2_xsprime: int


def invariants(comps: list[Component]) -> SubcomplexInvariants:
    """Shape counts plus the quantities the page assembly needs.

    ``v`` counts quaternionic and binary tetrahedral vertices, ``chi`` is the
    Euler characteristic of the underlying graph, and ``sum_h2_xsprime`` adds
    up dim H^2 of those vertex stabilizers (2 per Q8 vertex, 0 per Te24).
    Both reduction moves preserve all three.
    """
    counts = {"o": 0, "iota": 0, "theta": 0, "rho": 0, "other": 0}
    v = 0
    chi = 0
    sum_h2 = 0
    for comp in comps:
        counts[comp.kind] += 1
        chi += len(comp.graph.vertices) - len(comp.graph.edges)
        for vert in comp.graph.vertices:
            if vert.stab in (Q8, TE24):
                v += 1
                sum_h2 += groups.cohomology_dim(vert.stab, 2)
    return SubcomplexInvariants(
        counts["o"], counts["iota"], counts["theta"], counts["rho"], v, chi, sum_h2
    )


# Canonical templates.  Labels follow the normalizations under which the
# documented d1 matrices were computed: theta uses one edge per label class;
# rho's loop uses classes 1 and 3 with the bridge on class 2.


def o_component(base_id: int = 0) -> Component:
    g = GraphOfGroups(
        (Vertex(base_id, C4),),
        (Edge(base_id, C4, base_id, base_id, 1, 1),),
    )
    return Component("o", g)


def iota_component(base_id: int = 0) -> Component:
    g = GraphOfGroups(
        (Vertex(base_id, TE24), Vertex(base_id + 1, TE24)),
        (Edge(base_id, C4, base_id, base_id + 1, 1, 1),),
    )
    return Component("iota", g)


def theta_component(base_id: int = 0) -> Component:
    g = GraphOfGroups(
        (Vertex(base_id, Q8), Vertex(base_id + 1, Q8)),
        (
            Edge(base_id, C4, base_id, base_id + 1, 1, 1),
            Edge(base_id + 1, C4, base_id, base_id + 1, 2, 2),
            Edge(base_id + 2, C4, base_id, base_id + 1, 3, 3),
        ),
    )
    return Component("theta", g)


def rho_component(base_id: int = 0) -> Component:
    g = GraphOfGroups(
        (Vertex(base_id, Q8), Vertex(base_id + 1, TE24)),
        (
            Edge(base_id, C4, base_id, base_id, 1, 3),
            Edge(base_id + 1, C4, base_id, base_id + 1, 2, 1),
        ),
    )
    return Component("rho", g)


def shape_components(
    o: int = 0, iota: int = 0, theta: int = 0, rho: int = 0
) -> list[Component]:
    """A component list with the given shape counts, on disjoint id ranges."""
    out: list[Component] = []
    base = 0
    for _ in range(o):
        out.append(o_component(base))
        base += 10
    for _ in range(iota):
        out.append(iota_component(base))
        base += 10
    for _ in range(theta):
        out.append(theta_component(base))
        base += 10
    for _ in range(rho):
        out.append(rho_component(base))
        base += 10
    return out
