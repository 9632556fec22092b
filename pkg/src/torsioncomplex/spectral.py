"""First page of the equivariant spectral sequence over a 2-torsion graph.

For the subcomplex action, the row-q first differential is the difference of
restriction maps from vertex stabilizers to edge stabilizers:

    d1 : (+) over vertices of H^q(G_v)  ->  (+) over edges of H^q(G_e).

Each end of an edge contributes the restriction map selected by its
edge-class label; over F2 the sign in "difference" disappears, and a loop's
two ends land in the same vertex block, so a loop contributes the sum of its
two end restrictions (on the canonical labelings this is exactly
"restriction minus twist").  The kernel and cokernel of d1 give the two
columns that a component contributes to the E2 page.

The E2 page of the full arithmetic group glues the component contributions
to relative cohomology of the quotient space: rows 4k+1 and 4k+3 receive the
component kernels/cokernels plus the relative dimensions ``a1``/``a2`` of
the pair (quotient, subcomplex image); row 4k+2 is driven by the boundary
neighborhood of the subcomplex (``relative_dims_xsprime``); row 4k holds the
Betti numbers of the quotient.  Above the virtual cohomological dimension
everything is 4-periodic, so a 3-column, 4-row table carries the whole page.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from . import gf2, groups
from .gf2 import BitMatrix
from .graphs import Component, SubcomplexInvariants, invariants

__all__ = [
    "NegativeDimension",
    "TopologyInvariants",
    "ComponentE2",
    "E2Page",
    "component_d1",
    "component_e2",
    "relative_dims_xs",
    "relative_dims_xsprime",
    "assemble_e2",
]


class NegativeDimension(Exception):
    """Raised when topology inputs force a negative relative dimension."""


@dataclass(frozen=True)
class TopologyInvariants:
    """Topological inputs for one arithmetic group.

    ``beta1`` is the first Betti number of the quotient space; the second is
    always ``beta1 - 1``.  ``n_torsion`` is dim Hom of the 2-torsion of H_1
    of the quotient into F2 (written N in reports); it bumps both relative
    Betti numbers.  ``c`` counts the extra unit contributed by cusps (0 for
    every documented case except a handful with c = 1).
    """

    beta1: int
    n_torsion: int = 0
    c: int = 0

    def __post_init__(self) -> None:
        if self.beta1 < 0 or self.n_torsion < 0:
            raise ValueError("beta1 and n_torsion must be nonnegative")
        if self.c not in (0, 1):
            raise ValueError(f"c must be 0 or 1, got {self.c}")
        if self.beta_sup2 < 0:
            raise ValueError(
                f"beta1={self.beta1}, n_torsion={self.n_torsion} give a negative "
                "second Betti number"
            )

    @property
    def beta_sup1(self) -> int:
        return self.beta1 + self.n_torsion

    @property
    def beta_sup2(self) -> int:
        return self.beta1 - 1 + self.n_torsion


def relative_dims_xs(t: TopologyInvariants, chi: int) -> tuple[int, int, int]:
    """Mod-2 dimensions of the quotient pair relative to the subcomplex image.

    ``chi`` is the Euler characteristic of the reduced subcomplex quotient.
    Returns (0, beta^1 + c + chi - 1, beta^2 + c); degree-1 entry below zero
    means the inputs are inconsistent and raises NegativeDimension.
    """
    p1 = t.beta_sup1 + t.c + chi - 1
    if p1 < 0:
        raise NegativeDimension(
            f"relative H^1 would be {p1} (beta1={t.beta1}, N={t.n_torsion}, "
            f"c={t.c}, chi={chi})"
        )
    return (0, p1, t.beta_sup2 + t.c)


def relative_dims_xsprime(t: TopologyInvariants, v: int) -> tuple[int, int, int]:
    """Mod-2 dimensions relative to the boundary of the subcomplex
    neighborhood; ``v`` counts its quaternionic/tetrahedral vertices."""
    if v < 0:
        raise ValueError("v must be nonnegative")
    sign = 1 if v > 0 else 0
    return (1 - sign, t.beta_sup1 + v - sign, t.beta_sup2)


def component_d1(component: Component, q: int) -> BitMatrix:
    """Matrix of the row-q first differential of one component.

    Rows are indexed by the edge blocks (in ascending edge id), columns by
    the vertex blocks (ascending vertex id); see the module docstring for
    the loop convention.
    """
    g = component.graph
    verts = g.sorted_vertices()
    edges = g.sorted_edges()
    col_off: dict[int, int] = {}
    cols = 0
    for v in verts:
        col_off[v.id] = cols
        cols += groups.cohomology_dim(v.stab, q)
    stab_of = {v.id: v.stab for v in verts}
    row_bits: list[int] = []
    for e in edges:
        block_rows = groups.cohomology_dim(e.stab, q)
        bits = [0] * block_rows
        for vid, label in e.ends():
            res = groups.restriction_matrix(stab_of[vid], e.stab, label, q)
            off = col_off[vid]
            for i in range(res.rows):
                bits[i] ^= res.row_bits[i] << off
        row_bits.extend(bits)
    return BitMatrix(len(row_bits), cols, tuple(row_bits))


@dataclass(frozen=True)
class ComponentE2:
    """Kernel/cokernel dimensions of d1 by degree residue.

    ``dim(col, q)`` with col 0 (kernel side, contributes to E2^{0,q}) or
    col 1 (cokernel side, contributes to E2^{1,q}); only q mod 4 matters.
    """

    kind: str
    table: tuple[tuple[int, int], ...]  # index: residue -> (kernel, cokernel)

    def dim(self, col: int, q: int) -> int:
        if col not in (0, 1):
            raise ValueError(f"column must be 0 or 1, got {col}")
        return self.table[q % 4][col]


@lru_cache(maxsize=None)
def _component_e2_cached(component: Component) -> ComponentE2:
    table = []
    for residue in range(4):
        m = component_d1(component, residue)
        table.append((gf2.kernel_dim(m), gf2.cokernel_dim(m)))
    # Degree 4 must agree with degree 0: the residue-0 blocks are the
    # restriction isomorphisms on powers of the periodicity generators.
    m4 = component_d1(component, 4)
    assert (gf2.kernel_dim(m4), gf2.cokernel_dim(m4)) == table[0]
    return ComponentE2(component.kind, tuple(table))


def component_e2(component: Component) -> ComponentE2:
    """Kernel and cokernel dimensions of d1 for one component, all residues."""
    return _component_e2_cached(component)


@dataclass(frozen=True)
class E2Page:
    """The stable page as a 4-row (q mod 4), 3-column (p = 0, 1, 2) table.

    Row 0 stores the values valid for q = 4k with k >= 1; ``entry(0, 0)``
    alone equals H^0 = 1 so no special case is needed when summing along
    antidiagonals with p <= q.  ``a1``/``a2`` are the relative dimensions
    feeding rows 4k+1/4k+3, ``a3`` the middle entry of row 4k+2.
    """

    rows: tuple[tuple[int, int, int], ...]
    a1: int
    a2: int
    a3: int

    def entry(self, p: int, q: int) -> int:
        if p not in (0, 1, 2):
            raise ValueError(f"column p must be 0, 1 or 2, got {p}")
        if q < 0:
            raise ValueError(f"row q must be nonnegative, got {q}")
        return self.rows[q % 4][p]

    def to_lines(self) -> list[str]:
        labels = ("q=4k  ", "q=4k+1", "q=4k+2", "q=4k+3")
        out = ["E2 page (columns p=0,1,2; q mod 4, stable range):"]
        for residue in (0, 1, 2, 3):
            row = self.rows[residue]
            out.append(f"  {labels[residue]} : {row[0]} {row[1]} {row[2]}")
        out.append(f"  a1={self.a1} a2={self.a2} a3={self.a3}")
        return out


def assemble_e2(comps: list[Component], t: TopologyInvariants) -> E2Page:
    """Glue component contributions and relative dimensions into the page."""
    inv: SubcomplexInvariants = invariants(comps)
    tables = [component_e2(c) for c in comps]
    _, a1, a2 = relative_dims_xs(t, inv.chi)
    b0, b1, b2 = relative_dims_xsprime(t, inv.v)
    row0 = (1, t.beta_sup1, t.beta_sup2)
    row1 = (
        sum(c.dim(0, 1) for c in tables),
        sum(c.dim(1, 1) for c in tables) + a1,
        a2,
    )
    row2 = (inv.sum_h2_xsprime + b0, b1, b2)
    row3 = (
        sum(c.dim(0, 3) for c in tables),
        sum(c.dim(1, 3) for c in tables) + a1,
        a2,
    )
    return E2Page((row0, row1, row2, row3), a1=a1, a2=a2, a3=b1)
