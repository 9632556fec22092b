"""Mod-2 cohomology of SL2 groups over imaginary quadratic integers.

The input is a finite graph of groups describing the non-central 2-torsion
part of the group's action on hyperbolic space; the output is the dimension
table of group cohomology with F2 coefficients, exact where the data pins
every differential and an interval otherwise.

Layers, bottom up: ``gf2`` (linear algebra over F2), ``groups`` (graded
cohomology of the six finite stabilizer types with restriction maps),
``graphs`` (graph-of-groups documents, reduction, component shapes),
``spectral`` (first page, first differential, stable second page),
``d2`` (ranks of the second differential), ``cohomology`` (final
dimension tables and closed formulas per shape), ``abelian``
(abelianization bookkeeping), ``appendix`` (replay of the bundled
rank table).
"""

from .abelian import AbelianGroup, ParseError, dim_hom_to_f2, parse_abelian, two_primary_part
from .appendix import (
    MissingData,
    RowReport,
    TableReport,
    TableRow,
    default_n_overrides_path,
    default_table_path,
    load_n_overrides,
    load_table,
    verify_row,
    verify_table,
)
from .cohomology import (
    CLOSED_FORM_KINDS,
    DimTable,
    GroupInstance,
    ShapeMismatch,
    closed_formula,
    dims,
    shape_kind_components,
)
from .d2 import (
    ASSUME0,
    INTERVAL,
    CapacityExceeded,
    D2Profile,
    NegativeRank,
    d2_profile,
    rank_formula,
)
from .gf2 import BitMatrix, cokernel_dim, from_rows, identity, kernel_dim, rank, zero
from .graphs import (
    Component,
    Edge,
    GraphOfGroups,
    InvalidStabilizer,
    SubcomplexInvariants,
    Vertex,
    classify,
    components,
    connected_components,
    invariants,
    iota_component,
    o_component,
    reduce_graph,
    rho_component,
    shape_components,
    theta_component,
)
from .groups import (
    C2,
    C4,
    C6,
    DI12,
    Q8,
    STABILIZER_TYPES,
    STEENROD_FACTS,
    TE24,
    BasisClass,
    SteenrodFact,
    UnknownFact,
    UnsupportedPair,
    basis,
    cohomology_dim,
    restriction_matrix,
    steenrod_vanishes,
    twist_matrix,
)
from .spectral import (
    ComponentE2,
    E2Page,
    NegativeDimension,
    TopologyInvariants,
    assemble_e2,
    component_d1,
    component_e2,
    relative_dims_xs,
    relative_dims_xsprime,
)

__version__ = "1.0.0"

__all__ = [
    "ASSUME0",
    "AbelianGroup",
    "BasisClass",
    "BitMatrix",
    "C2",
    "C4",
    "C6",
    "CLOSED_FORM_KINDS",
    "CapacityExceeded",
    "Component",
    "ComponentE2",
    "D2Profile",
    "DI12",
    "DimTable",
    "E2Page",
    "Edge",
    "GraphOfGroups",
    "GroupInstance",
    "INTERVAL",
    "InvalidStabilizer",
    "MissingData",
    "NegativeDimension",
    "NegativeRank",
    "ParseError",
    "Q8",
    "RowReport",
    "STABILIZER_TYPES",
    "STEENROD_FACTS",
    "ShapeMismatch",
    "SteenrodFact",
    "SubcomplexInvariants",
    "TE24",
    "TableReport",
    "TableRow",
    "TopologyInvariants",
    "UnknownFact",
    "UnsupportedPair",
    "Vertex",
    "assemble_e2",
    "basis",
    "classify",
    "closed_formula",
    "cohomology_dim",
    "cokernel_dim",
    "component_d1",
    "component_e2",
    "components",
    "connected_components",
    "d2_profile",
    "default_n_overrides_path",
    "default_table_path",
    "dim_hom_to_f2",
    "dims",
    "from_rows",
    "identity",
    "invariants",
    "iota_component",
    "kernel_dim",
    "load_n_overrides",
    "load_table",
    "o_component",
    "parse_abelian",
    "rank",
    "rank_formula",
    "reduce_graph",
    "relative_dims_xs",
    "relative_dims_xsprime",
    "restriction_matrix",
    "rho_component",
    "shape_components",
    "shape_kind_components",
    "steenrod_vanishes",
    "theta_component",
    "twist_matrix",
    "two_primary_part",
    "verify_row",
    "verify_table",
    "zero",
]
