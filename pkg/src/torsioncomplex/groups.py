"""Mod-2 cohomology of the finite cell stabilizers.

Six isomorphism types of finite groups occur as cell stabilizers on the
non-central 2-torsion subcomplex and its neighborhood: the cyclic groups
Z/2, Z/4, Z/6, the quaternion group Q8 of order 8, the dicyclic group
Di(12) of order 12 and the binary tetrahedral group Te(24) of order 24.
Each contains the central Z/2, and the quotients by it are respectively
trivial, Z/2, Z/3, the Klein group, S3 and A4 (recorded in
``PSL_QUOTIENT`` for documentation).

Their F2 cohomology rings are all periodic with period dividing 4:

* ``H*(Z/2) = H*(Z/6) = F2[e1]``                       (polynomial, degree 1)
* ``H*(Z/4) = H*(Di12) = F2[e2] (x) Lambda(b1)``       (e2 degree 2, b1 degree 1)
* ``H*(Q8)  = F2[e4] (x) span{1, x1, y1, x2, y2, x3}`` (subscripts = degrees)
* ``H*(Te24)= F2[e4] (x) Lambda(b3)``                  (e4 degree 4, b3 degree 3)

A class is *reduced* when it is a polynomial multiple of a power of the
periodicity generator (equivalently: not killed by the restriction to some
cyclic subgroup detecting it); every other class is nilpotent.  Only reduced
classes can restrict to reduced classes, which forces most restriction
matrices below and is what makes the d1 differential computable degree by
degree.

The restriction maps target the two cyclic edge groups that occur:

* ``h = Z/4``: from Z/4 (identity), Di12 (ring isomorphism), Te24 (iso on
  the polynomial part, zero on nilpotents), and Q8.  A Q8 vertex meets up to
  three conjugacy classes of Z/4 subgroups; the *edge-class label* 1, 2, 3
  selects which one, and in degree 1 the three restrictions are the three
  nonzero functionals on span{x1, y1}.
* ``h = Z/2``: the central subgroup, reachable from all six types.

``twist_matrix`` records the composite "restrict, then identify along the
loop's second inclusion" for a loop edge at a Z/4 or Q8 vertex, in the
canonical labeling where the loop uses label classes 1 and 3.
"""

from __future__ import annotations

from dataclasses import dataclass

from .gf2 import BitMatrix, from_rows

__all__ = [
    "C2",
    "C4",
    "C6",
    "Q8",
    "DI12",
    "TE24",
    "STABILIZER_TYPES",
    "PSL_QUOTIENT",
    "UnsupportedPair",
    "UnknownFact",
    "BasisClass",
    "cohomology_dim",
    "basis",
    "restriction_matrix",
    "twist_matrix",
    "SteenrodFact",
    "STEENROD_FACTS",
    "steenrod_vanishes",
]

C2 = "C2"
C4 = "C4"
C6 = "C6"
Q8 = "Q8"
DI12 = "Di12"
TE24 = "Te24"

STABILIZER_TYPES = (C2, C4, C6, Q8, DI12, TE24)

#: Image of each stabilizer in the quotient by the central Z/2 (documentation).
PSL_QUOTIENT = {
    C2: "1",
    C4: "Z/2",
    C6: "Z/3",
    Q8: "Z/2 x Z/2",
    DI12: "S3",
    TE24: "A4",
}

# dim_F2 H^q by residue of q mod 4.
_DIMS_MOD4 = {
    C2: (1, 1, 1, 1),
    C4: (1, 1, 1, 1),
    C6: (1, 1, 1, 1),
    Q8: (1, 2, 2, 1),
    DI12: (1, 1, 1, 1),
    TE24: (1, 0, 0, 1),
}


class UnsupportedPair(Exception):
    """Raised for a restriction or twist along an inclusion not in the tables."""


class UnknownFact(Exception):
    """Raised when a Steenrod query has no recorded answer."""


def _check_group(group: str) -> None:
    if group not in _DIMS_MOD4:
        raise ValueError(f"unknown stabilizer type {group!r}")


def _check_degree(q: int) -> None:
    if not isinstance(q, int) or isinstance(q, bool) or q < 0:
        raise ValueError(f"degree must be a nonnegative integer, got {q!r}")


def cohomology_dim(group: str, q: int) -> int:
    """dim_F2 H^q(group; F2).  Periodic of period 4 in q."""
    _check_group(group)
    _check_degree(q)
    return _DIMS_MOD4[group][q % 4]


@dataclass(frozen=True)
class BasisClass:
    """A named monomial basis class of H^q, tagged reduced or nilpotent."""

    name: str
    reduced: bool

    @property
    def flag(self) -> str:
        return "reduced" if self.reduced else "nilpotent"


def _monomial(*parts: str) -> str:
    pieces = [p for p in parts if p]
    return "*".join(pieces) if pieces else "1"


def _power(gen: str, k: int) -> str:
    if k == 0:
        return ""
    if k == 1:
        return gen
    return f"{gen}^{k}"


def basis(group: str, q: int) -> tuple[BasisClass, ...]:
    """Monomial basis of H^q(group; F2), reduced classes first."""
    _check_group(group)
    _check_degree(q)
    if group in (C2, C6):
        return (BasisClass(_monomial(_power("e1", q)), True),)
    if group in (C4, DI12):
        if q % 2 == 0:
            return (BasisClass(_monomial(_power("e2", q // 2)), True),)
        return (BasisClass(_monomial(_power("e2", q // 2), "b1"), False),)
    k, r = divmod(q, 4)
    pre = _power("e4", k)
    if group == Q8:
        if r == 0:
            return (BasisClass(_monomial(pre), True),)
        if r == 1:
            return (
                BasisClass(_monomial(pre, "x1"), False),
                BasisClass(_monomial(pre, "y1"), False),
            )
        if r == 2:
            return (
                BasisClass(_monomial(pre, "x2"), False),
                BasisClass(_monomial(pre, "y2"), False),
            )
        return (BasisClass(_monomial(pre, "x3"), False),)
    # Te24
    if r == 0:
        return (BasisClass(_monomial(pre), True),)
    if r == 3:
        return (BasisClass(_monomial(pre, "b3"), False),)
    return ()


# Degree-1 restriction functionals H^1(Q8) -> H^1(Z/4) = <b1>, by edge-class
# label: coefficients of (x1, y1).  The three labels exhaust the nonzero
# functionals; in degrees 4k+1 multiplication by e4^k -> e2^(2k) reuses them.
_Q8_LABEL_FUNCTIONALS = {1: (1, 0), 2: (0, 1), 3: (1, 1)}


def _check_label(group: str, label: int) -> None:
    if label not in (1, 2, 3):
        raise ValueError(f"edge-class label must be 1, 2 or 3, got {label!r}")
    if group != Q8 and label != 1:
        raise ValueError(f"edge-class label must be 1 for {group} (got {label})")


def restriction_matrix(group: str, edge_group: str, label: int, q: int) -> BitMatrix:
    """Matrix of H^q(group) -> H^q(edge_group) along the labeled inclusion.

    Shape: dim H^q(edge_group) rows by dim H^q(group) columns (codomain x
    domain, acting on column vectors).  Raises UnsupportedPair when the
    inclusion is not one of the supported ones.
    """
    _check_group(group)
    _check_group(edge_group)
    _check_degree(q)
    _check_label(group, label)
    r = q % 4
    dom = cohomology_dim(group, q)
    cod = cohomology_dim(edge_group, q)

    if edge_group == C4:
        if group in (C4, DI12):
            # Identity inclusion / ring isomorphism.
            return from_rows([[1]])
        if group == TE24:
            # Iso on powers of e4 (e4 -> e2^2); b3 and its multiples die.
            if r == 0:
                return from_rows([[1]])
            if r == 3:
                return from_rows([[0]])
            return BitMatrix(cod, dom, (0,) * cod)
        if group == Q8:
            if r == 0:
                return from_rows([[1]])  # e4^k -> e2^(2k)
            if r == 1:
                return from_rows([list(_Q8_LABEL_FUNCTIONALS[label])])
            if r == 2:
                return from_rows([[0, 0]])
            return from_rows([[0]])
        raise UnsupportedPair(f"no restriction {group} -> {edge_group}")

    if edge_group == C2:
        # The central subgroup.  Reduced classes restrict to the matching
        # power of e1; nilpotents die.
        if group == C2:
            return from_rows([[1]])
        if group == C6:
            return from_rows([[1]])
        if group in (C4, DI12):
            return from_rows([[1]] if r % 2 == 0 else [[0]])
        if group == Q8:
            if r == 0:
                return from_rows([[1]])
            return BitMatrix(cod, dom, (0,) * cod)
        if group == TE24:
            if r == 0:
                return from_rows([[1]])
            if r == 3:
                return from_rows([[0]])
            return BitMatrix(cod, dom, (0,) * cod)

    raise UnsupportedPair(f"no restriction {group} -> {edge_group}")


def twist_matrix(loop_vertex: str, q: int) -> BitMatrix:
    """Restriction along the second inclusion of a loop's Z/4 edge group.

    For a loop at a Z/4 vertex the two inclusions agree up to conjugation and
    the twist is the identity in every degree.  For a loop at a Q8 vertex
    (canonical labeling: the loop uses classes 1 and 3) the twist is the
    label-3 functional in degrees 4k+1, the isomorphism e4^k -> e2^(2k) in
    degrees 4k, and zero in the purely nilpotent degrees.
    """
    _check_group(loop_vertex)
    _check_degree(q)
    if loop_vertex == C4:
        return restriction_matrix(C4, C4, 1, q)
    if loop_vertex == Q8:
        return restriction_matrix(Q8, C4, 3, q)
    raise UnsupportedPair(f"no loop twist at a {loop_vertex} vertex")


@dataclass(frozen=True)
class SteenrodFact:
    """A recorded value of a Steenrod operation on a specific class."""

    group: str
    op: str
    degree: int
    vanishes: bool
    note: str


#: The complete list of recorded facts.  Everything the d2 rule engine
#: concludes about vanishing must cite one of these.
STEENROD_FACTS = (
    SteenrodFact(
        C4,
        "Sq2",
        3,
        False,
        "Sq2 is nonzero on H^3(Z/4): Sq2(e2*b1) = e2^2*b1.",
    ),
    SteenrodFact(
        Q8,
        "Sq2",
        3,
        True,
        "Sq2 vanishes on H^3(Q8): x3 lifts the top class of the sphere quotient.",
    ),
    SteenrodFact(
        TE24,
        "Sq2",
        3,
        True,
        "Sq2 vanishes on H^3(Te24): restriction along Q8 detects H^3.",
    ),
)

_FACT_INDEX = {(f.group, f.op, f.degree): f for f in STEENROD_FACTS}


def steenrod_vanishes(group: str, op: str, degree: int) -> bool:
    """Whether the recorded operation vanishes on H^degree(group).

    Supported ops are Sq1/Sq2 applied within their legal range (Sq^k needs
    degree >= k); queries without a recorded fact raise UnknownFact.
    """
    _check_group(group)
    if op not in ("Sq1", "Sq2"):
        raise ValueError(f"unsupported Steenrod operation {op!r}")
    _check_degree(degree)
    k = int(op[2:])
    if degree < k:
        raise ValueError(f"{op} is not defined on H^{degree}")
    fact = _FACT_INDEX.get((group, op, degree))
    if fact is None:
        raise UnknownFact(f"no recorded value for {op} on H^{degree}({group})")
    return fact.vanishes
