"""Dimension tables dim_F2 H^q for the arithmetic groups themselves.

The spectral sequence degenerates after the second differential, so in the
stable range each total degree N sums the page entries on its antidiagonal
(p <= 2) and subtracts the d2 rank acting out of, or into, that diagonal:

    dim H^N = sum_{p=0..min(2,N)} E2(p, (N-p) mod 4) - r(N)        (N odd)
            = sum_{p=0..min(2,N)} E2(p, (N-p) mod 4) - r(N-1)      (N even, N>0)

with r(q) = r1 for q = 1 mod 4, r(q) = r3 for q = 3 mod 4.  The tables are
4-periodic from degree 2 on.  Ranks may be intervals (see the d2 policies),
in which case the dimensions are intervals too.

``closed_formula`` evaluates the documented closed forms for the component
multisets that occur in practice, as an independent cross-check of the
assembled computation.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .abelian import AbelianGroup
from .d2 import Count, D2Profile, format_count
from .graphs import Component, shape_components
from .spectral import E2Page, TopologyInvariants, assemble_e2

__all__ = [
    "ShapeMismatch",
    "DimTable",
    "dims",
    "closed_formula",
    "CLOSED_FORM_KINDS",
    "GroupInstance",
]


class ShapeMismatch(Exception):
    """Raised when closed-formula inputs are inconsistent with the shape."""


@dataclass(frozen=True)
class DimTable:
    """dim_F2 H^q for q = 0..max_degree, entries as lo..hi counts."""

    max_degree: int
    entries: tuple[Count, ...]

    def value(self, q: int) -> Count:
        if not (0 <= q <= self.max_degree):
            raise ValueError(f"degree {q} outside 0..{self.max_degree}")
        return self.entries[q]

    @property
    def exact(self) -> bool:
        return all(lo == hi for lo, hi in self.entries)

    def to_lines(self) -> list[str]:
        out = ["dim_F2 H^q:"]
        if self.max_degree < 5:
            for q, count in enumerate(self.entries):
                out.append(f"  q={q}    : {format_count(count)}")
            return out
        # From degree 2 on the table is 4-periodic; render the five stable
        # classes, collapsing them when they agree.
        v1 = self.entries[1]
        tail = [self.entries[2], self.entries[3], self.entries[4], self.entries[5]]
        out.append(f"  q=0    : {format_count(self.entries[0])}")
        if all(t == v1 for t in tail):
            out.append(f"  q>=1   : {format_count(v1)}")
        elif len(set(tail)) == 1:
            out.append(f"  q=1    : {format_count(v1)}")
            out.append(f"  q>=2   : {format_count(tail[0])}")
        else:
            out.append(f"  q=1    : {format_count(v1)}")
            for label, count in zip(("q=4k+2", "q=4k+3", "q=4k+4", "q=4k+5"), tail):
                out.append(f"  {label} : {format_count(count)}")
        return out


def _rank_for(profile: D2Profile, q: int) -> Count:
    if q % 4 == 1:
        return profile.r1
    if q % 4 == 3:
        return profile.r3
    return (0, 0)


def dims(page: E2Page, profile: D2Profile, max_degree: int = 5) -> DimTable:
    """Assemble the dimension table from the page and the d2 profile."""
    if max_degree < 2:
        raise ValueError(f"max_degree must be at least 2, got {max_degree}")
    entries: list[Count] = []
    for n in range(max_degree + 1):
        base = sum(page.entry(p, (n - p) % 4) for p in range(min(2, n) + 1))
        if n == 0:
            sub: Count = (0, 0)
        elif n % 2 == 1:
            sub = _rank_for(profile, n)
        else:
            sub = _rank_for(profile, n - 1)
        lo, hi = base - sub[1], base - sub[0]
        if lo < 0:
            raise ValueError(
                f"degree {n}: rank {format_count(sub)} exceeds the page total {base}"
            )
        entries.append((lo, hi))
    return DimTable(max_degree, tuple(entries))


# Closed forms.  Each kind describes one component multiset: the three
# single-component shapes plus the composite multisets occurring in the
# documented instances.  Per kind: the shape counts, the degree-1 capacity,
# the number of circle components (r3 = min(r1, circles)) and the Euler
# characteristic of the multiset.
_KINDS: dict[str, dict] = {
    "iota": {"counts": (0, 1, 0, 0), "cap": 0, "circles": 0, "chi": 1},
    "theta": {"counts": (0, 0, 1, 0), "cap": 2, "circles": 0, "chi": -1},
    "rho": {"counts": (0, 0, 0, 1), "cap": 1, "circles": 0, "chi": 0},
    "o": {"counts": (1, 0, 0, 0), "cap": 1, "circles": 1, "chi": 0},
    "ooo": {"counts": (3, 0, 0, 0), "cap": 3, "circles": 3, "chi": 0},
    "theta_oo": {"counts": (2, 0, 1, 0), "cap": 4, "circles": 2, "chi": -1},
    "o_iota": {"counts": (1, 1, 0, 0), "cap": 1, "circles": 1, "chi": 1},
}

CLOSED_FORM_KINDS = tuple(_KINDS)


def closed_formula(
    kind: str, t: TopologyInvariants, r1: int, max_degree: int = 5
) -> DimTable:
    """Closed-form dimension table for one documented component multiset.

    ``r1`` is the exact rank of d2^{0,1}; the 4k+3 rank follows from the
    circle-linking rule.  Raises ShapeMismatch when the inputs cannot belong
    to the shape (rank above capacity, or relative dimensions below zero).
    """
    if kind not in _KINDS:
        raise ShapeMismatch(f"unknown shape kind {kind!r}")
    info = _KINDS[kind]
    if not (0 <= r1 <= info["cap"]):
        raise ShapeMismatch(
            f"rank {r1} outside the degree-1 capacity 0..{info['cap']} of {kind}"
        )
    b1, b2, c = t.beta_sup1, t.beta_sup2, t.c
    if b1 + c + info["chi"] - 1 < 0:
        raise ShapeMismatch(
            f"beta1={t.beta1}, N={t.n_torsion}, c={c} are inconsistent with {kind}"
        )
    r3 = min(r1, info["circles"])
    s = b1 + b2 + c
    if kind == "iota":
        values = (b1, s + 1, s + 3, s + 2, s)
    elif kind == "theta":
        values = (b1 + 2 - r1, s + 3 - r1, s + 3, s + 2, s + 2 - r1)
    elif kind == "rho":
        values = (b1 + 1 - r1, s + 2 - r1, s + 3, s + 2, s + 1 - r1)
    elif kind == "o":
        values = (b1 + 1 - r1, s + 1 - r1, s + 1 - r1, s + 1 - r1, s + 1 - r1)
    elif kind == "ooo":
        values = (b1 + 3 - r1, s + 3 - r1, s + 3 - r1, s + 3 - r1, s + 3 - r1)
    elif kind == "theta_oo":
        values = (b1 + 4 - r1, s + 5 - r1, s + 5 - r3, s + 4 - r3, s + 4 - r1)
    else:  # o_iota
        values = (b1 + 1 - r1, s + 2 - r1, s + 4 - r1, s + 3 - r1, s + 1 - r1)
    if min(values) < 0:
        raise ShapeMismatch(f"inputs give a negative dimension for {kind}")
    entries: list[Count] = [(1, 1)]
    for n in range(1, max_degree + 1):
        if n == 1:
            v = values[0]
        else:
            v = values[1 + (n - 2) % 4]
        entries.append((v, v))
    return DimTable(max_degree, tuple(entries))


def shape_kind_components(kind: str) -> list[Component]:
    """Canonical component list realizing a closed-formula kind."""
    if kind not in _KINDS:
        raise ShapeMismatch(f"unknown shape kind {kind!r}")
    o, iota, theta, rho = _KINDS[kind]["counts"]
    return shape_components(o=o, iota=iota, theta=theta, rho=rho)


def _squarefree(m: int) -> bool:
    if m < 1:
        return False
    d = 2
    while d * d <= m:
        if m % (d * d) == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class GroupInstance:
    """One arithmetic group, described by its squarefree parameter m.

    The discriminant is -m for m = 3 mod 4 and -4m otherwise; m = 1 and
    m = 3 are excluded (their quotients do not follow the beta2 = beta1 - 1
    pattern the assembly relies on).
    """

    m: int
    topology: TopologyInvariants
    components: tuple[Component, ...]
    sl_ab_tors: AbelianGroup | None = None
    h1_quotient_tors: AbelianGroup | None = None

    def __post_init__(self) -> None:
        if self.m in (1, 3):
            raise ValueError(f"m={self.m} is excluded")
        if not _squarefree(self.m):
            raise ValueError(f"m={self.m} is not squarefree")

    @property
    def delta(self) -> int:
        return -self.m if self.m % 4 == 3 else -4 * self.m
