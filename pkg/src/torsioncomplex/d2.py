"""Second-differential ranks on the odd rows of the stable page.

Above the stable range the only differentials that can survive are
d2^{0,4k+1} (rank ``r1``) and d2^{0,4k+3} (rank ``r3``); both are bounded by
the degree-1 kernel column, the "capacity" of each component:

* circle components (``o``) have capacity 1, and a recorded Steenrod fact
  (Sq2 nonzero on H^3(Z/4)) links their odd rows: each circle contributes
  the *same* amount (0 or 1) to r1 and to r3;
* ``iota`` components have capacity 0 in odd degrees: nothing to do;
* ``theta`` (capacity 2) and ``rho`` (capacity 1) components contribute
  nothing to r3, because Sq2 vanishes on H^3 of both Q8 and Te24 (recorded
  facts, cited at run time); whether they contribute to r1 in degrees 4k+1
  is open, so a policy decides:

  - ``assume0`` (default): undetermined contributions are taken to be zero;
  - ``interval``: undetermined quantities are reported as [lo, hi] ranges.

When abelianization data is available, ``rank_formula`` pins r1 exactly:

    rank d2^{0,1} = o + 2*theta + rho + N - dim Hom(SL_ab_tors, F2)

with N = dim Hom of the 2-torsion of H_1 of the quotient into F2.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import groups
from .graphs import Component
from .spectral import component_e2

__all__ = [
    "ASSUME0",
    "INTERVAL",
    "NegativeRank",
    "CapacityExceeded",
    "D2Profile",
    "rank_formula",
    "d2_profile",
]

ASSUME0 = "assume0"
INTERVAL = "interval"

Count = tuple[int, int]  # inclusive lo..hi; exact when lo == hi


class NegativeRank(Exception):
    """Raised when the rank formula evaluates below zero."""


class CapacityExceeded(Exception):
    """Raised when a supplied rank exceeds the total degree-1 capacity."""


def rank_formula(
    o: int, theta: int, rho: int, dim_hom_h1_tors: int, dim_hom_sl_tors: int
) -> int:
    """Rank of d2^{0,1} from shape counts and abelianization data."""
    for name, value in (
        ("o", o),
        ("theta", theta),
        ("rho", rho),
        ("dim_hom_h1_tors", dim_hom_h1_tors),
        ("dim_hom_sl_tors", dim_hom_sl_tors),
    ):
        if value < 0:
            raise ValueError(f"{name} must be nonnegative, got {value}")
    result = o + 2 * theta + rho + dim_hom_h1_tors - dim_hom_sl_tors
    if result < 0:
        raise NegativeRank(
            f"rank formula gives {result}; the input data is inconsistent"
        )
    return result


@dataclass(frozen=True)
class D2Profile:
    """Ranks r1/r3 as lo..hi counts, with per-component r1 attribution."""

    r1: Count
    r3: Count
    capacities: tuple[int, ...]
    attribution: tuple[Count, ...]
    warnings: tuple[str, ...]

    @property
    def exact(self) -> bool:
        return self.r1[0] == self.r1[1] and self.r3[0] == self.r3[1]

    def to_lines(self, comps: list[Component] | None = None) -> list[str]:
        out = [f"d2 ranks: r1={format_count(self.r1)} r3={format_count(self.r3)}"]
        if comps is not None and comps:
            parts = []
            for i, (comp, share) in enumerate(zip(comps, self.attribution)):
                parts.append(f"{comp.kind}#{i}={format_count(share)}")
            out.append("  r1 attribution: " + " ".join(parts))
        for w in self.warnings:
            out.append(f"  warning: {w}")
        return out


def format_count(count: Count) -> str:
    lo, hi = count
    return str(lo) if lo == hi else f"{lo}..{hi}"


def _cite_steenrod(comps: list[Component]) -> None:
    # Every vanishing/linking conclusion below must cite a recorded fact;
    # a missing fact surfaces as UnknownFact rather than a silent guess.
    kinds = {c.kind for c in comps}
    if "o" in kinds:
        if groups.steenrod_vanishes(groups.C4, "Sq2", 3):
            raise groups.UnknownFact(
                "Sq2 on H^3(Z/4) is recorded as vanishing; the circle-component "
                "rule (r1 contribution = r3 contribution) relies on it being "
                "nonzero"
            )
    if "theta" in kinds:
        if not groups.steenrod_vanishes(groups.Q8, "Sq2", 3):
            raise groups.UnknownFact(
                "theta components need Sq2 to vanish on H^3(Q8)"
            )
    if "rho" in kinds:
        if not groups.steenrod_vanishes(groups.Q8, "Sq2", 3):
            raise groups.UnknownFact("rho components need Sq2 to vanish on H^3(Q8)")
        if not groups.steenrod_vanishes(groups.TE24, "Sq2", 3):
            raise groups.UnknownFact("rho components need Sq2 to vanish on H^3(Te24)")


def d2_profile(
    comps: list[Component],
    formula_rank: int | None = None,
    policy: str = ASSUME0,
) -> D2Profile:
    """r1/r3 and their attribution for a component list.

    ``formula_rank`` is the exact rank of d2^{0,1} when abelianization data
    determined it; ``None`` means undetermined.  Attribution assigns r1 to
    circle components first (they are the only ones that also feed r3), then
    to the remaining capacity in component order.
    """
    if policy not in (ASSUME0, INTERVAL):
        raise ValueError(f"unknown policy {policy!r}")
    _cite_steenrod(comps)

    caps = tuple(component_e2(c).dim(0, 1) for c in comps)
    cap_total = sum(caps)
    o_caps = tuple(c if comp.kind == "o" else 0 for comp, c in zip(comps, caps))
    cap_o = sum(o_caps)
    warnings: list[str] = []

    if formula_rank is not None:
        if formula_rank < 0:
            raise ValueError(f"formula_rank must be nonnegative, got {formula_rank}")
        if formula_rank > cap_total:
            raise CapacityExceeded(
                f"rank {formula_rank} exceeds the degree-1 capacity {cap_total}"
            )
        r1: Count = (formula_rank, formula_rank)
        o_share = min(formula_rank, cap_o)
        if formula_rank > cap_o:
            warnings.append(
                f"rank {formula_rank} exceeds the {cap_o} circle slots; the "
                f"excess {formula_rank - cap_o} lands on theta/rho capacity"
            )
        if policy == ASSUME0 or cap_total == cap_o:
            r3: Count = (o_share, o_share)
        else:
            # How the exact r1 splits between circle and theta/rho slots is
            # not determined; only the circle part reaches r3.
            r3 = (max(0, formula_rank - (cap_total - cap_o)), o_share)
        attribution = _attribute(comps, caps, formula_rank, exact=True)
    else:
        if policy == ASSUME0:
            r1 = (0, 0)
            r3 = (0, 0)
            attribution = tuple((0, 0) for _ in comps)
        else:
            r1 = (0, cap_total)
            r3 = (0, cap_o)
            attribution = tuple((0, c) for c in caps)
            if cap_total:
                warnings.append(
                    "rank undetermined (no abelianization data): reporting "
                    "intervals up to capacity"
                )

    return D2Profile(r1, r3, caps, attribution, tuple(warnings))


def _attribute(
    comps: list[Component], caps: tuple[int, ...], total: int, exact: bool
) -> tuple[Count, ...]:
    shares = [0] * len(comps)
    remaining = total
    for i, comp in enumerate(comps):
        if comp.kind == "o" and remaining:
            take = min(caps[i], remaining)
            shares[i] = take
            remaining -= take
    for i, comp in enumerate(comps):
        if comp.kind != "o" and remaining:
            take = min(caps[i], remaining)
            shares[i] = take
            remaining -= take
    return tuple((s, s) for s in shares)
