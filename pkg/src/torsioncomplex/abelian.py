"""Finite abelian groups written in the Z/n () Z/m notation of the tables.

The verification fixtures store abelianization torsion as strings like
``Z/2``, ``(Z/2)^3 (+) Z/4 (+) Z/3`` or ``0``; this module parses them into
multisets of cyclic factors and computes the two quantities the rank checks
need: the number of even factors (= dim Hom(-, F2)) and the 2-primary part.

Both the Unicode direct-sum sign and a plain ``+`` are accepted as
separators.
"""

from __future__ import annotations

from dataclasses import dataclass

__all__ = [
    "ParseError",
    "AbelianGroup",
    "parse_abelian",
    "dim_hom_to_f2",
    "two_primary_part",
]

_OPLUS = "⊕"  # the direct-sum sign used in the source tables


class ParseError(Exception):
    """Malformed abelian-group string; carries the 0-based offset."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at offset {position})")
        self.position = position


@dataclass(frozen=True)
class AbelianGroup:
    """A finite abelian group as a sorted tuple of cyclic orders (>= 2)."""

    factors: tuple[int, ...]

    def __post_init__(self) -> None:
        if any(n < 2 for n in self.factors):
            raise ValueError("cyclic factors must be >= 2")
        ordered = tuple(sorted(self.factors))
        if ordered != self.factors:
            object.__setattr__(self, "factors", ordered)

    @property
    def is_trivial(self) -> bool:
        return not self.factors

    def render(self) -> str:
        """Canonical string: even factors ascending, then odd ascending,
        with repeated factors collected into powers."""
        if not self.factors:
            return "0"
        evens = [n for n in self.factors if n % 2 == 0]
        odds = [n for n in self.factors if n % 2 == 1]
        parts = []
        for group in (evens, odds):
            i = 0
            while i < len(group):
                n = group[i]
                count = group.count(n)
                parts.append(f"Z/{n}" if count == 1 else f"(Z/{n})^{count}")
                i += count
        return f" {_OPLUS} ".join(parts)

    def __str__(self) -> str:
        return self.render()


def _skip_ws(text: str, i: int) -> int:
    while i < len(text) and text[i].isspace():
        i += 1
    return i


def _parse_int(text: str, i: int) -> tuple[int, int]:
    start = i
    while i < len(text) and text[i].isdigit():
        i += 1
    if i == start:
        raise ParseError("expected an integer", start)
    return int(text[start:i]), i


def _parse_term(text: str, i: int) -> tuple[list[int], int]:
    """One term: Z/n, (expr) or either followed by ^k."""
    i = _skip_ws(text, i)
    if i >= len(text):
        raise ParseError("expected a term", i)
    if text[i] == "(":
        inner, i = _parse_sum(text, i + 1)
        i = _skip_ws(text, i)
        if i >= len(text) or text[i] != ")":
            raise ParseError("expected ')'", i)
        i += 1
        factors = inner
    elif text[i] == "Z":
        i += 1
        i = _skip_ws(text, i)
        if i >= len(text) or text[i] != "/":
            raise ParseError("expected '/' after Z", i)
        n, i = _parse_int(text, _skip_ws(text, i + 1))
        if n < 2:
            raise ParseError(f"Z/{n} is not a torsion factor", i - len(str(n)))
        factors = [n]
    else:
        raise ParseError(f"unexpected {text[i]!r}", i)
    i = _skip_ws(text, i)
    if i < len(text) and text[i] == "^":
        k, i = _parse_int(text, _skip_ws(text, i + 1))
        if k < 1:
            raise ParseError("exponent must be positive", i - len(str(k)))
        factors = factors * k
    return factors, i


def _parse_sum(text: str, i: int) -> tuple[list[int], int]:
    factors, i = _parse_term(text, i)
    while True:
        i = _skip_ws(text, i)
        if i < len(text) and (text[i] == "+" or text[i] == _OPLUS):
            more, i = _parse_term(text, i + 1)
            factors.extend(more)
        else:
            return factors, i


def parse_abelian(text: str) -> AbelianGroup:
    """Parse a torsion-group string; "0", "1" and "" denote the trivial group."""
    stripped = text.strip()
    if stripped in ("0", "1", ""):
        return AbelianGroup(())
    factors, i = _parse_sum(text, 0)
    i = _skip_ws(text, i)
    if i != len(text):
        raise ParseError(f"trailing input {text[i:]!r}", i)
    return AbelianGroup(tuple(factors))


def dim_hom_to_f2(group: AbelianGroup) -> int:
    """dim_F2 Hom(group, Z/2): one per even cyclic factor."""
    return sum(1 for n in group.factors if n % 2 == 0)


def two_primary_part(group: AbelianGroup) -> AbelianGroup:
    """The 2-primary part: each even factor contributes its 2-power part."""
    parts = []
    for n in group.factors:
        two = 1
        while n % 2 == 0:
            two *= 2
            n //= 2
        if two > 1:
            parts.append(two)
    return AbelianGroup(tuple(parts))
