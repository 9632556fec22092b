"""Verification of the numerical d2-rank table.

The shipped fixture ``data/appendix_table.tsv`` lists, per discriminant:
the shape counts of the reduced 2-torsion subcomplex quotient, the first
Betti number of the quotient space, the torsion of both abelianizations
(projective and linear version) and the independently computed rank of
d2^{0,1}.  ``verify_row`` replays three consistency checks:

(a) the rank formula:
    rank = o + 2*theta + rho + N - dim Hom(SL_ab_tors, F2),
    where N (dim Hom of the 2-torsion of H_1 of the quotient into F2) is 0
    for |delta| < 296 and otherwise comes from the side fixture
    ``data/n2_torsion.tsv``;
(b) D <= o, where D counts the even invariant factors of the image of the
    degree-2 transgression on the projective side;
(c) D = rank, whenever the table states the rank.

Four rows (m = 142, 1227, 1411, 1555) leave the rank blank because the
passage from the projective to the linear group is genuinely harder there;
those rows are reported as skipped.
"""

from __future__ import annotations

import importlib.resources
from dataclasses import dataclass
from pathlib import Path

from .abelian import AbelianGroup, ParseError, dim_hom_to_f2, parse_abelian
from .d2 import rank_formula

__all__ = [
    "MissingData",
    "TableRow",
    "RowReport",
    "TableReport",
    "DEVISSAGE_MS",
    "N_THRESHOLD",
    "load_table",
    "load_n_overrides",
    "verify_row",
    "verify_table",
    "default_table_path",
    "default_n_overrides_path",
]

#: m values whose rank cell is blank in the source data.
DEVISSAGE_MS = frozenset({142, 1227, 1411, 1555})

#: Below this |delta| the quotient's H_1 has no 2-torsion, so N = 0.
N_THRESHOLD = 296


class MissingData(Exception):
    """Raised when a check needs an N value that was not supplied."""


@dataclass(frozen=True)
class TableRow:
    delta: int  # |Delta|, positive as printed
    m: int
    o: int
    iota: int
    theta: int
    rho: int
    beta1: int
    psl_ab_tors: AbelianGroup
    image_d2_psl: AbelianGroup
    sl_ab_tors: AbelianGroup
    rank_d2: int | None


def _expected_delta(m: int) -> int:
    return m if m % 4 == 3 else 4 * m


def load_table(path: str | Path) -> list[TableRow]:
    """Parse the 11-column TSV fixture.  Comment lines start with '#'."""
    rows: list[TableRow] = []
    text = Path(path).read_text(encoding="utf-8")
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        cells = line.split("\t")
        if len(cells) != 11:
            raise ValueError(f"{path}:{lineno}: expected 11 columns, got {len(cells)}")
        try:
            delta, m, o, iota, theta, rho, beta1 = (int(c) for c in cells[:7])
            psl = parse_abelian(cells[7])
            image = parse_abelian(cells[8])
            sl = parse_abelian(cells[9])
            rank_cell = cells[10].strip()
            rank = int(rank_cell) if rank_cell else None
        except (ValueError, ParseError) as exc:
            raise ValueError(f"{path}:{lineno}: {exc}") from exc
        if delta != _expected_delta(m):
            raise ValueError(
                f"{path}:{lineno}: delta {delta} does not match m={m} "
                f"(expected {_expected_delta(m)})"
            )
        rows.append(
            TableRow(delta, m, o, iota, theta, rho, beta1, psl, image, sl, rank)
        )
    return rows


def load_n_overrides(path: str | Path) -> dict[int, int]:
    """Parse the (delta, n2) side fixture into a lookup by |delta|."""
    out: dict[int, int] = {}
    text = Path(path).read_text(encoding="utf-8")
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        cells = line.split("\t")
        if len(cells) != 2:
            raise ValueError(f"{path}:{lineno}: expected 2 columns, got {len(cells)}")
        delta, n2 = int(cells[0]), int(cells[1])
        if delta in out:
            raise ValueError(f"{path}:{lineno}: duplicate delta {delta}")
        out[delta] = n2
    return out


@dataclass(frozen=True)
class RowReport:
    delta: int
    m: int
    status: str  # "ok" | "mismatch" | "skipped"
    messages: tuple[str, ...]
    formula_rank: int | None
    d_value: int

    @property
    def ok(self) -> bool:
        return self.status == "ok"


def verify_row(row: TableRow, n_override: int | None = None) -> RowReport:
    """Replay the three checks for one row.

    ``n_override`` supplies N for |delta| >= 296 rows; smaller discriminants
    ignore it (N = 0 there).  Raises MissingData when the formula check needs
    an N value that is not available.
    """
    messages: list[str] = []
    d_value = dim_hom_to_f2(row.image_d2_psl)

    if d_value > row.o:
        messages.append(f"D={d_value} exceeds o={row.o}")

    if row.rank_d2 is None:
        if row.m not in DEVISSAGE_MS:
            messages.append("rank cell is blank for a non-devissage row")
            return RowReport(row.delta, row.m, "mismatch", tuple(messages), None, d_value)
        return RowReport(
            row.delta,
            row.m,
            "skipped",
            ("devissage row: rank not stated",) + tuple(messages),
            None,
            d_value,
        )

    if row.delta < N_THRESHOLD:
        n2 = 0
    elif n_override is not None:
        n2 = n_override
    else:
        raise MissingData(
            f"delta={row.delta} (m={row.m}) needs an N value for the rank formula"
        )

    formula = rank_formula(
        row.o, row.theta, row.rho, n2, dim_hom_to_f2(row.sl_ab_tors)
    )
    if formula != row.rank_d2:
        messages.append(f"formula gives {formula}, table states {row.rank_d2}")
    if d_value != row.rank_d2:
        messages.append(f"D={d_value} differs from the stated rank {row.rank_d2}")

    status = "ok" if not messages else "mismatch"
    return RowReport(row.delta, row.m, status, tuple(messages), formula, d_value)


@dataclass(frozen=True)
class TableReport:
    reports: tuple[RowReport, ...]
    passed: int
    failed: int
    skipped: int

    @property
    def ok(self) -> bool:
        return self.failed == 0


def verify_table(
    rows: list[TableRow],
    n_overrides: dict[int, int] | None = None,
    strict: bool = False,
) -> TableReport:
    """Verify every row.  Missing N values fail the row in strict mode and
    skip it otherwise."""
    overrides = n_overrides or {}
    reports: list[RowReport] = []
    passed = failed = skipped = 0
    for row in rows:
        try:
            report = verify_row(row, overrides.get(row.delta))
        except MissingData as exc:
            status = "mismatch" if strict else "skipped"
            report = RowReport(
                row.delta,
                row.m,
                status,
                (str(exc),),
                None,
                dim_hom_to_f2(row.image_d2_psl),
            )
        if report.status == "ok":
            passed += 1
        elif report.status == "skipped":
            skipped += 1
        else:
            failed += 1
        reports.append(report)
    return TableReport(tuple(reports), passed, failed, skipped)


def _data_path(name: str) -> Path:
    resource = importlib.resources.files("torsioncomplex").joinpath("data", name)
    return Path(str(resource))


def default_table_path() -> Path:
    return _data_path("appendix_table.tsv")


def default_n_overrides_path() -> Path:
    return _data_path("n2_torsion.tsv")
