"""Contingency tables and Pearson chi-square tests over job metadata.

The survival function of the chi-square distribution is computed in-package
(regularised upper incomplete gamma via a power series or a Lentz-style
continued fraction) so the tests carry no external statistics dependency.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Literal

from .errors import ConvergenceError, StatError
from .ingest import (
    FAMILY_DEVELOPER,
    FAMILY_ENGINEER,
    FAMILY_OTHER,
    NATURES,
    JobPosting,
)

_MAX_ITERATIONS = 500
_TOLERANCE = 1e-15


@dataclass(frozen=True)
class ContingencyTable:
    row_labels: tuple[str, ...]
    col_labels: tuple[str, ...]
    counts: tuple[tuple[int, ...], ...]

    def row_totals(self) -> tuple[int, ...]:
        return tuple(sum(row) for row in self.counts)

    def col_totals(self) -> tuple[int, ...]:
        return tuple(sum(col) for col in zip(*self.counts))

    def grand_total(self) -> int:
        return sum(self.row_totals())


@dataclass(frozen=True)
class ChiSquareResult:
    statistic: float
    df: int
    p_value: float
    expected: tuple[tuple[float, ...], ...]


def contingency(
    postings: Iterable[JobPosting],
    row_attr: Literal["family", "city"],
    exclude_unlabeled: bool = True,
    min_row_total: int = 0,
) -> ContingencyTable:
    """Cross-tabulate job nature (columns) against family or city (rows).

    Unlabeled rows are the family "Other" and postings without a city; they
    are dropped when ``exclude_unlabeled`` is set, otherwise kept under their
    own row.  Rows with a total below ``min_row_total`` are dropped.  Fewer
    than two surviving rows make the table degenerate, which is an error.
    """
    if row_attr not in ("family", "city"):
        raise ValueError(f"row_attr must be 'family' or 'city', got {row_attr!r}")
    cells: dict[str, dict[str, int]] = {}
    for posting in postings:
        if row_attr == "family":
            label = posting.family
            if exclude_unlabeled and label == FAMILY_OTHER:
                continue
        else:
            if posting.city is None:
                if exclude_unlabeled:
                    continue
                label = "unknown"
            else:
                label = posting.city
        row = cells.setdefault(label, {nature: 0 for nature in NATURES})
        row[posting.nature] += 1

    def total(label: str) -> int:
        return sum(cells[label].values())

    if row_attr == "family":
        fixed = [FAMILY_ENGINEER, FAMILY_DEVELOPER, FAMILY_OTHER]
        labels = [lab for lab in fixed if lab in cells]
    else:
        labels = sorted(cells, key=lambda lab: (-total(lab), lab))
    labels = [lab for lab in labels if total(lab) >= min_row_total]
    if len(labels) < 2:
        raise StatError(
            f"degenerate table: only {len(labels)} {row_attr} row(s) survive "
            f"filtering (need at least 2)"
        )
    counts = tuple(tuple(cells[lab][nature] for nature in NATURES) for lab in labels)
    return ContingencyTable(tuple(labels), tuple(NATURES), counts)


def chi_square(table: ContingencyTable) -> ChiSquareResult:
    """Pearson chi-square test of independence, without continuity correction."""
    rows = len(table.counts)
    cols = len(table.col_labels)
    if rows < 2 or cols < 2:
        raise StatError(f"degenerate table: {rows}x{cols} (need at least 2x2)")
    row_totals = table.row_totals()
    col_totals = table.col_totals()
    grand = table.grand_total()
    if grand == 0:
        raise StatError("degenerate table: all counts are zero")
    expected_rows = []
    statistic = 0.0
    for i in range(rows):
        expected_row = []
        for j in range(cols):
            expected = row_totals[i] * col_totals[j] / grand
            if expected == 0.0:
                raise StatError(
                    f"expected count is zero in cell "
                    f"({table.row_labels[i]!r}, {table.col_labels[j]!r})"
                )
            observed = table.counts[i][j]
            statistic += (observed - expected) ** 2 / expected
            expected_row.append(expected)
        expected_rows.append(tuple(expected_row))
    df = (rows - 1) * (cols - 1)
    return ChiSquareResult(
        statistic=statistic,
        df=df,
        p_value=chisq_sf(statistic, df),
        expected=tuple(expected_rows),
    )


def _gamma_series_p(a: float, x: float) -> float:
    """Regularised lower incomplete gamma P(a, x) by power series."""
    term = 1.0 / a
    total = term
    for n in range(1, _MAX_ITERATIONS + 1):
        term *= x / (a + n)
        total += term
        if abs(term) < abs(total) * _TOLERANCE:
            return total * math.exp(-x + a * math.log(x) - math.lgamma(a))
    raise ConvergenceError(
        f"incomplete gamma series did not converge for a={a}, x={x} "
        f"within {_MAX_ITERATIONS} iterations"
    )


def _gamma_cf_q(a: float, x: float) -> float:
    """Regularised upper incomplete gamma Q(a, x) by continued fraction (Lentz)."""
    tiny = 1e-300
    b = x + 1.0 - a
    c = 1.0 / tiny
    d = 1.0 / b if b != 0.0 else 1.0 / tiny
    h = d
    for i in range(1, _MAX_ITERATIONS + 1):
        an = -i * (i - a)
        b += 2.0
        d = an * d + b
        if abs(d) < tiny:
            d = tiny
        c = b + an / c
        if abs(c) < tiny:
            c = tiny
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) <= _TOLERANCE:
            return h * math.exp(-x + a * math.log(x) - math.lgamma(a))
    raise ConvergenceError(
        f"incomplete gamma continued fraction did not converge for a={a}, x={x} "
        f"within {_MAX_ITERATIONS} iterations"
    )


def chisq_sf(x: float, df: int) -> float:
    """P(X >= x) for X chi-square distributed with ``df`` degrees of freedom.

    Evaluates the regularised upper incomplete gamma Q(df/2, x/2): via the
    complement of a power series for x < df + 1, via a continued fraction
    otherwise.  Failure to converge within the iteration cap raises
    ConvergenceError rather than returning a wrong value.
    """
    if not isinstance(df, int) or isinstance(df, bool) or df < 1:
        raise ValueError(f"degrees of freedom must be a positive integer, got {df!r}")
    if math.isnan(x):
        raise ValueError("chi-square statistic must not be NaN")
    if x < 0:
        raise ValueError(f"chi-square statistic must be non-negative, got {x!r}")
    a = df / 2.0
    half_x = x / 2.0
    # Covers x == 0 and subnormal x whose halving underflows to zero; the
    # survival probability is 1 to machine precision either way.
    if half_x == 0.0:
        return 1.0
    if x < df + 1:
        q = 1.0 - _gamma_series_p(a, half_x)
    else:
        q = _gamma_cf_q(a, half_x)
    return min(1.0, max(0.0, q))
