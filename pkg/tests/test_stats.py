"""Contingency tables, the chi-square test and its survival function."""

from __future__ import annotations

import itertools
import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from skillgap.errors import StatError
from skillgap.ingest import JobPosting
from skillgap.stats import ChiSquareResult, ContingencyTable, chi_square, chisq_sf, contingency

_ids = itertools.count()


def posting(family="Engineer", nature="Onsite", city="London"):
    title = {"Engineer": "Software Engineer", "Developer": "Developer"}.get(
        family, "Consultant"
    )
    return JobPosting(
        id=f"p{next(_ids)}", title=title, description="text", nature=nature,
        family=family, city=city,
    )


def table(counts, row_labels=None, col_labels=("Onsite", "Remote", "Hybrid")):
    row_labels = row_labels or tuple(f"r{i}" for i in range(len(counts)))
    return ContingencyTable(
        tuple(row_labels), tuple(col_labels[: len(counts[0])]),
        tuple(tuple(row) for row in counts),
    )


class TestContingency:
    def test_family_rows_fixed_order(self):
        postings = (
            [posting("Developer", "Onsite")] * 2
            + [posting("Engineer", "Remote")] * 3
            + [posting("Other", "Onsite")] * 4
            + [posting("Engineer", "Hybrid")]
        )
        result = contingency(postings, "family", exclude_unlabeled=False)
        assert result.row_labels == ("Engineer", "Developer", "Other")
        assert result.counts == ((0, 3, 1), (2, 0, 0), (4, 0, 0))

    def test_family_excludes_other_by_default(self):
        postings = (
            [posting("Engineer", "Onsite")] * 2
            + [posting("Developer", "Remote")] * 2
            + [posting("Other", "Onsite")] * 5
        )
        result = contingency(postings, "family")
        assert result.row_labels == ("Engineer", "Developer")
        assert result.grand_total() == 4

    def test_city_rows_sorted_by_total_then_name(self):
        postings = (
            [posting(city="Leeds")] * 3
            + [posting(city="York")] * 3
            + [posting(city="London")] * 5
            + [posting(city=None)] * 2
        )
        result = contingency(postings, "city")
        assert result.row_labels == ("London", "Leeds", "York")
        assert result.grand_total() == 11

    def test_city_unlabeled_kept_when_asked(self):
        postings = [posting(city="London")] * 2 + [posting(city=None, nature="Remote")]
        result = contingency(postings, "city", exclude_unlabeled=False)
        assert result.row_labels == ("London", "unknown")

    def test_min_row_total_filters(self):
        postings = (
            [posting(city="London")] * 6
            + [posting(city="Leeds")] * 5
            + [posting(city="Derby")] * 4
        )
        result = contingency(postings, "city", min_row_total=5)
        assert result.row_labels == ("London", "Leeds")

    def test_fewer_than_two_rows_degenerate(self):
        postings = [posting(city="London")] * 9
        with pytest.raises(StatError, match="degenerate"):
            contingency(postings, "city")

    def test_bad_row_attr(self):
        with pytest.raises(ValueError, match="row_attr"):
            contingency([posting()], "salary")

    def test_fixture_family_table(self, jobs300):
        result = contingency(jobs300, "family")
        assert result.row_labels == ("Engineer", "Developer")
        assert result.col_labels == ("Onsite", "Remote", "Hybrid")
        assert result.counts == ((110, 41, 37), (48, 36, 21))

    def test_fixture_city_table(self, jobs300):
        result = contingency(jobs300, "city", min_row_total=5)
        assert len(result.row_labels) == 11
        assert result.row_labels[:3] == ("London", "Manchester", "Birmingham")
        assert result.counts[0] == (59, 1, 13)


class TestChiSquare:
    def test_uniform_table_is_exactly_independent(self):
        result = chi_square(table([[10, 10], [10, 10]], col_labels=("a", "b")))
        assert result.statistic == 0.0
        assert result.df == 1
        assert result.p_value == 1.0

    def test_two_by_three_example(self):
        result = chi_square(
            table([[110, 41, 37], [48, 36, 21]], ("Engineer", "Developer"))
        )
        assert result.statistic == pytest.approx(6.04, abs=0.01)
        assert result.df == 2
        assert result.p_value == pytest.approx(0.0488, abs=0.0005)
        assert result.expected[0][0] == pytest.approx(101.38, abs=0.01)

    def test_fixture_city_statistic(self, jobs300):
        result = chi_square(contingency(jobs300, "city", min_row_total=5))
        assert result.statistic == pytest.approx(182.12, abs=0.01)
        assert result.df == 20

    def test_expected_row_sums_match_observed(self):
        result = chi_square(table([[5, 9, 2], [11, 3, 7]]))
        for observed_row, expected_row in zip([[5, 9, 2], [11, 3, 7]], result.expected):
            assert sum(expected_row) == pytest.approx(sum(observed_row))

    def test_degenerate_shapes_rejected(self):
        with pytest.raises(StatError, match="need at least 2x2"):
            chi_square(table([[1, 2, 3]]))

    def test_zero_column_rejected(self):
        with pytest.raises(StatError, match="expected count is zero"):
            chi_square(table([[5, 0, 3], [2, 0, 9]]))

    def test_all_zero_rejected(self):
        with pytest.raises(StatError, match="all counts are zero"):
            chi_square(table([[0, 0], [0, 0]], col_labels=("a", "b")))

    def test_observed_zero_cell_is_fine(self):
        # Zero observations in a cell are valid as long as its expectation is not.
        result = chi_square(table([[10, 0], [5, 5]], col_labels=("a", "b")))
        assert result.statistic > 0

    counts_strategy = st.lists(
        st.lists(st.integers(min_value=1, max_value=60), min_size=3, max_size=3),
        min_size=2,
        max_size=5,
    )

    @given(counts_strategy)
    @settings(max_examples=60)
    def test_row_permutation_invariance(self, counts):
        base = chi_square(table(counts))
        rng = random.Random(7)
        shuffled = counts[:]
        rng.shuffle(shuffled)
        assert chi_square(table(shuffled)).statistic == pytest.approx(base.statistic)

    @given(counts_strategy, st.integers(min_value=2, max_value=6))
    @settings(max_examples=60)
    def test_scaling_counts_scales_statistic(self, counts, k):
        base = chi_square(table(counts))
        scaled = [[k * cell for cell in row] for row in counts]
        result = chi_square(table(scaled))
        assert result.statistic == pytest.approx(k * base.statistic, rel=1e-9)
        assert result.df == base.df

    @given(counts_strategy)
    @settings(max_examples=60)
    def test_pooling_identical_rows_keeps_statistic(self, counts):
        duplicated = counts + [counts[0]]
        pooled = [[2 * cell for cell in counts[0]]] + counts[1:]
        labels = tuple(f"r{i}" for i in range(len(counts)))
        stat_dup = chi_square(table(duplicated, labels + ("dup",))).statistic
        stat_pooled = chi_square(table(pooled, labels)).statistic
        assert stat_pooled == pytest.approx(stat_dup, rel=1e-9)


class TestChisqSf:
    def test_boundary_values(self):
        assert chisq_sf(0.0, 1) == 1.0
        assert chisq_sf(0.0, 20) == 1.0
        assert chisq_sf(1e9, 2) == 0.0

    def test_df2_closed_form(self):
        # With two degrees of freedom the survival function is exp(-x/2).
        assert chisq_sf(6.04, 2) == pytest.approx(math.exp(-3.02), abs=1e-12)
        assert chisq_sf(6.04, 2) == pytest.approx(0.0488, abs=5e-5)

    def test_df1_closed_form(self):
        assert chisq_sf(3.84, 1) == pytest.approx(math.erfc(math.sqrt(1.92)), abs=1e-12)

    def test_extreme_tail(self):
        tail = chisq_sf(182.12, 20)
        assert 3.0e-28 <= tail <= 4.5e-28

    def test_argument_validation(self):
        with pytest.raises(ValueError):
            chisq_sf(1.0, 0)
        with pytest.raises(ValueError):
            chisq_sf(1.0, -2)
        with pytest.raises(ValueError):
            chisq_sf(-0.5, 2)
        with pytest.raises(ValueError):
            chisq_sf(float("nan"), 2)
        with pytest.raises(ValueError):
            chisq_sf(1.0, 2.0)

    @given(
        st.floats(min_value=0.0, max_value=500.0, allow_nan=False),
        st.integers(min_value=1, max_value=200),
    )
    @settings(max_examples=200)
    def test_bounded_and_monotone_in_x(self, x, df):
        value = chisq_sf(x, df)
        assert 0.0 <= value <= 1.0
        assert chisq_sf(x + 1.0, df) <= value + 1e-12

    def test_against_scipy(self):
        scipy_stats = pytest.importorskip("scipy.stats")
        rng = random.Random(20230402)
        worst = 0.0
        for _ in range(500):
            df = rng.randint(1, 150)
            x = rng.uniform(0.0, 4.0 * df)
            mine = chisq_sf(x, df)
            theirs = float(scipy_stats.chi2.sf(x, df))
            worst = max(worst, abs(mine - theirs))
        assert worst < 1e-12

    def test_chi_square_p_against_scipy(self, jobs300):
        scipy_stats = pytest.importorskip("scipy.stats")
        result = chi_square(contingency(jobs300, "family"))
        expected_p = float(scipy_stats.chi2.sf(result.statistic, result.df))
        assert result.p_value == pytest.approx(expected_p, rel=1e-10)


def test_result_is_plain_dataclass():
    result = chi_square(table([[10, 20], [20, 10]], col_labels=("a", "b")))
    assert isinstance(result, ChiSquareResult)
    assert isinstance(result.expected, tuple)
