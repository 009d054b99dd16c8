"""Edit distance, similarity, window matching and module-name clustering."""

from __future__ import annotations

import pytest
from hypothesis import given, settings, strategies as st

from skillgap.matching import (
    categorize_document,
    group_module_names,
    keyword_forms,
    levenshtein,
    match_keywords,
    similarity,
)
from skillgap.textnorm import TokenStream, normalize

short_text = st.text(
    alphabet=st.sampled_from("abcdef#+."), max_size=12
)


def reference_levenshtein(a: str, b: str) -> int:
    """Straightforward full-matrix DP, kept independent of the implementation."""
    rows, cols = len(a) + 1, len(b) + 1
    dist = [[0] * cols for _ in range(rows)]
    for i in range(rows):
        dist[i][0] = i
    for j in range(cols):
        dist[0][j] = j
    for i in range(1, rows):
        for j in range(1, cols):
            cost = 0 if a[i - 1] == b[j - 1] else 1
            dist[i][j] = min(
                dist[i - 1][j] + 1, dist[i][j - 1] + 1, dist[i - 1][j - 1] + cost
            )
    return dist[-1][-1]


class TestLevenshtein:
    @pytest.mark.parametrize(
        ("a", "b", "expected"),
        [
            ("kitten", "sitting", 3),
            ("", "abc", 3),
            ("abc", "", 3),
            ("", "", 0),
            ("same", "same", 0),
            ("flaw", "lawn", 2),
            ("javascript", "javascripts", 1),
            ("sql", "sqlite", 3),
        ],
    )
    def test_examples(self, a, b, expected):
        assert levenshtein(a, b) == expected

    @given(short_text, short_text)
    def test_matches_reference(self, a, b):
        assert levenshtein(a, b) == reference_levenshtein(a, b)

    @given(short_text, short_text)
    def test_symmetric(self, a, b):
        assert levenshtein(a, b) == levenshtein(b, a)

    @given(short_text, short_text, short_text)
    @settings(max_examples=50)
    def test_triangle_inequality(self, a, b, c):
        assert levenshtein(a, c) <= levenshtein(a, b) + levenshtein(b, c)


class TestSimilarity:
    def test_examples(self):
        assert similarity("javascript", "javascripts") == pytest.approx(1 - 1 / 11)
        assert similarity("sql", "sqlite") == pytest.approx(0.5)
        assert similarity("", "") == 1.0
        assert similarity("python", "python") == 1.0
        assert similarity("ab", "cd") == 0.0

    @given(short_text, short_text)
    def test_bounded_and_symmetric(self, a, b):
        score = similarity(a, b)
        assert 0.0 <= score <= 1.0
        assert score == similarity(b, a)

    @given(short_text, short_text)
    def test_one_iff_equal(self, a, b):
        assert (similarity(a, b) == 1.0) == (a == b)


class TestKeywordForms:
    def test_plain_keyword_single_form(self):
        assert keyword_forms("python") == [("python", 1)]
        assert keyword_forms("asp.net") == [("asp.net", 1)]
        assert keyword_forms("c++") == [("c++", 1)]

    def test_hyphen_and_slash_add_space_joined_variant(self):
        assert keyword_forms("real-time") == [("real-time", 1), ("real time", 2)]
        assert keyword_forms("ci/cd") == [("ci/cd", 1), ("ci cd", 2)]
        assert keyword_forms("spring-boot") == [("spring-boot", 1), ("spring boot", 2)]

    def test_multi_word_keyword_window_size(self):
        assert keyword_forms("unit testing") == [("unit testing", 2)]


class TestMatchKeywords:
    def test_single_exact_hit(self, taxonomy):
        stream = TokenStream(("experienced", "javascript", "developer"))
        hits = match_keywords(stream, taxonomy, 0.95)
        assert len(hits) == 1
        hit = hits[0]
        assert hit.keyword == "javascript"
        assert hit.category_abbr == "PROG"
        assert hit.token_index == 1
        assert hit.score == 1.0

    def test_hyphenated_keyword_matches_split_tokens(self, taxonomy):
        stream = TokenStream(("real", "time", "systems"))
        hits = match_keywords(stream, taxonomy, 0.95)
        assert [(h.keyword, h.category_abbr, h.token_index) for h in hits] == [
            ("real-time", "SYS", 0)
        ]

    def test_repeated_occurrences_all_counted(self, taxonomy):
        stream = TokenStream(("testing", "testing", "testing"))
        hits = match_keywords(stream, taxonomy, 0.95)
        assert [h.token_index for h in hits] == [0, 1, 2]
        assert {h.category_abbr for h in hits} == {"VER"}

    def test_hits_sorted_by_token_index(self, taxonomy):
        stream = normalize("docker for java teams using git and python daily")
        hits = match_keywords(stream, taxonomy, 0.95)
        indexes = [h.token_index for h in hits]
        assert indexes == sorted(indexes)
        assert {h.keyword for h in hits} == {"docker", "java", "git", "python"}

    def test_near_miss_caught_at_looser_threshold(self, taxonomy):
        stream = TokenStream(("javascripts",))
        assert match_keywords(stream, taxonomy, 0.95) == []
        loose = match_keywords(stream, taxonomy, 0.90)
        assert [h.keyword for h in loose] == ["javascript"]
        assert loose[0].score == pytest.approx(1 - 1 / 11)

    def test_empty_stream(self, taxonomy):
        assert match_keywords(TokenStream(()), taxonomy, 0.95) == []

    def test_threshold_validation(self, taxonomy):
        stream = TokenStream(("python",))
        for bad in (0.0, -0.1, 1.5):
            with pytest.raises(ValueError):
                match_keywords(stream, taxonomy, bad)

    @given(st.lists(st.sampled_from(
        ["python", "testing", "gti", "javascript", "webb", "cloud", "and",
         "real", "time", "ci/cd", "design"]), max_size=12))
    def test_threshold_monotonicity(self, taxonomy, tokens):
        stream = TokenStream(tuple(tokens))
        strict = {
            (h.keyword, h.token_index) for h in match_keywords(stream, taxonomy, 0.95)
        }
        loose = {
            (h.keyword, h.token_index) for h in match_keywords(stream, taxonomy, 0.75)
        }
        assert strict <= loose


class TestCategorize:
    def test_counts_by_category(self, taxonomy):
        stream = TokenStream(("python", "java", "sql"))
        assert categorize_document(stream, taxonomy, 0.95) == {"PROG": 2, "DATA": 1}

    def test_zero_count_categories_absent(self, taxonomy):
        stream = TokenStream(("nothing", "relevant", "here"))
        assert categorize_document(stream, taxonomy, 0.95) == {}

    def test_repeats_accumulate(self, taxonomy):
        stream = TokenStream(("testing",) * 3)
        assert categorize_document(stream, taxonomy, 0.95) == {"VER": 3}


class TestGrouping:
    def test_spelling_variants_pool(self):
        clusters = group_module_names(
            [
                "Software Engineering Design",
                "Softwere Engineering Design",
                "software engineering design",
                "Operating Systems",
            ],
            0.75,
        )
        assert clusters[0].canonical_name == "software engineering design"
        assert clusters[0].total == 3
        assert dict(clusters[0].members) == {
            "software engineering design": 2,
            "softwere engineering design": 1,
        }
        assert clusters[1].canonical_name == "operating systems"

    def test_canonical_is_most_frequent_member(self):
        names = ["Data Bases", "Databases", "Databases", "Databases"]
        clusters = group_module_names(names, 0.75)
        assert len(clusters) == 1
        assert clusters[0].canonical_name == "databases"

    def test_exact_threshold_groups_only_identical_names(self):
        clusters = group_module_names(
            ["Databases", "Database", "databases", "DATABASES"], 1.0
        )
        assert [(c.canonical_name, c.total) for c in clusters] == [
            ("databases", 3),
            ("database", 1),
        ]

    def test_empty_input(self):
        assert group_module_names([], 0.75) == []

    def test_cluster_order_by_total_then_name(self):
        clusters = group_module_names(
            ["Alpha Module", "Zeta Module XYZWQ", "Alpha Module"], 0.95
        )
        assert [c.canonical_name for c in clusters] == [
            "alpha module", "zeta module xyzwq",
        ]

    @given(st.lists(st.sampled_from(
        ["Computer Networks", "Computer Network", "Databases", "Algorithms",
         "algorithms!", "Operating Systems", "Discrete Mathematics"]),
        max_size=40))
    def test_totals_sum_to_input_length(self, names):
        clusters = group_module_names(names, 0.75)
        assert sum(c.total for c in clusters) == len(names)
        for cluster in clusters:
            assert cluster.total == sum(count for _, count in cluster.members)
