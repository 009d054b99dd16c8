"""Module-name ranking across curricula."""

from __future__ import annotations

import pytest

from skillgap.ingest import CurriculumProgram, ModuleRecord
from skillgap.trends import rank_modules

# The ten engineered recurring names in the fixture corpus, with the number of
# programmes (out of 30) each appears in.  Spelling variants are part of the
# corpus, so reproducing the counts requires the fuzzy grouping to work.
FIXTURE_TOP10 = [
    ("software engineering design", 30),
    ("mathematics for computer science", 28),
    ("artificial intelligence", 26),
    ("object oriented programming", 24),
    ("database systems", 22),
    ("software testing", 20),
    ("web application development", 18),
    ("computer networks", 17),
    ("operating systems", 16),
    ("cyber security fundamentals", 14),
]


def program(rank, names):
    return CurriculumProgram(
        university=f"U{rank}", rank=rank, programme="SE",
        modules=tuple(ModuleRecord(name=n) for n in names),
    )


def test_fixture_ranking(curricula30):
    ranking = rank_modules(curricula30, 0.75, top_n=15)
    assert ranking.total_modules == 1300
    assert [(c.canonical_name, c.total) for c in ranking.clusters[:10]] == FIXTURE_TOP10


def test_variants_fold_into_the_ranking(curricula30):
    ranking = rank_modules(curricula30, 0.75, top_n=1)
    cluster = ranking.clusters[0]
    member_names = {name for name, _ in cluster.members}
    assert "software engineering design" in member_names
    assert "softwere engineering design" in member_names
    assert cluster.total == sum(count for _, count in cluster.members)


def test_top_n_truncates():
    programs = [
        program(1, ["Alpha", "Beta", "Gamma"]),
        program(2, ["Alpha", "Beta"]),
        program(3, ["Alpha"]),
    ]
    ranking = rank_modules(programs, 0.95, top_n=2)
    assert [(c.canonical_name, c.total) for c in ranking.clusters] == [
        ("alpha", 3), ("beta", 2),
    ]
    assert ranking.total_modules == 6


def test_top_n_larger_than_cluster_count():
    ranking = rank_modules([program(1, ["Alpha"])], 0.95, top_n=99)
    assert len(ranking.clusters) == 1


def test_top_n_must_be_positive():
    with pytest.raises(ValueError, match="top_n"):
        rank_modules([program(1, ["Alpha"])], 0.95, top_n=0)


def test_no_programmes_gives_empty_ranking():
    ranking = rank_modules([], 0.75, top_n=5)
    assert ranking.clusters == ()
    assert ranking.total_modules == 0
