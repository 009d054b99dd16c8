"""Coverage, distribution and curriculum-versus-industry gap computations."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence, TypeVar

from .ingest import CurriculumProgram, JobPosting
from .matching import _check_threshold, _meets, categorize_document, keyword_forms
from .taxonomy import SkillTaxonomy
from .textnorm import normalize, remove_stopwords

ALIGNED = "Aligned"
UNDERVALUED = "Undervalued"
OVERVALUED = "Overvalued"

_T = TypeVar("_T")
_R = TypeVar("_R")


def _map_documents(
    func: Callable[[_T], _R], items: Sequence[_T], workers: int
) -> list[_R]:
    """Apply ``func`` to every item, optionally on a thread pool.

    The result order always follows the input order, so the worker count has
    no effect on any downstream output.
    """
    if workers <= 1:
        return [func(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(func, items))


def _document_counts(
    texts: Sequence[str],
    taxonomy: SkillTaxonomy,
    threshold: float,
    stopwords: frozenset[str],
    workers: int,
) -> list[dict[str, int]]:
    def count_one(text: str) -> dict[str, int]:
        stream = remove_stopwords(normalize(text), stopwords)
        return categorize_document(stream, taxonomy, threshold)

    return _map_documents(count_one, texts, workers)


@dataclass(frozen=True)
class CategoryProfile:
    category_abbr: str
    doc_coverage_pct: float
    total_mentions: int


def job_category_coverage(
    corpus: Sequence[JobPosting],
    taxonomy: SkillTaxonomy,
    threshold: float,
    stopwords: frozenset[str] = frozenset(),
    workers: int = 1,
) -> list[CategoryProfile]:
    """Per-category share of documents with at least one hit, plus mention totals.

    A category counts once per document toward coverage no matter how many of
    its keywords occur; mentions count every hit.  Profiles come back sorted
    by descending coverage (ties by abbreviation).
    """
    if not corpus:
        raise ValueError("job corpus is empty; coverage is undefined")
    doc_count = len(corpus)
    per_doc = _document_counts(
        [posting.description for posting in corpus], taxonomy, threshold, stopwords, workers
    )
    profiles = []
    for cat in taxonomy.categories:
        abbr = cat.abbreviation
        covered = sum(1 for counts in per_doc if abbr in counts)
        mentions = sum(counts.get(abbr, 0) for counts in per_doc)
        pct = 100.0 * covered / doc_count
        # Round-tripping the percentage back through the denominator must
        # land on the integer document count, or something upstream broke.
        assert abs(pct * doc_count / 100.0 - covered) < 1e-9
        profiles.append(
            CategoryProfile(
                category_abbr=abbr, doc_coverage_pct=pct, total_mentions=mentions
            )
        )
    profiles.sort(key=lambda p: (-p.doc_coverage_pct, p.category_abbr))
    return profiles


def keyword_frequency(
    corpus: Sequence[JobPosting],
    keywords: Sequence[str],
    threshold: float,
    stopwords: frozenset[str] = frozenset(),
    workers: int = 1,
) -> list[tuple[str, float]]:
    """Per-keyword share of documents mentioning it, descending.

    ``keywords`` is typically one category's keyword list.  Keywords without
    hits stay in the result at 0.0.
    """
    if not corpus:
        raise ValueError("job corpus is empty; keyword frequency is undefined")
    if not keywords:
        raise ValueError("keyword list is empty; nothing to count")
    _check_threshold(threshold)
    forms = {kw: keyword_forms(kw) for kw in keywords}

    def keywords_in(text: str) -> set[str]:
        tokens = remove_stopwords(normalize(text), stopwords).tokens
        windows: dict[int, list[str]] = {}
        found = set()
        for kw, kw_forms in forms.items():
            for target, size in kw_forms:
                if size not in windows:
                    windows[size] = [
                        " ".join(tokens[i : i + size])
                        for i in range(len(tokens) - size + 1)
                    ]
                if any(_meets(target, w, threshold) for w in windows[size]):
                    found.add(kw)
                    break
        return found

    per_doc = _map_documents(
        keywords_in, [posting.description for posting in corpus], workers
    )
    doc_count = len(corpus)
    frequencies = []
    for kw in forms:
        covered = sum(1 for kws in per_doc if kw in kws)
        frequencies.append((kw, 100.0 * covered / doc_count))
    frequencies.sort(key=lambda item: (-item[1], item[0]))
    return frequencies


@dataclass(frozen=True)
class CurriculumDistribution:
    module_pct: dict[str, float]
    se_share_pct: float
    module_count: int
    modules_assigned: dict[str, int]


def curriculum_distribution(
    programs: Sequence[CurriculumProgram],
    taxonomy: SkillTaxonomy,
    threshold: float,
    stopwords: frozenset[str] = frozenset(),
    workers: int = 1,
) -> CurriculumDistribution:
    """Category distribution over all modules pooled across programmes.

    A module is matched on its name plus description and counts once per
    category it hits (so percentages may sum past 100).  ``se_share_pct`` is
    the share of modules hitting at least one category.
    """
    texts = []
    for program in programs:
        for module in program.modules:
            if module.description:
                texts.append(f"{module.name} {module.description}")
            else:
                texts.append(module.name)
    if not texts:
        raise ValueError("curricula contain no modules; distribution is undefined")
    per_module = _document_counts(texts, taxonomy, threshold, stopwords, workers)
    module_count = len(texts)
    assigned = {
        cat.abbreviation: sum(
            1 for counts in per_module if cat.abbreviation in counts
        )
        for cat in taxonomy.categories
    }
    module_pct = {
        abbr: 100.0 * count / module_count for abbr, count in assigned.items()
    }
    covered_any = sum(1 for counts in per_module if counts)
    return CurriculumDistribution(
        module_pct=module_pct,
        se_share_pct=100.0 * covered_any / module_count,
        module_count=module_count,
        modules_assigned=assigned,
    )


def split_rank_compare(
    programs: Sequence[CurriculumProgram],
    taxonomy: SkillTaxonomy,
    threshold: float,
    k: int = 15,
    stopwords: frozenset[str] = frozenset(),
    workers: int = 1,
) -> tuple[CurriculumDistribution, CurriculumDistribution]:
    """Distributions for the k best-ranked and k worst-ranked programmes."""
    if k < 1:
        raise ValueError(f"k must be a positive integer, got {k!r}")
    if 2 * k > len(programs):
        raise ValueError(
            f"rank split needs at least {2 * k} programmes for k={k}, "
            f"got {len(programs)}"
        )
    ordered = sorted(programs, key=lambda prog: prog.rank)
    top = curriculum_distribution(
        ordered[:k], taxonomy, threshold, stopwords=stopwords, workers=workers
    )
    bottom = curriculum_distribution(
        ordered[-k:], taxonomy, threshold, stopwords=stopwords, workers=workers
    )
    return top, bottom


def normalize_to_100(
    values: dict[str, float] | Sequence[CategoryProfile],
) -> dict[str, float]:
    """Rescale non-negative values so they sum to exactly 100.

    Accepts either a category-to-percentage mapping or a list of coverage
    profiles (whose ``doc_coverage_pct`` is used).
    """
    if not isinstance(values, dict):
        values = {p.category_abbr: p.doc_coverage_pct for p in values}
    for key, value in values.items():
        if value < 0:
            raise ValueError(f"cannot normalise negative value {value!r} for {key!r}")
    total = sum(values.values())
    if total <= 0:
        raise ValueError("cannot normalise: values sum to zero")
    return {key: 100.0 * value / total for key, value in values.items()}


@dataclass(frozen=True)
class GapRecord:
    category_abbr: str
    curriculum_pct: float
    job_pct: float
    gap_ratio: float
    alignment: str


def gap_map(
    curriculum_pct: dict[str, float],
    job_pct_normalized: dict[str, float],
    tau: float = 0.18,
) -> list[GapRecord]:
    """Relative gap per category with an alignment label.

    gap_ratio = (job - curriculum) / curriculum.  A ratio of at least ``tau``
    is labelled Undervalued (industry asks more than curricula supply), at
    most ``-tau`` Overvalued, anything in between Aligned.  Records come back
    sorted by descending job percentage.
    """
    if tau <= 0:
        raise ValueError(f"tau must be positive, got {tau!r}")
    curr_keys = set(curriculum_pct)
    job_keys = set(job_pct_normalized)
    if curr_keys != job_keys:
        only_curr = sorted(curr_keys - job_keys)
        only_job = sorted(job_keys - curr_keys)
        raise ValueError(
            "category sets differ between curriculum and job data: "
            f"curriculum-only={only_curr}, job-only={only_job}"
        )
    records = []
    for abbr in curriculum_pct:
        curr = curriculum_pct[abbr]
        if curr <= 0:
            raise ValueError(
                f"curriculum percentage for {abbr!r} is {curr!r}; "
                "the gap ratio is undefined"
            )
        job = job_pct_normalized[abbr]
        ratio = (job - curr) / curr
        if ratio >= tau:
            alignment = UNDERVALUED
        elif ratio <= -tau:
            alignment = OVERVALUED
        else:
            alignment = ALIGNED
        records.append(
            GapRecord(
                category_abbr=abbr,
                curriculum_pct=curr,
                job_pct=job,
                gap_ratio=ratio,
                alignment=alignment,
            )
        )
    records.sort(key=lambda rec: (-rec.job_pct, rec.category_abbr))
    return records
