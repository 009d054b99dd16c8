"""Fuzzy keyword matching built on normalised Levenshtein similarity.

Keywords are compared against sliding token windows of the same word count,
so multi-word keywords and single tokens share one code path.  Keywords that
contain "-" or "/" get a second, space-joined form tried against two-token
windows, which lets "real-time" match the token pair ("real", "time").
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .taxonomy import SkillTaxonomy
from .textnorm import TokenStream, normalize


def levenshtein(a: str, b: str) -> int:
    """Edit distance (insert/delete/substitute, unit costs), two-row DP."""
    if a == b:
        return 0
    if not a:
        return len(b)
    if not b:
        return len(a)
    if len(a) < len(b):
        a, b = b, a
    previous = list(range(len(b) + 1))
    for i, ca in enumerate(a, start=1):
        current = [i]
        append = current.append
        for j, cb in enumerate(b, start=1):
            cost = 0 if ca == cb else 1
            append(min(previous[j] + 1, current[j - 1] + 1, previous[j - 1] + cost))
        previous = current
    return previous[-1]


def similarity(a: str, b: str) -> float:
    """Normalised similarity: 1 - editdist/max(len).  Two empty strings -> 1.0."""
    if a == b:
        return 1.0
    longest = max(len(a), len(b))
    return 1.0 - levenshtein(a, b) / longest


def _check_threshold(threshold: float) -> None:
    if not 0.0 < threshold <= 1.0:
        raise ValueError(f"threshold must lie in (0, 1], got {threshold!r}")


def _meets(a: str, b: str, threshold: float) -> bool:
    """Same decision as similarity(a, b) >= threshold, with cheap short-cuts."""
    if a == b:
        return True
    longest = max(len(a), len(b))
    # The distance is at least the length difference, so this bound is exact.
    if 1.0 - abs(len(a) - len(b)) / longest < threshold:
        return False
    return 1.0 - levenshtein(a, b) / longest >= threshold


def keyword_forms(keyword: str) -> list[tuple[str, int]]:
    """(comparison text, window word count) pairs for one keyword."""
    forms = [(keyword, len(keyword.split()))]
    if "-" in keyword or "/" in keyword:
        variant = " ".join(keyword.replace("-", " ").replace("/", " ").split())
        if variant and variant != keyword:
            forms.append((variant, len(variant.split())))
    return forms


@dataclass(frozen=True)
class MatchHit:
    """One keyword occurrence: the window starting at ``token_index`` matched."""

    keyword: str
    category_abbr: str
    token_index: int
    score: float


def match_keywords(
    stream: TokenStream, taxonomy: SkillTaxonomy, threshold: float
) -> list[MatchHit]:
    """All keyword hits in the stream, ordered by first token index.

    Every window that meets the threshold yields a hit, so overlapping and
    repeated occurrences are all counted.  Ties on token index keep taxonomy
    order (category, then keyword, then window form).
    """
    _check_threshold(threshold)
    tokens = stream.tokens
    windows: dict[int, list[str]] = {}
    hits: list[MatchHit] = []
    for cat in taxonomy.categories:
        for keyword in cat.keywords:
            for target, size in keyword_forms(keyword):
                if size not in windows:
                    windows[size] = [
                        " ".join(tokens[i : i + size])
                        for i in range(len(tokens) - size + 1)
                    ]
                for index, window in enumerate(windows[size]):
                    if _meets(target, window, threshold):
                        hits.append(
                            MatchHit(
                                keyword=keyword,
                                category_abbr=cat.abbreviation,
                                token_index=index,
                                score=similarity(target, window),
                            )
                        )
    hits.sort(key=lambda hit: hit.token_index)
    return hits


def categorize_document(
    stream: TokenStream, taxonomy: SkillTaxonomy, threshold: float
) -> dict[str, int]:
    """Mention counts per category abbreviation; categories without hits are absent."""
    counts: Counter[str] = Counter()
    for hit in match_keywords(stream, taxonomy, threshold):
        counts[hit.category_abbr] += 1
    return dict(counts)


@dataclass(frozen=True)
class ModuleCluster:
    """A group of near-identical names; ``members`` holds (name, count) pairs."""

    canonical_name: str
    total: int
    members: tuple[tuple[str, int], ...]


def group_module_names(
    names: list[str], threshold: float = 0.75
) -> list[ModuleCluster]:
    """Greedy single-pass clustering of normalised names.

    Distinct normalised names are processed in descending frequency order
    (ties lexicographic) and each joins the first existing cluster whose
    canonical name is similar enough, otherwise it founds a new cluster.
    Because of that processing order the founding member is always the most
    frequent (ties lexicographically smallest), so it stays canonical.
    Clusters come back sorted by descending total, ties lexicographic.
    """
    _check_threshold(threshold)
    counts = Counter(normalize(name).text() for name in names)
    order = sorted(counts.items(), key=lambda item: (-item[1], item[0]))
    canonicals: list[str] = []
    totals: list[int] = []
    members: list[list[tuple[str, int]]] = []
    for name, count in order:
        for i, canonical in enumerate(canonicals):
            if similarity(name, canonical) >= threshold:
                totals[i] += count
                members[i].append((name, count))
                break
        else:
            canonicals.append(name)
            totals.append(count)
            members.append([(name, count)])
    clusters = [
        ModuleCluster(canonical_name=c, total=t, members=tuple(m))
        for c, t, m in zip(canonicals, totals, members)
    ]
    clusters.sort(key=lambda cl: (-cl.total, cl.canonical_name))
    return clusters
