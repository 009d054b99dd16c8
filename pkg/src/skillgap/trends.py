"""Ranking of recurring module names across curricula."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .ingest import CurriculumProgram
from .matching import ModuleCluster, group_module_names


@dataclass(frozen=True)
class ModuleRanking:
    clusters: tuple[ModuleCluster, ...]
    total_modules: int


def rank_modules(
    programs: Sequence[CurriculumProgram], threshold: float = 0.75, top_n: int = 15
) -> ModuleRanking:
    """The ``top_n`` most frequent module-name clusters across all programmes.

    Names are normalised and fuzzily grouped, so spelling variants pool their
    counts.  ``top_n`` larger than the number of clusters returns them all;
    zero or negative is an argument error.
    """
    if top_n < 1:
        raise ValueError(f"top_n must be a positive integer, got {top_n!r}")
    names = [module.name for program in programs for module in program.modules]
    clusters = group_module_names(names, threshold)
    return ModuleRanking(clusters=tuple(clusters[:top_n]), total_modules=len(names))
