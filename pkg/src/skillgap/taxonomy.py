"""Skill taxonomy model: named categories, each owning a flat keyword list.

The default taxonomy shipped under ``data/default_taxonomy.json`` covers ten
software-engineering skill categories arranged in three top-level groups.
Some of its keywords are deliberately generic single words ("generation",
"formal", "risk").  At strict match thresholds they behave like exact terms,
but loosening the threshold makes them prone to matching ordinary prose, so
treat threshold changes with care.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from pathlib import Path

from .errors import ConfigError
from .textnorm import normalize


class SkillGroup(str, Enum):
    """Top-level grouping of skill categories."""

    ORGANISATION = "Software organisation & properties"
    ENGINEERING = "Software & its engineering"
    CREATION = "Software creation & management"


@dataclass(frozen=True)
class SkillCategory:
    name: str
    abbreviation: str
    group: SkillGroup
    keywords: tuple[str, ...]


@dataclass(frozen=True)
class SkillTaxonomy:
    categories: tuple[SkillCategory, ...]

    def __len__(self) -> int:
        return len(self.categories)

    def __iter__(self):
        return iter(self.categories)

    def abbreviations(self) -> list[str]:
        return [cat.abbreviation for cat in self.categories]

    def by_abbreviation(self, abbr: str) -> SkillCategory:
        for cat in self.categories:
            if cat.abbreviation == abbr:
                return cat
        raise ConfigError(f"unknown skill category abbreviation: {abbr!r}")

    def keyword_count(self) -> int:
        return sum(len(cat.keywords) for cat in self.categories)


def _validate(categories: list[SkillCategory], source: str) -> SkillTaxonomy:
    if not categories:
        raise ConfigError(f"{source}: taxonomy has no categories")
    seen_abbr: set[str] = set()
    seen_name: set[str] = set()
    owner: dict[str, str] = {}
    for cat in categories:
        if not cat.name.strip():
            raise ConfigError(f"{source}: category with empty name")
        if not cat.abbreviation.strip():
            raise ConfigError(f"{source}: category {cat.name!r} has empty abbreviation")
        if cat.abbreviation in seen_abbr:
            raise ConfigError(f"{source}: duplicate abbreviation {cat.abbreviation!r}")
        if cat.name in seen_name:
            raise ConfigError(f"{source}: duplicate category name {cat.name!r}")
        seen_abbr.add(cat.abbreviation)
        seen_name.add(cat.name)
        if not cat.keywords:
            raise ConfigError(f"{source}: category {cat.abbreviation} has no keywords")
        cat_seen: set[str] = set()
        for kw in cat.keywords:
            if len(kw) < 2:
                raise ConfigError(
                    f"{source}: keyword {kw!r} in {cat.abbreviation} is shorter than "
                    "two characters"
                )
            if kw != kw.lower():
                raise ConfigError(
                    f"{source}: keyword {kw!r} in {cat.abbreviation} is not lowercase"
                )
            if normalize(kw).text() != kw:
                raise ConfigError(
                    f"{source}: keyword {kw!r} in {cat.abbreviation} does not survive "
                    "normalisation unchanged"
                )
            if kw in cat_seen:
                raise ConfigError(
                    f"{source}: keyword {kw!r} duplicated within {cat.abbreviation}"
                )
            cat_seen.add(kw)
            if kw in owner:
                raise ConfigError(
                    f"{source}: keyword {kw!r} appears in both {owner[kw]} and "
                    f"{cat.abbreviation}"
                )
            owner[kw] = cat.abbreviation
    return SkillTaxonomy(tuple(categories))


def load_taxonomy(path: str | Path) -> SkillTaxonomy:
    """Load and validate a taxonomy JSON file (a list of category records)."""
    path = Path(path)
    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
    except OSError as exc:
        raise ConfigError(f"cannot read taxonomy file {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"taxonomy file {path} is not valid JSON: {exc}") from exc
    if not isinstance(raw, list):
        raise ConfigError(f"taxonomy file {path}: top level must be a JSON array")
    categories = []
    for i, entry in enumerate(raw):
        if not isinstance(entry, dict):
            raise ConfigError(f"taxonomy file {path}: entry {i} is not an object")
        try:
            name = entry["name"]
            abbr = entry["abbreviation"]
            group_text = entry["group"]
            keywords = entry["keywords"]
        except KeyError as exc:
            raise ConfigError(
                f"taxonomy file {path}: entry {i} is missing key {exc.args[0]!r}"
            ) from exc
        try:
            group = SkillGroup(group_text)
        except ValueError as exc:
            known = ", ".join(g.value for g in SkillGroup)
            raise ConfigError(
                f"taxonomy file {path}: entry {i} has unknown group {group_text!r} "
                f"(expected one of: {known})"
            ) from exc
        if not isinstance(keywords, list) or not all(
            isinstance(kw, str) for kw in keywords
        ):
            raise ConfigError(
                f"taxonomy file {path}: entry {i} keywords must be a list of strings"
            )
        categories.append(SkillCategory(str(name), str(abbr), group, tuple(keywords)))
    return _validate(categories, str(path))


def write_taxonomy(taxonomy: SkillTaxonomy, path: str | Path) -> None:
    """Serialise a taxonomy back to the JSON file format."""
    records = [
        {
            "name": cat.name,
            "abbreviation": cat.abbreviation,
            "group": cat.group.value,
            "keywords": list(cat.keywords),
        }
        for cat in taxonomy.categories
    ]
    Path(path).write_text(
        json.dumps(records, indent=2, ensure_ascii=False) + "\n", encoding="utf-8"
    )


def default_taxonomy() -> SkillTaxonomy:
    """The ten-category taxonomy shipped with the package."""
    return load_taxonomy(Path(__file__).parent / "data" / "default_taxonomy.json")
