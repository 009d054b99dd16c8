"""Corpus loading: job postings (CSV/JSONL), curricula (JSON) and HTML snapshots.

Job rows that cannot be used are skipped with a per-row diagnostic; curricula
files are small and hand-curated, so structural problems there are fatal.
"""

from __future__ import annotations

import csv
import json
import re
from dataclasses import dataclass
from html.parser import HTMLParser
from pathlib import Path

from .errors import ConfigError, ExtractionError

NATURE_ONSITE = "Onsite"
NATURE_REMOTE = "Remote"
NATURE_HYBRID = "Hybrid"
NATURES = (NATURE_ONSITE, NATURE_REMOTE, NATURE_HYBRID)

FAMILY_ENGINEER = "Engineer"
FAMILY_DEVELOPER = "Developer"
FAMILY_OTHER = "Other"
FAMILIES = (FAMILY_ENGINEER, FAMILY_DEVELOPER, FAMILY_OTHER)

_JOB_COLUMNS = ("id", "title", "location", "salary", "description", "date")
_MANDATORY_COLUMNS = ("id", "title", "description")

# Bracketed asides and bare work-mode words are presentation, not geography:
# "London (Hybrid)" names the city London, "Remote" names no city at all.
_PAREN_RE = re.compile(r"\([^)]*\)")
_MODE_WORD_RE = re.compile(r"\b(remote|hybrid)\b", re.IGNORECASE)


@dataclass(frozen=True)
class JobPosting:
    id: str
    title: str
    description: str
    nature: str
    family: str
    city: str | None = None
    salary_text: str | None = None
    collected_on: str | None = None


@dataclass(frozen=True)
class RowDiagnostic:
    row: int
    reason: str


def classify_nature(location_text: str | None, description: str) -> str:
    """Work nature from free text; location is checked before the description.

    Within a field "hybrid" beats "remote"; a field mentioning either word is
    decisive and later fields are not consulted.  Nothing decisive anywhere
    means on-site.
    """
    for field_text in (location_text or "", description):
        low = field_text.lower()
        if "hybrid" in low:
            return NATURE_HYBRID
        if "remote" in low:
            return NATURE_REMOTE
    return NATURE_ONSITE


def classify_family(title: str) -> str:
    """Role family from the title: engineer beats developer beats other."""
    low = title.lower()
    if "engineer" in low:
        return FAMILY_ENGINEER
    if "developer" in low:
        return FAMILY_DEVELOPER
    return FAMILY_OTHER


def city_from_location(location_text: str | None) -> str | None:
    """The city named by a location string, or None when it names none."""
    if location_text is None:
        return None
    text = _PAREN_RE.sub(" ", location_text)
    text = _MODE_WORD_RE.sub(" ", text)
    text = text.strip(" \t,;-/")
    text = " ".join(text.split())
    return text or None


def _build_posting(
    fields: dict[str, str | None], row_num: int, seen_ids: set[str]
) -> tuple[JobPosting | None, RowDiagnostic | None]:
    job_id = (fields.get("id") or "").strip()
    title = (fields.get("title") or "").strip()
    description = (fields.get("description") or "").strip()
    if not job_id:
        return None, RowDiagnostic(row_num, "empty id")
    if job_id in seen_ids:
        return None, RowDiagnostic(row_num, f"duplicate id {job_id!r}")
    if not title:
        return None, RowDiagnostic(row_num, "empty title")
    if not description:
        return None, RowDiagnostic(row_num, "empty description")
    location = fields.get("location")
    salary = (fields.get("salary") or "").strip() or None
    date = (fields.get("date") or "").strip() or None
    posting = JobPosting(
        id=job_id,
        title=title,
        description=description,
        nature=classify_nature(location, description),
        family=classify_family(title),
        city=city_from_location(location),
        salary_text=salary,
        collected_on=date,
    )
    seen_ids.add(job_id)
    return posting, None


def _load_jobs_csv(path: Path) -> tuple[list[JobPosting], list[RowDiagnostic]]:
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        header = reader.fieldnames
        if header is None:
            raise ConfigError(f"jobs file {path} is empty (no header row)")
        missing = [col for col in _MANDATORY_COLUMNS if col not in header]
        if missing:
            raise ConfigError(
                f"jobs file {path} is missing mandatory column(s): {', '.join(missing)}"
            )
        postings: list[JobPosting] = []
        diagnostics: list[RowDiagnostic] = []
        seen_ids: set[str] = set()
        for row_num, row in enumerate(reader, start=2):
            posting, diag = _build_posting(row, row_num, seen_ids)
            if posting is not None:
                postings.append(posting)
            if diag is not None:
                diagnostics.append(diag)
    return postings, diagnostics


def _load_jobs_jsonl(path: Path) -> tuple[list[JobPosting], list[RowDiagnostic]]:
    postings: list[JobPosting] = []
    diagnostics: list[RowDiagnostic] = []
    seen_ids: set[str] = set()
    with open(path, encoding="utf-8") as fh:
        for row_num, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                diagnostics.append(RowDiagnostic(row_num, f"invalid JSON: {exc.msg}"))
                continue
            if not isinstance(obj, dict):
                diagnostics.append(RowDiagnostic(row_num, "line is not a JSON object"))
                continue
            fields = {
                key: (str(obj[key]) if obj.get(key) is not None else None)
                for key in _JOB_COLUMNS
                if key in obj
            }
            posting, diag = _build_posting(fields, row_num, seen_ids)
            if posting is not None:
                postings.append(posting)
            if diag is not None:
                diagnostics.append(diag)
    return postings, diagnostics


def load_jobs(
    path: str | Path, fmt: str | None = None
) -> tuple[list[JobPosting], list[RowDiagnostic]]:
    """Load a job corpus; returns (postings, per-row diagnostics).

    ``fmt`` is "csv" or "jsonl"; when omitted it is inferred from the file
    suffix.  An unreadable file or a CSV header without the mandatory columns
    (id, title, description) is fatal; bad rows are skipped and reported.
    """
    path = Path(path)
    if fmt is None:
        fmt = "jsonl" if path.suffix.lower() in (".jsonl", ".ndjson") else "csv"
    if fmt not in ("csv", "jsonl"):
        raise ConfigError(f"unknown jobs format {fmt!r} (expected 'csv' or 'jsonl')")
    if not path.is_file():
        raise ConfigError(f"jobs file not found: {path}")
    try:
        if fmt == "csv":
            return _load_jobs_csv(path)
        return _load_jobs_jsonl(path)
    except OSError as exc:
        raise ConfigError(f"cannot read jobs file {path}: {exc}") from exc


def location_text(posting: JobPosting) -> str:
    """A location string that re-encodes the posting's city and nature."""
    base = posting.city or ""
    if posting.nature == NATURE_HYBRID:
        return f"{base} (Hybrid)".strip() if base else "Hybrid"
    if posting.nature == NATURE_REMOTE:
        return f"{base} (Remote)".strip() if base else "Remote"
    return base


def write_jobs_csv(postings: list[JobPosting], path: str | Path) -> None:
    """Write postings back out in the six-column CSV schema."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(_JOB_COLUMNS)
        for posting in postings:
            writer.writerow(
                [
                    posting.id,
                    posting.title,
                    location_text(posting),
                    posting.salary_text or "",
                    posting.description,
                    posting.collected_on or "",
                ]
            )


@dataclass(frozen=True)
class ModuleRecord:
    name: str
    description: str | None = None


@dataclass(frozen=True)
class CurriculumProgram:
    university: str
    rank: int
    programme: str
    modules: tuple[ModuleRecord, ...]


def load_curricula(
    path: str | Path,
) -> tuple[list[CurriculumProgram], list[RowDiagnostic]]:
    """Load a curricula JSON file, sorted by rank ascending.

    Structural problems (bad JSON, missing keys, duplicate ranks, blank
    module names) are fatal.  A programme with zero modules is skipped with
    a diagnostic.
    """
    path = Path(path)
    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
    except OSError as exc:
        raise ConfigError(f"cannot read curricula file {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"curricula file {path} is not valid JSON: {exc}") from exc
    if not isinstance(raw, list):
        raise ConfigError(f"curricula file {path}: top level must be a JSON array")
    programs: list[CurriculumProgram] = []
    diagnostics: list[RowDiagnostic] = []
    seen_ranks: dict[int, str] = {}
    for i, entry in enumerate(raw):
        where = f"curricula file {path}: entry {i}"
        if not isinstance(entry, dict):
            raise ConfigError(f"{where} is not an object")
        try:
            university = str(entry["university"]).strip()
            rank = entry["rank"]
            programme = str(entry["programme"]).strip()
            modules_raw = entry["modules"]
        except KeyError as exc:
            raise ConfigError(f"{where} is missing key {exc.args[0]!r}") from exc
        if not isinstance(rank, int) or isinstance(rank, bool) or rank < 1:
            raise ConfigError(f"{where}: rank must be a positive integer, got {rank!r}")
        if not university:
            raise ConfigError(f"{where}: empty university name")
        if rank in seen_ranks:
            raise ConfigError(
                f"{where}: duplicate rank {rank} (already used by {seen_ranks[rank]!r})"
            )
        seen_ranks[rank] = university
        if not isinstance(modules_raw, list):
            raise ConfigError(f"{where}: modules must be a JSON array")
        modules: list[ModuleRecord] = []
        for j, mod in enumerate(modules_raw):
            if not isinstance(mod, dict) or "name" not in mod:
                raise ConfigError(f"{where}, module {j}: expected an object with a name")
            name = str(mod["name"]).strip()
            if not name:
                raise ConfigError(f"{where}, module {j}: blank module name")
            description = mod.get("description")
            if description is not None:
                description = str(description).strip() or None
            modules.append(ModuleRecord(name=name, description=description))
        if not modules:
            diagnostics.append(
                RowDiagnostic(i, f"programme {university!r} has zero modules; skipped")
            )
            continue
        programs.append(
            CurriculumProgram(
                university=university,
                rank=rank,
                programme=programme,
                modules=tuple(modules),
            )
        )
    programs.sort(key=lambda prog: prog.rank)
    return programs, diagnostics


@dataclass(frozen=True)
class HtmlExtractConfig:
    """Field-name to CSS-style selector mapping for listing-page snapshots."""

    selectors: dict[str, str]

    MANDATORY = ("title", "description")
    KNOWN_FIELDS = ("title", "city", "salary", "description", "date")


def load_extract_config(path: str | Path) -> HtmlExtractConfig:
    path = Path(path)
    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
    except OSError as exc:
        raise ConfigError(f"cannot read extract config {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"extract config {path} is not valid JSON: {exc}") from exc
    if not isinstance(raw, dict) or not all(
        isinstance(k, str) and isinstance(v, str) for k, v in raw.items()
    ):
        raise ConfigError(
            f"extract config {path} must map field names to selector strings"
        )
    missing = [f for f in HtmlExtractConfig.MANDATORY if f not in raw]
    if missing:
        raise ConfigError(
            f"extract config {path} is missing selector(s) for: {', '.join(missing)}"
        )
    for field_name, selector in raw.items():
        if field_name not in HtmlExtractConfig.KNOWN_FIELDS:
            raise ConfigError(
                f"extract config {path}: unknown field {field_name!r} "
                f"(known: {', '.join(HtmlExtractConfig.KNOWN_FIELDS)})"
            )
        _parse_selector(selector)  # validate eagerly
    return HtmlExtractConfig(selectors=dict(raw))


# --- Minimal HTML element tree + CSS-style selector subset -----------------
#
# Supported selector grammar: whitespace-separated compound parts with
# descendant semantics, each part "tag", ".class", "#id" or combinations
# such as "div.job-card" / "h1#title.main".

_VOID_TAGS = frozenset(
    "area base br col embed hr img input link meta param source track wbr".split()
)
_COMPOUND_RE = re.compile(r"([a-zA-Z][a-zA-Z0-9-]*)|\.([\w-]+)|#([\w-]+)")


def _parse_selector(selector: str) -> list[tuple[str | None, frozenset[str], str | None]]:
    parts = selector.split()
    if not parts:
        raise ConfigError(f"empty selector: {selector!r}")
    parsed = []
    for part in parts:
        tag: str | None = None
        classes: set[str] = set()
        node_id: str | None = None
        pos = 0
        for match in _COMPOUND_RE.finditer(part):
            if match.start() != pos:
                raise ConfigError(f"unsupported selector syntax: {selector!r}")
            pos = match.end()
            if match.group(1):
                if tag is not None or classes or node_id is not None:
                    raise ConfigError(f"unsupported selector syntax: {selector!r}")
                tag = match.group(1).lower()
            elif match.group(2):
                classes.add(match.group(2))
            else:
                node_id = match.group(3)
        if pos != len(part) or (tag is None and not classes and node_id is None):
            raise ConfigError(f"unsupported selector syntax: {selector!r}")
        parsed.append((tag, frozenset(classes), node_id))
    return parsed


class _Element:
    __slots__ = ("tag", "attrs", "parent", "children")

    def __init__(self, tag: str, attrs: dict[str, str], parent: "_Element | None"):
        self.tag = tag
        self.attrs = attrs
        self.parent = parent
        self.children: list[object] = []  # _Element or str


class _TreeBuilder(HTMLParser):
    def __init__(self) -> None:
        super().__init__(convert_charrefs=True)
        self.root = _Element("[document]", {}, None)
        self.stack = [self.root]

    def handle_starttag(self, tag, attrs):
        element = _Element(tag, {k: (v or "") for k, v in attrs}, self.stack[-1])
        self.stack[-1].children.append(element)
        if tag not in _VOID_TAGS:
            self.stack.append(element)

    def handle_startendtag(self, tag, attrs):
        element = _Element(tag, {k: (v or "") for k, v in attrs}, self.stack[-1])
        self.stack[-1].children.append(element)

    def handle_endtag(self, tag):
        # Lenient recovery: pop to the nearest matching open tag, ignore strays.
        for i in range(len(self.stack) - 1, 0, -1):
            if self.stack[i].tag == tag:
                del self.stack[i:]
                return

    def handle_data(self, data):
        if data:
            self.stack[-1].children.append(data)


def _iter_elements(node: _Element):
    for child in node.children:
        if isinstance(child, _Element):
            yield child
            yield from _iter_elements(child)


def _matches_part(element: _Element, part) -> bool:
    tag, classes, node_id = part
    if tag is not None and element.tag != tag:
        return False
    if node_id is not None and element.attrs.get("id") != node_id:
        return False
    if classes and not classes.issubset(set(element.attrs.get("class", "").split())):
        return False
    return True


def _matches_chain(element: _Element, parts) -> bool:
    if not _matches_part(element, parts[-1]):
        return False
    if len(parts) == 1:
        return True
    ancestor = element.parent
    while ancestor is not None and ancestor.tag != "[document]":
        if _matches_chain(ancestor, parts[:-1]):
            return True
        ancestor = ancestor.parent
    return False


def _text_content(element: _Element) -> str:
    chunks: list[str] = []

    def walk(node: _Element) -> None:
        if node.tag in ("script", "style"):
            return
        for child in node.children:
            if isinstance(child, str):
                chunks.append(child)
            else:
                walk(child)

    walk(element)
    return " ".join("".join(chunks).split())


def extract_fields_from_html(
    html_text: str, config: HtmlExtractConfig
) -> dict[str, str]:
    """Pull raw posting fields out of a saved listing page.

    Each configured field takes the text of the first element its selector
    matches (document order).  A mandatory field whose selector matches
    nothing, or matches only empty text, is an extraction error naming the
    selector; optional fields are simply omitted.
    """
    builder = _TreeBuilder()
    builder.feed(html_text)
    builder.close()
    elements = list(_iter_elements(builder.root))
    fields: dict[str, str] = {}
    for field_name, selector in config.selectors.items():
        parts = _parse_selector(selector)
        text = None
        for element in elements:
            if _matches_chain(element, parts):
                text = _text_content(element)
                break
        if text:
            fields[field_name] = text
        elif field_name in HtmlExtractConfig.MANDATORY:
            raise ExtractionError(
                f"selector {selector!r} for mandatory field {field_name!r} "
                f"matched no element with text"
            )
    return fields


def extract_job_from_html(
    html_text: str, config: HtmlExtractConfig, posting_id: str = "snapshot"
) -> JobPosting:
    """Build a fully labelled posting from a saved listing page.

    The city selector's text is treated like a CSV location cell, so a page
    showing "Leeds (Hybrid)" yields city "Leeds" and nature Hybrid.
    """
    fields = extract_fields_from_html(html_text, config)
    location = fields.get("city")
    description = fields["description"]
    title = fields["title"]
    return JobPosting(
        id=posting_id,
        title=title,
        description=description,
        nature=classify_nature(location, description),
        family=classify_family(title),
        city=city_from_location(location),
        salary_text=fields.get("salary"),
        collected_on=fields.get("date"),
    )
