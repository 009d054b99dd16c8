"""Command-line entry point: skillgap <command> [--config ...] [overrides].

Commands
  analyze-jobs       coverage per skill category over a job corpus
  analyze-curricula  module distribution, rank split and module ranking
  gap                curriculum-versus-industry gap table
  stats              nature distribution and chi-square independence tests
  all                every command above, sharing one load

Exit codes: 0 success (possibly with warnings), 2 configuration or input
error, 3 numerical non-convergence.
"""

from __future__ import annotations

import argparse
import sys
from collections import Counter
from dataclasses import dataclass, replace
from pathlib import Path

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

from . import gaps, report
from .errors import ConfigError, ConvergenceError, SkillgapError, StatError
from .ingest import (
    NATURES,
    CurriculumProgram,
    JobPosting,
    RowDiagnostic,
    load_curricula,
    load_jobs,
)
from .matching import keyword_forms
from .stats import ChiSquareResult, ContingencyTable, chi_square, contingency
from .taxonomy import SkillTaxonomy, default_taxonomy, load_taxonomy
from .textnorm import default_stopwords, load_stopwords
from .trends import rank_modules


@dataclass(frozen=True)
class RunConfig:
    jobs: Path | None = None
    curricula: Path | None = None
    taxonomy: Path | None = None
    stopwords: Path | None = None
    out: Path = Path("out")
    keyword_threshold: float = 0.95
    grouping_threshold: float = 0.75
    tau: float = 0.18
    ngram_max: int = 3
    top_k: int = 15
    min_row_total: int = 5
    exclude_unlabeled: bool = True
    workers: int = 1


_CONFIG_KEYS = {
    "paths": {"jobs", "curricula", "taxonomy", "stopwords", "out"},
    "thresholds": {"keyword", "grouping", "tau", "ngram_max"},
    "stats": {"top_k", "min_row_total", "exclude_unlabeled", "workers"},
}


def _coerce_path(value: object, base: Path, where: str) -> Path:
    if not isinstance(value, str):
        raise ConfigError(f"{where}: expected a path string, got {value!r}")
    path = Path(value)
    return path if path.is_absolute() else base / path


def _coerce_number(value: object, where: str, kind: type) -> float | int:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{where}: expected a number, got {value!r}")
    if kind is int:
        if isinstance(value, float) and not value.is_integer():
            raise ConfigError(f"{where}: expected an integer, got {value!r}")
        return int(value)
    return float(value)


def load_config_file(path: str | Path) -> RunConfig:
    """Parse a TOML config file ([paths], [thresholds], [stats]) into a RunConfig.

    Relative paths inside the file are resolved against the file's directory.
    """
    path = Path(path)
    try:
        with open(path, "rb") as fh:
            data = tomllib.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"config file {path} is not valid TOML: {exc}") from exc
    for section, keys in data.items():
        if section not in _CONFIG_KEYS:
            raise ConfigError(f"config file {path}: unknown section [{section}]")
        if not isinstance(keys, dict):
            raise ConfigError(f"config file {path}: [{section}] must be a table")
        for key in keys:
            if key not in _CONFIG_KEYS[section]:
                raise ConfigError(
                    f"config file {path}: unknown key {key!r} in [{section}]"
                )
    base = path.parent
    cfg = RunConfig()
    paths = data.get("paths", {})
    for field_name in ("jobs", "curricula", "taxonomy", "stopwords", "out"):
        if field_name in paths:
            where = f"config file {path}, paths.{field_name}"
            cfg = replace(
                cfg, **{field_name: _coerce_path(paths[field_name], base, where)}
            )
    thresholds = data.get("thresholds", {})
    if "keyword" in thresholds:
        cfg = replace(
            cfg,
            keyword_threshold=_coerce_number(
                thresholds["keyword"], f"{path}: thresholds.keyword", float
            ),
        )
    if "grouping" in thresholds:
        cfg = replace(
            cfg,
            grouping_threshold=_coerce_number(
                thresholds["grouping"], f"{path}: thresholds.grouping", float
            ),
        )
    if "tau" in thresholds:
        cfg = replace(
            cfg, tau=_coerce_number(thresholds["tau"], f"{path}: thresholds.tau", float)
        )
    if "ngram_max" in thresholds:
        cfg = replace(
            cfg,
            ngram_max=_coerce_number(
                thresholds["ngram_max"], f"{path}: thresholds.ngram_max", int
            ),
        )
    stats_section = data.get("stats", {})
    for key in ("top_k", "min_row_total", "workers"):
        if key in stats_section:
            cfg = replace(
                cfg,
                **{key: _coerce_number(stats_section[key], f"{path}: stats.{key}", int)},
            )
    if "exclude_unlabeled" in stats_section:
        flag = stats_section["exclude_unlabeled"]
        if not isinstance(flag, bool):
            raise ConfigError(
                f"{path}: stats.exclude_unlabeled must be a boolean, got {flag!r}"
            )
        cfg = replace(cfg, exclude_unlabeled=flag)
    return cfg


def _validate_config(cfg: RunConfig) -> None:
    if not 0.0 < cfg.keyword_threshold <= 1.0:
        raise ConfigError(
            f"keyword threshold must lie in (0, 1], got {cfg.keyword_threshold!r}"
        )
    if not 0.0 < cfg.grouping_threshold <= 1.0:
        raise ConfigError(
            f"grouping threshold must lie in (0, 1], got {cfg.grouping_threshold!r}"
        )
    if cfg.tau <= 0:
        raise ConfigError(f"tau must be positive, got {cfg.tau!r}")
    if cfg.ngram_max < 1:
        raise ConfigError(f"ngram_max must be at least 1, got {cfg.ngram_max!r}")
    if cfg.top_k < 1:
        raise ConfigError(f"top_k must be at least 1, got {cfg.top_k!r}")
    if cfg.min_row_total < 0:
        raise ConfigError(f"min_row_total must not be negative, got {cfg.min_row_total!r}")
    if cfg.workers < 1:
        raise ConfigError(f"workers must be at least 1, got {cfg.workers!r}")


def _check_ngram_budget(taxonomy: SkillTaxonomy, ngram_max: int) -> None:
    for cat in taxonomy.categories:
        for keyword in cat.keywords:
            for _, size in keyword_forms(keyword):
                if size > ngram_max:
                    raise ConfigError(
                        f"keyword {keyword!r} in {cat.abbreviation} needs "
                        f"{size}-token windows but ngram_max={ngram_max}"
                    )


class _Runner:
    """Shared state for one CLI invocation: config plus lazily loaded inputs."""

    def __init__(self, cfg: RunConfig):
        _validate_config(cfg)
        self.cfg = cfg
        self.taxonomy = (
            load_taxonomy(cfg.taxonomy) if cfg.taxonomy else default_taxonomy()
        )
        _check_ngram_budget(self.taxonomy, cfg.ngram_max)
        if cfg.stopwords:
            try:
                self.stopwords = load_stopwords(cfg.stopwords)
            except OSError as exc:
                raise ConfigError(
                    f"cannot read stopword file {cfg.stopwords}: {exc}"
                ) from exc
        else:
            self.stopwords = default_stopwords()
        self._jobs: list[JobPosting] | None = None
        self._programs: list[CurriculumProgram] | None = None
        cfg.out.mkdir(parents=True, exist_ok=True)

    # --- input loading ------------------------------------------------------

    def _report_diagnostics(self, source: Path, diags: list[RowDiagnostic]) -> None:
        if diags:
            print(
                f"warning: {len(diags)} row(s) skipped in {source}", file=sys.stderr
            )
            for diag in diags:
                print(f"  row {diag.row}: {diag.reason}", file=sys.stderr)

    def jobs(self) -> list[JobPosting]:
        if self._jobs is None:
            if self.cfg.jobs is None:
                raise ConfigError("no jobs file configured (set [paths] jobs or --jobs)")
            postings, diags = load_jobs(self.cfg.jobs)
            self._report_diagnostics(self.cfg.jobs, diags)
            if not postings:
                raise ConfigError(f"jobs file {self.cfg.jobs} yielded no usable postings")
            self._jobs = postings
        return self._jobs

    def programs(self) -> list[CurriculumProgram]:
        if self._programs is None:
            if self.cfg.curricula is None:
                raise ConfigError(
                    "no curricula file configured (set [paths] curricula or --curricula)"
                )
            programs, diags = load_curricula(self.cfg.curricula)
            self._report_diagnostics(self.cfg.curricula, diags)
            if not programs:
                raise ConfigError(
                    f"curricula file {self.cfg.curricula} yielded no programmes"
                )
            self._programs = programs
        return self._programs

    def _out(self, name: str) -> Path:
        path = self.cfg.out / name
        print(f"wrote {path}")
        return path

    # --- commands -----------------------------------------------------------

    def analyze_jobs(self) -> None:
        cfg = self.cfg
        postings = self.jobs()
        profiles = gaps.job_category_coverage(
            postings,
            self.taxonomy,
            cfg.keyword_threshold,
            stopwords=self.stopwords,
            workers=cfg.workers,
        )
        columns = ["category", "abbreviation", "coverage_pct", "coverage_pct_full", "mentions"]
        rows = [
            [
                self.taxonomy.by_abbreviation(p.category_abbr).name,
                p.category_abbr,
                f"{p.doc_coverage_pct:.2f}",
                repr(p.doc_coverage_pct),
                str(p.total_mentions),
            ]
            for p in profiles
        ]
        n = len(postings)
        report.write_table_csv(
            self._out("table7.csv"), n, cfg.keyword_threshold, columns, rows
        )
        report.write_table_md(
            self._out("table7.md"), n, cfg.keyword_threshold, columns, rows
        )
        for fig_name, abbr in (("fig3", "PROG"), ("fig4", "FRWK")):
            category = self.taxonomy.by_abbreviation(abbr)
            frequencies = gaps.keyword_frequency(
                postings,
                category.keywords,
                cfg.keyword_threshold,
                stopwords=self.stopwords,
                workers=cfg.workers,
            )
            fig_columns = ["keyword", "doc_pct", "doc_pct_full"]
            fig_rows = [[kw, f"{pct:.2f}", repr(pct)] for kw, pct in frequencies]
            report.write_table_csv(
                self._out(f"{fig_name}.csv"), n, cfg.keyword_threshold, fig_columns, fig_rows
            )
            report.write_figure_svg(
                self._out(f"{fig_name}.svg"),
                n,
                cfg.keyword_threshold,
                f"{category.name}: postings mentioning each keyword (%)",
                [kw for kw, _ in frequencies],
                [pct for _, pct in frequencies],
            )

    def _distribution_rows(
        self, dist: gaps.CurriculumDistribution, extra: list[str] | None = None
    ) -> list[list[str]]:
        ordered = sorted(
            dist.module_pct.items(), key=lambda item: (-item[1], item[0])
        )
        rows = []
        for abbr, pct in ordered:
            rows.append(
                (extra or [])
                + [
                    self.taxonomy.by_abbreviation(abbr).name,
                    abbr,
                    f"{pct:.2f}",
                    repr(pct),
                    str(dist.modules_assigned[abbr]),
                ]
            )
        covered = round(dist.se_share_pct * dist.module_count / 100)
        rows.append(
            (extra or [])
            + [
                "Any category (software-engineering share)",
                "ALL",
                f"{dist.se_share_pct:.2f}",
                repr(dist.se_share_pct),
                str(covered),
            ]
        )
        return rows

    def analyze_curricula(self) -> None:
        cfg = self.cfg
        programs = self.programs()
        dist = gaps.curriculum_distribution(
            programs,
            self.taxonomy,
            cfg.keyword_threshold,
            stopwords=self.stopwords,
            workers=cfg.workers,
        )
        columns = ["category", "abbreviation", "module_pct", "module_pct_full", "modules_assigned"]
        rows = self._distribution_rows(dist)
        report.write_table_csv(
            self._out("table5.csv"), dist.module_count, cfg.keyword_threshold, columns, rows
        )
        report.write_table_md(
            self._out("table5.md"), dist.module_count, cfg.keyword_threshold, columns, rows
        )
        if 2 * cfg.top_k <= len(programs):
            top, bottom = gaps.split_rank_compare(
                programs,
                self.taxonomy,
                cfg.keyword_threshold,
                cfg.top_k,
                stopwords=self.stopwords,
                workers=cfg.workers,
            )
            seg_columns = ["segment"] + columns + ["module_count"]
            seg_rows = []
            for segment, seg_dist in (("top", top), ("bottom", bottom)):
                for row in self._distribution_rows(seg_dist, extra=[segment]):
                    seg_rows.append(row + [str(seg_dist.module_count)])
            total = top.module_count + bottom.module_count
            report.write_table_csv(
                self._out("table6.csv"), total, cfg.keyword_threshold, seg_columns, seg_rows
            )
            report.write_table_md(
                self._out("table6.md"), total, cfg.keyword_threshold, seg_columns, seg_rows
            )
        else:
            print(
                f"warning: rank split skipped; top_k={cfg.top_k} needs at least "
                f"{2 * cfg.top_k} programmes, got {len(programs)}",
                file=sys.stderr,
            )
        ranking = rank_modules(programs, cfg.grouping_threshold, cfg.top_k)
        fig_columns = ["module", "count"]
        fig_rows = [[cl.canonical_name, str(cl.total)] for cl in ranking.clusters]
        report.write_table_csv(
            self._out("fig2.csv"),
            ranking.total_modules,
            cfg.grouping_threshold,
            fig_columns,
            fig_rows,
        )
        report.write_figure_svg(
            self._out("fig2.svg"),
            ranking.total_modules,
            cfg.grouping_threshold,
            "Most frequent module names across programmes",
            [cl.canonical_name for cl in ranking.clusters],
            [float(cl.total) for cl in ranking.clusters],
            value_format="{:.0f}",
        )

    def gap(self) -> None:
        cfg = self.cfg
        postings = self.jobs()
        programs = self.programs()
        profiles = gaps.job_category_coverage(
            postings,
            self.taxonomy,
            cfg.keyword_threshold,
            stopwords=self.stopwords,
            workers=cfg.workers,
        )
        job_normalized = gaps.normalize_to_100(
            {p.category_abbr: p.doc_coverage_pct for p in profiles}
        )
        dist = gaps.curriculum_distribution(
            programs,
            self.taxonomy,
            cfg.keyword_threshold,
            stopwords=self.stopwords,
            workers=cfg.workers,
        )
        records = gaps.gap_map(dist.module_pct, job_normalized, cfg.tau)
        columns = [
            "category",
            "abbreviation",
            "curriculum_pct",
            "curriculum_pct_full",
            "job_pct",
            "job_pct_full",
            "gap_ratio",
            "gap_ratio_full",
            "alignment",
        ]
        rows = [
            [
                self.taxonomy.by_abbreviation(rec.category_abbr).name,
                rec.category_abbr,
                f"{rec.curriculum_pct:.2f}",
                repr(rec.curriculum_pct),
                f"{rec.job_pct:.2f}",
                repr(rec.job_pct),
                f"{rec.gap_ratio:.4f}",
                repr(rec.gap_ratio),
                rec.alignment,
            ]
            for rec in records
        ]
        n = len(postings)
        note = (
            f"Job column normalised to 100 over {n} postings; curriculum column "
            f"computed over {dist.module_count} modules; tau={cfg.tau!r}."
        )
        report.write_table_csv(self._out("table8.csv"), n, cfg.keyword_threshold, columns, rows)
        report.write_table_md(
            self._out("table8.md"), n, cfg.keyword_threshold, columns, rows, notes=[note]
        )
        report.write_figure_svg(
            self._out("fig5.svg"),
            n,
            cfg.keyword_threshold,
            "Relative curriculum-versus-industry gap by category (%)",
            [
                self.taxonomy.by_abbreviation(rec.category_abbr).name
                for rec in records
            ],
            [100.0 * rec.gap_ratio for rec in records],
            value_format="{:+.1f}",
        )
        fig_rows = [
            [rec.category_abbr, repr(rec.gap_ratio), rec.alignment] for rec in records
        ]
        report.write_table_csv(
            self._out("fig5.csv"),
            n,
            cfg.keyword_threshold,
            ["abbreviation", "gap_ratio_full", "alignment"],
            fig_rows,
        )

    def _chi_section(
        self, title: str, table: ContingencyTable, result: ChiSquareResult
    ) -> list[str]:
        lines = [f"## {title}", ""]
        header = ["rows"] + list(table.col_labels) + ["total"]
        lines.append("| " + " | ".join(header) + " |")
        lines.append("| " + " | ".join("---" for _ in header) + " |")
        for label, row, total in zip(
            table.row_labels, table.counts, table.row_totals()
        ):
            lines.append(
                "| "
                + " | ".join([label] + [str(c) for c in row] + [str(total)])
                + " |"
            )
        lines.append("")
        lines.append(
            "expected counts: "
            + "; ".join(
                f"{table.row_labels[i]}/{table.col_labels[j]}={result.expected[i][j]:.2f}"
                for i in range(len(table.row_labels))
                for j in range(len(table.col_labels))
            )
        )
        p = result.p_value
        p_text = f"{p:.4f}" if p >= 5e-5 else f"{p:.2e}"
        lines.append("")
        lines.append(f"statistic={result.statistic:.2f} df={result.df} p={p_text}")
        lines.append("")
        return lines

    def stats(self) -> None:
        cfg = self.cfg
        postings = self.jobs()
        n = len(postings)
        nature_counts = Counter(p.nature for p in postings)
        assert sum(nature_counts.values()) == n
        columns = ["nature", "count", "pct", "pct_full"]
        rows = []
        for nature in NATURES:
            count = nature_counts.get(nature, 0)
            pct = 100.0 * count / n
            rows.append([nature, str(count), f"{pct:.2f}", repr(pct)])
        report.write_table_csv(
            self._out("table9.csv"), n, cfg.keyword_threshold, columns, rows
        )
        lines = [report.header_line(n, cfg.keyword_threshold), ""]
        lines.append("# Independence tests over job metadata")
        lines.append("")
        try:
            family_table = contingency(
                postings, "family", exclude_unlabeled=cfg.exclude_unlabeled
            )
            excluded = n - family_table.grand_total()
            family_result = chi_square(family_table)
            lines.append(
                f"Family rows cover {family_table.grand_total()} of {n} postings "
                f"({excluded} unlabeled excluded)."
            )
            lines.append("")
            lines.extend(
                self._chi_section("Family x Nature", family_table, family_result)
            )
            t10_columns = ["family"] + list(family_table.col_labels) + ["total"]
            t10_rows = [
                [label] + [str(c) for c in row] + [str(total)]
                for label, row, total in zip(
                    family_table.row_labels,
                    family_table.counts,
                    family_table.row_totals(),
                )
            ]
            report.write_table_csv(
                self._out("table10.csv"),
                family_table.grand_total(),
                cfg.keyword_threshold,
                t10_columns,
                t10_rows,
            )
        except StatError as exc:
            print(f"warning: family test skipped: {exc}", file=sys.stderr)
            lines.extend(["## Family x Nature", "", f"degenerate: {exc}", ""])
        try:
            city_table = contingency(
                postings,
                "city",
                exclude_unlabeled=cfg.exclude_unlabeled,
                min_row_total=cfg.min_row_total,
            )
            city_result = chi_square(city_table)
            lines.append(
                f"City rows (total >= {cfg.min_row_total}) cover "
                f"{city_table.grand_total()} of {n} postings."
            )
            lines.append("")
            lines.extend(self._chi_section("City x Nature", city_table, city_result))
        except StatError as exc:
            print(f"warning: city test skipped: {exc}", file=sys.stderr)
            lines.extend(["## City x Nature", "", f"degenerate: {exc}", ""])
        self._out("chi2.md").write_text("\n".join(lines).rstrip() + "\n", encoding="utf-8")

    def all(self) -> None:
        self.analyze_jobs()
        self.analyze_curricula()
        self.gap()
        self.stats()


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="skillgap",
        description="Skill-taxonomy coverage analysis for job postings and curricula.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("analyze-jobs", "per-category coverage over a job corpus"),
        ("analyze-curricula", "module distribution and ranking over curricula"),
        ("gap", "curriculum-versus-industry gap table"),
        ("stats", "nature distribution and chi-square tests"),
        ("all", "run every analysis"),
    ):
        cmd = sub.add_parser(name, help=help_text)
        cmd.add_argument("--config", type=Path, help="TOML config file")
        cmd.add_argument("--jobs", type=Path, help="job corpus (CSV or JSONL)")
        cmd.add_argument("--curricula", type=Path, help="curricula JSON file")
        cmd.add_argument("--taxonomy", type=Path, help="taxonomy JSON file")
        cmd.add_argument("--stopwords", type=Path, help="stopword list file")
        cmd.add_argument("--out", type=Path, help="output directory")
        cmd.add_argument(
            "--threshold", type=float, help="keyword match threshold (default 0.95)"
        )
        cmd.add_argument(
            "--tau", type=float, help="gap alignment threshold (default 0.18)"
        )
        cmd.add_argument("--workers", type=int, help="matching worker pool size")
    return parser


def resolve_config(args: argparse.Namespace) -> RunConfig:
    cfg = load_config_file(args.config) if args.config else RunConfig()
    overrides: dict[str, object] = {}
    for flag, field_name in (
        ("jobs", "jobs"),
        ("curricula", "curricula"),
        ("taxonomy", "taxonomy"),
        ("stopwords", "stopwords"),
        ("out", "out"),
        ("threshold", "keyword_threshold"),
        ("tau", "tau"),
        ("workers", "workers"),
    ):
        value = getattr(args, flag)
        if value is not None:
            overrides[field_name] = value
    return replace(cfg, **overrides)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        runner = _Runner(resolve_config(args))
        command = args.command.replace("-", "_")
        getattr(runner, command)()
    except ConvergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (SkillgapError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
