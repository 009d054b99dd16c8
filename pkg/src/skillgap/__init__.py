"""skillgap: map job postings and curricula onto a skill taxonomy.

The package matches free-text job descriptions and university module
catalogues against a configurable keyword taxonomy using normalised
Levenshtein similarity over sliding token windows, quantifies the
curriculum-versus-industry gap per skill category, and runs chi-square
independence tests over job metadata.
"""

from .errors import (
    ConfigError,
    ConvergenceError,
    ExtractionError,
    SkillgapError,
    StatError,
)
from .gaps import (
    ALIGNED,
    OVERVALUED,
    UNDERVALUED,
    CategoryProfile,
    CurriculumDistribution,
    GapRecord,
    curriculum_distribution,
    gap_map,
    job_category_coverage,
    keyword_frequency,
    normalize_to_100,
    split_rank_compare,
)
from .ingest import (
    FAMILIES,
    FAMILY_DEVELOPER,
    FAMILY_ENGINEER,
    FAMILY_OTHER,
    NATURE_HYBRID,
    NATURE_ONSITE,
    NATURE_REMOTE,
    NATURES,
    CurriculumProgram,
    HtmlExtractConfig,
    JobPosting,
    ModuleRecord,
    RowDiagnostic,
    classify_family,
    classify_nature,
    extract_fields_from_html,
    extract_job_from_html,
    load_curricula,
    load_extract_config,
    load_jobs,
    write_jobs_csv,
)
from .matching import (
    MatchHit,
    ModuleCluster,
    categorize_document,
    group_module_names,
    levenshtein,
    match_keywords,
    similarity,
)
from .stats import (
    ChiSquareResult,
    ContingencyTable,
    chi_square,
    chisq_sf,
    contingency,
)
from .taxonomy import (
    SkillCategory,
    SkillGroup,
    SkillTaxonomy,
    default_taxonomy,
    load_taxonomy,
    write_taxonomy,
)
from .textnorm import (
    TokenStream,
    default_stopwords,
    load_stopwords,
    ngrams,
    normalize,
    remove_stopwords,
)
from .trends import ModuleRanking, rank_modules

__version__ = "0.1.0"

__all__ = [
    "ALIGNED",
    "CategoryProfile",
    "ChiSquareResult",
    "ConfigError",
    "ContingencyTable",
    "ConvergenceError",
    "CurriculumDistribution",
    "CurriculumProgram",
    "ExtractionError",
    "FAMILIES",
    "FAMILY_DEVELOPER",
    "FAMILY_ENGINEER",
    "FAMILY_OTHER",
    "GapRecord",
    "HtmlExtractConfig",
    "JobPosting",
    "MatchHit",
    "ModuleCluster",
    "ModuleRanking",
    "ModuleRecord",
    "NATURES",
    "NATURE_HYBRID",
    "NATURE_ONSITE",
    "NATURE_REMOTE",
    "OVERVALUED",
    "RowDiagnostic",
    "SkillCategory",
    "SkillGroup",
    "SkillTaxonomy",
    "SkillgapError",
    "StatError",
    "TokenStream",
    "UNDERVALUED",
    "categorize_document",
    "chi_square",
    "chisq_sf",
    "classify_family",
    "classify_nature",
    "contingency",
    "curriculum_distribution",
    "default_stopwords",
    "default_taxonomy",
    "extract_fields_from_html",
    "extract_job_from_html",
    "gap_map",
    "group_module_names",
    "job_category_coverage",
    "keyword_frequency",
    "levenshtein",
    "load_curricula",
    "load_extract_config",
    "load_jobs",
    "load_stopwords",
    "load_taxonomy",
    "match_keywords",
    "ngrams",
    "normalize",
    "normalize_to_100",
    "rank_modules",
    "remove_stopwords",
    "similarity",
    "split_rank_compare",
    "write_jobs_csv",
    "write_taxonomy",
]
