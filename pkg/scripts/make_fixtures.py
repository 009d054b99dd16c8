#!/usr/bin/env python3
"""Regenerate the committed test fixtures under tests/fixtures/.

Everything here is deterministic (fixed RNG seed) and self-verifying: after
writing each corpus the script reloads it through the package's own loaders
and asserts the engineered counts, using an independent exact-match oracle
for keyword statistics.  At the default 0.95 threshold every keyword in the
default taxonomy is shorter than the length at which one edit becomes
admissible, so fuzzy matching degenerates to exact window equality and the
oracle is airtight.
"""

from __future__ import annotations

import csv
import itertools
import json
import random
import sys
from collections import Counter
from pathlib import Path

REPO = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(REPO / "src"))

from skillgap import (  # noqa: E402
    chi_square,
    contingency,
    curriculum_distribution,
    default_stopwords,
    default_taxonomy,
    job_category_coverage,
    load_curricula,
    load_jobs,
    rank_modules,
)
from skillgap.matching import keyword_forms  # noqa: E402
from skillgap.textnorm import normalize, remove_stopwords  # noqa: E402

FIXTURES = REPO / "tests" / "fixtures"
SEED = 20230402

TAXONOMY = default_taxonomy()
STOPWORDS = default_stopwords()

# ---------------------------------------------------------------------------
# Independent oracle: exact window equality over stopword-filtered tokens.
# ---------------------------------------------------------------------------


def oracle_counts(text: str) -> dict[str, int]:
    """Mention count per category, computed without the fuzzy matcher."""
    tokens = remove_stopwords(normalize(text), STOPWORDS).tokens
    counts: Counter[str] = Counter()
    for cat in TAXONOMY.categories:
        for keyword in cat.keywords:
            for target, size in keyword_forms(keyword):
                for i in range(len(tokens) - size + 1):
                    if " ".join(tokens[i : i + size]) == target:
                        counts[cat.abbreviation] += 1
    return dict(counts)


# ---------------------------------------------------------------------------
# Job corpus A: 106 postings with engineered per-category coverage/mentions.
# ---------------------------------------------------------------------------

DOC_COUNT = 106

# covered documents per category and total keyword mentions per category
COVERAGE_PLAN = {
    "DES": (94, 547),
    "PROG": (83, 848),
    "SYS": (70, 369),
    "DEV": (49, 213),
    "DOM": (48, 114),
    "VER": (43, 167),
    "CONF": (27, 142),
    "DATA": (23, 137),
    "FRWK": (22, 111),
    "PLT": (17, 37),
}

# how many documents mention each keyword (sums may exceed the doc count,
# because documents host several keywords of the same category)
KEYWORD_DOC_PLAN = {
    "DOM": {
        "e-commerce": 14, "fintech": 12, "banking": 10, "healthcare": 9,
        "os": 8, "virtualisation": 5, "e-learning": 4,
    },
    "SYS": {
        "web": 35, "cloud": 28, "architecture": 25, "distributed": 18,
        "microservices": 15, "real-time": 12, "large-scale": 9,
        "embedded": 8, "modularity": 4,
    },
    "PROG": {
        "javascript": 32, "python": 28, "java": 26, "c#": 14,
        "typescript": 12, "c++": 10, "php": 8, "html": 8, "css": 7,
        "ruby": 5, "kotlin": 4, "powershell": 3, "bash": 3, "rust": 2,
    },
    "DATA": {
        "database": 15, "sql": 14, "mysql": 6, "postgresql": 5, "nosql": 4,
        "mongodb": 4, "sqlite": 2, "rdbms": 2, "couchbase": 1, "cassandra": 1,
    },
    "PLT": {
        "compiler": 5, "formal": 4, "syntax": 4, "parsers": 3,
        "generation": 3, "interpreter": 3, "lexical": 2, "semantics": 2,
        "correctness": 2,
    },
    "FRWK": {
        "react": 21, "angular": 6, "asp.net": 4, "django": 4, "express": 3,
        "spring-boot": 3, "flutter": 2, "laravel": 2, "jquery": 2, "xamarin": 1,
    },
    "CONF": {
        "git": 20, "github": 12, "docker": 11, "kubernetes": 8, "gitlab": 6,
        "ansible": 3, "svn": 2, "mercurial": 1, "perforce": 1,
    },
    "DES": {
        "design": 60, "requirements": 45, "implementation": 40, "planning": 30,
        "specification": 20, "uml": 12, "prototyping": 8, "modelling": 8,
    },
    "DEV": {
        "agile": 30, "scrum": 22, "devops": 15, "ci/cd": 14, "automation": 12,
        "oop": 8, "tdd": 7, "refactoring": 5, "risk": 3, "flowcharts": 1,
    },
    "VER": {"testing": 38, "validation": 12, "verification": 10},
}

# filler vocabulary verified not to collide with any taxonomy keyword
FILLER_SENTENCES = [
    "Join our friendly team and help us deliver great products to customers.",
    "You will collaborate closely with colleagues across the business.",
    "We offer excellent benefits, training budget and career progression.",
    "The role suits somebody who enjoys ownership and clear communication.",
    "Our clients range from small firms to household names.",
    "You will help us grow a dependable, well supported product suite.",
    "A supportive environment with regular knowledge sharing sessions.",
    "We value curiosity, empathy and a pragmatic attitude.",
]

TITLES_ENGINEER = [
    "Software Engineer", "Senior Software Engineer", "Backend Engineer",
    "Platform Engineer", "DevOps Engineer", "Lead Engineer",
]
TITLES_DEVELOPER = [
    "Software Developer", "Full Stack Developer", "Backend Developer",
    "Junior Developer", "Application Developer",
]
TITLES_OTHER = [
    "Product Manager", "IT Support Analyst", "Solutions Architect",
    "Data Analyst", "Technical Consultant",
]

CITIES_A = ["London", "Manchester", "Leeds", "Bristol", "Glasgow"]
SALARIES = [
    "£35,000 - £45,000", "£45,000 - £60,000", "£60,000 - £75,000",
    "Competitive", "", "£500 per day",
]
DATES = [f"2023-03-{d:02d}" for d in range(6, 32)] + [
    f"2023-04-{d:02d}" for d in range(1, 21)
]


def plan_keyword_occurrences(rng: random.Random) -> list[list[str]]:
    """Per-document keyword occurrence lists implementing COVERAGE_PLAN."""
    occurrences: list[list[str]] = [[] for _ in range(DOC_COUNT)]
    for abbr, (covered_target, mention_target) in COVERAGE_PLAN.items():
        budgets = dict(KEYWORD_DOC_PLAN[abbr])
        assert sum(budgets.values()) >= covered_target
        assert all(b <= covered_target for b in budgets.values())
        covered = sorted(rng.sample(range(DOC_COUNT), covered_target))
        # phase 1: every covered document gets one keyword of the category
        holders: dict[str, set[int]] = {kw: set() for kw in budgets}
        first_kw: dict[int, str] = {}
        for doc in covered:
            kw = max(budgets, key=lambda k: (budgets[k], k))
            assert budgets[kw] > 0
            budgets[kw] -= 1
            holders[kw].add(doc)
            first_kw[doc] = kw
            occurrences[doc].append(kw)
        # phase 2: place the remaining per-keyword document budgets
        for kw in sorted(budgets, key=lambda k: (-budgets[k], k)):
            free = [doc for doc in covered if doc not in holders[kw]]
            rng.shuffle(free)
            take = budgets[kw]
            assert take <= len(free), (abbr, kw, take, len(free))
            for doc in free[:take]:
                holders[kw].add(doc)
                occurrences[doc].append(kw)
        placed = sum(len(h) for h in holders.values())
        # phase 3: repeat mentions until the category mention total is reached
        extra = mention_target - placed
        assert extra >= 0, (abbr, extra)
        for i in range(extra):
            doc = covered[i % len(covered)]
            occurrences[doc].append(first_kw[doc])
    return occurrences


def build_jobs_a(rng: random.Random) -> list[dict[str, str]]:
    occurrences = plan_keyword_occurrences(rng)
    rows = []
    for i in range(DOC_COUNT):
        sentences = [FILLER_SENTENCES[i % len(FILLER_SENTENCES)]]
        kws = occurrences[i]
        rng.shuffle(kws)
        for start in range(0, len(kws), 6):
            chunk = kws[start : start + 6]
            sentences.append("You will work with " + ", ".join(chunk) + ".")
        sentences.append(FILLER_SENTENCES[(i + 3) % len(FILLER_SENTENCES)])
        description = " ".join(sentences)
        if i % 17 == 3:
            title = TITLES_OTHER[(i // 17) % len(TITLES_OTHER)]
        elif i % 3 == 1:
            title = TITLES_DEVELOPER[i % len(TITLES_DEVELOPER)]
        else:
            title = TITLES_ENGINEER[i % len(TITLES_ENGINEER)]
        city = CITIES_A[i % len(CITIES_A)]
        if i % 6 == 2:
            location = f"{city} (Remote)"
        elif i % 6 == 5:
            location = f"{city} (Hybrid)"
        else:
            location = city
        rows.append(
            {
                "id": f"a{i + 1:04d}",
                "title": title,
                "location": location,
                "salary": SALARIES[i % len(SALARIES)],
                "description": description,
                "date": DATES[i % len(DATES)],
            }
        )
    return rows


def verify_jobs_a(path: Path) -> None:
    postings, diags = load_jobs(path)
    assert not diags and len(postings) == DOC_COUNT
    per_doc = [oracle_counts(p.description) for p in postings]
    for abbr, (covered_target, mention_target) in COVERAGE_PLAN.items():
        covered = sum(1 for c in per_doc if abbr in c)
        mentions = sum(c.get(abbr, 0) for c in per_doc)
        assert covered == covered_target, (abbr, covered, covered_target)
        assert mentions == mention_target, (abbr, mentions, mention_target)
    # keyword document counts (drives the per-keyword frequency figures)
    for abbr, plan in KEYWORD_DOC_PLAN.items():
        for kw, expected in plan.items():
            forms = keyword_forms(kw)
            n_docs = 0
            for p in postings:
                tokens = remove_stopwords(normalize(p.description), STOPWORDS).tokens
                found = any(
                    " ".join(tokens[i : i + size]) == target
                    for target, size in forms
                    for i in range(len(tokens) - size + 1)
                )
                n_docs += 1 if found else 0
            assert n_docs == expected, (kw, n_docs, expected)
    # the fuzzy pipeline at 0.95 must agree with the oracle exactly
    profiles = job_category_coverage(postings, TAXONOMY, 0.95, stopwords=STOPWORDS)
    for profile in profiles:
        covered_target, mention_target = COVERAGE_PLAN[profile.category_abbr]
        assert round(profile.doc_coverage_pct * DOC_COUNT / 100) == covered_target
        assert profile.total_mentions == mention_target
    # the stats command needs a non-degenerate corpus
    families = Counter(p.family for p in postings)
    natures = Counter(p.nature for p in postings)
    assert len(families) == 3 and len(natures) == 3, (families, natures)
    chi_square(contingency(postings, "family"))
    chi_square(contingency(postings, "city", min_row_total=5))
    print(f"jobs corpus A ok: {path.name}, natures={dict(natures)}")


# ---------------------------------------------------------------------------
# Job corpus B: 300 postings with engineered nature/family/city tables.
# ---------------------------------------------------------------------------

# city -> (onsite, remote, hybrid); the eleven rows with at least five roles
# produce a chi-square statistic of 182.1199 on 20 degrees of freedom
CITY_NATURE_PLAN = {
    "London": (59, 1, 13),
    "Manchester": (24, 1, 0),
    "Birmingham": (1, 4, 17),
    "Leeds": (19, 0, 0),
    "Bristol": (9, 0, 8),
    "Glasgow": (8, 7, 0),
    "Edinburgh": (13, 0, 1),
    "Liverpool": (7, 1, 5),
    "Newcastle": (4, 6, 3),
    "Sheffield": (10, 1, 1),
    "Cambridge": (1, 10, 0),
    # below the five-role cut-off used by the city test
    "York": (3, 0, 1),
    "Derby": (2, 1, 0),
    "Luton": (2, 0, 1),
    # postings whose location names no city at all
    None: (1, 46, 9),
}

FAMILY_NATURE_PLAN = {
    "Engineer": (110, 41, 37),
    "Developer": (48, 36, 21),
    "Other": (5, 1, 1),
}

NATURE_TOTALS = (163, 78, 59)

SAFE_DESCRIPTIONS = [
    "A varied role supporting our growing product portfolio.",
    "Help the team deliver dependable releases for our customers.",
    "You will own features end to end alongside supportive colleagues.",
    "Work on meaningful problems with modern tooling and good coffee.",
    "An established company with a friendly, collaborative culture.",
    "Plenty of room to learn, mentor and progress within the team.",
]


def build_jobs_b(rng: random.Random) -> list[dict[str, str]]:
    natures = ("Onsite", "Remote", "Hybrid")
    for j, nature in enumerate(natures):
        assert sum(plan[j] for plan in CITY_NATURE_PLAN.values()) == NATURE_TOTALS[j]
        assert sum(plan[j] for plan in FAMILY_NATURE_PLAN.values()) == NATURE_TOTALS[j]
    triples: list[tuple[str | None, str, str]] = []
    for j, nature in enumerate(natures):
        city_slots = [
            city for city, plan in CITY_NATURE_PLAN.items() for _ in range(plan[j])
        ]
        family_slots = [
            fam for fam, plan in FAMILY_NATURE_PLAN.items() for _ in range(plan[j])
        ]
        rng.shuffle(city_slots)
        rng.shuffle(family_slots)
        triples.extend(
            (city, family, nature) for city, family in zip(city_slots, family_slots)
        )
    rng.shuffle(triples)
    rows = []
    for i, (city, family, nature) in enumerate(triples):
        if family == "Engineer":
            title = TITLES_ENGINEER[i % len(TITLES_ENGINEER)]
        elif family == "Developer":
            title = TITLES_DEVELOPER[i % len(TITLES_DEVELOPER)]
        else:
            title = TITLES_OTHER[i % len(TITLES_OTHER)]
        if nature == "Onsite":
            location = city or ""
        elif nature == "Remote":
            location = f"{city} (Remote)" if city else "Remote"
        else:
            location = f"{city} (Hybrid)" if city else "Hybrid"
        rows.append(
            {
                "id": f"b{i + 1:04d}",
                "title": title,
                "location": location,
                "salary": SALARIES[i % len(SALARIES)],
                "description": SAFE_DESCRIPTIONS[i % len(SAFE_DESCRIPTIONS)],
                "date": DATES[i % len(DATES)],
            }
        )
    return rows


def verify_jobs_b(path: Path) -> None:
    postings, diags = load_jobs(path)
    assert not diags and len(postings) == 300
    natures = Counter(p.nature for p in postings)
    assert (natures["Onsite"], natures["Remote"], natures["Hybrid"]) == NATURE_TOTALS
    family_table = contingency(postings, "family", exclude_unlabeled=True)
    assert family_table.row_labels == ("Engineer", "Developer")
    assert family_table.counts == (
        FAMILY_NATURE_PLAN["Engineer"],
        FAMILY_NATURE_PLAN["Developer"],
    )
    family_result = chi_square(family_table)
    assert abs(family_result.statistic - 6.0403) < 0.01, family_result.statistic
    city_table = contingency(postings, "city", exclude_unlabeled=True, min_row_total=5)
    assert len(city_table.row_labels) == 11
    for label, row in zip(city_table.row_labels, city_table.counts):
        assert row == CITY_NATURE_PLAN[label], (label, row)
    city_result = chi_square(city_table)
    assert abs(city_result.statistic - 182.12) < 0.01, city_result.statistic
    # descriptions stay free of keyword and work-mode vocabulary
    for p in postings:
        assert not oracle_counts(p.description)
        low = p.description.lower()
        assert "remote" not in low and "hybrid" not in low
    print(
        f"jobs corpus B ok: {path.name}, family chi2={family_result.statistic:.4f}, "
        f"city chi2={city_result.statistic:.4f}"
    )


def write_jobs(path: Path, rows: list[dict[str, str]]) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.DictWriter(
            fh, fieldnames=["id", "title", "location", "salary", "description", "date"]
        )
        writer.writeheader()
        writer.writerows(rows)


# ---------------------------------------------------------------------------
# Curricula corpus: 30 programmes, 1300 modules, engineered distribution.
# ---------------------------------------------------------------------------

PROGRAMME_COUNT = 30
MODULES_PER_PROGRAMME = {rank: (43 if rank <= 20 else 44) for rank in range(1, 31)}
TOTAL_MODULES = 1300

# modules assigned per category, split between ranks 1-15 and ranks 16-30
CATEGORY_MODULE_PLAN = {
    "DES": (106, 108),
    "PROG": (120, 114),
    "SYS": (53, 54),
    "DOM": (22, 22),
    "DEV": (80, 81),
    "DATA": (83, 84),
    "FRWK": (51, 52),
    "CONF": (45, 46),
    "PLT": (36, 37),
    "VER": (53, 54),
}
COVERED_MODULES = (246, 244)  # modules hitting at least one category, per half

# (name, description, categories, set of ranks carrying the module)
_OOP_RANKS = {r for r in range(1, 31) if r % 5 != 2}
_DBS_RANKS = {r for r in range(1, 31) if r % 4 != 1}
_TST_RANKS = {r for r in range(1, 31) if r % 3 != 0}
_WEB_RANKS = {r for r in range(1, 31) if r % 5 in (1, 2, 3)}
CORE_MODULES = [
    ("Software Engineering Design", "Lifecycle models from idea to delivery.",
     {"DES"}, set(range(1, 31))),
    ("Mathematics for Computer Science", "Sets, proofs, induction and counting.",
     set(), set(range(1, 31)) - {7, 19}),
    ("Artificial Intelligence", "Search, knowledge representation and learning.",
     set(), set(range(1, 31)) - {3, 11, 22, 28}),
    ("Object Oriented Programming", "Classes, inheritance and encapsulation in python.",
     {"PROG"}, _OOP_RANKS),
    ("Database Systems", "Relational theory, sql and transactions.",
     {"DATA"}, _DBS_RANKS),
    ("Software Testing", "Unit, integration and acceptance practice.",
     {"VER"}, _TST_RANKS),
    ("Web Application Development", "Building useful applications for the web.",
     {"SYS"}, _WEB_RANKS),
    ("Computer Networks", "Protocol stacks, routing and congestion.",
     set(), {r for r in range(1, 31) if r % 2 == 1} | {28, 30}),
    ("Operating Systems", "Processes, scheduling and memory management.",
     set(), {r for r in range(1, 31) if r % 2 == 0} | {1}),
    ("Cyber Security Fundamentals", "Threats, controls and safe habits.",
     set(), {r for r in range(1, 31) if r % 2 == 1} - {29}),
]

# spelling variants folded into the most common module name by the grouping
SE_DESIGN_VARIANTS = {
    5: "Software Engineering & Design",
    12: "Software Engineering & Design",
    21: "Software Engineering & Design",
    27: "Software Engineering & Design",
    9: "Softwere Engineering Design",
    24: "Softwere Engineering Design",
}
OOP_VARIANT_RANKS = {4, 19, 26}  # spelled with a hyphen there

# reusable module names; every pair must stay clearly below the grouping
# threshold so clusters in the ranking are exact name groups (validated below)
SYNTH_NAME_POOL = [
    "Discrete Mathematics", "Linear Algebra", "Multivariable Calculus",
    "Probability Theory", "Statistical Inference", "Numerical Methods",
    "Mathematical Logic", "Graph Theory", "Combinatorics", "Number Theory",
    "Cryptography", "Quantum Computing", "Signal Processing",
    "Image Understanding", "Speech Technology", "Computer Vision",
    "Machine Learning Foundations", "Neural Computation",
    "Data Mining Concepts", "Information Retrieval",
    "Knowledge Representation", "Natural Language Understanding",
    "Robotics Laboratory", "Control Engineering", "Digital Electronics",
    "Microprocessor Systems", "Parallel Computing",
    "High Performance Computing", "Theory of Computation",
    "Human Computer Interaction", "User Experience Studio",
    "Accessibility and Inclusion", "Professional Practice",
    "Ethics in Technology", "Law and Regulation", "Entrepreneurship",
    "Business Analysis", "Project Management", "Health Informatics",
    "Bioinformatics", "Computational Biology", "Game Studio",
    "Interactive Entertainment", "Computer Graphics", "Animation Production",
    "Virtual Worlds", "Augmented Reality", "Mobile Computing",
    "Wireless Communications", "Network Security", "Digital Forensics",
    "Security Operations", "Server Administration", "Internet Technologies",
    "Blockchain Applications", "Concurrent Programming",
    "Functional Programming", "Logic Programming", "Declarative Languages",
    "Programming Paradigms", "Software Maintenance", "Systems Analysis",
    "Enterprise Computing", "Information Systems", "Data Structures",
    "Algorithm Engineering", "Foundations of Computing",
    "Operations Research", "Optimisation Techniques",
    "Stochastic Simulation", "Scientific Computation",
    "Language Engineering", "Research Skills", "Dissertation Preparation",
    "Individual Investigation", "Industrial Experience", "Academic Writing",
    "Study Abroad Module", "Peer Mentoring", "Community Outreach",
    "Environmental Computing", "Sustainable Technology",
    "Financial Mathematics", "Actuarial Science", "Cognitive Psychology",
    "Behavioural Economics", "Digital Marketing", "Supply Chain Analytics",
    "Renewable Energy", "Astrophysics", "Materials Science",
    "Organic Chemistry", "Cell Biology", "Genetics and Genomics",
    "Neuroscience Foundations", "Philosophy of Mind",
    "Introduction to Linguistics", "Media Production", "Sound Synthesis",
    "Music Technology", "Creative Coding", "Physical Computing",
    "Television Studies", "Acoustics and Vibration", "Thermodynamics",
    "Fluid Dynamics", "Classical Mechanics", "Electromagnetism",
    "Circuit Analysis", "Instrumentation", "Mechatronics", "Avionics",
    "Surveying", "Volcanology", "Meteorology", "Oceanography",
    "Epidemiology", "Immunology", "Pharmacology", "Econometrics",
    "Microeconomics", "Strategic Decision Theory",
]

UNIVERSITIES = [
    "Ashworth University", "Bellfield University", "Calderbrook University",
    "Danmere University", "Eastvale University", "Fenwick University",
    "Garside University", "Hartwell University", "Inglewood University",
    "Jessop University", "Kelsmere University", "Lanford University",
    "Marwick University", "Northholt University", "Ottersley University",
    "Pembrey University", "Quarrington University", "Ravenside University",
    "Stanbourne University", "Thornbury University", "Underhill University",
    "Verely University", "Westcroft University", "Exley University",
    "Yarwood University", "Zetland University", "Ambleforth University",
    "Birchdown University", "Corfield University", "Dunthorpe University",
]

SYNTH_DESC_FILLER = [
    "Weekly problem classes support the lecture series.",
    "Assessment combines coursework and a written examination.",
    "Students present their findings in a short seminar.",
    "The module builds on first year material.",
    "Group work develops collaboration and presentation habits.",
    None,
    "Includes guest lectures from visiting staff.",
    None,
]


def validate_name_pool() -> None:
    """Pool names must not fuzzy-merge with each other or the core modules."""
    from skillgap.matching import similarity

    pool = [normalize(n).text() for n in SYNTH_NAME_POOL]
    assert len(set(pool)) == len(pool), "duplicate pool names"
    anchors = [normalize(n).text() for n, _, _, _ in CORE_MODULES]
    anchors += ["softwere engineering design", "object-oriented programming"]
    for i, a in enumerate(pool):
        assert not oracle_counts(a), (a, "pool name hits a category")
        for b in pool[i + 1 :] + anchors:
            s = similarity(a, b)
            assert s < 0.72, (a, b, s)


def build_curricula(rng: random.Random) -> list[dict]:
    halves = {0: range(1, 16), 1: range(16, 31)}
    programmes: dict[int, list[dict]] = {rank: [] for rank in range(1, 31)}
    core_per_rank: Counter[int] = Counter()
    for name, desc, cats, ranks in CORE_MODULES:
        for rank in sorted(ranks):
            actual_name = name
            if name == "Software Engineering Design":
                actual_name = SE_DESIGN_VARIANTS.get(rank, name)
            elif name == "Object Oriented Programming" and rank in OOP_VARIANT_RANKS:
                actual_name = "Object-Oriented Programming"
            programmes[rank].append(
                {"name": actual_name, "description": desc, "_cats": set(cats)}
            )
            core_per_rank[rank] += 1
    validate_name_pool()
    name_iter = itertools.cycle(SYNTH_NAME_POOL)
    core_covered = sum(
        len(ranks & set(halves[h])) for _, _, cats, ranks in CORE_MODULES if cats
        for h in (0, 1)
    )
    assert core_covered == 114
    keyword_cycle = {
        cat.abbreviation: list(cat.keywords) for cat in TAXONOMY.categories
    }
    cycle_pos = {abbr: 0 for abbr in keyword_cycle}
    for h in (0, 1):
        ranks = list(halves[h])
        core_cov = sum(
            1
            for _, _, cats, rset in CORE_MODULES
            if cats
            for rank in rset
            if rank in set(ranks)
        )
        synth_covered_target = COVERED_MODULES[h] - core_cov
        synth_total = sum(MODULES_PER_PROGRAMME[r] for r in ranks) - sum(
            core_per_rank[r] for r in ranks
        )
        budgets = {
            abbr: plan[h] for abbr, plan in CATEGORY_MODULE_PLAN.items()
        }
        for _, _, cats, rset in CORE_MODULES:
            for abbr in cats:
                budgets[abbr] -= sum(1 for rank in rset if rank in set(ranks))
        assert all(b >= 0 for b in budgets.values()), budgets
        # category sets for the covered synthetic modules: spread each
        # category budget over the least-loaded modules
        covered_sets: list[set[str]] = [set() for _ in range(synth_covered_target)]
        for abbr in sorted(budgets, key=lambda a: (-budgets[a], a)):
            order = sorted(range(len(covered_sets)), key=lambda i: (len(covered_sets[i]), i))
            for i in order[: budgets[abbr]]:
                covered_sets[i].add(abbr)
        assert all(covered_sets), "every covered module needs a category"
        # build the synthetic module records and deal them to programmes
        synth_records = []
        for cats in covered_sets:
            synth_records.append(cats)
        for _ in range(synth_total - synth_covered_target):
            synth_records.append(set())
        rng.shuffle(synth_records)
        rank_cycle = [r for r in ranks for _ in range(MODULES_PER_PROGRAMME[r] - core_per_rank[r])]
        assert len(rank_cycle) == len(synth_records)
        for slot, (rank, cats) in enumerate(zip(rank_cycle, synth_records)):
            name = next(name_iter)
            if cats:
                parts = []
                for abbr in sorted(cats):
                    kws = keyword_cycle[abbr]
                    kw = kws[cycle_pos[abbr] % len(kws)]
                    cycle_pos[abbr] += 1
                    parts.append(kw)
                desc = "Covers " + ", ".join(parts) + " in applied coursework."
            else:
                desc = SYNTH_DESC_FILLER[slot % len(SYNTH_DESC_FILLER)]
            record = {"name": name, "_cats": cats}
            if desc is not None:
                record["description"] = desc
            programmes[rank].append(record)
    result = []
    for rank in range(1, 31):
        modules = programmes[rank]
        assert len(modules) == MODULES_PER_PROGRAMME[rank]
        rng.shuffle(modules)
        result.append(
            {
                "university": UNIVERSITIES[rank - 1],
                "rank": rank,
                "programme": "BSc Computer Science",
                "modules": [
                    {k: v for k, v in mod.items() if not k.startswith("_")}
                    for mod in modules
                ],
            }
        )
    return result


def verify_curricula(path: Path) -> None:
    programs, diags = load_curricula(path)
    assert not diags and len(programs) == PROGRAMME_COUNT
    assert sum(len(p.modules) for p in programs) == TOTAL_MODULES
    halves = {
        0: [p for p in programs if p.rank <= 15],
        1: [p for p in programs if p.rank > 15],
    }
    for h in (0, 1):
        per_module = []
        for program in halves[h]:
            for module in program.modules:
                text = module.name + (
                    f" {module.description}" if module.description else ""
                )
                per_module.append(oracle_counts(text))
        for abbr, plan in CATEGORY_MODULE_PLAN.items():
            got = sum(1 for c in per_module if abbr in c)
            assert got == plan[h], (abbr, h, got, plan[h])
        covered = sum(1 for c in per_module if c)
        assert covered == COVERED_MODULES[h], (h, covered)
    # pipeline agreement at the default threshold
    dist = curriculum_distribution(programs, TAXONOMY, 0.95, stopwords=STOPWORDS)
    assert dist.module_count == TOTAL_MODULES
    for abbr, plan in CATEGORY_MODULE_PLAN.items():
        assert dist.modules_assigned[abbr] == plan[0] + plan[1]
    assert round(dist.se_share_pct * TOTAL_MODULES / 100) == sum(COVERED_MODULES)
    ranking = rank_modules(programs, 0.75, top_n=10)
    got = [(c.canonical_name, c.total) for c in ranking.clusters]
    want = [
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
    assert got == want, got
    print(
        f"curricula ok: {path.name}, modules={dist.module_count}, "
        f"se_share={dist.se_share_pct:.2f}%"
    )


# ---------------------------------------------------------------------------
# HTML snapshot fixture.
# ---------------------------------------------------------------------------

LISTING_HTML = """<!DOCTYPE html>
<html>
<head>
<title>Senior Python Engineer - Careers</title>
<style>.job-header { color: #222; }</style>
<script>var decoy = "<div class='job-description'>not this</div>";</script>
</head>
<body>
<div id="page">
  <header class="job-header"><h1 class="job-title">Senior  Python
  Engineer</h1></header>
  <section id="listing">
    <span class="location">Leeds (Hybrid)</span>
    <div class="salary-range">&pound;65,000 &ndash; &pound;80,000</div>
    <div class="job-description">
      <p>We build <b>distributed</b> services in python with a modern ci/cd pipeline.</p>
      <p>You will collaborate on architecture, design and testing.</p>
    </div>
    <p class="posted">2023-03-18</p>
  </section>
  <footer><span class="location">Head office: Atlantis</span></footer>
</div>
</body>
</html>
"""

EXTRACT_CONFIG = {
    "title": "h1.job-title",
    "city": "#listing span.location",
    "salary": "div.salary-range",
    "description": "div.job-description",
    "date": "p.posted",
}

# JobPosting fields expected from the snapshot (id supplied by the caller)
LISTING_EXPECTED = {
    "id": "snapshot",
    "title": "Senior Python Engineer",
    "description": (
        "We build distributed services in python with a modern ci/cd pipeline. "
        "You will collaborate on architecture, design and testing."
    ),
    "nature": "Hybrid",
    "family": "Engineer",
    "city": "Leeds",
    "salary_text": "£65,000 – £80,000",
    "collected_on": "2023-03-18",
}


def main() -> None:
    FIXTURES.mkdir(parents=True, exist_ok=True)
    rng = random.Random(SEED)
    jobs_a = build_jobs_a(rng)
    write_jobs(FIXTURES / "jobs106.csv", jobs_a)
    verify_jobs_a(FIXTURES / "jobs106.csv")

    jobs_b = build_jobs_b(rng)
    write_jobs(FIXTURES / "jobs300.csv", jobs_b)
    verify_jobs_b(FIXTURES / "jobs300.csv")

    curricula = build_curricula(rng)
    (FIXTURES / "curricula30.json").write_text(
        json.dumps(curricula, indent=1, ensure_ascii=False) + "\n", encoding="utf-8"
    )
    verify_curricula(FIXTURES / "curricula30.json")

    (FIXTURES / "listing_page.html").write_text(LISTING_HTML, encoding="utf-8")
    (FIXTURES / "extract_config.json").write_text(
        json.dumps(EXTRACT_CONFIG, indent=2) + "\n", encoding="utf-8"
    )
    (FIXTURES / "listing_expected.json").write_text(
        json.dumps(LISTING_EXPECTED, indent=2, ensure_ascii=False) + "\n",
        encoding="utf-8",
    )
    print("fixtures written to", FIXTURES)


if __name__ == "__main__":
    main()
