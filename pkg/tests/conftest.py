"""Shared fixtures: canned corpora, the default taxonomy, and a CLI runner."""

from __future__ import annotations

import io
from contextlib import redirect_stderr, redirect_stdout
from pathlib import Path

import pytest

from skillgap.cli import main
from skillgap.ingest import load_curricula, load_jobs
from skillgap.taxonomy import default_taxonomy
from skillgap.textnorm import default_stopwords

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture(scope="session")
def taxonomy():
    return default_taxonomy()


@pytest.fixture(scope="session")
def stopwords():
    return default_stopwords()


@pytest.fixture(scope="session")
def jobs106():
    postings, diagnostics = load_jobs(FIXTURES / "jobs106.csv")
    assert not diagnostics
    return postings


@pytest.fixture(scope="session")
def jobs300():
    postings, diagnostics = load_jobs(FIXTURES / "jobs300.csv")
    assert not diagnostics
    return postings


@pytest.fixture(scope="session")
def curricula30():
    programs, diagnostics = load_curricula(FIXTURES / "curricula30.json")
    assert not diagnostics
    return programs


@pytest.fixture
def run_cli():
    """Invoke the CLI in-process; returns (exit code, stdout, stderr)."""

    def run(argv: list[str]) -> tuple[int, str, str]:
        out, err = io.StringIO(), io.StringIO()
        with redirect_stdout(out), redirect_stderr(err):
            code = main(argv)
        return code, out.getvalue(), err.getvalue()

    return run
