"""Shared test configuration and fixtures for krank tests."""  # noqa: B101

import json
import os
from pathlib import Path

import pytest

# ============================================================================
# Test Markers
# ============================================================================


def pytest_configure(config):
    """Register custom pytest markers."""
    config.addinivalue_line(
        "markers", "unit: mark test as a unit test (fast, isolated)"
    )
    config.addinivalue_line(
        "markers",
        "integration: mark test as an integration test (runs the CLI end to end)",
    )
    config.addinivalue_line("markers", "slow: mark test as slow-running")


# ============================================================================
# Fixtures - Partition Tables
# ============================================================================


@pytest.fixture(scope="session")
def small_table():
    """p(0..1000)."""
    from krank.engine import build_partition_table

    return build_partition_table(1_000)


@pytest.fixture(scope="session")
def medium_table():
    """p(0..10000), enough for the quick acceptance grids."""
    from krank.engine import build_partition_table

    return build_partition_table(10_000)


@pytest.fixture(scope="session")
def large_table():
    """p(0..100000), the full acceptance grids."""
    from krank.engine import build_partition_table

    return build_partition_table(100_000)


# ============================================================================
# Fixtures - Files
# ============================================================================


@pytest.fixture
def spec_file(tmp_path):
    """Write a sweep spec file and return its path."""

    def _write(text: str, name: str = "sweep.spec") -> Path:
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return path

    return _write


@pytest.fixture
def config_file(tmp_path):
    """Write a krank-config.json and return its path as a string."""

    def _write(config: dict, name: str = "krank-config.json") -> str:
        path = tmp_path / name
        path.write_text(json.dumps(config))
        return str(path)

    return _write


# ============================================================================
# Fixtures - Environment and State
# ============================================================================


@pytest.fixture
def clean_env(monkeypatch):
    """Provide an environment without KRANK_CONFIG."""
    monkeypatch.delenv("KRANK_CONFIG", raising=False)
    yield os.environ.copy()


@pytest.fixture
def isolated_filesystem(tmp_path, monkeypatch, clean_env):
    """Run in an empty directory with an empty home, so no config is discovered."""
    home = tmp_path / "home"
    work = tmp_path / "work"
    home.mkdir()
    work.mkdir()
    monkeypatch.setenv("HOME", str(home))
    monkeypatch.chdir(work)
    yield work
