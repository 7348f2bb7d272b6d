from __future__ import annotations

from pathlib import Path

import pytest

from app.models.surface import Configuration
from app.services.fixtures import load_fixture

ROOT = Path(__file__).resolve().parents[1]
FIXTURES_DIR = ROOT / "app" / "data" / "fixtures"
GOLDEN_DIR = ROOT / "app" / "data" / "golden"


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES_DIR


@pytest.fixture
def golden_dir() -> Path:
    return GOLDEN_DIR


@pytest.fixture
def fixture():
    """Load a shipped configuration by name."""

    def _load(name: str) -> Configuration:
        return load_fixture(name, FIXTURES_DIR)

    return _load
