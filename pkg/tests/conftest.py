# tests/conftest.py

import pytest
import sys
import os
import numpy as np
from sqlalchemy import create_engine
from sqlalchemy.orm import sessionmaker

# Add parent directory to path
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from energy.table import GammaTable
from services.database import Base


def aa_table(value: int = 5) -> GammaTable:
    """Γ[A][A] = value, every other entry 1"""
    rows = [[1] * 4 for _ in range(4)]
    rows[0][0] = value
    return GammaTable(entries=rows)


def random_tables(count: int, seed: int, high: int = 6):
    rng = np.random.default_rng(seed)
    return [GammaTable(entries=rng.integers(0, high + 1, size=(4, 4)).tolist()) for _ in range(count)]


@pytest.fixture
def equal_table():
    """Every Γ entry is 1"""
    return GammaTable.uniform(1)


@pytest.fixture
def aa5_table():
    return aa_table(5)


@pytest.fixture
def synthetic_table():
    return GammaTable.synthetic()


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def table_file(tmp_path):
    """Write a Γ table to a file and return its path"""
    def _write(table: GammaTable, name: str = "gamma.txt") -> str:
        path = tmp_path / name
        path.write_text("# test table\n" + table.format(), encoding="utf-8")
        return str(path)
    return _write


@pytest.fixture
def word_file(tmp_path):
    """Write a word list to a file and return its path"""
    def _write(words, name: str = "words.txt") -> str:
        path = tmp_path / name
        path.write_text("".join(f"{w}\n" for w in words), encoding="utf-8")
        return str(path)
    return _write


@pytest.fixture(scope="function")
def test_db():
    """Fresh in-memory ledger session for each test"""
    engine = create_engine("sqlite://")
    Base.metadata.create_all(bind=engine)
    TestSessionLocal = sessionmaker(bind=engine)
    db = TestSessionLocal()
    try:
        yield db
    finally:
        db.close()
        engine.dispose()
