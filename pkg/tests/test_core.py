# tests/test_core.py

import io
import logging
from concurrent.futures import ThreadPoolExecutor

import pytest

from core.config import Config, config
from core.exceptions import DnaWordError, EnergyNotAchievableError, InternalError, InvalidInputError
from core.instrument import OpCounter, tally
from core.logger import level_from_flags, setup_logging


@pytest.mark.unit
class TestConfig:
    """Library defaults"""

    def test_defaults_validate(self):
        """Shipped defaults are consistent"""
        Config.validate()
        assert config.EXACT_RING_MAX_LENGTH == 64
        assert config.PRIME_BITS == 50

    def test_bad_prime_bits(self, monkeypatch):
        """Primes too wide for the float-assisted multiply are rejected"""
        monkeypatch.setattr(Config, "PRIME_BITS", 60)
        with pytest.raises(ValueError):
            Config.validate()


@pytest.mark.unit
class TestExceptions:
    """Error hierarchy"""

    def test_hierarchy(self):
        """Every package error is a DnaWordError and a matching builtin"""
        assert issubclass(InvalidInputError, ValueError)
        assert issubclass(EnergyNotAchievableError, LookupError)
        assert issubclass(InternalError, RuntimeError)
        for cls in (InvalidInputError, EnergyNotAchievableError, InternalError):
            assert issubclass(cls, DnaWordError)

    def test_not_achievable_context(self):
        """The failing index and energy travel with the error"""
        e = EnergyNotAchievableError("nothing in [3, 4]", index=2, energy=3)
        assert e.index == 2 and e.energy == 3
        assert "nothing in [3, 4]" in str(e)


@pytest.mark.unit
class TestInstrumentation:
    """Operation counting"""

    def test_tally_without_counter(self):
        """A missing counter is ignored"""
        tally(None, 10)

    def test_concurrent_adds(self):
        """Adds from many threads are not lost"""
        counter = OpCounter()
        with ThreadPoolExecutor(max_workers=8) as pool:
            list(pool.map(lambda _: counter.add(3), range(1000)))
        assert counter.total == 3000
        assert counter.reset() == 3000
        assert counter.total == 0


@pytest.mark.unit
class TestLogging:
    """Status lines go to the diagnostic stream"""

    def test_verbosity_flags(self):
        """-q wins, each -v lowers the threshold one step"""
        assert level_from_flags(quiet=True) == logging.ERROR
        assert level_from_flags(0) == logging.WARNING
        assert level_from_flags(1) == logging.INFO
        assert level_from_flags(5) == logging.DEBUG

    def test_handler_replaced(self):
        """Repeated setup keeps a single package handler"""
        first, second = io.StringIO(), io.StringIO()
        setup_logging(logging.INFO, first)
        root = setup_logging(logging.INFO, second)
        logging.getLogger("energy.test").info("✓ hello")
        assert "hello" in second.getvalue()
        assert first.getvalue() == ""
        assert sum(getattr(h, "_dnaword", False) for h in root.handlers) == 1
