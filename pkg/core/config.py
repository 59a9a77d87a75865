# core/config.py

import logging

logger = logging.getLogger(__name__)


class Config:
    """Library defaults. CLI flags override these; nothing is read from the environment."""

    # Energy counting rings
    EXACT_RING_MAX_LENGTH = 64  # above this, "auto" switches to modular arithmetic
    PRIME_BITS = 50
    NTT_TWO_ADICITY = 30  # primes have the form c * 2**30 + 1
    DEFAULT_PRIME_SEED = 20070402
    DEFAULT_PRIME_COUNT = 1
    SCHOOLBOOK_MAX_TERMS = 32

    # construct_strings builds the witness index when n >= FORK_SCALE * sqrt(L / ln L)
    FORK_SCALE = 1.0

    # Generation
    DEFAULT_THREADS = 1
    DEFAULT_RETRIES = 0

    # Benchmarks
    BENCH_MIN_EXP = 8
    BENCH_MAX_EXP = 14
    BENCH_EXTRACT_CALLS = 32

    # Logging
    LOG_LEVEL = "WARNING"
    LOG_FORMAT = "%(levelname)s %(name)s: %(message)s"

    @classmethod
    def validate(cls):
        """Check that the defaults are mutually consistent"""
        if cls.PRIME_BITS > 51:
            raise ValueError("PRIME_BITS must be <= 51 for the float-assisted modular multiply")
        if cls.NTT_TWO_ADICITY >= cls.PRIME_BITS:
            raise ValueError("NTT_TWO_ADICITY must be smaller than PRIME_BITS")
        if cls.EXACT_RING_MAX_LENGTH < 1:
            raise ValueError("EXACT_RING_MAX_LENGTH must be positive")
        if cls.DEFAULT_PRIME_COUNT not in (1, 2):
            raise ValueError("DEFAULT_PRIME_COUNT must be 1 or 2")
        logger.debug("✓ Configuration validated")


config = Config()


if __name__ == "__main__":
    print("Current configuration:")
    print(f"  EXACT_RING_MAX_LENGTH: {config.EXACT_RING_MAX_LENGTH}")
    print(f"  PRIME_BITS: {config.PRIME_BITS}")
    print(f"  NTT_TWO_ADICITY: {config.NTT_TWO_ADICITY}")
    print(f"  DEFAULT_PRIME_SEED: {config.DEFAULT_PRIME_SEED}")
    print(f"  FORK_SCALE: {config.FORK_SCALE}")
    print(f"  DEFAULT_THREADS: {config.DEFAULT_THREADS}")
    config.validate()
    print("✓ Configuration loaded successfully")
