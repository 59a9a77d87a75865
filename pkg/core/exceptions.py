# core/exceptions.py


class DnaWordError(Exception):
    """Base class for errors raised by this package"""


class InvalidInputError(DnaWordError, ValueError):
    """Input violates an operation's precondition"""


class EnergyNotAchievableError(DnaWordError, LookupError):
    """No string of the requested length reaches the requested energy (band)"""

    def __init__(self, message: str, index: int = None, energy: int = None):
        super().__init__(message)
        self.index = index
        self.energy = energy


class InternalError(DnaWordError, RuntimeError):
    """An internal consistency check failed"""
