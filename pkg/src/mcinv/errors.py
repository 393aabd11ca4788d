"""Exception hierarchy.

``VerificationError`` and its subclasses signal that a mathematical check
failed (exit code 1 in the CLI); everything else that derives from
``McinvError`` is a usage or input problem (exit code 2).
"""

from __future__ import annotations


class McinvError(Exception):
    pass


class UnmappedVariableError(McinvError):
    def __init__(self, var):
        super().__init__(f"no value assigned to variable {var}")
        self.var = var


class StructureConstantError(McinvError):
    """Antisymmetry or Jacobi violation; ``triple`` names the offending indices."""

    def __init__(self, message, triple=None):
        super().__init__(message)
        self.triple = triple


class StaircaseError(McinvError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class ConfigError(McinvError):
    pass


class VerificationError(McinvError):
    pass


class InvarianceError(VerificationError):
    def __init__(self, message, gamma=None, derivation=None):
        super().__init__(message)
        self.gamma = gamma
        self.derivation = derivation


class ProportionalityError(VerificationError):
    pass


class DoubleExpansionError(VerificationError):
    pass


class SupportError(VerificationError):
    pass


class NormalizationError(VerificationError):
    pass


class RegularityError(VerificationError):
    def __init__(self, message, centralizer_dim=None, expected=None):
        super().__init__(message)
        self.centralizer_dim = centralizer_dim
        self.expected = expected


class TransversalityError(VerificationError):
    def __init__(self, message, rank=None, expected=None):
        super().__init__(message)
        self.rank = rank
        self.expected = expected


class CyclicVectorError(VerificationError):
    pass


class UniquenessError(VerificationError):
    pass
