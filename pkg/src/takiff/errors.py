"""Exception types shared across the package."""

from __future__ import annotations


class TakiffError(Exception):
    """Base class for all errors raised by this package."""


class StructuralError(TakiffError):
    """Shape or ring mismatch: incompatible rings, unknown variables, bad sizes."""


class ValidationError(TakiffError):
    """An algebraic validity check failed (antisymmetry, Jacobi, homomorphism,
    invariance, singular matrix, non-commuting generators)."""


class DecompositionRefused(TakiffError):
    """A field failed the invariant-annihilation precondition of a solver.

    Carries an exact nonzero witness polynomial.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class InternalConsistencyError(TakiffError):
    """A derived identity that must hold on valid inputs was observed false.

    Raised from inline assertions inside the decomposition recursion and the
    linear-part splitter. Firing one of these indicates a bug or an invalid
    hand-built input, never a legitimate refusal.
    """


class RegistryError(TakiffError):
    """Duplicate or inconsistent base-solver registration."""
