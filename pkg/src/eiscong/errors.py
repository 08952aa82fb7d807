"""Typed errors shared across the package."""

from __future__ import annotations


class UnsupportedHeckeField(Exception):
    """The Hecke eigenvalues at this weight are irrational.

    Eigen-decompositions are restricted to weights where the characteristic
    polynomial of T(2) on the cusp space splits into distinct rational roots.
    """


class SingularSystem(Exception):
    """A linear solve on q-coefficients was underdetermined (precision too low)."""


class BudgetExceeded(Exception):
    """A character-sum enumeration would exceed the configured work budget."""
