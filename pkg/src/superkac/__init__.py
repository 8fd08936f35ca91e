"""Exact computer algebra for non-twisted affine Lie superalgebras.

The package builds the affine super root data, classifies integrable
irreducible highest weight modules, computes their characters as truncated
formal series by several independent routes, and cross-checks everything
against a brute-force free-field Fock space enumeration.
"""

__version__ = "0.1.0"
