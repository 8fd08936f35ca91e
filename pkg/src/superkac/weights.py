"""Exact weight-space arithmetic.

Weights of an affine superalgebra are stored as finitely supported rational
vectors over a named coordinate basis, typically ``{"L0", "d", "e1", ...}``
where ``L0`` stands for the fundamental weight attached to the affine node,
``d`` for the null root delta, and ``e1..eN`` for the epsilon-coordinates of
the finite part.  Exceptional families use simple-root coordinates
``a1..al`` instead of epsilons.

All arithmetic is exact rational.  The bilinear form is carried separately
by a :class:`GramForm` so the same vector type serves every family.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction as Q
from typing import Iterable, Mapping

__all__ = [
    "WeightVector",
    "GramForm",
    "wv",
    "inner",
    "level",
    "coroot",
    "translate",
]


def _as_q(x) -> Q:
    return x if isinstance(x, Q) else Q(x)


@dataclass(frozen=True)
class WeightVector:
    """Finitely supported rational vector over a named basis.

    Zero coefficients are never stored, so equality and hashing are
    canonical.  Vectors from different bases never compare equal and any
    arithmetic mixing them raises ``ValueError``.
    """

    basis: str
    coeffs: tuple[tuple[str, Q], ...]

    @staticmethod
    def make(basis: str, coeffs: Mapping[str, Q | int]) -> "WeightVector":
        items = tuple(sorted((s, _as_q(c)) for s, c in coeffs.items() if c != 0))
        return WeightVector(basis, items)

    def to_dict(self) -> dict[str, Q]:
        return dict(self.coeffs)

    def get(self, sym: str) -> Q:
        for s, c in self.coeffs:
            if s == sym:
                return c
        return Q(0)

    def _check(self, other: "WeightVector") -> None:
        if self.basis != other.basis:
            raise ValueError(f"basis mismatch: {self.basis!r} vs {other.basis!r}")

    def __add__(self, other: "WeightVector") -> "WeightVector":
        self._check(other)
        d = self.to_dict()
        for s, c in other.coeffs:
            d[s] = d.get(s, Q(0)) + c
        return WeightVector.make(self.basis, d)

    def __sub__(self, other: "WeightVector") -> "WeightVector":
        return self + (-1) * other

    def __neg__(self) -> "WeightVector":
        return (-1) * self

    def __rmul__(self, scalar) -> "WeightVector":
        q = _as_q(scalar)
        return WeightVector.make(self.basis, {s: q * c for s, c in self.coeffs})

    def __mul__(self, scalar) -> "WeightVector":
        return self.__rmul__(scalar)

    def is_zero(self) -> bool:
        return not self.coeffs

    def support(self) -> tuple[str, ...]:
        return tuple(s for s, _ in self.coeffs)

    def to_json(self) -> dict:
        return {
            "basis": self.basis,
            "coeffs": {s: str(c) for s, c in self.coeffs},
        }

    @staticmethod
    def from_json(obj: dict) -> "WeightVector":
        return WeightVector.make(
            obj["basis"], {s: Q(v) for s, v in obj["coeffs"].items()}
        )

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        return " + ".join(f"{c}*{s}" for s, c in self.coeffs)


def wv(basis: str, **coeffs) -> WeightVector:
    """Shorthand constructor, exponents given as keyword arguments."""
    return WeightVector.make(basis, {s: _as_q(c) for s, c in coeffs.items()})


class GramForm:
    """Symmetric bilinear form on a weight basis.

    Only nonzero pairings are stored; lookups are symmetric.  By convention
    ``(d|d) = 0`` and ``(d|x) = 0`` for every finite-part symbol ``x``,
    while ``(L0|d)`` equals the level of ``L0`` for the family at hand
    (``1`` for the gl/sl series).
    """

    def __init__(self, basis: str, pairings: Mapping[tuple[str, str], Q | int]):
        self.basis = basis
        self._p: dict[tuple[str, str], Q] = {}
        for (a, b), v in pairings.items():
            q = _as_q(v)
            if q != 0:
                self._p[(a, b) if a <= b else (b, a)] = q

    def pair(self, a: str, b: str) -> Q:
        return self._p.get((a, b) if a <= b else (b, a), Q(0))

    def inner(self, x: WeightVector, y: WeightVector) -> Q:
        if x.basis != self.basis or y.basis != self.basis:
            raise ValueError("basis mismatch in inner product")
        total = Q(0)
        for sx, cx in x.coeffs:
            for sy, cy in y.coeffs:
                p = self.pair(sx, sy)
                if p:
                    total += cx * cy * p
        return total

    def level(self, lam: WeightVector) -> Q:
        """Level of a weight: its pairing with the null root delta."""
        return self.inner(lam, self.delta())

    def delta(self) -> WeightVector:
        return wv(self.basis, d=1)

    def coroot(self, alpha: WeightVector) -> WeightVector:
        """Coroot 2a/(a|a), or a itself when a is isotropic."""
        if alpha.is_zero():
            raise ValueError("coroot of the zero vector")
        norm = self.inner(alpha, alpha)
        if norm == 0:
            return alpha
        return Q(2, 1) / norm * alpha

    def translate(self, alpha: WeightVector, lam: WeightVector) -> WeightVector:
        """Lattice translation t_alpha acting on a weight.

        t_alpha(lam) = lam + (lam|d) alpha - ((a|a)/2 (lam|d) + (lam|a)) d.
        Only defined for level-zero alpha in the finite part.
        """
        if self.level(alpha) != 0:
            raise ValueError("translation root must have level 0")
        lev = self.level(lam)
        c = Q(1, 2) * self.inner(alpha, alpha) * lev + self.inner(lam, alpha)
        return lam + lev * alpha - c * self.delta()


def inner(form: GramForm, a: WeightVector, b: WeightVector) -> Q:
    return form.inner(a, b)


def level(form: GramForm, lam: WeightVector) -> Q:
    return form.level(lam)


def coroot(form: GramForm, alpha: WeightVector) -> WeightVector:
    return form.coroot(alpha)


def translate(form: GramForm, alpha: WeightVector, lam: WeightVector) -> WeightVector:
    return form.translate(alpha, lam)
