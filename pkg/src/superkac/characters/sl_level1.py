"""Restriction to the even subalgebra: orbit sums and branching series.

The even part of the one-negative-direction superalgebra splits into the
positive-definite loop part and a rank-one Heisenberg direction mu.  The
level-1 characters of the former are translation orbit sums over the
finite root lattice divided by an Euler power; the branching series
attach a half-theta tail to each orbit.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction as Q

from ..qseries import Lattice, Series
from ..qseries.functions import euler_phi_inverse
from ..rootdata import build
from ..weights import WeightVector
from .fock import _translation_orbit
from .lattices import gl_lattice, weight_exps

__all__ = ["sl_level1_dot_ch", "branching_series", "BranchingResult",
           "branching", "specialized_tr"]


def _omega(datum, k: int, m: int) -> WeightVector:
    coeffs = {}
    for i in range(1, k + 1):
        coeffs[f"e{i}"] = Q(1)
    for i in range(1, m + 1):
        coeffs[f"e{i}"] = coeffs.get(f"e{i}", Q(0)) - Q(k, m)
    return WeightVector.make(datum.basis, coeffs)


def _mu(datum, m: int) -> WeightVector:
    coeffs = {f"e{m + 1}": Q(1)}
    for i in range(1, m + 1):
        coeffs[f"e{i}"] = -Q(1, m)
    return WeightVector.make(datum.basis, coeffs)


def sl_level1_dot_ch(m: int, k: int, a, cutoff,
                     lat: Lattice | None = None) -> Series:
    """Level-1 character of the even loop part twisted by a mu: the
    translation orbit of the k-th fundamental weight over phi^m."""
    lat = lat or gl_lattice(m, 1, "height", qden=2 * m, xden=m)
    datum = build("GL", m, 1)
    k = k % m
    lam = datum.Lambda0() + _omega(datum, k, m) + Q(a) * _mu(datum, m)
    terms = _translation_orbit(datum, lam, lat, cutoff, Q(0), 1)
    total = Series.from_terms(lat, cutoff, terms)
    phi_inv = euler_phi_inverse(lat, cutoff)
    return total * phi_inv.power(m)


def branching_series(m: int, k: int, p: int, cutoff,
                     exponent: str = "printed") -> Series:
    """The branching coefficient series b_{k,p} as a univariate q-series.

    exponent chooses the leading q-power: "printed" uses
    (1/2 - 1/(2m)) p^2 + k^2/(2m) + k/2, while "derived" recomputes the
    reindexing shift (gamma|gamma)/2 + (nu|gamma) from the root data.
    """
    if (p + k) % m != 0:
        raise ValueError("p + k must be divisible by m")
    lat = Lattice(("q",), (2 * m,), (Q(1),))
    if exponent == "printed":
        shift = (Q(1, 2) - Q(1, 2 * m)) * p * p + Q(k * k, 2 * m) + Q(k, 2)
    elif exponent == "derived":
        j = (p + k) // m
        datum = build("GL", m, 1)
        basis = datum.basis

        def beta(t):
            coeffs = {"e1": Q(t)}
            for i in range(1, t + 1):
                coeffs[f"e{i}"] = coeffs.get(f"e{i}", Q(0)) - 1
            return WeightVector.make(basis, coeffs)

        gamma = j * beta(m) - beta(k)
        nu = datum.Lambda0() - p * (
            WeightVector.make(basis, {"e1": Q(1)})
            - WeightVector.make(basis, {f"e{m + 1}": Q(1)}))
        shift = (Q(1, 2) * datum.form.inner(gamma, gamma)
                 + datum.form.inner(nu, gamma))
    else:
        raise ValueError("exponent must be 'printed' or 'derived'")
    terms = []
    if p >= 0:
        r = p
        while shift + Q(r * (r + 1), 2) <= cutoff:
            terms.append(({"q": shift + Q(r * (r + 1), 2)}, (-1) ** (r - p)))
            r += 1
    else:
        r = p - 1
        while True:
            e = shift + Q(r * (r + 1), 2)
            if e <= cutoff:
                terms.append(({"q": e}, (-1) ** (r - p - 1)))
            elif r < -1 and Q(r * (r + 1), 2) > cutoff - shift:
                break
            r -= 1
    total = Series.from_terms(lat, cutoff, terms)
    return total * euler_phi_inverse(lat, cutoff)


@dataclass
class BranchingResult:
    m: int
    cutoff: Q
    pairs: list  # ((k, p), Series)

    def series(self, k: int, p: int) -> Series:
        for (kk, pp), s in self.pairs:
            if (kk, pp) == (k, p):
                return s
        raise KeyError((k, p))


def branching(m: int, cutoff, exponent: str = "printed") -> BranchingResult:
    """All branching pairs (k, p) that can reach the cutoff."""
    pairs = []
    pmax = 2 * int(cutoff) + 2 * m + 2
    for k in range(1, m + 1):
        for p in range(-pmax, pmax + 1):
            if (p + k) % m != 0:
                continue
            b = branching_series(m, k, p, cutoff, exponent)
            if not b.is_zero():
                pairs.append(((k, p), b))
    return BranchingResult(m, Q(cutoff), pairs)


def branching_sum(m: int, cutoff, exponent: str = "printed") -> Series:
    """sum over (k,p) of b_{k,p} times the even-part character."""
    lat = gl_lattice(m, 1, "height", qden=2 * m, xden=m)
    res = branching(m, cutoff, exponent)
    total = Series.zero(lat, cutoff)
    for (k, p), b in res.pairs:
        # orbit terms may sit above the vacuum anchor (negative height);
        # boost the working precision so the product is exact to cutoff
        probe = sl_level1_dot_ch(m, k, p, cutoff, lat=lat)
        mh = min(Q(probe.min_height_scaled(), lat.hscale), Q(0))
        work = Q(cutoff) - mh
        dot = sl_level1_dot_ch(m, k, p, work, lat=lat) if mh else probe
        bq = branching_series(m, k, p, work, exponent).substitute(
            lat, work, {})
        term = bq * dot
        if term.cutoff < cutoff:
            raise AssertionError("branching pair lost the target cutoff")
        total = total + term.truncate(cutoff)
    return total


def specialized_tr(m: int, s: int, cutoff) -> Series:
    """Energy trace of the sector character: all epsilons sent to one."""
    lat = Lattice(("q",), (2,), (Q(1),))
    work = Q(cutoff) + Q(abs(s), 2) + 1
    total = Series.zero(lat, work)
    radius = 0
    while True:
        hit = False
        for kvec in itertools.product(range(-radius, radius + 1),
                                      repeat=m - 1):
            if max((abs(c) for c in kvec), default=0) != radius:
                continue
            ksum = sum(kvec)
            e = sum(Q(t * (t + 1), 2) for t in kvec)
            if e > work:
                continue
            mono = Series.monomial(lat, work, {"q": e})
            d = ksum - s
            if d > 0:
                mono = div_one_plus_q(mono, d)
            elif d < 0:
                mono = div_one_plus_q(mono.mul_monomial({"q": -d})
                                      .truncate(work), -d)
            else:
                mono = mono.scale(Q(1, 2))
            total = total + mono
            hit = True
        if radius > 0 and not hit:
            break
        radius += 1
        if radius > 300:
            raise RuntimeError("specialised trace failed to close")
    from ..qseries.functions import euler_phi
    phi2 = euler_phi(lat, work, qexp={"q": 2})
    phi_inv = euler_phi_inverse(lat, work)
    out = total.scale(2) * phi2 * phi2 * phi_inv.power(m + 2)
    out = out.mul_monomial({"q": -Q(s, 2)})
    if out.cutoff < cutoff:
        raise AssertionError("precision bookkeeping lost the target cutoff")
    return out.truncate(cutoff)


def div_one_plus_q(s: Series, e) -> Series:
    from ..qseries import div_one_plus
    return div_one_plus(s, {"q": Q(e)})
