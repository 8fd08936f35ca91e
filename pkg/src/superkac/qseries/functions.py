"""The named q-series: Euler products, theta and psi products, Appell sums.

Everything is built over a caller-supplied lattice so the same functions
serve both the pure marker checks (symbols like z, u, v, x at height
zero) and the character computations (epsilon-lattice monomials playing
the role of the auxiliary variables).  All products orient their
geometric expansions by the sign of the factor height and flip the
chamber with (1+M) = M(1+M^{-1}) where needed.
"""

from __future__ import annotations

from fractions import Fraction as Q
from itertools import count
from typing import Callable, Mapping, Optional

from .engine import (Lattice, Series, div_one_plus, geom_inverse,
                     mul_one_plus, product_one_plus)

__all__ = ["marker_lattice", "euler_phi", "euler_phi_inverse",
           "infinite_product", "theta_series", "theta_product",
           "psi_product", "jacobi_triple", "super_product_identity",
           "appell", "multi_appell", "lemma_double_sum_identity",
           "specialize_markers"]


def marker_lattice(markers=(), qden: int = 2,
                   marker_heights: Optional[Mapping[str, Q]] = None) -> Lattice:
    """q plus height-zero auxiliary markers (heights overridable)."""
    syms = ["q"] + list(markers)
    heights = [Q(1)] + [Q(marker_heights.get(s, 0)) if marker_heights else Q(0)
                        for s in markers]
    denoms = [qden] + [1] * len(markers)
    return Lattice(syms, denoms, heights)


def infinite_product(lat: Lattice, cutoff, factor_fn: Callable[[int], list],
                     start: Optional[Series] = None) -> Series:
    """Product over k >= 1 of factor_fn(k), factor heights growing in k."""
    s = start if start is not None else Series.one(lat, cutoff)
    for k in count(1):
        factors = factor_fn(k)
        floor = s.min_height_scaled()
        if all(lat.hkey(lat.key_of(e) if isinstance(e, dict) else e) + floor
               > s._cut_scaled for e, _, _ in factors):
            break
        s = product_one_plus(lat, s.cutoff, factors, start=s)
    return s


def euler_phi(lat: Lattice, cutoff, qexp=None) -> Series:
    """phi(q) = prod (1 - q^j), with q an arbitrary monomial."""
    qexp = qexp if qexp is not None else {"q": 1}
    return infinite_product(
        lat, cutoff,
        lambda j: [({s: j * Q(e) for s, e in qexp.items()}, -1, 1)])


def euler_phi_inverse(lat: Lattice, cutoff, qexp=None) -> Series:
    qexp = qexp if qexp is not None else {"q": 1}
    return infinite_product(
        lat, cutoff,
        lambda j: [({s: j * Q(e) for s, e in qexp.items()}, -1, -1)])


def _shift(z: Mapping, qpow: Q, inv: bool = False) -> dict:
    out = {s: (-Q(e) if inv else Q(e)) for s, e in z.items()}
    out["q"] = out.get("q", Q(0)) + qpow
    return {s: e for s, e in out.items() if e != 0}


def theta_series(lat: Lattice, cutoff, z: Mapping) -> Series:
    """Theta(z; q) = sum_k q^(k^2/2) z^k, the x = 0 Appell degeneration."""
    s = Series.zero(lat, cutoff)
    for k in _symmetric_range(lat, cutoff, z):
        s = s + Series.monomial(lat, cutoff, _shift(_scale(z, k), Q(k * k, 2)))
    return s


def _scale(z: Mapping, k: int) -> dict:
    return {s: k * Q(e) for s, e in z.items()}


def _symmetric_range(lat: Lattice, cutoff, z: Mapping, quad=Q(1, 2),
                     lin=Q(0)):
    """All k with height(q^(quad k^2 + lin k) z^k) <= cutoff."""
    hz = Q(lat.hkey(lat.key_of(z)), lat.hscale) if z else Q(0)
    hq = Q(lat.hkey(lat.key_of({"q": 1})), lat.hscale)
    out = []
    for direction in (1, -1):
        k = 0 if direction == 1 else -1
        while True:
            base = (quad * k * k + lin * k) * hq + k * hz
            if base > cutoff:
                # quadratic growth: once past the vertex, done
                if quad * hq > 0 and abs(k) * 2 * quad * hq > abs(hz) + abs(lin * hq):
                    break
            else:
                out.append(k)
            k += direction
            if abs(k) > 10000:
                raise RuntimeError("theta range failed to close")
    return sorted(out)


def theta_product(lat: Lattice, cutoff, z: Mapping) -> Series:
    """Theta(z q^(1/2); q) in product form: phi(q) prod (1+zq^k)(1+1/z q^(k-1))."""
    s = euler_phi(lat, cutoff)

    def factors(k):
        return [(_shift(z, Q(k)), 1, 1), (_shift(z, Q(k - 1), inv=True), 1, 1)]

    return infinite_product(lat, cutoff, factors, start=s)


def psi_product(lat: Lattice, cutoff, z: Mapping, qstep: Q = Q(1)) -> Series:
    """Psi(z; q^qstep) = prod (1 + z q^(step(k-1))) (1 + 1/z q^(step k))."""

    def factors(k):
        return [(_shift(z, qstep * (k - 1)), 1, 1),
                (_shift(z, qstep * k, inv=True), 1, 1)]

    return infinite_product(lat, cutoff, factors)


def jacobi_triple(cutoff, zwindow: Optional[int] = None):
    """Both sides of the triple product, on the (q, z) marker lattice."""
    lat = marker_lattice(["z"])
    lhs = infinite_product(
        lat, cutoff,
        lambda k: [({"q": Q(2 * k - 1, 2), "z": 1}, 1, 1),
                   ({"q": Q(2 * k - 1, 2), "z": -1}, 1, 1)])
    rhs = Series.zero(lat, cutoff)
    for m in _symmetric_range(lat, cutoff, {"z": 1}):
        if zwindow is not None and abs(m) > zwindow:
            continue
        rhs = rhs + Series.monomial(lat, cutoff,
                                    {"q": Q(m * m, 2), "z": m})
    rhs = euler_phi_inverse(lat, cutoff) * rhs
    return lhs, rhs


def super_product_identity(cutoff):
    """Both sides of the inverse-product double-sum identity."""
    lat = marker_lattice(["z"])
    lhs = infinite_product(
        lat, cutoff,
        lambda k: [({"q": Q(2 * k - 1, 2), "z": 1}, 1, -1),
                   ({"q": Q(2 * k - 1, 2), "z": -1}, 1, -1)])
    terms = []
    # (sum over m,k >= 0) - (sum over m,k < 0) of the signed lattice terms
    for m in count(0):
        if Q(m * (m + 1), 2) > cutoff:
            break
        for k in count(0):
            e = Q(m * (m + 1), 2) + (m + Q(1, 2)) * k
            if e > cutoff:
                break
            terms.append(({"q": e, "z": k}, (-1) ** (m + k)))
    for mm in count(1):  # m = -mm
        m = -mm
        if Q(m * (m + 1), 2) - (m + Q(1, 2)) > cutoff:
            break
        for kk in count(1):  # k = -kk; exponent grows with kk since m+1/2 < 0
            k = -kk
            e = Q(m * (m + 1), 2) + (m + Q(1, 2)) * k
            if e > cutoff:
                break
            terms.append(({"q": e, "z": k}, -((-1) ** (m + k))))
    rhs = Series.from_terms(lat, cutoff, terms)
    phi2 = euler_phi_inverse(lat, cutoff)
    return lhs, phi2 * phi2 * rhs


def appell(lat: Lattice, cutoff, x: Mapping, z: Mapping) -> Series:
    """A(x, z, q) = sum_k q^(k^2/2) z^k / (1 + x q^k).

    Each denominator is expanded in the chamber fixed by the sign of its
    height; x of height zero at some k is rejected.
    """
    out = Series.zero(lat, cutoff)
    hq = Q(lat.hkey(lat.key_of({"q": 1})), lat.hscale)
    for k in _symmetric_range(lat, cutoff, z):
        xq = _shift(x, Q(k))
        hxq = Q(lat.hkey(lat.key_of(xq)), lat.hscale)
        mono = Series.monomial(lat, cutoff, _shift(_scale(z, k), Q(k * k, 2)))
        if mono.is_zero():
            continue
        if hxq > 0:
            out = out + div_one_plus(mono, xq)
        elif hxq < 0:
            flip = {s: -e for s, e in xq.items()}
            out = out + div_one_plus(mono.mul_monomial(flip).truncate(cutoff),
                                     flip)
        else:
            raise ValueError("Appell denominator has height zero")
    return out


def multi_appell(lat: Lattice, cutoff, B, x: Mapping, zs, ell) -> Series:
    """A_{B,ell}(x; z_1..z_N; q) for a positive definite rational B.

    ell is the coefficient vector of the linear form in the summation
    index; the terms are enumerated over growing boxes until the
    quadratic height floor clears the cutoff.
    """
    n = len(zs)
    B = [[Q(x_) for x_ in row] for row in B]
    ell = [Q(c) for c in ell]
    hq = Q(lat.hkey(lat.key_of({"q": 1})), lat.hscale)
    hz = [Q(lat.hkey(lat.key_of(z)), lat.hscale) for z in zs]
    out = Series.zero(lat, cutoff)

    def term(kvec):
        qexp = sum(B[i][j] * kvec[i] * kvec[j]
                   for i in range(n) for j in range(n)) / 2
        exps: dict = {"q": qexp}
        for z, k in zip(zs, kvec):
            for s, e in z.items():
                exps[s] = exps.get(s, Q(0)) + k * Q(e)
        exps = {s: e for s, e in exps.items() if e != 0}
        lk = sum(c * k for c, k in zip(ell, kvec))
        xq = _shift(x, Q(lk))
        hxq = Q(lat.hkey(lat.key_of(xq)), lat.hscale)
        mono = Series.monomial(lat, cutoff, exps)
        if mono.is_zero():
            return None
        if hxq > 0:
            return div_one_plus(mono, xq)
        if hxq < 0:
            flip = {s: -e for s, e in xq.items()}
            return div_one_plus(mono.mul_monomial(flip).truncate(cutoff), flip)
        raise ValueError("Appell denominator has height zero")

    import itertools
    radius = 0
    while True:
        added = False
        for kvec in itertools.product(range(-radius, radius + 1), repeat=n):
            if max((abs(v) for v in kvec), default=0) != radius:
                continue
            qexp = sum(B[i][j] * kvec[i] * kvec[j]
                       for i in range(n) for j in range(n)) / 2
            base = qexp * hq + sum(k * h for k, h in zip(kvec, hz))
            if base > cutoff:
                continue
            t = term(kvec)
            if t is not None:
                out = out + t
                added = True
        if radius > 0 and not added:
            # positive definiteness: next shells only climb, with margin
            margin_ok = all(
                sum(B[i][j] * kv[i] * kv[j] for i in range(n)
                    for j in range(n)) / 2 * hq
                + sum(k * h for k, h in zip(kv, hz)) > cutoff
                for kv in itertools.product((-radius - 1, radius + 1),
                                            repeat=n))
            if margin_ok:
                break
        radius += 1
        if radius > 200:
            raise RuntimeError("multi-Appell enumeration failed to close")
    return out


def lemma_double_sum_identity(a: int, b: int, cutoff) -> dict:
    """All sides of the double-sum / shifted-product lemma, as series.

    Returns a dict with keys lhs_a, rhs_a (the alternating double sum and
    the product with the pole factor cancelled) plus prod_lhs_b, rhs_b1,
    rhs_b2 (the three equal expressions of the reindexing identity).
    Negative-exponent prefactors are handled with an internal precision
    margin so all returned series are exact to the requested cutoff.
    """
    margin = Q(abs(b) * (abs(b) + 1), 2) + abs(b) + 2
    work = Q(cutoff) + margin
    lat = marker_lattice(["x"])
    # (a) LHS: alternating double sum over k >= j >= a minus k < j < a
    lhs_a = Series.zero(lat, cutoff)
    kmax = 2 * (int(cutoff) + abs(b) + 2) ** 2 + 4
    for k in range(-kmax, kmax + 1):
        e0 = b * k + Q(k * (k + 1), 2)
        if e0 > cutoff:
            continue
        if k >= a:
            jrange = range(a, k + 1)
            sign_flip = 1
        else:
            jrange = range(k + 1, a)
            sign_flip = -1
        for j in jrange:
            lhs_a = lhs_a + Series.monomial(
                lat, cutoff, {"q": e0, "x": j}, sign_flip * (-1) ** (j + k))
    # (a) RHS with x/(1+x) cancelled against the zero-exponent factor
    rhs = euler_phi(lat, work)
    if b >= 0:
        for n in range(1, b + 1):
            rhs = mul_one_plus(rhs, {"q": Q(n - b - 1), "x": -1})
        rhs = infinite_product(
            lat, rhs.cutoff,
            lambda n: [({"q": Q(n + b + 1 - b - 1), "x": -1}, 1, 1)],
            start=rhs)  # n runs over b+2, b+3, ... via shifted index
        rhs = infinite_product(
            lat, rhs.cutoff,
            lambda n: [({"q": Q(n + b), "x": 1}, 1, 1)], start=rhs)
    else:
        rhs = rhs.mul_monomial({"x": 1})
        rhs = infinite_product(
            lat, rhs.cutoff,
            lambda n: [({"q": Q(n - b - 1), "x": -1}, 1, 1)], start=rhs)
        for n in range(1, -b):
            rhs = mul_one_plus(rhs, {"q": Q(n + b), "x": 1})
        rhs = infinite_product(
            lat, rhs.cutoff,
            lambda n: [({"q": Q(n - b + b), "x": 1}, 1, 1)], start=rhs)
    rhs_a = rhs.truncate(cutoff)
    # (b): three expressions for the shifted product
    prod_b = Series.one(lat, work)
    for n in range(1, max(1, abs(b) + 1) + 1):
        e1 = Q(n - b - 1)
        if e1 <= 0:
            prod_b = mul_one_plus(prod_b, {"q": e1, "x": -1})
        e2 = Q(n + b)
        if e2 <= 0:
            prod_b = mul_one_plus(prod_b, {"q": e2, "x": 1})
    prod_b = infinite_product(
        lat, prod_b.cutoff,
        lambda n: ([({"q": Q(n - b - 1), "x": -1}, 1, 1)]
                   if n - b - 1 > 0 else [])
        + ([({"q": Q(n + b), "x": 1}, 1, 1)] if n + b > 0 else []),
        start=prod_b)
    prod_lhs_b = prod_b.truncate(cutoff)
    pref = {"q": -Q(b * (b + 1), 2)}
    base1 = infinite_product(
        lat, work,
        lambda n: [({"q": Q(n - 1), "x": -1}, 1, 1), ({"q": Q(n), "x": 1}, 1, 1)])
    rhs_b1 = base1.mul_monomial({**pref, "x": -b}).truncate(cutoff)
    base2 = infinite_product(
        lat, work,
        lambda n: [({"q": Q(n), "x": -1}, 1, 1), ({"q": Q(n - 1), "x": 1}, 1, 1)])
    rhs_b2 = base2.mul_monomial({**pref, "x": -b - 1}).truncate(cutoff)
    return {"lhs_a": lhs_a, "rhs_a": rhs_a, "prod_lhs_b": prod_lhs_b,
            "rhs_b1": rhs_b1, "rhs_b2": rhs_b2}


def specialize_markers(s: Series, assignment: Mapping[str, tuple],
                       qden: Optional[int] = None) -> Series:
    """Send each marker to coeff * q^e; returns a univariate q-series."""
    from math import gcd
    needed = qden or 1
    for coeff, e in assignment.values():
        d = Q(e).denominator
        needed = needed * d // gcd(needed, d)
    for i, sym in enumerate(s.lat.symbols):
        if sym == "q":
            needed = needed * s.lat.denoms[i] // gcd(needed, s.lat.denoms[i])
    target = Lattice(("q",), (needed,), (Q(1),))
    images = {sym: (coeff, {"q": Q(e)})
              for sym, (coeff, e) in assignment.items()}
    for sym in s.lat.symbols:
        if sym != "q" and sym not in images:
            raise ValueError(f"no assignment for marker {sym}")
    return s.substitute(target, s.cutoff, images)
