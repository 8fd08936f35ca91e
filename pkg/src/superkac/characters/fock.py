"""Character formulas for the charge sectors of the free-field space.

All functions return the series e^{-L0} ch F_s (or with the z marker,
e^{-L0} ch F): exponents are read as z^s e^{v.eps - E delta}.  Four
independent routes are implemented: the occupation-number sum, the
direct alternating multi-sum, its translation-operator form, and the
single-negative-direction closed form together with its theta-and-Appell
repackaging.  All enumeration bounds are exact: each summand family has
a separable coercive lower bound for the height, derived from the
doubled-mode energy identity.
"""

from __future__ import annotations

import itertools
from fractions import Fraction as Q

from ..fockspace import lowest_component
from ..qseries import Lattice, Series, div_one_plus
from ..qseries.functions import (euler_phi_inverse, infinite_product,
                                 theta_product, multi_appell)
from ..rootdata import build
from ..weights import WeightVector
from .lattices import gl_lattice, weight_exps

__all__ = ["ch_F_product", "ch_Fs_quasi", "ch_Fs_theta", "ch_Fs_n1",
           "ch_appell_form"]


def ch_F_product(m: int, n: int, cutoff, grading: str = "height") -> Series:
    """Product form of the full space character, charge tracked by z."""
    lat = gl_lattice(m, n, grading, with_z=True)

    def factors(k):
        qe = Q(2 * k - 1, 2)
        out = []
        for i in range(1, m + 1):
            out.append(({"z": 1, f"x{i}": 1, "q": qe}, 1, 1))
            out.append(({"z": -1, f"x{i}": -1, "q": qe}, 1, 1))
        for j in range(m + 1, m + n + 1):
            out.append(({"z": 1, f"x{j}": 1, "q": qe}, -1, -1))
            out.append(({"z": -1, f"x{j}": -1, "q": qe}, -1, -1))
        return out

    return infinite_product(lat, cutoff, factors)


def _pochhammer_inverses(lat: Lattice, cutoff, tmax: int) -> list[Series]:
    """P[t] = 1/((1-q)...(1-q^t)) up to the cutoff."""
    out = [Series.one(lat, cutoff)]
    for t in range(1, tmax + 1):
        out.append(div_one_plus(out[-1], {"q": t}, -1))
    return out


def ch_Fs_quasi(m: int, n: int, s: int, cutoff,
                grading: str = "height") -> Series:
    """Occupation-number sum over the mode counts of each species."""
    lat = gl_lattice(m, n, grading)
    N = m + n
    hq = lat.heights[0]
    hx = {j: lat.heights[j] for j in range(1, N + 1)}

    def fermi_bound(h):
        # marginal height of t modes of one species: t^2/2 hq + t h,
        # increasing for t >= 1 since |h| < hq/2
        t = 1
        while Q(t * t, 2) * hq + t * h <= cutoff:
            t += 1
        return t

    def bose_bound(h):
        # each unit adds hq/2 + h > 0
        step = hq / 2 + h
        alt = hq / 2 - h
        m_ = min(x for x in (step, alt) if x > 0)
        return int(Q(cutoff) / m_) + 2

    ranges = []
    for i in range(1, m + 1):
        b = fermi_bound(hx[i])
        ranges.append(range(0, b + 1))  # a_i
        ranges.append(range(0, b + 1))  # b_i
    for j in range(m + 1, N + 1):
        b = bose_bound(hx[j])
        ranges.append(range(0, b + 1))
        ranges.append(range(0, b + 1))

    poch = _pochhammer_inverses(lat, cutoff, max(r.stop for r in ranges))
    total = Series.zero(lat, cutoff)
    for config in itertools.product(*ranges):
        a = config[0::2]
        b = config[1::2]
        if sum(a) - sum(b) != s:
            continue
        E = (sum(Q(a[i] ** 2 + b[i] ** 2, 2) for i in range(m))
             + sum(Q(a[i] + b[i], 2) for i in range(m, N)))
        exps = {"q": E}
        hgt = E * hq
        for i in range(N):
            v = a[i] - b[i]
            if v:
                exps[f"x{i + 1}"] = v
                hgt += v * hx[i + 1]
        if hgt > cutoff:
            continue
        term = Series.monomial(lat, cutoff, exps)
        for t in config:
            if t:
                term = term * poch[t]
        total = total + term
    return total


def _domain_r_range(p: int, budget: Q):
    """r with r >= p >= 0 or r < p < 0 and r(r+1)/2 within the budget."""
    out = []
    if p >= 0:
        r = p
        while Q(r * (r + 1), 2) <= budget:
            out.append(r)
            r += 1
    else:
        r = p - 1
        while Q(r * (r + 1), 2) <= budget:
            out.append(r)
            r -= 1
    return out


def ch_Fs_theta(m: int, n: int, s: int, cutoff, grading: str = "height",
                form: str = "direct") -> Series:
    """Alternating multi-sum form, direct or via translation operators."""
    if form == "direct":
        return _ch_fs_direct(m, n, s, cutoff, grading)
    if form == "translated":
        return _ch_fs_translated(m, n, s, cutoff, grading)
    raise ValueError("form must be 'direct' or 'translated'")


def _k_bound(N: int, cutoff) -> int:
    t = 1
    while Q(t, 1) * (N * t - (N - 1)) / 2 <= cutoff:
        t += 1
    return t


def _ch_fs_direct(m: int, n: int, s: int, cutoff, grading: str) -> Series:
    lat = gl_lattice(m, n, grading)
    N = m + n
    Bk = _k_bound(N if grading == "height" else 1, cutoff) + abs(s) + 2
    Bp = 2 * int(cutoff) + abs(s) * (N + 2) + 4
    r_budget = Q(cutoff) + Q(s * s, 2) + Q(Bp * Bp + Bp, 2) + N + 2
    terms: list = []
    kranges = [range(-Bk, Bk + 1)] * (m - 1)
    pranges = [range(-Bp, Bp + 1)] * n
    for kvec in itertools.product(*kranges):
        ksum = sum(kvec)
        ksq = sum(t * t for t in kvec)
        for pvec in itertools.product(*pranges):
            psum = sum(pvec)
            base = (Q(s * s, 2) + Q(ksum * ksum + ksq, 2)
                    + sum(pvec[i] * pvec[j]
                          for i in range(n) for j in range(i + 1, n))
                    + ksum * psum - s * (ksum + psum))
            exps0 = {f"x{i + 2}": kvec[i] for i in range(m - 1) if kvec[i]}
            for j, pj in enumerate(pvec):
                if pj:
                    exps0[f"x{m + 1 + j}"] = pj
            x1 = s - ksum - psum
            if x1:
                exps0["x1"] = x1
            for rvec in itertools.product(
                    *[_domain_r_range(pj, r_budget) for pj in pvec]):
                E = base + sum(Q(r * (r + 1), 2) for r in rvec)
                exps = dict(exps0)
                exps["q"] = E
                # the alternating sum: each negative-branch index pair
                # contributes one extra minus beyond the (-1)^(r+p) weight
                neg = sum(1 for pj in pvec if pj < 0)
                sign = -1 if (sum(rvec) + psum + neg) % 2 else 1
                key = lat.key_of(exps)
                if lat.hkey(key) <= cutoff * lat.hscale:
                    terms.append((key, sign))
    total = Series.from_terms(lat, cutoff, terms)
    phi_inv = euler_phi_inverse(lat, cutoff)
    return total * phi_inv.power(m + 2 * n)


def _translation_orbit(datum, mu: WeightVector, lat: Lattice, cutoff,
                       extra_q: Q, sign: int) -> list:
    """Exact t_alpha orbit terms of a level-1 weight within the cutoff."""
    m = datum.m
    form = datum.form
    terms = []
    if m == 1:
        lvl, exps = weight_exps(mu, m + datum.n)
        exps["q"] = exps.get("q", Q(0)) + extra_q
        key = lat.key_of(exps)
        if lat.hkey(key) <= cutoff * lat.hscale:
            terms.append((key, sign))
        return terms
    radius = 0
    misses = 0
    while True:
        hit = False
        for cvec in itertools.product(range(-radius, radius + 1),
                                      repeat=m - 1):
            if max((abs(c) for c in cvec), default=0) != radius:
                continue
            alpha = WeightVector.make(datum.basis, {})
            for i, c in enumerate(cvec):
                if c:
                    alpha = alpha + c * datum.alpha(i + 1)
            w = form.translate(alpha, mu)
            lvl, exps = weight_exps(w, 0)
            exps["q"] = exps.get("q", Q(0)) + extra_q
            key = lat.key_of(exps)
            if lat.hkey(key) <= cutoff * lat.hscale:
                terms.append((key, sign))
                hit = True
        if radius > 0 and not hit:
            misses += 1
            # the quadratic growth of the delta-shift makes consecutive
            # empty shells conclusive
            if misses >= 2:
                break
        else:
            misses = 0
        radius += 1
        if radius > 400:
            raise RuntimeError("translation orbit failed to close")
    return terms


def _ch_fs_translated(m: int, n: int, s: int, cutoff, grading: str) -> Series:
    lat = gl_lattice(m, n, grading)
    datum = build("GL", m, n)
    _, _, lam_s = lowest_component(m, n, s)
    eps1 = WeightVector.make(datum.basis, {"e1": Q(1)})
    Bp = 2 * int(cutoff) + abs(s) * (m + n + 2) + 4
    r_budget = Q(cutoff) + Q(s * s, 2) + Q(Bp * Bp + Bp, 2) + m + n + 2
    terms: list = []
    for pvec in itertools.product(range(-Bp, Bp + 1), repeat=n):
        psum = sum(pvec)
        mu = lam_s
        for j, pj in enumerate(pvec):
            if pj:
                epsj = WeightVector.make(datum.basis, {f"e{m + 1 + j}": Q(1)})
                mu = mu - pj * (eps1 - epsj)
        pre0 = (sum(pvec[i] * pvec[j] for i in range(n)
                    for j in range(i + 1, n)) - psum)
        for rvec in itertools.product(
                *[_domain_r_range(pj, r_budget) for pj in pvec]):
            if s <= 0:
                a_s = s * (rvec[-1] - pvec[-1] + 1) + psum
            elif s <= m:
                a_s = 0
            else:
                a_s = (s - m) * (rvec[0] - pvec[0])
            extra_q = (Q(pre0) + Q(a_s)
                       + sum(Q(r * (r + 1), 2) for r in rvec))
            neg = sum(1 for pj in pvec if pj < 0)
            sign = -1 if (sum(rvec) + psum + neg) % 2 else 1
            terms.extend(_translation_orbit(
                datum, mu, lat, cutoff, extra_q, sign))
    total = Series.from_terms(lat, cutoff, terms)
    phi_inv = euler_phi_inverse(lat, cutoff)
    return total * phi_inv.power(m + 2 * n)


def ch_Fs_n1(m: int, s: int, cutoff, grading: str = "height") -> Series:
    """Closed form for one negative direction: theta factor times a
    geometric sum over the positive-side sublattice."""
    if grading != "height":
        raise ValueError("the closed form needs the root-height grading")
    lat = gl_lattice(m, 1, "height")
    N = m + 1
    pref = {f"x{N}": s, "q": -Q(s, 2)}
    hpref = lat.height(lat.key_of(pref)) if s else Q(0)
    work = Q(cutoff) + max(Q(0), -hpref) + 1
    xinv = {"x1": 1, f"x{N}": -1}   # e^{eps_1 - eps_{m+1}}
    x = {"x1": -1, f"x{N}": 1}

    def factors(k):
        return [(_merge(xinv, {"q": Q(k)}), 1, 1),
                (_merge(x, {"q": Q(k - 1)}), 1, 1)]

    theta = infinite_product(lat, work, factors)
    total = Series.zero(lat, work)
    radius = 0
    misses = 0
    while True:
        hit = False
        for kvec in itertools.product(range(-radius, radius + 1),
                                      repeat=m - 1):
            if max((abs(c) for c in kvec), default=0) != radius:
                continue
            ksum = sum(kvec)
            exps = {"q": sum(Q(k * (k + 1), 2) for k in kvec)}
            for i, k in enumerate(kvec):
                if k:
                    exps[f"x{i + 2}"] = k
            if ksum:
                exps[f"x{N}"] = exps.get(f"x{N}", 0) - ksum
            exps = {a: b for a, b in exps.items() if b}
            den = _merge(x, {"q": Q(ksum - s)})
            hden = lat.height(lat.key_of(den))
            mono = Series.monomial(lat, work, exps)
            if mono.is_zero():
                pass
            elif hden > 0:
                mono = div_one_plus(mono, den)
            elif hden < 0:
                flip = {a: -b for a, b in den.items()}
                mono = div_one_plus(
                    mono.mul_monomial(flip).truncate(work), flip)
            else:
                raise ValueError("zero-height denominator in the closed form")
            if not mono.is_zero():
                total = total + mono
                hit = True
        if radius > 0 and not hit:
            misses += 1
            if misses >= 2:
                break
        else:
            misses = 0
        radius += 1
        if radius > 300:
            raise RuntimeError("closed-form sum failed to close")
    phi_inv = euler_phi_inverse(lat, work)
    out = theta * total * phi_inv.power(m + 1)
    out = out.mul_monomial(pref)
    if out.cutoff < cutoff:
        raise AssertionError("precision bookkeeping lost the target cutoff")
    return out.truncate(cutoff)


def _merge(*dicts) -> dict:
    out: dict = {}
    for d in dicts:
        for k, v in d.items():
            out[k] = out.get(k, 0) + v
    return {k: v for k, v in out.items() if v}


def ch_appell_form(m: int, s: int, cutoff) -> Series:
    """Theta times multivariable Appell repackaging (one negative
    direction, m >= 2); equals phi(q) times the sector character."""
    if m < 2:
        raise ValueError("needs m >= 2")
    lat = gl_lattice(m, 1, "height")
    N = m + 1
    pref = {f"x{N}": s, "q": -Q(s, 2)}
    hpref = lat.height(lat.key_of(pref)) if s else Q(0)
    work = Q(cutoff) + max(Q(0), -hpref) + 1
    z1 = {"x1": 1, f"x{N}": -1}
    theta = theta_product(lat, work, z1)
    x = _merge({k: -v for k, v in z1.items()}, {"q": -Q(s)})
    zs = [_merge({f"x{i}": 1, f"x{N}": -1}, {"q": Q(1, 2)})
          for i in range(2, m + 1)]
    ident = [[1 if i == j else 0 for j in range(m - 1)] for i in range(m - 1)]
    ap = multi_appell(lat, work, ident, x, zs, [1] * (m - 1))
    phi_inv = euler_phi_inverse(lat, work)
    out = theta * ap * phi_inv.power(m + 1)
    out = out.mul_monomial(pref)
    if out.cutoff < cutoff:
        raise AssertionError("precision bookkeeping lost the target cutoff")
    return out.truncate(cutoff)
