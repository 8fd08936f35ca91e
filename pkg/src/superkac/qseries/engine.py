"""Sparse exact arithmetic for truncated formal sums of monomials.

A Series is a dictionary from integer exponent tuples to exact
coefficients.  Each lattice symbol carries an exponent denominator (the
stored integer is denominator times the true exponent) and a rational
height per unit exponent.  The single structural invariant is:

    every term of the represented formal object whose height is <= cutoff
    is stored exactly; nothing above cutoff is stored.

Products therefore know how far they remain exact: multiplying objects
whose stored terms start at heights h_A, h_B keeps the result exact to
min(cutoff_A + h_B, cutoff_B + h_A).  Truncation is always by height --
the grading is chosen per computation (pure q-degree for number-theoretic
identities, root height for characters), which is what makes geometric
expansion of denominators with negative q-powers legal.
"""

from __future__ import annotations

import heapq
from fractions import Fraction as Q
from math import gcd
from typing import Iterable, Mapping, Optional

__all__ = ["Lattice", "Series", "mul_one_plus", "div_one_plus",
           "geom_inverse", "product_one_plus"]


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


class Lattice:
    """Named exponent coordinates with denominators and heights."""

    def __init__(self, symbols, denoms=None, heights=None):
        self.symbols = tuple(symbols)
        k = len(self.symbols)
        self.denoms = tuple(denoms) if denoms else (1,) * k
        hs = tuple(Q(h) for h in heights) if heights else (Q(1),) * k
        if len(self.denoms) != k or len(hs) != k:
            raise ValueError("symbol/denominator/height size mismatch")
        self.heights = hs
        self.index = {s: i for i, s in enumerate(self.symbols)}
        unit = [hs[i] / self.denoms[i] for i in range(k)]
        hd = 1
        for u in unit:
            hd = _lcm(hd, u.denominator)
        self.hscale = hd
        self.hnum = tuple(int(u * hd) for u in unit)
        self.zero_key = (0,) * k

    def key_of(self, exps: Mapping[str, Q | int]) -> tuple[int, ...]:
        """Integer key of a monomial given true (rational) exponents."""
        out = [0] * len(self.symbols)
        for s, e in exps.items():
            i = self.index[s]
            scaled = Q(e) * self.denoms[i]
            if scaled.denominator != 1:
                raise ValueError(
                    f"exponent {e} of {s} not a multiple of 1/{self.denoms[i]}")
            out[i] = int(scaled)
        return tuple(out)

    def exps_of(self, key: tuple[int, ...]) -> dict[str, Q]:
        return {s: Q(e, self.denoms[i])
                for i, (s, e) in enumerate(zip(self.symbols, key)) if e}

    def hkey(self, key: tuple[int, ...]) -> int:
        """Height of a key, scaled by self.hscale (an integer)."""
        total = 0
        for e, h in zip(key, self.hnum):
            if e:
                total += e * h
        return total

    def height(self, key: tuple[int, ...]) -> Q:
        return Q(self.hkey(key), self.hscale)

    def __eq__(self, other):
        return (isinstance(other, Lattice)
                and self.symbols == other.symbols
                and self.denoms == other.denoms
                and self.heights == other.heights)

    def __hash__(self):
        return hash((self.symbols, self.denoms, self.heights))

    def __repr__(self):
        return f"Lattice({self.symbols})"


class Series:
    """Truncated formal sum, exact at heights <= cutoff."""

    __slots__ = ("lat", "cutoff", "terms", "_cut_scaled")

    def __init__(self, lat: Lattice, cutoff, terms: Optional[dict] = None):
        self.lat = lat
        self.cutoff = Q(cutoff)
        self._cut_scaled = self.cutoff * lat.hscale
        self.terms = terms if terms is not None else {}

    # -- constructors --------------------------------------------------

    @staticmethod
    def zero(lat: Lattice, cutoff) -> "Series":
        return Series(lat, cutoff)

    @staticmethod
    def one(lat: Lattice, cutoff) -> "Series":
        s = Series(lat, cutoff)
        if 0 <= s._cut_scaled:
            s.terms[lat.zero_key] = 1
        return s

    @staticmethod
    def monomial(lat: Lattice, cutoff, exps, coeff=1) -> "Series":
        s = Series(lat, cutoff)
        key = lat.key_of(exps)
        if coeff != 0 and lat.hkey(key) <= s._cut_scaled:
            s.terms[key] = coeff
        return s

    @staticmethod
    def from_terms(lat: Lattice, cutoff, items) -> "Series":
        s = Series(lat, cutoff)
        for exps, coeff in items:
            key = lat.key_of(exps) if isinstance(exps, dict) else exps
            if coeff != 0 and lat.hkey(key) <= s._cut_scaled:
                s.terms[key] = s.terms.get(key, 0) + coeff
                if s.terms[key] == 0:
                    del s.terms[key]
        return s

    # -- bookkeeping ----------------------------------------------------

    def min_height_scaled(self) -> Q | int:
        """Scaled height of the lowest stored term (cutoff when empty)."""
        if not self.terms:
            return self._cut_scaled
        return min(map(self.lat.hkey, self.terms))

    def is_zero(self) -> bool:
        return not self.terms

    def copy(self) -> "Series":
        return Series(self.lat, self.cutoff, dict(self.terms))

    def truncate(self, cutoff) -> "Series":
        cutoff = Q(cutoff)
        if cutoff > self.cutoff:
            raise ValueError("cannot extend a truncated series")
        out = Series(self.lat, cutoff)
        cut = out._cut_scaled
        hk = self.lat.hkey
        out.terms = {k: c for k, c in self.terms.items() if hk(k) <= cut}
        return out

    def _check(self, other: "Series") -> None:
        if self.lat != other.lat:
            raise ValueError("lattice mismatch")

    # -- ring operations --------------------------------------------------

    def __add__(self, other: "Series") -> "Series":
        self._check(other)
        out = Series(self.lat, min(self.cutoff, other.cutoff))
        cut = out._cut_scaled
        hk = self.lat.hkey
        terms = {k: c for k, c in self.terms.items() if hk(k) <= cut}
        for k, c in other.terms.items():
            if hk(k) <= cut:
                v = terms.get(k, 0) + c
                if v == 0:
                    terms.pop(k, None)
                else:
                    terms[k] = v
        out.terms = terms
        return out

    def __neg__(self) -> "Series":
        return self.scale(-1)

    def __sub__(self, other: "Series") -> "Series":
        return self + other.scale(-1)

    def scale(self, c) -> "Series":
        out = Series(self.lat, self.cutoff)
        if c != 0:
            out.terms = {k: c * v for k, v in self.terms.items()}
        return out

    def mul_monomial(self, exps, coeff=1) -> "Series":
        """Exact multiplication by a single monomial (shifts the cutoff)."""
        key = self.lat.key_of(exps) if isinstance(exps, dict) else exps
        dh = Q(self.lat.hkey(key), self.lat.hscale)
        out = Series(self.lat, self.cutoff + dh)
        if coeff != 0:
            out.terms = {tuple(a + b for a, b in zip(k, key)): coeff * v
                         for k, v in self.terms.items()}
        return out

    def __mul__(self, other: "Series") -> "Series":
        self._check(other)
        lat = self.lat
        hk = lat.hkey
        mh_a = self.min_height_scaled()
        mh_b = other.min_height_scaled()
        cut = min(self._cut_scaled + mh_b, other._cut_scaled + mh_a)
        out = Series(lat, Q(cut, lat.hscale)
                     if not isinstance(cut, Q) else cut / lat.hscale)
        big, small = ((self, other) if len(self.terms) >= len(other.terms)
                      else (other, self))
        sk = sorted(((hk(k), k) for k in small.terms))
        bk = sorted(((hk(k), k) for k in big.terms))
        cut_s = out._cut_scaled
        terms: dict = {}
        for hb, kb in bk:
            if hb + sk[0][0] > cut_s if sk else True:
                break
            cb = big.terms[kb]
            for hs, ks in sk:
                if hb + hs > cut_s:
                    break
                key = tuple(a + b for a, b in zip(kb, ks))
                v = terms.get(key, 0) + cb * small.terms[ks]
                if v == 0:
                    terms.pop(key, None)
                else:
                    terms[key] = v
        out.terms = terms
        return out

    def power(self, n: int) -> "Series":
        if n < 0:
            raise ValueError("negative powers need explicit inversion")
        result = Series.one(self.lat, self.cutoff)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    # -- inspection -------------------------------------------------------

    def coefficient(self, exps) -> Q | int:
        key = self.lat.key_of(exps) if isinstance(exps, dict) else exps
        return self.terms.get(key, 0)

    def items_sorted(self):
        hk = self.lat.hkey
        return sorted(self.terms.items(), key=lambda kv: (hk(kv[0]), kv[0]))

    def slice_exponent(self, sym: str, value) -> "Series":
        """Terms with the given exponent of one symbol, that symbol reset."""
        i = self.lat.index[sym]
        scaled = Q(value) * self.lat.denoms[i]
        if scaled.denominator != 1:
            return Series(self.lat, self.cutoff)
        want = int(scaled)
        out = Series(self.lat, self.cutoff)
        for k, c in self.terms.items():
            if k[i] == want:
                kk = list(k)
                kk[i] = 0
                out.terms[tuple(kk)] = c
        return out

    def exponent_range(self, sym: str) -> tuple[Q, Q]:
        i = self.lat.index[sym]
        if not self.terms:
            return Q(0), Q(0)
        vals = [k[i] for k in self.terms]
        d = self.lat.denoms[i]
        return Q(min(vals), d), Q(max(vals), d)

    def map_terms(self, target: "Lattice", cutoff, fn) -> "Series":
        """Monomial-wise image under fn(key, coeff) -> (exps, coeff).

        The caller is responsible for precision: fn must not move terms
        from above the source cutoff to at or below the target cutoff.
        """
        out = Series(target, cutoff)
        cut = out._cut_scaled
        for k, c in self.terms.items():
            exps, coeff = fn(k, c)
            if coeff == 0:
                continue
            key = target.key_of(exps)
            if target.hkey(key) <= cut:
                v = out.terms.get(key, 0) + coeff
                if v == 0:
                    out.terms.pop(key, None)
                else:
                    out.terms[key] = v
        return out

    def substitute(self, target: "Lattice", cutoff,
                   images: Mapping[str, tuple]) -> "Series":
        """Monomial substitution sym -> (coeff, exps-on-target).

        Symbols absent from images map to the same-named target symbol.
        """
        keys = []
        for i, s in enumerate(self.lat.symbols):
            if s in images:
                coeff, exps = images[s]
                keys.append((i, coeff, {t: Q(e) for t, e in exps.items()}))
            else:
                keys.append((i, 1, {s: Q(1)}))
        den = self.lat.denoms

        def fn(key, c):
            acc: dict[str, Q] = {}
            coeff = c
            for i, base_coeff, img in keys:
                e = key[i]
                if not e:
                    continue
                steps = Q(e, den[i])
                if base_coeff != 1:
                    if steps.denominator != 1:
                        raise ValueError(
                            "fractional power of a signed image coefficient")
                    coeff = coeff * Q(base_coeff) ** int(steps)
                for t, v in img.items():
                    acc[t] = acc.get(t, Q(0)) + steps * v
            return {t: v for t, v in acc.items() if v}, coeff

        return self.map_terms(target, cutoff, fn)

    # -- comparison and io --------------------------------------------------

    def equal_below(self, other: "Series", cutoff=None):
        """Exact comparison up to a height; returns (bool, first diff)."""
        self._check(other)
        cut = min(self.cutoff, other.cutoff)
        if cutoff is not None:
            if Q(cutoff) > cut:
                raise ValueError(
                    f"comparison cutoff {cutoff} exceeds precision {cut}")
            cut = Q(cutoff)
        cut_s = cut * self.lat.hscale
        hk = self.lat.hkey
        keys = set(self.terms) | set(other.terms)
        diffs = [(hk(k), k) for k in keys
                 if hk(k) <= cut_s
                 and self.terms.get(k, 0) != other.terms.get(k, 0)]
        if not diffs:
            return True, None
        h, k = min(diffs)
        return False, {
            "offset": {s: str(e) for s, e in self.lat.exps_of(k).items()},
            "height": str(Q(h, self.lat.hscale)),
            "lhs": str(self.terms.get(k, 0)),
            "rhs": str(other.terms.get(k, 0)),
        }

    def to_json(self) -> dict:
        return {
            "symbols": list(self.lat.symbols),
            "cutoff": str(self.cutoff),
            "terms": [
                {"offset": {s: str(e)
                            for s, e in self.lat.exps_of(k).items()},
                 "coeff": str(c)}
                for k, c in self.items_sorted()
            ],
        }

    def __repr__(self):
        shown = self.items_sorted()[:6]
        inner = " + ".join(
            f"{c}*{self.lat.exps_of(k) or 1}" for k, c in shown)
        more = "" if len(self.terms) <= 6 else f" ... ({len(self.terms)} terms)"
        return f"<Series {inner}{more} | cutoff {self.cutoff}>"


def mul_one_plus(s: Series, exps, coeff=1) -> Series:
    """s * (1 + coeff * M) for a monomial M, in one pass.

    A factor of negative height lowers the precision of the result by
    that height, exactly as a general product would.
    """
    lat = s.lat
    key = lat.key_of(exps) if isinstance(exps, dict) else exps
    dh = lat.hkey(key)
    new_cut = s.cutoff + min(Q(0), Q(dh, lat.hscale))
    out = Series(lat, new_cut)
    cut = out._cut_scaled
    hk = lat.hkey
    terms = {k: c for k, c in s.terms.items() if hk(k) <= cut}
    for k, c in s.terms.items():
        if hk(k) + dh > cut:
            continue
        kk = tuple(a + b for a, b in zip(k, key))
        v = terms.get(kk, 0) + coeff * c
        if v == 0:
            terms.pop(kk, None)
        else:
            terms[kk] = v
    out.terms = terms
    return out


def div_one_plus(s: Series, exps, coeff=1) -> Series:
    """s / (1 + coeff * M) by back-substitution in height order.

    M must have strictly positive height; a nonpositive height signals a
    mis-oriented expansion chamber and raises ValueError.
    """
    lat = s.lat
    key = lat.key_of(exps) if isinstance(exps, dict) else exps
    dh = lat.hkey(key)
    if dh <= 0:
        raise ValueError(
            "geometric expansion needs a factor of positive height "
            f"(got height {Q(dh, lat.hscale)}); flip the expansion chamber")
    out = Series(lat, s.cutoff)
    cut = out._cut_scaled
    hk = lat.hkey
    heap = [(hk(k), k) for k in s.terms if hk(k) <= cut]
    heapq.heapify(heap)
    queued = {k for _, k in heap}
    terms: dict = {}
    while heap:
        h, k = heapq.heappop(heap)
        queued.discard(k)
        prev = tuple(a - b for a, b in zip(k, key))
        val = s.terms.get(k, 0) - coeff * terms.get(prev, 0)
        if val != 0:
            terms[k] = val
            if h + dh <= cut:
                nxt = tuple(a + b for a, b in zip(k, key))
                if nxt not in queued and nxt not in terms:
                    heapq.heappush(heap, (h + dh, nxt))
                    queued.add(nxt)
    out.terms = terms
    return out


def geom_inverse(lat: Lattice, cutoff, exps, coeff=1) -> Series:
    """(1 + coeff*M)^(-1) expanded to the cutoff height."""
    return div_one_plus(Series.one(lat, cutoff), exps, coeff)


def product_one_plus(lat: Lattice, cutoff,
                     factors: Iterable[tuple], start: Optional[Series] = None
                     ) -> Series:
    """Product of factors (1 + coeff*M)^(+-1).

    factors yields (exps, coeff, power) with power in {+1, -1}; factors
    whose monomial height exceeds the cutoff are skipped (they cannot
    touch stored terms).
    """
    s = start if start is not None else Series.one(lat, cutoff)
    for exps, coeff, power in factors:
        key = lat.key_of(exps) if isinstance(exps, dict) else exps
        # a skipped factor only affects terms above h(M) + min height
        if lat.hkey(key) + s.min_height_scaled() > s._cut_scaled:
            continue
        if power == 1:
            s = mul_one_plus(s, key, coeff)
        elif power == -1:
            s = div_one_plus(s, key, coeff)
        else:
            raise ValueError("factor power must be +1 or -1")
    return s
