"""Exponent lattices for character series and census comparisons.

Characters of the charged free-field space live on symbols
q, x1..x{m+n} (and a charge marker z): a term with exponents
(E, v_1..v_{m+n}, s) stands for z^s e^{v.eps - E delta}, the implicit
anchor e^{Lambda_0} being tracked by the caller.  Two gradings are used:

* "energy": height = E, for direct comparison with the state census;
* "height": height = E(m+n) + sum v_j (j - (m+n+1)/2), the root height
  of the weight offset, which makes every factor appearing in the
  product and sum formulas expandable and is the grading the series
  cutoffs refer to.
"""

from __future__ import annotations

from fractions import Fraction as Q
from typing import Optional

from ..qseries import Lattice, Series
from ..weights import WeightVector

__all__ = ["gl_lattice", "osp_lattice", "weight_exps", "series_census",
           "census_max_height", "charge_slice", "encode_weight_monomial"]


def gl_lattice(m: int, n: int, grading: str = "height", qden: int = 2,
               with_z: bool = False, xden: int = 1) -> Lattice:
    N = m + n
    syms = ["q"] + [f"x{j}" for j in range(1, N + 1)] + (
        ["z"] if with_z else [])
    if grading == "energy":
        heights = [Q(1)] + [Q(0)] * N + ([Q(0)] if with_z else [])
    elif grading == "height":
        heights = [Q(N)] + [Q(j) - Q(N + 1, 2) for j in range(1, N + 1)] \
            + ([Q(0)] if with_z else [])
    else:
        raise ValueError("grading must be 'energy' or 'height'")
    denoms = [qden] + [xden] * N + ([1] if with_z else [])
    return Lattice(syms, denoms, heights)


def osp_lattice(m: int, n: int, qden: int = 2) -> Lattice:
    """Energy-graded lattice for the neutral free-field characters."""
    syms = ["q"] + [f"x{j}" for j in range(1, m + n + 1)]
    return Lattice(syms, [qden] + [1] * (m + n),
                   [Q(1)] + [Q(0)] * (m + n))


def weight_exps(wv: WeightVector, N: int) -> tuple[Q, dict]:
    """Split a weight into (L0-level, lattice exponents of e^weight)."""
    exps: dict = {}
    level = Q(0)
    for sym, c in wv.coeffs:
        if sym == "L0":
            level = c
        elif sym == "d":
            exps["q"] = -c
        elif sym.startswith("e"):
            exps[f"x{sym[1:]}"] = c
        else:
            raise ValueError(f"cannot encode symbol {sym}")
    return level, exps


def encode_weight_monomial(lat: Lattice, cutoff, wv: WeightVector,
                           coeff=1) -> tuple[Q, Series]:
    level, exps = weight_exps(wv, 0)
    return level, Series.monomial(lat, cutoff, exps, coeff)


def series_census(s: Series, emax: Q, charge: Optional[int] = None) -> dict:
    """Terms with energy <= emax as {(charge, 2E, eps): coeff}.

    For a series without a z symbol, pass the slice's charge explicitly.
    """
    lat = s.lat
    iq = lat.index["q"]
    iz = lat.index.get("z")
    xs = [i for i, sym in enumerate(lat.symbols) if sym.startswith("x")]
    out: dict = {}
    emax2 = 2 * Q(emax)
    for key, c in s.terms.items():
        e2 = Q(2 * key[iq], lat.denoms[iq])
        if e2 > emax2:
            continue
        if e2.denominator != 1:
            raise ValueError("half-integer grid expected for energies")
        sval = key[iz] if iz is not None else charge
        eps = tuple(key[i] // lat.denoms[i] for i in xs)
        out[(sval, int(e2), eps)] = c
    return out


def census_restrict(census: dict, emax: Q, charge: Optional[int] = None
                    ) -> dict:
    emax2 = 2 * Q(emax)
    return {k: v for k, v in census.items()
            if k[1] <= emax2 and (charge is None or k[0] == charge)}


def census_max_height(census: dict, lat: Lattice, emax: Q) -> Q:
    """Largest height of any census entry with energy <= emax."""
    best = Q(0)
    emax2 = 2 * Q(emax)
    for (s, e2, eps) in census:
        if e2 > emax2:
            continue
        exps = {"q": Q(e2, 2)}
        exps.update({f"x{j + 1}": v for j, v in enumerate(eps) if v})
        h = lat.height(lat.key_of(exps))
        best = max(best, h)
    return best


def charge_slice(s: Series, charge: int) -> Series:
    return s.slice_exponent("z", charge)
