"""Brute-force free-field oracle.

States are explicit occupation records of creation modes at half-integer
energies: fermionic modes appear at most once, bosonic modes carry a
multiplicity.  Enumerating every state up to an energy cutoff and
grading by (charge, energy, weight) yields exact graded dimensions that
every character formula is tested against.  Quadratic currents act on
the same records with explicit fermionic signs, giving spot checks of
the bracket relations including the central term.

Species codes: +c creates an unstarred quantum of species c, -c the
starred partner; 0 is the neutral fermion of odd orthosymplectic types.
Energies are half-integers stored doubled.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction as Q
from math import comb
from typing import Iterable, Optional

from .rootdata import build
from .weights import WeightVector

__all__ = ["FockState", "enumerate_gl", "enumerate_osp", "gl_states",
           "lowest_component", "apply_current", "bracket_samples",
           "census_dimensions"]


@dataclass(frozen=True)
class FockState:
    """Occupation record: fermionic modes once, bosonic with multiplicity."""

    fermions: tuple[tuple[int, int], ...]   # (code, 2k), canonical order
    bosons: tuple[tuple[tuple[int, int], int], ...]  # ((code, 2k), mult)

    def energy2(self) -> int:
        return (sum(k2 for _, k2 in self.fermions)
                + sum(k2 * m for (_, k2), m in self.bosons))

    def charge(self) -> int:
        c = sum(1 if code > 0 else (-1 if code < 0 else 0)
                for code, _ in self.fermions)
        c += sum((1 if code > 0 else -1) * m
                 for (code, _), m in self.bosons)
        return c

    def eps_weight(self, dim: int) -> tuple[int, ...]:
        """Finite weight: net count per epsilon direction."""
        w = [0] * dim
        for code, _ in self.fermions:
            if code:
                w[abs(code) - 1] += 1 if code > 0 else -1
        for (code, _), m in self.bosons:
            w[abs(code) - 1] += m if code > 0 else -m
        return tuple(w)


def _fermion_configs(codes: list[int], emax2: int):
    """All sets of fermionic modes with total doubled energy <= emax2."""
    modes = [(c, k2) for c in codes for k2 in range(1, emax2 + 1, 2)]
    out = [[]]
    for mode in modes:
        extend = []
        for cfg in out:
            e = sum(k2 for _, k2 in cfg)
            if e + mode[1] <= emax2:
                extend.append(cfg + [mode])
        out.extend(extend)
    return [tuple(sorted(cfg)) for cfg in out]


def _boson_configs(codes: list[int], emax2: int):
    """All multisets of bosonic modes with doubled energy <= emax2."""
    modes = [(c, k2) for c in codes for k2 in range(1, emax2 + 1, 2)]
    out = [[]]
    for mode in modes:
        extend = []
        for cfg in out:
            e = sum(k2 * m for (_, k2), m in cfg)
            mult = 1
            while e + mode[1] * mult <= emax2:
                extend.append(cfg + [(mode, mult)])
                mult += 1
        out.extend(extend)
    return [tuple(sorted(cfg)) for cfg in out]


def gl_states(m: int, n: int, emax: Q) -> list[FockState]:
    """Every state of the charged free-field space with energy <= emax."""
    emax2 = int(2 * Q(emax))
    fcodes = [c for i in range(1, m + 1) for c in (i, -i)]
    bcodes = [c for j in range(m + 1, m + n + 1) for c in (j, -j)]
    fermi = _fermion_configs(fcodes, emax2)
    bose = _boson_configs(bcodes, emax2)
    bose_by_e: dict[int, list] = {}
    for cfg in bose:
        e = sum(k2 * mult for (_, k2), mult in cfg)
        bose_by_e.setdefault(e, []).append(cfg)
    out = []
    for f in fermi:
        ef = sum(k2 for _, k2 in f)
        for eb, cfgs in bose_by_e.items():
            if ef + eb <= emax2:
                out.extend(FockState(f, b) for b in cfgs)
    return out


def enumerate_gl(m: int, n: int, emax: Q) -> dict:
    """Census {(charge, doubled energy, eps weight) -> multiplicity}."""
    census: dict = {}
    for st in gl_states(m, n, emax):
        key = (st.charge(), st.energy2(), st.eps_weight(m + n))
        census[key] = census.get(key, 0) + 1
    return census


def enumerate_osp(M: int, N: int, emax: Q, parity: Optional[str] = None) -> dict:
    """Census for the neutral free-field space of osp(M|N), N even.

    parity "+" (resp. "-") keeps states with an even (resp. odd) number
    of creation operators; None keeps everything.  Keys are
    (parity sign, doubled energy, eps weight) with so-side epsilons
    first, sp-side after.
    """
    if N % 2:
        raise ValueError("N must be even")
    m, n = M // 2, N // 2
    emax2 = int(2 * Q(emax))
    fcodes = [c for i in range(1, m + 1) for c in (i, -i)]
    if M % 2:
        fcodes.append(0)
    bcodes = [c for j in range(m + 1, m + n + 1) for c in (j, -j)]
    fermi = _fermion_configs(fcodes, emax2)
    bose = _boson_configs(bcodes, emax2)
    bose_by_e: dict[int, list] = {}
    for cfg in bose:
        e = sum(k2 * mult for (_, k2), mult in cfg)
        bose_by_e.setdefault(e, []).append(cfg)
    census: dict = {}
    for f in fermi:
        ef = sum(k2 for _, k2 in f)
        nf = len(f)
        for eb, cfgs in bose_by_e.items():
            if ef + eb > emax2:
                continue
            for b in cfgs:
                st = FockState(f, b)
                count = nf + sum(mult for _, mult in b)
                sign = "+" if count % 2 == 0 else "-"
                if parity is not None and sign != parity:
                    continue
                key = (sign, st.energy2(), st.eps_weight(m + n))
                census[key] = census.get(key, 0) + 1
    return census


def census_dimensions(census: dict) -> dict:
    """Total dimension per (sector, doubled energy)."""
    out: dict = {}
    for (s, e2, _), mult in census.items():
        out[(s, e2)] = out.get((s, e2), 0) + mult
    return out


def lowest_component(m: int, n: int, s: int):
    """Energy, dimension, and highest weight of the bottom of a sector.

    The bottom layer is the s-th (super)exterior power of the standard
    representation, sitting at energy |s|/2; the highest weight is read
    off the extremal state built from the lightest modes.
    """
    t = abs(s)
    dim = sum(comb(m, j) * comb(n - 1 + t - j, t - j) if n > 0 else
              (comb(m, j) if j == t else 0)
              for j in range(0, min(t, m) + 1))
    datum = build("GL", m, n)
    basis = datum.basis
    coeffs: dict = {"L0": Q(1), "d": -Q(t, 2)}
    if s >= 0:
        for i in range(1, min(s, m) + 1):
            coeffs[f"e{i}"] = Q(1)
        if s > m:
            coeffs[f"e{m + 1}"] = Q(s - m)
    else:
        coeffs[f"e{m + n}"] = Q(s)
    return Q(t, 2), dim, WeightVector.make(basis, coeffs)


# -- currents ---------------------------------------------------------------

def _insert_fermion(state: FockState, mode) -> Optional[tuple[int, FockState]]:
    if mode in state.fermions:
        return None
    fl = list(state.fermions)
    pos = 0
    while pos < len(fl) and fl[pos] < mode:
        pos += 1
    sign = (-1) ** pos
    fl.insert(pos, mode)
    return sign, FockState(tuple(fl), state.bosons)


def _remove_fermion(state: FockState, mode) -> Optional[tuple[int, FockState]]:
    if mode not in state.fermions:
        return None
    pos = state.fermions.index(mode)
    sign = (-1) ** pos
    fl = list(state.fermions)
    fl.pop(pos)
    return sign, FockState(tuple(fl), state.bosons)


def _boson_mult(state: FockState, mode) -> int:
    for mo, mult in state.bosons:
        if mo == mode:
            return mult
    return 0


def _set_boson(state: FockState, mode, mult) -> FockState:
    bl = [(mo, mu) for mo, mu in state.bosons if mo != mode]
    if mult:
        bl.append((mode, mult))
    return FockState(state.fermions, tuple(sorted(bl)))


def _apply_single(state: FockState, code: int, k2: int, fermionic: bool):
    """One mode operator x^(code)_{k2/2}; yields (coeff, state) terms."""
    if k2 < 0:
        mode = (code, -k2)
        if fermionic:
            res = _insert_fermion(state, mode)
            return [res] if res else []
        mult = _boson_mult(state, mode)
        return [(1, _set_boson(state, mode, mult + 1))]
    # positive modes annihilate the starred partner quantum
    mode = (-code, k2)
    if fermionic:
        res = _remove_fermion(state, mode)
        return [res] if res else []
    mult = _boson_mult(state, mode)
    if mult == 0:
        return []
    # pairing sign of the symplectic bosons: phi against phi* is -1
    amp = -mult if code > 0 else mult
    return [(amp, _set_boson(state, mode, mult - 1))]


def apply_current(m: int, n: int, pair: tuple[int, int], r: int,
                  state: FockState, emax: Q) -> dict:
    """Level-1 action of the (I,J) matrix-unit current mode r.

    Returns a dictionary state -> coefficient.  Output components above
    the energy cap raise, so callers control truncation explicitly.
    """
    I, J = pair
    emax2 = int(2 * Q(emax))
    if state.energy2() - 2 * r > emax2:
        raise ValueError("current output exceeds the energy cap")
    fx = I <= m
    fy = J <= m
    out: dict = {}

    def accumulate(coeff, st):
        if coeff:
            out[st] = out.get(st, 0) + coeff
            if out[st] == 0:
                del out[st]

    # annihilate-first splittings: y*_b with b > 0
    for code, k2 in list(state.fermions) + [mo for mo, _ in state.bosons]:
        if code != J:
            continue
        b2 = k2
        a2 = 2 * r - b2
        for c1, st1 in _apply_single(state, -J, b2, fy):
            for c2, st2 in _apply_single(st1, I, a2, fx):
                accumulate(c1 * c2, st2)
    # create-first splittings: y*_b with b < 0 (reordering sign if both odd).
    # For a = r - b > 0, x_a must annihilate a present quantum, which
    # bounds b; for a < 0 both modes create, possible only for 2r < b < 0.
    sign = -1 if (fx and fy) else 1
    present_x = [k2 for code, k2 in state.fermions if code == -I] + \
        [mo[1] for mo, _ in state.bosons if mo[0] == -I]
    max_x = max(present_x) if present_x else None
    b2 = -1
    while True:
        a2 = 2 * r - b2
        if a2 > 0 and (max_x is None or a2 > max_x):
            break
        for c1, st1 in _apply_single(state, I, a2, fx):
            for c2, st2 in _apply_single(st1, -J, b2, fy):
                accumulate(sign * c1 * c2, st2)
        b2 -= 2
    return out


def current_parity(m: int, pair: tuple[int, int]) -> int:
    I, J = pair
    return ((I > m) + (J > m)) % 2


def super_bracket(m: int, n: int, p1: tuple[int, int], r1: int,
                  p2: tuple[int, int], r2: int, state: FockState,
                  emax: Q) -> dict:
    """[X1, X2] (super) applied to a state, computed the long way."""
    eps = -1 if (current_parity(m, p1) and current_parity(m, p2)) else 1
    big = Q(emax) + 2 * (abs(r1) + abs(r2)) + 4
    out: dict = {}
    for (fp, fr), (sp, sr), coeff in (((p2, r2), (p1, r1), 1),
                                      ((p1, r1), (p2, r2), -eps)):
        for st1, c1 in apply_current(m, n, fp, fr, state, big).items():
            for st2, c2 in apply_current(m, n, sp, sr, st1, big).items():
                v = out.get(st2, 0) + coeff * c1 * c2
                if v == 0:
                    out.pop(st2, None)
                else:
                    out[st2] = v
    return out


def bracket_samples(m: int, n: int, count: int, emax: Q,
                    seed: int = 0) -> list[dict]:
    """Random super-bracket identities checked exactly on random states.

    Each sample verifies [E_{IJ}(r), E_{KL}(s)] = delta_{JK} E_{IL}(r+s)
    - (sign) delta_{LI} E_{KJ}(r+s) + r delta_{r,-s} str(e_IJ e_KL) on a
    random state; returns one report per sample.
    """
    rng = random.Random(seed)
    states = gl_states(m, n, emax)
    dim = m + n
    reports = []
    for _ in range(count):
        st = rng.choice(states)
        I, J, K, L = (rng.randint(1, dim) for _ in range(4))
        r = rng.randint(-2, 2)
        s = rng.choice([-r, rng.randint(-2, 2)])
        lhs = super_bracket(m, n, (I, J), r, (K, L), s, st, emax)
        rhs: dict = {}

        def add(dic, coeff):
            for k, v in dic.items():
                w = rhs.get(k, 0) + coeff * v
                if w == 0:
                    rhs.pop(k, None)
                else:
                    rhs[k] = w

        big = Q(emax) + 2 * (abs(r) + abs(s)) + 4
        p1 = current_parity(m, (I, J))
        p2 = current_parity(m, (K, L))
        sign = -1 if (p1 and p2) else 1
        if J == K:
            add(apply_current(m, n, (I, L), r + s, st, big), 1)
        if L == I:
            add(apply_current(m, n, (K, J), r + s, st, big), -sign)
        if r + s == 0 and J == K and I == L:
            strab = (1 if I <= m else -1)
            add({st: 1}, r * strab)
        ok = lhs == rhs
        reports.append({
            "pair1": (I, J), "r": r, "pair2": (K, L), "s": s,
            "state_energy": str(Q(st.energy2(), 2)), "ok": ok,
        })
    return reports
