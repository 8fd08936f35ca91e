"""Decision procedures for integrability of highest weight modules.

Every classifier consumes exact rational labels (values of the highest
weight on the simple coroots) and returns a Verdict carrying a trace of
the individual conditions, so a failure pinpoints the violated clause.
Fractional labels are legal; integrality is asserted only where a
condition demands it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction as Q
from typing import Callable, Optional

from .rootdata import SuperCartanDatum, build, partial_levels

__all__ = ["Verdict", "Level1Family", "classify_gl", "classify_principal",
           "classify_subprincipal", "classify_B0n", "enumerate_level1",
           "vacuum_integrable"]


def _is_nonneg_int(x: Q) -> bool:
    return x.denominator == 1 and x >= 0


@dataclass
class Verdict:
    integrable: bool
    clauses: list[tuple[str, bool]] = field(default_factory=list)
    witness: Optional[dict] = None
    level: Optional[Q] = None

    def to_json(self) -> dict:
        return {
            "integrable": self.integrable,
            "clause_trace": [[name, ok] for name, ok in self.clauses],
            "witness": ({k: str(v) for k, v in self.witness.items()}
                        if self.witness else None),
            "level": str(self.level) if self.level is not None else None,
        }


def _verdict(clauses: list[tuple[str, bool]], witness=None, level=None) -> Verdict:
    return Verdict(all(ok for _, ok in clauses), clauses, witness, level)


# -- gl(m|n)^ ---------------------------------------------------------------

def classify_gl(m: int, n: int, labels) -> Verdict:
    """Integrability over gl(m|n)^ from the labels (k_0, ..., k_{m+n-1}).

    For m = 1 only the finite even labels matter.  For m >= 2 the partial
    level k' = k_0 + k_m - sum of the negative-side labels must be a
    nonnegative integer and, when k' < n, the weight must lie on one of
    the degenerate tails: for some s <= k' the odd label satisfies
    k_m = k_{m+1} + ... + k_{m+s} + s with the next n - k' - 1 labels zero.
    """
    k = tuple(Q(x) for x in labels)
    if len(k) != m + n:
        raise ValueError("expected m+n labels")
    clauses: list[tuple[str, bool]] = []
    if m == 1:
        ok = all(_is_nonneg_int(k[i]) for i in range(2, n + 1))
        clauses.append(("even-labels-nonneg-int", ok))
        return _verdict(clauses)
    evens = list(range(1, m)) + list(range(m + 1, m + n))
    clauses.append(("even-labels-nonneg-int",
                    all(_is_nonneg_int(k[i]) for i in evens)))
    kp = k[0] + k[m] - sum(k[m + 1:m + n], Q(0))
    clauses.append(("partial-level-nonneg-int", _is_nonneg_int(kp)))
    witness = None
    if all(ok for _, ok in clauses) and kp < n:
        found = None
        for s in range(0, min(int(kp), n - 1) + 1):
            if k[m] != sum(k[m + 1:m + 1 + s], Q(0)) + s:
                continue
            zero_to = m + s + n - int(kp) - 1
            if all(k[j] == 0 for j in range(m + s + 1, zero_to + 1)):
                found = s
                break
        clauses.append(("degenerate-tail", found is not None))
        if found is not None:
            witness = {"s": Q(found), "r": kp - found}
    level = kp + sum(k[1:m], Q(0))
    return _verdict(clauses, witness, level)


# -- Theorem-style principal classifier -------------------------------------

def _supplementary_BD(k, kp, m, n, half_tail: bool) -> tuple[bool, Optional[dict]]:
    """The four degenerate possibilities shared by the B and D series.

    half_tail replaces the last label by half its value in the third
    possibility (the B(1,n) reading, where k' itself arrives pre-halved).
    """
    last = len(k) - 1
    # the trivial weight always passes: with every label zero the walk
    # never drops the decisive pairing, whatever k' is
    if all(x == 0 for x in k):
        return True, {"case": "trivial"}
    # (i) k' = r+s with r < s, a single 1 at position s, zeros elsewhere past r
    if kp.denominator == 1:
        for r in range(0, int(kp) + 1):
            s = int(kp) - r
            if not r < s or s > last:
                continue
            if k[s] == 1 and all(k[j] == 0 for j in range(r + 1, last + 1)
                                 if j != s):
                return True, {"case": "single-one", "r": Q(r), "s": Q(s)}
        # (ii) k' = r+s with r <= s, zeros past r, k_r nonzero
        for r in range(0, min(int(kp) // 2, last) + 1):
            s = int(kp) - r
            if s < r:
                continue
            if k[r] != 0 and all(k[j] == 0 for j in range(r + 1, last + 1)):
                return True, {"case": "head-block", "r": Q(r), "s": Q(s)}
    # (iii) k' = n+r, zeros strictly inside the negative chain, odd label
    # balanced against its right neighbour
    tail = k[n + 1] / 2 if half_tail else k[n + 1]
    if (kp - n).denominator == 1 and kp - n >= 0:
        r = int(kp - n)
        if (all(k[j] == 0 for j in range(r + 1, n)) and k[n] != 0
                and k[n] + tail + 1 == 0):
            return True, {"case": "balanced-odd", "r": Q(r)}
    # (iv) k' >= n+r, zeros past r, k_r nonzero
    for r in range(0, last + 1):
        if kp >= n + r and k[r] != 0 and all(k[j] == 0
                                             for j in range(r + 1, last + 1)):
            return True, {"case": "deep-head", "r": Q(r)}
    return False, None


def classify_principal(datum: SuperCartanDatum, labels) -> Verdict:
    """Principal integrability for the families with a nontrivial test.

    gl(1|n)-type data, B(0,n) and C(n) are excluded (their classification
    is an unconditional label test handled elsewhere).
    """
    fam = datum.family
    k = tuple(Q(x) for x in labels)
    if len(k) != len(datum.index_set):
        raise ValueError("label count mismatch")
    if fam in ("GL", "SL"):
        if datum.m < 2:
            raise ValueError("principal test excluded for m=1 gl data")
        return classify_gl(datum.m, datum.n, k)
    if fam in ("B0", "C"):
        raise ValueError(f"{fam} excluded from the principal test")
    pl = partial_levels(datum, k)
    lev = pl["level"]
    clauses: list[tuple[str, bool]] = []
    evens = [i for i in datum.index_set
             if i != 0 and i not in datum.odd_set]
    clauses.append(("even-labels-nonneg-int",
                    all(_is_nonneg_int(k[i]) for i in evens)))
    witness = None
    if fam not in ("B", "D", "D21", "F4", "G3"):
        raise ValueError(f"unsupported family {fam}")

    if fam == "D21":
        a = datum.a
        kpp, kpm = pl["k_prime_plus"], pl["k_prime_minus"]
        kd = pl["k_dprime"]
        clauses.append(("partial-levels-nonneg-int",
                        _is_nonneg_int(kpp) and _is_nonneg_int(kpm)
                        and _is_nonneg_int(kd)))
        if all(ok for _, ok in clauses) and min(kpp, kpm) <= datum.b_prime:
            ok, witness = _supplementary_D21(a, k, kpp, kpm)
            clauses.append(("degenerate-principal", ok))
        if all(ok for _, ok in clauses) and kd <= datum.b_dprime:
            clauses.append(("degenerate-subprincipal",
                            _supplementary_dbl(datum, k, kd)))
        return _verdict(clauses, witness, lev)

    if fam in ("F4", "G3"):
        kp, kd = pl["k_prime"], pl["k_dprime"]
        clauses.append(("partial-levels-nonneg-int",
                        _is_nonneg_int(kp) and _is_nonneg_int(kd)))
        if all(ok for _, ok in clauses) and kp <= datum.b_prime:
            u0 = datum.u  # the distinguished fractional label of u*L0
            ok = ((kp == 0 and all(x == 0 for x in k))
                  or (kp == 1 and k[0] == u0
                      and all(k[i] == 0 for i in datum.index_set if i != 0)))
            clauses.append(("degenerate-principal", ok))
        if all(ok for _, ok in clauses) and kd <= datum.b_dprime:
            clauses.append(("degenerate-subprincipal",
                            _supplementary_dbl(datum, k, kd)))
        return _verdict(clauses, witness, lev)

    # B(m,n) and D(m,n)
    m, n = datum.m, datum.n
    if fam == "D" and m == 2:
        kpp, kpm = pl["k_prime_plus"], pl["k_prime_minus"]
        kd = pl["k_dprime"]
        clauses.append(("partial-levels-nonneg-int",
                        _is_nonneg_int(kpp) and _is_nonneg_int(kpm)
                        and _is_nonneg_int(kd)))
        if all(ok for _, ok in clauses) and min(kpp, kpm) <= datum.b_prime:
            ok = kpp == kpm
            w2 = None
            if ok:
                ok, w2 = _supplementary_BD(k, kpp, m, n, half_tail=False)
                if ok and w2 and w2["case"] == "balanced-odd":
                    ok = k[n] + k[n + 2] + 1 == 0
            clauses.append(("degenerate-principal", ok))
            witness = w2
        if all(ok for _, ok in clauses) and kd <= datum.b_dprime:
            clauses.append(("degenerate-subprincipal",
                            _supplementary_dbl(datum, k, kd)))
        return _verdict(clauses, witness, lev)

    kp, kd = pl["k_prime"], pl["k_dprime"]
    half = fam == "B" and m == 1
    clauses.append(("partial-levels-nonneg-int",
                    _is_nonneg_int(kp) and _is_nonneg_int(kd)))
    if all(ok for _, ok in clauses) and kp <= datum.b_prime:
        kp_eff = kp / 2 if half else kp
        ok, witness = _supplementary_BD(k, kp_eff, m, n, half_tail=half)
        clauses.append(("degenerate-principal", ok))
    if all(ok for _, ok in clauses) and kd <= datum.b_dprime:
        clauses.append(("degenerate-subprincipal",
                        _supplementary_dbl(datum, k, kd)))
    return _verdict(clauses, witness, lev)


def _supplementary_D21(a: Q, k, kpp: Q, kpm: Q) -> tuple[bool, Optional[dict]]:
    def star() -> bool:
        r = -k[1]
        if not (r.denominator == 1 and r >= 1):
            return False
        if (r / a).denominator != 1 or r / a < 1:
            return False
        return (k[0] == -r / (a + 1) - 1 and k[2] == r - 1
                and k[3] == r / a - 1)

    if kpp * kpm == 0 and all(x == 0 for x in k):
        return True, {"case": "zero-partial-level"}
    a_int = a.denominator == 1 and a >= 1
    ainv_int = (1 / a).denominator == 1 and 1 / a >= 1
    if (a > 0 and not a_int and not ainv_int and (kpp == 1 or kpm == 1)
            and kpp == kpm == 1 and star()):
        return True, {"case": "generic-a-star"}
    if ainv_int and kpp == 1:
        if star():
            return True, {"case": "inverse-integer-a-star"}
        if k[0] == -1 / (a + 1) and k[1] == k[2] == k[3] == 0:
            return True, {"case": "inverse-integer-a-basic"}
    if a_int and kpm == 1:
        if star():
            return True, {"case": "integer-a-star"}
        if k[0] == -a / (a + 1) and k[1] == k[2] == k[3] == 0:
            return True, {"case": "integer-a-basic"}
    return False, None


def _supplementary_dbl(datum: SuperCartanDatum, k, kd: Q) -> bool:
    """Extra conditions on the negative-definite side when k'' is small."""
    fam, m, n = datum.family, datum.m, datum.n
    if fam == "B":
        if kd.denominator != 1:
            return False
        return all(k[j] == 0 for j in range(n + int(kd) + 1, m + n + 1))
    if fam == "C":
        return k[0] == 0 and k[1] == 0
    if fam == "D":
        if kd.denominator != 1:
            return False
        if kd <= m - 2:
            return all(k[j] == 0 for j in range(n + int(kd) + 1, m + n + 1))
        if kd == m - 1:
            return k[m + n - 1] == k[m + n]
        return False
    if fam == "D21":
        a = datum.a
        if kd == 0:
            return k[1] == k[2] == k[3] == 0
        if kd == 1:
            return k[2] + 1 == abs(a) * (k[3] + 1)
        return False
    if fam == "F4":
        if kd == 0:
            return k[1] == k[2] == k[3] == k[4] == 0
        if kd == 2:
            return k[2] == 0 and k[4] == 0
        if kd == 3:
            return k[2] == 2 * k[4] + 1
        return False
    if fam == "G3":
        if kd == 0:
            return k[1] == k[2] == k[3] == 0
        if kd == 2:
            return k[2] == 0
        return False
    raise ValueError(f"no subprincipal side for {fam}")


# -- subprincipal classifier -------------------------------------------------

def classify_subprincipal(datum: SuperCartanDatum, labels) -> Verdict:
    """Integrability with respect to the negative-definite even side."""
    fam = datum.family
    k = tuple(Q(x) for x in labels)
    if len(k) != len(datum.index_set):
        raise ValueError("label count mismatch")
    clauses: list[tuple[str, bool]] = []
    witness = None
    if fam in ("GL", "SL"):
        m, n = datum.m, datum.n
        evens = list(range(1, m)) + list(range(m + 1, m + n))
        clauses.append(("even-labels-nonneg-int",
                        all(_is_nonneg_int(k[i]) for i in evens)))
        kd = -sum(k[0:m + 1], Q(0))
        clauses.append(("partial-level-nonneg-int", _is_nonneg_int(kd)))
        if all(ok for _, ok in clauses) and kd < m:
            # mirror of the principal tail analysis: walk down the
            # positive chain from the odd node, counting zero labels of
            # the running pairing; each zero step buys one unit back
            t = k[m]
            zeros = 0
            for j in range(m):
                if t == 0:
                    zeros += 1
                if j < m - 1:
                    t = t + k[m - 1 - j] + (1 if t != 0 else 0)
            clauses.append(("degenerate-tail", kd + zeros >= m))
            witness = {"zero-steps": Q(zeros)}
        level = -(kd + sum(k[m + 1:m + n], Q(0)))
        return _verdict(clauses, witness, level)
    if fam not in ("B", "C", "D", "D21", "F4", "G3"):
        raise ValueError(f"unsupported family {fam}")
    pl = partial_levels(datum, k)
    kd = pl["k_dprime"]
    evens = [i for i in datum.index_set if i not in datum.odd_set]
    clauses.append(("even-labels-nonneg-int",
                    all(_is_nonneg_int(k[i]) for i in evens)))
    clauses.append(("partial-level-nonneg-int", _is_nonneg_int(kd)))
    if all(ok for _, ok in clauses) and kd <= datum.b_dprime:
        clauses.append(("degenerate-subprincipal",
                        _supplementary_dbl(datum, k, kd)))
    return _verdict(clauses, witness, pl["level"])


# -- B(0,n)^ ----------------------------------------------------------------

def classify_B0n(n: int, labels) -> Verdict:
    """Integrability over B(0,n)^: all labels in Z_+, last one even."""
    k = tuple(Q(x) for x in labels)
    if len(k) != n + 1:
        raise ValueError("expected n+1 labels")
    clauses = [
        ("labels-nonneg-int", all(_is_nonneg_int(x) for x in k)),
        ("black-label-even", k[n].denominator == 1 and k[n] >= 0
         and int(k[n]) % 2 == 0),
    ]
    level = 2 * sum(k[0:n], Q(0)) + k[n]
    return _verdict(clauses, level=level)


# -- level-1 enumerations ----------------------------------------------------

@dataclass
class Level1Family:
    """One family of level-1 highest weights, possibly a-parametric."""

    description: str
    parametric: bool
    instantiate: Callable[[int], tuple[Q, ...]]

    def labels(self, a: int = 0) -> tuple[Q, ...]:
        if not self.parametric and a != 0:
            raise ValueError("family has no parameter")
        return self.instantiate(a)


def _unit(size: int, entries: dict[int, Q]) -> tuple[Q, ...]:
    out = [Q(0)] * size
    for i, v in entries.items():
        out[i] = Q(v)
    return tuple(out)


def enumerate_level1(datum: SuperCartanDatum) -> list[Level1Family]:
    """The complete list of principal integrable level-1 highest weights."""
    fam = datum.family
    size = len(datum.index_set)
    out: list[Level1Family] = []
    if fam in ("GL", "SL"):
        m, n = datum.m, datum.n
        if m < 2:
            raise ValueError("level-1 list needs m >= 2")
        for s in range(1, m):
            out.append(Level1Family(
                f"L_{s}", False, (lambda s=s: lambda a: _unit(size, {s: Q(1)}))()))
        if n >= 2:
            out.append(Level1Family(
                "(a+1) L_m + a L_{m+1}", True,
                lambda a: _unit(size, {m: Q(a + 1), m + 1: Q(a)})))
            out.append(Level1Family(
                "(a+1) L_0 + a L_{m+n-1}", True,
                lambda a: _unit(size, {0: Q(a + 1), m + n - 1: Q(a)})))
        else:
            out.append(Level1Family(
                "(a+1) L_m - a L_0", True,
                lambda a: _unit(size, {m: Q(a + 1), 0: Q(-a)})))
            out.append(Level1Family(
                "(a+1) L_0 - a L_m", True,
                lambda a: _unit(size, {0: Q(a + 1), m: Q(-a)})))
        return out
    if fam in ("B", "D"):
        if fam == "B" and datum.m == 0:
            raise ValueError("no principal level-1 list for B(0,n)")
        sign = Q(-1) if datum.n == 1 else Q(1)
        out.append(Level1Family(
            "-1/2 L_0", False, lambda a: _unit(size, {0: Q(-1, 2)})))
        out.append(Level1Family(
            "-3/2 L_0 -+ L_1", False,
            lambda a: _unit(size, {0: Q(-3, 2), 1: sign})))
        return out
    if fam == "D21":
        a_par = datum.a
        if (1 / a_par).denominator != 1 or a_par <= 0:
            raise ValueError("level-1 list needs 1/a a positive integer")
        out.append(Level1Family(
            "-(a+1)^{-1} L_0", False,
            lambda a: _unit(size, {0: -1 / (a_par + 1)})))
        out.append(Level1Family(
            "-(a+2)/(a+1) L_0 - L_1 + (1-a)/a L_3", False,
            lambda a: _unit(size, {0: -(a_par + 2) / (a_par + 1),
                                   1: Q(-1), 3: (1 - a_par) / a_par})))
        return out
    if fam == "F4":
        out.append(Level1Family(
            "-2/3 L_0", False, lambda a: _unit(size, {0: Q(-2, 3)})))
        return out
    if fam == "G3":
        out.append(Level1Family(
            "-3/4 L_0", False, lambda a: _unit(size, {0: Q(-3, 4)})))
        return out
    raise ValueError(f"no level-1 enumeration for {fam}")


# -- vacuum modules ----------------------------------------------------------

def vacuum_integrable(datum: SuperCartanDatum, k, which: str = "principal") -> bool:
    """Integrability of the level-k vacuum module L(k u L0)."""
    k = Q(k)
    fam = datum.family
    if which == "subprincipal":
        if fam not in ("B", "C", "D", "D21", "F4", "G3"):
            raise ValueError(f"no subprincipal vacuum rule for {fam}")
        k0 = k * datum.u
        return _is_nonneg_int(k0)
    if which != "principal":
        raise ValueError("which must be principal or subprincipal")
    if fam in ("GL", "SL"):
        if datum.m < 2:
            raise ValueError("no principal vacuum rule for m=1 gl data")
        return _is_nonneg_int(k)
    if fam == "B" and datum.m == 1:
        # integer levels, plus half-integer levels from n upward (the
        # deep-head clause of the classifier admits 2k' >= 2(n+r) with
        # k' odd; verified against the reflection-chain criterion)
        half = k - Q(1, 2)
        return _is_nonneg_int(k) or (_is_nonneg_int(half) and k >= datum.n)
    if fam in ("B", "D", "F4", "G3"):
        if fam == "B" and datum.m < 2:
            raise ValueError("B(0,n) has no principal vacuum rule")
        return _is_nonneg_int(k)
    if fam == "D21":
        return _is_nonneg_int(k) and _is_nonneg_int(k / datum.a)
    raise ValueError(f"no principal vacuum rule for {fam}")
