"""Odd reflections, Weyl-vector tracking, and chain-based nilpotency tests.

An odd reflection at an isotropic odd simple root produces a new simple
system for the same superalgebra.  Walking a chain of such reflections
while tracking the highest weight gives a decision procedure for local
nilpotency of a root vector that becomes simple at the end of the chain:
the criterion is an integrality test on an odd-reflection-corrected
pairing, evaluated exactly on rational data.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction as Q
from typing import Optional

from .rootdata import SuperCartanDatum, _matrix
from .weights import WeightVector

__all__ = ["reflect", "reflect_weight", "ReflectionChain", "chain_test",
           "chain_test_value", "standard_chain"]


def reflect(datum: SuperCartanDatum, s: int) -> SuperCartanDatum:
    """Odd reflection of a datum at node s (odd isotropic required).

    Roots, coroots and parities follow the base-change rules; the Cartan
    and Gram matrices are recomputed for the new system.  Reflecting twice
    at the same node restores the original datum.
    """
    if s not in datum.odd_set or datum.cartan[s][s] != 0:
        raise ValueError(f"node {s} is not an odd isotropic simple root")
    a = datum.cartan
    roots, coroots, odd = [], [], set()
    for i in datum.index_set:
        if i == s:
            roots.append(-1 * datum.simple_roots[s])
            coroots.append(-1 * datum.simple_coroots[s])
            odd.add(i)
            continue
        if a[s][i] != 0:
            roots.append(datum.simple_roots[i] + datum.simple_roots[s])
            coroots.append(datum.simple_coroots[i]
                           + (a[i][s] / a[s][i]) * datum.simple_coroots[s])
            if i not in datum.odd_set:
                odd.add(i)
        else:
            roots.append(datum.simple_roots[i])
            coroots.append(datum.simple_coroots[i])
            if i in datum.odd_set:
                odd.add(i)
    form = datum.form
    k = len(roots)
    cartan = _matrix([[form.inner(roots[j], coroots[i]) for j in range(k)]
                      for i in range(k)])
    gram = _matrix([[form.inner(roots[i], roots[j]) for j in range(k)]
                    for i in range(k)])
    for i in range(k):
        for j in range(k):
            if (cartan[i][j] == 0) != (cartan[j][i] == 0):
                raise AssertionError("reflected Cartan breaks the zero pattern")
    # delta keeps a nonnegative integral decomposition on any simple system
    from .rootdata import root_coordinates
    new = SuperCartanDatum(
        family=datum.family, m=datum.m, n=datum.n, a=datum.a,
        basis=datum.basis, form=form,
        index_set=datum.index_set, odd_set=frozenset(odd),
        simple_roots=tuple(roots), simple_coroots=tuple(coroots),
        cartan=cartan, gram=gram,
        delta_coeffs=(), u=datum.u, h_dual=datum.h_dual, theta=datum.theta,
        finite_symbols=datum.finite_symbols,
    )
    coords = root_coordinates(new, WeightVector.make(datum.basis, {"d": Q(1)}))
    if any(c.denominator != 1 or c < 0 for c in coords):
        raise AssertionError("delta lost its nonnegative integral coordinates")
    new.delta_coeffs = tuple(int(c) for c in coords)
    return new


def reflect_weight(datum: SuperCartanDatum, lam: WeightVector,
                   rho: WeightVector, s: int) -> tuple[WeightVector, WeightVector]:
    """Track (highest weight, Weyl vector) through the odd reflection at s.

    The Weyl vector always picks up the reflecting root; the highest
    weight moves only when its label there is nonzero, so that the sum
    lam + rho either stays fixed or gains the root, never anything else.
    """
    if s not in datum.odd_set or datum.cartan[s][s] != 0:
        raise ValueError(f"node {s} is not an odd isotropic simple root")
    beta = datum.simple_roots[s]
    bvee = datum.simple_coroots[s]
    new_rho = rho + beta
    if datum.form.inner(lam, bvee) == 0:
        return lam, new_rho
    return lam - beta, new_rho


@dataclass
class ReflectionChain:
    """A walkable odd-reflection chain with a distinguished target root.

    data[i] is the simple system before the i-th reflection; nodes[i] the
    reflected node; betas[i] the reflecting root.  The target is a root of
    the final system: an even simple root tested through the corrected
    integrality criterion, or an odd non-isotropic simple root ("black"
    mode) whose attached even root is tested instead.
    """

    data: list[SuperCartanDatum]
    nodes: list[int]
    betas: list[WeightVector]
    target: WeightVector
    target_coroot: WeightVector
    mode: str = "even"  # "even" | "black"

    def length(self) -> int:
        return len(self.nodes)

    def final(self) -> SuperCartanDatum:
        return self.data[-1]


def _chain_from_roots(datum: SuperCartanDatum, beta_list: list[WeightVector],
                      target: WeightVector, mode: str) -> ReflectionChain:
    data = [datum]
    nodes = []
    cur = datum
    for beta in beta_list:
        try:
            s = cur.simple_roots.index(beta)
        except ValueError:
            raise AssertionError(f"chain root {beta} not simple in its system")
        nodes.append(s)
        cur = reflect(cur, s)
        data.append(cur)
    if target not in cur.simple_roots and mode == "even":
        raise AssertionError("target root did not become simple")
    tv = cur.form.coroot(target)
    return ReflectionChain(data, nodes, list(beta_list), target, tv, mode)


def standard_chain(datum: SuperCartanDatum, which: str = "principal") -> ReflectionChain:
    """The distinguished chain exposing the missing affine simple root.

    gl/sl(m|n): principal needs m >= 2 and walks n isotropic roots built
    from alpha_0 and the tail of the negative side; subprincipal mirrors
    it through the odd node.  B(1,n): principal walks 2n roots; the
    subprincipal test reflects once and lands on a black node.
    """
    fam = datum.family
    al = datum.simple_roots
    if fam in ("GL", "SL"):
        m, n = datum.m, datum.n
        if which == "principal":
            if m < 2:
                raise ValueError("principal chain needs m >= 2")
            betas = []
            acc = al[0]
            betas.append(acc)
            for j in range(1, n):
                acc = acc + al[m + n - j]
                betas.append(acc)
            target = al[0]
            for i in range(m, m + n):
                target = target + al[i]
            return _chain_from_roots(datum, betas, target, "even")
        if which == "subprincipal":
            if n < 2:
                raise ValueError("subprincipal chain needs n >= 2")
            betas = []
            acc = al[m]
            betas.append(acc)
            for j in range(1, m):
                acc = acc + al[m - j]
                betas.append(acc)
            target = al[0]
            for i in range(1, m + 1):
                target = target + al[i]
            return _chain_from_roots(datum, betas, target, "even")
        raise ValueError(f"unknown chain kind {which!r}")
    if fam == "B" and datum.m == 1:
        n = datum.n
        if which == "principal":
            betas = []
            acc = al[n]
            betas.append(acc)
            for j in range(1, n + 1):
                acc = acc + al[n - j]
                betas.append(acc)
            # beta_n .. beta_{2n-1}
            acc2 = betas[-1]
            for j in range(1, n):
                acc2 = acc2 + al[j]
                betas.append(acc2)
            assert len(betas) == 2 * n
            target = datum.alpha_prime0()
            return _chain_from_roots(datum, betas, target, "even")
        if which == "subprincipal":
            betas = [al[n]]
            target = al[n] + al[n + 1]  # the black root delta_n
            return _chain_from_roots(datum, betas, target, "black")
        raise ValueError(f"unknown chain kind {which!r}")
    raise ValueError(f"no standard chain for family {fam}")


def chain_test_value(chain: ReflectionChain, lam: WeightVector,
                     rho: WeightVector) -> tuple[Q, list[int]]:
    """Walk the chain; return the decisive pairing and the zero-label set."""
    cur_lam, cur_rho = lam, rho
    S: list[int] = []
    for i, (datum, s) in enumerate(zip(chain.data, chain.nodes)):
        bvee = datum.simple_coroots[s]
        if datum.form.inner(cur_lam, bvee) == 0:
            S.append(i)
        cur_lam, cur_rho = reflect_weight(datum, cur_lam, cur_rho, s)
    form = chain.data[0].form
    if chain.mode == "black":
        # odd non-isotropic target: test the label of the final weight
        return form.inner(cur_lam, chain.target_coroot), S
    corrected = lam + rho
    for i in S:
        corrected = corrected + chain.betas[i]
    return form.inner(corrected, chain.target_coroot), S


def chain_test(chain: ReflectionChain, lam: WeightVector,
               rho: WeightVector) -> bool:
    """Local nilpotency of the root vector at minus the target root."""
    v, _ = chain_test_value(chain, lam, rho)
    if chain.mode == "black":
        # even half of the osp(1|2) string: the label must be in 2 Z_+
        return v.denominator == 1 and v >= 0 and int(v) % 2 == 0
    return v.denominator == 1 and v >= 1
