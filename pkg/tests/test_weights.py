import random
from fractions import Fraction as Q

import pytest

from superkac.rootdata import build
from superkac.weights import WeightVector, wv


def test_inner_epsilon_signs():
    d = build("GL", 2, 1)
    f = d.form
    assert f.inner(wv(d.basis, e1=1), wv(d.basis, e1=1)) == 1
    assert f.inner(wv(d.basis, e3=1), wv(d.basis, e3=1)) == -1
    assert f.inner(f.delta(), f.delta()) == 0


def test_inner_alpha2_alpha0():
    # expand alpha_0 = d - e1 + e3 and alpha_2 = e2 - e3
    d = build("GL", 2, 1)
    assert d.form.inner(d.alpha(2), d.alpha(0)) == 1


def test_inner_basis_mismatch():
    d1 = build("GL", 2, 1)
    d2 = build("GL", 1, 1)
    with pytest.raises(ValueError):
        d1.form.inner(d1.Lambda0(), d2.Lambda0())


def _random_vec(basis, syms, rng):
    return WeightVector.make(
        basis, {s: Q(rng.randint(-6, 6), rng.randint(1, 4)) for s in syms})


def test_inner_symmetric_bilinear():
    d = build("GL", 2, 2)
    syms = ["L0", "d", "e1", "e2", "e3", "e4"]
    rng = random.Random(7)
    for _ in range(25):
        a = _random_vec(d.basis, syms, rng)
        b = _random_vec(d.basis, syms, rng)
        c = _random_vec(d.basis, syms, rng)
        t = Q(rng.randint(-3, 3), rng.randint(1, 3))
        assert d.form.inner(a, b) == d.form.inner(b, a)
        assert d.form.inner(a + t * b, c) == \
            d.form.inner(a, c) + t * d.form.inner(b, c)


def test_levels():
    d = build("GL", 2, 1)
    assert d.form.level(d.Lambda0()) == 1
    assert d.form.level(d.delta()) == 0
    for m, n in [(2, 1), (3, 1), (2, 2), (3, 2)]:
        g = build("GL", m, n)
        from superkac.rootdata import weyl_vector
        assert g.form.level(weyl_vector(g)) == m - n


def test_coroots():
    d = build("GL", 2, 1)
    assert d.form.coroot(d.alpha(1)) == d.alpha(1)
    g = build("GL", 2, 2)
    assert g.form.coroot(g.alpha(3)) == -1 * g.alpha(3)
    assert g.form.coroot(g.alpha(2)) == g.alpha(2)  # isotropic branch
    # involution away from the isotropic cone
    rng = random.Random(3)
    for _ in range(20):
        v = _random_vec(g.basis, ["e1", "e2", "e3", "e4"], rng)
        if g.form.inner(v, v) != 0:
            assert g.form.coroot(g.form.coroot(v)) == v


def test_translate():
    d = build("GL", 2, 1)
    f = d.form
    alpha = d.alpha(1)
    assert f.translate(alpha, f.delta()) == f.delta()
    t = f.translate(alpha, d.Lambda0())
    assert t == d.Lambda0() + alpha - Q(1, 2) * f.inner(alpha, alpha) * f.delta()
    zero = WeightVector.make(d.basis, {})
    lam = wv(d.basis, L0=2, e1=1, e2=-1, d=Q(1, 2))
    assert f.translate(zero, lam) == lam
    with pytest.raises(ValueError):
        f.translate(d.Lambda0(), lam)


def test_translate_group_law_and_level():
    d = build("GL", 3, 1)
    f = d.form
    rng = random.Random(11)
    finite = ["e1", "e2", "e3", "e4"]
    for _ in range(20):
        a = _random_vec(d.basis, finite[:3], rng)
        b = _random_vec(d.basis, finite[:3], rng)
        lam = _random_vec(d.basis, ["L0", "d"] + finite, rng)
        assert f.level(f.translate(a, lam)) == f.level(lam)
        lhs = f.translate(a, f.translate(b, lam))
        assert lhs == f.translate(a + b, lam)


def test_json_roundtrip():
    lam = wv("GL(2|1)^", L0=1, e1=Q(3, 2), d=-2)
    j = lam.to_json()
    assert j["coeffs"]["e1"] == "3/2"
    assert WeightVector.from_json(j) == lam
