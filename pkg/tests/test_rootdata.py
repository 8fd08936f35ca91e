import random
from fractions import Fraction as Q

import pytest

from superkac.rootdata import (build, labels_of, partial_levels,
                               positive_roots, root_height, weight_of,
                               weyl_vector)
from superkac.weights import wv

ALL = [
    build("GL", 2, 1), build("GL", 1, 1), build("GL", 2, 2),
    build("GL", 3, 1), build("SL", 3, 2),
    build("B", 1, 1), build("B", 1, 2), build("B", 2, 1), build("B", 2, 2),
    build("B0", n=2), build("B0", n=3),
    build("C", n=2), build("C", n=3), build("C", n=4),
    build("D", 2, 1), build("D", 2, 2), build("D", 3, 1), build("D", 3, 2),
    build("D21", a=Q(1, 2)), build("D21", a=Q(2, 3)), build("D21", a=2),
    build("F4"), build("G3"),
]


def test_build_gl21_basics():
    d = build("GL", 2, 1)
    assert d.odd_set == {0, 2}
    assert d.delta_coeffs == (1, 1, 1)
    assert sum((c * r for c, r in zip(d.delta_coeffs, d.simple_roots)),
               wv(d.basis)) == d.delta()


def test_build_g3_delta():
    d = build("G3")
    assert d.delta_coeffs == (1, 2, 4, 2)


def test_build_d21_gram():
    d = build("D21", a=Q(1, 2))
    assert d.gram[3][3] == 1  # 2a
    assert d.gram[1][2] == -1
    assert d.gram[1][3] == Q(-1, 2)  # -a
    with pytest.raises(ValueError):
        build("D21", a=0)
    with pytest.raises(ValueError):
        build("D21", a=-1)


def test_cartan_diag_and_zero_pattern():
    for d in ALL:
        k = d.rank()
        for i in range(k):
            assert d.cartan[i][i] in (0, 2)
            for j in range(k):
                assert (d.cartan[i][j] == 0) == (d.cartan[j][i] == 0)


def test_cartan_matches_inner_products():
    for d in ALL:
        for i in d.index_set:
            for j in d.index_set:
                assert d.cartan[i][j] == d.form.inner(
                    d.simple_roots[j], d.simple_coroots[i])


def test_gl_table_gram():
    # diag(1,...,1,-1,...,-1) times the Cartan matrix reproduces the Gram
    for m, n in [(2, 1), (2, 2), (3, 2)]:
        d = build("GL", m, n)
        for i in d.index_set:
            sign = Q(1) if i <= m else Q(-1)
            for j in d.index_set:
                assert d.gram[i][j] == sign * d.cartan[i][j]


def test_weyl_vector_defining_property():
    for d in ALL:
        rho = weyl_vector(d)
        for i in d.index_set:
            assert d.form.inner(rho, d.simple_coroots[i]) == d.cartan[i][i] / 2
        assert rho.get("d") == 0
        assert d.form.level(rho) == d.h_dual


def test_weyl_vector_alpha_prime0_pairing():
    for m, n in [(2, 1), (2, 2), (3, 2)]:
        d = build("GL", m, n)
        rho = weyl_vector(d)
        a0p = d.alpha_prime0()
        assert d.form.inner(rho, d.form.coroot(a0p)) == -n + 1


def test_alpha_prime0_simple_root_sum():
    for m, n in [(2, 1), (2, 2), (3, 2)]:
        d = build("GL", m, n)
        acc = d.alpha(0)
        for i in range(m, m + n):
            acc = acc + d.alpha(i)
        assert acc == d.alpha_prime0()


def test_labels_weight_roundtrip():
    rng = random.Random(5)
    for d in ALL:
        for _ in range(5):
            ks = [Q(rng.randint(-4, 4), rng.randint(1, 3))
                  for _ in d.index_set]
            lam = weight_of(d, ks, d_eigenvalue=Q(rng.randint(-2, 2)))
            lbl = labels_of(d, lam)
            assert list(lbl.labels) == ks
            assert lbl.d_eigenvalue == lam.get("d")


def test_fundamental_weights():
    d = build("GL", 2, 1)
    lam1 = weight_of(d, [0, 1, 0])
    assert labels_of(d, lam1).labels == (0, 1, 0)
    lam0 = weight_of(d, [1, 0, 0])
    assert lam0 == d.Lambda0()


def test_partial_levels_match_distinguished_coroots():
    # Every tabulated partial level equals the pairing with the
    # corresponding distinguished coroot computed from the root data.
    rng = random.Random(9)
    for d in ALL:
        if d.family in ("B0",):
            continue
        for _ in range(6):
            ks = [Q(rng.randint(-5, 5), rng.randint(1, 2))
                  for _ in d.index_set]
            lam = weight_of(d, ks)
            pl = partial_levels(d, ks)
            assert pl["level"] == d.form.level(lam)
            if "k_prime" in pl and d.theta_prime is not None:
                a0p = d.alpha_prime0()
                assert pl["k_prime"] == d.form.inner(lam, d.form.coroot(a0p))
            if "k_prime_plus" in pl:
                ap, am = d.alpha_prime0_pm()
                assert pl["k_prime_plus"] == d.form.inner(lam, d.form.coroot(ap))
                assert pl["k_prime_minus"] == d.form.inner(lam, d.form.coroot(am))
            if "k_dprime" in pl:
                if d.family == "C":
                    add = d.delta() - 2 * wv(d.basis, f1=1)
                else:
                    add = d.alpha_dprime
                assert pl["k_dprime"] == d.form.inner(lam, d.form.coroot(add))


def test_b_prime_values():
    # b' = -<rho, alpha'_0 coroot>, b'' = -<rho, alpha'' coroot>
    for d in ALL:
        rho = weyl_vector(d)
        if d.theta_prime is not None:
            bp = -d.form.inner(rho, d.form.coroot(d.alpha_prime0()))
            assert bp == d.b_prime
        if d.theta_prime_plus is not None:
            ap, am = d.alpha_prime0_pm()
            assert -d.form.inner(rho, d.form.coroot(ap)) == d.b_prime
            assert -d.form.inner(rho, d.form.coroot(am)) == d.b_prime
        if d.alpha_dprime is not None:
            bd = -d.form.inner(rho, d.form.coroot(d.alpha_dprime))
            assert bd == d.b_dprime
        if d.family == "C":
            add = d.delta() - 2 * wv(d.basis, f1=1)
            assert -d.form.inner(rho, d.form.coroot(add)) == d.b_dprime == 0


def test_positive_roots_gl21():
    d = build("GL", 2, 1)
    roots1 = [(r, p) for r, p, mult in positive_roots(d, 1)]
    simple = [(d.alpha(0), "odd"), (d.alpha(1), "even"), (d.alpha(2), "odd")]
    for pair in simple:
        assert pair in roots1
    assert len(roots1) == 3
    # delta enters with multiplicity 3 = dim of the diagonal subalgebra
    mults = {tuple(sorted(r.coeffs)): mu for r, p, mu in positive_roots(d, 3)}
    assert mults[tuple(sorted(d.delta().coeffs))] == 3
    # e1 - e3 = alpha_1 + alpha_2 is an odd positive root
    top = wv(d.basis, e1=1, e3=-1)
    found = [(r, p) for r, p, mu in positive_roots(d, 2) if r == top]
    assert found == [(top, "odd")]


def test_positive_roots_counts_finite():
    d = build("GL", 2, 2)
    finite = [(r, p) for r, p, mu in positive_roots(d, 30)
              if r.get("d") == 0]
    assert len([1 for r, p in finite if p == "even"]) == 2
    assert len([1 for r, p in finite if p == "odd"]) == 4
    b = build("B", 1, 1)
    fin = [(r, p) for r, p, mu in positive_roots(b, 30) if r.get("d") == 0]
    # B(1,1): even +-2f, e... positives: 2f1, e1, f1+-e1 odd, f1 odd
    assert len(fin) == 5


def test_root_height():
    d = build("GL", 2, 1)
    assert root_height(d, d.delta()) == 3
    assert root_height(d, wv(d.basis, e1=1, e3=-1)) == 2


def test_datum_json():
    d = build("GL", 2, 1)
    j = d.to_json()
    assert j["parities"] == ["odd", "even", "odd"]
    assert j["delta_coeffs"] == [1, 1, 1]
    assert j["cartan"][0][0] == "0"
