import random
from fractions import Fraction as Q

import pytest

from superkac.qseries import (Lattice, Series, appell, div_one_plus,
                              euler_phi, euler_phi_inverse, geom_inverse,
                              jacobi_triple, lemma_double_sum_identity,
                              mul_one_plus, multi_appell, psi_product,
                              specialize_markers, super_product_identity,
                              theta_product, theta_series)
from superkac.qseries.functions import marker_lattice


def qlat(markers=(), **kw):
    return marker_lattice(markers, **kw)


def test_monomial_and_add():
    lat = qlat(["z"])
    s = Series.monomial(lat, 5, {"q": Q(3, 2), "z": -2}, 4)
    assert s.coefficient({"q": Q(3, 2), "z": -2}) == 4
    z = Series.zero(lat, 5)
    assert (s + z).terms == s.terms
    assert (s - s).is_zero()


def test_mul_simple():
    lat = qlat(["z"])
    one_plus = Series.from_terms(lat, 6, [({}, 1), ({"q": 1, "z": 1}, 1)])
    one_minus = Series.from_terms(lat, 6, [({}, 1), ({"q": 1, "z": 1}, -1)])
    prod = one_plus * one_minus
    assert prod.coefficient({}) == 1
    assert prod.coefficient({"q": 2, "z": 2}) == -1
    assert len(prod.terms) == 2


def test_ring_axioms_random():
    lat = qlat(["z", "w"])
    rng = random.Random(13)

    def rand_series():
        s = Series.zero(lat, 6)
        for _ in range(6):
            s = s + Series.monomial(
                lat, 6,
                {"q": Q(rng.randint(0, 10), 2), "z": rng.randint(-3, 3),
                 "w": rng.randint(-2, 2)},
                rng.randint(-4, 4))
        return s

    for _ in range(12):
        a, b, c = rand_series(), rand_series(), rand_series()
        lhs = (a * b) * c
        rhs = a * (b * c)
        eq, diff = lhs.equal_below(rhs, min(lhs.cutoff, rhs.cutoff))
        assert eq, diff
        eq, diff = (a * (b + c)).equal_below(a * b + a * c)
        assert eq, diff


def test_geom_inverse_basic():
    lat = qlat()
    g = geom_inverse(lat, 3, {"q": 1}, -1)  # 1/(1-q)
    assert [g.coefficient({"q": j}) for j in range(4)] == [1, 1, 1, 1]
    lat2 = qlat(["z"], marker_heights={"z": Q(1, 2)})
    g2 = geom_inverse(lat2, 4, {"z": 1})  # 1/(1+z), z of height 1/2
    prod = mul_one_plus(g2, {"z": 1})
    assert prod.coefficient({}) == 1 and len(prod.terms) == 1


def test_geom_inverse_two_sided():
    lat = qlat(["z"])
    for exps, coeff in [({"q": Q(1, 2), "z": 1}, 1), ({"q": 2, "z": -1}, -1)]:
        g = geom_inverse(lat, 8, exps, coeff)
        back = mul_one_plus(g, exps, coeff)
        assert back.coefficient({}) == 1 and len(back.terms) == 1
        s = Series.from_terms(lat, 8, [({}, 2), ({"q": 1}, -3)])
        assert div_one_plus(mul_one_plus(s, exps, coeff), exps, coeff).terms \
            == s.terms


def test_geom_inverse_rejects_nonpositive_height():
    lat = qlat(["z"])
    with pytest.raises(ValueError):
        geom_inverse(lat, 5, {"z": 1})  # z has height 0
    with pytest.raises(ValueError):
        geom_inverse(lat, 5, {"q": -1})


def test_euler_phi():
    lat = qlat()
    phi = euler_phi(lat, 5)
    assert phi.items_sorted() == Series.from_terms(
        lat, 5, [({}, 1), ({"q": 1}, -1), ({"q": 2}, -1),
                 ({"q": 5}, 1)]).items_sorted()
    assert phi.coefficient({}) == 1
    inv = euler_phi_inverse(lat, 5)
    prod = phi * inv
    assert prod.coefficient({}) == 1 and len(prod.terms) == 1
    # partition numbers
    assert [inv.coefficient({"q": j}) for j in range(6)] == [1, 1, 2, 3, 5, 7]


def test_mul_monomial_negative_shift_tracks_cutoff():
    lat = qlat()
    s = euler_phi(lat, 6)
    shifted = s.mul_monomial({"q": -2})
    assert shifted.cutoff == 4
    assert shifted.coefficient({"q": -2}) == 1


def test_jacobi_triple_small_and_deep():
    lhs, rhs = jacobi_triple(10)
    eq, diff = lhs.equal_below(rhs, 10)
    assert eq, diff
    # the constant z-coefficient of the product form is 1 at q^0
    assert lhs.coefficient({}) == 1


def test_super_product_identity():
    lhs, rhs = super_product_identity(8)
    assert lhs.coefficient({}) == 1
    assert rhs.coefficient({}) == 1
    eq, diff = lhs.equal_below(rhs, 8)
    assert eq, diff
    # the z -> 1/z symmetry of the product side
    flip = Series(lhs.lat, lhs.cutoff,
                  {tuple([k[0], -k[1]]): c for k, c in lhs.terms.items()})
    eq, diff = lhs.equal_below(flip, 8)
    assert eq, diff


def test_theta_product_vs_series():
    lat = qlat(["z"])
    # Theta(z q^(1/2); q) in series form is the k-sum with shifted argument
    prod = theta_product(lat, 9, {"z": 1})
    ser = theta_series(lat, 9, {"z": 1, "q": Q(1, 2)})
    eq, diff = prod.equal_below(ser, 9)
    assert eq, diff
    assert prod.coefficient({}) == 1


def test_theta_is_x0_appell():
    lat = qlat(["z", "x"], marker_heights={"x": Q(1, 3)})
    th = theta_series(lat, 6, {"z": 1})
    ap = appell(lat, 6, {"x": 1, "q": 3}, {"z": 1})
    # at x of positive height, A(x q^3,...) - Theta is divisible by x q^3
    diff = th - ap
    for k, c in diff.terms.items():
        assert k[lat.index["x"]] != 0


def test_psi_constant_term():
    lat = qlat(["z"])
    psi = psi_product(lat, 6, {"z": 1})
    const = psi.slice_exponent("q", 0)
    assert const.coefficient({}) == 1
    assert const.coefficient({"z": 1}) == 1
    assert len(const.terms) == 2


def test_psi_symmetry():
    # Psi(1/z q; q) = Psi(z; q).  The substitution shifts heights by the
    # z-exponent, so the source needs enough margin: at q-degree a the
    # z-exponents of Psi lie within +-(a+1), hence source degree <= 2c+2
    # suffices for image degree <= c.
    lat = qlat(["z"])
    psi = psi_product(lat, 7, {"z": 1})
    deep = psi_product(lat, 16, {"z": 1})
    sub = deep.substitute(lat, 7, {"z": (1, {"z": -1, "q": 1})})
    eq, diff = psi.equal_below(sub, 7)
    assert eq, diff


def test_psi_theta_reindex():
    # Psi(z; q) = Theta(z q^(-1/2); q) / phi(q)
    lat = qlat(["z"])
    psi = psi_product(lat, 7, {"z": 1})
    th = theta_series(lat, 7, {"z": 1, "q": Q(-1, 2)})
    prod = euler_phi(lat, 7) * psi
    eq, diff = prod.equal_below(th, 7)
    assert eq, diff


def test_appell_k0_geometric():
    lat = qlat(["z", "x"], marker_heights={"x": Q(1, 3)})
    ap = appell(lat, 4, {"x": 1}, {"z": 1})
    # the k = 0 term contributes the alternating geometric series in x
    q0 = ap.slice_exponent("q", 0)
    for j in range(4):
        assert q0.coefficient({"x": j}) == (-1) ** j


def test_multi_appell_reduces_to_appell():
    lat = qlat(["z", "x"], marker_heights={"x": Q(1, 3)})
    a1 = appell(lat, 6, {"x": 1}, {"z": 1})
    a2 = multi_appell(lat, 6, [[1]], {"x": 1}, [{"z": 1}], [1])
    eq, diff = a1.equal_below(a2, 6)
    assert eq, diff


def test_lemma_double_sum():
    for b in range(-2, 3):
        sides = lemma_double_sum_identity(0, b, 8)
        eq, diff = sides["lhs_a"].equal_below(sides["rhs_a"], 8)
        assert eq, (b, diff)
        eq, diff = sides["prod_lhs_b"].equal_below(sides["rhs_b1"], 8)
        assert eq, (b, diff)
        eq, diff = sides["prod_lhs_b"].equal_below(sides["rhs_b2"], 8)
        assert eq, (b, diff)
    # the a-dependence cancels: several a values give the same sum
    s0 = lemma_double_sum_identity(0, 1, 6)["lhs_a"]
    for a in (-2, 1, 3):
        sa = lemma_double_sum_identity(a, 1, 6)["lhs_a"]
        eq, diff = s0.equal_below(sa, 6)
        assert eq, (a, diff)


def test_specialize_markers():
    lat = qlat(["z"])
    # prod (1 - q^(k-1/2)) = phi(q^(1/2)) / phi(q), checked to q^10
    from superkac.qseries.functions import infinite_product
    lhs = infinite_product(
        lat, 10, lambda k: [({"q": Q(2 * k - 1, 2)}, -1, 1)])
    halflat = qlat()
    phi_half = euler_phi(halflat, 10, qexp={"q": Q(1, 2)})
    phi_inv = euler_phi_inverse(halflat, 10)
    rhs = phi_half * phi_inv
    lhs_q = specialize_markers(lhs, {"z": (1, 0)})
    eq, diff = lhs_q.equal_below(
        rhs.substitute(lhs_q.lat, 10, {}), 10)
    assert eq, diff


def test_monotone_refinement():
    # recomputing deeper never changes previously reported coefficients
    lhs8, rhs8 = jacobi_triple(8)
    lhs12, _ = jacobi_triple(12)
    eq, diff = lhs8.equal_below(lhs12.truncate(8), 8)
    assert eq, diff
    lat = qlat(["z"])
    p6 = psi_product(lat, 6, {"z": 1})
    p10 = psi_product(lat, 10, {"z": 1})
    eq, diff = p6.equal_below(p10.truncate(6), 6)
    assert eq, diff


def test_json_canonical():
    lat = qlat(["z"])
    s = Series.from_terms(lat, 4, [({"q": 1, "z": -1}, 2), ({}, 1)])
    j = s.to_json()
    assert j["terms"][0]["coeff"] == "1"
    assert j["terms"][1]["offset"] == {"q": "1", "z": "-1"}
