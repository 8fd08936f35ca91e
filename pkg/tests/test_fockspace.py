from fractions import Fraction as Q

from superkac.fockspace import (FockState, apply_current, bracket_samples,
                                census_dimensions, enumerate_gl,
                                enumerate_osp, gl_states, lowest_component,
                                super_bracket)


def test_vacuum():
    census = enumerate_gl(2, 1, Q(0))
    assert census == {(0, 0, (0, 0, 0)): 1}


def test_gl11_energy1_dimension():
    census = enumerate_gl(1, 1, 1)
    dims = census_dimensions(census)
    assert dims[(0, 0)] == 1
    # charge 0 at energy 1: one quantum each of opposite charge
    assert dims.get((0, 2), 0) == 4


def test_gl21_lowest_charge1():
    census = enumerate_gl(2, 1, Q(1, 2))
    hits = [(key, mult) for key, mult in census.items() if key[0] == 1]
    assert sorted(hits) == [
        ((1, 1, (0, 0, 1)), 1), ((1, 1, (0, 1, 0)), 1), ((1, 1, (1, 0, 0)), 1)]


def test_charge_partition():
    # summing the charge sectors recovers the full graded dimensions
    census = enumerate_gl(2, 1, 2)
    total: dict = {}
    for (s, e2, w), mult in census.items():
        total[e2] = total.get(e2, 0) + mult
    states = gl_states(2, 1, 2)
    by_e: dict = {}
    for st in states:
        by_e[st.energy2()] = by_e.get(st.energy2(), 0) + 1
    assert total == by_e


def test_lowest_component_examples():
    e, dim, wt = lowest_component(2, 1, 2)
    assert (e, dim) == (1, 4)
    assert wt.get("e1") == 1 and wt.get("e2") == 1 and wt.get("d") == -1
    e, dim, wt = lowest_component(2, 1, 0)
    assert (e, dim) == (0, 1)
    assert wt.get("L0") == 1 and wt.get("d") == 0
    e, dim, wt = lowest_component(2, 1, -1)
    assert (e, dim) == (Q(1, 2), 3)
    assert wt.get("e3") == -1
    # census agreement: bottom layer dimension and extremal weight
    for s in range(-3, 4):
        e, dim, wt = lowest_component(2, 1, s)
        census = enumerate_gl(2, 1, e)
        bottom = {k: v for k, v in census.items()
                  if k[0] == s and k[1] == 2 * e}
        assert sum(bottom.values()) == dim, (s, bottom)
        eps = tuple(int(wt.get(f"e{i}")) for i in range(1, 4))
        assert bottom.get((s, int(2 * e), eps)) == 1, (s, eps, bottom)


def test_osp_census_basics():
    census = enumerate_osp(3, 2, Q(1, 2))
    assert census[("+", 0, (0, 0))] == 1
    # energy 1/2 states are odd: M + N of them
    level = [(k, v) for k, v in census.items() if k[1] == 1]
    assert all(k[0] == "-" for k, _ in level)
    assert sum(v for _, v in level) == 5
    plus = enumerate_osp(3, 2, 1, parity="+")
    assert all(k[0] == "+" for k in plus)


def test_apply_current_vacuum():
    vac = FockState((), ())
    # diagonal current at mode 0 annihilates the vacuum
    out = apply_current(2, 1, (1, 1), 0, vac, 3)
    assert out == {}
    # e_{12}(-1)-type: creation on the vacuum, one admissible splitting
    out = apply_current(2, 1, (1, 2), -1, vac, 3)
    assert len(out) == 1
    out = apply_current(2, 1, (1, 2), -2, vac, 3)
    assert len(out) == 2


def test_bracket_diagonal_counts():
    # [E12(0), E21(0)] = E11(0) - E22(0) on sampled states
    from random import Random
    rng = Random(5)
    states = gl_states(2, 1, 3)
    for st in rng.sample(states, 40):
        lhs = super_bracket(2, 1, (1, 2), 0, (2, 1), 0, st, 3)
        rhs: dict = {}
        for pair, c in (((1, 1), 1), ((2, 2), -1)):
            for s2, v in apply_current(2, 1, pair, 0, st, 3).items():
                rhs[s2] = rhs.get(s2, 0) + c * v
        rhs = {k: v for k, v in rhs.items() if v}
        assert lhs == rhs, st


def test_bracket_central_term():
    vac = FockState((), ())
    # [E12(1), E21(-1)] = (E11 - E22)(0) + 1*(e12|e21) on the vacuum
    lhs = super_bracket(2, 1, (1, 2), 1, (2, 1), -1, vac, 3)
    assert lhs == {vac: 1}
    # odd currents anticommute into the central term too
    lhs = super_bracket(2, 1, (1, 3), 1, (3, 1), -1, vac, 3)
    assert lhs == {vac: 1}
    lhs = super_bracket(2, 1, (3, 3), 1, (3, 3), -1, vac, 3)
    assert lhs == {vac: -1}


def test_bracket_samples_pass():
    reports = bracket_samples(2, 1, 60, 3, seed=11)
    assert len(reports) == 60
    bad = [r for r in reports if not r["ok"]]
    assert not bad, bad[:3]


def test_fermion_sign_consistency():
    # two anticommuting creations in both orders give opposite signs
    vac = FockState((), ())
    a = apply_current(2, 1, (1, 3), -1, vac, 4)
    # pick a state with two fermionic modes and check both build orders
    from superkac.fockspace import _insert_fermion
    s1 = _insert_fermion(vac, (1, 1))[1]
    r1 = _insert_fermion(s1, (2, 3))
    s2 = _insert_fermion(vac, (2, 3))[1]
    r2 = _insert_fermion(s2, (1, 1))
    assert r1[1] == r2[1]
    assert r1[0] == -r2[0] or (r1[0] == r2[0] and False)
