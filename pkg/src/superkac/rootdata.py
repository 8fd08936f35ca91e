"""Affine super root data for the non-twisted families.

Each datum packages the simple roots and coroots of one affine Lie
superalgebra in explicit coordinates, together with the Cartan and Gram
matrices, the decomposition of the null root, the distinguished roots used
by the integrability classifiers, and the constants (partial-level
coefficients, dual Coxeter number, basic-level normalisation).

Coordinates: the gl/sl and osp families live in an epsilon-basis
("e1..em" carry the positive-definite side, "f1..fn" the negative side);
the exceptional families D(2,1;a), F(4), G(3) use simple-root coordinates
"a1..al".  "L0" and "d" complete every basis.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction as Q
from typing import Optional

from .weights import GramForm, WeightVector

__all__ = ["SuperCartanDatum", "LabelVector", "build", "weyl_vector",
           "labels_of", "weight_of", "partial_levels", "positive_roots"]


EPSILON_FAMILIES = {"GL", "SL", "B", "B0", "C", "D"}
EXCEPTIONAL_FAMILIES = {"D21", "F4", "G3"}


@dataclass(frozen=True)
class LabelVector:
    """Labels k_i of a weight on the simple coroots, plus its d-eigenvalue."""

    labels: tuple[Q, ...]
    d_eigenvalue: Q = Q(0)

    def __getitem__(self, i: int) -> Q:
        return self.labels[i]

    def __len__(self) -> int:
        return len(self.labels)


@dataclass
class SuperCartanDatum:
    family: str
    m: int
    n: int
    a: Optional[Q]
    basis: str
    form: GramForm
    index_set: tuple[int, ...]
    odd_set: frozenset[int]
    simple_roots: tuple[WeightVector, ...]
    simple_coroots: tuple[WeightVector, ...]
    cartan: tuple[tuple[Q, ...], ...]
    gram: tuple[tuple[Q, ...], ...]
    delta_coeffs: tuple[int, ...]
    u: Q
    h_dual: Q
    theta: WeightVector
    theta_prime: Optional[WeightVector] = None
    theta_prime_plus: Optional[WeightVector] = None
    theta_prime_minus: Optional[WeightVector] = None
    alpha_dprime: Optional[WeightVector] = None
    b_prime: Optional[Q] = None
    b_dprime: Optional[Q] = None
    finite_symbols: tuple[str, ...] = ()
    _root_coord_cache: dict = field(default_factory=dict, repr=False)

    # -- derived vectors ---------------------------------------------------

    def delta(self) -> WeightVector:
        return WeightVector.make(self.basis, {"d": Q(1)})

    def Lambda0(self) -> WeightVector:
        return WeightVector.make(self.basis, {"L0": Q(1)})

    def alpha(self, i: int) -> WeightVector:
        return self.simple_roots[i]

    def acheck(self, i: int) -> WeightVector:
        return self.simple_coroots[i]

    def alpha_prime0(self) -> WeightVector:
        if self.theta_prime is None:
            raise ValueError(f"{self.family}: no distinguished theta'")
        return self.delta() - self.theta_prime

    def alpha_prime0_pm(self) -> tuple[WeightVector, WeightVector]:
        if self.theta_prime_plus is None:
            raise ValueError(f"{self.family}: no theta'_+/- pair")
        return (self.delta() - self.theta_prime_plus,
                self.delta() - self.theta_prime_minus)

    def is_odd(self, i: int) -> bool:
        return i in self.odd_set

    def is_isotropic(self, i: int) -> bool:
        return i in self.odd_set and self.cartan[i][i] == 0

    def dim_cartan_finite(self) -> int:
        """Even multiplicity of the imaginary roots j*delta."""
        if self.family == "SL":
            return self.m + self.n - 1
        return len(self.finite_symbols)

    def rank(self) -> int:
        return len(self.index_set)

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "m": self.m,
            "n": self.n,
            "a": str(self.a) if self.a is not None else None,
            "index_set": list(self.index_set),
            "odd_set": sorted(self.odd_set),
            "cartan": [[str(x) for x in row] for row in self.cartan],
            "gram": [[str(x) for x in row] for row in self.gram],
            "delta_coeffs": list(self.delta_coeffs),
            "parities": ["odd" if i in self.odd_set else "even"
                         for i in self.index_set],
            "u": str(self.u),
            "h_dual": str(self.h_dual),
            "b_prime": str(self.b_prime) if self.b_prime is not None else None,
            "b_dprime": str(self.b_dprime) if self.b_dprime is not None else None,
            "simple_roots": [r.to_json() for r in self.simple_roots],
            "simple_coroots": [r.to_json() for r in self.simple_coroots],
        }


def _matrix(rows):
    return tuple(tuple(Q(x) for x in row) for row in rows)


def _solve(mat: list[list[Q]], rhs: list[Q]) -> list[Q]:
    """Exact Gaussian elimination; mat is square and nonsingular."""
    k = len(mat)
    aug = [row[:] + [rhs[i]] for i, row in enumerate(mat)]
    for col in range(k):
        piv = next(r for r in range(col, k) if aug[r][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = Q(1) / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(k):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [aug[r][k] for r in range(k)]


def _finish(datum: SuperCartanDatum) -> SuperCartanDatum:
    """Compute Cartan/Gram from roots and check the structural invariants."""
    form = datum.form
    roots = datum.simple_roots
    coroots = tuple(form.coroot(r) for r in roots)
    k = len(roots)
    gram = _matrix([[form.inner(roots[i], roots[j]) for j in range(k)]
                    for i in range(k)])
    cartan = _matrix([[form.inner(roots[j], coroots[i]) for j in range(k)]
                      for i in range(k)])
    datum.simple_coroots = coroots
    datum.cartan = cartan
    datum.gram = gram

    for i in range(k):
        if cartan[i][i] not in (Q(0), Q(2)):
            raise AssertionError(f"a_{i}{i} = {cartan[i][i]} not in {{0,2}}")
        for j in range(k):
            if (cartan[i][j] == 0) != (cartan[j][i] == 0):
                raise AssertionError("Cartan zero pattern is not symmetric")
    # A = diag(nu) B with nu_i = 2/(a_i|a_i) on non-isotropic nodes, 1 else.
    for i in range(k):
        nu = Q(2) / gram[i][i] if gram[i][i] != 0 else Q(1)
        for j in range(k):
            if cartan[i][j] != nu * gram[i][j]:
                raise AssertionError("Cartan != diag(nu) * Gram")
    acc = WeightVector.make(datum.basis, {})
    for c, r in zip(datum.delta_coeffs, roots):
        acc = acc + c * r
    if acc != datum.delta():
        raise AssertionError("delta decomposition mismatch")
    if form.level(datum.Lambda0()) * datum.u != 1:
        raise AssertionError("level(L0) != 1/u")
    return datum


def _eps_form(basis: str, pos: list[str], neg: list[str], l0_level: Q) -> GramForm:
    pairs = {("L0", "d"): l0_level}
    for s in pos:
        pairs[(s, s)] = Q(1)
    for s in neg:
        pairs[(s, s)] = Q(-1)
    return GramForm(basis, pairs)


def _build_gl(family: str, m: int, n: int) -> SuperCartanDatum:
    if m < 1 or n < 1:
        raise ValueError("gl(m|n) needs m, n >= 1")
    basis = f"{family}({m}|{n})^"
    syms = [f"e{i}" for i in range(1, m + n + 1)]
    form = _eps_form(basis, syms[:m], syms[m:], Q(1))

    def e(i):
        return WeightVector.make(basis, {f"e{i}": Q(1)})

    delta = WeightVector.make(basis, {"d": Q(1)})
    theta = e(1) - e(m + n)
    roots = [delta - theta] + [e(i) - e(i + 1) for i in range(1, m + n)]
    datum = SuperCartanDatum(
        family=family, m=m, n=n, a=None, basis=basis, form=form,
        index_set=tuple(range(m + n)), odd_set=frozenset({0, m}),
        simple_roots=tuple(roots), simple_coroots=(), cartan=(), gram=(),
        delta_coeffs=tuple([1] * (m + n)),
        u=Q(1), h_dual=Q(m - n), theta=theta,
        theta_prime=(e(1) - e(m)) if m >= 2 else None,
        alpha_dprime=None,
        b_prime=Q(n - 1), b_dprime=Q(m - 1),
        finite_symbols=tuple(syms),
    )
    return _finish(datum)


def _build_B(m: int, n: int) -> SuperCartanDatum:
    if m < 1 or n < 1:
        raise ValueError("B(m,n) needs m >= 1, n >= 1")
    basis = f"B({m}|{n})^"
    fs = [f"f{i}" for i in range(1, n + 1)]
    es = [f"e{i}" for i in range(1, m + 1)]
    form = _eps_form(basis, es, fs, Q(-2))

    def f(i):
        return WeightVector.make(basis, {f"f{i}": Q(1)})

    def e(i):
        return WeightVector.make(basis, {f"e{i}": Q(1)})

    delta = WeightVector.make(basis, {"d": Q(1)})
    theta = 2 * f(1)
    roots = [delta - theta]
    roots += [f(i) - f(i + 1) for i in range(1, n)]
    roots += [f(n) - e(1)]
    roots += [e(j) - e(j + 1) for j in range(1, m)]
    roots += [e(m)]
    datum = SuperCartanDatum(
        family="B", m=m, n=n, a=None, basis=basis, form=form,
        index_set=tuple(range(m + n + 1)), odd_set=frozenset({n}),
        simple_roots=tuple(roots), simple_coroots=(), cartan=(), gram=(),
        delta_coeffs=tuple([1] + [2] * (m + n)),
        u=Q(-1, 2), h_dual=Q(2 * (m - n) - 1), theta=theta,
        theta_prime=(e(1) + e(2)) if m >= 2 else e(1),
        alpha_dprime=2 * f(n),
        b_prime=Q(4 * n - 1) if m == 1 else Q(2 * n - 1),
        b_dprime=Q(2 * m - 1, 2),
        finite_symbols=tuple(fs + es),
    )
    return _finish(datum)


def _build_B0(n: int) -> SuperCartanDatum:
    if n < 1:
        raise ValueError("B(0,n) needs n >= 1")
    basis = f"B(0|{n})^"
    fs = [f"f{i}" for i in range(1, n + 1)]
    form = _eps_form(basis, fs, [], Q(2))

    def f(i):
        return WeightVector.make(basis, {f"f{i}": Q(1)})

    delta = WeightVector.make(basis, {"d": Q(1)})
    theta = 2 * f(1)
    roots = [delta - theta]
    roots += [f(i) - f(i + 1) for i in range(1, n)]
    roots += [f(n)]
    datum = SuperCartanDatum(
        family="B0", m=0, n=n, a=None, basis=basis, form=form,
        index_set=tuple(range(n + 1)), odd_set=frozenset({n}),
        simple_roots=tuple(roots), simple_coroots=(), cartan=(), gram=(),
        delta_coeffs=tuple([1] + [2] * n),
        u=Q(1, 2), h_dual=Q(2 * n + 1), theta=theta,
        theta_prime=None, alpha_dprime=None,
        b_prime=None, b_dprime=None,
        finite_symbols=tuple(fs),
    )
    return _finish(datum)


def _build_C(n: int) -> SuperCartanDatum:
    # C(n) = osp(2|2n-2); the sp side carries n-1 epsilons.
    if n < 2:
        raise ValueError("C(n) needs n >= 2")
    basis = f"C({n})^"
    fs = [f"f{i}" for i in range(1, n)]
    # alpha_0 is isotropic, so level(L0) = 1 exactly as in the gl series
    form = _eps_form(basis, ["e1"], fs, Q(1))

    def f(i):
        return WeightVector.make(basis, {f"f{i}": Q(1)})

    e1 = WeightVector.make(basis, {"e1": Q(1)})
    delta = WeightVector.make(basis, {"d": Q(1)})
    theta = e1 + f(1)
    roots = [delta - theta, e1 - f(1)]
    roots += [f(i) - f(i + 1) for i in range(1, n - 1)]
    roots += [2 * f(n - 1)]
    datum = SuperCartanDatum(
        family="C", m=1, n=n, a=None, basis=basis, form=form,
        index_set=tuple(range(n + 1)), odd_set=frozenset({0, 1}),
        simple_roots=tuple(roots), simple_coroots=(), cartan=(), gram=(),
        delta_coeffs=tuple([1, 1] + [2] * (n - 2) + [1]),
        u=Q(1), h_dual=Q(-2 * (n - 1)), theta=theta,
        theta_prime=None,
        alpha_dprime=None,  # the k''-test root is affine: delta - 2 f1
        b_prime=None, b_dprime=Q(0),
        finite_symbols=tuple(["e1"] + fs),
    )
    return _finish(datum)


def _build_D(m: int, n: int) -> SuperCartanDatum:
    if m < 2 or n < 1:
        raise ValueError("D(m,n) needs m >= 2, n >= 1")
    basis = f"D({m}|{n})^"
    fs = [f"f{i}" for i in range(1, n + 1)]
    es = [f"e{i}" for i in range(1, m + 1)]
    form = _eps_form(basis, es, fs, Q(-2))

    def f(i):
        return WeightVector.make(basis, {f"f{i}": Q(1)})

    def e(i):
        return WeightVector.make(basis, {f"e{i}": Q(1)})

    delta = WeightVector.make(basis, {"d": Q(1)})
    theta = 2 * f(1)
    roots = [delta - theta]
    roots += [f(i) - f(i + 1) for i in range(1, n)]
    roots += [f(n) - e(1)]
    roots += [e(j) - e(j + 1) for j in range(1, m)]
    roots += [e(m - 1) + e(m)]
    datum = SuperCartanDatum(
        family="D", m=m, n=n, a=None, basis=basis, form=form,
        index_set=tuple(range(m + n + 1)), odd_set=frozenset({n}),
        simple_roots=tuple(roots), simple_coroots=(), cartan=(), gram=(),
        delta_coeffs=tuple([1] + [2] * (m + n - 2) + [1, 1]),
        u=Q(-1, 2), h_dual=Q(2 * (m - n - 1)), theta=theta,
        theta_prime=(e(1) + e(2)) if m >= 3 else None,
        theta_prime_plus=(e(1) + e(2)) if m == 2 else None,
        theta_prime_minus=(e(1) - e(2)) if m == 2 else None,
        alpha_dprime=2 * f(n),
        b_prime=Q(2 * n - 1), b_dprime=Q(m - 1),
        finite_symbols=tuple(fs + es),
    )
    if m == 2:
        # both A_1 summands of D_2 are recorded via theta'_+/-
        datum.theta_prime = None
    return _finish(datum)


def _build_D21(a: Q) -> SuperCartanDatum:
    a = Q(a)
    if a == 0 or a == -1:
        raise ValueError("D(2,1;a) needs a not in {0, -1}")
    basis = f"D(2,1;{a})^"
    pairs = {
        ("L0", "d"): -(a + 1),
        ("a1", "a1"): Q(0), ("a2", "a2"): Q(2), ("a3", "a3"): 2 * a,
        ("a1", "a2"): Q(-1), ("a1", "a3"): -a,
    }

    def al(i):
        return WeightVector.make(basis, {f"a{i}": Q(1)})

    delta = WeightVector.make(basis, {"d": Q(1)})
    theta = 2 * al(1) + al(2) + al(3)
    # alpha_0 = delta - theta forces (a0|a0) = (theta|theta) = -2(a+1)
    pairs[("a1", "d")] = pairs[("a2", "d")] = pairs[("a3", "d")] = Q(0)
    form = GramForm(basis, {k: v for k, v in pairs.items() if v != 0})
    roots = [delta - theta, al(1), al(2), al(3)]
    datum = SuperCartanDatum(
        family="D21", m=2, n=1, a=a, basis=basis, form=form,
        index_set=(0, 1, 2, 3), odd_set=frozenset({1}),
        simple_roots=tuple(roots), simple_coroots=(), cartan=(), gram=(),
        delta_coeffs=(1, 2, 1, 1),
        u=Q(-1) / (a + 1), h_dual=Q(0), theta=theta,
        theta_prime_plus=al(2), theta_prime_minus=al(3),
        alpha_dprime=theta,
        b_prime=Q(1), b_dprime=Q(1),
        finite_symbols=("a1", "a2", "a3"),
    )
    return _finish(datum)


def _build_F4() -> SuperCartanDatum:
    basis = "F(4)^"
    pairs = {
        ("L0", "d"): Q(-3, 2),
        ("a1", "a1"): Q(0), ("a2", "a2"): Q(1),
        ("a3", "a3"): Q(2), ("a4", "a4"): Q(2),
        ("a1", "a2"): Q(-1, 2), ("a2", "a3"): Q(-1), ("a3", "a4"): Q(-1),
    }
    form = GramForm(basis, pairs)

    def al(i):
        return WeightVector.make(basis, {f"a{i}": Q(1)})

    delta = WeightVector.make(basis, {"d": Q(1)})
    theta = 2 * al(1) + 3 * al(2) + 2 * al(3) + al(4)
    roots = [delta - theta, al(1), al(2), al(3), al(4)]
    datum = SuperCartanDatum(
        family="F4", m=0, n=0, a=None, basis=basis, form=form,
        index_set=(0, 1, 2, 3, 4), odd_set=frozenset({1}),
        simple_roots=tuple(roots), simple_coroots=(), cartan=(), gram=(),
        delta_coeffs=(1, 2, 3, 2, 1),
        u=Q(-2, 3), h_dual=Q(3), theta=theta,
        theta_prime=2 * al(2) + 2 * al(3) + al(4),
        alpha_dprime=theta,
        b_prime=Q(1), b_dprime=Q(3),
        finite_symbols=("a1", "a2", "a3", "a4"),
    )
    return _finish(datum)


def _build_G3() -> SuperCartanDatum:
    basis = "G(3)^"
    pairs = {
        ("L0", "d"): Q(-4, 3),
        ("a1", "a1"): Q(0), ("a2", "a2"): Q(2, 3), ("a3", "a3"): Q(2),
        ("a1", "a2"): Q(-1, 3), ("a2", "a3"): Q(-1),
    }
    form = GramForm(basis, pairs)

    def al(i):
        return WeightVector.make(basis, {f"a{i}": Q(1)})

    delta = WeightVector.make(basis, {"d": Q(1)})
    theta = 2 * al(1) + 4 * al(2) + 2 * al(3)
    roots = [delta - theta, al(1), al(2), al(3)]
    datum = SuperCartanDatum(
        family="G3", m=0, n=0, a=None, basis=basis, form=form,
        index_set=(0, 1, 2, 3), odd_set=frozenset({1}),
        simple_roots=tuple(roots), simple_coroots=(), cartan=(), gram=(),
        delta_coeffs=(1, 2, 4, 2),
        u=Q(-3, 4), h_dual=Q(2), theta=theta,
        theta_prime=3 * al(2) + 2 * al(3),
        alpha_dprime=theta,
        b_prime=Q(1), b_dprime=Q(5, 2),
        finite_symbols=("a1", "a2", "a3"),
    )
    return _finish(datum)


def build(family: str, m: int = 0, n: int = 0, a=None) -> SuperCartanDatum:
    """Construct the affine super root datum for one family.

    family in {GL, SL, B, B0, C, D, D21, F4, G3}.  GL/SL take (m, n) with
    m, n >= 1; B needs m >= 1; B0 takes n; C takes n >= 2; D needs m >= 2;
    D21 takes the exact rational parameter a.
    """
    family = family.upper().replace("(", "").replace(")", "")
    if family == "GL" or family == "SL":
        return _build_gl(family, m, n)
    if family == "B":
        if m == 0:
            return _build_B0(n)
        return _build_B(m, n)
    if family == "B0":
        return _build_B0(n)
    if family == "C":
        return _build_C(n)
    if family == "D":
        return _build_D(m, n)
    if family == "D21":
        if a is None:
            raise ValueError("D21 needs the parameter a")
        return _build_D21(Q(a))
    if family == "F4":
        return _build_F4()
    if family == "G3":
        return _build_G3()
    raise ValueError(f"unknown family {family!r}")


# -- labels <-> weights ----------------------------------------------------

def labels_of(datum: SuperCartanDatum, lam: WeightVector) -> LabelVector:
    """Labels k_i = <lam, alpha_i^vee>; the d-eigenvalue rides along."""
    ks = tuple(datum.form.inner(lam, cv) for cv in datum.simple_coroots)
    return LabelVector(ks, lam.get("d"))


def weight_of(datum: SuperCartanDatum, labels, d_eigenvalue=Q(0)) -> WeightVector:
    """Weight with the given labels, inverse of labels_of modulo C*delta."""
    if isinstance(labels, LabelVector):
        d_eigenvalue = labels.d_eigenvalue
        labels = labels.labels
    ks = [Q(x) for x in labels]
    if len(ks) != len(datum.index_set):
        raise ValueError("label count does not match the index set")
    unknowns = ["L0"] + list(datum.finite_symbols)
    basis_vecs = [WeightVector.make(datum.basis, {s: Q(1)}) for s in unknowns]
    mat = [[datum.form.inner(bv, cv) for bv in basis_vecs]
           for cv in datum.simple_coroots]
    rhs = list(ks)
    if datum.family in ("GL", "SL"):
        # corank-1 gauge: the last epsilon coefficient is pinned to zero,
        # matching the usual representatives of the fundamental weights
        mat.append([Q(0)] * (len(unknowns) - 1) + [Q(1)])
        rhs.append(Q(0))
    sol = _solve(mat, rhs)
    coeffs = {s: c for s, c in zip(unknowns, sol)}
    coeffs["d"] = Q(d_eigenvalue)
    return WeightVector.make(datum.basis, coeffs)


def weyl_vector(datum: SuperCartanDatum) -> WeightVector:
    """Weyl vector: <rho, alpha_i^vee> = a_ii/2 for every node, d-part 0."""
    half_diag = [datum.cartan[i][i] / 2 for i in datum.index_set]
    return weight_of(datum, half_diag, Q(0))


# -- Tables 3 and 4: partial levels -----------------------------------------

def partial_levels(datum: SuperCartanDatum, labels) -> dict:
    """Partial levels k', k'_+/-, k'' and the level k from the labels."""
    if isinstance(labels, LabelVector):
        k = labels.labels
    else:
        k = tuple(Q(x) for x in labels)
    fam, m, n = datum.family, datum.m, datum.n
    out: dict[str, Q] = {}
    if fam in ("GL", "SL"):
        if m >= 2:
            out["k_prime"] = k[0] + k[m] - sum(k[m + 1:m + n], Q(0))
            out["level"] = out["k_prime"] + sum(k[1:m], Q(0))
        else:
            out["level"] = datum.form.level(weight_of(datum, k))
        return out
    if fam == "B" and m == 1:
        out["k_prime"] = 4 * k[n] + k[n + 1] - 4 * sum(k[0:n], Q(0))
        out["k_dprime"] = -k[n] - Q(1, 2) * k[n + 1]
        out["level"] = Q(1, 2) * (out["k_prime"] + k[n + 1])
        return out
    if fam == "B":
        out["k_prime"] = 2 * k[n] + k[n + 1] - 2 * sum(k[0:n], Q(0))
        out["k_dprime"] = (-k[n] - sum(k[n + 1:n + m], Q(0))
                           - Q(1, 2) * k[m + n])
        out["level"] = (out["k_prime"] + k[n + 1]
                        + 2 * sum(k[n + 2:n + m], Q(0)) + k[n + m])
        return out
    if fam == "B0":
        out["level"] = 2 * sum(k[0:n], Q(0)) + k[n]
        return out
    if fam == "C":
        out["k_dprime"] = -Q(1, 2) * (k[0] + k[1])
        out["level"] = -2 * (out["k_dprime"] + sum(k[2:n + 1], Q(0)))
        return out
    if fam == "D" and m == 2:
        base = 2 * k[n] - 2 * sum(k[0:n], Q(0))
        out["k_prime_plus"] = base + k[n + 1]
        out["k_prime_minus"] = base + k[n + 2]
        out["k_dprime"] = -k[n] - Q(1, 2) * (k[n + 1] + k[n + 2])
        out["level"] = out["k_prime_plus"] + k[n + 2]
        return out
    if fam == "D":
        out["k_prime"] = 2 * k[n] + k[n + 1] - 2 * sum(k[0:n], Q(0))
        out["k_dprime"] = (-k[n] - sum(k[n + 1:n + m - 1], Q(0))
                           - Q(1, 2) * (k[m + n - 1] + k[m + n]))
        out["level"] = (out["k_prime"] + k[n + 1]
                        + 2 * sum(k[n + 2:m + n - 1], Q(0))
                        + k[m + n - 1] + k[m + n])
        return out
    if fam == "D21":
        a = datum.a
        out["k_prime_plus"] = -(a + 1) * k[0] + 2 * k[1] + a * k[3]
        out["k_prime_minus"] = (-(a + 1) * k[0] + 2 * k[1] + k[2]) / a
        out["k_dprime"] = -(2 * k[1] + k[2] + a * k[3]) / (a + 1)
        out["level"] = out["k_prime_plus"] + k[2]
        return out
    if fam == "F4":
        out["k_prime"] = -Q(3, 2) * k[0] + 2 * k[1] + Q(1, 2) * k[2]
        out["k_dprime"] = (-Q(4, 3) * k[1] - k[2] - Q(4, 3) * k[3]
                           - Q(2, 3) * k[4])
        out["level"] = out["k_prime"] + k[2] + 2 * k[3] + k[4]
        return out
    if fam == "G3":
        out["k_prime"] = -Q(4, 3) * k[0] + 2 * k[1] + Q(1, 3) * k[2]
        out["k_dprime"] = -Q(3, 2) * k[1] - k[2] - Q(3, 2) * k[3]
        # k_3 enters the level twice: delta = 2*alpha_3^vee + ... in coroots
        out["level"] = out["k_prime"] + k[2] + 2 * k[3]
        return out
    raise ValueError(f"partial levels not defined for {fam}")


# -- positive roots ----------------------------------------------------------

def _finite_roots(datum: SuperCartanDatum) -> list[tuple[WeightVector, str]]:
    fam, m, n, basis = datum.family, datum.m, datum.n, datum.basis

    def v(sym, c=1):
        return WeightVector.make(basis, {sym: Q(c)})

    out: list[tuple[WeightVector, str]] = []
    if fam in ("GL", "SL"):
        syms = datum.finite_symbols
        for i in range(m + n):
            for j in range(m + n):
                if i == j:
                    continue
                parity = "even" if (i < m) == (j < m) else "odd"
                out.append((v(syms[i]) - v(syms[j]), parity))
        return out
    fsym = [f"f{i}" for i in range(1, n + 1)] if fam != "C" \
        else [f"f{i}" for i in range(1, n)]
    esym = [f"e{i}" for i in range(1, m + 1)] if fam in ("B", "D") \
        else (["e1"] if fam == "C" else [])
    if fam in ("B", "B0", "C", "D"):
        # even: +-f_i +- f_j (i<j), +-2 f_i, +-e_i +- e_j, and +-e_i for B
        nf = len(fsym)
        for i in range(nf):
            for j in range(i + 1, nf):
                for si in (1, -1):
                    for sj in (1, -1):
                        out.append((si * v(fsym[i]) + sj * v(fsym[j]), "even"))
            for s in (1, -1):
                out.append((s * v(fsym[i], 2), "even"))
        ne = len(esym)
        if fam in ("B", "D"):
            for i in range(ne):
                for j in range(i + 1, ne):
                    for si in (1, -1):
                        for sj in (1, -1):
                            out.append((si * v(esym[i]) + sj * v(esym[j]),
                                        "even"))
            if fam == "B":
                for i in range(ne):
                    for s in (1, -1):
                        out.append((s * v(esym[i]), "even"))
        # odd roots
        if fam == "B0":
            for i in range(nf):
                for s in (1, -1):
                    out.append((s * v(fsym[i]), "odd"))
        else:
            for i in range(nf):
                for j in range(ne):
                    for si in (1, -1):
                        for sj in (1, -1):
                            out.append((si * v(fsym[i]) + sj * v(esym[j]),
                                        "odd"))
            if fam == "B":
                for i in range(nf):
                    for s in (1, -1):
                        out.append((s * v(fsym[i]), "odd"))
        return out
    raise ValueError(f"finite root catalog not available for {fam}")


def root_coordinates(datum: SuperCartanDatum, root: WeightVector) -> list[Q]:
    """Coordinates of a (finite or affine) root on the simple roots.

    The system is overdetermined by one trace-like direction; consistency
    is checked and a ValueError raised for vectors outside the root span.
    """
    cache = datum._root_coord_cache
    if root in cache:
        return cache[root]
    syms = ["d"] + list(datum.finite_symbols)
    k = len(datum.simple_roots)
    aug = [[r.get(s) for r in datum.simple_roots] + [root.get(s)]
           for s in syms]
    sol: list[Q] = [Q(0)] * k
    pivots = []
    row = 0
    for col in range(k):
        piv = next((i for i in range(row, len(aug)) if aug[i][col] != 0), None)
        if piv is None:
            raise AssertionError("simple roots not independent?")
        aug[row], aug[piv] = aug[piv], aug[row]
        inv = Q(1) / aug[row][col]
        aug[row] = [x * inv for x in aug[row]]
        for i in range(len(aug)):
            if i != row and aug[i][col] != 0:
                f = aug[i][col]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[row])]
        pivots.append((row, col))
        row += 1
    for i in range(row, len(aug)):
        if aug[i][k] != 0:
            raise ValueError(f"{root} is not in the root lattice")
    for r, c in pivots:
        sol[c] = aug[r][k]
    cache[root] = sol
    return sol


def root_height(datum: SuperCartanDatum, root: WeightVector) -> Q:
    return sum(root_coordinates(datum, root), Q(0))


def positive_roots(datum: SuperCartanDatum, height_cutoff: int):
    """All positive roots of height <= cutoff: (root, parity, multiplicity).

    Positivity is with respect to the datum's simple system.  Imaginary
    roots j*delta carry even multiplicity dim_cartan_finite().
    """
    if datum.family in EXCEPTIONAL_FAMILIES:
        raise ValueError("positive roots only provided for epsilon families")
    out = []
    finite = _finite_roots(datum)
    ht_delta = sum(datum.delta_coeffs)
    delta = datum.delta()
    for root, parity in finite:
        coords = root_coordinates(datum, root)
        ht0 = sum(coords, Q(0))
        positive_now = all(c >= 0 for c in coords)
        if positive_now and 0 < ht0 <= height_cutoff:
            out.append((root, parity, 1))
        k = 1
        while ht0 + k * ht_delta <= height_cutoff:
            out.append((root + k * delta, parity, 1))
            k += 1
    mult = datum.dim_cartan_finite()
    j = 1
    while j * ht_delta <= height_cutoff:
        out.append((j * delta, "even", mult))
        j += 1
    out.sort(key=lambda t: (root_height(datum, t[0]), str(t[0])))
    return out
