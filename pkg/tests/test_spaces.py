import random
from fractions import Fraction

import pytest

from hodgeforge import geometry
from hodgeforge.errors import (ContextMismatchError, GuardError,
                               HomogeneityError, UnsupportedClassError)
from hodgeforge.spaces import FormalScalar, Geometry, YClass

from support import random_class

G2 = geometry(2)
G3 = geometry(3)

X_NAMES = ["w", "alpha", "a", "b", "lam", "c2", "N"]


# -- pullbacks --------------------------------------------------------------

def test_pull_p_is_ring_hom_and_unital():
    assert G2.pull_p(G2.X.one()) == G2.D.one()
    rng = random.Random(3)
    for _ in range(20):
        x = random_class(G2.X, rng, names=X_NAMES)
        y = random_class(G2.X, rng, names=X_NAMES)
        assert G2.pull_p(x * y) == G2.pull_p(x) * G2.pull_p(y)
        assert G2.pull_p(x + y) == G2.pull_p(x) + G2.pull_p(y)


def test_pull_delta_on_split_classes():
    XX, X = G2.XX, G2.X
    assert G2.pull_delta(XX.gen("f1_a") + XX.gen("f2_b")) \
        == X.gen("a") + X.gen("b")
    assert G2.pull_delta(XX.gen("f1_w") * XX.gen("f2_w")) == X.gen("w") ** 2


def test_pull_delta_truncates_high_degree():
    XX = G2.XX
    z = XX.gen("f1_w", 4) * XX.gen("f2_w", 2)  # delta^* has degree 6 > 4
    assert G2.pull_delta(z).is_zero()


def test_pullbacks_preserve_degree():
    x = G2.X.gen("w") * G2.X.gen("a")
    assert G2.pull_p(x).homogeneous_degree() == 2
    assert G2.pull_f1(x).homogeneous_degree() == 2
    assert G2.pull_f2(x).homogeneous_degree() == 2


def test_pull_f1_f2_land_in_disjoint_halves():
    x = G2.X.gen("w")
    assert G2.pull_f1(x) == G2.XX.gen("f1_w")
    assert G2.pull_f2(x) == G2.XX.gen("f2_w")
    assert G2.pull_f1(G2.X.gen("N")) == G2.XX.gen("N")


def test_pull_iota_of_exceptional_divisor():
    assert G2.pull_iota(G2.d_class()) == -G2.h_class()


def test_pull_iota_mixed():
    z = G2.XX.gen("f1_a")
    y = G2.D.gen("m")  # scalar multiple m of [D]
    cls = YClass(G2, z, y)
    expected = G2.pull_p(G2.X.gen("a")) - G2.h_class() * G2.D.gen("m")
    assert G2.pull_iota(cls) == expected


# -- pushforward through p ---------------------------------------------------

@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_push_p_table(n):
    geom = geometry(n)
    h = geom.h_class()
    for i in range(2 * n - 1):
        assert geom.push_p(h ** i).is_zero()
    assert geom.push_p(h ** (2 * n - 1)) == geom.X.one()
    for i in range(0, 2 * n + 7, 2):
        assert geom.push_p(h ** i).is_zero()


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_push_p_recursion_two_paths(n):
    # independent recursion p(2n+k) = -c_{k+1} - sum c_j p(2n+k-j)
    geom = geometry(n)
    X = geom.X
    h = geom.h_class()

    def c(j):
        return X.gen(f"c{j}") if 2 <= j <= 2 * n and j % 2 == 0 else X.zero()

    rec = {2 * n - 1: X.one()}
    for k in (1, 3, 5):
        acc = -c(k + 1)
        for j in range(2, k, 2):
            acc = acc - c(j) * rec[2 * n + k - j]
        rec[2 * n + k] = acc
        assert geom.push_p(h ** (2 * n + k)) == acc, (n, k)


def test_push_p_golden_values():
    assert G2.push_p(G2.h_class() ** 5).canonical() == "-c2"
    assert G2.push_p(G2.h_class() ** 7).canonical() == "c2^2 - c4"


def test_push_p_projection_formula():
    rng = random.Random(41)
    for geom in (G2, G3):
        d_names = X_NAMES + ["h"]
        for _ in range(30):
            x = random_class(geom.X, rng, names=X_NAMES)
            y = random_class(geom.D, rng, names=d_names, max_factors=4)
            assert geom.push_p(geom.pull_p(x) * y) == x * geom.push_p(y)


def test_push_p_lowers_degree():
    n = 2
    y = G2.h_class() ** 3 * G2.pull_p(G2.X.gen("w"))
    out = G2.push_p(y)
    assert out.homogeneous_degree() == y.homogeneous_degree() - (2 * n - 1)


def test_push_p_accepts_relation_free_classes():
    free = G2.D_free
    assert G2.push_p(free.gen("h", 5)).canonical() == "-c2"


def test_push_p_rejects_opaque_divisor():
    with pytest.raises(UnsupportedClassError):
        G2.push_p(G2.D.gen("Z") * G2.h_class() ** 3)


# -- blow-up classes ---------------------------------------------------------

def test_push_beta_of_exceptional_divisor_vanishes():
    assert G2.push_beta(G2.d_class()).is_zero()


def test_push_beta_inverts_pull_beta():
    rng = random.Random(43)
    names = [n for n in G2.XX.table.names if n.startswith("f")][:8]
    for _ in range(30):
        z = random_class(G2.XX, rng, names=names)
        assert G2.push_beta(G2.pull_beta(z)) == z


def test_push_beta_of_d_squared_vanishes():
    d = G2.d_class()
    assert (d * d).exceptional == -G2.h_class()
    assert G2.push_beta(d * d).is_zero()


def test_push_beta_refuses_free_diagonal_class():
    cls = G2.push_iota(G2.h_class() ** 3)  # p_* = 1 != 0
    with pytest.raises(UnsupportedClassError):
        G2.push_beta(cls)


def test_push_iota_raises_degree_by_one():
    y = G2.h_class() ** 2
    assert G2.push_iota(y).graded_component(3).exceptional == y


def test_yclass_products_use_self_intersection():
    g = G2
    y1 = g.D.one()
    y2 = g.pull_p(g.X.gen("w"))
    lhs = g.push_iota(y1) * g.push_iota(y2)
    rhs = g.push_iota(-g.h_class() * y1 * y2)
    assert lhs == rhs


def test_yclass_mixed_product():
    g = G2
    z = g.XX.gen("f1_a")
    prod = g.pull_beta(z) * g.d_class()
    assert prod.pullback.is_zero()
    assert prod.exceptional == g.pull_p(g.X.gen("a"))


def test_yclass_powers_and_scalars():
    d = G2.d_class()
    assert (d ** 2) == d * d
    assert (d * Fraction(3, 2)).exceptional == G2.D.scalar(Fraction(3, 2))


def _random_yclass(geom, rng):
    z = random_class(geom.XX, rng,
                     names=["f1_w", "f2_a", "f1_c2", "f2_w", "N"],
                     max_terms=2, max_factors=2)
    y = random_class(geom.D, rng, names=["w", "h", "a", "m"],
                     max_terms=2, max_factors=2)
    return YClass(geom, z, y)


def test_yclass_ring_axioms_random():
    rng = random.Random(59)
    for _ in range(25):
        x = _random_yclass(G2, rng)
        y = _random_yclass(G2, rng)
        z = _random_yclass(G2, rng)
        assert x * y == y * x
        assert (x * y) * z == x * (y * z)
        assert x * (y + z) == x * y + x * z
        assert x * G2.y_one() == x


def test_pull_iota_is_ring_hom_on_products():
    rng = random.Random(61)
    for _ in range(25):
        x = _random_yclass(G2, rng)
        y = _random_yclass(G2, rng)
        assert G2.pull_iota(x * y) == G2.pull_iota(x) * G2.pull_iota(y)


# -- integration -------------------------------------------------------------

def test_integrate_x_token():
    X = G2.X
    out = G2.integrate(X.gen("w") ** 3 * X.gen("alpha"))
    assert out.canonical() == "<w^3*alpha>"


def test_integrate_x_keeps_formal_scalars():
    X = G2.X
    out = G2.integrate(X.gen("N") ** 2 * X.gen("w") ** 4 * 3)
    assert out.canonical() == "3*N^2*<w^4>"


def test_integrate_rejects_non_top_degree():
    with pytest.raises(HomogeneityError):
        G2.integrate(G2.X.gen("w"))
    with pytest.raises(HomogeneityError):
        G2.integrate(G2.XX.gen("f1_w"))


def test_integrate_degree_chain_binomials():
    for n, geom, binom in ((2, G2, 35), (3, G3, 462)):
        XX = geom.XX
        wt = XX.gen("f1_w") + XX.gen("f2_w")
        split = XX.gen("f1_a") + XX.gen("f2_b")
        out = geom.integrate(wt ** (4 * n - 1) * split)
        w = geom.X.gen("w")
        top = geom.integrate(w ** (2 * n))
        ta = geom.integrate(w ** (2 * n - 1) * geom.X.gen("a"))
        tb = geom.integrate(w ** (2 * n - 1) * geom.X.gen("b"))
        assert out == (top * ta + top * tb) * binom


def test_integrate_xx_unbalanced_monomials_vanish():
    XX = G2.XX
    assert G2.integrate(XX.gen("f1_w", 5) * XX.gen("f2_w", 3)).is_zero()


def test_integrate_divisor_degree():
    D, X = G2.D, G2.X
    integrand = (G2.pull_p(X.gen("w")) ** 3 * G2.h_class() ** 3
                 * (D.gen("s") * G2.h_class() + G2.pull_p(X.gen("lam"))))
    assert G2.integrate(integrand).canonical() == "<w^3*lam>"


def test_integrate_on_d_via_pushforward():
    X = G2.X
    integrand = G2.pull_p(X.gen("w") ** 4) * G2.h_class() ** 3
    assert G2.integrate(integrand) == G2.integrate(X.gen("w") ** 4)


def test_integrate_yclass():
    g = G2
    z = g.XX.gen("f1_w", 4) * g.XX.gen("f2_w", 4)
    top_d = g.pull_p(g.X.gen("w") ** 4) * g.h_class() ** 3
    y = g.pull_beta(z) + g.push_iota(top_d)
    w_top = g.integrate(g.X.gen("w") ** 4)
    assert g.integrate(y) == w_top * w_top + w_top


def test_integrate_delta_term_projection_formula():
    g = G2
    z = g.XX.gen("f1_w") * g.XX.gen("f2_w", 2)
    out = g.integrate_delta_term(z, g.X.gen("a"))
    assert out == g.integrate(g.X.gen("w") ** 3 * g.X.gen("a"))


# -- formal scalars -----------------------------------------------------------

def test_formal_scalar_arithmetic():
    t = FormalScalar.token("w^4")
    s = FormalScalar.token("w^3*a")
    assert (t + t).canonical() == "2*<w^4>"
    assert (t - t).is_zero()
    assert (t * s).canonical() == "<w^3*a>*<w^4>"
    assert (t * 0).is_zero()
    assert (t * Fraction(1, 2) + s).canonical() == "<w^3*a> + 1/2*<w^4>"


def test_formal_scalar_constant_and_equality():
    assert FormalScalar.constant(3) + FormalScalar.constant(-3) \
        == FormalScalar.zero()
    assert FormalScalar.token("w^4") != FormalScalar.token("w^3*a")


# -- space models --------------------------------------------------------------

def test_truncation_bounds():
    assert G2.X.bound == 4
    assert G2.XX.bound == 8
    assert G2.D.bound == 7
    assert G2.y_bound == 8


def test_geometry_guard():
    with pytest.raises(GuardError):
        Geometry(1)
    with pytest.raises(GuardError):
        Geometry(7)


def test_x_and_xx_have_no_h():
    assert "h" not in G2.X.table
    assert "h" not in G2.XX.table
    assert "h" in G2.D.table


def test_mutated_relation_changes_sign():
    flipped = geometry(2, -1)
    h4 = flipped.D_free.gen("h", 4).with_context(flipped.D)
    assert h4.canonical() == "c2*h^2 + c4"


def test_yclass_rejects_wrong_contexts():
    with pytest.raises(ContextMismatchError):
        YClass(G2, G2.X.one(), G2.D.one())
    with pytest.raises(ContextMismatchError):
        G2.pull_iota(G3.d_class())
