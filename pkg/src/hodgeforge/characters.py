"""Weight and character calculus for the symplectic Lie algebras C_n.

Weights are integer vectors in the standard e_i coordinates; a weight is
dominant when it is weakly decreasing with nonnegative last entry, and the
Weyl group acts by signed permutations.  Irreducible weight multiplicities
come from Freudenthal's recursion (integer arithmetic only), characters of
symmetric/exterior powers of the standard representation by direct
enumeration, and decomposition into irreducibles by highest-weight peeling.
"""

from fractions import Fraction
from functools import lru_cache
from itertools import combinations, combinations_with_replacement, permutations, product

from .errors import CharacterError, GuardError

MAX_RANK = 6
MAX_SYM = 8


def guard_params(n, j=None, t=None):
    if n < 1 or n > MAX_RANK:
        raise GuardError(f"rank n={n} outside 1..{MAX_RANK}")
    if j is not None and not (0 <= j <= 2 * n):
        raise GuardError(f"exterior power j={j} outside 0..{2 * n}")
    if t is not None and not (0 <= t <= MAX_SYM):
        raise GuardError(f"symmetric power t={t} outside 0..{MAX_SYM}")


def is_dominant(w):
    return all(w[i] >= w[i + 1] for i in range(len(w) - 1)) and w[-1] >= 0


def dominant_rep(w):
    """The dominant weight in the signed-permutation orbit of w."""
    return tuple(sorted((abs(x) for x in w), reverse=True))


def weight_orbit(w):
    """All signed permutations of a weight."""
    out = set()
    values = tuple(abs(x) for x in w)
    for perm in set(permutations(values)):
        signable = [i for i, v in enumerate(perm) if v]
        for signs in product((1, -1), repeat=len(signable)):
            v = list(perm)
            for i, s in zip(signable, signs):
                v[i] *= s
            out.add(tuple(v))
    return out


def standard_weights(n):
    """Weights of the standard 2n-dimensional representation: +-e_i."""
    guard_params(n)
    chi = {}
    for i in range(n):
        plus = tuple(1 if j == i else 0 for j in range(n))
        minus = tuple(-1 if j == i else 0 for j in range(n))
        chi[plus] = 1
        chi[minus] = 1
    return chi


def _standard_list(n):
    out = []
    for w, mult in sorted(standard_weights(n).items()):
        out.extend([w] * mult)
    return out


def ext_character(n, j):
    """Weight multiset of the j-th exterior power of the standard representation."""
    guard_params(n, j=j)
    chi = {}
    for combo in combinations(_standard_list(n), j):
        w = tuple(sum(col) for col in zip(*combo)) if combo else (0,) * n
        chi[w] = chi.get(w, 0) + 1
    return chi


def sym_character(n, t):
    """Weight multiset of the t-th symmetric power of the standard representation."""
    guard_params(n, t=t)
    chi = {}
    for combo in combinations_with_replacement(_standard_list(n), t):
        w = tuple(sum(col) for col in zip(*combo)) if combo else (0,) * n
        chi[w] = chi.get(w, 0) + 1
    return chi


def _ip(v, w):
    return sum(x * y for x, y in zip(v, w))


@lru_cache(maxsize=None)
def _positive_roots(n):
    roots = []
    for i in range(n):
        for j in range(i + 1, n):
            roots.append(tuple((1 if k == i else 0) - (1 if k == j else 0)
                               for k in range(n)))
            roots.append(tuple((1 if k == i else 0) + (1 if k == j else 0)
                               for k in range(n)))
        roots.append(tuple(2 if k == i else 0 for k in range(n)))
    return tuple(roots)


def _rho(n):
    return tuple(range(n, 0, -1))


def weyl_dim(n, lam):
    """Dimension of the irreducible with highest weight lam (Weyl formula)."""
    guard_params(n)
    lam = tuple(lam)
    if len(lam) != n or not is_dominant(lam):
        raise CharacterError(f"{lam} is not a dominant weight for rank {n}")
    rho = _rho(n)
    shifted = tuple(l + r for l, r in zip(lam, rho))
    dim = Fraction(1)
    for alpha in _positive_roots(n):
        dim *= Fraction(_ip(shifted, alpha), _ip(rho, alpha))
    assert dim.denominator == 1
    return int(dim)


def _coroot_heights(n, nu):
    """Simple-root coordinates of nu, or None when nu is not a nonnegative
    integer combination (partial sums for C_n; the last one must be even)."""
    partial = 0
    ks = []
    for i in range(n - 1):
        partial += nu[i]
        if partial < 0:
            return None
        ks.append(partial)
    partial += nu[-1]
    if partial < 0 or partial % 2:
        return None
    ks.append(partial // 2)
    return tuple(ks)


def _dominant_candidates(n, lam):
    """Dominant weights mu <= lam in the root-lattice coset, with the height
    of lam - mu, sorted by increasing height."""
    out = []
    for tup in combinations_with_replacement(range(lam[0] + 1), n):
        mu = tuple(reversed(tup))
        nu = tuple(l - m for l, m in zip(lam, mu))
        ks = _coroot_heights(n, nu)
        if ks is not None:
            out.append((sum(ks), mu))
    out.sort()
    return out


@lru_cache(maxsize=None)
def irreducible_dominant_weights(n, lam):
    """Dominant weight multiplicities of the irreducible V_lam, by Freudenthal.

    The recursion is processed by increasing depth, so every multiplicity on
    the right-hand side is already known; non-weights come out as zero.
    """
    guard_params(n)
    lam = tuple(lam)
    if len(lam) != n or not is_dominant(lam):
        raise CharacterError(f"{lam} is not a dominant weight for rank {n}")
    if lam == (0,) * n:
        return {lam: 1}
    roots = _positive_roots(n)
    root_heights = [sum(_coroot_heights(n, a)) for a in roots]
    rho = _rho(n)
    lam_norm = _ip(tuple(l + r for l, r in zip(lam, rho)),
                   tuple(l + r for l, r in zip(lam, rho)))
    mult = {}
    for depth, mu in _dominant_candidates(n, lam):
        if depth == 0:
            mult[mu] = 1
            continue
        shifted = tuple(m + r for m, r in zip(mu, rho))
        denom = lam_norm - _ip(shifted, shifted)
        if denom <= 0:
            continue
        num = 0
        for alpha, ha in zip(roots, root_heights):
            k = 1
            while k * ha <= depth:
                nu = tuple(m + k * a for m, a in zip(mu, alpha))
                m2 = mult.get(dominant_rep(nu), 0)
                if m2:
                    num += m2 * _ip(nu, alpha)
                k += 1
        value = Fraction(2 * num, denom)
        assert value.denominator == 1, "Freudenthal recursion left a fraction"
        if value:
            mult[mu] = int(value)
    return mult


def irreducible_character(n, lam):
    """Full weight multiset of V_lam (dominant multiplicities spread over orbits)."""
    chi = {}
    for mu, m in irreducible_dominant_weights(n, tuple(lam)).items():
        for w in weight_orbit(mu):
            chi[w] = m
    return chi


def is_weyl_invariant(n, chi):
    reps = {dominant_rep(w) for w in chi}
    for rep in reps:
        m = chi.get(rep)
        if m is None:
            return False
        for w in weight_orbit(rep):
            if chi.get(w) != m:
                return False
    return True


def decompose(n, chi):
    """Decompose a character into irreducibles by highest-weight peeling.

    Repeatedly take the maximal dominant weight present (by coordinate sum,
    then lexicographically -- this refines the dominance order), subtract
    that multiple of the full irreducible character, and record it.
    """
    guard_params(n)
    chi = {tuple(w): int(m) for w, m in chi.items() if m}
    if any(len(w) != n for w in chi):
        raise CharacterError(f"weights must have {n} coordinates")
    if any(m < 0 for m in chi.values()):
        raise CharacterError("weight multiset has negative multiplicities")
    if not is_weyl_invariant(n, chi):
        raise CharacterError("weight multiset is not Weyl-group invariant")
    work = dict(chi)
    out = {}
    while work:
        dominants = [w for w in work if is_dominant(w)]
        if not dominants:
            raise CharacterError("leftover terms without a dominant weight; "
                                 "input was not a character")
        top = max(dominants, key=lambda w: (sum(w), w))
        m = work[top]
        out[top] = out.get(top, 0) + m
        for w, c in irreducible_character(n, top).items():
            r = work.get(w, 0) - m * c
            if r < 0:
                raise CharacterError(
                    f"negative multiplicity at {list(w)} while peeling "
                    f"{list(top)}; input was not a character")
            if r:
                work[w] = r
            else:
                work.pop(w, None)
    return out


def contains(n, t, j):
    """Does Sym^t of the standard representation occur inside the j-th
    exterior power?"""
    guard_params(n, j=j, t=t)
    target = (t,) + (0,) * (n - 1)
    return decompose(n, ext_character(n, j)).get(target, 0) > 0


def weight_string(w):
    return "[" + ",".join(str(x) for x in w) + "]"


def decomposition_json(decomp):
    """Decomposition as a plain dict with '[a1,...,an]' keys (peeling order)."""
    return {weight_string(w): m for w, m in decomp.items()}
