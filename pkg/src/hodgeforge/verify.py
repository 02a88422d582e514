"""Named verification checks over the blow-up geometry and character calculus.

Every check recomputes one structural identity from scratch inside the engine
and reports both sides in canonical serialization; a check passes exactly
when the two strings agree.  Where an identity has an independent derivation
(a recursion against a direct normal-form computation, a binomial count
against a ring expansion) the two code paths are kept separate so the
comparison is meaningful.

Some checks accept private mutation flags used by the negative-control tests
to verify that a sign error would actually be caught.
"""

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from time import perf_counter

from . import bundles, characters
from .bundles import (VirtualBundle, dual, ext_power, first_chern,
                      line_bundle, sym_power, tensor, todd_log_coefficients)
from .errors import GuardError
from .ring import GradedClass
from .spaces import SCALAR_NAMES, FormalScalar, YClass, geometry

MAX_N = 6


@dataclass
class Check:
    """A registry entry: which check to run, with which parameters."""
    name: str
    params: dict


@dataclass
class CheckReport:
    check: str
    params: dict
    status: str
    lhs: str
    rhs: str
    elapsed_ms: int = 0

    @property
    def passed(self):
        return self.status == "pass"

    def to_dict(self):
        return {"check": self.check, "params": dict(self.params),
                "status": self.status, "lhs": self.lhs, "rhs": self.rhs,
                "elapsed_ms": self.elapsed_ms}


def _finish(name, params, segments, t0):
    lhs = "; ".join(f"{tag}={left}" for tag, left, _ in segments)
    rhs = "; ".join(f"{tag}={right}" for tag, _, right in segments)
    status = "pass" if lhs == rhs else "fail"
    return CheckReport(name, params, status, lhs, rhs,
                       int((perf_counter() - t0) * 1000))


def _guard_n(n):
    if not (2 <= n <= MAX_N):
        raise GuardError(f"n={n} outside 2..{MAX_N}")


# ---------------------------------------------------------------------------
# pushforwards of powers of the tautological class

def verify_pstar_table(n, i_max=None, *, mutate_h_relation=False):
    """p_*(h^i) vanishes below degree 2n-1 and in even degrees, equals 1 at
    2n-1, and above that matches the Chern-class recursion obtained from the
    projective-bundle relation by the projection formula."""
    t0 = perf_counter()
    _guard_n(n)
    if i_max is None:
        i_max = 2 * n + 6
    if not (0 <= i_max <= 2 * n + 6):
        raise GuardError(f"i_max={i_max} outside 0..{2 * n + 6}")
    geom = geometry(n, -1 if mutate_h_relation else 1)
    h = geom.h_class()
    X = geom.X

    def cgen(j):
        return X.gen(f"c{j}") if 2 <= j <= 2 * n and j % 2 == 0 else X.zero()

    # independent recursion: p(2n+k) = -c_{k+1} - sum_{j even} c_j p(2n+k-j)
    recursion = {2 * n - 1: X.one()}
    k = 1
    while 2 * n + k <= i_max:
        acc = -cgen(k + 1)
        for j in range(2, k):
            if j % 2 == 0:
                acc = acc - cgen(j) * recursion[2 * n + k - j]
        recursion[2 * n + k] = acc
        k += 2

    segments = []
    for i in range(i_max + 1):
        direct = geom.push_p(h ** i)
        if i < 2 * n - 1 or i % 2 == 0:
            expected = X.zero()
        else:
            expected = recursion[i]
        segments.append((f"p(h^{i})", direct.canonical(), expected.canonical()))
    return _finish("pstar_table", {"n": n, "i_max": i_max}, segments, t0)


def verify_q_relation(n):
    """The quotient bundle q = p^*TX - ell has rank 2n-1, and the degree-2n
    part of its total Chern class (computed relation-free from the Chern
    character) is exactly the rewrite relation used on D."""
    t0 = perf_counter()
    _guard_n(n)
    geom = geometry(n)
    free = geom.D_free
    q = geom.tangent_bundle(free) - geom.tautological_line(free)
    c_top = bundles.chern_total(q).graded_component(2 * n)
    # the stored rule rewrites h^{2n} to R; the relation asserts h^{2n} - R = 0
    rule_class = GradedClass(free, geom.D.rew_terms)
    relation = free.gen("h", 2 * n) - rule_class
    segments = [
        ("rank", str(q.rank_int()), str(2 * n - 1)),
        ("c_top", c_top.canonical(), relation.canonical()),
    ]
    return _finish("q_relation", {"n": n}, segments, t0)


def verify_grr_c1(n, *, mutate_todd=False):
    """The first Chern class survives pushforward through the blow-up: the
    relative Todd class has degree-1 part ((1-2n)/2)[D], the exceptional
    divisor pushes to zero, and the degree-1 part of beta_*(ch(W) td) equals
    beta_*(c_1(W)) with the symbolic rank term eliminated."""
    t0 = perf_counter()
    _guard_n(n)
    geom = geometry(n)
    l1 = todd_log_coefficients(geom.y_bound)[1]
    if mutate_todd:
        l1 = -l1
    d_cls = geom.d_class()

    # (a) degree-1 part of todd(TY - beta^*T(X*X)) from c_1(TY) = (1-2n)[D]
    c1_rel = d_cls * (1 - 2 * n)
    td1 = c1_rel * l1
    td1_expected = YClass(geom, geom.XX.zero(),
                          geom.D.scalar(Fraction(1 - 2 * n, 2)))

    # (b) beta_*[D] = 0
    beta_d = geom.push_beta(d_cls)

    # (c) formal W of rank r with c_1 = beta^*(f1_a + f2_b) + m[D]
    z = geom.XX.gen("f1_a") + geom.XX.gen("f2_b")
    c1_w = YClass(geom, z, geom.D.gen("m"))
    ch_w = YClass(geom, geom.XX.gen("r"), geom.D.zero()) + c1_w
    td_beta = geom.y_one() + td1
    grr_c1 = geom.push_beta((ch_w * td_beta).graded_component(1))

    segments = [
        ("td_beta_1", td1.canonical(), td1_expected.canonical()),
        ("beta_D", beta_d.canonical(), "0"),
        ("c1", grr_c1.canonical(), geom.push_beta(c1_w).canonical()),
    ]
    return _finish("grr_c1", {"n": n}, segments, t0)


def verify_degree_chain(n):
    """The degree of a split (1,1)-class against the sum Kaehler class on X*X
    factors through the diagonal: both routes give the binomial coefficient
    C(4n-1, 2n) times the same integral tokens."""
    t0 = perf_counter()
    _guard_n(n)
    geom = geometry(n)
    XX, X = geom.XX, geom.X
    wt = XX.gen("f1_w") + XX.gen("f2_w")
    split = XX.gen("f1_a") + XX.gen("f2_b")
    direct = geom.integrate(wt ** (4 * n - 1) * split)

    binom = math.comb(4 * n - 1, 2 * n)  # independent counting oracle
    w = X.gen("w")
    top = geom.integrate(w ** (2 * n))
    t_a = geom.integrate(w ** (2 * n - 1) * X.gen("a"))
    t_b = geom.integrate(w ** (2 * n - 1) * X.gen("b"))
    expected = (top * t_a + top * t_b) * binom

    diagonal = (top * geom.integrate(w ** (2 * n - 1)
                                     * geom.pull_delta(split))) * binom
    segments = [
        ("xx_integral", direct.canonical(), expected.canonical()),
        ("via_diagonal", diagonal.canonical(), expected.canonical()),
    ]
    return _finish("degree_chain", {"n": n}, segments, t0)


def verify_diagonal_restriction(n):
    """Restricting a degree-1 class on Y to the diagonal through the
    exceptional divisor, p_*(h^{2n-1} iota^*(.)), recovers delta^* of its
    pullback part and kills any multiple of [D]."""
    t0 = perf_counter()
    _guard_n(n)
    geom = geometry(n)
    z = geom.XX.gen("f1_a") + geom.XX.gen("f2_b")
    cls = YClass(geom, z, geom.D.gen("m"))  # beta^*(z) + m[D]
    h = geom.h_class()
    restricted = geom.push_p(h ** (2 * n - 1) * geom.pull_iota(cls))
    segments = [
        ("restriction", restricted.canonical(),
         geom.pull_delta(z).canonical()),
        ("m_part", restricted.coefficient_of("m", 1).canonical(), "0"),
    ]
    return _finish("diagonal_restriction", {"n": n}, segments, t0)


def verify_hom_restriction(n, g=1):
    """c_1 of Hom(V, G) on D, with V the symplectic rank 2n-2 quotient
    (whose c_1 the engine derives to be zero) and G of rank g with formal
    c_1 = alpha - k h - Z, equals (2n-2)(alpha - k h - Z)."""
    t0 = perf_counter()
    _guard_n(n)
    if not (0 < g < 2 * n - 2):
        raise GuardError(f"g={g} outside 1..{2 * n - 3}")
    geom = geometry(n)
    D = geom.D
    h = geom.h_class()
    lperp = geom.tangent_bundle(D) - line_bundle(h)
    v = lperp - geom.tautological_line(D)
    c1_g = D.gen("alpha") - D.gen("k") * h - D.gen("Z")
    g_bundle = VirtualBundle(D.scalar(g) + c1_g)
    hom = tensor(dual(v), g_bundle)
    segments = [
        ("c1_V", first_chern(v).canonical(), "0"),
        ("rank_V", str(v.rank_int()), str(2 * n - 2)),
        ("c1_hom", first_chern(hom).canonical(),
         (c1_g * (2 * n - 2)).canonical()),
    ]
    return _finish("hom_restriction", {"n": n, "g": g}, segments, t0)


def verify_divisor_degree(n):
    """The degree of a divisor class s h + lam on D against
    (p^* w)^{2n-1} h^{2n-1} equals the integral token <w^{2n-1} lam>: the
    coefficient of the formal scalar s is p_*(h^{2n}) = 0."""
    t0 = perf_counter()
    _guard_n(n)
    geom = geometry(n)
    D, X = geom.D, geom.X
    h = geom.h_class()
    integrand = (geom.pull_p(X.gen("w")) ** (2 * n - 1) * h ** (2 * n - 1)
                 * (D.gen("s") * h + geom.pull_p(X.gen("lam"))))
    value = geom.integrate(integrand)
    expected = geom.integrate(X.gen("w") ** (2 * n - 1) * X.gen("lam"))
    s_slot = SCALAR_NAMES.index("s")
    s_part = FormalScalar({key: c for key, c in value.terms.items()
                           if key[0][s_slot]})
    segments = [
        ("degree", value.canonical(), expected.canonical()),
        ("s_part", s_part.canonical(), "0"),
    ]
    return _finish("divisor_degree", {"n": n}, segments, t0)


def verify_ses_ch(n, j=2, t=3):
    """Chern-character bookkeeping of the two short exact sequences relating
    exterior powers of ell-perp, of its symplectic quotient, and of p^*TX,
    twisted by powers of the tautological line; also rank and c_1 of the
    quotient."""
    t0 = perf_counter()
    _guard_n(n)
    if not (1 <= j <= 2 * n):
        raise GuardError(f"j={j} outside 1..{2 * n}")
    if not (0 <= t <= 8):
        raise GuardError(f"t={t} outside 0..8")
    geom = geometry(n)
    free = geom.D_free  # relation-free: the identities hold before rewriting
    h = free.gen("h")
    tx = geom.tangent_bundle(free)
    ell = geom.tautological_line(free)          # c_1 = -h
    lperp = tx - line_bundle(h)                 # from 0 -> lperp -> p^*TX -> ell^{-1} -> 0
    lql = lperp - ell                           # rank 2n-2 symplectic quotient

    def twist_down(vb, power):
        # (x) ell^{-power}; c_1(ell^{-power}) = power*h
        return bundles.twist(vb, h * power)

    seq1_lhs = (twist_down(ext_power(lperp, j), t).ch
                + twist_down(ext_power(lperp, j - 1), t + 1).ch)
    seq1_rhs = twist_down(ext_power(tx, j), t).ch
    seq2_lhs = (twist_down(ext_power(lql, j - 1), t - 1).ch
                + twist_down(ext_power(lql, j), t).ch)
    seq2_rhs = twist_down(ext_power(lperp, j), t).ch
    segments = [
        ("seq_lperp", seq1_lhs.canonical(), seq1_rhs.canonical()),
        ("seq_quotient", seq2_lhs.canonical(), seq2_rhs.canonical()),
        ("c1_quotient", first_chern(lql).canonical(), "0"),
        ("rank_quotient", str(lql.rank_int()), str(2 * n - 2)),
    ]
    return _finish("ses_ch", {"n": n, "j": j, "t": t}, segments, t0)


def verify_slope_polynomial(n):
    """The slope polynomial Q(N) = p_*([ch(G') exp(Nh) td(T_p)]_{2n}) has
    N-degree exactly 2n-1 and leading coefficient alpha/(2n-1)!, independent
    of the symbolic rank g, the h-coefficient k and every opaque higher
    character component u_i; the two top N-coefficients of the degree-2n
    summand on D match their closed forms g h^{2n}/(2n)! and
    [(alpha - k h) + g n h] h^{2n-1}/(2n-1)!."""
    t0 = perf_counter()
    _guard_n(n)
    geom = geometry(n)
    free = geom.D_free
    h = free.gen("h")
    fact = math.factorial

    ch_g = free.gen("g") + free.gen("alpha") - free.gen("k") * h
    for i in range(2, 2 * n + 1):
        ch_g = ch_g + free.gen(f"u{i}")
    product = (ch_g * bundles.exp_class(free.gen("N") * h)
               * bundles.todd(geom.relative_tangent(free)))
    summand = product.graded_component(2 * n)

    disp_top = free.gen("g") * free.gen("h", 2 * n) / fact(2 * n)
    disp_next = ((free.gen("alpha") - free.gen("k") * h
                  + free.gen("g") * h * n)
                 * free.gen("h", 2 * n - 1) / fact(2 * n - 1))

    q_poly = geom.push_p(summand)
    n_degree = max((j for j in range(2 * n + 1)
                    if not q_poly.coefficient_of("N", j).is_zero()),
                   default=-1)
    leading = q_poly.coefficient_of("N", 2 * n - 1)
    expected_leading = geom.X.gen("alpha") / fact(2 * n - 1)
    u_parts = []
    for i in range(2, 2 * n + 1):
        part = leading.coefficient_of(f"u{i}", 1)
        if not part.is_zero():
            u_parts.append(f"u{i}:{part.canonical()}")
    segments = [
        ("display_N^" + str(2 * n),
         summand.coefficient_of("N", 2 * n).canonical(),
         disp_top.canonical()),
        ("display_N^" + str(2 * n - 1),
         summand.coefficient_of("N", 2 * n - 1).canonical(),
         disp_next.canonical()),
        ("N_degree", str(n_degree), str(2 * n - 1)),
        ("coeff_N^" + str(2 * n),
         q_poly.coefficient_of("N", 2 * n).canonical(), "0"),
        ("leading", leading.canonical(), expected_leading.canonical()),
        ("u_dependence", "[" + ", ".join(u_parts) + "]", "[]"),
    ]
    return _finish("slope_polynomial", {"n": n}, segments, t0)


def verify_inclusion_targets(n):
    """The receiving bundles (Wedge^2 TX) (x) Sym^{N+1}(T^*X) of the slope
    comparison have zero first Chern class, for N = 1..4 and for Sym^0."""
    t0 = perf_counter()
    _guard_n(n)
    geom = geometry(n)
    tx = geom.tangent_bundle()
    wedge2 = ext_power(tx, 2)
    segments = [("Sym^0", first_chern(wedge2).canonical(), "0")]
    for big_n in range(1, 5):
        target = tensor(wedge2, sym_power(dual(tx), big_n + 1))
        segments.append((f"N={big_n}", first_chern(target).canonical(), "0"))
    return _finish("inclusion_targets", {"n": n}, segments, t0)


def verify_sym_not_in_wedge(n, t_max=6):
    """No symmetric power Sym^t (t >= 2) of the standard symplectic
    representation occurs inside any exterior power, and every decomposition
    accounts for the full dimension."""
    t0 = perf_counter()
    _guard_n(n)
    if not (2 <= t_max <= characters.MAX_SYM):
        raise GuardError(f"t_max={t_max} outside 2..{characters.MAX_SYM}")
    hits = []
    dim_errors = []
    for j in range(0, 2 * n + 1):
        decomp = characters.decompose(n, characters.ext_character(n, j))
        total = sum(m * characters.weyl_dim(n, lam)
                    for lam, m in decomp.items())
        if total != math.comb(2 * n, j):
            dim_errors.append(f"j={j}:{total}")
        for t in range(2, t_max + 1):
            if decomp.get((t,) + (0,) * (n - 1), 0) > 0:
                hits.append(f"(t={t},j={j})")
    segments = [
        ("occurrences", "[" + ", ".join(hits) + "]", "[]"),
        ("dimension_check", "[" + ", ".join(dim_errors) + "]", "[]"),
    ]
    return _finish("sym_not_in_wedge", {"n": n, "t_max": t_max}, segments, t0)


# ---------------------------------------------------------------------------
# registry and driver

REGISTRY = {
    "pstar_table": verify_pstar_table,
    "q_relation": verify_q_relation,
    "grr_c1": verify_grr_c1,
    "degree_chain": verify_degree_chain,
    "diagonal_restriction": verify_diagonal_restriction,
    "hom_restriction": verify_hom_restriction,
    "divisor_degree": verify_divisor_degree,
    "ses_ch": verify_ses_ch,
    "slope_polynomial": verify_slope_polynomial,
    "inclusion_targets": verify_inclusion_targets,
    "sym_not_in_wedge": verify_sym_not_in_wedge,
}


def checks_for(n):
    """The full battery for one n, in registry order."""
    _guard_n(n)
    defaults = {
        "pstar_table": {"n": n, "i_max": 2 * n + 6},
        "q_relation": {"n": n},
        "grr_c1": {"n": n},
        "degree_chain": {"n": n},
        "diagonal_restriction": {"n": n},
        "hom_restriction": {"n": n, "g": 1},
        "divisor_degree": {"n": n},
        "ses_ch": {"n": n, "j": 2, "t": 3},
        "slope_polynomial": {"n": n},
        "inclusion_targets": {"n": n},
        "sym_not_in_wedge": {"n": n, "t_max": 6},
    }
    return [Check(name, defaults[name]) for name in REGISTRY]


def run_check(name, params):
    if name not in REGISTRY:
        raise GuardError(f"unknown check {name!r}; known: "
                         + ", ".join(REGISTRY))
    try:
        return REGISTRY[name](**params)
    except TypeError as exc:
        raise GuardError(f"bad parameters for {name}: {exc}") from None


def default_jobs():
    value = os.environ.get("HODGE_FORGE_JOBS", "").strip()
    if value.isdigit() and int(value) > 0:
        return int(value)
    return 1


def run_all(n_list, jobs=None):
    """Run the whole registry for each n; reports come back in registry
    order regardless of how the work is scheduled."""
    checks = [c for n in n_list for c in checks_for(n)]
    if jobs is None:
        jobs = default_jobs()
    if jobs <= 1 or len(checks) <= 1:
        return [run_check(c.name, c.params) for c in checks]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(lambda c: run_check(c.name, c.params), checks))
