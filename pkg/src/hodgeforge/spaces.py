"""Cohomology models for the square of a holomorphic-symplectic manifold.

For a manifold X of complex dimension 2n (n >= 2) we model four spaces:

    D ---iota---> Y
    |             |
    p            beta
    |             |
    X --delta--> X*X

where Y is the blow-up of X*X along the diagonal and D, the exceptional
divisor, is the projectivization of TX.  H^*(X) is free on formal generators
(a Kaehler class w, classes alpha/a/b/lam of degree 1, the even Chern classes
c_j of TX, opaque degree-i classes u_i) truncated above degree 2n; H^*(X*X)
is the Kuenneth square on f1_/f2_ copies; H^*(D) adds the tautological class
h with the projective-bundle rewrite rule

    h^{2n} = -(c_2 h^{2n-2} + c_4 h^{2n-4} + ... + c_{2n})

plus an opaque effective-divisor generator Z; classes on Y are stored as a
pair (pullback part on X*X, exceptional part on D) meaning beta^*(z) +
iota_*(y).  A handful of degree-0 generators (N, g, k, m, r, s) serve as
formal scalars shared by all spaces.

The diagonal pushforward delta_* is never materialized: it either vanishes or
is eliminated by the projection formula inside an integral, and anything else
raises UnsupportedClassError.  Integrals over top-degree classes evaluate to
exact linear combinations of opaque tokens <m>, one per top-degree monomial
on X.
"""

from fractions import Fraction
from functools import lru_cache

from .errors import (ContextMismatchError, GuardError, HomogeneityError,
                     UnsupportedClassError)
from .ring import (Context, GeneratorTable, GradedClass, format_terms,
                   monomial_string)
from . import bundles

SCALAR_NAMES = ("N", "g", "k", "m", "r", "s")
DEGREE_ONE_NAMES = ("w", "alpha", "a", "b", "lam")
MAX_N = 6


def _positive_entries(n):
    entries = [(name, 1) for name in DEGREE_ONE_NAMES]
    entries += [(f"c{j}", j) for j in range(2, 2 * n + 1, 2)]
    entries += [(f"u{i}", i) for i in range(2, 2 * n + 1)]
    return entries


class YClass:
    """Class on the blow-up Y, stored as beta^*(pullback) + iota_*(exceptional)."""

    __slots__ = ("geom", "pullback", "exceptional")

    def __init__(self, geom, pullback, exceptional):
        if pullback.ctx != geom.XX:
            raise ContextMismatchError("pullback part must live on X*X")
        if exceptional.ctx != geom.D:
            raise ContextMismatchError("exceptional part must live on D")
        self.geom = geom
        self.pullback = pullback
        self.exceptional = exceptional

    def is_zero(self):
        return (self.pullback.is_zero()
                and self.exceptional.normal_form().is_zero())

    def __eq__(self, other):
        # both parts are compared after normal form
        return (isinstance(other, YClass) and self.geom.n == other.geom.n
                and self.pullback == other.pullback
                and self.exceptional.normal_form()
                == other.exceptional.normal_form())

    def __add__(self, other):
        other = self.geom.promote_y(other)
        return YClass(self.geom, self.pullback + other.pullback,
                      self.exceptional + other.exceptional)

    __radd__ = __add__

    def __neg__(self):
        return YClass(self.geom, -self.pullback, -self.exceptional)

    def __sub__(self, other):
        other = self.geom.promote_y(other)
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return YClass(self.geom, self.pullback * other,
                          self.exceptional * other)
        other = self.geom.promote_y(other)
        g = self.geom
        z1, y1 = self.pullback, self.exceptional
        z2, y2 = other.pullback, other.exceptional
        # beta^*z . iota_*y = iota_*(p^* delta^*(z) . y) and
        # iota_*y1 . iota_*y2 = iota_*((-h) y1 y2)   (self-intersection).
        pull = z1 * z2
        exc = g.D.zero()
        if not (z1.is_zero() or y2.is_zero()):
            exc = exc + g.pull_p(g.pull_delta(z1)) * y2
        if not (y1.is_zero() or z2.is_zero()):
            exc = exc + y1 * g.pull_p(g.pull_delta(z2))
        if not (y1.is_zero() or y2.is_zero()):
            exc = exc - g.h_class() * y1 * y2
        return YClass(g, pull, exc)

    __rmul__ = __mul__

    def __pow__(self, k):
        k = int(k)
        if k < 0:
            raise ValueError("negative powers are not defined")
        out = self.geom.y_one()
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def graded_component(self, d):
        d = int(d)
        if d < 0 or d > self.geom.y_bound:
            raise ValueError(f"degree {d} outside [0, {self.geom.y_bound}]")
        exc = (self.geom.D.zero() if d == 0
               else self.exceptional.graded_component(d - 1))
        return YClass(self.geom, self.pullback.graded_component(d), exc)

    def canonical(self):
        if self.is_zero():
            return "0"
        return (f"beta^*({self.pullback.canonical()})"
                f" + iota_*({self.exceptional.normal_form().canonical()})")

    def __str__(self):
        return self.canonical()

    def __repr__(self):
        return f"YClass({self.canonical()})"


class FormalScalar:
    """Exact polynomial in opaque top-degree integral tokens <m> and the
    shared degree-0 formal scalars."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        cleaned = {}
        if terms:
            for (scal, tokens), c in terms.items():
                c = Fraction(c)
                if c:
                    cleaned[(tuple(scal), tuple(tokens))] = c
        self.terms = cleaned

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def constant(cls, q):
        q = Fraction(q)
        if not q:
            return cls()
        unit = ((0,) * len(SCALAR_NAMES), ())
        return cls({unit: q})

    @classmethod
    def token(cls, name, coeff=1, scal=None):
        scal = tuple(scal) if scal is not None else (0,) * len(SCALAR_NAMES)
        return cls({(scal, (f"<{name}>",)): Fraction(coeff)})

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = FormalScalar.constant(other)
        if not isinstance(other, FormalScalar):
            return NotImplemented
        return self.terms == other.terms

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = FormalScalar.constant(other)
        if not isinstance(other, FormalScalar):
            return NotImplemented
        out = dict(self.terms)
        for key, c in other.terms.items():
            acc = out.get(key)
            acc = c if acc is None else acc + c
            if acc:
                out[key] = acc
            elif key in out:
                del out[key]
        return FormalScalar(out)

    __radd__ = __add__

    def __neg__(self):
        return FormalScalar({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = FormalScalar.constant(other)
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            return FormalScalar({k: c * q for k, c in self.terms.items()})
        if not isinstance(other, FormalScalar):
            return NotImplemented
        out = {}
        for (s1, t1), c1 in self.terms.items():
            for (s2, t2), c2 in other.terms.items():
                key = (tuple(x + y for x, y in zip(s1, s2)),
                       tuple(sorted(t1 + t2)))
                acc = out.get(key)
                prod = c1 * c2
                acc = prod if acc is None else acc + prod
                if acc:
                    out[key] = acc
                elif key in out:
                    del out[key]
        return FormalScalar(out)

    __rmul__ = __mul__

    def __pow__(self, k):
        k = int(k)
        if k < 0:
            raise ValueError("negative powers are not defined")
        out = FormalScalar.constant(1)
        for _ in range(k):
            out = out * self
        return out

    def canonical(self):
        if not self.terms:
            return "0"
        def factor_string(key):
            scal, tokens = key
            factors = []
            for name, e in zip(SCALAR_NAMES, scal):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            factors.extend(tokens)
            return "*".join(factors)
        ordered = sorted(self.terms.items(),
                         key=lambda kc: (kc[0][1], kc[0][0]))
        return format_terms([(factor_string(k), c) for k, c in ordered])

    def __str__(self):
        return self.canonical()

    def __repr__(self):
        return f"FormalScalar({self.canonical()})"


class Geometry:
    """The four ambient spaces at a fixed n, with the maps between them.

    Instances are immutable; all operators are pure functions of their
    arguments, so a Geometry can be shared freely between workers.
    """

    def __init__(self, n, h_relation_sign=1):
        n = int(n)
        if n < 2:
            raise GuardError("the model needs n >= 2")
        if n > MAX_N:
            raise GuardError(f"n={n} exceeds the supported bound {MAX_N}")
        self.n = n
        pos = _positive_entries(n)
        scal = [(name, 0) for name in SCALAR_NAMES]

        x_table = GeneratorTable(pos + scal)
        self.X = Context(f"X({n})", x_table, 2 * n)

        # classes pulled back from X die above degree 2n wherever they live
        x_block = tuple(range(len(pos)))
        d_table = GeneratorTable(pos + scal + [("Z", 1), ("h", 1)])
        width = len(d_table)
        h_idx = width - 1
        rule = {}
        for j in range(2, 2 * n + 1, 2):
            mono = [0] * width
            mono[d_table.index(f"c{j}")] = 1
            mono[h_idx] = 2 * n - j
            rule[tuple(mono)] = Fraction(-h_relation_sign)
        d_caps = ((x_block, 2 * n),)
        self.D = Context(f"D({n})", d_table, 4 * n - 1,
                         rewrite=("h", 2 * n, rule), degree_caps=d_caps)
        self.D_free = Context(f"D({n})|free", d_table, 4 * n - 1,
                              degree_caps=d_caps)

        xx_entries = ([("f1_" + name, d) for name, d in pos]
                      + [("f2_" + name, d) for name, d in pos] + scal)
        xx_caps = ((x_block, 2 * n),
                   (tuple(range(len(pos), 2 * len(pos))), 2 * n))
        self.XX = Context(f"XX({n})", GeneratorTable(xx_entries), 4 * n,
                          degree_caps=xx_caps)
        self.y_bound = 4 * n

        # index plumbing for the pullback/pushforward remappings
        self._n_pos = len(pos)
        self._x_width = len(x_table)
        self._d_width = width
        self._d_h = h_idx
        self._d_z = width - 2
        self._xx_width = len(xx_entries)
        self._x_scalar_slots = tuple(range(self._n_pos, self._x_width))

    def __repr__(self):
        return f"Geometry(n={self.n})"

    def spaces(self):
        return {"X": self.X, "XX": self.XX, "D": self.D}

    # -- element helpers -------------------------------------------------
    def h_class(self):
        return self.D.gen("h")

    def d_class(self):
        """The exceptional divisor class [D] = iota_*(1)."""
        return YClass(self, self.XX.zero(), self.D.one())

    def y_zero(self):
        return YClass(self, self.XX.zero(), self.D.zero())

    def y_one(self):
        return YClass(self, self.XX.one(), self.D.zero())

    def y_scalar(self, q):
        return YClass(self, self.XX.scalar(q), self.D.zero())

    def promote_y(self, v):
        if isinstance(v, YClass):
            if v.geom.n != self.n:
                raise ContextMismatchError("YClass from a different geometry")
            return v
        if isinstance(v, (int, Fraction)):
            return self.y_scalar(v)
        raise ContextMismatchError(f"cannot interpret {v!r} on Y")

    # -- tautological bundles ---------------------------------------------
    def tangent_bundle(self, ctx=None):
        """TX as a virtual bundle: c_1 = 0 and only even Chern classes."""
        ctx = ctx if ctx is not None else self.X
        cs = []
        for j in range(1, 2 * self.n + 1):
            cs.append(ctx.gen(f"c{j}") if j % 2 == 0 else ctx.zero())
        return bundles.from_chern(ctx, cs, 2 * self.n)

    def tautological_line(self, ctx=None):
        """The line subbundle ell of p^*TX on D; convention c_1(ell) = -h."""
        ctx = ctx if ctx is not None else self.D
        return bundles.line_bundle(-ctx.gen("h"))

    def relative_tangent(self, ctx=None):
        """T_p from the relative Euler sequence: p^*TX (x) ell^{-1} minus O."""
        ctx = ctx if ctx is not None else self.D
        return (bundles.twist(self.tangent_bundle(ctx), ctx.gen("h"))
                - bundles.trivial(ctx))

    # -- pullbacks ------------------------------------------------------
    def _remap(self, cls, target_ctx, slot_of):
        width = len(target_ctx.table)
        out = {}
        for m, c in cls.items():
            mono = [0] * width
            for i, e in enumerate(m):
                if e:
                    mono[slot_of[i]] = e
            out[tuple(mono)] = c
        return GradedClass(target_ctx, out)

    def pull_p(self, x):
        """p^*: H^*(X) -> H^*(D) (generators keep their names)."""
        self._expect(x, self.X)
        slot_of = tuple(range(self._x_width))
        return self._remap(x, self.D, slot_of)

    def pull_f1(self, x):
        self._expect(x, self.X)
        slot_of = tuple(range(self._n_pos)) + tuple(
            2 * self._n_pos + i for i in range(len(SCALAR_NAMES)))
        return self._remap(x, self.XX, slot_of)

    def pull_f2(self, x):
        self._expect(x, self.X)
        slot_of = tuple(self._n_pos + i for i in range(self._n_pos)) + tuple(
            2 * self._n_pos + i for i in range(len(SCALAR_NAMES)))
        return self._remap(x, self.XX, slot_of)

    def pull_delta(self, z):
        """delta^*: H^*(X*X) -> H^*(X); multiplies the two Kuenneth halves."""
        self._expect(z, self.XX)
        npos = self._n_pos
        out = {}
        for m, c in z.items():
            mono = [0] * self._x_width
            for i in range(npos):
                e = m[i] + m[npos + i]
                if e:
                    mono[i] = e
            for i in range(len(SCALAR_NAMES)):
                mono[npos + i] = m[2 * npos + i]
            key = tuple(mono)
            acc = out.get(key)
            acc = c if acc is None else acc + c
            out[key] = acc
        return GradedClass(self.X, out)

    def pull_beta(self, z):
        """beta^*: H^*(X*X) -> H^*(Y)."""
        self._expect(z, self.XX)
        return YClass(self, z, self.D.zero())

    def pull_iota(self, y):
        """iota^*: H^*(Y) -> H^*(D); iota^* iota_* is multiplication by -h."""
        y = self.promote_y(y)
        out = self.pull_p(self.pull_delta(y.pullback))
        if not y.exceptional.is_zero():
            out = out - self.h_class() * y.exceptional
        return out

    # -- pushforwards ------------------------------------------------------
    def push_p(self, y):
        """p_*: H^*(D) -> H^*(X): normal form, then the h^{2n-1} coefficient."""
        if y.ctx == self.D_free:
            y = y.with_context(self.D)
        self._expect(y, self.D)
        y = y.normal_form()
        top = 2 * self.n - 1
        out = {}
        for m, c in y.items():
            if m[self._d_z]:
                raise UnsupportedClassError(
                    "no pushforward rule for the opaque divisor class Z")
            if m[self._d_h] == top:
                out[m[:self._x_width]] = c
        return GradedClass(self.X, out)

    def push_iota(self, y):
        """iota_*: H^*(D) -> H^*(Y) (degree rises by one)."""
        self._expect(y, self.D)
        return YClass(self, self.XX.zero(), y)

    def push_beta(self, y):
        """beta_*: H^*(Y) -> H^*(X*X).  The exceptional part pushes to
        delta_*(p_*(.)), which this model refuses to materialize unless it
        vanishes."""
        y = self.promote_y(y)
        residue = self.push_p(y.exceptional)
        if not residue.is_zero():
            raise UnsupportedClassError(
                "beta_* would produce the diagonal class delta_*("
                + residue.canonical()
                + "); only integrals against such classes are supported")
        return y.pullback

    # -- integration ------------------------------------------------------
    def integrate(self, v):
        """Integral over the space the class lives on, as a FormalScalar."""
        if isinstance(v, YClass):
            return self.integrate(v.pullback) + self.integrate(v.exceptional)
        if v.ctx == self.X:
            return self._integrate_x(v)
        if v.ctx in (self.D, self.D_free):
            self._expect_top(v, 4 * self.n - 1, "D")
            return self._integrate_x(self.push_p(v))
        if v.ctx == self.XX:
            return self._integrate_xx(v)
        raise ContextMismatchError(f"cannot integrate over {v.ctx.label}")

    def integrate_delta_term(self, z, x):
        """Integral over X*X of z . delta_*(x), via the projection formula."""
        self._expect(z, self.XX)
        self._expect(x, self.X)
        return self._integrate_x(self.pull_delta(z) * x)

    def _token_key(self, m):
        scal = tuple(m[i] for i in self._x_scalar_slots)
        body = list(m[:self._x_width])
        for i in self._x_scalar_slots:
            body[i] = 0
        return scal, monomial_string(self.X.table, tuple(body))

    def _integrate_x(self, x):
        self._expect_top(x, 2 * self.n, "X")
        out = FormalScalar.zero()
        for m, c in x.items():
            scal, token = self._token_key(m)
            out = out + FormalScalar.token(token, c, scal)
        return out

    def _integrate_xx(self, z):
        self._expect_top(z, 4 * self.n, "X*X")
        n2 = 2 * self.n
        npos = self._n_pos
        deg = tuple(self.X.table.degrees[:npos])
        out = FormalScalar.zero()
        for m, c in z.items():
            m1 = m[:npos] + (0,) * len(SCALAR_NAMES)
            m2 = m[npos:2 * npos] + (0,) * len(SCALAR_NAMES)
            if sum(e * d for e, d in zip(m1, deg) if e) != n2:
                continue  # the complementary half misses top degree too
            scal = tuple(m[2 * npos + i] for i in range(len(SCALAR_NAMES)))
            t1 = monomial_string(self.X.table, m1)
            t2 = monomial_string(self.X.table, m2)
            out = out + (FormalScalar.token(t1, c, scal)
                         * FormalScalar.token(t2))
        return out

    # -- guards ---------------------------------------------------------
    def _expect(self, v, ctx):
        if not isinstance(v, GradedClass) or v.ctx != ctx:
            got = v.ctx.label if isinstance(v, GradedClass) else type(v).__name__
            raise ContextMismatchError(f"expected a class on {ctx.label}, got {got}")

    def _expect_top(self, v, top, label):
        if v.is_zero():
            return
        if v.homogeneous_degree() != top:
            raise HomogeneityError(
                f"integrand on {label} must be homogeneous of top degree {top}")


@lru_cache(maxsize=None)
def geometry(n, h_relation_sign=1):
    """Shared immutable Geometry instances."""
    return Geometry(n, h_relation_sign)
