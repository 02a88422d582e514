"""Sparse graded-commutative polynomial arithmetic with exact rational coefficients.

Values are elements of a free commutative ring on named generators, each
generator carrying a complex degree.  A context truncates everything above a
fixed top degree (the complex dimension of the ambient space) and may carry a
single structured rewrite rule replacing a power of one distinguished
generator by a lower-order polynomial; that is enough for the projective
bundle relation and deliberately nothing more.

Coefficients are ``fractions.Fraction`` throughout: always in lowest terms,
positive denominators, arbitrary precision.  Nothing in this module touches
floating point.

Degree-0 generators are allowed and act as formal parameters (the polynomial
variable N, symbolic ranks and multipliers); they do not contribute to the
grading and are never truncated away.
"""

from fractions import Fraction

from .errors import ContextMismatchError, HomogeneityError

Scalar = Fraction


class GeneratorTable:
    """Ordered list of (name, complex degree) pairs. Immutable."""

    __slots__ = ("entries", "names", "degrees", "_index")

    def __init__(self, entries):
        entries = tuple((str(name), int(deg)) for name, deg in entries)
        names = tuple(name for name, _ in entries)
        if len(set(names)) != len(names):
            raise ValueError("generator names must be unique")
        if any(deg < 0 for _, deg in entries):
            raise ValueError("generator degrees must be nonnegative")
        self.entries = entries
        self.names = names
        self.degrees = tuple(deg for _, deg in entries)
        self._index = {name: i for i, (name, _) in enumerate(entries)}

    def __len__(self):
        return len(self.entries)

    def __eq__(self, other):
        return isinstance(other, GeneratorTable) and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        return f"GeneratorTable({list(self.entries)!r})"

    def index(self, name):
        try:
            return self._index[name]
        except KeyError:
            raise ValueError(f"unknown generator {name!r}") from None

    def __contains__(self, name):
        return name in self._index

    def degree(self, mono):
        return sum(e * d for e, d in zip(mono, self.degrees) if e)


def monomial_string(table, mono):
    """Render an exponent vector as ``a*b^2`` in table order ('' for the unit)."""
    factors = []
    for name, e in zip(table.names, mono):
        if e == 1:
            factors.append(name)
        elif e > 1:
            factors.append(f"{name}^{e}")
    return "*".join(factors)


def format_terms(pairs):
    """Render pre-sorted (factor string, coefficient) pairs as a canonical sum.

    An empty factor string stands for the unit monomial.  Coefficient 1 is
    suppressed in front of a nonempty factor; signs are folded into the
    separators: ``-1/12*c2*h^2``, ``c2^2 - c4``, ``1 - h^2``.
    """
    if not pairs:
        return "0"
    parts = []
    for body, coeff in pairs:
        mag = abs(coeff)
        if body:
            txt = body if mag == 1 else f"{mag}*{body}"
        else:
            txt = str(mag)
        if not parts:
            parts.append(("-" if coeff < 0 else "") + txt)
        else:
            parts.append((" - " if coeff < 0 else " + ") + txt)
    return "".join(parts)


class Context:
    """Ambient graded ring: generator table, truncation bound, optional rewrite.

    ``rewrite`` is ``(name, power, terms)``: every occurrence of
    ``name**power`` is replaced by the class ``terms`` (a monomial->coefficient
    map of the same complex degree).  Multiplication applies both the
    truncation and the rewrite eagerly, so classes produced by arithmetic are
    always in normal form.

    ``degree_caps`` is a tuple of ``(generator indices, cap)`` pairs: a
    monomial whose total degree over one of the index blocks exceeds the cap
    is zero.  This models pullbacks from lower-dimensional factors (a class
    pulled back from a 2n-fold dies above degree 2n no matter where it
    lives), and each cap generates an ideal, so eager truncation stays exact.
    """

    __slots__ = ("label", "table", "bound", "rew_index", "rew_power",
                 "rew_terms", "_rew_key", "degree_caps")

    def __init__(self, label, table, bound, rewrite=None, degree_caps=()):
        self.label = str(label)
        self.table = table
        self.bound = int(bound)
        self.degree_caps = tuple((tuple(idxs), int(cap))
                                 for idxs, cap in degree_caps)
        if rewrite is None:
            self.rew_index = None
            self.rew_power = 0
            self.rew_terms = None
            self._rew_key = None
        else:
            name, power, terms = rewrite
            idx = table.index(name)
            power = int(power)
            target = power * table.degrees[idx]
            terms = {tuple(m): Fraction(c) for m, c in terms.items() if c}
            for m in terms:
                if table.degree(m) != target:
                    raise ValueError("rewrite rule must be degree-homogeneous")
            self.rew_index = idx
            self.rew_power = power
            self.rew_terms = terms
            self._rew_key = (idx, power, frozenset(terms.items()))

    def admits(self, mono):
        """Is the monomial within the truncation bound and every cap?"""
        degrees = self.table.degrees
        if sum(e * d for e, d in zip(mono, degrees) if e) > self.bound:
            return False
        for idxs, cap in self.degree_caps:
            if sum(mono[i] * degrees[i] for i in idxs) > cap:
                return False
        return True

    def __eq__(self, other):
        return (isinstance(other, Context)
                and self.label == other.label
                and self.table == other.table
                and self.bound == other.bound
                and self._rew_key == other._rew_key
                and self.degree_caps == other.degree_caps)

    def __hash__(self):
        return hash((self.label, self.table, self.bound, self._rew_key,
                     self.degree_caps))

    def __repr__(self):
        return f"<Context {self.label} bound={self.bound}>"

    # -- constructors for elements ------------------------------------
    def unit_mono(self):
        return (0,) * len(self.table)

    def zero(self):
        return GradedClass(self, {}, clean=True)

    def scalar(self, q):
        q = Fraction(q)
        if not q:
            return self.zero()
        return GradedClass(self, {self.unit_mono(): q}, clean=True)

    def one(self):
        return self.scalar(1)

    def gen(self, name, power=1):
        mono = [0] * len(self.table)
        mono[self.table.index(name)] = int(power)
        return GradedClass(self, {tuple(mono): Fraction(1)})


def _reduce(ctx, terms):
    """Rewrite until the distinguished generator's exponent is below the
    cutoff; rewriting can push a monomial over a degree cap, in which case it
    is dropped (the caps are ideals)."""
    idx = ctx.rew_index
    power = ctx.rew_power
    rule = ctx.rew_terms
    out = {}
    stack = list(terms.items())
    while stack:
        mono, coeff = stack.pop()
        e = mono[idx]
        if e < power:
            acc = out.get(mono)
            acc = coeff if acc is None else acc + coeff
            if acc:
                out[mono] = acc
            elif mono in out:
                del out[mono]
            continue
        base = list(mono)
        base[idx] = e - power
        for rmono, rcoeff in rule.items():
            nm = tuple(x + y for x, y in zip(base, rmono))
            if ctx.admits(nm):
                stack.append((nm, coeff * rcoeff))
    return out


class GradedClass:
    """Immutable sparse element of a truncated graded ring."""

    __slots__ = ("ctx", "_terms")

    def __init__(self, ctx, terms, clean=False):
        if not clean:
            cleaned = {}
            for m, c in terms.items():
                c = Fraction(c)
                m = tuple(m)
                if c and ctx.admits(m):
                    cleaned[m] = c
            terms = cleaned
        self.ctx = ctx
        self._terms = terms

    # -- inspection ----------------------------------------------------
    def is_zero(self):
        return not self._terms

    def items(self):
        return self._terms.items()

    def __len__(self):
        return len(self._terms)

    def degrees_present(self):
        deg = self.ctx.table.degree
        return sorted({deg(m) for m in self._terms})

    def coefficient(self, mono):
        return self._terms.get(tuple(mono), Fraction(0))

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ctx.scalar(other)
        if not isinstance(other, GradedClass):
            return NotImplemented
        return self.ctx == other.ctx and self._terms == other._terms

    def _require_same(self, other):
        if self.ctx != other.ctx:
            raise ContextMismatchError(
                f"classes live in different contexts: "
                f"{self.ctx.label} vs {other.ctx.label}")

    # -- ring operations -------------------------------------------------
    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ctx.scalar(other)
        if not isinstance(other, GradedClass):
            return NotImplemented
        self._require_same(other)
        out = dict(self._terms)
        for m, c in other._terms.items():
            acc = out.get(m)
            acc = c if acc is None else acc + c
            if acc:
                out[m] = acc
            elif m in out:
                del out[m]
        return GradedClass(self.ctx, out, clean=True)

    __radd__ = __add__

    def __neg__(self):
        return GradedClass(self.ctx, {m: -c for m, c in self._terms.items()},
                           clean=True)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ctx.scalar(other)
        if not isinstance(other, GradedClass):
            return NotImplemented
        return self.__add__(-other)

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            if not q:
                return self.ctx.zero()
            return GradedClass(self.ctx,
                               {m: c * q for m, c in self._terms.items()},
                               clean=True)
        if not isinstance(other, GradedClass):
            return NotImplemented
        self._require_same(other)
        ctx = self.ctx
        degree = ctx.table.degree
        bound = ctx.bound
        caps = ctx.degree_caps
        rights = [(m, c, degree(m)) for m, c in other._terms.items()]
        out = {}
        for ma, ca in self._terms.items():
            da = degree(ma)
            for mb, cb, db in rights:
                if da + db > bound:
                    continue
                m = tuple(x + y for x, y in zip(ma, mb))
                if caps and not ctx.admits(m):
                    continue
                acc = out.get(m)
                prod = ca * cb
                acc = prod if acc is None else acc + prod
                if acc:
                    out[m] = acc
                elif m in out:
                    del out[m]
        if ctx.rew_terms is not None:
            out = _reduce(ctx, out)
        return GradedClass(ctx, out, clean=True)

    __rmul__ = __mul__

    def __truediv__(self, q):
        return self * (Fraction(1) / Fraction(q))

    def __pow__(self, k):
        k = int(k)
        if k < 0:
            raise ValueError("negative powers are not defined")
        result = self.ctx.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # -- structural operations -----------------------------------------
    def normal_form(self):
        """Apply the context's rewrite rule everywhere; idempotent."""
        if self.ctx.rew_terms is None:
            return self
        return GradedClass(self.ctx, _reduce(self.ctx, dict(self._terms)),
                           clean=True)

    def graded_component(self, d):
        """Sum of the terms of complex degree exactly d (degree-0 generators
        do not count towards the grading)."""
        d = int(d)
        if d < 0 or d > self.ctx.bound:
            raise ValueError(f"degree {d} outside [0, {self.ctx.bound}]")
        degree = self.ctx.table.degree
        return GradedClass(self.ctx,
                           {m: c for m, c in self._terms.items()
                            if degree(m) == d},
                           clean=True)

    def coefficient_of(self, name, j):
        """The class multiplying ``name**j`` (the named generator removed)."""
        idx = self.ctx.table.index(name)
        j = int(j)
        out = {}
        for m, c in self._terms.items():
            if m[idx] == j:
                stripped = list(m)
                stripped[idx] = 0
                out[tuple(stripped)] = c
        return GradedClass(self.ctx, out, clean=True)

    def homogeneous_degree(self):
        """The common complex degree of all terms, or None for 0; raises when mixed."""
        degs = self.degrees_present()
        if not degs:
            return None
        if len(degs) > 1:
            raise HomogeneityError(f"class has mixed degrees {degs}")
        return degs[0]

    def with_context(self, ctx):
        """Reinterpret in a context over the same table (re-truncate, re-reduce)."""
        if ctx == self.ctx:
            return self
        if ctx.table != self.ctx.table:
            raise ContextMismatchError(
                f"cannot move a class from {self.ctx.label} to {ctx.label}")
        return GradedClass(ctx, dict(self._terms)).normal_form()

    # -- serialization -----------------------------------------------------
    def canonical(self):
        """Canonical text form: terms sorted by (degree, monomial), exact
        coefficients; this string is the comparison and golden-file format."""
        if not self._terms:
            return "0"
        table = self.ctx.table
        degree = table.degree
        ordered = sorted(self._terms.items(),
                         key=lambda mc: (degree(mc[0]),
                                         tuple(-e for e in mc[0])))
        return format_terms([(monomial_string(table, m), c)
                             for m, c in ordered])

    def __str__(self):
        return self.canonical()

    def __repr__(self):
        return f"GradedClass[{self.ctx.label}]({self.canonical()})"
