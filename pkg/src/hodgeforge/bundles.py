"""Virtual bundles carried by their truncated Chern character.

A bundle is just its Chern character; the rank is the degree-0 component and
may be a formal (symbolic) class, which is what the slope computations need.
Adams operations are diagonal on the Chern character, so symmetric and
exterior powers come cheaply from the generating functions

    sigma_t = exp(sum_k psi^k t^k / k),      lambda_t = exp(sum_k (-1)^{k-1} psi^k t^k / k),

extracted coefficient by coefficient through the equivalent Newton-style
recursions.  The Todd class is computed from the universal series
x/(1 - e^{-x}) via its logarithm, which makes it additive-to-multiplicative
for free and defines it on arbitrary virtual differences.
"""

from fractions import Fraction
from functools import lru_cache
from math import factorial

from .errors import HomogeneityError
from .ring import GradedClass


class VirtualBundle:
    """A virtual bundle, represented by its Chern character."""

    __slots__ = ("ch",)

    def __init__(self, ch):
        self.ch = ch

    @property
    def ctx(self):
        return self.ch.ctx

    @property
    def rank(self):
        """Degree-0 part of the Chern character (may be symbolic)."""
        return self.ch.graded_component(0)

    def rank_int(self):
        part = self.rank
        if part.is_zero():
            return 0
        items = list(part.items())
        if len(items) != 1 or any(items[0][0]):
            raise ValueError("rank is not a plain number")
        q = items[0][1]
        if q.denominator != 1:
            raise ValueError("rank is not an integer")
        return int(q)

    def __eq__(self, other):
        return isinstance(other, VirtualBundle) and self.ch == other.ch

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = trivial(self.ctx, other)
        if not isinstance(other, VirtualBundle):
            return NotImplemented
        return VirtualBundle(self.ch + other.ch)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = trivial(self.ctx, other)
        if not isinstance(other, VirtualBundle):
            return NotImplemented
        return VirtualBundle(self.ch - other.ch)

    def __neg__(self):
        return VirtualBundle(-self.ch)

    def __repr__(self):
        return f"VirtualBundle(ch={self.ch.canonical()})"


def exp_class(x):
    """exp of a class with no degree-0 part, truncated to the ambient bound."""
    if not x.graded_component(0).is_zero():
        raise HomogeneityError("exp needs a class without degree-0 part")
    ctx = x.ctx
    out = ctx.one()
    power = ctx.one()
    for j in range(1, ctx.bound + 1):
        power = power * x
        if power.is_zero():
            break
        out = out + power * Fraction(1, factorial(j))
    return out


def trivial(ctx, rank=1):
    return VirtualBundle(ctx.scalar(rank))


def line_bundle(c1):
    """Line bundle with the given first Chern class; ch = exp(c1)."""
    if not c1.is_zero() and c1.homogeneous_degree() != 1:
        raise HomogeneityError("c1 of a line bundle must be homogeneous of degree 1")
    return VirtualBundle(exp_class(c1))


def dual(vb):
    """Negate the odd-degree components of the Chern character."""
    degree = vb.ctx.table.degree
    terms = {m: (-c if degree(m) % 2 else c) for m, c in vb.ch.items()}
    return VirtualBundle(GradedClass(vb.ctx, terms, clean=True))


def tensor(a, b):
    return VirtualBundle(a.ch * b.ch)


def twist(vb, c1):
    """Tensor with the line bundle of first Chern class c1."""
    return tensor(vb, line_bundle(c1))


def first_chern(vb):
    return vb.ch.graded_component(1)


def adams(vb, k):
    """psi^k: multiply the degree-d Chern character component by k^d."""
    k = int(k)
    if k < 0:
        raise ValueError("Adams operations need k >= 0")
    degree = vb.ctx.table.degree
    terms = {m: c * k ** degree(m) for m, c in vb.ch.items()}
    return VirtualBundle(GradedClass(vb.ctx, terms, clean=True))


def _power_chain(vb, top, signed):
    # t*s_t = sum_k (+-)psi^k s_{t-k}: the coefficient recursion of sigma_t
    # (signed=False) and lambda_t (signed=True).
    ctx = vb.ctx
    psi = [None] + [adams(vb, k).ch for k in range(1, top + 1)]
    chain = [ctx.one()]
    for j in range(1, top + 1):
        acc = ctx.zero()
        for k in range(1, j + 1):
            term = psi[k] * chain[j - k]
            if signed and k % 2 == 0:
                acc = acc - term
            else:
                acc = acc + term
        chain.append(acc * Fraction(1, j))
    return chain


def sym_power(vb, t):
    t = int(t)
    if t < 0:
        raise ValueError("symmetric powers need t >= 0")
    return VirtualBundle(_power_chain(vb, t, signed=False)[t])


def ext_power(vb, j):
    j = int(j)
    if j < 0:
        raise ValueError("exterior powers need j >= 0")
    return VirtualBundle(_power_chain(vb, j, signed=True)[j])


@lru_cache(maxsize=None)
def todd_log_coefficients(bound):
    """Coefficients l_d of log(x/(1-e^{-x})) = sum_d l_d x^d, d <= bound."""
    # (1 - e^{-x})/x = sum_k (-1)^k x^k/(k+1)!
    e = [Fraction((-1) ** k, factorial(k + 1)) for k in range(bound + 1)]
    q = [Fraction(1)] + [Fraction(0)] * bound
    for d in range(1, bound + 1):
        q[d] = -sum(e[k] * q[d - k] for k in range(1, d + 1))
    l = [Fraction(0)] * (bound + 1)
    for d in range(1, bound + 1):
        s = d * q[d] - sum(k * l[k] * q[d - k] for k in range(1, d))
        l[d] = s / d
    return tuple(l)


def todd(vb):
    """Todd class via the universal series; multiplicative on sums, and the
    quotient of Todd classes on virtual differences."""
    ctx = vb.ctx
    coeffs = todd_log_coefficients(ctx.bound)
    log_td = ctx.zero()
    for d in range(1, ctx.bound + 1):
        chd = vb.ch.graded_component(d)
        if chd.is_zero():
            continue
        log_td = log_td + chd * (coeffs[d] * factorial(d))
    return exp_class(log_td)


def chern_total(vb):
    """Total Chern class from the Chern character by the Newton identities."""
    ctx = vb.ctx
    powersums = [None]
    for d in range(1, ctx.bound + 1):
        powersums.append(vb.ch.graded_component(d) * factorial(d))
    elementary = [ctx.one()]
    for d in range(1, ctx.bound + 1):
        acc = ctx.zero()
        for i in range(1, d + 1):
            term = elementary[d - i] * powersums[i]
            acc = acc + term if i % 2 == 1 else acc - term
        elementary.append(acc * Fraction(1, d))
    total = ctx.zero()
    for e in elementary:
        total = total + e
    return total


def from_chern(ctx, chern_classes, rank):
    """Build a bundle from [c_1, c_2, ...] and its rank (Newton inversion)."""
    cs = [ctx.one()]
    for j, c in enumerate(chern_classes, start=1):
        if isinstance(c, (int, Fraction)):
            if c != 0:
                raise HomogeneityError(f"c_{j} must be a class of degree {j}")
            c = ctx.zero()
        if not c.is_zero() and c.homogeneous_degree() != j:
            raise HomogeneityError(f"c_{j} must be homogeneous of degree {j}")
        cs.append(c)
    while len(cs) <= ctx.bound:
        cs.append(ctx.zero())
    # p_d = (-1)^{d-1} d e_d + sum_{i<d} (-1)^{d-1-i} e_{d-i} p_i
    ch = ctx.scalar(rank) if isinstance(rank, (int, Fraction)) else rank
    powersums = [None]
    for d in range(1, ctx.bound + 1):
        acc = cs[d] * (d if (d - 1) % 2 == 0 else -d)
        for i in range(1, d):
            term = cs[d - i] * powersums[i]
            acc = acc + term if (d - 1 - i) % 2 == 0 else acc - term
        powersums.append(acc)
        ch = ch + acc * Fraction(1, factorial(d))
    return VirtualBundle(ch)
