"""Shared helpers for randomized tests."""

from fractions import Fraction


def random_class(ctx, rng, names=None, max_terms=3, max_factors=3,
                 coeff_range=6, denominators=(1, 2, 3)):
    """A small random class: a few products of generators with exact
    rational coefficients."""
    names = list(names) if names is not None else list(ctx.table.names)
    out = ctx.zero()
    for _ in range(rng.randint(0, max_terms)):
        term = ctx.one()
        for _ in range(rng.randint(1, max_factors)):
            term = term * ctx.gen(rng.choice(names))
        q = Fraction(rng.randint(-coeff_range, coeff_range),
                     rng.choice(denominators))
        out = out + term * q
    return out
