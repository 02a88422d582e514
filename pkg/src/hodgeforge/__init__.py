"""hodgeforge: exact symbolic verification of characteristic-class identities
on the projectivized tangent bundle and the diagonal blow-up of the square of
a holomorphic-symplectic manifold, plus a type-C character calculator."""

from .ring import Context, GeneratorTable, GradedClass, Scalar
from .bundles import (VirtualBundle, adams, chern_total, dual, ext_power,
                      first_chern, from_chern, line_bundle, sym_power,
                      tensor, todd, trivial, twist)
from .spaces import FormalScalar, Geometry, YClass, geometry
from .characters import (contains, decompose, ext_character, standard_weights,
                         sym_character, weyl_dim)
from .verify import Check, CheckReport, REGISTRY, checks_for, run_all, run_check
from . import errors

__all__ = [
    "Context", "GeneratorTable", "GradedClass", "Scalar",
    "VirtualBundle", "adams", "chern_total", "dual", "ext_power",
    "first_chern", "from_chern", "line_bundle", "sym_power", "tensor",
    "todd", "trivial", "twist",
    "FormalScalar", "Geometry", "YClass", "geometry",
    "contains", "decompose", "ext_character", "standard_weights",
    "sym_character", "weyl_dim",
    "Check", "CheckReport", "REGISTRY", "checks_for", "run_all", "run_check",
    "errors",
]

__version__ = "0.1.0"
