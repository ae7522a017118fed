"""Groebner bases and the ideal-theoretic services built on them."""

from .basis import GroebnerBasis, groebner_basis, ideal_contains, ideal_equals, normal_form
from .buchberger import get_default_budget, set_default_budget
from .hilbert import DimDegree, codimension, dimension_and_degree, krull_dimension
from .ideals import eliminate, quotient, saturate
from .sturm import isolate_real_roots, sturm_count

__all__ = [
    "DimDegree",
    "GroebnerBasis",
    "codimension",
    "dimension_and_degree",
    "eliminate",
    "get_default_budget",
    "groebner_basis",
    "ideal_contains",
    "ideal_equals",
    "isolate_real_roots",
    "krull_dimension",
    "normal_form",
    "quotient",
    "saturate",
    "set_default_budget",
    "sturm_count",
]
