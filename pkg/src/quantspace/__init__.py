"""Exact quantity spaces: commensurability-checked arithmetic over unit systems."""

from .analysis import HomogeneityReport, check_homogeneous, convert, dimensionless_products
from .basis import (
    BasisChange,
    UnitSystem,
    define_derived,
    define_system,
    int_det,
    load_system,
    propose_basis_change,
    rebase,
)
from .core import (
    Dimension,
    Quantity,
    QuantitySpace,
    ScalarMonoid,
    add,
    canonical_pivot,
    commensurable,
    dim_inv,
    dim_mul,
    dimension,
    invert,
    is_invertible,
    measure,
    mul,
    neg,
    one,
    pow,
    scale,
    sub,
    zero_of,
)
from .errors import QuantityError
from .expr import evaluate, format_expr, format_quantity, parse
from .scalar import Scalar, ScalarSystem, s_add, s_inv, s_mul, s_neg

__version__ = "0.1.0"
