"""Exact counts of isomorphism classes of finite groups by order.

Closed-form counting for every order with at most four prime factors
(and prime powers up to the fifth power), backed by two independent
brute-force oracles: subgroup-class enumeration in GL(d,p) and
exhaustive Cayley-table search for tiny orders.
"""

from .arith import (
    Factorization,
    OrderShape,
    Shape,
    abelian_group_count,
    classify_shape,
    divisibility_indicator,
    factorize,
    indicator_gcd_identity,
    is_prime,
    partition_count,
)
from .cayley_oracle import CayleyTable, canonical_tables, enumerate_groups
from .errors import PrimeOverflowError, ResourceLimitError, UnsupportedOrderError
from .formulas import (
    GroupCount,
    count_groups,
    count_p2q,
    count_p2q2,
    count_p2qr,
    count_p3q,
    count_prime_power,
    count_squarefree,
)
from .gl_oracle import (
    MatrixGroup,
    SubgroupClassCount,
    count_norm_twist,
    count_subgroup_classes,
    enumerate_gl,
    gl_order,
    irreducible_cyclic_check,
    predicted_subgroup_classes,
)
from .verify import (
    SUITE_NAMES,
    VerificationCase,
    VerificationReport,
    run_all,
    run_suite,
)

__version__ = "0.1.0"

__all__ = [
    "CayleyTable",
    "Factorization",
    "GroupCount",
    "MatrixGroup",
    "OrderShape",
    "PrimeOverflowError",
    "ResourceLimitError",
    "Shape",
    "SubgroupClassCount",
    "SUITE_NAMES",
    "UnsupportedOrderError",
    "VerificationCase",
    "VerificationReport",
    "abelian_group_count",
    "canonical_tables",
    "classify_shape",
    "count_groups",
    "count_norm_twist",
    "count_p2q",
    "count_p2q2",
    "count_p2qr",
    "count_p3q",
    "count_prime_power",
    "count_squarefree",
    "count_subgroup_classes",
    "divisibility_indicator",
    "enumerate_gl",
    "enumerate_groups",
    "factorize",
    "gl_order",
    "indicator_gcd_identity",
    "irreducible_cyclic_check",
    "is_prime",
    "partition_count",
    "predicted_subgroup_classes",
    "run_all",
    "run_suite",
    "__version__",
]
