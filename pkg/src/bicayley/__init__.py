"""Bi-Cayley digraphs over finite groups: construction, exact connectivity,
and algebraic versus exhaustive super-arc-connectivity checks."""

from .groups import (
    ElementSet,
    FiniteGroup,
    GroupError,
    Subgroup,
    all_subgroups,
    generated_subgroup,
    inverse,
    inverse_set,
    is_subgroup,
    left_cosets,
    make_group,
    multiply,
    parse_group,
    product_set,
)
from .digraph import BiCayleySpec, Digraph, VertexLabel, build_bicayley
from .connectivity import (
    ConnectivityReport,
    Fragment,
    analyze,
    arc_connectivity,
    is_super_lambda_bruteforce,
    lambda_oracle,
    vertex_connectivity,
)
from .criteria import (
    SuperLambdaWitness,
    applicability,
    is_super_lambda_algebraic,
    strong_connectivity_criterion,
    theorem39_find_witness,
    validate_witness,
)

__version__ = "0.1.0"
