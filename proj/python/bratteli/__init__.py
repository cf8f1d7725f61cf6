"""Stationary ordered Bratteli diagrams: successor dynamics, exact truncated
operator models, the AF tower of the partial crossed product, and diagram
equivalence certificates. Thin python layer over the C++ core."""

from ._core import (
    BlockInfo,
    CrossedElement,
    Diagram,
    LevelFunction,
    a_n_basis,
    af_tower,
    block_decomposition,
    check_all,
    check_certificate,
    classify,
    cross_adjoint,
    cross_multiply,
    crossed_indicator,
    crossed_unit,
    diagram_from_substitution,
    domain_bound,
    enumerate_paths,
    find_equivalence,
    in_domain,
    indicator,
    is_path,
    iterate,
    lf_add,
    multiply,
    orbit_chain,
    parse_diagram,
    parse_substitution,
    phi_times_pi,
    refine,
    unity,
    vershik,
    vershik_inv,
)

__version__ = "0.1.0"

__all__ = [
    "BlockInfo",
    "CrossedElement",
    "Diagram",
    "LevelFunction",
    "a_n_basis",
    "af_tower",
    "block_decomposition",
    "check_all",
    "check_certificate",
    "classify",
    "cross_adjoint",
    "cross_multiply",
    "crossed_indicator",
    "crossed_unit",
    "diagram_from_substitution",
    "domain_bound",
    "enumerate_paths",
    "find_equivalence",
    "in_domain",
    "indicator",
    "is_path",
    "iterate",
    "lf_add",
    "multiply",
    "orbit_chain",
    "parse_diagram",
    "parse_substitution",
    "phi_times_pi",
    "refine",
    "unity",
    "vershik",
    "vershik_inv",
    "__version__",
]
