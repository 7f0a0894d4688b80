"""Exact finite models of maximal chains on the Cantor set, the symbolic
systems built from them, and a dual Ramsey search engine with certificates."""

from .cantor import (
    ClopenSet,
    ContractError,
    OrderedPartition,
    Permutation,
    PrefixMap,
    UnorderedPartition,
    apply_clopen,
    apply_partition,
    canonicalize,
    compose,
    homogeneity_witness,
    invert,
    join,
    stabilizes,
)
from .chains import (
    ChainApprox,
    act_chain,
    entry_points,
    hull_max,
    hull_min,
    in_neighborhood,
    induced_order,
    project_chain,
    refine_chain,
    root,
    theta,
)
from .dual_ramsey import (
    check_dr_certificate,
    dr_number,
    extract_table,
    factor_coloring,
    find_monochromatic,
    search_bad_coloring,
    verify_dr,
)
from .dynamics import (
    check_witness,
    extreme_proximality_witness,
    incomparability_witness,
    phi_minimality_witness,
    point_cover_witness,
    proximality_witness,
)
from .partitions import (
    Coloring,
    SetPartition,
    amalgamate,
    coarsenings,
    enumerate_partitions,
    is_refinement,
    naturally_order,
)
from .symbolic import SymbolConfig, Table, TildeConfig, act_omega, bullet_eval, phi_T, rho, tilde

__version__ = "0.1.0"
