"""Burning sequences for trees.

Closed forms for perfect and complete binary trees, diametral-path peeling
for full binary trees that are not perfect, a pendant-augmentation wrapper
for arbitrary trees, and an exact branch-and-bound oracle to check them.
"""

from .bounds import (
    BoundResult,
    audit,
    burn_complete,
    burn_fbtnp_height,
    burn_fbtnp_improved,
    burn_fbtnp_sqrt_n,
    burn_general_tree,
    burn_perfect,
    closed_form,
)
from .burning import (
    BurningSequence,
    BurnTrace,
    is_valid_burning,
    is_valid_cover,
    pad_sequence,
    repair_sequence,
    simulate,
)
from .errors import *  # noqa: F401,F403
from .exact import Budget, OracleResult, burning_number_exact, decide_burnable
from .generators import (
    GenSpec,
    augment_degree2,
    complete_binary,
    generate,
    path,
    perfect_binary,
    prop1_maximal,
    random_3k_ary,
    random_fbtnp,
    random_full,
    random_tree,
    star,
)
from .tree import (
    DiametralPath,
    RootedView,
    Tree,
    build_tree,
    classify,
    closed_neighborhood,
    diametral_path,
    distance,
    rooted,
    spanning_tree,
)

__version__ = "0.1.0"
