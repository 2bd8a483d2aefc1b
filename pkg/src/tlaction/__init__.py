"""Computable translation-like actions of the integers on finitely generated groups.

The package constructs, for a finitely generated infinite group with
decidable word problem, a computable free action of the integers that
moves every element a bounded distance (at most 3) in the word metric —
together with the graph-theoretic machinery behind it (constrained
Hamiltonian paths on finite patches, decision procedures for one- and
two-ended graphs, normal forms for HNN extensions and amalgams) and the
pattern subshifts that such an action induces.
"""

from .action import ActionEngine, engine_for
from .decidability import EndsDecider
from .errors import (
    DEFAULT_FUEL,
    FUEL_ENV_VAR,
    ConfigError,
    EndsDeclarationError,
    Fuel,
    FuelExhausted,
    InvariantError,
    default_fuel,
)
from .extenders import ExtensibleState, extend_to_visit, make_bi_extensible
from .graph import (
    AdjacencyGraph,
    CayleyGraph,
    FinitePatch,
    ball,
    cayley_graph,
    cayley_oracle,
    components,
    distance,
    induced_patch,
    patch_to_dot,
    patch_to_json,
    shortest_path,
)
from .groups import (
    EPSILON,
    EndsCertificate,
    GroupOracle,
    Numbering,
    builtin_group,
    canonical_numbering,
    concat_words,
    group_from_config,
    inverse_word,
    letter,
    power_word,
    word_from_str,
    word_to_str,
)
from .paths import (
    ThreePath,
    concat_paths,
    extend_path,
    invert_path,
    jump_sizes,
    karaganis_constrained,
    karaganis_path,
    shift_path,
    singleton_path,
)
from .stallings import (
    AmalgamData,
    HnnData,
    NormalForm,
    ZSubgroupInstance,
    amalgam_normal_form,
    coset_representatives,
    cyclic_group,
    free_f2_instance,
    hnn_normal_form,
    instance_for,
    z2_z3_instance,
    z2hnn_instance,
    z_subgroup_membership,
)
from .subshift import (
    FALSE_SO_FAR,
    PERIOD3_ALPHABET,
    ArrowLetter,
    PatternCoding,
    PatternPatch,
    Segment,
    action_patch,
    arrow_projection,
    coding_to_pattern,
    orbit_positions,
    pattern_patch_from_json,
    pattern_patch_to_json,
    period3_enumerator,
    period3_forbidden_words,
    period3_letter,
    period3_segment,
    phi_map,
    psi_map,
    recenter,
    star_walk,
    xj_forbidden,
    yxj_forbidden,
)
from .verify import SUITES, report_to_json, run_suite

__version__ = "0.1.0"

__all__ = [
    "ActionEngine",
    "AdjacencyGraph",
    "AmalgamData",
    "ArrowLetter",
    "CayleyGraph",
    "ConfigError",
    "DEFAULT_FUEL",
    "EPSILON",
    "EndsCertificate",
    "EndsDecider",
    "EndsDeclarationError",
    "ExtensibleState",
    "FALSE_SO_FAR",
    "FUEL_ENV_VAR",
    "FinitePatch",
    "Fuel",
    "FuelExhausted",
    "GroupOracle",
    "HnnData",
    "InvariantError",
    "NormalForm",
    "Numbering",
    "PERIOD3_ALPHABET",
    "PatternCoding",
    "PatternPatch",
    "SUITES",
    "Segment",
    "ThreePath",
    "ZSubgroupInstance",
    "action_patch",
    "amalgam_normal_form",
    "arrow_projection",
    "ball",
    "builtin_group",
    "canonical_numbering",
    "cayley_graph",
    "cayley_oracle",
    "coding_to_pattern",
    "components",
    "concat_paths",
    "concat_words",
    "coset_representatives",
    "cyclic_group",
    "default_fuel",
    "distance",
    "engine_for",
    "extend_path",
    "extend_to_visit",
    "free_f2_instance",
    "group_from_config",
    "hnn_normal_form",
    "induced_patch",
    "instance_for",
    "inverse_word",
    "invert_path",
    "jump_sizes",
    "karaganis_constrained",
    "karaganis_path",
    "letter",
    "make_bi_extensible",
    "orbit_positions",
    "patch_to_dot",
    "patch_to_json",
    "pattern_patch_from_json",
    "pattern_patch_to_json",
    "period3_enumerator",
    "period3_forbidden_words",
    "period3_letter",
    "period3_segment",
    "phi_map",
    "power_word",
    "psi_map",
    "recenter",
    "report_to_json",
    "run_suite",
    "shift_path",
    "shortest_path",
    "singleton_path",
    "star_walk",
    "word_from_str",
    "word_to_str",
    "xj_forbidden",
    "yxj_forbidden",
    "z2_z3_instance",
    "z2hnn_instance",
    "z_subgroup_membership",
]
