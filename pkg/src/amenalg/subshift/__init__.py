from .analysis import (
    EntropyReport,
    ProfileEntry,
    ProlongationProfile,
    entropy_estimate,
    extension_count,
    find_unique_extension_factor,
    is_primitive,
    oriented,
    prolongation_profile,
    state_levels,
    unique_extension,
    uniform_recurrence_radius,
)
from .asymmetric import AsymmetricOracle
from .generator import GeneratorOracle
from .indexed_run import IndexedRunOracle
from .oracle import LanguageOracle, ReversedOracle
from .sft import SFTOracle
from .spec import (
    BUILTINS,
    BuiltinSpec,
    GeneratorSpec,
    SFTSpec,
    SubstitutionSpec,
    load_spec,
    make_oracle,
    reverse_spec,
    spec_from_dict,
    spec_to_dict,
)
from .substitution import SubstitutionOracle


def builtin(name, **params):
    """Oracle for a named builtin, e.g. ``builtin("indexed-run", base=4)``."""
    return make_oracle(BuiltinSpec(name, base=params.get("base"), size=params.get("size"),
                                   mirrored=params.get("mirrored", False)))
