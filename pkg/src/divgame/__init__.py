"""Exact toolkit for TU-games with coalition structures and diversity quotas.

Dense bitmask game tables over exact rationals, dividend transforms, Shapley
and Owen style allocation rules (including the diversity-restricted Owen
rule), mechanical axiom checking with replayable witnesses, seeded random
game generation, and a JSON document format with a CLI front end.
"""

from .axioms import (
    AXIOM_IDS,
    AxiomInstance,
    CheckReport,
    Witness,
    canonical_axiom,
    check_E,
    check_ED,
    check_FD,
    check_FwC,
    check_IBCOPPD,
    check_IBCOPPD_minus,
    check_INDC,
    check_ND,
    check_NPOPD,
    replay,
    run_instance,
    sweep,
)
from .cli import emit_game, main, parse_game, parse_rational
from .game_core import (
    MAX_PLAYERS,
    Coalition,
    CoalitionStructure,
    DiversityGame,
    Game,
    add,
    add_outside_player,
    are_symmetric,
    default_names,
    describe_coalition,
    diverse_coalitions,
    full_mask,
    induced_structure,
    is_diverse,
    is_diverse_game,
    is_i_out_diverse,
    is_null,
    is_out,
    make_diversity_game,
    make_game,
    mask_of,
    members,
    remove_player,
    restrict_to_diverse,
    scale,
    singleton,
    sub,
    subgame,
    unanimity,
    zero_game,
)
from .genfix import (
    FIXTURE_NAMES,
    Counterexample1,
    Counterexample2,
    GeneratorSpec,
    fixture_counterexample1,
    fixture_counterexample2,
    fixture_game,
    fixture_veto_demo,
    perturb_nondiverse,
    random_game,
    random_game_like,
)
from .transform import (
    DividendTable,
    SupportInfo,
    dividends,
    support,
    swap_support_transform,
    synthesize,
)
from .values import (
    VALUE_NAMES,
    Allocation,
    ValueFunctional,
    block_equal_division,
    diversity_owen,
    equal_division,
    owen,
    owen_permutation_oracle,
    shapley,
    shapley_permutation_oracle,
    value_by_name,
)

__version__ = "0.1.0"
