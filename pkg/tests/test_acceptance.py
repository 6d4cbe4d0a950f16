"""Acceptance suite: one test per exit criterion, exact arithmetic throughout.

Every criterion prints its own pass/fail line on the real terminal stream so
the summary survives pytest's output capture; `pytest tests/test_acceptance.py
-v` additionally shows one line per criterion through the test names.
"""

import functools
import itertools
import random
import sys
import time
from fractions import Fraction as F

from divgame.axioms import AXIOM_IDS, check_INDC, check_ND, replay, sweep
from divgame.cli import emit_game, main, parse_game
from divgame.game_core import (
    CoalitionStructure,
    DiversityGame,
    Game,
    add_outside_player,
    default_names,
    full_mask,
    is_diverse,
    is_diverse_game,
    is_null,
    restrict_to_diverse,
)
from divgame.genfix import (
    FIXTURE_NAMES,
    GeneratorSpec,
    fixture_counterexample1,
    fixture_counterexample2,
    fixture_game,
    random_game,
)
from divgame.transform import dividends, support, synthesize
from divgame.values import (
    diversity_owen,
    owen,
    owen_permutation_oracle,
    shapley,
    shapley_permutation_oracle,
    value_by_name,
)

# At least three distinct shapes, including a tight block (size == quota) and a
# single-block structure, all with n <= 6.
SWEEP_SPECS = (
    GeneratorSpec(n=5, block_sizes=(3, 2), quotas=(1, 1), density=0.45),
    GeneratorSpec(n=6, block_sizes=(2, 2, 2), quotas=(2, 1, 1), density=0.35),
    GeneratorSpec(n=6, block_sizes=(6,), quotas=(2,), density=0.3),
    GeneratorSpec(n=4, block_sizes=(2, 2), quotas=(1, 2), density=0.5),
)

RIVALS = ("eqdiv", "blockdiv", "shapley_raw", "owen_raw", "shapley_restricted")


def criterion(num, title):
    def deco(fn):
        @functools.wraps(fn)
        def wrapper(*args, **kwargs):
            try:
                fn(*args, **kwargs)
            except BaseException:
                print(f"criterion {num} [{title}]: FAIL", file=sys.__stdout__)
                raise
            print(f"criterion {num} [{title}]: PASS", file=sys.__stdout__)

        return wrapper

    return deco


@criterion(1, "axiom existence sweep")
def test_criterion_1_axiom_existence_suite():
    trials = 304  # >= 300 random games, 76 per shape
    start = time.monotonic()
    reports = sweep(value_by_name("dowen"), SWEEP_SPECS, trials=trials, seed=20240601)
    elapsed = time.monotonic() - start
    assert [r.axiom for r in reports] == list(AXIOM_IDS)
    for rep in reports:
        assert rep.conclusive, f"{rep.axiom} never had an applicable instance"
        assert rep.failed == 0, (rep.axiom, rep.witness and rep.witness.note)
    assert elapsed < 60.0, f"sweep took {elapsed:.1f}s"


@criterion(2, "oracle equivalence")
def test_criterion_2_oracle_equivalence():
    owen_shapes = (
        (4, (2, 2), (1, 1)),
        (5, (3, 2), (1, 2)),
        (6, (2, 2, 2), (1, 1, 1)),
        (6, (4, 2), (2, 1)),
        (5, (2, 2, 1), (1, 1, 1)),
    )
    checked = 0
    for idx in range(100):
        n, sizes, quotas = owen_shapes[idx % len(owen_shapes)]
        g = random_game(
            GeneratorSpec(n=n, block_sizes=sizes, quotas=quotas, density=0.5,
                          seed=9000 + idx)
        )
        assert owen(g.game, g.structure) == owen_permutation_oracle(g.game, g.structure)
        checked += 1
    assert checked >= 100

    checked = 0
    for idx in range(100):
        n = 2 + idx % 7  # player counts 2..8
        g = random_game(
            GeneratorSpec(n=n, block_sizes=(n,), quotas=(1,), density=0.5,
                          seed=17000 + idx)
        )
        assert shapley(g.game) == shapley_permutation_oracle(g.game)
        checked += 1
    assert checked >= 100


@criterion(3, "coincidence with Shapley on trivial structures")
def test_criterion_3_owen_shapley_coincidence():
    for idx in range(100):
        n = 2 + idx % 7
        g = random_game(
            GeneratorSpec(n=n, block_sizes=(n,), quotas=(1,), density=0.5,
                          seed=26000 + idx)
        )
        v = g.game
        sh = shapley(v)
        singletons = CoalitionStructure(n, tuple(1 << b for b in range(n)))
        whole = CoalitionStructure(n, (full_mask(n),))
        assert owen(v, singletons) == sh
        assert owen(v, whole) == sh


@criterion(4, "transform correctness")
def test_criterion_4_transform_correctness():
    # Exhaustive round trip over a fixed value grid at n = 3.
    names3 = default_names(3)
    grid = (F(-1), F(0), F(1))
    for combo in itertools.product(grid, repeat=7):
        v = Game(names3, (F(0),) + combo)
        assert synthesize(dividends(v)) == v
    # Randomized round trips up to n = 10.
    rng = random.Random(4242)
    for n in range(4, 11):
        worth = [F(0)] + [
            F(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range((1 << n) - 1)
        ]
        v = Game(default_names(n), tuple(worth))
        assert synthesize(dividends(v)) == v
    # Restricted dividends vanish on every non-diverse coalition, n <= 6,
    # with every coalition checked exhaustively.
    shapes = (
        (2, (1, 1), (1, 1)),
        (3, (2, 1), (1, 1)),
        (4, (2, 2), (2, 1)),
        (5, (3, 2), (1, 2)),
        (6, (2, 2, 2), (2, 1, 1)),
        (6, (4, 2), (2, 2)),
    )
    for n, sizes, quotas in shapes:
        for seed in range(4):
            g = random_game(
                GeneratorSpec(n=n, block_sizes=sizes, quotas=quotas, density=0.5,
                              seed=33000 + 10 * n + seed)
            )
            dt = dividends(restrict_to_diverse(g))
            for S in range(1 << n):
                if not is_diverse(S, g.structure, g.quotas):
                    assert dt.delta[S] == 0


@criterion(5, "fixture values")
def test_criterion_5_fixture_values():
    ce1 = fixture_counterexample1()
    expected_ce1 = (F(1, 2), F(1), F(1, 2), F(1))
    assert diversity_owen(ce1.game) == expected_ce1
    assert owen_permutation_oracle(
        restrict_to_diverse(ce1.game), ce1.game.structure
    ) == expected_ce1

    veto = fixture_game("veto_demo")
    expected_veto = (F(1, 4), F(1, 4), F(1, 2))
    assert diversity_owen(veto) == expected_veto
    assert owen_permutation_oracle(
        restrict_to_diverse(veto), veto.structure
    ) == expected_veto
    assert shapley(veto.game) == (F(0), F(0), F(1))
    assert shapley_permutation_oracle(veto.game) == (F(0), F(0), F(1))


@criterion(6, "differential falsification of rival rules")
def test_criterion_6_rivals_fail_with_replayable_witnesses():
    for name in RIVALS:
        rule = value_by_name(name)
        reports = sweep(rule, SWEEP_SPECS, trials=40, seed=77)
        failing = [r for r in reports if r.failed]
        assert failing, f"{name} passed every axiom in the standard sweep"
        for rep in failing:
            assert rep.witness is not None
            rerun = replay(rule, rep.witness)
            assert rerun.applicable == 1 and rerun.passed == 0

    # Pinned: raw Shapley breaks INDC on the criterion-5 pair.
    veto = fixture_game("veto_demo")
    rep = check_INDC(
        value_by_name("shapley_raw"),
        veto.game, restrict_to_diverse(veto), veto.structure, veto.quotas,
    )
    assert rep.applicable == 1 and rep.failed == 1

    # Pinned: equal division breaks ND on a diverse game with a null player.
    diverse = DiversityGame(restrict_to_diverse(veto), veto.structure, veto.quotas)
    extended = add_outside_player(diverse, 0)
    rep = check_ND(value_by_name("eqdiv"), extended, extended.n - 1)
    assert rep.applicable == 1 and rep.failed == 1


@criterion(7, "fixture structure assertions")
def test_criterion_7_counterexample_assertions():
    from divgame.game_core import are_symmetric, sub

    ce1 = fixture_counterexample1()
    names = ce1.game.names
    i, j = names.index("i"), names.index("j")
    assert not are_symmetric(ce1.w, i, j)
    assert are_symmetric(ce1.w_prime, i, j)
    base_support = support(ce1.game).support
    diff = sub(ce1.game.game, ce1.w_prime)
    diff_support = support(
        DiversityGame(diff, ce1.game.structure, ce1.game.quotas)
    ).support
    assert len(diff_support) == len(base_support) == 2

    ce2 = fixture_counterexample2()
    report = ce2.symmetric_pairs()
    assert report[("j", "k")] is True
    assert report[("i", "j")] is False
    assert not is_diverse_game(ce2.game)


@criterion(8, "outside-player construction properties")
def test_criterion_8_outside_player_properties():
    shapes = (
        (4, (2, 2), (1, 1)),
        (5, (3, 2), (2, 1)),
        (6, (3, 3), (1, 2)),
    )
    checked = 0
    for idx in range(51):
        n, sizes, quotas = shapes[idx % len(shapes)]
        g = random_game(
            GeneratorSpec(n=n, block_sizes=sizes, quotas=quotas, density=0.5,
                          diverse_only=True, seed=31000 + idx)
        )
        assert is_diverse_game(g)
        block = idx % len(sizes)
        ext = add_outside_player(g, block)
        newcomer = g.n
        assert is_null(ext.game, newcomer)
        assert is_diverse_game(ext)
        base = diversity_owen(g)
        extended = diversity_owen(ext)
        assert extended[: g.n] == base
        assert extended[newcomer] == 0
        checked += 1
    assert checked >= 50


@criterion(9, "CLI round trips and exit codes")
def test_criterion_9_cli_round_trip_and_exit_codes(tmp_path, capsys):
    for name in FIXTURE_NAMES:
        g = fixture_game(name)
        assert parse_game(emit_game(g)) == g
    shapes = (
        (4, (2, 2), (1, 2)),
        (5, (2, 3), (1, 1)),
        (6, (3, 2, 1), (2, 1, 1)),
        (3, (3,), (2,)),
    )
    for idx in range(100):
        n, sizes, quotas = shapes[idx % len(shapes)]
        g = random_game(
            GeneratorSpec(n=n, block_sizes=sizes, quotas=quotas, density=0.5,
                          seed=52000 + idx)
        )
        assert parse_game(emit_game(g)) == g

    good = tmp_path / "veto.json"
    good.write_text(emit_game(fixture_game("veto_demo")), encoding="utf-8")
    assert main(["value", str(good), "--rule", "dowen"]) == 0
    assert main(["info", str(good)]) == 0
    assert main(["check", str(good), "--rule", "dowen", "--axioms", "E,ED,INDC",
                 "--trials", "5", "--seed", "1"]) == 0
    assert main(["check", str(good), "--rule", "eqdiv", "--axioms", "ND",
                 "--trials", "5", "--seed", "1"]) == 1
    bad = tmp_path / "bad.json"
    bad.write_text("{not json", encoding="utf-8")
    assert main(["info", str(bad)]) == 2
    assert main(["fixtures", "missing"]) == 2
    assert main([]) == 2
    capsys.readouterr()  # swallow accumulated CLI output
