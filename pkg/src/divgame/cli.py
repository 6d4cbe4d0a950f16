"""Command-line front end: game documents, values, dividends, restriction,
axiom sweeps, random generation, and built-in fixtures.

Game documents are JSON objects with exactly four fields: `players` (ordered
name list), `blocks` (lists of names forming a partition), `d` (per-block
quotas), and `worths` (coalition key -> rational literal).  A coalition key
joins player names with ","; a rational literal is an integer or "p/q" string,
never a decimal.  Absent coalitions are worth 0 and the empty key is
forbidden, so emit/parse round trips are bit-exact.

Exit codes: 0 success or all checks passed, 1 at least one axiom check failed,
2 usage or document errors.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction
from typing import Sequence

from .axioms import AXIOM_IDS, Witness, canonical_axiom, sweep
from .game_core import (
    ZERO,
    CoalitionStructure,
    DiversityGame,
    Game,
    describe_coalition,
    diverse_coalitions,
    is_out,
    make_diversity_game,
    make_game,
    members,
    restrict_to_diverse,
)
from .genfix import FIXTURE_NAMES, GeneratorSpec, fixture_game, random_game
from .transform import dividends, support
from .values import VALUE_NAMES, value_by_name

DOCUMENT_FIELDS = ("players", "blocks", "d", "worths")

_RATIONAL_RE = re.compile(r"[+-]?\d+(?:/\d+)?\Z")


def parse_rational(value: object) -> Fraction:
    """Exact rational from an int or an integer/'p/q' string; decimals rejected."""
    if type(value) is int:
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if _RATIONAL_RE.fullmatch(text):
            num, _, den = text.partition("/")
            if not den:
                return Fraction(int(num))
            if int(den) == 0:
                raise ValueError(f"zero denominator in rational literal {value!r}")
            return Fraction(int(num), int(den))
    raise ValueError(f"malformed rational literal {value!r} (expected integer or 'p/q')")


def parse_game(text: str) -> DiversityGame:
    """Parse a JSON game document into a validated diversity game."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"invalid game document: {exc}") from None
    if not isinstance(doc, dict):
        raise ValueError("game document must be a JSON object")
    missing = [k for k in DOCUMENT_FIELDS if k not in doc]
    if missing:
        raise ValueError(f"game document is missing fields: {', '.join(missing)}")
    unknown = [k for k in doc if k not in DOCUMENT_FIELDS]
    if unknown:
        raise ValueError(f"game document has unknown fields: {', '.join(unknown)}")

    players = doc["players"]
    if (
        not isinstance(players, list)
        or not players
        or not all(isinstance(p, str) and p for p in players)
    ):
        raise ValueError("'players' must be a nonempty list of nonempty names")
    if any("," in p for p in players):
        raise ValueError("player names may not contain ','")
    if len(set(players)) != len(players):
        raise ValueError("player names must be distinct")
    index = {p: k for k, p in enumerate(players)}

    blocks_doc = doc["blocks"]
    if not isinstance(blocks_doc, list) or not all(isinstance(b, list) for b in blocks_doc):
        raise ValueError("'blocks' must be a list of lists of player names")
    block_masks = []
    for b in blocks_doc:
        mask = 0
        for p in b:
            if p not in index:
                raise ValueError(f"unknown player {p!r} in blocks")
            bit = 1 << index[p]
            if mask & bit:
                raise ValueError(f"player {p!r} listed twice in one block")
            mask |= bit
        block_masks.append(mask)

    quotas = doc["d"]
    if not isinstance(quotas, list) or not all(type(x) is int for x in quotas):
        raise ValueError("'d' must be a list of integers")

    worths_doc = doc["worths"]
    if not isinstance(worths_doc, dict):
        raise ValueError("'worths' must be an object keyed by coalition")
    worths: dict[int, Fraction] = {}
    for key, value in worths_doc.items():
        if key == "":
            raise ValueError("the empty coalition may not be listed in worths")
        mask = 0
        for part in key.split(","):
            name = part.strip()
            if name not in index:
                raise ValueError(f"unknown player {name!r} in coalition key {key!r}")
            bit = 1 << index[name]
            if mask & bit:
                raise ValueError(f"player {name!r} listed twice in coalition key {key!r}")
            mask |= bit
        if mask in worths:
            raise ValueError(f"coalition key {key!r} duplicates an earlier coalition")
        worths[mask] = parse_rational(value)

    return make_diversity_game(make_game(players, worths), block_masks, quotas)


def emit_game(g: DiversityGame) -> str:
    """Serialize to the canonical JSON document; parse_game(emit_game(g)) == g."""
    names = g.names
    if any("," in p for p in names):
        raise ValueError("player names may not contain ','")
    worths = {}
    for S, w in enumerate(g.game.worth):
        if S and w != 0:
            worths[",".join(names[b] for b in members(S))] = str(w)
    doc = {
        "players": list(names),
        "blocks": [[names[b] for b in members(block)] for block in g.structure.blocks],
        "d": list(g.quotas),
        "worths": worths,
    }
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _load_game(path: str) -> DiversityGame:
    return parse_game(_read_text(path))


def _allocation_lines(g: DiversityGame, pay, fmt: str) -> list[str]:
    if fmt == "records":
        return [f"{name}={value}" for name, value in zip(g.names, pay)]
    width = max(5, max(len(name) for name in g.names))
    lines = [f"{name:<{width}}  {value}" for name, value in zip(g.names, pay)]
    lines.append(f"{'total':<{width}}  {sum(pay, ZERO)}")
    return lines


def _blocks_text(structure: CoalitionStructure, names: Sequence[str]) -> str:
    return " ".join("{" + describe_coalition(b, names) + "}" for b in structure.blocks)


def _cmd_info(args) -> int:
    g = _load_game(args.file)
    info = support(g)
    outs = [g.names[i] for i in range(g.n) if is_out(g, i)]
    print(f"players ({g.n}): {', '.join(g.names)}")
    print(f"blocks ({g.structure.m}): {_blocks_text(g.structure, g.names)}")
    print(f"quotas: {', '.join(map(str, g.quotas))}")
    print(f"diverse coalitions: {len(diverse_coalitions(g.structure, g.quotas))}")
    print(f"restricted support size: {len(info.support)}")
    print(f"universal players: {describe_coalition(info.universal, g.names)}")
    print(f"out players: {', '.join(outs) if outs else '∅'}")
    return 0


def _cmd_value(args) -> int:
    g = _load_game(args.file)
    rule = value_by_name(args.rule)
    target = g
    if args.restricted:
        target = DiversityGame(restrict_to_diverse(g), g.structure, g.quotas)
    pay = rule(target)
    print("\n".join(_allocation_lines(g, pay, args.format)))
    return 0


def _cmd_dividends(args) -> int:
    g = _load_game(args.file)
    table = dividends(restrict_to_diverse(g) if args.restricted else g.game)
    entries = [(S, d) for S, d in enumerate(table.delta) if S and d != 0]
    if args.format == "records":
        for S, d in entries:
            print(f"{describe_coalition(S, g.names)}={d}")
    else:
        for S, d in entries:
            print(f"{describe_coalition(S, g.names)}  {d}")
        if args.restricted:
            info = support(g)
            print(f"support size: {len(info.support)}")
            print(f"universal players: {describe_coalition(info.universal, g.names)}")
    return 0


def _cmd_restrict(args) -> int:
    g = _load_game(args.file)
    restricted = DiversityGame(restrict_to_diverse(g), g.structure, g.quotas)
    print(emit_game(restricted), end="")
    return 0


def _witness_lines(witness: Witness) -> list[str]:
    inputs = witness.instance.inputs
    names = None
    for value in inputs.values():
        if isinstance(value, (Game, DiversityGame)):
            names = value.names
            break
    lines = [
        f"  witness: {witness.note}",
        f"    lhs = {witness.lhs}",
        f"    rhs = {witness.rhs}",
    ]
    for key, value in inputs.items():
        if isinstance(value, DiversityGame):
            lines.append(
                f"    {key}: {value.game!r} blocks={_blocks_text(value.structure, value.names)}"
                f" d={value.quotas}"
            )
        elif isinstance(value, Game):
            lines.append(f"    {key}: {value!r}")
        elif isinstance(value, CoalitionStructure):
            shown = _blocks_text(value, names) if names else repr(value.blocks)
            lines.append(f"    {key}: blocks={shown}")
        elif key in ("i", "j") and names is not None and isinstance(value, int):
            lines.append(f"    {key}: {names[value]} (index {value})")
        else:
            lines.append(f"    {key}: {value}")
    return lines


def _parse_axiom_list(text: str) -> list[str]:
    text = text.strip()
    if not text or text.lower() == "none":
        return []
    if text.lower() == "all":
        return list(AXIOM_IDS)
    return [canonical_axiom(part) for part in text.split(",") if part.strip()]


def _cmd_check(args) -> int:
    g = _load_game(args.file)
    rule = value_by_name(args.rule)
    ids = _parse_axiom_list(args.axioms)
    spec = GeneratorSpec(
        n=g.n,
        block_sizes=g.structure.sizes(),
        quotas=g.quotas,
        density=0.4,
        value_range=5,
    )
    reports = sweep(rule, spec, ids, trials=args.trials, seed=args.seed, first_game=g)
    failures = 0
    for rep in reports:
        if not rep.ok:
            status = "FAIL"
        elif rep.conclusive:
            status = "PASS"
        else:
            status = "INCONCLUSIVE"
        print(
            f"{rep.axiom:<9} tried={rep.tried:<5} applicable={rep.applicable:<5} "
            f"passed={rep.passed:<5} {status}"
        )
        if rep.witness is not None:
            print("\n".join(_witness_lines(rep.witness)))
        failures += rep.failed
    return 1 if failures else 0


def _parse_int_list(text: str, what: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError:
        raise ValueError(f"invalid {what} list {text!r}") from None


def _cmd_gen(args) -> int:
    spec = GeneratorSpec(
        n=args.players,
        block_sizes=_parse_int_list(args.blocks, "block size"),
        quotas=_parse_int_list(args.d, "quota"),
        density=args.density,
        value_range=args.range,
        diverse_only=args.diverse_only,
        seed=args.seed,
    )
    print(emit_game(random_game(spec)), end="")
    return 0


def _cmd_fixtures(args) -> int:
    print(emit_game(fixture_game(args.name)), end="")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="divgame",
        description=(
            "Exact solver and axiom checker for TU-games with coalition "
            "structures and per-block diversity quotas."
        ),
    )
    subs = parser.add_subparsers(dest="command", required=True)

    def add_file(p: argparse.ArgumentParser) -> None:
        p.add_argument("file", help="game document path, or '-' for stdin")

    p = subs.add_parser("info", help="summarize a game document")
    add_file(p)
    p.set_defaults(handler=_cmd_info)

    p = subs.add_parser("value", help="compute an allocation")
    add_file(p)
    p.add_argument("--rule", required=True, choices=sorted(VALUE_NAMES))
    p.add_argument(
        "--restricted", action="store_true",
        help="apply the rule to the diversity-restricted game",
    )
    p.add_argument("--format", choices=("table", "records"), default="table")
    p.set_defaults(handler=_cmd_value)

    p = subs.add_parser("dividends", help="list nonzero dividends")
    add_file(p)
    p.add_argument(
        "--restricted", action="store_true",
        help="dividends of the diversity-restricted game, plus its support summary",
    )
    p.add_argument("--format", choices=("table", "records"), default="table")
    p.set_defaults(handler=_cmd_dividends)

    p = subs.add_parser("restrict", help="emit the diversity-restricted game")
    add_file(p)
    p.set_defaults(handler=_cmd_restrict)

    p = subs.add_parser("check", help="run axiom checks over seeded random games")
    add_file(p)
    p.add_argument("--rule", required=True, choices=sorted(VALUE_NAMES))
    p.add_argument(
        "--axioms", default="all",
        help=f"comma list from {', '.join(AXIOM_IDS)}; or 'all' / 'none'",
    )
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(handler=_cmd_check)

    p = subs.add_parser("gen", help="generate a seeded random game document")
    p.add_argument("--players", type=int, required=True)
    p.add_argument("--blocks", required=True, help="comma list of block sizes")
    p.add_argument("--d", required=True, help="comma list of per-block quotas")
    p.add_argument("--density", type=float, default=0.4)
    p.add_argument("--range", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--diverse-only", action="store_true")
    p.set_defaults(handler=_cmd_gen)

    p = subs.add_parser("fixtures", help="emit a built-in fixture game")
    p.add_argument("name", help=f"one of: {', '.join(FIXTURE_NAMES)}")
    p.set_defaults(handler=_cmd_fixtures)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 2
    try:
        return args.handler(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
