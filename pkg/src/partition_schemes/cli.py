"""Command-line entry point.

Exit status: 0 on accept / unanimous / verified, 1 on reject / objection /
mismatch / fraud, 2 on usage, configuration or parameter errors.

``--config FILE`` reads ``key = value`` lines that stand in for ``--key value``
flags; flags given on the command line win.
"""

from __future__ import annotations

import argparse
import json
import shlex
import sys
from dataclasses import replace
from fractions import Fraction
from pathlib import Path

from . import adversary, golden
from .ballot import run_ballot_session
from .errors import SchemeError
from .identity import build_identity, enumerate_solutions, expand_pair_product, verify_identity
from .membership import parse_behavior, run_membership_session
from .partitions import BaseSet, count_bounded, count_unrestricted
from .scheme import SchemeParams
from .unanimity import run_unanimity_session


def int_list(text: str) -> list[int]:
    return [int(x) for x in text.replace(" ", "").split(",") if x]


def base_set(text: str) -> BaseSet:
    try:
        return BaseSet.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _scheme_args(p: argparse.ArgumentParser, r: int) -> None:
    p.add_argument("--n1", type=int, default=19)
    p.add_argument("--n2", type=int, default=23)
    p.add_argument("--alpha", type=int, default=2)
    p.add_argument("--r", type=int, default=r)
    p.add_argument("--delta", type=int, default=2)
    p.add_argument("--rounds", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--density", type=Fraction, default=Fraction(3, 4), help="round base set density")
    p.add_argument("--max-retries", type=int, default=32)
    p.add_argument("--out", type=Path, help="directory for transcripts")


def _params(args) -> SchemeParams:
    return SchemeParams(
        n1=args.n1,
        n2=args.n2,
        alpha=args.alpha,
        r=args.r,
        delta=args.delta,
        rounds=args.rounds,
        rng_seed=args.seed,
        max_retries=args.max_retries,
        base_density=args.density,
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="partition-schemes", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", help="count partitions of n into parts of a base set")
    p.add_argument("--base", type=base_set, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--alpha", type=int, help="multiplicity bound (omit for unrestricted)")

    p = sub.add_parser("solutions", help="print the solution matrix")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--alpha", type=int, required=True)

    p = sub.add_parser("identity", help="identity operations")
    isub = p.add_subparsers(dest="action", required=True)
    v = isub.add_parser("verify")
    v.add_argument("--n", type=int, required=True)
    v.add_argument("--alpha", type=int, required=True)
    v.add_argument("--base", type=base_set, required=True)
    s = isub.add_parser("show")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--alpha", type=int, required=True)

    p = sub.add_parser("expand", help="expand the masked two-number product")
    p.add_argument("--n1", type=int, required=True)
    p.add_argument("--n2", type=int, required=True)
    p.add_argument("--alpha", type=int, required=True)
    p.add_argument("--base", type=base_set, help="also evaluate on this base set")
    p.add_argument("--show", action="store_true", help="print every term")

    p = sub.add_parser("simulate", help="run a protocol session")
    ssub = p.add_subparsers(dest="protocol", required=True)
    m = ssub.add_parser("membership")
    _scheme_args(m, 3)
    m.add_argument("--behaviors", default="", help="comma list per member: honest, offset[:k], random, replay, impostor")
    b = ssub.add_parser("ballot")
    _scheme_args(b, 3)
    b.add_argument("--votes", type=int_list)
    b.add_argument("--votes-file", type=Path)
    b.add_argument("--item", type=int, default=0)
    b.add_argument("--no-inspect", action="store_true")
    u = ssub.add_parser("unanimity")
    _scheme_args(u, 3)
    u.add_argument("--objectors", type=int_list, default=[])

    p = sub.add_parser("attack", help="brute-force (u, v) from observed products")
    p.add_argument("--alpha", type=int, default=1)
    p.add_argument("--bound", type=int, default=30)
    p.add_argument("--k", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--pairs", default="all", help="'all' or 'u,v;u,v;...'")
    p.add_argument("--out", type=Path)

    sub.add_parser("golden", help="replay the n=10, alpha=1 worked example")
    return parser


def read_config(path: Path) -> list[str]:
    tokens = []
    for raw in path.read_text().splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise ValueError(f"config line without '=': {raw!r}")
        flag = "--" + key.strip().replace("_", "-")
        value = value.strip()
        if value.lower() in ("true", "yes"):
            tokens.append(flag)
        elif value.lower() in ("false", "no"):
            continue
        else:
            tokens += [flag, *shlex.split(value)]
    return tokens


def merge_config(argv: list[str]) -> list[str]:
    argv = list(argv)
    config = None
    for i, tok in enumerate(argv):
        if tok == "--config" and i + 1 < len(argv):
            config = argv[i + 1]
            del argv[i : i + 2]
            break
        if tok.startswith("--config="):
            config = tok.split("=", 1)[1]
            del argv[i]
            break
    if config is None:
        return argv
    tokens = read_config(Path(config))
    first_flag = next((i for i, tok in enumerate(argv) if tok.startswith("-")), len(argv))
    # config goes first so that later command-line flags override it
    return argv[:first_flag] + tokens + argv[first_flag:]


def _write(out: Path | None, name: str, text: str) -> None:
    if out is None:
        return
    out.mkdir(parents=True, exist_ok=True)
    (out / name).write_text(text)


def cmd_count(args) -> int:
    if args.alpha is None:
        print(count_unrestricted(args.base, args.n))
    else:
        print(count_bounded(args.base, args.alpha, args.n))
    return 0


def cmd_solutions(args) -> int:
    sys.stdout.write(enumerate_solutions(args.n, args.alpha).to_text())
    return 0


def cmd_identity(args) -> int:
    if args.action == "show":
        identity = build_identity(args.n, args.alpha)
        print(" + ".join(str(t) for t in identity.terms))
        return 0
    report = verify_identity(args.n, args.alpha, args.base)
    if report.equal:
        print(f"OK lhs=rhs={report.lhs}")
        return 0
    print(f"MISMATCH lhs={report.lhs} rhs={report.rhs}")
    return 1


def cmd_expand(args) -> int:
    expansion = expand_pair_product(args.n1, args.n2, args.alpha)
    print(f"terms={len(expansion.terms)}")
    if args.show:
        for term in expansion.terms:
            print(",".join(map(str, term.args)))
    if args.base is not None:
        value = expansion.evaluate(args.base)
        left = count_unrestricted(args.base, args.n1) - count_bounded(args.base, args.alpha, args.n1)
        right = count_unrestricted(args.base, args.n2) - count_bounded(args.base, args.alpha, args.n2)
        status = "OK" if value == left * right else "MISMATCH"
        print(f"{status} value={value} product={left * right}")
        return 0 if status == "OK" else 1
    return 0


def cmd_simulate(args) -> int:
    params = _params(args)
    if args.protocol == "membership":
        names = [x for x in args.behaviors.split(",") if x.strip()] if args.behaviors else []
        if len(names) > params.r:
            raise SchemeError(f"{len(names)} behaviours given for {params.r} members")
        behaviors = {i: parse_behavior(name) for i, name in enumerate(names)}
        session = run_membership_session(params, behaviors)
        _write(args.out, "transcript.jsonl", session.transcript.to_jsonl())
        print(f"verdict={session.verdict}")
        if session.cheaters:
            print("cheaters=" + ",".join(map(str, sorted(session.cheaters))))
        return 0 if session.verdict == "accept" else 1

    if args.protocol == "ballot":
        if args.votes_file is not None:
            votes = int_list(args.votes_file.read_text().replace("\n", ","))
        elif args.votes is not None:
            votes = args.votes
        else:
            raise SchemeError("ballot needs --votes or --votes-file")
        if len(votes) != params.r:
            params = replace(params, r=len(votes))
        session = run_ballot_session(params, votes, item=args.item, inspect=not args.no_inspect)
        _write(args.out, "transcript.jsonl", session.transcript.to_jsonl())
        _write(args.out, "voters.jsonl", session.voters_channel.to_jsonl())
        if session.tally is None:
            print("tally=out_of_range")
        else:
            print(f"y={session.tally.y} nays={session.tally.nays}")
        if session.inspection is not None:
            print(f"inspection={session.inspection}")
        ok = session.tally is not None and session.inspection in (None, "fair")
        return 0 if ok else 1

    session = run_unanimity_session(params, args.objectors)
    _write(args.out, "transcript.jsonl", session.transcript.to_jsonl())
    _write(args.out, "decision_makers.jsonl", session.private.to_jsonl())
    print(f"verdict={session.verdict}")
    return 0 if session.verdict == "unanimous" else 1


def cmd_attack(args) -> int:
    if args.pairs == "all":
        pairs = [(u, v) for u in range(1, args.bound + 1) for v in range(u, args.bound + 1)]
    else:
        pairs = [tuple(int_list(item)) for item in args.pairs.split(";") if item.strip()]
    report = adversary.run_experiment(pairs, alpha=args.alpha, k=args.k, bound=args.bound, seed=args.seed)
    for j, (mean, worst) in enumerate(zip(report["mean_size_by_k"], report["max_size_by_k"]), start=1):
        print(f"k={j} mean_candidates={mean:.3f} max_candidates={worst}")
    print(f"unique_fraction={report['unique_fraction']:.3f} wall_time_s={report['wall_time_s']:.3f}")
    if args.out is not None:
        stable = {k: v for k, v in report.items() if k != "wall_time_s"}
        _write(args.out, "attack_report.json", json.dumps(stable, indent=2, sort_keys=True) + "\n")
    return 0 if all(row["contains_true"] for row in report["pairs"]) else 1


def cmd_golden(args) -> int:
    ok, lines = golden.check()
    print("\n".join(lines))
    return 0 if ok else 1


COMMANDS = {
    "count": cmd_count,
    "solutions": cmd_solutions,
    "identity": cmd_identity,
    "expand": cmd_expand,
    "simulate": cmd_simulate,
    "attack": cmd_attack,
    "golden": cmd_golden,
}


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    parser = build_parser()
    try:
        argv = merge_config(argv)
    except (OSError, ValueError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command](args)
    except (SchemeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
