"""Command-line front end.

Every report starts with a header naming the signature and the bounds used,
so a bounded run is never mistaken for a proof.  Exit codes: 0 success,
1 verification failure, 2 usage or parse error, 3 budget exhausted.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import Sequence

from . import gsb
from .diff import d_power
from .order import compare
from .parsing import ParseError, parse_poly, parse_word, print_poly, print_word
from .rewrite import RuleSet, paused_gc
from .rewrite import load_rules as load_rule_file
from .rota_baxter import (
    FAMILIES,
    default_contexts,
    default_nested_contexts,
    default_pool,
    enumerate_basis,
    rb_ambiguities,
    rb_rules,
    verify_ambiguity_families,
    verify_lifted_identity,
)
from .terms import Signature, SignatureError, as_rational

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3

DEFAULT_SIGNATURE = "gen x y z\nop P 1\nlambda 1\n"


class UsageError(Exception):
    pass


# -- configuration ----------------------------------------------------------------

def load_signature(args) -> Signature:
    if args.sig:
        try:
            sig = Signature.load(args.sig)
        except OSError as exc:
            raise UsageError(f"cannot read signature file: {exc}") from None
    else:
        sig = Signature.from_text(DEFAULT_SIGNATURE)
    if args.gens:
        names = [g for g in args.gens.split(",") if g]
        sig = Signature(names, [(o.name, o.arity) for o in sig.operators], sig.lam)
    if args.lam is not None:
        sig = sig.with_lambda(args.lam)
    return sig


def _rational(text: str):
    try:
        return as_rational(text)
    except (ValueError, ZeroDivisionError, TypeError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def _positive(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if n < 1:
        raise argparse.ArgumentTypeError(f"must be positive: {n}")
    return n


def _natural(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if n < 0:
        raise argparse.ArgumentTypeError(f"must be non-negative: {n}")
    return n


def parse_pool(text: str | None, sig: Signature) -> list:
    if not text:
        return default_pool(sig)
    return [parse_word(item.strip(), sig) for item in text.split(",") if item.strip()]


def load_rules(path: str, sig: Signature) -> RuleSet:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read rules file: {exc}") from None
    return load_rule_file(text, sig, lift_bound=None)


def _rule_system(args, sig: Signature) -> RuleSet:
    if args.rules:
        return load_rules(args.rules, sig)
    if any(o.arity == 1 for o in sig.operators):
        name = next(o.name for o in sig.operators if o.arity == 1)
        return rb_rules(sig, op_name=name)
    return RuleSet(sig, (), lift_bound=None)


# -- output -----------------------------------------------------------------------

class Output:
    """Collects a report as text lines or as one JSON object."""

    def __init__(self, args, command: str, sig: Signature, bounds: dict):
        self.machine = args.machine
        self.command = command
        self.header = {"command": command, "signature": sig.to_text().strip().replace("\n", "; ")}
        self.header.update(bounds)
        self.lines: list[str] = []
        self.data: dict = {}

    def line(self, text: str) -> None:
        self.lines.append(text)

    def emit(self, status: str | None = None, *, header: bool = True) -> None:
        if self.machine:
            doc = dict(self.header)
            doc.update(self.data)
            if status is not None:
                doc["status"] = status
            print(json.dumps(doc, sort_keys=True))
            return
        if header:
            bounds = " ".join(f"{k}={v}" for k, v in self.header.items() if k not in ("command",))
            print(f"# {self.command} {bounds}")
        for text in self.lines:
            print(text)
        if status is not None:
            print(f"status: {status}")


# -- commands ---------------------------------------------------------------------

def cmd_nf(args, sig) -> int:
    rules = _rule_system(args, sig)
    nf = rules.reduce(parse_poly(args.expr, sig))
    out = Output(args, "nf", sig, {"rules": rules.describe()})
    out.data["normal_form"] = print_poly(nf)
    out.line(print_poly(nf))
    out.emit(header=False)
    return EXIT_OK


def cmd_diff(args, sig) -> int:
    p = d_power(parse_poly(args.expr, sig), args.power, sig.lam)
    out = Output(args, "diff", sig, {"power": args.power})
    out.data["result"] = print_poly(p)
    out.line(print_poly(p))
    out.emit(header=False)
    return EXIT_OK


def cmd_order(args, sig) -> int:
    c = compare(parse_word(args.u, sig), parse_word(args.v, sig))
    out = Output(args, "order", sig, {})
    out.data["result"] = str(c)
    out.line(str(c))
    out.emit(header=False)
    return EXIT_OK


def cmd_parse(args, sig) -> int:
    p = parse_poly(args.expr, sig)
    out = Output(args, "parse", sig, {})
    out.data["canonical"] = print_poly(p)
    out.line(print_poly(p))
    out.emit(header=False)
    return EXIT_OK


def cmd_gsb_check(args, sig) -> int:
    rs = load_rules(args.rules_file, sig)
    rules = rs.rules
    lift = 2 if args.lift is None else args.lift
    out = Output(args, "gsb-check", sig, {"lift_bound": lift, "rules": len(rules),
                                          "schemas": len(rs.schemas)})
    total = bad = 0
    with paused_gc():
        for a in range(len(rules)):
            for b in range(a, len(rules)):
                for amb in gsb.find_ambiguities(rules[a], rules[b], sig.lam, lift):
                    rep = gsb.check_triviality(amb, rs, None, log=False)
                    total += 1
                    if not rep.trivial:
                        bad += 1
                        out.line(f"FAIL {rep.line()}")
    out.line(f"summary: compositions={total} nontrivial={bad}")
    out.data.update(compositions=total, nontrivial=bad)
    out.emit("PASS" if not bad else "FAIL")
    return EXIT_OK if not bad else EXIT_FAIL


def cmd_complete(args, sig) -> int:
    rs = load_rules(args.rules_file, sig)
    if rs.schemas:
        raise UsageError("complete extends ground rules only; remove the schema lines")
    lift = 2 if args.lift is None else args.lift
    rep = gsb.complete(sig, rs.rules, lift_bound=lift, max_rounds=args.rounds, max_rules=args.max_rules)
    out = Output(args, "complete", sig, {"lift_bound": lift, "max_rounds": args.rounds,
                                         "max_rules": args.max_rules})
    for text in rep.lines():
        out.line(text)
    out.data.update(rounds=rep.rounds, rules=[str(r) for r in rep.rules],
                    added=[str(r) for r in rep.added])
    out.emit("fixpoint" if rep.complete else "budget exhausted")
    return EXIT_OK if rep.complete else EXIT_BUDGET


def _rb_setup(args, sig):
    lift = 2 if args.lift is None else args.lift
    pool = parse_pool(args.pool, sig)
    return lift, pool


def cmd_ambiguities(args, sig) -> int:
    lift, pool = _rb_setup(args, sig)
    rules = rb_rules(sig)
    out = Output(args, "ambiguities", sig, {"lift_bound": lift, "pool_size": len(pool)})
    counts: dict[str, int] = {}
    listed = []
    for amb in rb_ambiguities(sig, pool, default_contexts(sig), lift, rules,
                              default_nested_contexts(sig)):
        counts[amb.family] = counts.get(amb.family, 0) + 1
        listed.append(amb.describe())
    out.lines.extend(listed)
    out.lines.extend(f"{name}: {n}" for name, n in counts.items())
    out.line(f"summary: instances={sum(counts.values())}")
    out.data.update(families=counts, instances=sum(counts.values()))
    out.emit()
    return EXIT_OK


def _shard(payload):
    """Worker entry point: rebuild everything from plain data and check one shard."""
    sig_text, pool_text, lift, weight, keep, jobs, k = payload
    sig = Signature.from_text(sig_text)
    pool = [parse_word(w, sig) for w in pool_text]
    keep = None if keep is None else set(keep)

    def select(idx):
        return idx % jobs == k and (keep is None or idx in keep)

    rep = verify_ambiguity_families(sig, pool, lift, weight=weight, select=select)
    counts = {name: (c.instances, c.trivial) for name, c in rep.families.items()}
    fails = [(i, r.line()) for i, r in zip(rep.failure_index, rep.failures)]
    return counts, fails


def cmd_rb_verify(args, sig) -> int:
    lift, pool = _rb_setup(args, sig)
    weight = args.weight
    keep = None
    if args.sample:
        total = sum(1 for _ in rb_ambiguities(sig, pool, default_contexts(sig), lift, rb_rules(sig),
                                              default_nested_contexts(sig)))
        rng = random.Random(args.seed)
        keep = sorted(rng.sample(range(total), min(args.sample, total)))
    jobs = max(1, args.jobs)
    payloads = [(sig.to_text(), [print_word(w) for w in pool], lift, weight, keep, jobs, k)
                for k in range(jobs)]
    if jobs == 1:
        parts = [_shard(payloads[0])]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            parts = list(ex.map(_shard, payloads))
    merged: dict[str, list[int]] = {}
    fails: list[tuple[int, str]] = []
    for counts, f in parts:
        for name, (n, t) in counts.items():
            acc = merged.setdefault(name, [0, 0])
            acc[0] += n
            acc[1] += t
        fails.extend(f)
    fails.sort()
    names = [n for n in FAMILIES if n in merged] + sorted(n for n in merged if n not in FAMILIES)
    bounds = {"lift_bound": lift, "pool_size": len(pool),
              "sample": args.sample or "all", "seed": args.seed}
    if weight is not None:
        bounds["weight"] = str(weight)
    out = Output(args, "rb-verify", sig, bounds)
    out.line("pool: " + ", ".join(print_word(w) for w in pool))
    out.line("contexts: " + ", ".join(str(c) for c in default_contexts(sig)))
    out.line("nested contexts: " + ", ".join(str(c) for c in default_nested_contexts(sig)))
    for name in names:
        n, t = merged[name]
        out.line(f"{name}: {t}/{n} trivial")
    out.lines.extend(f"FAIL #{i} {text}" for i, text in fails[:20])
    total = sum(n for n, _ in merged.values())
    out.line(f"summary: instances={total} nontrivial={len(fails)}")
    out.data.update(families={n: {"instances": merged[n][0], "trivial": merged[n][1]} for n in names},
                    failures=[text for _, text in fails[:20]], instances=total, nontrivial=len(fails))
    status = "PASS" if not fails else "FAIL"
    out.emit(status)
    return EXIT_OK if not fails else EXIT_FAIL


def cmd_rb_basis(args, sig) -> int:
    size = 4 if args.size is None else args.size
    words = enumerate_basis(sig, size)
    out = Output(args, "rb-basis", sig, {"size_cap": size, "count": len(words)})
    out.lines.extend(print_word(w) for w in words)
    out.data["words"] = [print_word(w) for w in words]
    # plain output is exactly one word per line; --machine carries the bounds
    out.emit(header=False)
    return EXIT_OK


def cmd_rb_identity(args, sig) -> int:
    pool = parse_pool(args.pool, sig)
    top = 3 if args.lift is None else args.lift
    out = Output(args, "rb-identity", sig, {"max_lift": top, "pool_size": len(pool)})
    total = bad = 0
    with paused_gc():
        rules = rb_rules(sig)
        for u in pool:
            for v in pool:
                for j in range(1, top + 1):
                    total += 1
                    if not verify_lifted_identity(sig, u, v, j, rules):
                        bad += 1
                        out.line(f"FAIL u={print_word(u)} v={print_word(v)} j={j}")
    out.line(f"summary: checked={total} failed={bad}")
    out.data.update(checked=total, failed=bad)
    out.emit("PASS" if not bad else "FAIL")
    return EXIT_OK if not bad else EXIT_FAIL


# -- argument parsing ---------------------------------------------------------------

def _common_flags(suppress: bool) -> argparse.ArgumentParser:
    """Global flags; the subcommand copy must not overwrite values given before it."""
    def d(value):
        return argparse.SUPPRESS if suppress else value

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--sig", metavar="FILE", default=d(None), help="signature file (gen/op/lambda lines)")
    common.add_argument("--gens", metavar="LIST", default=d(None), help="replace the generators, e.g. x,y")
    common.add_argument("--lambda", dest="lam", type=_rational, metavar="Q", default=d(None),
                        help="weight override")
    common.add_argument("--lift", type=_natural, metavar="N", default=d(None), help="differential lift bound")
    common.add_argument("--size", type=_positive, metavar="N", default=d(None), help="size cap")
    common.add_argument("--pool", metavar="LIST", default=d(None), help="comma-separated pool of words")
    common.add_argument("--seed", type=int, default=d(0), metavar="N")
    common.add_argument("--jobs", type=_positive, default=d(1), metavar="N")
    common.add_argument("--machine", action="store_true", default=d(False), help="print one JSON object")
    common.add_argument("--rules", metavar="FILE", default=d(None), help="ground rules, one polynomial per line")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_flags(suppress=True)
    parser = argparse.ArgumentParser(prog="dgsb", description=__doc__.splitlines()[0],
                                     parents=[_common_flags(suppress=False)])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.set_defaults(func=func)
        return p

    add("nf", cmd_nf, "normal form of an expression").add_argument("expr")
    p = add("diff", cmd_diff, "apply D^N to an expression")
    p.add_argument("expr")
    p.add_argument("power", nargs="?", type=_natural, default=1)
    p = add("order", cmd_order, "compare two words")
    p.add_argument("u")
    p.add_argument("v")
    add("parse", cmd_parse, "print the canonical form").add_argument("expr")
    add("gsb-check", cmd_gsb_check, "check all compositions of ground rules").add_argument("rules_file")
    p = add("complete", cmd_complete, "complete ground rules")
    p.add_argument("rules_file")
    p.add_argument("--rounds", type=_positive, default=5)
    p.add_argument("--max-rules", type=_positive, default=200)
    add("ambiguities", cmd_ambiguities, "list the differential Rota-Baxter ambiguity instances")
    p = add("rb-verify", cmd_rb_verify, "reduce every ambiguity composition of the RB rules")
    p.add_argument("--sample", type=_positive, metavar="N", help="check N seeded random instances")
    p.add_argument("--weight", type=_rational, metavar="Q", help="use a different RB weight (mutation)")
    add("rb-basis", cmd_rb_basis, "enumerate irreducible words up to --size")
    add("rb-identity", cmd_rb_identity, "check the lifted RB identity for pool pairs, j <= --lift")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        sig = load_signature(args)
        return args.func(args, sig)
    except (ParseError, SignatureError, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
