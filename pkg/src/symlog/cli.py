"""Batch entry point.

Commands::

    symlog check FILE.blq            validate every proof in a script
    symlog sym FILE --name P         symmetrize a named proof
    symlog dual FILE --name S --duality perp|top
    symlog search FILE --name S --depth N
    symlog corpus                    run the full regression corpus
    symlog qstate FILE.json          the logical image of a qubit state
    symlog bell --phase P --correlation C
    symlog guard DOMAIN [--collapse-demo]

Exit codes: 0 on a successful run, 1 on a failed check or an unproved
search goal, 2 on usage or parse errors.  Diagnostics go to stderr,
reports to stdout.  Context-liberalization flags are never assumed: they
come from the script's ``flags`` line or the command line, or stay off.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

from .corpus import run_corpus
from .domains import RegistryError, standard_registry
from .dualities import (
    IDENTITY_INV, LiteralInvolution, PERP_INV, TOP_INV, UnclassifiedLiteral,
    apply_duality,
)
from .formulas import CorrPair, Sequent, Single
from .kernel import (
    KernelError, check_proof, proof_to_json, symmetrize_proof,
)
from .qubits import (
    BellState, NonDyadicProbability, Qubit, bell_formula, collapse,
    measurement_domain, state_formula,
)
from .formulas import IDENTICAL, OPPOSITE
from .rules import CalculusConfig, RuleError
from .scripts import (
    ParseError, Script, parse_script, print_formula, print_proof,
    print_sequent,
)
from .search import DEFAULT_MAX_DEPTH, search_proof

_INVS = {"identity": IDENTITY_INV, "perp": PERP_INV, "top": TOP_INV}


def _err(msg: str) -> None:
    print(f"symlog: {msg}", file=sys.stderr)


def _load_script(path: str) -> Script:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_script(fh.read())


def _merge_config(sc: Script, args) -> CalculusConfig:
    base = sc.config()
    subst = set(base.substitution_domains) | set(args.subst or [])
    dax = set(base.d_axiom_domains)
    for spec in args.d_axiom or []:
        dom, _, dual = spec.partition(":")
        if not dual:
            raise ValueError(f"--d-axiom wants DOMAIN:DUALITY, got {spec!r}")
        dax.add((dom, dual))
    return CalculusConfig(
        left_contexts=base.left_contexts or args.left_contexts,
        right_contexts=base.right_contexts or args.right_contexts,
        weakening=base.weakening or args.weakening,
        cut=base.cut or args.cut,
        substitution_domains=frozenset(subst),
        d_axiom_domains=frozenset(dax),
        collapse_demo=base.collapse_demo or args.collapse_demo)


def _emit(args, payload: dict, text: str) -> None:
    if args.format == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(text)


def _add_config_flags(sub) -> None:
    sub.add_argument("--left-contexts", action="store_true",
                     dest="left_contexts")
    sub.add_argument("--right-contexts", action="store_true",
                     dest="right_contexts")
    sub.add_argument("--weakening", action="store_true")
    sub.add_argument("--cut", action="store_true")
    sub.add_argument("--subst", action="append", metavar="DOMAIN")
    sub.add_argument("--d-axiom", action="append", metavar="DOMAIN:DUALITY",
                     dest="d_axiom")
    sub.add_argument("--collapse-demo", action="store_true",
                     dest="collapse_demo")
    sub.add_argument("--format", choices=("text", "json"), default="text")


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="symlog", description=__doc__,
                                 formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="validate every proof in a script")
    p.add_argument("file")
    _add_config_flags(p)

    p = sub.add_parser("sym", help="symmetrize a named proof")
    p.add_argument("file")
    p.add_argument("--name", required=True)
    p.add_argument("--involution", default="identity",
                   help="identity, perp, top, or a bare duality tag")
    _add_config_flags(p)

    p = sub.add_parser("dual", help="apply a duality to a named sequent")
    p.add_argument("file")
    p.add_argument("--name", required=True)
    p.add_argument("--duality", required=True, choices=("perp", "top"))
    _add_config_flags(p)

    p = sub.add_parser("search", help="bounded proof search for a named sequent")
    p.add_argument("file")
    p.add_argument("--name", required=True)
    p.add_argument("--depth", type=int, default=None)
    p.add_argument("--max-depth", type=int, default=None)
    p.add_argument("--expect-proof", action="store_true", dest="expect_proof",
                   help="fail loudly when nothing is found (the default)")
    p.add_argument("--report-only", action="store_true",
                   help="exit 0 even when nothing is found")
    _add_config_flags(p)

    p = sub.add_parser("corpus", help="run the regression corpus")
    _add_config_flags(p)

    p = sub.add_parser("qstate", help="the logical image of a qubit state")
    p.add_argument("file", help='JSON: {"alpha": .., "beta": .., "phi": ..}')
    _add_config_flags(p)

    p = sub.add_parser("bell", help="print a correlated two-particle state")
    p.add_argument("--phase", required=True, choices=("plus", "minus"))
    p.add_argument("--correlation", required=True,
                   choices=("identical", "opposite"))
    _add_config_flags(p)

    p = sub.add_parser("guard", help="check a domain's license consistency")
    p.add_argument("domain")
    _add_config_flags(p)
    return ap


def _cmd_check(args) -> int:
    sc = _load_script(args.file)
    reg = sc.registry()
    cfg = _merge_config(sc, args)
    results = {}
    ok = True
    for name, proof in sc.proofs.items():
        rep = check_proof(proof, cfg, reg)
        results[name] = rep.to_json()
        ok &= rep.ok
    lines = [f"{name}: {'ok' if r['ok'] else 'FAIL'}"
             for name, r in results.items()]
    _emit(args, {"schema": 1, "ok": ok, "proofs": results}, "\n".join(lines))
    return 0 if ok else 1


def _cmd_sym(args) -> int:
    sc = _load_script(args.file)
    reg = sc.registry()
    cfg = _merge_config(sc, args)
    if args.name not in sc.proofs:
        _err(f"no proof named {args.name!r}")
        return 2
    inv = _INVS.get(args.involution)
    if inv is None:
        inv = LiteralInvolution(args.involution)
    sym = symmetrize_proof(sc.proofs[args.name], inv, cfg, reg)
    rep = check_proof(sym, cfg, reg)
    _emit(args, {"schema": 1, "ok": rep.ok, "proof": proof_to_json(sym)},
          print_proof(sym))
    return 0 if rep.ok else 1


def _cmd_dual(args) -> int:
    sc = _load_script(args.file)
    target = sc.sequents.get(args.name)
    if target is None:
        _err(f"no sequent named {args.name!r}")
        return 2

    def on_slot(slot):
        if isinstance(slot, Single):
            return Single(apply_duality(slot.formula, args.duality))
        return CorrPair(apply_duality(slot.a, args.duality), slot.tag,
                        apply_duality(slot.b, args.duality))

    out = Sequent(tuple(on_slot(s) for s in target.left),
                  tuple(on_slot(s) for s in target.right))
    _emit(args, {"schema": 1, "sequent": print_sequent(out)},
          print_sequent(out))
    return 0


def _depth_default() -> int:
    env = os.environ.get("SYMLOG_DEPTH")
    if env is not None:
        return int(env)
    return DEFAULT_MAX_DEPTH


def _cmd_search(args) -> int:
    sc = _load_script(args.file)
    reg = sc.registry()
    cfg = _merge_config(sc, args)
    goal = sc.sequents.get(args.name)
    if goal is None:
        _err(f"no sequent named {args.name!r}")
        return 2
    depth = args.depth if args.depth is not None else _depth_default()
    max_depth = args.max_depth if args.max_depth is not None \
        else max(depth, DEFAULT_MAX_DEPTH)
    out = search_proof(goal, cfg, reg, depth=depth, max_depth=max_depth)
    text = f"{out.status} (depth {out.depth})"
    if out.found:
        text += "\n" + print_proof(out.proof)
    _emit(args, out.to_json(), text)
    if out.found:
        return 0
    return 0 if args.report_only else 1


def _cmd_corpus(args) -> int:
    results = run_corpus()
    ok = all(r.ok for r in results)
    lines = [f"{r.item:4} {'pass' if r.ok else 'FAIL'} [{r.expectation}] "
             f"{r.title}: {r.detail}" for r in results]
    payload = {"schema": 1, "ok": ok,
               "items": [{"id": r.item, "title": r.title,
                          "expectation": r.expectation, "ok": r.ok,
                          "detail": r.detail} for r in results]}
    _emit(args, payload, "\n".join(lines))
    return 0 if ok else 1


def _cmd_qstate(args) -> int:
    with open(args.file, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    q = Qubit.from_amplitudes([
        complex(data["alpha"]),
        complex(data["beta"]) * complex(
            __import__("cmath").exp(1j * float(data.get("phi", 0.0)))),
    ])
    reg = standard_registry()
    rec = measurement_domain(q)
    state = state_formula(q, reg)
    after = collapse(q)
    payload = {"schema": 1, "domain": rec.name,
               "entries": [f"{e.label}@{e.prob}" for e in rec.entries],
               "focused": rec.focused,
               "state": print_formula(state),
               "collapse": print_formula(after)}
    text = (f"domain {rec.name} = {{ {', '.join(payload['entries'])} }}"
            f"{' focused' if rec.focused else ''}\n"
            f"state:    {payload['state']}\n"
            f"collapse: {payload['collapse']}")
    _emit(args, payload, text)
    return 0


def _cmd_bell(args) -> int:
    tag = IDENTICAL if args.correlation == "identical" else OPPOSITE
    f = bell_formula(BellState(args.phase, tag))
    text = f"({print_formula(f)})"
    _emit(args, {"schema": 1, "formula": text}, text)
    return 0


def _cmd_guard(args) -> int:
    reg = standard_registry(collapse_demo=args.collapse_demo)
    status, proofs = reg.consistency_guard(args.domain)
    payload = {"schema": 1, "status": status,
               "proofs": [print_sequent(p.conclusion) for p in (proofs or [])]}
    text = status if not proofs else \
        status + "\n" + "\n".join(payload["proofs"])
    _emit(args, payload, text)
    return 0


_COMMANDS = {
    "check": _cmd_check, "sym": _cmd_sym, "dual": _cmd_dual,
    "search": _cmd_search, "corpus": _cmd_corpus, "qstate": _cmd_qstate,
    "bell": _cmd_bell, "guard": _cmd_guard,
}


def main(argv=None) -> int:
    ap = _build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code not in (0, None) else 0
    try:
        return _COMMANDS[args.command](args)
    except (ParseError, RegistryError, RuleError, KernelError,
            NonDyadicProbability, UnclassifiedLiteral, ValueError,
            OSError, json.JSONDecodeError) as e:
        _err(str(e))
        return 2


if __name__ == "__main__":
    sys.exit(main())
