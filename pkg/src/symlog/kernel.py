"""The trusted checker: proof trees, validation, symmetrization, macros.

A proof is a tree of rule applications checked bottom-up: every node's
conclusion is reconstructed from its premises and parameters and compared
with the claimed conclusion when one is present.  The symmetry theorem is
implemented as a proof transformation: each rule is replaced by its mate,
premise order is reversed, and slot positions are mirrored, so that the
transformed tree proves the symmetric sequent and passes the checker
unchanged.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Optional

from .domains import Registry
from .dualities import LiteralInvolution, symmetrize_formula, symmetrize_sequent
from .formulas import (
    Eq, Formula, Outcome, Sequent, Term, Var, free_vars, replace_var,
)
from .rules import (
    MACRO_RULES, CalculusConfig, RuleContext, RuleError, validate_rule,
)

__all__ = [
    "ProofNode", "CheckFailure", "CheckReport", "KernelError",
    "NotSymmetricConfig", "mk", "check_proof", "annotate", "proof_equal",
    "symmetrize_proof", "expand_derived", "proof_to_json", "proof_from_json",
    "build_forall_to_exists", "build_exists_to_forall", "build_refl_proof",
    "build_collapse_proof", "collapse_config",
]


class KernelError(Exception):
    pass


class NotSymmetricConfig(KernelError):
    pass


@dataclass(frozen=True)
class ProofNode:
    rule: str
    params: dict
    premises: tuple = ()
    conclusion: Optional[Sequent] = None

    def __post_init__(self):
        object.__setattr__(self, "premises", tuple(self.premises))


def mk(rule: str, params: Optional[dict] = None, *premises: ProofNode,
       conclusion: Optional[Sequent] = None) -> ProofNode:
    return ProofNode(rule, dict(params or {}), tuple(premises), conclusion)


def proof_equal(a: ProofNode, b: ProofNode) -> bool:
    return (a.rule == b.rule and a.params == b.params
            and a.conclusion == b.conclusion
            and len(a.premises) == len(b.premises)
            and all(proof_equal(x, y) for x, y in zip(a.premises, b.premises)))


# --------------------------------------------------------------------------
# checking

@dataclass(frozen=True)
class CheckFailure:
    path: tuple
    rule: str
    reason: str

    def to_json(self):
        return {"path": list(self.path), "rule": self.rule, "reason": self.reason}


@dataclass
class CheckReport:
    ok: bool
    failures: list
    stats: dict

    def to_json(self) -> dict:
        return {
            "schema": 1,
            "ok": self.ok,
            "failures": [f.to_json() for f in self.failures],
            "stats": self.stats,
        }


def _collect_stats(p: ProofNode, stats: dict) -> None:
    stats["nodes"] += 1
    stats["rules"][p.rule] += 1
    if p.rule in ("subst", "eq_left_elim", "neq_right_elim"):
        dom = p.params.get("domain")
        if dom is not None:
            stats["subst_domains"][dom] += 1
    if p.rule == "d_axiom":
        stats["d_axiom_pairs"][f"{p.params['domain']}:{p.params['dual']}"] += 1
    for q in p.premises:
        _collect_stats(q, stats)


def check_proof(p: ProofNode, cfg: CalculusConfig, registry: Registry) -> CheckReport:
    """Validate every node of a proof tree; never raises on bad proofs."""
    cfg.check_licenses(registry)
    ctx = RuleContext(cfg, registry)
    failures: list = []

    def go(node: ProofNode, path: tuple) -> Optional[Sequent]:
        concls = []
        for k, prem in enumerate(node.premises):
            concls.append(go(prem, path + (k,)))
        if any(c is None for c in concls):
            return None
        try:
            return validate_rule(node.rule, node.params, concls,
                                 node.conclusion, ctx)
        except RuleError as e:
            failures.append(CheckFailure(path, node.rule, str(e)))
            return None

    go(p, ())
    stats = {"nodes": 0, "rules": Counter(), "subst_domains": Counter(),
             "d_axiom_pairs": Counter()}
    _collect_stats(p, stats)
    stats = {"nodes": stats["nodes"],
             "rules": dict(sorted(stats["rules"].items())),
             "subst_domains": dict(sorted(stats["subst_domains"].items())),
             "d_axiom_pairs": dict(sorted(stats["d_axiom_pairs"].items()))}
    return CheckReport(ok=not failures, failures=failures, stats=stats)


def annotate(p: ProofNode, cfg: CalculusConfig, registry: Registry) -> ProofNode:
    """Fill in every node's conclusion, raising on the first bad node."""
    ctx = RuleContext(cfg, registry)

    def go(node: ProofNode) -> ProofNode:
        prems = tuple(go(q) for q in node.premises)
        concl = validate_rule(node.rule, node.params,
                              [q.conclusion for q in prems],
                              node.conclusion, ctx)
        return ProofNode(node.rule, dict(node.params), prems, concl)

    return go(p)


# --------------------------------------------------------------------------
# serialization (the JSON machine format; the script surface lives in
# symlog.scripts)

def proof_to_json(p: ProofNode) -> dict:
    from .scripts import print_param, print_sequent
    return {
        "rule": p.rule,
        "params": {k: print_param(v) for k, v in p.params.items()},
        "conclusion": print_sequent(p.conclusion) if p.conclusion else None,
        "premises": [proof_to_json(q) for q in p.premises],
    }


def proof_from_json(obj: dict) -> ProofNode:
    from .scripts import parse_param, parse_sequent
    return ProofNode(
        obj["rule"],
        {k: parse_param(v, key=k) for k, v in obj.get("params", {}).items()},
        tuple(proof_from_json(q) for q in obj.get("premises", [])),
        parse_sequent(obj["conclusion"]) if obj.get("conclusion") else None,
    )


# --------------------------------------------------------------------------
# the symmetry transformation

def _sterm(t: Term, inv: LiteralInvolution) -> Term:
    if isinstance(t, Outcome):
        return Outcome(inv.swap_label(t.label), t.prob)
    return t


def symmetrize_proof(p: ProofNode, inv: LiteralInvolution,
                     cfg: CalculusConfig, registry: Registry) -> ProofNode:
    """Transform a checked proof into the proof of its symmetric sequent.

    Requires a symmetric configuration: the theorem trades left and right
    context liberalizations, so they must agree.
    """
    if cfg.left_contexts != cfg.right_contexts:
        raise NotSymmetricConfig(
            "proof symmetrization needs matching left/right context flags")
    node = annotate(p, cfg, registry)
    return _sym_node(node, inv)


def _sym_node(n: ProofNode, inv: LiteralInvolution) -> ProofNode:
    name, params, order = _mirror(n, inv)
    prems = tuple(_sym_node(n.premises[k], inv) for k in order)
    return ProofNode(name, params, prems, symmetrize_sequent(n.conclusion, inv))


def _mirror(n: ProofNode, inv: LiteralInvolution):
    """The rule-pairing table: mate name, mirrored params, premise order."""
    P = n.params
    sf = lambda f: symmetrize_formula(f, inv)
    st = lambda t: _sterm(t, inv)
    prem = n.premises
    keep = tuple(range(len(prem)))
    swap = tuple(reversed(keep))

    def plen(k: int, side: str) -> int:
        s = prem[k].conclusion
        return len(s.left if side == "l" else s.right)

    r = n.rule
    if r == "id":
        return "id", {"a": sf(P["a"])}, keep
    if r == "refl":
        return "neq_refl", {"t": st(P["t"])}, keep
    if r == "neq_refl":
        return "refl", {"t": st(P["t"])}, keep
    if r == "member":
        return "dual_member_refuted", {"domain": P["domain"],
                                       "term": st(P["term"]),
                                       "dual": inv.name}, keep
    if r == "dual_member_refuted":
        return "member", {"domain": P["domain"], "term": st(P["term"])}, keep
    if r == "dual_exclusion":
        return "dual_em", dict(P), keep
    if r == "dual_em":
        return "dual_exclusion", dict(P), keep
    if r == "focus":
        return "dual_focus", {"domain": P["domain"], "var": P["var"],
                              "dual": inv.name}, keep
    if r == "dual_focus":
        return "focus", {"domain": P["domain"], "var": P["var"]}, keep
    if r == "d_axiom":
        return "d_axiom", {"domain": P["domain"], "dual": P["dual"],
                           "z": P["y"], "y": P["z"], "hole": P["hole"],
                           "body": sf(P["body"])}, keep
    if r == "and_l1":
        return "or_r2", {"pos": plen(0, "l") - 1 - P["pos"],
                         "other": sf(P["other"])}, keep
    if r == "and_l2":
        return "or_r1", {"pos": plen(0, "l") - 1 - P["pos"],
                         "other": sf(P["other"])}, keep
    if r == "or_r1":
        return "and_l2", {"pos": plen(0, "r") - 1 - P["pos"],
                          "other": sf(P["other"])}, keep
    if r == "or_r2":
        return "and_l1", {"pos": plen(0, "r") - 1 - P["pos"],
                          "other": sf(P["other"])}, keep
    if r == "times_l":
        return "par_r", {"pos": plen(0, "l") - 2 - P["pos"]}, keep
    if r == "par_r":
        return "times_l", {"pos": plen(0, "r") - 2 - P["pos"]}, keep
    if r == "imp_r":
        return "excl_l", {}, keep
    if r == "excl_l":
        return "imp_r", {}, keep
    if r in ("forall_f", "exists_f_vsym"):
        # forall_f-shaped: membership on the left, principal on the right
        sd = _self_dual(P, inv)
        mate = ("forall_f_vsym" if sd else "exists_f") if r == "forall_f" \
            else ("exists_f" if sd else "forall_f_vsym")
        dual = "neq" if P.get("as_eq") else inv.name
        return mate, {"var": P["var"], "domain": P["domain"], "dual": dual,
                      "dpos": plen(0, "l") - 1 - P["mpos"],
                      "qpos": plen(0, "r") - 1 - P["qpos"]}, keep
    if r in ("exists_f", "forall_f_vsym"):
        # exists_f-shaped: principal on the left, dual membership on the right
        sd = _self_dual(P, inv)
        mate = ("exists_f_vsym" if sd else "forall_f") if r == "exists_f" \
            else ("forall_f" if sd else "exists_f_vsym")
        out = {"var": P["var"], "domain": P["domain"],
               "mpos": plen(0, "r") - 1 - P["dpos"],
               "qpos": plen(0, "l") - 1 - P["qpos"]}
        if P["dual"] == "neq":
            out["as_eq"] = True
        return mate, out, keep
    if r == "weak_l":
        return "weak_r", {"pos": plen(0, "l") - P["pos"],
                          "formula": sf(P["formula"])}, keep
    if r == "weak_r":
        return "weak_l", {"pos": plen(0, "r") - P["pos"],
                          "formula": sf(P["formula"])}, keep
    if r == "contract_l":
        m = plen(0, "l")
        return "contract_r", {"i": m - 1 - P["j"], "j": m - 1 - P["i"]}, keep
    if r == "contract_r":
        m = plen(0, "r")
        return "contract_l", {"i": m - 1 - P["j"], "j": m - 1 - P["i"]}, keep
    if r == "expand_l":
        return "expand_r", {"pos": plen(0, "l") - 1 - P["pos"]}, keep
    if r == "expand_r":
        return "expand_l", {"pos": plen(0, "r") - 1 - P["pos"]}, keep
    if r == "subst":
        return "subst", {"var": P["var"], "term": st(P["term"]),
                         "domain": P["domain"]}, keep
    if r == "eq_left":
        return "neq_right", {"pos": len(n.conclusion.left) - 1 - P["pos"],
                             "s": st(P["s"]), "t": st(P["t"])}, keep
    if r == "neq_right":
        return "eq_left", {"pos": len(n.conclusion.right) - 1 - P["pos"],
                           "s": st(P["s"]), "t": st(P["t"])}, keep
    if r == "eq_left_elim":
        return "neq_right_elim", {"pos": plen(0, "l") - 1 - P["pos"]}, keep
    if r == "neq_right_elim":
        return "eq_left_elim", {"pos": plen(0, "r") - 1 - P["pos"]}, keep
    if r == "conv_pair_elim":
        return "conv_pair_elim_l", {"qpos": plen(0, "r") - 1 - P["qpos"]}, keep
    if r == "conv_pair_elim_l":
        return "conv_pair_elim", {"qpos": plen(0, "l") - 1 - P["qpos"]}, keep
    if r == "conv_pair_intro":
        return "conv_pair_intro_l", {"qpos": plen(0, "r") - 1 - P["qpos"],
                                     "relpos": plen(0, "l") - 1 - P["relpos"]}, keep
    if r == "conv_pair_intro_l":
        return "conv_pair_intro", {"qpos": plen(0, "l") - 1 - P["qpos"],
                                   "relpos": plen(0, "r") - 1 - P["relpos"]}, keep
    if r in ("join_intro", "join_elim"):
        return r + "_l", {"qpos": plen(0, "r") - 1 - P["qpos"]}, keep
    if r in ("join_intro_l", "join_elim_l"):
        return r[:-2], {"qpos": plen(0, "l") - 1 - P["qpos"]}, keep
    if r == "and_r":
        return "or_l", {"pos": plen(0, "r") - 1 - P["pos"]}, swap
    if r == "or_l":
        return "and_r", {"pos": plen(0, "l") - 1 - P["pos"]}, swap
    if r == "times_r":
        return "par_l", {"pos": plen(0, "r") + plen(1, "r") - 2 - P["pos"],
                         "apos": plen(1, "r") - 1 - P["bpos"],
                         "bpos": plen(0, "r") - 1 - P["apos"]}, swap
    if r == "par_l":
        return "times_r", {"pos": plen(0, "l") + plen(1, "l") - 2 - P["pos"],
                           "apos": plen(1, "l") - 1 - P["bpos"],
                           "bpos": plen(0, "l") - 1 - P["apos"]}, swap
    if r == "imp_l":
        g = plen(0, "l") + plen(1, "l") - 1
        return "excl_r", {"pos": g - P["pos"]}, swap
    if r == "excl_r":
        d = plen(0, "r") - 1 + plen(1, "r")
        return "imp_l", {"pos": d - P["pos"]}, swap
    if r in ("forall_r", "exists_r_vsym"):
        # forall_r-shaped: membership premise first, principal on the left
        sd = _self_dual(P, inv)
        mate = ("forall_r_vsym" if sd else "exists_r") if r == "forall_r" \
            else ("exists_r" if sd else "forall_r_vsym")
        g = plen(0, "l") + plen(1, "l") - 1
        dual = "neq" if P.get("as_eq") else inv.name
        return mate, {"pos": g - P["pos"], "term": st(P["term"]),
                      "var": P["var"], "domain": P["domain"],
                      "body": sf(P["body"]), "dual": dual}, swap
    if r in ("exists_r", "forall_r_vsym"):
        # exists_r-shaped: instance premise first, principal on the right
        sd = _self_dual(P, inv)
        mate = ("exists_r_vsym" if sd else "forall_r") if r == "exists_r" \
            else ("forall_r" if sd else "exists_r_vsym")
        d = plen(0, "r") - 1 + plen(1, "r")
        out = {"pos": d - P["pos"], "term": st(P["term"]), "var": P["var"],
               "domain": P["domain"], "body": sf(P["body"])}
        if P["dual"] == "neq":
            out["as_eq"] = True
        return mate, out, swap
    if r == "cut":
        return "cut", {"rpos": plen(1, "l") - 1 - P["lpos"],
                       "lpos": plen(0, "r") - 1 - P["rpos"]}, swap
    if r == "parallel_forall":
        raise KernelError(
            "symmetrize the expanded form of parallel quantifier steps")
    raise KernelError(f"no symmetric mate for rule {r}")


def _self_dual(params: dict, inv: LiteralInvolution) -> bool:
    return params["domain"] in inv.self_dual_domains


# --------------------------------------------------------------------------
# macro expansion

def expand_derived(p: ProofNode, cfg: CalculusConfig,
                   registry: Registry) -> ProofNode:
    """Rewrite derived (macro) rule applications into base-rule trees.

    The result has the same conclusion and passes the checker.
    """
    node = annotate(p, cfg, registry)
    ctx = RuleContext(cfg, registry)

    def go(n: ProofNode) -> ProofNode:
        prems = tuple(go(q) for q in n.premises)
        n = ProofNode(n.rule, dict(n.params), prems, n.conclusion)
        if n.rule not in MACRO_RULES:
            return n
        return _expand_one(n, ctx)

    return annotate(go(node), cfg, registry)


def _expand_one(n: ProofNode, ctx: RuleContext) -> ProofNode:
    P = n.params
    reg = ctx.registry
    if n.rule == "parallel_forall":
        prem = n.premises[0]
        nleft = len(prem.conclusion.left)
        e1 = mk("conv_pair_elim", {"qpos": P["qpos"]}, prem)
        e2 = mk("forall_f", {"var": P["var"], "domain": P["domain"],
                             "mpos": P["mpos"], "qpos": P["qpos"]}, e1)
        return mk("conv_pair_intro", {"qpos": P["qpos"], "relpos": nleft - 1},
                  e2, conclusion=n.conclusion)
    if n.rule == "forall_f_vsym":
        prem = n.premises[0]
        e1 = mk("exists_f", {"var": P["var"], "domain": P["domain"],
                             "dual": P["dual"], "dpos": P["dpos"],
                             "qpos": P["qpos"]}, prem)
        target = n.conclusion.left[P["qpos"]].formula
        lemma = build_forall_to_exists(ctx, P["domain"], target.var, target.body)
        return mk("cut", {"rpos": 0, "lpos": P["qpos"]}, lemma, e1,
                  conclusion=n.conclusion)
    if n.rule == "exists_f_vsym":
        prem = n.premises[0]
        e1 = mk("forall_f", {"var": P["var"], "domain": P["domain"],
                             "mpos": P["mpos"], "qpos": P["qpos"],
                             "as_eq": P.get("as_eq", False)}, prem)
        target = n.conclusion.right[P["qpos"]].formula
        lemma = build_forall_to_exists(ctx, P["domain"], target.var, target.body)
        return mk("cut", {"rpos": P["qpos"], "lpos": 0}, e1, lemma,
                  conclusion=n.conclusion)
    if n.rule == "forall_r_vsym":
        e1 = mk("exists_r", {"pos": P["pos"], "term": P["term"],
                             "dual": P["dual"], "var": P["var"],
                             "domain": P["domain"], "body": P["body"]},
                *n.premises)
        target = n.conclusion.right[P["pos"]].formula
        lemma = build_exists_to_forall(ctx, P["domain"], target.var, target.body)
        return mk("cut", {"rpos": P["pos"], "lpos": 0}, e1, lemma,
                  conclusion=n.conclusion)
    if n.rule == "exists_r_vsym":
        e1 = mk("forall_r", {"pos": P["pos"], "term": P["term"],
                             "var": P["var"], "domain": P["domain"],
                             "body": P["body"]}, *n.premises)
        target = n.conclusion.left[P["pos"]].formula
        lemma = build_exists_to_forall(ctx, P["domain"], target.var, target.body)
        return mk("cut", {"rpos": 0, "lpos": P["pos"]}, lemma, e1,
                  conclusion=n.conclusion)
    raise KernelError(f"unknown macro: {n.rule}")


# --------------------------------------------------------------------------
# stock derivations

def _fresh_vars(count: int, avoid) -> list:
    names = {v.name for v in avoid}
    out = []
    base = ["z", "y", "x", "v"]
    k = 0
    while len(out) < count:
        cand = base[len(out)] if len(out) < len(base) and base[len(out)] not in names \
            else f"z{k}"
        if cand in names:
            k += 1
            continue
        names.add(cand)
        out.append(Var(cand))
    return out


def build_forall_to_exists(ctx: RuleContext, dom: str, x: Var,
                           body: Formula) -> ProofNode:
    """``forall x in dom . body |- exists x in dom . body`` through the
    domain's declared inhabitant."""
    reg = ctx.registry
    rec = reg.get(dom)
    if not rec.inhabited:
        raise KernelError(f"{dom} has no declared inhabitant")
    w = reg.witness(dom)
    inst = replace_var(body, x, w)
    n1 = mk("member", {"domain": dom, "term": w})
    n2 = mk("id", {"a": inst})
    n3 = mk("forall_r", {"pos": 0, "term": w, "var": x, "domain": dom,
                         "body": body}, n1, n2)
    n4 = mk("dual_member_refuted", {"domain": dom, "term": w, "dual": "d"})
    return mk("exists_r", {"pos": 0, "term": w, "dual": "d", "var": x,
                           "domain": dom, "body": body}, n3, n4)


def build_exists_to_forall(ctx: RuleContext, dom: str, x: Var,
                           body: Formula) -> ProofNode:
    """``exists x in dom . body |- forall x in dom . body`` from the
    domain's licensed d-axiom schema."""
    reg = ctx.registry
    rec = reg.get(dom)
    if rec.duality is None:
        raise KernelError(f"{dom} carries no duality")
    d = rec.duality
    z, y = _fresh_vars(2, free_vars(body) | {x})
    n1 = mk("d_axiom", {"domain": dom, "dual": d, "z": z, "y": y,
                        "hole": x, "body": body})
    n2 = mk("forall_f", {"var": z, "domain": dom, "mpos": 0, "qpos": 0}, n1)
    return mk("exists_f", {"var": y, "domain": dom, "dual": d,
                           "dpos": 1, "qpos": 0}, n2)


def build_refl_proof(u) -> ProofNode:
    return mk("refl", {"t": u})


def collapse_config(registry: Registry, name: str) -> CalculusConfig:
    rec = registry.get(name)
    return CalculusConfig(
        left_contexts=True, right_contexts=True, weakening=True, cut=True,
        substitution_domains=frozenset({name}),
        d_axiom_domains=frozenset({(name, rec.duality or "d")}),
        collapse_demo=True)


def build_collapse_proof(registry: Registry, cfg: CalculusConfig, name: str,
                         b: Outcome, a: Outcome) -> ProofNode:
    """With both licenses on ``name``, derive ``|- b = a`` for entries
    ``b``, ``a``: the domain is provably a singleton."""
    rec = registry.get(name)
    d = rec.duality or "d"
    z, y = Var("z"), Var("y")
    hole = Var("x")
    n1 = mk("d_axiom", {"domain": name, "dual": d, "z": z, "y": y,
                        "hole": hole, "body": Eq(hole, a)})
    n2 = mk("subst", {"var": z, "term": b, "domain": name}, n1)
    n3 = mk("subst", {"var": y, "term": a, "domain": name}, n2)
    n4 = mk("refl", {"t": a})
    n5 = mk("cut", {"rpos": 0, "lpos": 1}, n4, n3)
    n6 = mk("member", {"domain": name, "term": b})
    n7 = mk("cut", {"rpos": 0, "lpos": 0}, n6, n5)
    n8 = mk("dual_member_refuted", {"domain": name, "term": a, "dual": d})
    n9 = mk("cut", {"rpos": 1, "lpos": 0}, n7, n8)
    return annotate(n9, cfg, registry)
