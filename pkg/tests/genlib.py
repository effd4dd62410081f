"""Deterministic random generators shared by the property tests."""
from __future__ import annotations

import math
import random
from fractions import Fraction

from symlog.domains import Registry, standard_registry
from symlog.formulas import (
    And, Atom, DualMember, Eq, Excl, Exists, Forall, Formula, IConst,
    IDENTICAL, Imp, IndexRel, Join, Member, Neq, OPPOSITE, Or, Outcome, Par,
    Single, Times, Var,
)
from symlog.kernel import ProofNode, annotate, mk
from symlog.qubits import Qubit
from symlog.rules import CalculusConfig, RuleContext, RuleError, validate_rule

_DOMAINS = ("D", "Ddown", "Dup", "Dplus", "Dminus", "V")
_VARS = tuple(Var(n) for n in ("z", "y", "w", "v"))
_OUTCOMES = (Outcome("t1", Fraction(1, 2)), Outcome("t2", Fraction(1, 2)),
             Outcome("down", Fraction(1)), Outcome("up", Fraction(1)))


def random_term(rng: random.Random):
    return rng.choice(_VARS + _OUTCOMES)


def random_formula(rng: random.Random, depth: int = 4,
                   dual_tag: str = "identity") -> Formula:
    """A random formula whose dual-membership tags all match ``dual_tag``,
    so the symmetry map with that tag is involutive on it."""
    if depth <= 0:
        kind = rng.randrange(7)
        if kind == 0:
            return Atom(rng.choice("pqr"), None,
                        tuple(random_term(rng)
                              for _ in range(rng.randrange(2))))
        if kind == 1:
            idx = IConst(rng.choice((1, 2)))
            return Atom("A", idx, (random_term(rng),))
        if kind == 2:
            return Member(random_term(rng), rng.choice(_DOMAINS))
        if kind == 3:
            return DualMember(random_term(rng), rng.choice(_DOMAINS), dual_tag)
        if kind == 4:
            return Eq(random_term(rng), random_term(rng))
        if kind == 5:
            return Neq(random_term(rng), random_term(rng))
        return IndexRel(IConst(1), rng.choice((IDENTICAL, OPPOSITE)), IConst(2))
    kind = rng.randrange(9)
    sub = lambda: random_formula(rng, depth - rng.randrange(1, 3), dual_tag)
    if kind < 6:
        ctor = (And, Or, Times, Par, Imp, Excl)[kind]
        return ctor(sub(), sub())
    if kind == 6:
        a = Atom("A", IConst(1), (rng.choice(_VARS),))
        b = Atom("A", IConst(2), a.args)
        return Join(rng.choice((IDENTICAL, OPPOSITE)), a, b)
    v = rng.choice(_VARS)
    ctor = Forall if kind == 7 else Exists
    return ctor(v, rng.choice(_DOMAINS), sub())


def random_qubit(rng: random.Random) -> Qubit:
    a2 = rng.random()
    return Qubit(math.sqrt(a2), math.sqrt(1 - a2), rng.uniform(0, 2 * math.pi))


# --------------------------------------------------------------------------
# random checkable proofs

def proof_context():
    reg = standard_registry()
    cfg = CalculusConfig(
        left_contexts=True, right_contexts=True, weakening=True, cut=True,
        substitution_domains=frozenset({"D", "Ddown", "Dup"}),
        d_axiom_domains=frozenset({("Dplus", "top"), ("Dminus", "top"),
                                   ("V", "d"), ("Ddown", "neq"),
                                   ("Dup", "neq")}))
    return cfg, reg


def _leaf(rng: random.Random, ctx: RuleContext) -> ProofNode:
    kind = rng.randrange(6)
    if kind == 0:
        return mk("refl", {"t": random_term(rng)})
    if kind == 1:
        dom = rng.choice(_DOMAINS)
        rec = ctx.registry.get(dom)
        return mk("member", {"domain": dom, "term": rng.choice(rec.entries)})
    if kind == 2:
        dom = rng.choice(_DOMAINS)
        return mk("dual_exclusion", {"domain": dom, "var": rng.choice(_VARS),
                                     "dual": "identity"})
    if kind == 3:
        dom = rng.choice(_DOMAINS)
        return mk("dual_em", {"domain": dom, "var": rng.choice(_VARS),
                              "dual": "identity"})
    if kind == 4:
        return mk("neq_refl", {"t": random_term(rng)})
    return mk("id", {"a": random_formula(rng, rng.randrange(3))})


def _grow(rng: random.Random, node: ProofNode, ctx: RuleContext) -> ProofNode:
    """One random downward step; returns the same node when the chosen
    rule does not apply."""
    s = node.conclusion
    nl, nr = len(s.left), len(s.right)
    singles_l = [i for i, sl in enumerate(s.left) if isinstance(sl, Single)]
    singles_r = [i for i, sl in enumerate(s.right) if isinstance(sl, Single)]
    moves = []
    other = lambda: random_formula(rng, rng.randrange(2))
    if singles_l:
        pos = rng.choice(singles_l)
        moves += [("and_l1", {"pos": pos, "other": other()}, ()),
                  ("and_l2", {"pos": pos, "other": other()}, ())]
    if singles_r:
        pos = rng.choice(singles_r)
        moves += [("or_r1", {"pos": pos, "other": other()}, ()),
                  ("or_r2", {"pos": pos, "other": other()}, ())]
    moves += [("weak_l", {"pos": rng.randrange(nl + 1), "formula": other()}, ()),
              ("weak_r", {"pos": rng.randrange(nr + 1), "formula": other()}, ())]
    if singles_r:
        moves.append(("expand_r", {"pos": rng.choice(singles_r)}, ()))
    if nr >= 2 and singles_r and rng.random() < 0.5:
        pos = rng.choice(singles_r[:-1]) if singles_r[:-1] else 0
        moves.append(("par_r", {"pos": pos}, ()))
    if nl >= 2 and singles_l and rng.random() < 0.5:
        pos = rng.choice(singles_l[:-1]) if singles_l[:-1] else 0
        moves.append(("times_l", {"pos": pos}, ()))
    if nl >= 1 and nr >= 1:
        moves.append(("imp_r", {}, ()))
    if singles_r:
        moves.append(("and_r", {"pos": rng.choice(singles_r)}, (node,)))
    if singles_l:
        moves.append(("or_l", {"pos": rng.choice(singles_l)}, (node,)))
    rng.shuffle(moves)
    for rule, params, extra in moves:
        premises = (node,) + extra
        try:
            concl = validate_rule(rule, params,
                                  [p.conclusion for p in premises], None, ctx)
        except RuleError:
            continue
        return ProofNode(rule, params, premises, concl)
    return node


def random_proof(rng: random.Random, cfg: CalculusConfig, registry: Registry,
                 max_depth: int = 6) -> ProofNode:
    """A random proof of depth at most ``max_depth`` that the checker
    accepts, built by growing downward from a random axiom."""
    ctx = RuleContext(cfg, registry)
    while True:
        try:
            node = annotate(_leaf(rng, ctx), cfg, registry)
        except RuleError:
            continue
        break
    for _ in range(rng.randrange(max_depth)):
        node = _grow(rng, node, ctx)
    return node
