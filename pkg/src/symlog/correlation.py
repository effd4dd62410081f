"""The indexed comma: second-order conversion, the correlation connective's
definitory steps, and the parallel distribution of the universal
quantifier over correlated pairs.

Conversion trades a correlated pair of right-hand formulas for a single
formula plus an index relation on the left; it degenerates to plain
idempotent contraction when the two slot formulas coincide.  The
distribution equality holds over virtual singletons only: the forward
proof runs through conversion and quantifier formation, and the converse
is the symmetric image of the forward proof for the swapped pair, relying
on the direction-insensitivity of quantifiers over such domains.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .domains import Registry
from .dualities import LiteralInvolution
from .formulas import (
    CorrPair, CorrelationTag, Formula, IndexRel, Join, Member, Sequent,
    Single, Slot, Var, formula_equal, formula_index, free_vars, reindex,
    replace_var,
)
from .kernel import ProofNode, annotate, mk, symmetrize_proof
from .rules import CalculusConfig, RuleError

__all__ = ["ConversionStep", "convert", "join_step", "distribute_forall"]


@dataclass(frozen=True)
class ConversionStep:
    """One second-order conversion: ``to_relation`` replaces the pair at
    ``slot`` by its first component and appends the index relation on the
    left; ``to_comma`` is the exact inverse.  ``introduced`` is None for
    the degenerate idempotency case (two identical slot formulas)."""

    direction: str  # "to_relation" | "to_comma"
    slot: int
    introduced: Optional[IndexRel] = None

    def __post_init__(self):
        if self.direction not in ("to_relation", "to_comma"):
            raise ValueError(f"unknown direction: {self.direction}")


def _pair_relation(slot: CorrPair) -> Optional[IndexRel]:
    i, j = formula_index(slot.a), formula_index(slot.b)
    if i is None or j is None:
        return None
    return IndexRel(i, slot.tag, j)


def convert(s: Sequent, step: ConversionStep) -> Sequent:
    """Apply one second-order conversion to a sequent."""
    if step.direction == "to_relation":
        if not (0 <= step.slot < len(s.right)):
            raise RuleError("SlotMismatch", f"no right slot {step.slot}")
        slot = s.right[step.slot]
        if isinstance(slot, CorrPair):
            rel = _pair_relation(slot)
            if rel is None:
                if not formula_equal(slot.a, slot.b):
                    raise RuleError("SlotMismatch",
                                    "unindexed pair components must coincide")
                return Sequent(s.left, s.right[:step.slot]
                               + (Single(slot.a),) + s.right[step.slot + 1:])
            if step.introduced is not None and step.introduced != rel:
                raise RuleError("SlotMismatch",
                                f"the pair introduces {rel}, not {step.introduced}")
            if not formula_equal(slot.b, reindex(slot.a, rel.i, rel.j)):
                raise RuleError("SlotMismatch",
                                "pair components must agree up to their index")
            return Sequent(s.left + (Single(rel),),
                           s.right[:step.slot] + (Single(slot.a),)
                           + s.right[step.slot + 1:])
        # plain idempotency: two adjacent identical slots collapse
        if (step.slot + 1 < len(s.right)
                and isinstance(slot, Single)
                and s.right[step.slot + 1] == slot):
            return Sequent(s.left,
                           s.right[:step.slot + 1] + s.right[step.slot + 2:])
        raise RuleError("SlotMismatch",
                        f"right slot {step.slot} is not convertible")
    # to_comma
    if not (0 <= step.slot < len(s.right)) \
            or not isinstance(s.right[step.slot], Single):
        raise RuleError("SlotMismatch", f"no single right slot {step.slot}")
    a = s.right[step.slot].formula
    if step.introduced is None:
        return Sequent(s.left, s.right[:step.slot + 1]
                       + (Single(a),) + s.right[step.slot + 1:])
    rel = step.introduced
    try:
        relpos = s.left.index(Single(rel))
    except ValueError:
        raise RuleError("SlotMismatch",
                        f"the relation {rel} is not in the left context") from None
    if formula_index(a) != rel.i:
        raise RuleError("SlotMismatch",
                        "the target formula must carry the relation's first index")
    pair = CorrPair(a, rel.tag, reindex(a, rel.i, rel.j))
    return Sequent(s.left[:relpos] + s.left[relpos + 1:],
                   s.right[:step.slot] + (pair,) + s.right[step.slot + 1:])


def join_step(s: Sequent, pos: int, direction: str,
              registry: Registry) -> Sequent:
    """The correlation connective's definitory step at a right slot.

    ``intro`` turns a correlated pair into the connective; ``elim`` undoes
    it.  A virtual-singleton membership must stand in the left context.
    """
    ok = any(isinstance(sl, Single) and isinstance(sl.formula, Member)
             and sl.formula.domain in registry
             and registry.get(sl.formula.domain).virtual_singleton
             for sl in s.left)
    if not ok:
        raise RuleError("NotVirtualSingleton",
                        "the step needs a virtual-singleton membership on the left")
    if not (0 <= pos < len(s.right)):
        raise RuleError("SlotMismatch", f"no right slot {pos}")
    slot = s.right[pos]
    if direction == "intro":
        if not isinstance(slot, CorrPair):
            raise RuleError("SlotMismatch", "intro expects a correlated pair")
        new: Slot = Single(Join(slot.tag, slot.a, slot.b))
    elif direction == "elim":
        if not (isinstance(slot, Single) and isinstance(slot.formula, Join)):
            raise RuleError("SlotMismatch", "elim expects a join formula")
        f = slot.formula
        new = CorrPair(f.a, f.tag, f.b)
    else:
        raise ValueError(f"unknown direction: {direction}")
    return Sequent(s.left, s.right[:pos] + (new,) + s.right[pos + 1:])


# --------------------------------------------------------------------------
# the distribution equality over virtual singletons

def _build_forward(dom: str, a1: Formula, a2: Formula, tag: CorrelationTag,
                   var: Var, cfg: CalculusConfig,
                   registry: Registry) -> ProofNode:
    z = _fresh(var, a1, a2)
    a1z, a2z = replace_var(a1, var, z), replace_var(a2, var, z)
    inst = Join(tag, a1z, a2z)
    f1 = mk("id", {"a": Member(z, dom)})
    f2 = mk("id", {"a": inst})
    f3 = mk("forall_r", {"pos": 0, "term": z, "var": var, "domain": dom,
                         "body": Join(tag, a1, a2)}, f1, f2)
    f4 = mk("join_elim", {"qpos": 0}, f3)
    f5 = mk("conv_pair_elim", {"qpos": 0}, f4)
    f6 = mk("forall_f", {"var": z, "domain": dom, "mpos": 1, "qpos": 0}, f5)
    f7 = mk("conv_pair_intro", {"qpos": 0, "relpos": 1}, f6)
    f8 = mk("join_intro", {"qpos": 0}, f7)
    return annotate(f8, cfg, registry)


def _fresh(var: Var, a1: Formula, a2: Formula) -> Var:
    used = {v.name for v in free_vars(a1) | free_vars(a2)} | {var.name}
    name = "z"
    k = 0
    while name in used:
        name = f"z{k}"
        k += 1
    return Var(name)


def distribute_forall(dom: str, a1: Formula, a2: Formula, tag: CorrelationTag,
                      cfg: CalculusConfig, registry: Registry,
                      var: Var = Var("x")) -> tuple:
    """Checked proofs of both directions of the distribution equality

        forall x in dom . (a1 join a2)  =  (forall x . a1) join (forall x . a2)

    for a virtual singleton.  ``a1`` and ``a2`` must agree up to their
    (distinct) indexes.  The converse direction is the symmetric proof of
    the forward direction for the swapped pair.
    """
    rec = registry.get(dom)
    if not rec.virtual_singleton:
        raise RuleError("NotVirtualSingleton",
                        f"the distribution equality needs a virtual singleton, "
                        f"got {dom}")
    i, j = formula_index(a1), formula_index(a2)
    if i is None or j is None or i == j:
        raise RuleError("SideConditionViolated",
                        "components need distinct unique indexes")
    if not formula_equal(a2, reindex(a1, i, j)):
        raise RuleError("SideConditionViolated",
                        "components must agree up to their index")
    forward = _build_forward(dom, a1, a2, tag, var, cfg, registry)
    swapped = _build_forward(dom, a2, a1, tag, var, cfg, registry)
    inv = _converse_involution(dom, registry)
    converse = symmetrize_proof(swapped, inv, cfg, registry)
    return forward, converse


def _converse_involution(dom: str, registry: Registry) -> LiteralInvolution:
    rec = registry.get(dom)
    dual = rec.duality or "d"
    table = dict(registry.duality_tables.get(dual, {}))
    self_dual = {dom}
    mapped = table.get(dom)
    if mapped is not None:
        self_dual.add(mapped)
    return LiteralInvolution(dual, domain_table=table,
                             self_dual_domains=frozenset(self_dual))
