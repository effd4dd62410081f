"""Bounded backward proof search: iterative deepening with memoization.

The search is goal-directed over the analytic fragment of the catalog:
axiom closures, the logical rules read bottom-up, equality replacement,
focus cuts on focused memberships, substitution generalization, and
weakening drops.  It never invents cut formulas beyond the focus cut, so
a negative answer is evidence of underivability within this fragment at
the given depth, not a completeness claim.  Depth counts nodes on the
longest root-to-leaf path.  Given a configuration and a goal the result
is deterministic: moves are enumerated axioms-first, then by principal
slot left-to-right (right side before left), with term candidates in
registry order.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional

from .formulas import (
    And, Atom, CorrPair, DualMember, Eq, Excl, Exists, Forall, Formula, Imp,
    IndexRel, Join, Member, Neq, Or, Par, Sequent, Single, Slot, Term, Times,
    Var, formula_equal, replace_var, sequent_free_vars, slot_equal,
)
from .kernel import ProofNode
from .rules import CalculusConfig, RuleContext, RuleError, validate_rule

__all__ = ["SearchOutcome", "search_proof", "DEFAULT_MAX_DEPTH"]

DEFAULT_MAX_DEPTH = 8


@dataclass
class SearchOutcome:
    proof: Optional[ProofNode]
    depth: int
    bound_hit: bool

    @property
    def found(self) -> bool:
        return self.proof is not None

    @property
    def status(self) -> str:
        if self.found:
            return "proved"
        return "depth-exceeded" if self.bound_hit else "not-found"

    def to_json(self) -> dict:
        from .kernel import proof_to_json
        return {"schema": 1, "status": self.status, "depth": self.depth,
                "proof": proof_to_json(self.proof) if self.proof else None}


def search_proof(goal: Sequent, cfg: CalculusConfig, registry,
                 depth: int = DEFAULT_MAX_DEPTH,
                 max_depth: int = DEFAULT_MAX_DEPTH) -> SearchOutcome:
    if depth > max_depth:
        raise ValueError(f"depth {depth} exceeds the configured maximum "
                         f"{max_depth}")
    engine = _Engine(RuleContext(cfg, registry))
    for d in range(1, depth + 1):
        engine.bound_hit = False
        node = engine.prove(goal, d)
        if node is not None:
            return SearchOutcome(node, d, False)
    return SearchOutcome(None, depth, engine.bound_hit)


class _Engine:
    def __init__(self, ctx: RuleContext):
        self.ctx = ctx
        self.reg = ctx.registry
        self.cfg = ctx.cfg
        self.proved: dict = {}
        self.failed: dict = {}
        self.bound_hit = False

    def prove(self, goal: Sequent, budget: int) -> Optional[ProofNode]:
        key = repr(goal)
        hit = self.proved.get(key)
        if hit is not None:
            return hit
        rec = self.failed.get(key)
        if rec is not None and rec[0] >= budget:
            if rec[1]:
                self.bound_hit = True
            return None
        if budget <= 0:
            self.bound_hit = True
            return None
        outer_hit = self.bound_hit
        self.bound_hit = False
        for rule, params, subgoals in self._moves(goal):
            prems = []
            for sub in subgoals:
                node = self.prove(sub, budget - 1)
                if node is None:
                    break
                prems.append(node)
            else:
                node = self._apply(rule, params, prems, goal)
                if node is not None:
                    self.proved[key] = node
                    self.bound_hit = outer_hit or self.bound_hit
                    return node
        local_hit = self.bound_hit
        self.bound_hit = outer_hit or local_hit
        if rec is None or rec[0] < budget:
            self.failed[key] = (budget, local_hit)
        return None

    def _apply(self, rule: str, params: dict, prems: list,
               goal: Sequent) -> Optional[ProofNode]:
        try:
            concl = validate_rule(rule, params,
                                  [p.conclusion for p in prems], goal, self.ctx)
        except RuleError:
            return None
        return ProofNode(rule, params, tuple(prems), concl)

    def _axiom(self, rule: str, params: dict, goal: Sequent):
        if self._apply(rule, params, [], goal) is not None:
            yield rule, params, ()

    # -- move enumeration ----------------------------------------------------

    def _moves(self, goal: Sequent) -> Iterator:
        yield from self._axiom_moves(goal)
        yield from self._right_moves(goal)
        yield from self._left_moves(goal)
        yield from self._subst_moves(goal)
        yield from self._weakening_moves(goal)

    def _axiom_moves(self, goal: Sequent) -> Iterator:
        nl, nr = len(goal.left), len(goal.right)
        if nl == 1 and nr == 1 and isinstance(goal.left[0], Single) \
                and slot_equal(goal.left[0], goal.right[0]):
            yield from self._axiom("id", {"a": goal.left[0].formula}, goal)
        if nl == 0 and nr == 1 and isinstance(goal.right[0], Single):
            f = goal.right[0].formula
            if isinstance(f, Eq) and f.lhs == f.rhs:
                yield from self._axiom("refl", {"t": f.lhs}, goal)
            if isinstance(f, Member):
                yield from self._axiom(
                    "member", {"domain": f.domain, "term": f.term}, goal)
        if nl == 1 and nr == 0 and isinstance(goal.left[0], Single):
            f = goal.left[0].formula
            if isinstance(f, Neq) and f.lhs == f.rhs:
                yield from self._axiom("neq_refl", {"t": f.lhs}, goal)
            for dom, t, d in self._dual_member_candidates(f):
                yield from self._axiom(
                    "dual_member_refuted",
                    {"domain": dom, "term": t, "dual": d}, goal)
        if nl == 2 and nr == 0:
            yield from self._exclusion_like(goal, "dual_exclusion", goal.left[0])
        if nl == 0 and nr == 2:
            yield from self._exclusion_like(goal, "dual_em", goal.right[0])
        if nl == 1 and nr == 1 and isinstance(goal.left[0], Single):
            f = goal.left[0].formula
            if isinstance(f, Member) and isinstance(f.term, Var) \
                    and f.domain in self.reg:
                rec = self.reg.get(f.domain)
                if rec.focused and rec.entries:
                    yield from self._axiom(
                        "focus", {"domain": f.domain, "var": f.term}, goal)
        yield from self._d_axiom_moves(goal)

    def _dual_member_candidates(self, f: Formula):
        if isinstance(f, DualMember):
            yield f.domain, f.term, f.dual
            return
        if isinstance(f, Member):
            for d in sorted(self.reg.duality_tables):
                for dom, mapped in self.reg.duality_tables[d].items():
                    if mapped == f.domain:
                        yield dom, f.term, d
        if isinstance(f, Neq):
            for dom in self.reg.names():
                rec = self.reg.get(dom)
                if rec.is_singleton and rec.entries[0] == f.rhs:
                    yield dom, f.lhs, "neq"

    def _exclusion_like(self, goal: Sequent, rule: str, first: Slot):
        if not isinstance(first, Single):
            return
        f = first.formula
        if not (isinstance(f, Member) and isinstance(f.term, Var)):
            return
        for d in self._tags_for(f.domain):
            yield from self._axiom(
                rule, {"domain": f.domain, "var": f.term, "dual": d}, goal)

    def _tags_for(self, dom: str) -> list:
        tags = []
        if dom in self.reg and self.reg.get(dom).duality:
            tags.append(self.reg.get(dom).duality)
        for d in sorted(self.reg.duality_tables):
            if d not in tags:
                tags.append(d)
        for d in ("d", "neq"):
            if d not in tags:
                tags.append(d)
        return tags

    def _d_axiom_moves(self, goal: Sequent) -> Iterator:
        if len(goal.left) != 2 or len(goal.right) != 2:
            return
        if not all(isinstance(s, Single) for s in goal.left + goal.right):
            return
        memb, a_y = goal.left[0].formula, goal.left[1].formula
        a_z, dual = goal.right[0].formula, goal.right[1].formula
        for dom, d in sorted(self.cfg.d_axiom_domains):
            if dom not in self.reg:
                continue
            rec = self.reg.get(dom)
            if rec.virtual_singleton:
                if not (isinstance(memb, Member) and memb.domain == dom
                        and isinstance(memb.term, Var)):
                    continue
                z = memb.term
                y = self._dual_term(dual, dom, d)
            elif rec.is_singleton:
                u = rec.entries[0]
                if not (isinstance(memb, Eq) and memb.rhs == u
                        and isinstance(memb.lhs, Var)):
                    continue
                z = memb.lhs
                y = dual.lhs if isinstance(dual, Neq) and dual.rhs == u else None
            else:
                continue
            if not isinstance(y, Var) or y == z:
                continue
            hole = _fresh_var("h", sequent_free_vars(goal))
            body = replace_var(a_z, z, hole)
            if formula_equal(replace_var(body, hole, y), a_y):
                yield from self._axiom(
                    "d_axiom", {"domain": dom, "dual": d, "z": z, "y": y,
                                "hole": hole, "body": body}, goal)

    def _dual_term(self, dual: Formula, dom: str, d: str):
        if isinstance(dual, DualMember) and dual.domain == dom and dual.dual == d:
            return dual.term
        if isinstance(dual, Member) and self.reg.dual_domain(d, dom) == dual.domain:
            return dual.term
        return None

    # -- principal moves, right side -------------------------------------------

    def _right_moves(self, goal: Sequent) -> Iterator:
        for pos, slot in enumerate(goal.right):
            if isinstance(slot, CorrPair):
                ia, ib = _indexes(slot)
                if ia is not None and ib is not None:
                    rel = IndexRel(ia, slot.tag, ib)
                    prem = Sequent(goal.left + (Single(rel),),
                                   _set_slot_r(goal, pos, Single(slot.a)))
                    yield ("conv_pair_intro",
                           {"qpos": pos, "relpos": len(goal.left)}, (prem,))
                continue
            f = slot.formula
            if isinstance(f, And):
                yield ("and_r", {"pos": pos},
                       (_set_r(goal, pos, f.a), _set_r(goal, pos, f.b)))
            elif isinstance(f, Or):
                yield ("or_r1", {"pos": pos, "other": f.b},
                       (_set_r(goal, pos, f.a),))
                yield ("or_r2", {"pos": pos, "other": f.a},
                       (_set_r(goal, pos, f.b),))
            elif isinstance(f, Par):
                prem = Sequent(goal.left, goal.right[:pos]
                               + (Single(f.a), Single(f.b))
                               + goal.right[pos + 1:])
                yield ("par_r", {"pos": pos}, (prem,))
            elif isinstance(f, Times):
                rest = _drop_r(goal, pos)
                for k in range(len(goal.left) + 1):
                    for j in range(len(rest) + 1):
                        p1 = Sequent(goal.left[:k], (Single(f.a),) + rest[:j])
                        p2 = Sequent(goal.left[k:], (Single(f.b),) + rest[j:])
                        yield ("times_r", {"pos": pos, "apos": 0, "bpos": 0},
                               (p1, p2))
            elif isinstance(f, Imp) and pos == 0:
                prem = Sequent(goal.left + (Single(f.a),),
                               (Single(f.b),) + goal.right[1:])
                yield ("imp_r", {}, (prem,))
            elif isinstance(f, Excl):
                rest = _drop_r(goal, pos)
                for k in range(len(goal.left) + 1):
                    for j in range(len(rest) + 1):
                        q1 = Sequent(goal.left[:k], rest[:j] + (Single(f.a),))
                        q2 = Sequent(goal.left[k:] + (Single(f.b),), rest[j:])
                        yield ("excl_r", {"pos": pos}, (q1, q2))
            elif isinstance(f, Forall):
                z = _pick_var(f, goal)
                inst = replace_var(f.body, f.var, z)
                prem = Sequent(goal.left + (Single(Member(z, f.domain)),),
                               _replace_r(goal, pos, inst))
                yield ("forall_f", {"var": z, "domain": f.domain,
                                    "mpos": len(goal.left), "qpos": pos},
                       (prem,))
                if f.domain in self.reg and self.reg.get(f.domain).is_singleton:
                    u = self.reg.get(f.domain).entries[0]
                    prem = Sequent(goal.left + (Single(Eq(z, u)),),
                                   _replace_r(goal, pos, inst))
                    yield ("forall_f", {"var": z, "domain": f.domain,
                                        "mpos": len(goal.left), "qpos": pos,
                                        "as_eq": True}, (prem,))
            elif isinstance(f, Exists):
                rest = _drop_r(goal, pos)
                for t in self._witnesses(f.domain, goal):
                    inst = replace_var(f.body, f.var, t)
                    for d in self._tags_for(f.domain):
                        dual = self.reg.dual_membership(t, f.domain, d)
                        for k in range(len(goal.left) + 1):
                            for j in range(len(rest) + 1):
                                q1 = Sequent(goal.left[:k],
                                             rest[:j] + (Single(inst),))
                                q2 = Sequent(goal.left[k:] + (Single(dual),),
                                             rest[j:])
                                yield ("exists_r",
                                       {"pos": pos, "term": t, "dual": d,
                                        "var": f.var, "domain": f.domain,
                                        "body": f.body}, (q1, q2))
            elif isinstance(f, Join):
                prem = Sequent(goal.left,
                               _set_slot_r(goal, pos, CorrPair(f.a, f.tag, f.b)))
                yield ("join_intro", {"qpos": pos}, (prem,))
            elif isinstance(f, Neq):
                rest = Sequent(goal.left, _drop_r(goal, pos))
                for prem in _replacement_premises(rest, f.lhs, f.rhs):
                    yield ("neq_right", {"pos": pos, "s": f.lhs, "t": f.rhs},
                           (prem,))

    # -- principal moves, left side --------------------------------------------

    def _left_moves(self, goal: Sequent) -> Iterator:
        for pos, slot in enumerate(goal.left):
            if isinstance(slot, CorrPair):
                continue
            f = slot.formula
            if isinstance(f, And):
                yield ("and_l1", {"pos": pos, "other": f.b},
                       (_set_l(goal, pos, f.a),))
                yield ("and_l2", {"pos": pos, "other": f.a},
                       (_set_l(goal, pos, f.b),))
            elif isinstance(f, Or):
                yield ("or_l", {"pos": pos},
                       (_set_l(goal, pos, f.a), _set_l(goal, pos, f.b)))
            elif isinstance(f, Times):
                prem = Sequent(goal.left[:pos] + (Single(f.a), Single(f.b))
                               + goal.left[pos + 1:], goal.right)
                yield ("times_l", {"pos": pos}, (prem,))
            elif isinstance(f, Par):
                rest = _drop_l(goal, pos)
                for k in range(len(rest) + 1):
                    for j in range(len(goal.right) + 1):
                        p1 = Sequent((Single(f.a),) + rest[:k], goal.right[:j])
                        p2 = Sequent((Single(f.b),) + rest[k:], goal.right[j:])
                        yield ("par_l", {"pos": pos, "apos": 0, "bpos": 0},
                               (p1, p2))
            elif isinstance(f, Imp):
                rest = _drop_l(goal, pos)
                for k in range(len(rest) + 1):
                    for j in range(len(goal.right) + 1):
                        p1 = Sequent(rest[:k], (Single(f.a),) + goal.right[:j])
                        p2 = Sequent((Single(f.b),) + rest[k:], goal.right[j:])
                        yield ("imp_l", {"pos": pos}, (p1, p2))
            elif isinstance(f, Excl) and pos == len(goal.left) - 1:
                prem = Sequent(goal.left[:-1] + (Single(f.a),),
                               (Single(f.b),) + goal.right)
                yield ("excl_l", {}, (prem,))
            elif isinstance(f, Exists):
                z = _pick_var(f, goal)
                inst = replace_var(f.body, f.var, z)
                for d in self._tags_for(f.domain):
                    dual = self.reg.dual_membership(z, f.domain, d)
                    prem = Sequent(_replace_l(goal, pos, inst),
                                   goal.right + (Single(dual),))
                    yield ("exists_f", {"var": z, "domain": f.domain,
                                        "dual": d, "dpos": len(goal.right),
                                        "qpos": pos}, (prem,))
            elif isinstance(f, Forall):
                rest = _drop_l(goal, pos)
                for t in self._witnesses(f.domain, goal):
                    inst = replace_var(f.body, f.var, t)
                    for k in range(len(rest) + 1):
                        for j in range(len(goal.right) + 1):
                            p1 = Sequent(rest[:k],
                                         (Single(Member(t, f.domain)),)
                                         + goal.right[:j])
                            p2 = Sequent((Single(inst),) + rest[k:],
                                         goal.right[j:])
                            yield ("forall_r",
                                   {"pos": pos, "term": t, "var": f.var,
                                    "domain": f.domain, "body": f.body},
                                   (p1, p2))
            elif isinstance(f, Member) and isinstance(f.term, Var) \
                    and f.domain in self.reg:
                rec = self.reg.get(f.domain)
                if rec.focused and rec.entries:
                    disj = self.reg.focus_disjunction(f.domain, f.term)
                    axiom = Sequent((slot,), (Single(disj),))
                    sub = _set_l(goal, pos, disj)
                    yield ("cut", {"rpos": 0, "lpos": pos}, (axiom, sub))
            elif isinstance(f, Eq):
                rest = Sequent(_drop_l(goal, pos), goal.right)
                for prem in _replacement_premises(rest, f.lhs, f.rhs):
                    yield ("eq_left", {"pos": pos, "s": f.lhs, "t": f.rhs},
                           (prem,))

    def _witnesses(self, dom: str, goal: Sequent) -> list:
        out: list = []
        if dom in self.reg:
            rec = self.reg.get(dom)
            out.extend(rec.entries)
            if rec.inhabited:
                out.append(self.reg.witness(dom))
        for v in sorted(sequent_free_vars(goal), key=lambda v: v.name):
            if v not in out:
                out.append(v)
        return out

    # -- generalization and weakening --------------------------------------------

    def _subst_moves(self, goal: Sequent) -> Iterator:
        for dom in sorted(self.cfg.substitution_domains):
            if dom not in self.reg:
                continue
            for t in self.reg.get(dom).entries:
                if not _term_in_sequent(goal, t):
                    continue
                z = _fresh_var("z", sequent_free_vars(goal))
                prem = _swap_term_sequent(goal, t, z)
                yield ("subst", {"var": z, "term": t, "domain": dom}, (prem,))

    def _weakening_moves(self, goal: Sequent) -> Iterator:
        if not self.cfg.weakening:
            return
        for pos, slot in enumerate(goal.left):
            if isinstance(slot, Single):
                prem = Sequent(_drop_l(goal, pos), goal.right)
                yield ("weak_l", {"pos": pos, "formula": slot.formula}, (prem,))
        for pos, slot in enumerate(goal.right):
            if isinstance(slot, Single):
                prem = Sequent(goal.left, _drop_r(goal, pos))
                yield ("weak_r", {"pos": pos, "formula": slot.formula}, (prem,))


# --------------------------------------------------------------------------
# sequent surgery helpers

def _set_r(goal: Sequent, pos: int, f: Formula) -> Sequent:
    return Sequent(goal.left,
                   goal.right[:pos] + (Single(f),) + goal.right[pos + 1:])


def _set_l(goal: Sequent, pos: int, f: Formula) -> Sequent:
    return Sequent(goal.left[:pos] + (Single(f),) + goal.left[pos + 1:],
                   goal.right)


def _set_slot_r(goal: Sequent, pos: int, slot: Slot) -> tuple:
    return goal.right[:pos] + (slot,) + goal.right[pos + 1:]


def _replace_r(goal: Sequent, pos: int, f: Formula) -> tuple:
    return goal.right[:pos] + (Single(f),) + goal.right[pos + 1:]


def _replace_l(goal: Sequent, pos: int, f: Formula) -> tuple:
    return goal.left[:pos] + (Single(f),) + goal.left[pos + 1:]


def _drop_r(goal: Sequent, pos: int) -> tuple:
    return goal.right[:pos] + goal.right[pos + 1:]


def _drop_l(goal: Sequent, pos: int) -> tuple:
    return goal.left[:pos] + goal.left[pos + 1:]


def _indexes(slot: CorrPair):
    from .formulas import formula_index
    return formula_index(slot.a), formula_index(slot.b)


def _pick_var(f, goal: Sequent) -> Var:
    used = sequent_free_vars(goal)
    if f.var not in used:
        return f.var
    return _fresh_var(f.var.name, used)


def _fresh_var(base: str, used) -> Var:
    names = {v.name for v in used}
    if base not in names:
        return Var(base)
    k = 0
    while f"{base}{k}" in names:
        k += 1
    return Var(f"{base}{k}")


def _term_in_formula(f: Formula, t: Term) -> bool:
    if isinstance(f, Atom):
        return t in f.args
    if isinstance(f, (Member, DualMember)):
        return f.term == t
    if isinstance(f, (Eq, Neq)):
        return t in (f.lhs, f.rhs)
    if isinstance(f, (And, Or, Times, Par, Imp, Excl, Join)):
        return _term_in_formula(f.a, t) or _term_in_formula(f.b, t)
    if isinstance(f, (Forall, Exists)):
        return _term_in_formula(f.body, t)
    return False


def _term_in_sequent(s: Sequent, t: Term) -> bool:
    for slot in s.left + s.right:
        fs = (slot.formula,) if isinstance(slot, Single) else (slot.a, slot.b)
        if any(_term_in_formula(f, t) for f in fs):
            return True
    return False


def _swap_term_formula(f: Formula, old: Term, new: Term) -> Formula:
    sw = lambda u: new if u == old else u
    if isinstance(f, Atom):
        return Atom(f.pred, f.index, tuple(sw(a) for a in f.args))
    if isinstance(f, Member):
        return Member(sw(f.term), f.domain)
    if isinstance(f, DualMember):
        return DualMember(sw(f.term), f.domain, f.dual)
    if isinstance(f, Eq):
        return Eq(sw(f.lhs), sw(f.rhs))
    if isinstance(f, Neq):
        return Neq(sw(f.lhs), sw(f.rhs))
    if isinstance(f, IndexRel):
        return f
    if isinstance(f, (And, Or, Times, Par, Imp, Excl)):
        return type(f)(_swap_term_formula(f.a, old, new),
                       _swap_term_formula(f.b, old, new))
    if isinstance(f, Join):
        return Join(f.tag, _swap_term_formula(f.a, old, new),
                    _swap_term_formula(f.b, old, new))
    if isinstance(f, (Forall, Exists)):
        if f.var in (old, new):
            return f
        return type(f)(f.var, f.domain, _swap_term_formula(f.body, old, new))
    return f


def _swap_term_sequent(s: Sequent, old: Term, new: Term) -> Sequent:
    def on(slot: Slot) -> Slot:
        if isinstance(slot, Single):
            return Single(_swap_term_formula(slot.formula, old, new))
        return CorrPair(_swap_term_formula(slot.a, old, new), slot.tag,
                        _swap_term_formula(slot.b, old, new))

    return Sequent(tuple(on(x) for x in s.left), tuple(on(x) for x in s.right))


def _replacement_premises(rest: Sequent, s: Term, t: Term):
    """Candidate premises for an equality-replacement step read upward:
    undo all occurrences one way, the other way, or not at all."""
    seen = []
    for cand in (_swap_term_sequent(rest, s, t), _swap_term_sequent(rest, t, s),
                 rest):
        if cand not in seen:
            seen.append(cand)
            yield cand
