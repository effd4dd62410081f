"""The rule catalog: every inference rule the checker trusts.

Each rule is a validator ``fn(params, premises, claimed, ctx) -> Sequent``
that either reconstructs the unique conclusion from the premises and the
rule's parameters, or (for the two equality-replacement rules, whose
occurrence choices are free) checks a claimed conclusion.  Slot positions
are explicit parameters throughout, which keeps conclusion reconstruction
deterministic and makes the proof-level symmetry transformation a pure
table-plus-position-mirror affair.

Context discipline: the base forms carry exactly the contexts shown in
their reconstruction; anything beyond that is gated by the configuration
flags (left/right context liberalization, weakening, cut) or by the
substitution / d-axiom licenses.
"""
from __future__ import annotations

from dataclasses import dataclass

from .domains import Registry
from .dualities import IDENTITY_INV, symmetrize_formula
from .formulas import (
    And, Atom, CorrPair, DualMember, Eq, Excl, Exists, Forall, Formula, Imp,
    IndexRel, Join, Member, Neq, Or, Outcome, Par, Sequent, Single, Slot,
    Term, Times, Var, formula_equal, formula_index, free_vars, reindex,
    replace_var, sequent_equal, slot_equal, substitute_sequent,
)

__all__ = ["CalculusConfig", "RuleContext", "RuleError", "RULES",
           "MACRO_RULES", "validate_rule", "rule_arity"]


# --------------------------------------------------------------------------
# configuration

@dataclass(frozen=True)
class CalculusConfig:
    left_contexts: bool = False
    right_contexts: bool = False
    weakening: bool = False
    cut: bool = False
    substitution_domains: frozenset = frozenset()
    d_axiom_domains: frozenset = frozenset()  # of (domain, duality) pairs
    collapse_demo: bool = False

    def __post_init__(self):
        object.__setattr__(self, "substitution_domains",
                           frozenset(self.substitution_domains))
        object.__setattr__(self, "d_axiom_domains",
                           frozenset(self.d_axiom_domains))

    def check_licenses(self, registry) -> None:
        """Both licenses on one domain prove it is a singleton, so outside
        collapse-demo mode the overlap is only allowed where that is
        already true: extensional singletons."""
        if self.collapse_demo:
            return
        licensed = {d for d, _ in self.d_axiom_domains}
        for name in sorted(licensed & self.substitution_domains):
            if name in registry and registry.get(name).is_singleton:
                continue
            raise ValueError(
                f"domain {name} licensed for both substitution and d-axioms "
                f"needs collapse-demo mode")


@dataclass(frozen=True)
class RuleContext:
    cfg: CalculusConfig
    registry: Registry


class RuleError(Exception):
    def __init__(self, code: str, message: str):
        super().__init__(f"{code}: {message}")
        self.code = code
        self.message = message


def _need(cond: bool, code: str, message: str) -> None:
    if not cond:
        raise RuleError(code, message)


def _flag(ctx: RuleContext, flag: str, cond: bool, what: str) -> None:
    if cond and not getattr(ctx.cfg, flag):
        raise RuleError("ContextNotLicensed",
                        f"{what} requires {flag} liberalization")


# --------------------------------------------------------------------------
# slot helpers

def _fml(slot: Slot, what: str = "slot") -> Formula:
    _need(isinstance(slot, Single), "SlotMismatch",
          f"{what} must be a single formula, got a correlated pair")
    return slot.formula


def _slot_fv(slot: Slot) -> frozenset:
    if isinstance(slot, Single):
        return free_vars(slot.formula)
    return free_vars(slot.a) | free_vars(slot.b)


def _at(slots: tuple, pos, what: str) -> Slot:
    _need(isinstance(pos, int) and 0 <= pos < len(slots), "SlotMismatch",
          f"{what}: position {pos} out of range for {len(slots)} slots")
    return slots[pos]


def _without(slots: tuple, pos: int) -> tuple:
    return slots[:pos] + slots[pos + 1:]


def _replaced(slots: tuple, pos: int, slot: Slot) -> tuple:
    return slots[:pos] + (slot,) + slots[pos + 1:]


def _inserted(slots: tuple, pos, slot: Slot) -> tuple:
    _need(isinstance(pos, int) and 0 <= pos <= len(slots), "SlotMismatch",
          f"insert position {pos} out of range")
    return slots[:pos] + (slot,) + slots[pos:]


def _var_fresh_for(z: Var, slots) -> bool:
    return all(z not in _slot_fv(s) for s in slots)


# --------------------------------------------------------------------------
# occurrence-level replacement check for the equality rules

def _term_swap_ok(a: Term, b: Term, s: Term, t: Term, s_ok: bool, t_ok: bool) -> bool:
    if a == b:
        return True
    if s_ok and a == s and b == t:
        return True
    if t_ok and a == t and b == s:
        return True
    return False


def _replaceable(f: Formula, g: Formula, s: Term, t: Term,
                 s_ok: bool = True, t_ok: bool = True) -> bool:
    """True when ``g`` arises from ``f`` by swapping free occurrences of
    ``s`` and ``t`` (each occurrence independently, either direction)."""
    if type(f) is not type(g):
        return False
    ok = lambda a, b: _term_swap_ok(a, b, s, t, s_ok, t_ok)
    if isinstance(f, Atom):
        return (f.pred == g.pred and f.index == g.index
                and len(f.args) == len(g.args)
                and all(ok(a, b) for a, b in zip(f.args, g.args)))
    if isinstance(f, Member):
        return f.domain == g.domain and ok(f.term, g.term)
    if isinstance(f, DualMember):
        return (f.domain == g.domain and f.dual == g.dual
                and ok(f.term, g.term))
    if isinstance(f, (Eq, Neq)):
        return ok(f.lhs, g.lhs) and ok(f.rhs, g.rhs)
    if isinstance(f, IndexRel):
        return f == g
    if isinstance(f, (And, Or, Times, Par, Imp, Excl)):
        return (_replaceable(f.a, g.a, s, t, s_ok, t_ok)
                and _replaceable(f.b, g.b, s, t, s_ok, t_ok))
    if isinstance(f, Join):
        return (f.tag == g.tag
                and _replaceable(f.a, g.a, s, t, s_ok, t_ok)
                and _replaceable(f.b, g.b, s, t, s_ok, t_ok))
    if isinstance(f, (Forall, Exists)):
        if f.var != g.var or f.domain != g.domain:
            # replacement never renames binders
            return False
        # shadowing: occurrences of a bound name are not free, and a swap
        # may not introduce a variable the binder would capture
        if f.var == s or f.var == t:
            s_ok = t_ok = False
        return _replaceable(f.body, g.body, s, t, s_ok, t_ok)
    return False


def _slot_replaceable(a: Slot, b: Slot, s: Term, t: Term) -> bool:
    if isinstance(a, Single) and isinstance(b, Single):
        return _replaceable(a.formula, b.formula, s, t)
    if isinstance(a, CorrPair) and isinstance(b, CorrPair):
        return (a.tag == b.tag and _replaceable(a.a, b.a, s, t)
                and _replaceable(a.b, b.b, s, t))
    return False


# --------------------------------------------------------------------------
# rule registry

RULES: dict = {}
MACRO_RULES: set = set()


def _rule(name: str, arity: int, macro: bool = False):
    def wrap(fn):
        RULES[name] = (arity, fn)
        if macro:
            MACRO_RULES.add(name)
        return fn
    return wrap


def rule_arity(name: str) -> int:
    _need(name in RULES, "UnknownRule", name)
    return RULES[name][0]


def validate_rule(name: str, params: dict, premises, claimed, ctx) -> Sequent:
    """Validate one rule application, returning its conclusion."""
    _need(name in RULES, "UnknownRule", name)
    arity, fn = RULES[name]
    _need(len(premises) == arity, "ArityMismatch",
          f"{name} expects {arity} premises, got {len(premises)}")
    conclusion = fn(params, tuple(premises), claimed, ctx)
    if claimed is not None:
        _need(sequent_equal(conclusion, claimed), "ConclusionMismatch",
              f"{name}: claimed conclusion differs from the reconstructed one")
    return conclusion


# --------------------------------------------------------------------------
# axioms

@_rule("id", 0)
def _r_id(params, premises, claimed, ctx):
    a = params["a"]
    return Sequent((Single(a),), (Single(a),))


@_rule("refl", 0)
def _r_refl(params, premises, claimed, ctx):
    t = params["t"]
    return Sequent((), (Single(Eq(t, t)),))


@_rule("neq_refl", 0)
def _r_neq_refl(params, premises, claimed, ctx):
    t = params["t"]
    return Sequent((Single(Neq(t, t)),), ())


@_rule("member", 0)
def _r_member(params, premises, claimed, ctx):
    dom, t = params["domain"], params["term"]
    _need(ctx.registry.is_member_axiom(t, dom), "SideConditionViolated",
          f"{t} is not a declared member of {dom}")
    return Sequent((), (Single(Member(t, dom)),))


@_rule("dual_member_refuted", 0)
def _r_dual_member_refuted(params, premises, claimed, ctx):
    dom, t, d = params["domain"], params["term"], params["dual"]
    _need(ctx.registry.dual_member_refuted(t, dom, d), "SideConditionViolated",
          f"({t} in {dom})^{d} is not refutable by the registry")
    return Sequent((Single(ctx.registry.dual_membership(t, dom, d)),), ())


@_rule("dual_exclusion", 0)
def _r_dual_exclusion(params, premises, claimed, ctx):
    dom, z, d = params["domain"], params["var"], params["dual"]
    _need(isinstance(z, Var), "SideConditionViolated",
          "dual exclusion is issued for variables only")
    dual = ctx.registry.dual_membership(z, dom, d)
    return Sequent((Single(Member(z, dom)), Single(dual)), ())


@_rule("dual_em", 0)
def _r_dual_em(params, premises, claimed, ctx):
    dom, z, d = params["domain"], params["var"], params["dual"]
    _need(isinstance(z, Var), "SideConditionViolated",
          "dual excluded middle is issued for variables only")
    dual = ctx.registry.dual_membership(z, dom, d)
    return Sequent((), (Single(Member(z, dom)), Single(dual)))


@_rule("focus", 0)
def _r_focus(params, premises, claimed, ctx):
    dom, z = params["domain"], params["var"]
    rec = ctx.registry.get(dom)
    _need(rec.focused, "SideConditionViolated", f"{dom} is not focused")
    _need(bool(rec.entries), "SideConditionViolated", f"{dom} has no entries")
    disj = ctx.registry.focus_disjunction(dom, z)
    return Sequent((Single(Member(z, dom)),), (Single(disj),))


@_rule("dual_focus", 0)
def _r_dual_focus(params, premises, claimed, ctx):
    dom, z, d = params["domain"], params["var"], params["dual"]
    rec = ctx.registry.get(dom)
    _need(rec.focused, "SideConditionViolated", f"{dom} is not focused")
    _need(bool(rec.entries), "SideConditionViolated", f"{dom} has no entries")
    conj = symmetrize_formula(ctx.registry.focus_disjunction(dom, z),
                              IDENTITY_INV)
    dual = ctx.registry.dual_membership(z, dom, d)
    return Sequent((Single(conj),), (Single(dual),))


@_rule("d_axiom", 0)
def _r_d_axiom(params, premises, claimed, ctx):
    dom, d = params["domain"], params["dual"]
    z, y, hole, body = params["z"], params["y"], params["hole"], params["body"]
    _need((dom, d) in ctx.cfg.d_axiom_domains, "DAxiomNotLicensed",
          f"d-axioms for ({dom}, {d}) are not licensed")
    rec = ctx.registry.get(dom)
    _need(isinstance(z, Var) and isinstance(y, Var) and z != y,
          "SideConditionViolated", "d-axiom instances use two distinct variables")
    if rec.virtual_singleton:
        memb: Formula = Member(z, dom)
        dual = ctx.registry.dual_membership(y, dom, d)
    elif rec.is_singleton:
        u = rec.entries[0]
        memb = Eq(z, u)
        dual = Neq(y, u)
    else:
        raise RuleError("DAxiomNotLicensed",
                        f"{dom} is neither a virtual nor an extensional singleton")
    return Sequent((Single(memb), Single(replace_var(body, hole, y))),
                   (Single(replace_var(body, hole, z)), Single(dual)))


# --------------------------------------------------------------------------
# one-premise propositional rules

@_rule("and_l1", 1)
def _r_and_l1(params, premises, claimed, ctx):
    p, pos, other = premises[0], params["pos"], params["other"]
    a = _fml(_at(p.left, pos, "and_l1"))
    _flag(ctx, "left_contexts", len(p.left) > 1, "extra left context")
    return Sequent(_replaced(p.left, pos, Single(And(a, other))), p.right)


@_rule("and_l2", 1)
def _r_and_l2(params, premises, claimed, ctx):
    p, pos, other = premises[0], params["pos"], params["other"]
    b = _fml(_at(p.left, pos, "and_l2"))
    _flag(ctx, "left_contexts", len(p.left) > 1, "extra left context")
    return Sequent(_replaced(p.left, pos, Single(And(other, b))), p.right)


@_rule("or_r1", 1)
def _r_or_r1(params, premises, claimed, ctx):
    p, pos, other = premises[0], params["pos"], params["other"]
    a = _fml(_at(p.right, pos, "or_r1"))
    _flag(ctx, "right_contexts", len(p.right) > 1, "extra right context")
    return Sequent(p.left, _replaced(p.right, pos, Single(Or(a, other))))


@_rule("or_r2", 1)
def _r_or_r2(params, premises, claimed, ctx):
    p, pos, other = premises[0], params["pos"], params["other"]
    b = _fml(_at(p.right, pos, "or_r2"))
    _flag(ctx, "right_contexts", len(p.right) > 1, "extra right context")
    return Sequent(p.left, _replaced(p.right, pos, Single(Or(other, b))))


@_rule("times_l", 1)
def _r_times_l(params, premises, claimed, ctx):
    p, pos = premises[0], params["pos"]
    a = _fml(_at(p.left, pos, "times_l"))
    b = _fml(_at(p.left, pos + 1, "times_l"))
    _flag(ctx, "left_contexts", len(p.left) > 2, "extra left context")
    left = p.left[:pos] + (Single(Times(a, b)),) + p.left[pos + 2:]
    return Sequent(left, p.right)


@_rule("par_r", 1)
def _r_par_r(params, premises, claimed, ctx):
    p, pos = premises[0], params["pos"]
    a = _fml(_at(p.right, pos, "par_r"))
    b = _fml(_at(p.right, pos + 1, "par_r"))
    _flag(ctx, "right_contexts", len(p.right) > 2, "extra right context")
    right = p.right[:pos] + (Single(Par(a, b)),) + p.right[pos + 2:]
    return Sequent(p.left, right)


@_rule("imp_r", 1)
def _r_imp_r(params, premises, claimed, ctx):
    p = premises[0]
    _need(len(p.left) >= 1 and len(p.right) >= 1, "SlotMismatch",
          "imp_r needs the antecedent last on the left, succedent first on the right")
    a = _fml(p.left[-1], "imp_r antecedent")
    b = _fml(p.right[0], "imp_r succedent")
    _flag(ctx, "right_contexts", len(p.right) > 1, "extra right context")
    return Sequent(p.left[:-1], (Single(Imp(a, b)),) + p.right[1:])


@_rule("excl_l", 1)
def _r_excl_l(params, premises, claimed, ctx):
    p = premises[0]
    _need(len(p.left) >= 1 and len(p.right) >= 1, "SlotMismatch",
          "excl_l needs its components adjacent to the turnstile")
    b = _fml(p.left[-1], "excl_l kept side")
    a = _fml(p.right[0], "excl_l excluded side")
    _flag(ctx, "left_contexts", len(p.left) > 1, "extra left context")
    return Sequent(p.left[:-1] + (Single(Excl(b, a)),), p.right[1:])


# --------------------------------------------------------------------------
# quantifier formation rules

def _membership_slot_matches(slot: Slot, z: Var, dom: str, as_eq: bool,
                             ctx) -> bool:
    f = _fml(slot, "quantifier membership")
    if as_eq:
        rec = ctx.registry.get(dom)
        _need(rec.is_singleton, "SideConditionViolated",
              "the equality form of membership needs an extensional singleton")
        return f == Eq(z, rec.entries[0])
    return f == Member(z, dom)


@_rule("forall_f", 1)
def _r_forall_f(params, premises, claimed, ctx):
    p = premises[0]
    z, dom = params["var"], params["domain"]
    mpos, qpos = params["mpos"], params["qpos"]
    as_eq = params.get("as_eq", False)
    slot = _at(p.left, mpos, "forall_f membership")
    _need(_membership_slot_matches(slot, z, dom, as_eq, ctx),
          "SideConditionViolated",
          f"left slot {mpos} is not the membership of {z} in {dom}")
    body = _fml(_at(p.right, qpos, "forall_f principal"))
    rest = _without(p.left, mpos) + _without(p.right, qpos)
    _need(_var_fresh_for(z, rest), "SideConditionViolated",
          f"{z} occurs free outside the principal formula")
    _flag(ctx, "right_contexts", len(p.right) > 1, "extra right context")
    return Sequent(_without(p.left, mpos),
                   _replaced(p.right, qpos, Single(Forall(z, dom, body))))


@_rule("exists_f", 1)
def _r_exists_f(params, premises, claimed, ctx):
    p = premises[0]
    z, dom, d = params["var"], params["domain"], params["dual"]
    dpos, qpos = params["dpos"], params["qpos"]
    dual = ctx.registry.dual_membership(z, dom, d)
    got = _fml(_at(p.right, dpos, "exists_f dual membership"))
    _need(got == dual, "SideConditionViolated",
          f"right slot {dpos} is not the dual membership of {z} in {dom}")
    body = _fml(_at(p.left, qpos, "exists_f principal"))
    rest = _without(p.left, qpos) + _without(p.right, dpos)
    _need(_var_fresh_for(z, rest), "SideConditionViolated",
          f"{z} occurs free outside the principal formula")
    _flag(ctx, "left_contexts", len(p.left) > 1, "extra left context")
    return Sequent(_replaced(p.left, qpos, Single(Exists(z, dom, body))),
                   _without(p.right, dpos))


# --------------------------------------------------------------------------
# structural rules

@_rule("weak_l", 1)
def _r_weak_l(params, premises, claimed, ctx):
    _flag(ctx, "weakening", True, "weakening")
    p = premises[0]
    return Sequent(_inserted(p.left, params["pos"], Single(params["formula"])),
                   p.right)


@_rule("weak_r", 1)
def _r_weak_r(params, premises, claimed, ctx):
    _flag(ctx, "weakening", True, "weakening")
    p = premises[0]
    return Sequent(p.left,
                   _inserted(p.right, params["pos"], Single(params["formula"])))


@_rule("contract_l", 1)
def _r_contract_l(params, premises, claimed, ctx):
    p, i, j = premises[0], params["i"], params["j"]
    _need(0 <= i < j < len(p.left), "SlotMismatch", "contract_l positions")
    _need(slot_equal(p.left[i], p.left[j]), "SideConditionViolated",
          "contracted slots must be equal")
    return Sequent(_without(p.left, j), p.right)


@_rule("contract_r", 1)
def _r_contract_r(params, premises, claimed, ctx):
    p, i, j = premises[0], params["i"], params["j"]
    _need(0 <= i < j < len(p.right), "SlotMismatch", "contract_r positions")
    _need(slot_equal(p.right[i], p.right[j]), "SideConditionViolated",
          "contracted slots must be equal")
    return Sequent(p.left, _without(p.right, j))


@_rule("expand_l", 1)
def _r_expand_l(params, premises, claimed, ctx):
    p, pos = premises[0], params["pos"]
    slot = _at(p.left, pos, "expand_l")
    return Sequent(_inserted(p.left, pos + 1, slot), p.right)


@_rule("expand_r", 1)
def _r_expand_r(params, premises, claimed, ctx):
    p, pos = premises[0], params["pos"]
    slot = _at(p.right, pos, "expand_r")
    return Sequent(p.left, _inserted(p.right, pos + 1, slot))


@_rule("subst", 1)
def _r_subst(params, premises, claimed, ctx):
    p = premises[0]
    z, t, dom = params["var"], params["term"], params["domain"]
    _need(dom in ctx.cfg.substitution_domains, "SubstitutionNotLicensed",
          f"substitution is not licensed for {dom}")
    rec = ctx.registry.get(dom)
    _need(isinstance(t, Outcome) and t in rec.entries, "SideConditionViolated",
          f"{t} does not denote an element of {dom}")
    _need(isinstance(z, Var), "SideConditionViolated",
          "substitution replaces a variable")
    return substitute_sequent(p, z, t)


# --------------------------------------------------------------------------
# equality rules

@_rule("eq_left", 1)
def _r_eq_left(params, premises, claimed, ctx):
    _need(claimed is not None, "ConclusionMismatch",
          "eq_left carries free replacement choices; a conclusion is required")
    p, pos, s, t = premises[0], params["pos"], params["s"], params["t"]
    got = _fml(_at(claimed.left, pos, "eq_left equation"))
    _need(got == Eq(s, t), "SlotMismatch",
          f"conclusion slot {pos} is not the equation {s} = {t}")
    rest = _without(claimed.left, pos)
    _need(len(rest) == len(p.left) and len(claimed.right) == len(p.right),
          "SlotMismatch", "eq_left changes no slot counts")
    for a, b in zip(p.left, rest):
        _need(_slot_replaceable(a, b, s, t), "SideConditionViolated",
              "a left slot is not a replacement instance")
    for a, b in zip(p.right, claimed.right):
        _need(_slot_replaceable(a, b, s, t), "SideConditionViolated",
              "a right slot is not a replacement instance")
    return claimed


@_rule("neq_right", 1)
def _r_neq_right(params, premises, claimed, ctx):
    _need(claimed is not None, "ConclusionMismatch",
          "neq_right carries free replacement choices; a conclusion is required")
    p, pos, s, t = premises[0], params["pos"], params["s"], params["t"]
    got = _fml(_at(claimed.right, pos, "neq_right disequation"))
    _need(got == Neq(s, t), "SlotMismatch",
          f"conclusion slot {pos} is not the disequation {s} != {t}")
    rest = _without(claimed.right, pos)
    _need(len(rest) == len(p.right) and len(claimed.left) == len(p.left),
          "SlotMismatch", "neq_right changes no slot counts")
    for a, b in zip(p.left, claimed.left):
        _need(_slot_replaceable(a, b, s, t), "SideConditionViolated",
              "a left slot is not a replacement instance")
    for a, b in zip(p.right, rest):
        _need(_slot_replaceable(a, b, s, t), "SideConditionViolated",
              "a right slot is not a replacement instance")
    return claimed


def _elim_gate(ctx: RuleContext, t: Term) -> None:
    if isinstance(t, Var):
        return
    for dom in ctx.cfg.substitution_domains:
        rec = ctx.registry.get(dom)
        if isinstance(t, Outcome) and t in rec.entries:
            return
    raise RuleError("SubstitutionNotLicensed",
                    f"eliminating a variable by the closed term {t} needs a "
                    f"substitution license covering it")


@_rule("eq_left_elim", 1)
def _r_eq_left_elim(params, premises, claimed, ctx):
    p, pos = premises[0], params["pos"]
    f = _fml(_at(p.left, pos, "eq_left_elim"))
    _need(isinstance(f, Eq) and isinstance(f.lhs, Var), "SlotMismatch",
          f"left slot {pos} must be an equation with a variable on the left")
    z, t = f.lhs, f.rhs
    _elim_gate(ctx, t)
    stripped = Sequent(_without(p.left, pos), p.right)
    return substitute_sequent(stripped, z, t) if z != t else stripped


@_rule("neq_right_elim", 1)
def _r_neq_right_elim(params, premises, claimed, ctx):
    p, pos = premises[0], params["pos"]
    f = _fml(_at(p.right, pos, "neq_right_elim"))
    _need(isinstance(f, Neq) and isinstance(f.lhs, Var), "SlotMismatch",
          f"right slot {pos} must be a disequation with a variable on the left")
    z, t = f.lhs, f.rhs
    _elim_gate(ctx, t)
    stripped = Sequent(p.left, _without(p.right, pos))
    return substitute_sequent(stripped, z, t) if z != t else stripped


# --------------------------------------------------------------------------
# conversion between correlated pairs and index relations

def _pair_components(slot: Slot, what: str):
    _need(isinstance(slot, CorrPair), "SlotMismatch",
          f"{what}: expected a correlated pair")
    i, j = formula_index(slot.a), formula_index(slot.b)
    _need(i is not None and j is not None and i != j, "SideConditionViolated",
          f"{what}: pair components need distinct unique indexes")
    _need(formula_equal(slot.b, reindex(slot.a, i, j)), "SideConditionViolated",
          f"{what}: pair components must agree up to their index")
    return slot.a, i, slot.tag, slot.b, j


@_rule("conv_pair_elim", 1)
def _r_conv_pair_elim(params, premises, claimed, ctx):
    p, qpos = premises[0], params["qpos"]
    a, i, tag, _b, j = _pair_components(_at(p.right, qpos, "conv_pair_elim"),
                                        "conv_pair_elim")
    return Sequent(p.left + (Single(IndexRel(i, tag, j)),),
                   _replaced(p.right, qpos, Single(a)))


@_rule("conv_pair_intro", 1)
def _r_conv_pair_intro(params, premises, claimed, ctx):
    p, qpos, relpos = premises[0], params["qpos"], params["relpos"]
    rel = _fml(_at(p.left, relpos, "conv_pair_intro relation"))
    _need(isinstance(rel, IndexRel), "SlotMismatch",
          f"left slot {relpos} is not an index relation")
    a = _fml(_at(p.right, qpos, "conv_pair_intro principal"))
    _need(formula_index(a) == rel.i, "SideConditionViolated",
          "the principal formula must carry the relation's first index")
    b = reindex(a, rel.i, rel.j)
    return Sequent(_without(p.left, relpos),
                   _replaced(p.right, qpos, CorrPair(a, rel.tag, b)))


@_rule("conv_pair_elim_l", 1)
def _r_conv_pair_elim_l(params, premises, claimed, ctx):
    p, qpos = premises[0], params["qpos"]
    _b, j, tag, a, i = _pair_components(_at(p.left, qpos, "conv_pair_elim_l"),
                                        "conv_pair_elim_l")
    return Sequent(_replaced(p.left, qpos, Single(a)),
                   (Single(IndexRel(j, tag, i)),) + p.right)


@_rule("conv_pair_intro_l", 1)
def _r_conv_pair_intro_l(params, premises, claimed, ctx):
    p, qpos, relpos = premises[0], params["qpos"], params["relpos"]
    rel = _fml(_at(p.right, relpos, "conv_pair_intro_l relation"))
    _need(isinstance(rel, IndexRel), "SlotMismatch",
          f"right slot {relpos} is not an index relation")
    a = _fml(_at(p.left, qpos, "conv_pair_intro_l principal"))
    _need(formula_index(a) == rel.j, "SideConditionViolated",
          "the principal formula must carry the relation's second index")
    b = reindex(a, rel.j, rel.i)
    return Sequent(_replaced(p.left, qpos, CorrPair(b, rel.tag, a)),
                   _without(p.right, relpos))


# --------------------------------------------------------------------------
# the correlation connective

def _join_license(ctx: RuleContext, s: Sequent, a: Formula, b: Formula) -> None:
    def virtual(dom: str) -> bool:
        return dom in ctx.registry and ctx.registry.get(dom).virtual_singleton

    for slot in s.left + s.right:
        for f in (slot.formula,) if isinstance(slot, Single) else (slot.a, slot.b):
            if isinstance(f, (Member, DualMember)) and virtual(f.domain):
                return
    if all(isinstance(f, (Forall, Exists)) and virtual(f.domain)
           for f in (a, b)):
        return
    raise RuleError("NotVirtualSingleton",
                    "the correlation connective needs a virtual singleton "
                    "in context or as quantification domain")


@_rule("join_intro", 1)
def _r_join_intro(params, premises, claimed, ctx):
    p, qpos = premises[0], params["qpos"]
    slot = _at(p.right, qpos, "join_intro")
    _need(isinstance(slot, CorrPair), "SlotMismatch",
          "join_intro expects a correlated pair")
    _join_license(ctx, p, slot.a, slot.b)
    return Sequent(p.left,
                   _replaced(p.right, qpos, Single(Join(slot.tag, slot.a, slot.b))))


@_rule("join_elim", 1)
def _r_join_elim(params, premises, claimed, ctx):
    p, qpos = premises[0], params["qpos"]
    f = _fml(_at(p.right, qpos, "join_elim"))
    _need(isinstance(f, Join), "SlotMismatch", "join_elim expects a join formula")
    _join_license(ctx, p, f.a, f.b)
    return Sequent(p.left, _replaced(p.right, qpos, CorrPair(f.a, f.tag, f.b)))


@_rule("join_intro_l", 1)
def _r_join_intro_l(params, premises, claimed, ctx):
    p, qpos = premises[0], params["qpos"]
    slot = _at(p.left, qpos, "join_intro_l")
    _need(isinstance(slot, CorrPair), "SlotMismatch",
          "join_intro_l expects a correlated pair")
    _join_license(ctx, p, slot.a, slot.b)
    return Sequent(_replaced(p.left, qpos, Single(Join(slot.tag, slot.a, slot.b))),
                   p.right)


@_rule("join_elim_l", 1)
def _r_join_elim_l(params, premises, claimed, ctx):
    p, qpos = premises[0], params["qpos"]
    f = _fml(_at(p.left, qpos, "join_elim_l"))
    _need(isinstance(f, Join), "SlotMismatch", "join_elim_l expects a join formula")
    _join_license(ctx, p, f.a, f.b)
    return Sequent(_replaced(p.left, qpos, CorrPair(f.a, f.tag, f.b)), p.right)


# --------------------------------------------------------------------------
# two-premise rules

@_rule("and_r", 2)
def _r_and_r(params, premises, claimed, ctx):
    p1, p2, pos = premises[0], premises[1], params["pos"]
    a = _fml(_at(p1.right, pos, "and_r first component"))
    b = _fml(_at(p2.right, pos, "and_r second component"))
    _need(len(p1.left) == len(p2.left) and len(p1.right) == len(p2.right),
          "SlotMismatch", "and_r premises must share their contexts")
    _need(all(slot_equal(x, y) for x, y in zip(p1.left, p2.left)),
          "SlotMismatch", "and_r premises must share the left context")
    _need(all(k == pos or slot_equal(x, y)
              for k, (x, y) in enumerate(zip(p1.right, p2.right))),
          "SlotMismatch", "and_r premises must share the right context")
    _flag(ctx, "right_contexts", len(p1.right) > 1, "extra right context")
    return Sequent(p1.left, _replaced(p1.right, pos, Single(And(a, b))))


@_rule("or_l", 2)
def _r_or_l(params, premises, claimed, ctx):
    p1, p2, pos = premises[0], premises[1], params["pos"]
    a = _fml(_at(p1.left, pos, "or_l first component"))
    b = _fml(_at(p2.left, pos, "or_l second component"))
    _need(len(p1.left) == len(p2.left) and len(p1.right) == len(p2.right),
          "SlotMismatch", "or_l premises must share their contexts")
    _need(all(slot_equal(x, y) for x, y in zip(p1.right, p2.right)),
          "SlotMismatch", "or_l premises must share the right context")
    _need(all(k == pos or slot_equal(x, y)
              for k, (x, y) in enumerate(zip(p1.left, p2.left))),
          "SlotMismatch", "or_l premises must share the left context")
    _flag(ctx, "left_contexts", len(p1.left) > 1, "extra left context")
    return Sequent(_replaced(p1.left, pos, Single(Or(a, b))), p1.right)


@_rule("times_r", 2)
def _r_times_r(params, premises, claimed, ctx):
    p1, p2 = premises
    pos, apos, bpos = params["pos"], params["apos"], params["bpos"]
    a = _fml(_at(p1.right, apos, "times_r first component"))
    b = _fml(_at(p2.right, bpos, "times_r second component"))
    d1, d2 = _without(p1.right, apos), _without(p2.right, bpos)
    _flag(ctx, "right_contexts", bool(d1) or bool(d2), "extra right context")
    return Sequent(p1.left + p2.left,
                   _inserted(d1 + d2, pos, Single(Times(a, b))))


@_rule("par_l", 2)
def _r_par_l(params, premises, claimed, ctx):
    p1, p2 = premises
    pos, apos, bpos = params["pos"], params["apos"], params["bpos"]
    a = _fml(_at(p1.left, apos, "par_l first component"))
    b = _fml(_at(p2.left, bpos, "par_l second component"))
    g1, g2 = _without(p1.left, apos), _without(p2.left, bpos)
    _flag(ctx, "left_contexts", bool(g1) or bool(g2), "extra left context")
    return Sequent(_inserted(g1 + g2, pos, Single(Par(a, b))),
                   p1.right + p2.right)


@_rule("imp_l", 2)
def _r_imp_l(params, premises, claimed, ctx):
    p1, p2, pos = premises[0], premises[1], params["pos"]
    _need(len(p1.right) >= 1 and len(p2.left) >= 1, "SlotMismatch",
          "imp_l premise shapes")
    a = _fml(p1.right[0], "imp_l antecedent")
    b = _fml(p2.left[0], "imp_l succedent")
    _flag(ctx, "right_contexts", len(p1.right) > 1, "extra right context")
    _flag(ctx, "left_contexts", len(p2.left) > 1, "extra left context")
    return Sequent(_inserted(p1.left + p2.left[1:], pos, Single(Imp(a, b))),
                   p1.right[1:] + p2.right)


@_rule("excl_r", 2)
def _r_excl_r(params, premises, claimed, ctx):
    p1, p2, pos = premises[0], premises[1], params["pos"]
    _need(len(p1.right) >= 1 and len(p2.left) >= 1, "SlotMismatch",
          "excl_r premise shapes")
    b = _fml(p1.right[-1], "excl_r kept side")
    a = _fml(p2.left[-1], "excl_r excluded side")
    _flag(ctx, "left_contexts", len(p2.left) > 1, "extra left context")
    _flag(ctx, "right_contexts", len(p1.right) > 1, "extra right context")
    return Sequent(p1.left + p2.left[:-1],
                   _inserted(p1.right[:-1] + p2.right, pos, Single(Excl(b, a))))


@_rule("forall_r", 2)
def _r_forall_r(params, premises, claimed, ctx):
    p1, p2 = premises
    pos, t = params["pos"], params["term"]
    z, dom, body = params["var"], params["domain"], params["body"]
    _need(len(p1.right) >= 1 and len(p2.left) >= 1, "SlotMismatch",
          "forall_r premise shapes")
    memb = _fml(p1.right[0], "forall_r membership")
    if params.get("as_eq", False):
        rec = ctx.registry.get(dom)
        _need(rec.is_singleton, "SideConditionViolated",
              "the equality form of membership needs an extensional singleton")
        want: Formula = Eq(t, rec.entries[0])
    else:
        want = Member(t, dom)
    _need(memb == want, "SideConditionViolated",
          f"first premise must conclude the membership of {t} in {dom}")
    inst = _fml(p2.left[0], "forall_r instance")
    _need(formula_equal(inst, replace_var(body, z, t)), "SideConditionViolated",
          "second premise must assume the instantiated body")
    _flag(ctx, "right_contexts", len(p1.right) > 1, "extra right context")
    _flag(ctx, "left_contexts", len(p2.left) > 1, "extra left context")
    return Sequent(_inserted(p1.left + p2.left[1:], pos,
                             Single(Forall(z, dom, body))),
                   p1.right[1:] + p2.right)


@_rule("exists_r", 2)
def _r_exists_r(params, premises, claimed, ctx):
    p1, p2 = premises
    pos, t, d = params["pos"], params["term"], params["dual"]
    z, dom, body = params["var"], params["domain"], params["body"]
    _need(len(p1.right) >= 1 and len(p2.left) >= 1, "SlotMismatch",
          "exists_r premise shapes")
    inst = _fml(p1.right[-1], "exists_r instance")
    _need(formula_equal(inst, replace_var(body, z, t)), "SideConditionViolated",
          "first premise must conclude the instantiated body")
    dual = _fml(p2.left[-1], "exists_r dual membership")
    _need(dual == ctx.registry.dual_membership(t, dom, d),
          "SideConditionViolated",
          f"second premise must refute the dual membership of {t} in {dom}")
    _flag(ctx, "right_contexts", len(p1.right) > 1, "extra right context")
    _flag(ctx, "left_contexts", len(p2.left) > 1, "extra left context")
    return Sequent(p1.left + p2.left[:-1],
                   _inserted(p1.right[:-1] + p2.right, pos,
                             Single(Exists(z, dom, body))))


@_rule("cut", 2)
def _r_cut(params, premises, claimed, ctx):
    _flag(ctx, "cut", True, "cut")
    p1, p2 = premises
    rpos, lpos = params["rpos"], params["lpos"]
    c1 = _at(p1.right, rpos, "cut formula (right premise side)")
    c2 = _at(p2.left, lpos, "cut formula (left premise side)")
    _need(slot_equal(c1, c2), "SlotMismatch",
          "cut formulas do not match")
    left = p2.left[:lpos] + p1.left + p2.left[lpos + 1:]
    right = p1.right[:rpos] + p2.right + p1.right[rpos + 1:]
    return Sequent(left, right)


# --------------------------------------------------------------------------
# derived rules (macros): validated by shape here, expanded by the kernel

def _vsym_eligible(ctx: RuleContext, dom: str) -> str:
    """Virtual singletons with licensed d-axioms and an inhabitant have
    direction-insensitive quantifiers; returns the licensed duality."""
    rec = ctx.registry.get(dom)
    _need(rec.virtual_singleton and rec.inhabited and rec.duality is not None,
          "SideConditionViolated",
          f"{dom} has no direction-insensitive quantifiers")
    _need((dom, rec.duality) in ctx.cfg.d_axiom_domains, "DAxiomNotLicensed",
          f"symmetric quantifier steps on {dom} need its d-axioms licensed")
    _need(ctx.cfg.cut and ctx.cfg.left_contexts and ctx.cfg.right_contexts,
          "SideConditionViolated",
          "symmetric quantifier steps need cut and both context liberalizations")
    return rec.duality


@_rule("parallel_forall", 1, macro=True)
def _r_parallel_forall(params, premises, claimed, ctx):
    p = premises[0]
    z, dom = params["var"], params["domain"]
    mpos, qpos = params["mpos"], params["qpos"]
    rec = ctx.registry.get(dom)
    _need(rec.virtual_singleton, "NotVirtualSingleton",
          f"the parallel quantifier rule needs a virtual singleton, got {dom}")
    memb = _fml(_at(p.left, mpos, "parallel_forall membership"))
    _need(memb == Member(z, dom), "SideConditionViolated",
          f"left slot {mpos} is not the membership of {z} in {dom}")
    slot = _at(p.right, qpos, "parallel_forall principal")
    a, i, tag, b, j = _pair_components(slot, "parallel_forall")
    rest = _without(p.left, mpos) + _without(p.right, qpos)
    _need(_var_fresh_for(z, rest), "SideConditionViolated",
          f"{z} occurs free outside the principal pair")
    pair = CorrPair(Forall(z, dom, a), tag, Forall(z, dom, b))
    return Sequent(_without(p.left, mpos), _replaced(p.right, qpos, pair))


@_rule("forall_f_vsym", 1, macro=True)
def _r_forall_f_vsym(params, premises, claimed, ctx):
    _vsym_eligible(ctx, params["domain"])
    out = _r_exists_f(params, premises, claimed and None, ctx)
    f = out.left[params["qpos"]].formula
    return Sequent(_replaced(out.left, params["qpos"],
                             Single(Forall(f.var, f.domain, f.body))),
                   out.right)


@_rule("exists_f_vsym", 1, macro=True)
def _r_exists_f_vsym(params, premises, claimed, ctx):
    _vsym_eligible(ctx, params["domain"])
    out = _r_forall_f(params, premises, claimed and None, ctx)
    f = out.right[params["qpos"]].formula
    return Sequent(out.left,
                   _replaced(out.right, params["qpos"],
                             Single(Exists(f.var, f.domain, f.body))))


@_rule("forall_r_vsym", 2, macro=True)
def _r_forall_r_vsym(params, premises, claimed, ctx):
    _vsym_eligible(ctx, params["domain"])
    out = _r_exists_r(params, premises, claimed and None, ctx)
    f = out.right[params["pos"]].formula
    return Sequent(out.left,
                   _replaced(out.right, params["pos"],
                             Single(Forall(f.var, f.domain, f.body))))


@_rule("exists_r_vsym", 2, macro=True)
def _r_exists_r_vsym(params, premises, claimed, ctx):
    _vsym_eligible(ctx, params["domain"])
    out = _r_forall_r(params, premises, claimed and None, ctx)
    f = out.left[params["pos"]].formula
    return Sequent(_replaced(out.left, params["pos"],
                             Single(Exists(f.var, f.domain, f.body))),
                   out.right)
