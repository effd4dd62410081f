"""Rule validation, gating, failure reporting, macro expansion."""
from fractions import Fraction

import pytest

from symlog.domains import standard_registry
from symlog.formulas import (
    And, Atom, Eq, IConst, IDENTICAL, Join, Member, Outcome, Var, seq,
    sequent_equal,
)
from symlog.kernel import (
    annotate, build_collapse_proof, build_exists_to_forall, check_proof,
    collapse_config, expand_derived, mk,
)
from symlog.rules import CalculusConfig, RuleContext

z, y, x = Var("z"), Var("y"), Var("x")
p, q = Atom("p", None, ()), Atom("q", None, ())
t1, t2 = Outcome("t1", Fraction(1, 2)), Outcome("t2", Fraction(1, 2))


def A(t):
    return Atom("A", None, (t,))


def test_identity_axiom(config, registry):
    rep = check_proof(mk("id", {"a": p}), config, registry)
    assert rep.ok and rep.stats["nodes"] == 1


def test_conclusion_mismatch_reported(config, registry):
    bad = mk("id", {"a": p}, conclusion=seq([p], [q]))
    rep = check_proof(bad, config, registry)
    assert not rep.ok
    assert rep.failures[0].reason.startswith("ConclusionMismatch")


def test_arity_mismatch(config, registry):
    bad = mk("cut", {"rpos": 0, "lpos": 0}, mk("id", {"a": p}))
    rep = check_proof(bad, config, registry)
    assert "ArityMismatch" in rep.failures[0].reason


def test_unknown_rule(config, registry):
    rep = check_proof(mk("made_up", {}), config, registry)
    assert "UnknownRule" in rep.failures[0].reason


def test_subst_gating(registry):
    cfg = CalculusConfig(True, True, True, True,
                         substitution_domains=frozenset({"D"}))
    inner = mk("id", {"a": A(z)})
    good = mk("subst", {"var": z, "term": t1, "domain": "D"}, inner)
    assert check_proof(good, cfg, registry).ok
    bare = CalculusConfig(True, True, True, True)
    rep = check_proof(good, bare, registry)
    assert "SubstitutionNotLicensed" in rep.failures[0].reason


def test_d_axiom_gating(registry):
    node = mk("d_axiom", {"domain": "V", "dual": "d", "z": z, "y": y,
                          "hole": x, "body": A(x)})
    licensed = CalculusConfig(True, True, True, True,
                              d_axiom_domains=frozenset({("V", "d")}))
    assert check_proof(node, licensed, registry).ok
    rep = check_proof(node, CalculusConfig(True, True, True, True), registry)
    assert "DAxiomNotLicensed" in rep.failures[0].reason


def test_d_axiom_rejected_on_focused_two_entry(registry, config):
    cfg = CalculusConfig(True, True, True, True,
                         d_axiom_domains=frozenset({("D", "d")}))
    node = mk("d_axiom", {"domain": "D", "dual": "d", "z": z, "y": y,
                          "hole": x, "body": A(x)})
    rep = check_proof(node, cfg, registry)
    assert "DAxiomNotLicensed" in rep.failures[0].reason


def test_context_gating_weakening_and_cut(registry):
    bare = CalculusConfig()
    weak = mk("weak_l", {"pos": 0, "formula": q}, mk("id", {"a": p}))
    rep = check_proof(weak, bare, registry)
    assert "ContextNotLicensed" in rep.failures[0].reason
    cut = mk("cut", {"rpos": 0, "lpos": 0},
             mk("id", {"a": p}), mk("id", {"a": p}))
    rep = check_proof(cut, bare, registry)
    assert "ContextNotLicensed" in rep.failures[0].reason


def test_right_context_gating_on_formation(registry):
    """Forming a conjunction under an extra right slot needs the flag."""
    inner = mk("weak_r", {"pos": 1, "formula": q}, mk("id", {"a": p}))
    node = mk("and_r", {"pos": 0}, inner, inner)
    liberal = CalculusConfig(right_contexts=True, weakening=True)
    assert check_proof(node, liberal, registry).ok
    rep = check_proof(node, CalculusConfig(weakening=True), registry)
    assert not rep.ok
    assert "ContextNotLicensed" in rep.failures[0].reason


def test_forall_f_side_condition(config, registry):
    # z free in the context blocks quantifier formation
    bad_inner = mk("weak_l", {"pos": 0, "formula": A(z)},
                   mk("weak_l", {"pos": 0, "formula": Member(z, "D")},
                      mk("id", {"a": A(z)})))
    node = mk("forall_f", {"var": z, "domain": "D", "mpos": 1, "qpos": 0},
              bad_inner)
    rep = check_proof(node, config, registry)
    assert "SideConditionViolated" in rep.failures[0].reason


def test_eq_left_requires_claimed(config, registry):
    node = mk("eq_left", {"pos": 0, "s": z, "t": t1}, mk("id", {"a": A(t1)}))
    rep = check_proof(node, config, registry)
    assert "ConclusionMismatch" in rep.failures[0].reason
    good = mk("eq_left", {"pos": 1, "s": z, "t": t1}, mk("id", {"a": A(t1)}),
              conclusion=seq([A(t1), Eq(z, t1)], [A(z)]))
    assert check_proof(good, config, registry).ok


def test_eq_left_elim_gated_by_substitution(registry):
    inner = mk("weak_l", {"pos": 0, "formula": Eq(z, t1)},
               mk("id", {"a": A(z)}))
    node = mk("eq_left_elim", {"pos": 0}, inner)
    licensed = CalculusConfig(True, True, True, True,
                              substitution_domains=frozenset({"D"}))
    out = annotate(node, licensed, registry)
    assert sequent_equal(out.conclusion, seq([A(t1)], [A(t1)]))
    bare = CalculusConfig(True, True, True, True)
    rep = check_proof(node, bare, registry)
    assert "SubstitutionNotLicensed" in rep.failures[0].reason


def test_eq_left_elim_variable_target_ungated(registry):
    inner = mk("weak_l", {"pos": 0, "formula": Eq(z, y)},
               mk("id", {"a": A(z)}))
    node = mk("eq_left_elim", {"pos": 0}, inner)
    out = annotate(node, CalculusConfig(True, True, True, True), registry)
    assert sequent_equal(out.conclusion, seq([A(y)], [A(y)]))


def test_membership_axioms(config, registry):
    assert check_proof(mk("member", {"domain": "D", "term": t1}),
                       config, registry).ok
    rep = check_proof(mk("member", {"domain": "D", "term": Outcome("nope", 1)}),
                      config, registry)
    assert not rep.ok


def test_focus_axiom_only_for_focused(config, registry):
    assert check_proof(mk("focus", {"domain": "D", "var": z}),
                       config, registry).ok
    rep = check_proof(mk("focus", {"domain": "Dplus", "var": z}),
                      config, registry)
    assert "SideConditionViolated" in rep.failures[0].reason


def test_join_license(config, registry):
    a1, a2 = Atom("A", IConst(1), (z,)), Atom("A", IConst(2), (z,))
    jn = Join(IDENTICAL, a1, a2)
    ok_inner = mk("weak_l", {"pos": 0, "formula": Member(z, "Dplus")},
                  mk("id", {"a": jn}))
    node = mk("join_elim", {"qpos": 0}, ok_inner)
    assert check_proof(node, config, registry).ok
    bad_inner = mk("weak_l", {"pos": 0, "formula": Member(z, "Ddown")},
                   mk("id", {"a": jn}))
    rep = check_proof(mk("join_elim", {"qpos": 0}, bad_inner), config, registry)
    assert "NotVirtualSingleton" in rep.failures[0].reason


def test_failure_paths_locate_nodes(config, registry):
    bad = mk("and_r", {"pos": 0},
             mk("id", {"a": p}),
             mk("member", {"domain": "D", "term": Outcome("nope", 1)}))
    rep = check_proof(bad, config, registry)
    assert rep.failures[0].path == (1,)


def test_stats_track_licensed_uses(registry):
    reg = standard_registry(collapse_demo=True)
    cfg = collapse_config(reg, "V")
    v1, v2 = reg.get("V").entries
    proof = build_collapse_proof(reg, cfg, "V", v2, v1)
    rep = check_proof(proof, cfg, reg)
    assert rep.ok
    assert set(rep.stats["subst_domains"]) == {"V"}
    assert set(rep.stats["d_axiom_pairs"]) == {"V:d"}


def test_expand_derived_idempotent_on_macro_free(config, registry):
    node = annotate(mk("id", {"a": p}), config, registry)
    out = expand_derived(node, config, registry)
    assert out.rule == "id"


def test_vsym_rules_expand_and_check(config, registry):
    ctx = RuleContext(config, registry)
    base = build_exists_to_forall(ctx, "Dplus", x, A(x))
    node = annotate(base, config, registry)
    assert check_proof(node, config, registry).ok


def _focus_interderivable(n: int, pred: str) -> None:
    """The focused-domain lemma for n entries: the conjunction of entry
    instances yields the open instance under the membership, and comes
    back down to every entry instance by substitution."""
    from symlog.domains import DomainRecord, Registry

    entries = tuple(Outcome(f"u{i}", Fraction(1, n)) for i in range(n))
    reg = Registry()
    reg.register_domain(DomainRecord("Dn", entries, focused=True,
                                     substitution_allowed=True))
    cfg = CalculusConfig(True, True, True, True,
                         substitution_domains=frozenset({"Dn"}))
    At = lambda t: Atom(pred, None, (t,))
    rests = [At(entries[-1])]  # right-nested conjunction suffixes
    for t in reversed(entries[:-1]):
        rests.insert(0, And(At(t), rests[0]))
    gamma = rests[0]

    def select(i):  # gamma |- A(u_i) by conjunct selection
        node = mk("id", {"a": At(entries[i])})
        if i < n - 1:
            node = mk("and_l1", {"pos": 0, "other": rests[i + 1]}, node)
        for j in range(i, 0, -1):
            node = mk("and_l2", {"pos": 0, "other": At(entries[j - 1])}, node)
        return node

    def eq_branch(i):
        t = entries[i]
        return mk("eq_left", {"pos": 1, "s": z, "t": t}, select(i),
                  conclusion=seq([gamma, Eq(z, t)], [At(z)]))

    def fold(i):  # match the right-nested focus disjunction
        if i == n - 1:
            return eq_branch(i)
        return mk("or_l", {"pos": 1}, eq_branch(i), fold(i + 1))

    focus = mk("focus", {"domain": "Dn", "var": z})
    up = mk("cut", {"rpos": 0, "lpos": 1}, focus, fold(0))
    out = annotate(up, cfg, reg)
    assert sequent_equal(out.conclusion,
                         seq([gamma, Member(z, "Dn")], [At(z)]))
    for t in entries:  # and back down to every entry instance
        down = mk("cut", {"rpos": 0, "lpos": 1},
                  mk("member", {"domain": "Dn", "term": t}),
                  mk("subst", {"var": z, "term": t, "domain": "Dn"}, up))
        res = annotate(down, cfg, reg)
        assert sequent_equal(res.conclusion, seq([gamma], [At(t)]))


def test_focus_lemma_small_domains():
    for n in (1, 2, 3):
        for pred in ("G", "H"):
            _focus_interderivable(n, pred)
