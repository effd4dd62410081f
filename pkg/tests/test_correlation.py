"""Second-order conversion, the correlation connective, the distribution."""
import random

import pytest

from symlog.correlation import ConversionStep, convert, distribute_forall, join_step
from symlog.formulas import (
    Atom, CorrPair, IConst, IDENTICAL, IndexRel, Join, Member, OPPOSITE,
    Sequent, Single, Var, index_set, reindex, seq,
)
from symlog.kernel import check_proof
from symlog.rules import RuleError

from genlib import proof_context, random_formula

z, x = Var("z"), Var("x")
a1, a2 = Atom("A", IConst(1), (z,)), Atom("A", IConst(2), (z,))
G = Atom("G", None, ())


def pair_seq():
    return Sequent((Single(G), Single(Member(z, "Dplus"))),
                   (CorrPair(a1, IDENTICAL, a2),))


def test_convert_to_relation():
    out = convert(pair_seq(), ConversionStep("to_relation", 0))
    assert out.left[-1] == Single(IndexRel(IConst(1), IDENTICAL, IConst(2)))
    assert out.right == (Single(a1),)


def test_convert_round_trip_exact_inverse():
    s = pair_seq()
    rel = IndexRel(IConst(1), IDENTICAL, IConst(2))
    there = convert(s, ConversionStep("to_relation", 0, rel))
    back = convert(there, ConversionStep("to_comma", 0, rel))
    assert back == s


def test_convert_idempotency_degenerate():
    s = seq([Atom("A", None, (z,))], [Atom("A", None, (z,)),
                                      Atom("A", None, (z,))])
    out = convert(s, ConversionStep("to_relation", 0))
    assert out == seq([Atom("A", None, (z,))], [Atom("A", None, (z,))])
    again = convert(out, ConversionStep("to_comma", 0))
    assert again == s


def test_convert_slot_mismatch():
    with pytest.raises(RuleError):
        convert(seq([], [G]), ConversionStep("to_relation", 0))


def test_convert_random_round_trips():
    rng = random.Random(11)
    count = 0
    while count < 200:
        base = random_formula(rng, 2)
        idx = index_set(base)
        if idx != frozenset({IConst(1)}):
            continue
        count += 1
        pair = CorrPair(base, IDENTICAL, reindex(base, IConst(1), IConst(2)))
        s = Sequent((Single(Member(z, "V")),), (pair,))
        rel = IndexRel(IConst(1), IDENTICAL, IConst(2))
        there = convert(s, ConversionStep("to_relation", 0, rel))
        assert convert(there, ConversionStep("to_comma", 0, rel)) == s


def test_join_step_intro_and_elim(registry):
    s = pair_seq()
    joined = join_step(s, 0, "intro", registry)
    assert joined.right[0] == Single(Join(IDENTICAL, a1, a2))
    assert join_step(joined, 0, "elim", registry) == s


def test_join_step_needs_virtual_singleton(registry):
    s = Sequent((Single(Member(z, "Ddown")),), (CorrPair(a1, IDENTICAL, a2),))
    with pytest.raises(RuleError) as err:
        join_step(s, 0, "intro", registry)
    assert err.value.code == "NotVirtualSingleton"


def test_distribution_all_virtual_singletons():
    cfg, reg = proof_context()
    b1, b2 = Atom("A", IConst(1), (x,)), Atom("A", IConst(2), (x,))
    for dom in ("Dplus", "Dminus", "V"):
        for tag in (IDENTICAL, OPPOSITE):
            fwd, conv = distribute_forall(dom, b1, b2, tag, cfg, reg)
            assert check_proof(fwd, cfg, reg).ok, (dom, tag.kind)
            assert check_proof(conv, cfg, reg).ok, (dom, tag.kind)


def test_distribution_rejects_focused_domain():
    cfg, reg = proof_context()
    b1, b2 = Atom("A", IConst(1), (x,)), Atom("A", IConst(2), (x,))
    with pytest.raises(RuleError) as err:
        distribute_forall("D", b1, b2, IDENTICAL, cfg, reg)
    assert err.value.code == "NotVirtualSingleton"


def test_index_conservation_through_convert():
    s = pair_seq()
    rel = IndexRel(IConst(1), IDENTICAL, IConst(2))
    there = convert(s, ConversionStep("to_relation", 0, rel))

    def indexes(seqt):
        out = []
        for slot in seqt.left + seqt.right:
            fs = (slot.formula,) if isinstance(slot, Single) else (slot.a, slot.b)
            for f in fs:
                out.extend(sorted(i.value for i in index_set(f)
                                  if isinstance(i, IConst)))
        return sorted(out)

    # the pair's two indexes survive: one on the kept formula, one in the
    # index relation
    kept = indexes(there)
    assert 1 in kept
