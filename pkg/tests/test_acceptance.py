"""Acceptance battery: one criterion per test, one printed verdict line each.

Run ``pytest -s tests/test_acceptance.py`` to see the per-criterion lines.
"""
import math
import random
import re
import time
from fractions import Fraction
from pathlib import Path

import pytest

from symlog.corpus import export_corpus, positive_proofs, run_corpus
from symlog.domains import (
    DomainRecord, FocusedNonSingleton, InvariantViolation, Registry,
    standard_registry,
)
from symlog.dualities import (
    IDENTITY_INV, LiteralInvolution, apply_duality, symmetrize_formula,
    symmetrize_sequent,
)
from symlog.formulas import (
    And, Atom, Eq, Forall, IConst, IDENTICAL, Join, OPPOSITE, Outcome, Var,
    seq, sequent_equal,
)
from symlog.kernel import annotate, check_proof, proof_equal, symmetrize_proof
from symlog.qubits import (
    BellState, GateTag, KET_MINUS, KET_PLUS, Qubit, apply_gate, bell_formula,
    collapse, duality_correspondence, inner_product,
)
from symlog.rules import CalculusConfig
from symlog.scripts import parse_formula, parse_script, print_formula, print_script
from symlog.search import search_proof

from genlib import proof_context, random_formula, random_proof, random_qubit

CORPUS_DIR = Path(__file__).resolve().parent.parent / "src/symlog/corpus_data"
x = Var("x")


def A(t):
    return Atom("A", None, (t,))


def _verdict(n: int, ok: bool, detail: str) -> None:
    print(f"\nACCEPTANCE {n}: {'PASS' if ok else 'FAIL'} - {detail}")
    assert ok, detail


def test_criterion_1_corpus_green():
    start = time.time()
    results = run_corpus()
    elapsed = time.time() - start
    bad = [r.item for r in results if not r.ok]
    ok = not bad and len(results) == 18 and elapsed < 10.0
    _verdict(1, ok, f"18 corpus items in {elapsed:.2f}s"
             + (f"; failing: {bad}" if bad else ""))


def test_criterion_2_symmetry_theorem():
    cfg, reg = proof_context()
    checked = 0
    for item, name, proof, inv in positive_proofs():
        sym = symmetrize_proof(proof, inv, cfg, reg)
        assert check_proof(sym, cfg, reg).ok, f"{item}/{name}"
        assert sequent_equal(sym.conclusion,
                             symmetrize_sequent(proof.conclusion, inv))
        assert proof_equal(symmetrize_proof(sym, inv, cfg, reg),
                           annotate(proof, cfg, reg))
        checked += 1
    rng = random.Random(20260808)
    for _ in range(1000):
        proof = random_proof(rng, cfg, reg, max_depth=6)
        sym = symmetrize_proof(proof, IDENTITY_INV, cfg, reg)
        assert check_proof(sym, cfg, reg).ok
        assert sequent_equal(sym.conclusion,
                             symmetrize_sequent(proof.conclusion, IDENTITY_INV))
        assert proof_equal(symmetrize_proof(sym, IDENTITY_INV, cfg, reg), proof)
    _verdict(2, True, f"{checked} corpus proofs + 1000 random proofs "
                      f"symmetrize, check, and double back")


def _dictionary_formula(rng: random.Random):
    pred = rng.choice("AB")
    shape = rng.randrange(3)
    if shape == 0:
        label = rng.choice(("down", "up"))
        return Atom(pred, None, (Outcome(label, Fraction(1)),))
    if shape == 1:
        dom = rng.choice(("Ddown", "Dup", "Dplus", "Dminus"))
        return Forall(x, dom, Atom(pred, None, (x,)))
    dom = rng.choice(("Dplus", "Dminus"))
    tag = rng.choice((IDENTICAL, OPPOSITE))
    return Forall(x, dom, Join(tag, Atom(pred, IConst(1), (x,)),
                               Atom(pred, IConst(2), (x,))))


def test_criterion_3_involution_suite():
    rng = random.Random(31415)
    for _ in range(1000):
        for inv in (IDENTITY_INV, LiteralInvolution("d")):
            f = random_formula(rng, 4, dual_tag=inv.name)
            assert symmetrize_formula(symmetrize_formula(f, inv), inv) == f
    for _ in range(1000):
        f = _dictionary_formula(rng)
        for d in ("perp", "top"):
            assert apply_duality(apply_duality(f, d), d) == f
    lits = [Atom(p, None, (Outcome(lab, Fraction(1)),))
            for p in "AB" for lab in ("down", "up")] + \
           [Forall(x, dom, Atom(p, None, (x,)))
            for p in "AB" for dom in ("Dplus", "Dminus")]
    for lit in lits:
        assert apply_duality(apply_duality(lit, "perp"), "top") == \
            apply_duality(apply_duality(lit, "top"), "perp")
    _verdict(3, True, "symmetry map and both dualities involutive on 1000 "
                      "random formulas; dualities commute on the dictionary")


def test_criterion_4_focus_dichotomy():
    cfg, reg = proof_context()
    t1, t2 = reg.get("D").entries
    pos = search_proof(seq([And(A(t1), A(t2))], [Forall(x, "D", A(x))]),
                       cfg, reg, depth=6)
    dn, up = reg.get("Dplus").entries
    neg = search_proof(seq([And(A(dn), A(up))], [Forall(x, "Dplus", A(x))]),
                       cfg, reg, depth=8)
    ok = pos.found and pos.depth <= 6 and not neg.found
    _verdict(4, ok, f"focused found at depth {pos.depth}; "
                    f"unfocused {neg.status} at depth 8")


def test_criterion_5_licensing_law():
    states = 0
    for focused in (False, True):
        for virtual in (False, True):
            for n in (1, 2):
                states += 1
                entries = tuple(Outcome(f"o{i}", Fraction(1, n))
                                for i in range(n))
                rec = DomainRecord("X", entries, focused=focused,
                                   virtual_singleton=virtual,
                                   duality="d" if virtual else None)
                reg = Registry()
                try:
                    reg.register_domain(rec)
                except InvariantViolation:
                    assert focused and virtual and n == 2
                    continue
                expected = virtual or (focused and n == 1)
                if expected:
                    reg.license_d_axiom("X", "d")
                else:
                    with pytest.raises(FocusedNonSingleton):
                        reg.license_d_axiom("X", "d")
    _verdict(5, states == 8, "license granted exactly on virtual singletons "
                             "and extensional singletons (8 states)")


def test_criterion_6_collapse_demo():
    reg = standard_registry(collapse_demo=True)
    status, proofs = reg.consistency_guard("V")
    from symlog.kernel import collapse_config
    cfg = collapse_config(reg, "V")
    ok = status == "collapse" and len(proofs) == 2
    ok = ok and all(check_proof(p, cfg, reg).ok for p in proofs)
    v1, v2 = reg.get("V").entries
    goal = seq([], [Eq(v2, v1)])
    plain = standard_registry()
    no_subst = CalculusConfig(True, True, True, True,
                              d_axiom_domains=frozenset({("V", "d")}))
    no_dax = CalculusConfig(True, True, True, True,
                            substitution_domains=frozenset({"V"}),
                            collapse_demo=True)
    n1 = search_proof(goal, no_subst, plain, depth=8)
    n2 = search_proof(goal, no_dax, plain, depth=8)
    ok = ok and not n1.found and not n2.found
    _verdict(6, ok, "both licenses derive the entry equation; either alone "
                    f"leaves it {n1.status}/{n2.status} at depth 8")


def test_criterion_7_quantum_dictionary():
    rep = duality_correspondence()
    ok = rep["ok"] and len(rep["cells"]) == 8
    zeros = []
    for i in range(11):
        a2 = i / 10
        a, b = math.sqrt(a2), math.sqrt(1 - a2)
        for k in range(16):
            if abs(inner_product(Qubit(a, b, 0.0),
                                 Qubit(a, b, k * math.pi / 8))) < 1e-12:
                zeros.append((i, k))
    ok = ok and zeros == [(5, 8)]
    rng = random.Random(2718)
    X, Z = GateTag("X"), GateTag("Z")
    for _ in range(1000):
        q = random_qubit(rng)
        for g in (X, Z):
            r = apply_gate(g, apply_gate(g, q))
            ok = ok and abs(abs(inner_product(q, r)) - 1.0) < 1e-12
    _verdict(7, ok, "8/8 duality cells; grid zero only at balanced "
                    "amplitudes with opposite phase; gates involutive on "
                    "1000 states")


def test_criterion_8_collapse_semantics():
    half = Fraction(1, 2)
    want = And(Atom("A", None, (Outcome("down", half),)),
               Atom("A", None, (Outcome("up", half),)))
    ok = collapse(KET_PLUS) == want and collapse(KET_MINUS) == want
    for phase in ("plus", "minus"):
        for tag in (IDENTICAL, OPPOSITE):
            b = bell_formula(BellState(phase, tag))
            ok = ok and apply_duality(b, "perp") == b
    _verdict(8, ok, "measurement forgets the phase; the sharp duality fixes "
                    "all four correlated states")


def test_criterion_9_parser_round_trip(tmp_path):
    export_corpus(tmp_path)
    for path in sorted(tmp_path.glob("*.blq")):
        sc = parse_script(path.read_text())
        assert print_script(parse_script(print_script(sc))) == print_script(sc)
    rng = random.Random(99999)
    for _ in range(1000):
        f = random_formula(rng, rng.randrange(1, 6), dual_tag="d")
        assert parse_formula(print_formula(f)) == f
    base = (CORPUS_DIR / "c6.blq").read_text()
    tokens = re.split(r"(\s+)", base)
    stable = 0
    for _ in range(1000):
        mutant = list(tokens)
        for _ in range(rng.randrange(1, 4)):
            mutant[rng.randrange(len(mutant))] = ""
        try:
            sc = parse_script("".join(mutant))
        except Exception:
            continue
        out = print_script(sc)
        assert print_script(parse_script(out)) == out
        stable += 1
    _verdict(9, True, f"corpus and 1000 random formulas round-trip; "
                      f"1000 mutations, {stable} parsed and all reprint-stable")
