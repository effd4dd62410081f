"""The three involutions: the symmetry map on formulas and sequents, and
the literal dualities ``perp`` and ``top``.

The symmetry map swaps each connective with its mate and reverses the
operands::

    (&, \\/)   (*, (x))   (->, <-)   (forall, exists)

Literals pass through the involution's tables.  Membership atoms swap
with dual-membership atoms tagged by the involution's name; domains with
a declared duality table render the dual membership as plain membership
in the mapped domain.  Quantifiers over domains listed as self-dual keep
their constructor (their existential and universal readings coincide), so
only the membership literal dualizes.

``apply_duality`` is a different beast: it rewrites the qubit dictionary
(sharp/phase literals, their quantified forms, and the correlated pair
formulas) through the ``perp``/``top`` tables without touching the
logical structure, and is partial outside that dictionary.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .formulas import (
    And, Atom, CorrPair, DualMember, Eq, Excl, Exists, Forall, Formula, Imp,
    IndexRel, Join, Member, Neq, Or, Outcome, Par, Sequent, Single, Slot,
    Times,
)

__all__ = [
    "LiteralInvolution", "IDENTITY_INV", "PERP_INV", "TOP_INV",
    "symmetrize_formula", "symmetrize_slot", "symmetrize_sequent",
    "apply_duality", "UnclassifiedLiteral",
    "SHARP_LABELS", "PHASE_DOMAINS",
]

SHARP_LABELS = {"down": "up", "up": "down"}
PHASE_DOMAINS = {"Dplus": "Dminus", "Dminus": "Dplus"}
SHARP_DOMAINS = {"Ddown": "Dup", "Dup": "Ddown"}


@dataclass(frozen=True)
class LiteralInvolution:
    """An involution on literals, with the tables the symmetry map needs.

    ``label_swap`` acts on outcome labels inside atoms; ``domain_table``
    maps domain names (memberships render through it); ``self_dual_domains``
    lists domains whose quantifiers are insensitive to the direction of
    consequence.  All tables must be involutions.
    """

    name: str
    label_swap: dict = field(default_factory=dict)
    domain_table: dict = field(default_factory=dict)
    self_dual_domains: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "self_dual_domains",
                           frozenset(self.self_dual_domains))
        for table in (self.label_swap, self.domain_table):
            for a, b in table.items():
                if table.get(b) != a:
                    raise ValueError(
                        f"{self.name}: table not an involution at {a!r}")

    def swap_label(self, label: str) -> str:
        return self.label_swap.get(label, label)

    def swap_domain(self, name: str):
        return self.domain_table.get(name)


IDENTITY_INV = LiteralInvolution("identity")
PERP_INV = LiteralInvolution("perp", label_swap=dict(SHARP_LABELS),
                             domain_table={**SHARP_DOMAINS,
                                           "Dplus": "Dplus",
                                           "Dminus": "Dminus"})
TOP_INV = LiteralInvolution("top", domain_table={**PHASE_DOMAINS,
                                                 "Ddown": "Ddown",
                                                 "Dup": "Dup"})


def _swap_term(inv: LiteralInvolution, t):
    if isinstance(t, Outcome):
        return Outcome(inv.swap_label(t.label), t.prob)
    return t


def symmetrize_formula(f: Formula, inv: LiteralInvolution) -> Formula:
    s = lambda g: symmetrize_formula(g, inv)
    if isinstance(f, Atom):
        return Atom(f.pred, f.index, tuple(_swap_term(inv, t) for t in f.args))
    if isinstance(f, Member):
        mapped = inv.swap_domain(f.domain)
        if mapped is not None:
            return Member(f.term, mapped)
        return DualMember(f.term, f.domain, inv.name)
    if isinstance(f, DualMember):
        if f.dual == inv.name:
            return Member(f.term, f.domain)
        return f  # a foreign tag is outside this involution's swap
    if isinstance(f, Eq):
        return Neq(f.lhs, f.rhs)
    if isinstance(f, Neq):
        return Eq(f.lhs, f.rhs)
    if isinstance(f, IndexRel):
        return IndexRel(f.j, f.tag, f.i)
    if isinstance(f, And):
        return Or(s(f.b), s(f.a))
    if isinstance(f, Or):
        return And(s(f.b), s(f.a))
    if isinstance(f, Times):
        return Par(s(f.b), s(f.a))
    if isinstance(f, Par):
        return Times(s(f.b), s(f.a))
    if isinstance(f, Imp):
        return Excl(s(f.b), s(f.a))
    if isinstance(f, Excl):
        return Imp(s(f.b), s(f.a))
    if isinstance(f, Join):
        return Join(f.tag, s(f.b), s(f.a))
    if isinstance(f, Forall):
        ctor = Forall if f.domain in inv.self_dual_domains else Exists
        return ctor(f.var, f.domain, s(f.body))
    if isinstance(f, Exists):
        ctor = Exists if f.domain in inv.self_dual_domains else Forall
        return ctor(f.var, f.domain, s(f.body))
    raise TypeError(f"not a formula: {f!r}")


def symmetrize_slot(slot: Slot, inv: LiteralInvolution) -> Slot:
    if isinstance(slot, Single):
        return Single(symmetrize_formula(slot.formula, inv))
    return CorrPair(symmetrize_formula(slot.b, inv), slot.tag,
                    symmetrize_formula(slot.a, inv))


def symmetrize_sequent(s: Sequent, inv: LiteralInvolution) -> Sequent:
    """The symmetric sequent: sides swapped, slot order reversed, every
    slot symmetrized."""
    left = tuple(symmetrize_slot(sl, inv) for sl in reversed(s.right))
    right = tuple(symmetrize_slot(sl, inv) for sl in reversed(s.left))
    return Sequent(left, right)


# --------------------------------------------------------------------------
# the qubit-dictionary dualities

class UnclassifiedLiteral(Exception):
    """Raised when a formula falls outside the qubit dictionary."""


_DUAL_TABLES = {
    "perp": {"labels": SHARP_LABELS,
             "domains": {**SHARP_DOMAINS, "Dplus": "Dplus", "Dminus": "Dminus"}},
    "top": {"labels": {},
            "domains": {**PHASE_DOMAINS, "Ddown": "Ddown", "Dup": "Dup"}},
}


def _is_sharp_atom(f: Formula) -> bool:
    return (isinstance(f, Atom) and len(f.args) == 1
            and isinstance(f.args[0], Outcome)
            and f.args[0].label in SHARP_LABELS
            and f.args[0].prob == 1)


def apply_duality(f: Formula, name: str) -> Formula:
    """Rewrite a qubit-dictionary formula through the ``perp``/``top``
    tables.

    Handled shapes: sharp literals (single-outcome atoms with probability
    one), quantified state formulas over the four measurement domains, and
    the correlated-pair state formulas, on which ``top`` acts as the
    identity because the switch of phase modality and the switch of
    correlation modality cancel.
    """
    if name not in _DUAL_TABLES:
        raise ValueError(f"unknown duality: {name!r}")
    tables = _DUAL_TABLES[name]
    if _is_sharp_atom(f):
        out = f.args[0]
        return Atom(f.pred, f.index, (Outcome(tables["labels"].get(out.label,
                                                                   out.label),
                                               out.prob),))
    if isinstance(f, And) and _is_sharp_atom(f.a) and _is_sharp_atom(f.b):
        # the post-measurement mixed state: both dualities leave it alone
        # except perp, which swaps the two conjuncts' labels
        return And(apply_duality(f.a, name), apply_duality(f.b, name))
    if isinstance(f, (Forall, Exists)):
        if isinstance(f.body, Join):
            # correlated-pair formulas are fixed points of both dualities
            return f
        if f.domain not in tables["domains"]:
            raise UnclassifiedLiteral(f"domain outside the dictionary: {f.domain}")
        body = f.body
        if not (isinstance(body, Atom) and f.var in body.args):
            raise UnclassifiedLiteral(f"body outside the dictionary: {body!r}")
        return type(f)(f.var, tables["domains"][f.domain], body)
    raise UnclassifiedLiteral(f"not a qubit-dictionary formula: {f!r}")
