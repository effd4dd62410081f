"""Random first-order domains: registration, focus, duality licensing.

A domain is a finite set of outcome terms.  A *focused* domain is one for
which membership entails the disjunction of equalities with its listed
entries, so substitution of entries for free variables is derivable.  A
*virtual singleton* is a non-empty unfocused domain equipped with a
duality ``d`` licensing the schema

    z in V, A(y) |- A(z), (y in V)^d

for every formula A.  Licensing both that schema and substitution on the
same domain lets the system prove the domain is a singleton, which is why
the two licenses are mutually exclusive outside collapse-demo mode.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .formulas import (
    DualMember, Eq, Formula, Member, Neq, Or, Outcome, Term, Var, seq,
)

__all__ = [
    "DomainRecord", "Registry", "RegistryError", "InvariantViolation",
    "EmptyDomain", "FocusedNonSingleton", "DAxiomSchema",
    "standard_registry",
]


class RegistryError(Exception):
    pass


class InvariantViolation(RegistryError):
    pass


class EmptyDomain(RegistryError):
    pass


class FocusedNonSingleton(RegistryError):
    pass


@dataclass(frozen=True)
class DomainRecord:
    name: str
    entries: tuple  # tuple[Outcome, ...]; may be empty for abstract test domains
    focused: bool
    virtual_singleton: bool = False
    duality: Optional[str] = None
    substitution_allowed: bool = False
    inhabited: bool = True

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(self.entries))

    @property
    def is_singleton(self) -> bool:
        return self.focused and len(self.entries) == 1

    def validate(self, collapse_demo: bool = False) -> None:
        if self.focused and self.virtual_singleton and len(self.entries) != 1:
            raise InvariantViolation(
                f"{self.name}: a focused virtual singleton must have exactly "
                f"one entry, got {len(self.entries)}")
        if self.entries:
            total = sum((e.prob for e in self.entries), Fraction(0))
            if total != 1:
                raise InvariantViolation(
                    f"{self.name}: entry probabilities sum to {total}, not 1")
        if self.virtual_singleton and not collapse_demo:
            if self.duality is None:
                raise InvariantViolation(
                    f"{self.name}: a virtual singleton needs a duality")
            if self.substitution_allowed:
                raise InvariantViolation(
                    f"{self.name}: substitution on a virtual singleton "
                    f"requires collapse-demo mode")


@dataclass(frozen=True)
class DAxiomSchema:
    """An issued d-axiom schema: which domain, which duality, and whether
    instances use the equality form (extensional singletons) or the
    dual-membership form (virtual singletons)."""

    domain: str
    dual: str
    singleton_entry: Optional[Outcome]  # set when the schema is the =/!= form


class Registry:
    """Named domains plus the duality tables connecting them.

    Built once per run, then read-only.
    """

    def __init__(self, collapse_demo: bool = False):
        self.collapse_demo = collapse_demo
        self._records: dict = {}
        # duality name -> involution on domain names
        self.duality_tables: dict = {}

    # -- construction ------------------------------------------------------

    def register_domain(self, record: DomainRecord) -> DomainRecord:
        record.validate(self.collapse_demo)
        if record.name in self._records:
            raise InvariantViolation(f"domain already registered: {record.name}")
        self._records[record.name] = record
        return record

    def declare_duality_table(self, dual: str, table: dict) -> None:
        """Declare how a duality maps domain names.  Must be an involution."""
        for a, b in table.items():
            if table.get(b) != a:
                raise InvariantViolation(
                    f"duality table for {dual!r} is not an involution at {a!r}")
        self.duality_tables.setdefault(dual, {}).update(table)

    # -- lookup ------------------------------------------------------------

    def __contains__(self, name: str) -> bool:
        return name in self._records

    def get(self, name: str) -> DomainRecord:
        try:
            return self._records[name]
        except KeyError:
            raise RegistryError(f"unknown domain: {name}") from None

    def names(self):
        return tuple(self._records)

    def witness(self, name: str) -> Var:
        """The distinguished variable inhabiting a domain declared non-empty."""
        self.get(name)
        return Var(f"w{name}")

    def dual_domain(self, dual: str, name: str) -> Optional[str]:
        return self.duality_tables.get(dual, {}).get(name)

    # -- derived formulas ----------------------------------------------------

    def dual_membership(self, t: Term, name: str, dual: str) -> Formula:
        """The dual proposition of ``t in name`` under duality ``dual``.

        Rendered through the duality table where one is declared; for an
        extensional singleton {u} under the equality duality it is the
        disequation ``t != u``; otherwise it stays an opaque dual-membership
        literal.
        """
        rec = self.get(name)
        if dual == "neq" and rec.is_singleton:
            return Neq(t, rec.entries[0])
        mapped = self.dual_domain(dual, name)
        if mapped is not None:
            return Member(t, mapped)
        return DualMember(t, name, dual)

    def focus_disjunction(self, name: str, z: Var) -> Formula:
        rec = self.get(name)
        if not rec.entries:
            raise EmptyDomain(name)
        f: Formula = Eq(z, rec.entries[-1])
        for e in reversed(rec.entries[:-1]):
            f = Or(Eq(z, e), f)
        return f

    def focus_sequents(self, name: str, z: Var = Var("z")) -> tuple:
        """The pair (disjunction |- membership, membership |- disjunction).

        The first is derivable for every domain with entries; the second is
        available as an axiom exactly when the domain is declared focused.
        """
        disj = self.focus_disjunction(name, z)
        return (seq([disj], [Member(z, name)]), seq([Member(z, name)], [disj]))

    # -- membership axioms ---------------------------------------------------

    def is_member_axiom(self, t: Term, name: str) -> bool:
        """True when ``|- t in name`` is registry-issued: entries always,
        plus the distinguished witness variable for inhabited domains."""
        rec = self.get(name)
        if isinstance(t, Outcome) and t in rec.entries:
            return True
        return rec.inhabited and t == self.witness(name)

    def dual_member_refuted(self, t: Term, name: str, dual: str) -> bool:
        """True when ``(t in name)^dual |-`` is registry-issued.

        Issued for declared members, except when the rendered dual is itself
        a true membership (dual domains sharing the entry), which would make
        the axiom pair inconsistent.
        """
        if not self.is_member_axiom(t, name):
            return False
        rendered = self.dual_membership(t, name, dual)
        if isinstance(rendered, Member):
            return not self.is_member_axiom(rendered.term, rendered.domain)
        if isinstance(rendered, Neq):
            # t != t on the left is the disequality-reflexivity axiom; fine
            return True
        return True  # opaque dual literal: always refutable for members

    # -- d-axiom licensing ---------------------------------------------------

    def license_d_axiom(self, name: str, dual: str) -> DAxiomSchema:
        """License the d-axiom schema for a domain.

        Succeeds exactly for virtual singletons and extensional singletons;
        for the latter the schema degenerates to the derivable =/!= form.
        """
        rec = self.get(name)
        if rec.virtual_singleton:
            return DAxiomSchema(name, dual, None)
        if rec.is_singleton:
            return DAxiomSchema(name, "neq", rec.entries[0])
        raise FocusedNonSingleton(
            f"{name}: d-axioms require a virtual singleton or an "
            f"extensional singleton")

    def consistency_guard(self, name: str, cfg=None):
        """Check whether a domain's licenses conflict; demonstrate if so.

        Returns ``("consistent", None)`` when substitution and d-axioms are
        not both licensed, else (in collapse-demo mode) builds, for each
        pair of distinct entries, a kernel-checked proof that they are
        equal, returning ``("collapse", proofs)``.
        """
        from . import kernel  # local import: the guard drives the checker

        rec = self.get(name)
        both = rec.substitution_allowed and rec.duality is not None and (
            rec.virtual_singleton or rec.is_singleton)
        if not both:
            return ("consistent", None)
        if rec.is_singleton:
            u = rec.entries[0]
            proof = kernel.build_refl_proof(u)
            return ("consistent", [proof])
        if not self.collapse_demo:
            raise InvariantViolation(
                f"{name}: conflicting licenses outside collapse-demo mode")
        proofs = []
        cfg = cfg if cfg is not None else kernel.collapse_config(self, name)
        for a in rec.entries:
            for b in rec.entries:
                if a == b:
                    continue
                proofs.append(kernel.build_collapse_proof(self, cfg, name, b, a))
        return ("collapse", proofs)


# --------------------------------------------------------------------------
# the standard registry used by the corpus and the quantum layer

def standard_registry(collapse_demo: bool = False) -> Registry:
    """Domains shared by the test corpus and the qubit dictionary.

    * ``Ddown``/``Dup``: the sharp measurement outcomes, extensional
      singletons dual to each other under ``perp``.
    * ``Dplus``/``Dminus``: the two unfocused copies of the uniform
      two-outcome domain, virtual singletons dual under ``top``.
    * ``D``: a generic focused two-entry domain.
    * ``V``: a two-entry virtual singleton with an abstract duality ``d``,
      used for collapse demonstrations.
    """
    half = Fraction(1, 2)
    reg = Registry(collapse_demo=collapse_demo)
    reg.register_domain(DomainRecord(
        "Ddown", (Outcome("down", 1),), focused=True, duality="neq",
        substitution_allowed=True))
    reg.register_domain(DomainRecord(
        "Dup", (Outcome("up", 1),), focused=True, duality="neq",
        substitution_allowed=True))
    reg.register_domain(DomainRecord(
        "Dplus", (Outcome("down", half), Outcome("up", half)),
        focused=False, virtual_singleton=True, duality="top"))
    reg.register_domain(DomainRecord(
        "Dminus", (Outcome("down", half), Outcome("up", half)),
        focused=False, virtual_singleton=True, duality="top"))
    reg.register_domain(DomainRecord(
        "D", (Outcome("t1", half), Outcome("t2", half)),
        focused=True, substitution_allowed=True))
    reg.register_domain(DomainRecord(
        "V", (Outcome("v1", half), Outcome("v2", half)),
        focused=False, virtual_singleton=True, duality="d",
        substitution_allowed=collapse_demo))
    reg.declare_duality_table("perp", {
        "Ddown": "Dup", "Dup": "Ddown", "Dplus": "Dplus", "Dminus": "Dminus",
    })
    reg.declare_duality_table("top", {
        "Dplus": "Dminus", "Dminus": "Dplus", "Ddown": "Ddown", "Dup": "Dup",
    })
    return reg
