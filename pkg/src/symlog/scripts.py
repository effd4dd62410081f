"""Surface syntax: an ASCII script format for domains, formulas, sequents,
and proof trees, with a round-trippable pretty-printer.

Operators, loosest binding first::

    ->  <-        implication / exclusion
    join_i join_o correlation connective
    \\/            additive disjunction
    &             additive conjunction
    *             multiplicative disjunction
    (x)           multiplicative conjunction

Atoms are ``name``, ``name_1(args)``; membership is ``t in D`` and its
dual ``(t in D)^d``; equality ``s = t`` and ``s /= t``; index relations
``1 ~i 2``.  Outcome terms pair a label with an exact rational: ``up@1/2``.
Sequent slots are comma-separated; a correlated pair is written with an
indexed comma: ``A_1(z) ,_i A_2(z)``.  Proof trees nest premises by
two-space indentation.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .domains import DomainRecord, Registry
from .formulas import (
    And, Atom, Const, CorrPair, DualMember, Eq, Excl, Exists, Forall, Formula,
    IConst, IVar, Imp, Index, IndexRel, Join, Member, Neq, Or, Outcome, Par,
    Sequent, Single, Slot, Term, Times, Var, tag_from_short,
)
from .kernel import ProofNode
from .rules import CalculusConfig

__all__ = [
    "ParseError", "Script", "parse_script", "print_script",
    "parse_formula", "print_formula", "parse_sequent", "print_sequent",
    "parse_term", "print_term", "parse_proof_block", "print_proof",
    "print_param", "parse_param",
]


class ParseError(Exception):
    def __init__(self, line: int, col: int, expected: str, found: str):
        super().__init__(f"{line}:{col}: expected {expected}, found {found!r}")
        self.line = line
        self.col = col
        self.expected = expected
        self.found = found


# --------------------------------------------------------------------------
# lexer

_TOKEN_RE = re.compile(r"""
    (?P<ws>[ \t]+)
  | (?P<sym>join_[io]|\|-|<->|->|<-|,_i|,_o|~i|~o|/=|\\/|[(){}.,=&*^@:/_])
  | (?P<num>\d+)
  | (?P<ident>[A-Za-z][A-Za-z0-9']*)
""", re.VERBOSE)


@dataclass(frozen=True)
class Tok:
    kind: str  # "sym" | "num" | "ident" | "end"
    text: str
    line: int
    col: int


def _lex(text: str, line: int = 1) -> list:
    toks = []
    i = 0
    cur_line = line
    line_start = 0
    while i < len(text):
        if text[i] == "\n":
            cur_line += 1
            i += 1
            line_start = i
            continue
        m = _TOKEN_RE.match(text, i)
        if m is None:
            raise ParseError(cur_line, i - line_start + 1, "a token", text[i])
        i = m.end()
        if m.lastgroup == "ws":
            continue
        toks.append(Tok(m.lastgroup, m.group(), cur_line,
                        m.start() - line_start + 1))
    toks.append(Tok("end", "<end>", cur_line, len(text) - line_start + 1))
    return toks


class _Stream:
    def __init__(self, toks: list, consts: Optional[set] = None):
        self.toks = toks
        self.i = 0
        self.consts = consts or set()

    def peek(self, ahead: int = 0) -> Tok:
        return self.toks[min(self.i + ahead, len(self.toks) - 1)]

    def next(self) -> Tok:
        t = self.peek()
        self.i += 1
        return t

    def at(self, text: str) -> bool:
        return self.peek().text == text and self.peek().kind != "end"

    def eat(self, text: str) -> Tok:
        t = self.peek()
        if t.text != text or t.kind == "end":
            raise ParseError(t.line, t.col, repr(text), t.text)
        return self.next()

    def ident(self, what: str = "an identifier") -> str:
        t = self.peek()
        if t.kind != "ident":
            raise ParseError(t.line, t.col, what, t.text)
        return self.next().text

    def number(self) -> int:
        t = self.peek()
        if t.kind != "num":
            raise ParseError(t.line, t.col, "a number", t.text)
        return int(self.next().text)

    def done(self) -> bool:
        return self.peek().kind == "end"

    def expect_end(self) -> None:
        t = self.peek()
        if t.kind != "end":
            raise ParseError(t.line, t.col, "end of input", t.text)


_KEYWORDS = {"in", "forall", "exists", "join_i", "join_o", "true", "false"}


# --------------------------------------------------------------------------
# terms

def _parse_rational(s: _Stream) -> Fraction:
    num = s.number()
    if s.at("/"):
        s.next()
        return Fraction(num, s.number())
    return Fraction(num)


def _parse_term(s: _Stream) -> Term:
    name = s.ident("a term")
    if s.at("@"):
        s.next()
        return Outcome(name, _parse_rational(s))
    if name in s.consts:
        return Const(name)
    return Var(name)


def parse_term(text: str, consts: Optional[set] = None) -> Term:
    s = _Stream(_lex(text), consts)
    t = _parse_term(s)
    s.expect_end()
    return t


def print_term(t: Term) -> str:
    if isinstance(t, Outcome):
        return f"{t.label}@{t.prob}"
    return t.name


def _print_index(i: Index) -> str:
    return str(i.value) if isinstance(i, IConst) else i.name


def _parse_index(s: _Stream) -> Index:
    t = s.peek()
    if t.kind == "num":
        return IConst(s.number())
    return IVar(s.ident("an index"))


# --------------------------------------------------------------------------
# formulas

_LEVELS = ("arrow", "join", "or", "and", "par", "times")

_OP_LEVEL = {Imp: 0, Excl: 0, Join: 1, Or: 2, And: 3, Par: 4, Times: 5}
_OP_TEXT = {Imp: "->", Excl: "<-", Or: "\\/", And: "&", Par: "*", Times: "(x)"}


def _parse_formula(s: _Stream, level: int = 0) -> Formula:
    if level >= len(_LEVELS):
        return _parse_primary(s)
    lhs = _parse_formula(s, level + 1)
    name = _LEVELS[level]
    t = s.peek()
    if name == "arrow":
        if t.text in ("->", "<-"):
            s.next()
            ctor = Imp if t.text == "->" else Excl
            return ctor(lhs, _parse_formula(s, level + 1))
    elif name == "join":
        if t.text in ("join_i", "join_o"):
            s.next()
            return Join(tag_from_short(t.text[-1]), lhs,
                        _parse_formula(s, level + 1))
    elif name == "or" and t.text == "\\/":
        s.next()
        return Or(lhs, _parse_formula(s, level + 1))
    elif name == "and" and t.text == "&":
        s.next()
        return And(lhs, _parse_formula(s, level + 1))
    elif name == "par" and t.text == "*":
        s.next()
        return Par(lhs, _parse_formula(s, level + 1))
    elif name == "times" and (t.text == "(" and s.peek(1).text == "x"
                              and s.peek(2).text == ")"):
        s.next()
        s.next()
        s.next()
        return Times(lhs, _parse_formula(s, level + 1))
    return lhs


def _parse_primary(s: _Stream) -> Formula:
    t = s.peek()
    if t.text == "(":
        s.next()
        inner = _parse_formula(s, 0)
        s.eat(")")
        if s.at("^"):
            s.next()
            dual = s.ident("a duality name")
            if not isinstance(inner, Member):
                raise ParseError(t.line, t.col,
                                 "a membership inside (...)^dual", "formula")
            return DualMember(inner.term, inner.domain, dual)
        return inner
    if t.text in ("forall", "exists"):
        s.next()
        v = Var(s.ident("a bound variable"))
        s.eat("in")
        dom = s.ident("a domain name")
        s.eat(".")
        body = _parse_formula(s, 0)
        return (Forall if t.text == "forall" else Exists)(v, dom, body)
    if t.kind == "num":
        i = _parse_index(s)
        op = s.next()
        if op.text not in ("~i", "~o"):
            raise ParseError(op.line, op.col, "~i or ~o", op.text)
        j = _parse_index(s)
        return IndexRel(i, tag_from_short(op.text[-1]), j)
    if t.kind != "ident":
        raise ParseError(t.line, t.col, "a formula", t.text)
    # identifier: atom, membership, equality, or an index relation over IVar
    if s.peek(1).text in ("~i", "~o"):
        i = _parse_index(s)
        op = s.next()
        j = _parse_index(s)
        return IndexRel(i, tag_from_short(op.text[-1]), j)
    start = s.i
    term = _parse_term(s)
    nxt = s.peek()
    if nxt.text == "in":
        s.next()
        return Member(term, s.ident("a domain name"))
    if nxt.text == "=":
        s.next()
        return Eq(term, _parse_term(s))
    if nxt.text == "/=":
        s.next()
        return Neq(term, _parse_term(s))
    # plain atom: re-read as predicate with optional index and arguments
    s.i = start
    pred = s.ident("a predicate")
    index: Optional[Index] = None
    if s.at("_"):
        s.next()
        index = _parse_index(s)
    args: tuple = ()
    if s.at("("):
        # a parenthesis straight after a predicate is its argument list;
        # a bare atom to the left of the (x) operator must be parenthesized
        s.next()
        items = [_parse_term(s)]
        while s.at(","):
            s.next()
            items.append(_parse_term(s))
        s.eat(")")
        args = tuple(items)
    return Atom(pred, index, args)


def parse_formula(text: str, consts: Optional[set] = None) -> Formula:
    s = _Stream(_lex(text), consts)
    f = _parse_formula(s, 0)
    s.expect_end()
    return f


def print_formula(f: Formula, parent_level: int = -1) -> str:
    if isinstance(f, Atom):
        out = f.pred
        if f.index is not None:
            out += f"_{_print_index(f.index)}"
        if f.args:
            out += "(" + ", ".join(print_term(a) for a in f.args) + ")"
        return out
    if isinstance(f, Member):
        s = f"{print_term(f.term)} in {f.domain}"
        return f"({s})" if parent_level >= 0 else s
    if isinstance(f, DualMember):
        return f"({print_term(f.term)} in {f.domain})^{f.dual}"
    if isinstance(f, Eq):
        s = f"{print_term(f.lhs)} = {print_term(f.rhs)}"
        return f"({s})" if parent_level >= 0 else s
    if isinstance(f, Neq):
        s = f"{print_term(f.lhs)} /= {print_term(f.rhs)}"
        return f"({s})" if parent_level >= 0 else s
    if isinstance(f, IndexRel):
        s = f"{_print_index(f.i)} ~{f.tag.short} {_print_index(f.j)}"
        return f"({s})" if parent_level >= 0 else s
    if isinstance(f, (Forall, Exists)):
        q = "forall" if isinstance(f, Forall) else "exists"
        s = f"{q} {f.var.name} in {f.domain} . {print_formula(f.body)}"
        return f"({s})" if parent_level >= 0 else s
    lvl = _OP_LEVEL[type(f)]
    op = f"join_{f.tag.short}" if isinstance(f, Join) else _OP_TEXT[type(f)]
    left = print_formula(f.a, lvl)
    if isinstance(f, Times) and isinstance(f.a, Atom) and not f.a.args:
        left = f"({left})"  # keep the (x) operator out of an argument list
    body = f"{left} {op} {print_formula(f.b, lvl)}"
    return f"({body})" if parent_level >= lvl else body


# --------------------------------------------------------------------------
# sequents

def _parse_slots(s: _Stream, stop: str) -> tuple:
    slots: list = []
    if s.at(stop) or s.done():
        return tuple(slots)
    while True:
        a = _parse_formula(s, 0)
        if s.peek().text in (",_i", ",_o"):
            tag = tag_from_short(s.next().text[-1])
            b = _parse_formula(s, 0)
            slots.append(CorrPair(a, tag, b))
        else:
            slots.append(Single(a))
        if s.at(","):
            s.next()
            continue
        return tuple(slots)


def parse_sequent(text: str, consts: Optional[set] = None) -> Sequent:
    s = _Stream(_lex(text), consts)
    seqt = _parse_sequent(s)
    s.expect_end()
    return seqt


def _parse_sequent(s: _Stream) -> Sequent:
    left = _parse_slots(s, "|-")
    s.eat("|-")
    right = _parse_slots(s, "<never>")
    return Sequent(left, right)


def _print_slot(slot: Slot) -> str:
    if isinstance(slot, Single):
        return print_formula(slot.formula)
    return f"{print_formula(slot.a)} ,_{slot.tag.short} {print_formula(slot.b)}"


def print_sequent(s: Sequent) -> str:
    left = ", ".join(_print_slot(x) for x in s.left)
    right = ", ".join(_print_slot(x) for x in s.right)
    if left and right:
        return f"{left} |- {right}"
    if left:
        return f"{left} |-"
    return f"|- {right}"


# --------------------------------------------------------------------------
# rule parameters

_PARAM_KIND = {
    "pos": "int", "mpos": "int", "qpos": "int", "dpos": "int",
    "relpos": "int", "i": "int", "j": "int", "lpos": "int", "rpos": "int",
    "apos": "int", "bpos": "int",
    "as_eq": "bool",
    "a": "formula", "other": "formula", "formula": "formula", "body": "formula",
    "t": "term", "s": "term", "term": "term",
    "var": "term", "z": "term", "y": "term", "hole": "term",
    "domain": "str", "dual": "str",
}


def print_param(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, int):
        return str(v)
    if isinstance(v, str):
        return v
    if isinstance(v, Formula):
        return "{" + print_formula(v) + "}"
    return print_term(v)


def parse_param(text: str, key: Optional[str] = None,
                consts: Optional[set] = None):
    text = text.strip()
    if text.startswith("{"):
        if not text.endswith("}"):
            raise ParseError(1, 1, "a closing brace", text[-1:])
        return parse_formula(text[1:-1], consts)
    if text == "true":
        return True
    if text == "false":
        return False
    if re.fullmatch(r"\d+", text):
        return int(text)
    kind = _PARAM_KIND.get(key or "", None)
    if kind == "str":
        return text
    if kind == "term":
        return parse_term(text, consts)
    # unknown key: identifiers default to strings, terms need the key table
    return text


# --------------------------------------------------------------------------
# proof blocks

def print_proof(p: ProofNode, indent: int = 0) -> str:
    pad = "  " * indent
    parts = [p.rule]
    for k in sorted(p.params):
        parts.append(f"{k}={print_param(p.params[k])}")
    line = pad + " ".join(parts)
    if p.conclusion is not None:
        line += " : " + print_sequent(p.conclusion)
    out = [line]
    for q in p.premises:
        out.append(print_proof(q, indent + 1))
    return "\n".join(out)


_PARAM_TOKEN_RE = re.compile(r"(\w+)=(\{[^}]*\}|[^\s]+)")


def _parse_proof_line(text: str, lineno: int, consts: set) -> ProofNode:
    if ":" in text:
        head, _, tail = text.partition(":")
        conclusion = parse_sequent(tail.strip(), consts)
    else:
        head, conclusion = text, None
    bits = head.strip().split(None, 1)
    if not bits:
        raise ParseError(lineno, 1, "a rule name", "")
    rule = bits[0]
    params = {}
    if len(bits) > 1:
        for m in _PARAM_TOKEN_RE.finditer(bits[1]):
            key, raw = m.group(1), m.group(2)
            params[key] = parse_param(raw, key, consts)
    return ProofNode(rule, params, (), conclusion)


def parse_proof_block(lines: list, start: int, indent: int,
                      consts: set) -> tuple:
    """Parse a proof tree from indented lines, returning (node, next_line)."""
    text = lines[start]
    node = _parse_proof_line(text.strip(), start + 1, consts)
    premises = []
    i = start + 1
    child_indent = indent + 2
    while i < len(lines):
        line = lines[i]
        if not line.strip():
            break
        depth = len(line) - len(line.lstrip(" "))
        if depth < child_indent:
            break
        if depth > child_indent:
            raise ParseError(i + 1, depth + 1,
                             f"indentation {child_indent}", line.strip()[:10])
        child, i = parse_proof_block(lines, i, child_indent, consts)
        premises.append(child)
    return ProofNode(node.rule, node.params, tuple(premises),
                     node.conclusion), i


# --------------------------------------------------------------------------
# scripts

@dataclass
class Script:
    domains: list = field(default_factory=list)       # DomainRecord
    dualtables: dict = field(default_factory=dict)    # name -> {dom: dom}
    flags: dict = field(default_factory=dict)
    subst_licenses: list = field(default_factory=list)
    daxiom_licenses: list = field(default_factory=list)  # (domain, dual)
    collapse_demo: bool = False
    consts: set = field(default_factory=set)
    sequents: dict = field(default_factory=dict)      # name -> Sequent
    proofs: dict = field(default_factory=dict)        # name -> ProofNode

    def registry(self) -> Registry:
        reg = Registry(collapse_demo=self.collapse_demo)
        for rec in self.domains:
            reg.register_domain(rec)
        for name, table in self.dualtables.items():
            reg.declare_duality_table(name, table)
        return reg

    def config(self) -> CalculusConfig:
        return CalculusConfig(
            left_contexts=self.flags.get("left_contexts", False),
            right_contexts=self.flags.get("right_contexts", False),
            weakening=self.flags.get("weakening", False),
            cut=self.flags.get("cut", False),
            substitution_domains=frozenset(self.subst_licenses),
            d_axiom_domains=frozenset(self.daxiom_licenses),
            collapse_demo=self.collapse_demo)


_FLAG_NAMES = ("left_contexts", "right_contexts", "weakening", "cut")


def _parse_domain_decl(s: _Stream) -> DomainRecord:
    name = s.ident("a domain name")
    s.eat("=")
    s.eat("{")
    entries = []
    if not s.at("}"):
        while True:
            label = s.ident("an outcome label")
            s.eat("@")
            entries.append(Outcome(label, _parse_rational(s)))
            if s.at(","):
                s.next()
                continue
            break
    s.eat("}")
    focused = virtual = subst = False
    inhabited = True
    duality = None
    while not s.done():
        word = s.peek().text
        if word == "focused":
            focused = True
        elif word == "virtual":
            virtual = True
        elif word == "subst":
            subst = True
        elif word == "uninhabited":
            inhabited = False
        elif word == "duality":
            s.next()
            duality = s.ident("a duality name")
            continue
        else:
            break
        s.next()
    return DomainRecord(name, tuple(entries), focused=focused,
                        virtual_singleton=virtual, duality=duality,
                        substitution_allowed=subst, inhabited=inhabited)


def parse_script(text: str) -> Script:
    sc = Script()
    lines = text.splitlines()
    known: set = set()
    i = 0
    while i < len(lines):
        raw = lines[i]
        line = raw.strip()
        if not line or line.startswith("#"):
            i += 1
            continue
        if raw[0] in " \t":
            raise ParseError(i + 1, 1, "a top-level declaration", line[:12])
        word = line.split(None, 1)[0]
        if word == "domain":
            s = _Stream(_lex(line[len("domain"):], i + 1), sc.consts)
            rec = _parse_domain_decl(s)
            s.expect_end()
            _check_unique(rec.name, known, i)
            sc.domains.append(rec)
        elif word == "dualtable":
            s = _Stream(_lex(line[len("dualtable"):], i + 1))
            name = s.ident("a duality name")
            s.eat("{")
            table = {}
            while not s.at("}"):
                a = s.ident("a domain name")
                s.eat("<->")
                b = s.ident("a domain name")
                table[a] = b
                table[b] = a
                if s.at(","):
                    s.next()
            s.eat("}")
            s.expect_end()
            sc.dualtables.setdefault(name, {}).update(table)
        elif word == "flags":
            for flag in line.split()[1:]:
                if flag == "collapse_demo":
                    sc.collapse_demo = True
                    continue
                if flag not in _FLAG_NAMES:
                    raise ParseError(i + 1, 1, "a flag name", flag)
                sc.flags[flag] = True
        elif word == "license":
            bits = line.split()
            if len(bits) == 3 and bits[1] == "subst":
                sc.subst_licenses.append(bits[2])
            elif len(bits) == 4 and bits[1] == "daxiom":
                sc.daxiom_licenses.append((bits[2], bits[3]))
            else:
                raise ParseError(i + 1, 1, "license subst D | license daxiom D d",
                                 line)
        elif word == "const":
            sc.consts.update(line.split()[1:])
        elif word == "sequent":
            name, body = _named_header(line, "sequent", i)
            _check_unique(name, known, i)
            sc.sequents[name] = parse_sequent(body, sc.consts)
        elif word == "proof":
            name, body = _named_header(line, "proof", i)
            _check_unique(name, known, i)
            root_concl = parse_sequent(body, sc.consts)
            node, i2 = parse_proof_block(lines, i + 1, 0, sc.consts)
            sc.proofs[name] = ProofNode(node.rule, node.params, node.premises,
                                        node.conclusion or root_concl)
            i = i2
            continue
        else:
            raise ParseError(i + 1, 1, "a declaration keyword", word)
        i += 1
    _validate_refs(sc)
    return sc


def _named_header(line: str, keyword: str, lineno: int) -> tuple:
    head, sep, body = line.partition(":")
    bits = head.split()
    if not sep or len(bits) != 2 or bits[0] != keyword:
        raise ParseError(lineno + 1, 1, f"{keyword} NAME : <sequent>", line[:20])
    return bits[1], body.strip()


def _check_unique(name: str, known: set, lineno: int) -> None:
    if name in known:
        raise ParseError(lineno + 1, 1, "a fresh name", name)
    known.add(name)


def _domain_refs(f: Formula):
    from .formulas import subformulas
    for g in subformulas(f):
        if isinstance(g, (Member, DualMember, Forall, Exists)):
            yield g.domain


def _formula_vars(f: Formula):
    from .formulas import free_vars, subformulas
    for g in subformulas(f):
        if isinstance(g, (Forall, Exists)):
            yield g.var
    yield from free_vars(f)


def _validate_refs(sc: Script) -> None:
    declared = {rec.name for rec in sc.domains}
    taken = set(sc.consts)
    for rec in sc.domains:
        taken.update(e.label for e in rec.entries)

    def check_sequent(s: Sequent, where: str) -> None:
        for slot in s.left + s.right:
            fs = (slot.formula,) if isinstance(slot, Single) else (slot.a, slot.b)
            for f in fs:
                for dom in _domain_refs(f):
                    if dom not in declared:
                        raise ParseError(0, 0, f"a declared domain ({where})",
                                         dom)
                for v in _formula_vars(f):
                    if v.name in taken:
                        raise ParseError(
                            0, 0, f"a variable name distinct from constants "
                                  f"and outcome labels ({where})", v.name)

    for name, s in sc.sequents.items():
        check_sequent(s, name)
    for name, p in sc.proofs.items():
        def walk(n: ProofNode) -> None:
            if n.conclusion is not None:
                check_sequent(n.conclusion, name)
            for q in n.premises:
                walk(q)
        walk(p)


def print_script(sc: Script) -> str:
    out = []
    for rec in sc.domains:
        entries = ", ".join(f"{e.label}@{e.prob}" for e in rec.entries)
        bits = [f"domain {rec.name} = {{ {entries} }}"]
        if rec.focused:
            bits.append("focused")
        if rec.virtual_singleton:
            bits.append("virtual")
        if rec.duality:
            bits.append(f"duality {rec.duality}")
        if rec.substitution_allowed:
            bits.append("subst")
        if not rec.inhabited:
            bits.append("uninhabited")
        out.append(" ".join(bits))
    for name in sorted(sc.dualtables):
        table = sc.dualtables[name]
        seen = set()
        pairs = []
        for a in table:
            if a in seen:
                continue
            b = table[a]
            seen.update({a, b})
            pairs.append(f"{a} <-> {b}")
        out.append(f"dualtable {name} {{ {', '.join(pairs)} }}")
    flags = [f for f in _FLAG_NAMES if sc.flags.get(f)]
    if sc.collapse_demo:
        flags.append("collapse_demo")
    if flags:
        out.append("flags " + " ".join(flags))
    for dom in sc.subst_licenses:
        out.append(f"license subst {dom}")
    for dom, dual in sc.daxiom_licenses:
        out.append(f"license daxiom {dom} {dual}")
    if sc.consts:
        out.append("const " + " ".join(sorted(sc.consts)))
    for name, s in sc.sequents.items():
        out.append(f"sequent {name} : {print_sequent(s)}")
    for name, p in sc.proofs.items():
        concl = p.conclusion
        out.append(f"proof {name} : {print_sequent(concl)}")
        out.append(print_proof(p))
    return "\n".join(out) + "\n"
