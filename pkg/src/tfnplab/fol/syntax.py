"""First-order syntax for prenex-universal sentences without equality.

Terms, quantifier-free matrices over relation atoms, universal sentences,
a concrete text grammar with parser and canonical printer, and a JSON tree
form.  The logic has no equality symbol and no binders inside matrices,
so substitution is capture-free by construction.

Grammar (documented contract):

    sentence := "forall" v ("," v)* "." matrix
    matrix   := or_expr ("->" matrix)?          right-associative
    or_expr  := and_expr ("|" and_expr)*
    and_expr := unary ("&" unary)*
    unary    := "~" unary | "(" matrix ")" | "false" | atom
    atom     := REL "(" term ("," term)* ")"
    term     := NAME ["(" term ("," term)* ")"]

Identifiers match [A-Za-z_][A-Za-z0-9_']*; `false` is the dedicated
always-false atom used by the padding construction.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Mapping


class FolError(ValueError):
    pass


class ParseError(FolError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


@dataclass(frozen=True)
class Signature:
    """Function and relation symbols with arities.

    Needs at least one constant (0-ary function) so the Herbrand universe
    is nonempty; names must be unique across both kinds; equality is not a
    symbol of the language.
    """

    functions: tuple[tuple[str, int], ...]
    relations: tuple[tuple[str, int], ...]

    def __post_init__(self):
        names = [n for n, _ in self.functions] + [n for n, _ in self.relations]
        if len(names) != len(set(names)):
            raise FolError("symbol names must be unique across functions and relations")
        if "=" in names or "false" in names:
            raise FolError("reserved symbol name")
        for n, a in self.functions:
            if a < 0:
                raise FolError(f"negative arity for {n}")
        for n, a in self.relations:
            if a < 1:
                raise FolError(f"relation {n} must have arity >= 1")
        if not any(a == 0 for _, a in self.functions):
            raise FolError("signature needs at least one constant")

    @property
    def fn_arity(self) -> dict[str, int]:
        return dict(self.functions)

    @property
    def rel_arity(self) -> dict[str, int]:
        return dict(self.relations)

    def constants(self) -> list[str]:
        return [n for n, a in self.functions if a == 0]


@dataclass(frozen=True)
class Term:
    """Function application or variable/constant leaf.

    A head that is a declared function symbol is an application (args must
    match the arity); any other head is a variable occurrence, legal only
    inside matrices.
    """

    head: str
    args: tuple["Term", ...] = ()

    def is_ground(self, sig: Signature) -> bool:
        ar = sig.fn_arity
        if self.head not in ar:
            return False
        return all(a.is_ground(sig) for a in self.args)

    def variables(self, sig: Signature) -> set[str]:
        if self.head not in sig.fn_arity:
            return {self.head}
        out: set[str] = set()
        for a in self.args:
            out |= a.variables(sig)
        return out

    def depth(self) -> int:
        if not self.args:
            return 0
        return 1 + max(a.depth() for a in self.args)

    def __str__(self) -> str:
        if not self.args:
            return self.head
        return f"{self.head}({','.join(str(a) for a in self.args)})"


def validate_term(t: Term, sig: Signature, variables: Iterable[str]) -> None:
    vs = set(variables)
    ar = sig.fn_arity

    def walk(node: Term):
        if node.head in ar:
            if len(node.args) != ar[node.head]:
                raise FolError(
                    f"function {node.head} expects {ar[node.head]} arguments, got {len(node.args)}"
                )
            for a in node.args:
                walk(a)
        elif node.head in vs:
            if node.args:
                raise FolError(f"variable {node.head} applied to arguments")
        else:
            raise FolError(f"undeclared symbol {node.head}")

    walk(t)


@dataclass(frozen=True)
class Atom:
    rel: str
    args: tuple[Term, ...]

    def __str__(self) -> str:
        return f"{self.rel}({','.join(str(a) for a in self.args)})"


ATOM = "atom"
NOT = "not"
AND = "and"
OR = "or"
IMPLIES = "implies"
FALSUM = "false"


@dataclass(frozen=True)
class Matrix:
    """Quantifier-free formula tree over atoms; `false` is the padding atom."""

    op: str
    atom: Atom | None = None
    children: tuple["Matrix", ...] = ()

    def __post_init__(self):
        if self.op == ATOM and self.atom is None:
            raise FolError("atom node needs an atom")
        if self.op == NOT and len(self.children) != 1:
            raise FolError("not takes one child")
        if self.op in (AND, OR, IMPLIES) and len(self.children) != 2:
            raise FolError(f"{self.op} takes two children")

    def atoms(self) -> list[Atom]:
        """Atom occurrences in left-to-right order (with repeats)."""
        if self.op == ATOM:
            return [self.atom]
        out: list[Atom] = []
        for c in self.children:
            out += c.atoms()
        return out

    def variables(self, sig: Signature) -> set[str]:
        out: set[str] = set()
        for a in self.atoms():
            for t in a.args:
                out |= t.variables(sig)
        return out

    def evaluate(self, lookup: Mapping[Atom, bool]) -> bool:
        if self.op == ATOM:
            return bool(lookup[self.atom])
        if self.op == FALSUM:
            return False
        if self.op == NOT:
            return not self.children[0].evaluate(lookup)
        if self.op == AND:
            return self.children[0].evaluate(lookup) and self.children[1].evaluate(lookup)
        if self.op == OR:
            return self.children[0].evaluate(lookup) or self.children[1].evaluate(lookup)
        return (not self.children[0].evaluate(lookup)) or self.children[1].evaluate(lookup)


def atom(rel: str, *args: Term) -> Matrix:
    return Matrix(ATOM, atom=Atom(rel, tuple(args)))


def m_not(a: Matrix) -> Matrix:
    return Matrix(NOT, children=(a,))


def m_and(a: Matrix, b: Matrix) -> Matrix:
    return Matrix(AND, children=(a, b))


def m_or(a: Matrix, b: Matrix) -> Matrix:
    return Matrix(OR, children=(a, b))


def m_implies(a: Matrix, b: Matrix) -> Matrix:
    return Matrix(IMPLIES, children=(a, b))


FALSUM_NODE = Matrix(FALSUM)


@dataclass(frozen=True)
class UniversalSentence:
    """forall x1..xk . matrix, with free variables of the matrix inside the list."""

    signature: Signature
    variables: tuple[str, ...]
    matrix: Matrix

    def __post_init__(self):
        if not self.variables:
            raise FolError("at least one quantified variable required")
        if len(set(self.variables)) != len(self.variables):
            raise FolError("duplicate quantified variable")
        declared = set(self.signature.fn_arity) | set(self.signature.rel_arity)
        for v in self.variables:
            if v in declared:
                raise FolError(f"variable {v} shadows a declared symbol")
        validate_matrix(self.matrix, self.signature, self.variables)

    @property
    def k(self) -> int:
        return len(self.variables)


def validate_matrix(m: Matrix, sig: Signature, variables: Iterable[str]) -> None:
    rel_ar = sig.rel_arity
    vs = list(variables)
    for a in m.atoms():
        if a.rel not in rel_ar:
            raise FolError(f"undeclared relation {a.rel}")
        if len(a.args) != rel_ar[a.rel]:
            raise FolError(
                f"relation {a.rel} expects {rel_ar[a.rel]} arguments, got {len(a.args)}"
            )
        for t in a.args:
            validate_term(t, sig, vs)


# --- parser ---------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<name>[A-Za-z_][A-Za-z0-9_']*)|(?P<sym>->|[(),.~&|]))"
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            if text[pos:].strip() == "":
                break
            raise ParseError(f"unexpected character {text[pos:].lstrip()[0]!r}", pos)
        if m.group("name"):
            tokens.append(("name", m.group("name"), m.start("name")))
        else:
            tokens.append(("sym", m.group("sym"), m.start("sym")))
        pos = m.end()
    tokens.append(("eof", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, sig: Signature):
        self.text = text
        self.sig = sig
        self.tokens = _tokenize(text)
        self.i = 0
        self.variables: list[str] = []

    def peek(self):
        return self.tokens[self.i]

    def next(self):
        t = self.tokens[self.i]
        self.i += 1
        return t

    def expect(self, value: str):
        kind, val, pos = self.next()
        if val != value:
            raise ParseError(f"expected {value!r}, found {val or 'end of input'!r}", pos)

    def sentence(self) -> UniversalSentence:
        kind, val, pos = self.next()
        if val != "forall":
            raise ParseError("sentence must start with 'forall'", pos)
        while True:
            kind, val, pos = self.next()
            if kind != "name":
                raise ParseError("expected variable name", pos)
            self.variables.append(val)
            kind, val, pos = self.peek()
            if val == ",":
                self.next()
                continue
            break
        self.expect(".")
        m = self.matrix()
        kind, val, pos = self.peek()
        if kind != "eof":
            raise ParseError(f"trailing input {val!r}", pos)
        return UniversalSentence(self.sig, tuple(self.variables), m)

    def matrix(self) -> Matrix:
        left = self.or_expr()
        kind, val, pos = self.peek()
        if val == "->":
            self.next()
            right = self.matrix()
            return m_implies(left, right)
        return left

    def or_expr(self) -> Matrix:
        left = self.and_expr()
        while self.peek()[1] == "|":
            self.next()
            left = m_or(left, self.and_expr())
        return left

    def and_expr(self) -> Matrix:
        left = self.unary()
        while self.peek()[1] == "&":
            self.next()
            left = m_and(left, self.unary())
        return left

    def unary(self) -> Matrix:
        kind, val, pos = self.peek()
        if val == "~":
            self.next()
            return m_not(self.unary())
        if val == "(":
            self.next()
            m = self.matrix()
            self.expect(")")
            return m
        if val == "false":
            self.next()
            return FALSUM_NODE
        if kind == "name":
            return self.atom()
        raise ParseError(f"expected formula, found {val or 'end of input'!r}", pos)

    def atom(self) -> Matrix:
        kind, rel, pos = self.next()
        if rel not in self.sig.rel_arity:
            raise ParseError(f"undeclared relation {rel!r}", pos)
        self.expect("(")
        args = [self.term()]
        while self.peek()[1] == ",":
            self.next()
            args.append(self.term())
        self.expect(")")
        if len(args) != self.sig.rel_arity[rel]:
            raise ParseError(
                f"relation {rel} expects {self.sig.rel_arity[rel]} arguments, got {len(args)}",
                pos,
            )
        return Matrix(ATOM, atom=Atom(rel, tuple(args)))

    def term(self) -> Term:
        kind, name, pos = self.next()
        if kind != "name":
            raise ParseError(f"expected term, found {name!r}", pos)
        args: list[Term] = []
        if self.peek()[1] == "(":
            self.next()
            args.append(self.term())
            while self.peek()[1] == ",":
                self.next()
                args.append(self.term())
            self.expect(")")
        fn = self.sig.fn_arity
        if name in fn:
            if len(args) != fn[name]:
                raise ParseError(
                    f"function {name} expects {fn[name]} arguments, got {len(args)}", pos
                )
        elif name in self.variables:
            if args:
                raise ParseError(f"variable {name} cannot take arguments", pos)
        else:
            raise ParseError(f"undeclared symbol {name!r}", pos)
        return Term(name, tuple(args))


def parse_sentence(text: str, sig: Signature) -> UniversalSentence:
    return _Parser(text, sig).sentence()


def parse_term(text: str, sig: Signature, variables: Iterable[str] = ()) -> Term:
    p = _Parser(text, sig)
    p.variables = list(variables)
    t = p.term()
    if p.peek()[0] != "eof":
        raise ParseError("trailing input after term", p.peek()[2])
    return t


# --- printer --------------------------------------------------------------

_PREC = {IMPLIES: 1, OR: 2, AND: 3, NOT: 4, ATOM: 5, FALSUM: 5}


def print_matrix(m: Matrix) -> str:
    def render(node: Matrix, parent_prec: int, right_of_implies: bool = False) -> str:
        p = _PREC[node.op]
        if node.op == ATOM:
            s = str(node.atom)
        elif node.op == FALSUM:
            s = "false"
        elif node.op == NOT:
            s = "~" + render(node.children[0], p)
        elif node.op == IMPLIES:
            s = (
                render(node.children[0], p + 1)
                + " -> "
                + render(node.children[1], p)
            )
        else:
            sym = " & " if node.op == AND else " | "
            s = render(node.children[0], p) + sym + render(node.children[1], p + 1)
        if p < parent_prec:
            return "(" + s + ")"
        return s

    return render(m, 0)


def print_sentence(s: UniversalSentence) -> str:
    return f"forall {','.join(s.variables)}. {print_matrix(s.matrix)}"


# --- JSON tree form -------------------------------------------------------

def term_to_json(t: Term) -> dict:
    return {"head": t.head, "args": [term_to_json(a) for a in t.args]}


def term_from_json(d: dict) -> Term:
    return Term(d["head"], tuple(term_from_json(a) for a in d.get("args", [])))


def matrix_to_json(m: Matrix) -> dict:
    if m.op == ATOM:
        return {"op": "atom", "head": m.atom.rel, "args": [term_to_json(t) for t in m.atom.args]}
    if m.op == FALSUM:
        return {"op": "false"}
    return {"op": m.op, "args": [matrix_to_json(c) for c in m.children]}


def matrix_from_json(d: dict) -> Matrix:
    op = d["op"]
    if op == "atom":
        return Matrix(
            ATOM, atom=Atom(d["head"], tuple(term_from_json(a) for a in d["args"]))
        )
    if op == "false":
        return FALSUM_NODE
    return Matrix(op, children=tuple(matrix_from_json(c) for c in d["args"]))


def signature_to_json(sig: Signature) -> dict:
    return {
        "functions": [[n, a] for n, a in sig.functions],
        "relations": [[n, a] for n, a in sig.relations],
    }


def signature_from_json(d: dict) -> Signature:
    return Signature(
        tuple((n, a) for n, a in d["functions"]),
        tuple((n, a) for n, a in d["relations"]),
    )


def sentence_to_json(s: UniversalSentence) -> dict:
    return {
        "signature": signature_to_json(s.signature),
        "vars": list(s.variables),
        "matrix": matrix_to_json(s.matrix),
    }


def sentence_from_json(d: dict) -> UniversalSentence:
    return UniversalSentence(
        signature_from_json(d["signature"]),
        tuple(d["vars"]),
        matrix_from_json(d["matrix"]),
    )
