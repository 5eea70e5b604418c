"""Object language: ASTs, parser, printer, and the diamond-restriction test.

The language has atoms, negation, conjunction, an epistemic possibility
operator ``<>`` ("might") and indexed knowledge operators ``K{n}``.
Disjunction is surface syntax only: ``a | b`` parses to ``~(~a & ~b)``,
so evaluators never see a disjunction node.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator, Union

__all__ = [
    "Formula",
    "Atom",
    "Neg",
    "And",
    "Might",
    "Know",
    "ParseError",
    "parse",
    "print_formula",
    "or_",
    "conjoin",
    "is_diamond_restricted",
    "formula_size",
    "atoms_of",
    "agents_of",
    "enumerate_formulas",
]


@dataclass(frozen=True)
class Atom:
    name: str


@dataclass(frozen=True)
class Neg:
    child: "Formula"


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Might:
    child: "Formula"


@dataclass(frozen=True)
class Know:
    agent: int
    child: "Formula"


Formula = Union[Atom, Neg, And, Might, Know]


def or_(left: Formula, right: Formula) -> Formula:
    """Disjunction as sugar: ``or_(a, b)`` is ``~(~a & ~b)``."""
    return Neg(And(Neg(left), Neg(right)))


def conjoin(parts: list[Formula]) -> Formula:
    """Left-associated conjunction of a nonempty list."""
    if not parts:
        raise ValueError("conjoin needs at least one conjunct")
    out = parts[0]
    for p in parts[1:]:
        out = And(out, p)
    return out


# ---------------------------------------------------------------------------
# Parsing

_ATOM_RE = re.compile(r"[a-z][a-z0-9_]*")

# Unicode input aliases; output stays ASCII unless asked otherwise.
_ALIASES = {"¬": "~", "◇": "<>", "∧": "&", "∨": "|"}


class ParseError(ValueError):
    """Syntax error with a byte offset and the set of expected tokens."""

    def __init__(self, offset: int, expected: frozenset[str], found: str):
        self.offset = offset
        self.expected = expected
        self.found = found
        exp = ", ".join(sorted(expected))
        super().__init__(f"syntax error at byte {offset}: expected {exp}, found {found}")


@dataclass(frozen=True)
class _Token:
    kind: str  # atom | not | and | or | might | know | lparen | rparen | end
    text: str
    offset: int  # byte offset into the UTF-8 encoding of the input
    agent: int = 0


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    pos = 0
    byte = 0
    n = len(text)

    def advance(chars: int) -> None:
        nonlocal pos, byte
        byte += len(text[pos : pos + chars].encode("utf-8"))
        pos += chars

    while pos < n:
        ch = text[pos]
        if ch.isspace():
            advance(1)
            continue
        if ch in _ALIASES:
            start = byte
            sym = _ALIASES[ch]
            advance(1)
            kind = {"~": "not", "<>": "might", "&": "and", "|": "or"}[sym]
            tokens.append(_Token(kind, ch, start))
            continue
        if ch == "~":
            tokens.append(_Token("not", "~", byte))
            advance(1)
            continue
        if ch == "&":
            tokens.append(_Token("and", "&", byte))
            advance(1)
            continue
        if ch == "|":
            tokens.append(_Token("or", "|", byte))
            advance(1)
            continue
        if ch == "(":
            tokens.append(_Token("lparen", "(", byte))
            advance(1)
            continue
        if ch == ")":
            tokens.append(_Token("rparen", ")", byte))
            advance(1)
            continue
        if text.startswith("<>", pos):
            tokens.append(_Token("might", "<>", byte))
            advance(2)
            continue
        if ch == "K":
            start = byte
            advance(1)
            agent = 1
            if pos < n and text[pos] == "{":
                advance(1)
                m = re.match(r"[0-9]+", text[pos:])
                if not m:
                    raise ParseError(byte, frozenset({"agent index"}), _describe(text, pos))
                agent = int(m.group(0))
                digits_at = byte
                advance(len(m.group(0)))
                if pos >= n or text[pos] != "}":
                    raise ParseError(byte, frozenset({"'}'"}), _describe(text, pos))
                advance(1)
                if agent == 0:
                    raise ParseError(digits_at, frozenset({"agent index >= 1"}), "0")
            tokens.append(_Token("know", "K", start, agent=agent))
            continue
        m = _ATOM_RE.match(text, pos)
        if m:
            tokens.append(_Token("atom", m.group(0), byte))
            advance(len(m.group(0)))
            continue
        raise ParseError(
            byte,
            frozenset({"'~'", "'<>'", "'K'", "'&'", "'|'", "'('", "')'", "atom"}),
            repr(ch),
        )
    tokens.append(_Token("end", "", byte))
    return tokens


def _describe(text: str, pos: int) -> str:
    return repr(text[pos]) if pos < len(text) else "end of input"


_UNARY_STARTS = frozenset({"'~'", "'<>'", "'K'", "'('", "atom"})


class _Parser:
    def __init__(self, tokens: list[_Token]):
        self.tokens = tokens
        self.pos = 0

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def take(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def fail(self, expected: frozenset[str]) -> None:
        tok = self.peek()
        found = "end of input" if tok.kind == "end" else repr(tok.text)
        raise ParseError(tok.offset, expected, found)

    def parse_expr(self) -> Formula:
        left = self.parse_conj()
        while self.peek().kind == "or":
            self.take()
            left = or_(left, self.parse_conj())
        return left

    def parse_conj(self) -> Formula:
        left = self.parse_unary()
        while self.peek().kind == "and":
            self.take()
            left = And(left, self.parse_unary())
        return left

    def parse_unary(self) -> Formula:
        tok = self.peek()
        if tok.kind == "not":
            self.take()
            return Neg(self.parse_unary())
        if tok.kind == "might":
            self.take()
            return Might(self.parse_unary())
        if tok.kind == "know":
            self.take()
            return Know(tok.agent, self.parse_unary())
        if tok.kind == "atom":
            self.take()
            return Atom(tok.text)
        if tok.kind == "lparen":
            self.take()
            inner = self.parse_expr()
            if self.peek().kind != "rparen":
                self.fail(frozenset({"')'", "'&'", "'|'"}))
            self.take()
            return inner
        self.fail(_UNARY_STARTS)
        raise AssertionError("unreachable")


def parse(text: str) -> Formula:
    """Parse a formula; raises ParseError with byte offset on bad input."""
    parser = _Parser(_tokenize(text))
    formula = parser.parse_expr()
    if parser.peek().kind != "end":
        parser.fail(frozenset({"'&'", "'|'", "end of input"}))
    return formula


# ---------------------------------------------------------------------------
# Printing

def print_formula(f: Formula, unicode: bool = False) -> str:
    """Canonical text with minimal parentheses; parse(print_formula(f)) == f."""
    neg, might, conj = ("¬", "◇", " ∧ ") if unicode else ("~", "<>", " & ")

    def prefix_child(child: Formula) -> str:
        s = render(child)
        return f"({s})" if isinstance(child, And) else s

    def render(g: Formula) -> str:
        if isinstance(g, Atom):
            return g.name
        if isinstance(g, Neg):
            return neg + prefix_child(g.child)
        if isinstance(g, Might):
            return might + prefix_child(g.child)
        if isinstance(g, Know):
            op = "K" if g.agent == 1 else "K{%d}" % g.agent
            return op + prefix_child(g.child)
        if isinstance(g, And):
            left = render(g.left)  # left-associative: no parens on the left
            right = render(g.right)
            if isinstance(g.right, And):
                right = f"({right})"
            return left + conj + right
        raise TypeError(f"not a formula: {g!r}")

    return render(f)


# ---------------------------------------------------------------------------
# Structure

def is_diamond_restricted(f: Formula) -> bool:
    """True iff every might operator sits somewhere below a K operator."""

    def walk(g: Formula, under_k: bool) -> bool:
        if isinstance(g, Atom):
            return True
        if isinstance(g, Might):
            return under_k and walk(g.child, under_k)
        if isinstance(g, Neg):
            return walk(g.child, under_k)
        if isinstance(g, And):
            return walk(g.left, under_k) and walk(g.right, under_k)
        if isinstance(g, Know):
            return walk(g.child, True)
        raise TypeError(f"not a formula: {g!r}")

    return walk(f, False)


def formula_size(f: Formula) -> int:
    """Number of AST nodes."""
    if isinstance(f, Atom):
        return 1
    if isinstance(f, (Neg, Might, Know)):
        return 1 + formula_size(f.child)
    if isinstance(f, And):
        return 1 + formula_size(f.left) + formula_size(f.right)
    raise TypeError(f"not a formula: {f!r}")


def atoms_of(f: Formula) -> tuple[str, ...]:
    """Sorted atom names occurring in f."""
    out: set[str] = set()

    def walk(g: Formula) -> None:
        if isinstance(g, Atom):
            out.add(g.name)
        elif isinstance(g, (Neg, Might)):
            walk(g.child)
        elif isinstance(g, Know):
            walk(g.child)
        elif isinstance(g, And):
            walk(g.left)
            walk(g.right)

    walk(f)
    return tuple(sorted(out))


def agents_of(f: Formula) -> tuple[int, ...]:
    """Sorted agent indices occurring in f."""
    out: set[int] = set()

    def walk(g: Formula) -> None:
        if isinstance(g, (Neg, Might)):
            walk(g.child)
        elif isinstance(g, Know):
            out.add(g.agent)
            walk(g.child)
        elif isinstance(g, And):
            walk(g.left)
            walk(g.right)

    walk(f)
    return tuple(sorted(out))


def enumerate_formulas(
    max_size: int,
    atoms: tuple[str, ...] = ("p", "q"),
    agents: tuple[int, ...] = (1,),
) -> Iterator[Formula]:
    """All formulas up to max_size AST nodes, smallest first, fixed order.

    Within one size: atoms, then ~, <>, K{a} applied to each smaller
    formula, then conjunctions by ascending left size.
    """
    by_size: list[list[Formula]] = [[]]
    for size in range(1, max_size + 1):
        bucket: list[Formula] = []
        if size == 1:
            bucket.extend(Atom(a) for a in sorted(atoms))
        else:
            children = by_size[size - 1]
            bucket.extend(Neg(c) for c in children)
            bucket.extend(Might(c) for c in children)
            for agent in sorted(agents):
                bucket.extend(Know(agent, c) for c in children)
            for left_size in range(1, size - 1):
                right_size = size - 1 - left_size
                for left in by_size[left_size]:
                    for right in by_size[right_size]:
                        bucket.append(And(left, right))
        by_size.append(bucket)
        yield from bucket
