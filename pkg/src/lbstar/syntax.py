"""Formulas, configurations and sequents of the Lambek calculus with brackets.

Concrete syntax::

    p, q, NP          variables
    A \\ B            left division (A is the argument)
    B / A             right division (A is the argument)
    A * B             product
    <>A               diamond
    []A               box (inverse of the bracket modality)
    { Gamma }         meta-bracket in an antecedent
    Gamma => C        sequent; an empty antecedent is written ``=> C``

Unary operators bind tightest, then ``*`` (left associative), then ``\\`` and
``/``.  Divisions never chain: ``a/b/c`` and ``a\\b/c`` are rejected and must
be parenthesised.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Iterator, Union


class ParseError(ValueError):
    """Raised for malformed sequent text."""


class MalformedHole(ValueError):
    """A derivation node carries a hole path that does not address an item."""


# ---------------------------------------------------------------------------
# Abstract syntax
#
# ``tag`` marks an occurrence; it never takes part in equality or hashing and
# is only used to follow literal occurrences through rule applications.


@dataclass(frozen=True)
class Var:
    name: str
    tag: object = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if not self.name:
            raise ValueError("variable name must be nonempty")

    def __str__(self):
        return format_formula(self)


@dataclass(frozen=True)
class Under:
    """``left \\ right``: consumes ``left`` on its left, yields ``right``."""

    left: Formula
    right: Formula

    def __str__(self):
        return format_formula(self)


@dataclass(frozen=True)
class Over:
    """``left / right``: consumes ``right`` on its right, yields ``left``."""

    left: Formula
    right: Formula

    def __str__(self):
        return format_formula(self)


@dataclass(frozen=True)
class Prod:
    left: Formula
    right: Formula

    def __str__(self):
        return format_formula(self)


@dataclass(frozen=True)
class Dia:
    body: Formula
    tag: object = field(default=None, compare=False, repr=False)

    def __str__(self):
        return format_formula(self)


@dataclass(frozen=True)
class Box:
    body: Formula
    tag: object = field(default=None, compare=False, repr=False)

    def __str__(self):
        return format_formula(self)


Formula = Union[Var, Under, Over, Prod, Dia, Box]
FORMULA_TYPES = (Var, Under, Over, Prod, Dia, Box)


@dataclass(frozen=True)
class Bracket:
    """A bracketed sub-configuration ``{ ... }``."""

    inner: tuple
    tag: object = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if not isinstance(self.inner, tuple):
            object.__setattr__(self, "inner", tuple(self.inner))


Item = Union[Formula, Bracket]
# A configuration (meta-formula) is a plain tuple of items; () is the empty one.
Config = tuple


@dataclass(frozen=True)
class Sequent:
    antecedent: tuple
    succedent: Formula

    def __post_init__(self):
        if not isinstance(self.antecedent, tuple):
            object.__setattr__(self, "antecedent", tuple(self.antecedent))

    def __str__(self):
        return print_sequent(self)


# ---------------------------------------------------------------------------
# Lexer / parser

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<arrow>=>)
  | (?P<dia><>)
  | (?P<box>\[\])
  | (?P<ident>[A-Za-z_][A-Za-z0-9_']*)
  | (?P<op>[\\/*(){},])
    """,
    re.VERBOSE,
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r} at offset {pos}")
        kind = m.lastgroup
        if kind != "ws":
            value = m.group(kind)
            tokens.append((value if kind == "op" else kind, value, pos))
        pos = m.end()
    tokens.append(("eof", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0

    @property
    def peek(self) -> str:
        return self.tokens[self.pos][0]

    def advance(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind: str):
        if self.peek != kind:
            self.fail(f"expected {kind!r}")
        return self.advance()

    def fail(self, message: str):
        kind, value, offset = self.tokens[self.pos]
        found = "end of input" if kind == "eof" else repr(value)
        raise ParseError(f"{message}, found {found} at offset {offset}")

    def sequent(self) -> Sequent:
        antecedent = () if self.peek == "arrow" else self.config(closing="arrow")
        self.expect("arrow")
        if self.peek == "eof":
            self.fail("empty succedent")
        succedent = self.formula()
        if self.peek != "eof":
            self.fail("trailing input after succedent")
        return Sequent(antecedent, succedent)

    def config(self, closing: str) -> tuple:
        items = [self.item()]
        while self.peek == ",":
            self.advance()
            items.append(self.item())
        if self.peek != closing:
            self.fail(f"expected ',' or {closing!r}")
        return tuple(items)

    def item(self) -> Item:
        if self.peek == "{":
            self.advance()
            inner = () if self.peek == "}" else self.config(closing="}")
            self.expect("}")
            return Bracket(inner)
        if self.peek in ("}", ",", "arrow", "eof"):
            self.fail("expected a formula or '{'")
        return self.formula()

    def formula(self) -> Formula:
        left = self.product()
        if self.peek in ("\\", "/"):
            op = self.advance()[0]
            right = self.product()
            if self.peek in ("\\", "/"):
                self.fail("divisions must be parenthesised")
            return Under(left, right) if op == "\\" else Over(left, right)
        return left

    def product(self) -> Formula:
        left = self.unary()
        while self.peek == "*":
            self.advance()
            left = Prod(left, self.unary())
        return left

    def unary(self) -> Formula:
        if self.peek == "dia":
            self.advance()
            return Dia(self.unary())
        if self.peek == "box":
            self.advance()
            return Box(self.unary())
        if self.peek == "ident":
            return Var(self.advance()[1])
        if self.peek == "(":
            self.advance()
            inner = self.formula()
            if self.peek != ")":
                self.fail("unbalanced parentheses")
            self.advance()
            return inner
        self.fail("expected a formula")


def parse_sequent(text: str) -> Sequent:
    return _Parser(text).sequent()


def parse_formula(text: str) -> Formula:
    p = _Parser(text)
    f = p.formula()
    if p.peek != "eof":
        p.fail("trailing input after formula")
    return f


# ---------------------------------------------------------------------------
# Printer

_DIVISIONS = (Under, Over)


def format_formula(f: Formula) -> str:
    if isinstance(f, Var):
        return f.name
    if isinstance(f, Dia):
        return "<>" + _unary_operand(f.body)
    if isinstance(f, Box):
        return "[]" + _unary_operand(f.body)
    if isinstance(f, Prod):
        left = format_formula(f.left)
        if isinstance(f.left, _DIVISIONS):
            left = f"({left})"
        right = format_formula(f.right)
        if isinstance(f.right, (Under, Over, Prod)):
            right = f"({right})"
        return f"{left}*{right}"
    op = "\\" if isinstance(f, Under) else "/"
    parts = []
    for sub in (f.left, f.right):
        text = format_formula(sub)
        parts.append(f"({text})" if isinstance(sub, _DIVISIONS) else text)
    return parts[0] + op + parts[1]


def _unary_operand(f: Formula) -> str:
    text = format_formula(f)
    return text if isinstance(f, (Var, Dia, Box)) else f"({text})"


def format_config(items: tuple) -> str:
    parts = []
    for item in items:
        if isinstance(item, Bracket):
            parts.append("{ " + format_config(item.inner) + " }" if item.inner else "{ }")
        else:
            parts.append(format_formula(item))
    return ", ".join(parts)


def print_sequent(s: Sequent) -> str:
    if not s.antecedent:
        return "=> " + format_formula(s.succedent)
    return f"{format_config(s.antecedent)} => {format_formula(s.succedent)}"


def read_corpus(path) -> list[Sequent]:
    """One sequent per line; blank lines and ``#`` comments are skipped."""
    out = []
    for raw in Path(path).read_text().splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append(parse_sequent(line))
    return out


# ---------------------------------------------------------------------------
# Complexity measures


def _prod_flag(f: Formula) -> int:
    return 1 if isinstance(f, (Prod, Dia)) else 0


def formula_size(f: Formula) -> int:
    if isinstance(f, Var):
        return 0
    if isinstance(f, (Dia, Box)):
        return formula_size(f.body) + 1
    return formula_size(f.left) + formula_size(f.right) + 1


def formula_order(f: Formula) -> int:
    if isinstance(f, Var):
        return 0
    if isinstance(f, Prod):
        return max(formula_order(f.left), formula_order(f.right))
    if isinstance(f, Under):
        arg, res = f.left, f.right
        return max(formula_order(arg) + 1, formula_order(res) + _prod_flag(res))
    if isinstance(f, Over):
        res, arg = f.left, f.right
        return max(formula_order(arg) + 1, formula_order(res) + _prod_flag(res))
    if isinstance(f, Dia):
        return formula_order(f.body)
    return max(formula_order(f.body) + _prod_flag(f.body), 1)


def formula_bdepth(f: Formula) -> int:
    if isinstance(f, Var):
        return 0
    if isinstance(f, (Dia, Box)):
        return formula_bdepth(f.body) + 1
    return max(formula_bdepth(f.left), formula_bdepth(f.right))


def _config_fold(items: tuple, measure, bracket_extra: int, combine):
    acc = 0
    for item in items:
        if isinstance(item, Bracket):
            v = _config_fold(item.inner, measure, bracket_extra, combine) + bracket_extra
        else:
            v = measure(item)
        acc = combine(acc, v)
    return acc


def config_size(items: tuple) -> int:
    return _config_fold(items, formula_size, 2, lambda a, b: a + b)


def config_order(items: tuple) -> int:
    return _config_fold(items, formula_order, 0, max)


def config_bdepth(items: tuple) -> int:
    return _config_fold(items, formula_bdepth, 1, max)


@dataclass(frozen=True)
class Metrics:
    size: int
    order: int
    bdepth: int


def metrics(s: Sequent) -> Metrics:
    c = s.succedent
    return Metrics(
        size=config_size(s.antecedent) + formula_size(c),
        order=max(config_order(s.antecedent) + 1, formula_order(c) + _prod_flag(c)),
        bdepth=max(config_bdepth(s.antecedent), formula_bdepth(c)),
    )


def count_connectives(s: Sequent) -> int:
    """Logical connectives (divisions, products, modalities); meta-brackets excluded."""
    return sum(formula_size(f) for f in iter_formulas(s.antecedent)) + formula_size(s.succedent)


def iter_formulas(items: tuple) -> Iterator[Formula]:
    for item in items:
        if isinstance(item, Bracket):
            yield from iter_formulas(item.inner)
        else:
            yield item


def iter_positions(items: tuple, prefix: tuple = ()) -> Iterator[tuple[tuple, Item]]:
    """Yield ``(path, item)`` for every item at every bracket depth, pre-order."""
    for idx, item in enumerate(items):
        path = prefix + (idx,)
        yield path, item
        if isinstance(item, Bracket):
            yield from iter_positions(item.inner, path)


def variables(s: Sequent) -> set[str]:
    names = set()

    def walk(f):
        if isinstance(f, Var):
            names.add(f.name)
        elif isinstance(f, (Dia, Box)):
            walk(f.body)
        else:
            walk(f.left)
            walk(f.right)

    for f in iter_formulas(s.antecedent):
        walk(f)
    walk(s.succedent)
    return names


# ---------------------------------------------------------------------------
# Context holes


def locate(items: tuple, path: tuple) -> tuple[tuple, int]:
    """Resolve ``path`` to ``(level, index)`` where ``level`` is the enclosing item tuple."""
    if not path:
        raise MalformedHole("empty hole path")
    level = items
    for depth, idx in enumerate(path):
        if not isinstance(idx, int) or not 0 <= idx < len(level):
            raise MalformedHole(f"hole index {idx!r} out of range at depth {depth}")
        if depth == len(path) - 1:
            return level, idx
        nested = level[idx]
        if not isinstance(nested, Bracket):
            raise MalformedHole(f"hole path descends into a formula at depth {depth}")
        level = nested.inner
    raise AssertionError("unreachable")


def replace_span(items: tuple, level_path: tuple, start: int, stop: int, new: tuple) -> tuple:
    """Replace ``level[start:stop]`` by ``new`` where ``level`` is addressed by ``level_path``."""
    if not level_path:
        return items[:start] + tuple(new) + items[stop:]
    head, rest = level_path[0], level_path[1:]
    br = items[head]
    inner = replace_span(br.inner, rest, start, stop, new)
    return items[:head] + (Bracket(inner, br.tag),) + items[head + 1:]


# ---------------------------------------------------------------------------
# Derivations


class Rule(str, Enum):
    AXIOM = "axiom"
    UNDER_L = "\\->"
    UNDER_R = "->\\"
    OVER_L = "/->"
    OVER_R = "->/"
    PROD_L = "*->"
    PROD_R = "->*"
    DIA_L = "<>->"
    DIA_R = "-><>"
    BOX_L = "[]->"
    BOX_R = "->[]"


ARITY = {
    Rule.AXIOM: 0,
    Rule.UNDER_L: 2,
    Rule.OVER_L: 2,
    Rule.PROD_R: 2,
}

LEFT_RULES = {Rule.UNDER_L, Rule.OVER_L, Rule.PROD_L, Rule.DIA_L, Rule.BOX_L}


@dataclass(frozen=True)
class Derivation:
    """A proof tree node.

    ``hole`` is the path of child indices to the principal item for left rules
    (for ``[]->`` it addresses the bracket that holds the boxed formula) and
    ``None`` for every other rule.
    """

    conclusion: Sequent
    rule: Rule
    premises: tuple = ()
    hole: tuple | None = None

    def size(self) -> int:
        return 1 + sum(p.size() for p in self.premises)

    def to_json(self) -> dict:
        out = {"rule": self.rule.value, "sequent": print_sequent(self.conclusion)}
        if self.hole is not None:
            out["hole"] = list(self.hole)
        if self.premises:
            out["premises"] = [p.to_json() for p in self.premises]
        return out

    def pretty(self, indent: int = 0) -> str:
        pad = "  " * indent
        lines = [f"{pad}{print_sequent(self.conclusion)}    [{self.rule.value}]"]
        lines.extend(p.pretty(indent + 1) for p in self.premises)
        return "\n".join(lines)


class _Mismatch(Exception):
    pass


def check_derivation(d: Derivation) -> bool:
    """True iff every node is an instance of its rule.

    A hole path that does not address an item raises :class:`MalformedHole`
    instead of returning ``False``.
    """
    try:
        _check(d)
    except _Mismatch:
        return False
    return True


def explain_derivation(d: Derivation) -> str | None:
    """The first rule mismatch found, or ``None`` for a valid derivation."""
    try:
        _check(d)
    except _Mismatch as exc:
        return str(exc)
    return None


def _check(d: Derivation) -> None:
    for p in d.premises:
        _check(p)
    _check_node(d)


def _check_node(d: Derivation) -> None:
    s, rule, prems = d.conclusion, d.rule, d.premises
    if not isinstance(rule, Rule):
        raise _Mismatch(f"unknown rule {rule!r}")
    arity = ARITY.get(rule, 1)
    if len(prems) != arity:
        raise _Mismatch(f"{rule.value} expects {arity} premises, got {len(prems)}")
    if rule in LEFT_RULES:
        if d.hole is None:
            raise MalformedHole(f"{rule.value} requires a hole path")
        level, idx = locate(s.antecedent, d.hole)
        level_path = d.hole[:-1]
    elif d.hole is not None:
        raise MalformedHole(f"{rule.value} takes no hole path")
    ps = [p.conclusion for p in prems]
    ant, c = s.antecedent, s.succedent

    def need(cond, msg):
        if not cond:
            raise _Mismatch(f"{rule.value}: {msg} in {print_sequent(s)}")

    if rule is Rule.AXIOM:
        need(isinstance(c, Var), "axiom succedent must be a variable")
        need(ant == (c,), "axiom must be p => p")
    elif rule in (Rule.UNDER_L, Rule.OVER_L):
        principal = level[idx]
        pi = ps[0].antecedent
        m = len(pi)
        if rule is Rule.UNDER_L:
            need(isinstance(principal, Under), "principal is not A\\B")
            arg, res = principal.left, principal.right
            start, stop = idx - m, idx + 1
            need(start >= 0 and level[start:idx] == pi, "Pi does not precede A\\B")
        else:
            need(isinstance(principal, Over), "principal is not B/A")
            arg, res = principal.right, principal.left
            start, stop = idx, idx + m + 1
            need(stop <= len(level) and level[idx + 1:stop] == pi, "Pi does not follow B/A")
        need(ps[0].succedent == arg, "left premise succedent differs from the argument")
        need(ps[1].succedent == c, "right premise succedent differs")
        need(ps[1].antecedent == replace_span(ant, level_path, start, stop, (res,)),
             "right premise antecedent is not Delta(B)")
    elif rule is Rule.PROD_L:
        principal = level[idx]
        need(isinstance(principal, Prod), "principal is not A*B")
        need(ps[0].succedent == c, "succedent changed")
        need(ps[0].antecedent == replace_span(ant, level_path, idx, idx + 1,
                                              (principal.left, principal.right)),
             "premise antecedent is not Gamma(A, B)")
    elif rule is Rule.DIA_L:
        principal = level[idx]
        need(isinstance(principal, Dia), "principal is not <>A")
        need(ps[0].succedent == c, "succedent changed")
        need(ps[0].antecedent == replace_span(ant, level_path, idx, idx + 1,
                                              (Bracket((principal.body,)),)),
             "premise antecedent is not Delta({A})")
    elif rule is Rule.BOX_L:
        principal = level[idx]
        need(isinstance(principal, Bracket) and len(principal.inner) == 1
             and isinstance(principal.inner[0], Box), "principal is not {[]A}")
        need(ps[0].succedent == c, "succedent changed")
        need(ps[0].antecedent == replace_span(ant, level_path, idx, idx + 1,
                                              (principal.inner[0].body,)),
             "premise antecedent is not Delta(A)")
    elif rule is Rule.UNDER_R:
        need(isinstance(c, Under), "succedent is not A\\B")
        need(ps[0] == Sequent((c.left,) + ant, c.right), "premise is not A, Pi => B")
    elif rule is Rule.OVER_R:
        need(isinstance(c, Over), "succedent is not B/A")
        need(ps[0] == Sequent(ant + (c.right,), c.left), "premise is not Pi, A => B")
    elif rule is Rule.PROD_R:
        need(isinstance(c, Prod), "succedent is not A*B")
        need(ps[0].succedent == c.left and ps[1].succedent == c.right, "premise succedents")
        need(ps[0].antecedent + ps[1].antecedent == ant, "antecedent split")
    elif rule is Rule.DIA_R:
        need(isinstance(c, Dia), "succedent is not <>A")
        need(len(ant) == 1 and isinstance(ant[0], Bracket), "antecedent is not {Pi}")
        need(ps[0] == Sequent(ant[0].inner, c.body), "premise is not Pi => A")
    elif rule is Rule.BOX_R:
        need(isinstance(c, Box), "succedent is not []A")
        need(ps[0] == Sequent((Bracket(ant),), c.body), "premise is not {Pi} => A")
