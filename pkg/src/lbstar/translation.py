"""Translation of sequents into alternating connective/literal strings.

A sequent ``Gamma => C`` becomes ``c_0 l_0 c_1 l_1 ... c_{n-1} l_{n-1}``
(0-based here), built from the positive translation of the succedent and the
negative translation of the antecedent, the latter in reverse order and with
``<>`` (meta-par) separators.  Alongside the string we keep:

* ``parent``: the immediate dominator of each par/tensor occurrence;
* bracket and connective sisterhood;
* one :class:`FormulaSpan` per formula occurrence (antecedent and succedent);
* for each meta-par, the configuration slot it separates.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .syntax import Box, Bracket, Dia, Formula, Over, Prod, Sequent, Under, Var


class Conn(str, Enum):
    PAR = "par"
    TENSOR = "tensor"
    META = "meta"

    @property
    def is_par(self) -> bool:
        return self is not Conn.TENSOR

    @property
    def symbol(self) -> str:
        return {"par": "⅋", "tensor": "⊗", "meta": "⋄"}[self.value]


class LitKind(str, Enum):
    POS = "pos"
    NEG = "neg"
    OPEN = "["
    CLOSE = "]"
    NEG_OPEN = "~["
    NEG_CLOSE = "~]"


_DUAL_KIND = {
    LitKind.POS: LitKind.NEG,
    LitKind.NEG: LitKind.POS,
    LitKind.OPEN: LitKind.NEG_OPEN,
    LitKind.NEG_OPEN: LitKind.OPEN,
    LitKind.CLOSE: LitKind.NEG_CLOSE,
    LitKind.NEG_CLOSE: LitKind.CLOSE,
}


@dataclass(frozen=True)
class Literal:
    kind: LitKind
    name: str | None = None

    @property
    def is_bracket(self) -> bool:
        return self.kind not in (LitKind.POS, LitKind.NEG)

    @property
    def is_negative(self) -> bool:
        return self.kind in (LitKind.NEG, LitKind.NEG_OPEN, LitKind.NEG_CLOSE)

    def dual(self) -> Literal:
        return Literal(_DUAL_KIND[self.kind], self.name)

    def __str__(self):
        if self.kind is LitKind.POS:
            return self.name
        if self.kind is LitKind.NEG:
            return "~" + self.name
        return self.kind.value


OPEN = Literal(LitKind.OPEN)
CLOSE = Literal(LitKind.CLOSE)
NEG_OPEN = Literal(LitKind.NEG_OPEN)
NEG_CLOSE = Literal(LitKind.NEG_CLOSE)


@dataclass(frozen=True)
class FormulaSpan:
    """A formula occurrence: ``path`` into the antecedent, or ``None`` for the succedent.

    Literals ``lo..hi-1`` belong to it; ``top`` is its principal connective
    (``None`` for a bare variable).
    """

    path: tuple | None
    formula: Formula
    positive: bool
    lo: int
    hi: int
    top: int | None


@dataclass(frozen=True)
class OmegaString:
    conns: tuple
    lits: tuple
    tags: tuple
    parent: tuple
    sister_lit: tuple
    sister_conn: tuple
    spans: tuple
    meta_slot: tuple
    span_of_conn: tuple

    @property
    def n(self) -> int:
        return len(self.lits)

    def tokens(self) -> list[str]:
        out = []
        for c, l in zip(self.conns, self.lits):
            out.append(c.symbol)
            out.append(str(l))
        return out

    def __str__(self):
        return " ".join(self.tokens())

    def ancestors(self, i: int) -> list[int]:
        """Strict dominators of connective ``i``, innermost first."""
        out = []
        p = self.parent[i]
        while p is not None:
            out.append(p)
            p = self.parent[p]
        return out

    def dominates(self, i: int, j: int) -> bool:
        """``c_j`` strictly dominated by ``c_i``."""
        p = self.parent[j]
        while p is not None:
            if p == i:
                return True
            p = self.parent[p]
        return False

    def dump(self) -> str:
        rows = []
        for i in range(self.n):
            c = self.conns[i]
            extra = []
            if self.parent[i] is not None:
                extra.append(f"parent={self.parent[i]}")
            if self.sister_conn[i] is not None:
                extra.append(f"sister={self.sister_conn[i]}")
            if self.meta_slot[i] is not None:
                path, slot = self.meta_slot[i]
                extra.append(f"slot={list(path)}:{slot}")
            rows.append(f"{2 * i} conn {c.symbol} {' '.join(extra)}".rstrip())
            lit = self.lits[i]
            extra = [f"sister={self.sister_lit[i]}"] if self.sister_lit[i] is not None else []
            rows.append(f"{2 * i + 1} lit {lit} {' '.join(extra)}".rstrip())
        return "\n".join(rows)


# ---------------------------------------------------------------------------
# Builder


class _Node:
    __slots__ = ("kind", "left", "right", "mid")

    def __init__(self, kind, left, right, mid=None):
        self.kind, self.left, self.right, self.mid = kind, left, right, mid


class _Leaf:
    __slots__ = ("lit", "tag")

    def __init__(self, lit, tag):
        self.lit, self.tag = lit, tag


def _tree(f: Formula, positive: bool):
    """Syntax tree of ``f+`` or ``f-``.

    Modal triples: tensors associate to the right, pars to the left.  Bracket
    leaves carry their partner in ``mid`` of the outer node for sisterhood.
    """
    if isinstance(f, Var):
        return _Leaf(Literal(LitKind.POS if positive else LitKind.NEG, f.name), ("v", f.tag))
    if isinstance(f, Prod):
        if positive:
            return _Node(Conn.TENSOR, _tree(f.left, True), _tree(f.right, True))
        return _Node(Conn.PAR, _tree(f.right, False), _tree(f.left, False))
    if isinstance(f, Under):
        if positive:
            return _Node(Conn.PAR, _tree(f.left, False), _tree(f.right, True))
        return _Node(Conn.TENSOR, _tree(f.right, False), _tree(f.left, True))
    if isinstance(f, Over):
        if positive:
            return _Node(Conn.PAR, _tree(f.left, True), _tree(f.right, False))
        return _Node(Conn.TENSOR, _tree(f.right, True), _tree(f.left, False))
    if isinstance(f, Dia):
        if positive:
            # ] (x) (A+ (x) [)
            inner = _Node(Conn.TENSOR, _tree(f.body, True), _Leaf(OPEN, ("[", f.tag)))
            return _Node(Conn.TENSOR, _Leaf(CLOSE, ("]", f.tag)), inner, mid="modal")
        # (~[ par A-) par ~]
        inner = _Node(Conn.PAR, _Leaf(NEG_OPEN, ("[", f.tag)), _tree(f.body, False))
        return _Node(Conn.PAR, inner, _Leaf(NEG_CLOSE, ("]", f.tag)), mid="modal")
    if isinstance(f, Box):
        if positive:
            # (~] par A+) par ~[
            inner = _Node(Conn.PAR, _Leaf(NEG_CLOSE, ("]", f.tag)), _tree(f.body, True))
            return _Node(Conn.PAR, inner, _Leaf(NEG_OPEN, ("[", f.tag)), mid="modal")
        # [ (x) (A- (x) ])
        inner = _Node(Conn.TENSOR, _tree(f.body, False), _Leaf(CLOSE, ("]", f.tag)))
        return _Node(Conn.TENSOR, _Leaf(OPEN, ("[", f.tag)), inner, mid="modal")
    raise TypeError(f"not a formula: {f!r}")


class _Builder:
    def __init__(self):
        self.conns = []
        self.lits = []
        self.tags = []
        self.parent = []
        self.sister_lit = {}
        self.sister_conn = {}
        self.meta_slot = {}
        self.spans = []
        self.span_of_conn = {}

    def conn(self, kind, parent=None, slot=None) -> int:
        idx = len(self.conns)
        self.conns.append(kind)
        self.parent.append(parent)
        if slot is not None:
            self.meta_slot[idx] = slot
        return idx

    def lit(self, lit, tag) -> int:
        idx = len(self.lits)
        self.lits.append(lit)
        self.tags.append(tag)
        return idx

    def sisters(self, table, a, b):
        table[a] = b
        table[b] = a

    def formula(self, f: Formula, positive: bool, path):
        lo = len(self.lits)
        top = self._emit(_tree(f, positive), None)
        span = FormulaSpan(path, f, positive, lo, len(self.lits), top)
        self.spans.append(span)
        for c in range(lo + 1, len(self.lits)):
            self.span_of_conn[c] = len(self.spans) - 1

    def _emit(self, node, parent):
        """In-order emission; returns the connective index of ``node`` (or None for a leaf)."""
        if isinstance(node, _Leaf):
            self.lit(node.lit, node.tag)
            return None
        # the connective index is fixed only after the left subtree is emitted,
        # so the children get their parent patched afterwards
        left_conns_start = len(self.conns)
        left_lits_start = len(self.lits)
        self._emit(node.left, None)
        me = self.conn(node.kind, parent)
        right_start = len(self.conns)
        self._emit(node.right, None)
        for c in range(left_conns_start, len(self.conns)):
            if c != me and self.parent[c] is None:
                self.parent[c] = me
        if node.mid == "modal":
            # the two bracket leaves of a modal triple sit at the ends of the span
            first, last = left_lits_start, len(self.lits) - 1
            self.sisters(self.sister_lit, first, last)
            if node.kind is Conn.TENSOR:
                # right association: ] (x)me (A (x)inner [)
                inner = self._top_of(right_start, len(self.conns))
            else:
                inner = self._top_of(left_conns_start, me)
            self.sisters(self.sister_conn, me, inner)
        return me

    def _top_of(self, start, stop):
        for c in range(start, stop):
            p = self.parent[c]
            if p is None or not start <= p < stop:
                return c
        raise AssertionError("empty subtree")

    def config(self, items: tuple, path: tuple):
        """Emit ``X_{m-1}- <> ... <> X_0-``; the separator between X_s and X_{s-1} is slot s."""
        m = len(items)
        for pos in range(m - 1, -1, -1):
            item = items[pos]
            here = path + (pos,)
            if isinstance(item, Bracket):
                self.bracket(item, here)
            else:
                self.formula(item, False, here)
            if pos > 0:
                self.conn(Conn.META, slot=(path, pos))

    def bracket(self, br: Bracket, path: tuple):
        opener = self.lit(NEG_OPEN, ("[", br.tag))
        r = len(br.inner)
        left = self.conn(Conn.META, slot=(path, r))
        if r:
            self.config(br.inner, path)
            right = self.conn(Conn.META, slot=(path, 0))
            self.sisters(self.sister_conn, left, right)
        closer = self.lit(NEG_CLOSE, ("]", br.tag))
        self.sisters(self.sister_lit, opener, closer)


def translate(s: Sequent) -> OmegaString:
    b = _Builder()
    m = len(s.antecedent)
    b.conn(Conn.META, slot=((), m))
    if m:
        b.config(s.antecedent, ())
        b.conn(Conn.META, slot=((), 0))
    b.formula(s.succedent, True, None)
    n = len(b.lits)
    assert len(b.conns) == n
    return OmegaString(
        conns=tuple(b.conns),
        lits=tuple(b.lits),
        tags=tuple(b.tags),
        parent=tuple(b.parent),
        sister_lit=tuple(b.sister_lit.get(i) for i in range(n)),
        sister_conn=tuple(b.sister_conn.get(i) for i in range(n)),
        spans=tuple(b.spans),
        meta_slot=tuple(b.meta_slot.get(i) for i in range(n)),
        span_of_conn=tuple(b.span_of_conn.get(i) for i in range(n)),
    )


# ---------------------------------------------------------------------------
# Relations and parameters


def dominance(w: OmegaString) -> set[tuple[int, int]]:
    """All pairs ``(j, i)`` with ``c_j`` strictly dominated by ``c_i``."""
    return {(j, i) for j in range(w.n) for i in w.ancestors(j)}


def natural(w: OmegaString, start: int = 0, stop: int | None = None) -> int:
    """Negative literals minus pars and meta-pars over flat token positions ``[start, stop)``.

    Flat position ``2i`` is ``c_i`` and ``2i+1`` is ``l_i``.
    """
    stop = 2 * w.n if stop is None else stop
    total = 0
    for pos in range(start, stop):
        i, is_lit = divmod(pos, 2)
        if is_lit:
            total += w.lits[i].is_negative
        else:
            total -= w.conns[i].is_par
    return total


def span_natural(w: OmegaString, span: FormulaSpan) -> int:
    return natural(w, 2 * span.lo + 1, 2 * span.hi)


def alternation_depth(w: OmegaString) -> int:
    """Connective alternation depth: max over top-level pieces of d(piece) + prod(piece)."""
    children = [[] for _ in range(w.n)]
    for c, p in enumerate(w.parent):
        if p is not None:
            children[p].append(c)
    memo = {}

    def d(c):
        # leaves contribute d = 0, prod = 0 and are not connectives, so only
        # connective children matter
        if c in memo:
            return memo[c]
        kids = children[c]
        if w.conns[c] is Conn.TENSOR:
            val = max((d(k) for k in kids), default=0)
        else:
            val = max((d(k) + (w.conns[k] is Conn.TENSOR) for k in kids), default=0)
        memo[c] = val
        return val

    best = 0
    for span in w.spans:
        if span.top is not None:
            best = max(best, d(span.top) + (w.conns[span.top] is Conn.TENSOR))
    return best


def bracket_depth(w: OmegaString) -> int:
    depth = best = 0
    for i in range(w.n):
        j = w.sister_lit[i]
        if j is None:
            continue
        if j > i:
            depth += 1
            best = max(best, depth)
        else:
            depth -= 1
    return best


@dataclass(frozen=True)
class OmegaParams:
    n: int
    d: int
    b: int


def params(w: OmegaString) -> OmegaParams:
    return OmegaParams(n=w.n, d=alternation_depth(w), b=bracket_depth(w))
