"""Context-free grammars over integer letters, intersection with a DFA, emptiness and words.

Terminals are ``int`` (letter ``j`` printed as ``e{j+1}``); every other
hashable value is a nonterminal.
"""
from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass


def is_terminal(sym) -> bool:
    return isinstance(sym, int)


@dataclass(frozen=True)
class Grammar:
    start: object
    rules: dict

    @property
    def rule_count(self) -> int:
        return sum(len(r) for r in self.rules.values())

    @property
    def size(self) -> int:
        return sum(1 + len(rhs) for rhss in self.rules.values() for rhs in rhss)

    @property
    def max_rule_length(self) -> int:
        return max((1 + len(rhs) for rhss in self.rules.values() for rhs in rhss), default=0)

    def productions(self):
        for lhs, rhss in self.rules.items():
            for rhs in rhss:
                yield lhs, rhs


def _name(sym) -> str:
    if is_terminal(sym):
        return f"e{sym + 1}"
    if isinstance(sym, tuple) and len(sym) == 3 and not isinstance(sym[1], int):
        q, x, r = sym
        return f"<{q},{_name(x)},{r}>"
    if isinstance(sym, tuple) and sym and sym[0] == "F":
        _, i, j, k, rel = sym
        pairs = ",".join(f"{a}<{b}" for a, b in sorted(rel))
        return f"F[{i},{j},{k}|{pairs}]"
    return str(sym)


def dump(g: Grammar) -> str:
    lines = []
    for lhs, rhs in g.productions():
        body = " ".join(_name(x) for x in rhs)
        lines.append(f"{_name(lhs)} -> {body}".rstrip())
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# Intersection


def intersect(g: Grammar, dfa) -> Grammar:
    """Grammar for ``L(g)`` intersected with ``L(dfa)``.

    Nonterminals are triples ``(q, X, r)``: ``X`` derives a word leading the
    automaton from ``q`` to ``r``.  Only triples reachable from the start
    state and productive are produced.
    """
    start = (dfa.start, g.start, dfa.accept)
    ends = {}
    users = {}
    queue = []
    queued = set()

    def demand(x, q, user):
        key = (x, q)
        if key not in ends:
            ends[key] = set()
            queue.append(key)
            queued.add(key)
        if user is not None:
            users.setdefault(key, set()).add(user)
        return ends[key]

    def runs(rhs, q, ask):
        """All automaton states reached after ``rhs`` starting at ``q``."""
        states = {q}
        for sym in rhs:
            nxt = set()
            for p in states:
                if is_terminal(sym):
                    r = dfa.step(p, sym)
                    if r is not None:
                        nxt.add(r)
                else:
                    nxt |= ask(sym, p)
            states = nxt
            if not states:
                break
        return states

    if dfa.accept is None:
        return Grammar(start, {})
    demand(g.start, dfa.start, None)
    while queue:
        key = queue.pop()
        queued.discard(key)
        x, q = key
        found = set()
        for rhs in g.rules.get(x, ()):
            found |= runs(rhs, q, lambda y, p: demand(y, p, key))
        if not found <= ends[key]:
            ends[key] |= found
            for user in users.get(key, ()):
                if user not in queued:
                    queue.append(user)
                    queued.add(user)

    rules = {}
    todo = [start] if dfa.accept in ends.get((g.start, dfa.start), ()) else []
    seen = set(todo)
    while todo:
        lhs = todo.pop()
        q, x, r = lhs
        out = []
        for rhs in g.rules.get(x, ()):
            for chain in _chains(rhs, q, r, dfa, ends):
                out.append(chain)
                for sym in chain:
                    if not is_terminal(sym) and sym not in seen:
                        seen.add(sym)
                        todo.append(sym)
        rules[lhs] = out
    return Grammar(start, rules)


def _chains(rhs, q, r, dfa, ends):
    """Triple-annotated copies of ``rhs`` leading from ``q`` to ``r``."""
    def go(pos, p):
        if pos == len(rhs):
            if p == r:
                yield ()
            return
        sym = rhs[pos]
        if is_terminal(sym):
            nxt = dfa.step(p, sym)
            if nxt is not None:
                for rest in go(pos + 1, nxt):
                    yield (sym,) + rest
            return
        for mid in sorted(ends.get((sym, p), ())):
            for rest in go(pos + 1, mid):
                yield ((p, sym, mid),) + rest

    return list(go(0, q))


# ---------------------------------------------------------------------------
# Emptiness and words


def productive(g: Grammar) -> set:
    """Least fixpoint of nonterminals deriving some terminal word."""
    good = set()
    watch = {}
    missing = {}
    queue = []
    for idx, (lhs, rhs) in enumerate(g.productions()):
        need = {s for s in rhs if not is_terminal(s)}
        missing[idx] = (lhs, len(need))
        for s in need:
            watch.setdefault(s, []).append(idx)
        if not need:
            queue.append(lhs)
    while queue:
        x = queue.pop()
        if x in good:
            continue
        good.add(x)
        for idx in watch.get(x, ()):
            lhs, m = missing[idx]
            missing[idx] = (lhs, m - 1)
            if m - 1 == 0:
                queue.append(lhs)
    return good


def is_empty(g: Grammar) -> bool:
    return g.start not in productive(g)


def some_word(g: Grammar) -> tuple | None:
    """A shortest word of ``L(g)``, or ``None`` when the language is empty."""
    best = {}
    choice = {}
    watch = {}
    pending = {}
    heap = []
    tick = itertools.count()
    prods = list(g.productions())
    for idx, (lhs, rhs) in enumerate(prods):
        need = [s for s in rhs if not is_terminal(s)]
        pending[idx] = len(need)
        for s in need:
            watch.setdefault(s, []).append(idx)
        if not need:
            heapq.heappush(heap, (len(rhs), next(tick), lhs, idx))
    while heap:
        cost, _, x, idx = heapq.heappop(heap)
        if x in best:
            continue
        best[x] = cost
        choice[x] = idx
        for j in watch.get(x, ()):
            pending[j] -= 1
            if pending[j] == 0:
                lhs, rhs = prods[j]
                if lhs not in best:
                    c = sum(1 if is_terminal(s) else best[s] for s in rhs)
                    heapq.heappush(heap, (c, next(tick), lhs, j))
    if g.start not in best:
        return None

    out = []
    stack = [g.start]
    while stack:
        sym = stack.pop()
        if is_terminal(sym):
            out.append(sym)
        else:
            stack.extend(reversed(prods[choice[sym]][1]))
    return tuple(out)


class InfiniteLanguage(ValueError):
    pass


def enumerate_language(g: Grammar, limit: int | None = None, symbol=None) -> list[tuple]:
    """Words derivable from ``symbol`` (default: the start), sorted, at most ``limit`` of them.

    Only productive nonterminals are expanded; a recursive productive
    nonterminal raises :class:`InfiniteLanguage`.
    """
    good = productive(g)
    root = g.start if symbol is None else symbol
    if root not in good:
        return []
    memo = {}
    active = set()

    def lang(x):
        if x in memo:
            return memo[x]
        if x in active:
            raise InfiniteLanguage(f"{_name(x)} is recursive")
        active.add(x)
        words = set()
        for rhs in g.rules.get(x, ()):
            if any(not is_terminal(s) and s not in good for s in rhs):
                continue
            parts = [{(s,)} if is_terminal(s) else lang(s) for s in rhs]
            for combo in itertools.product(*parts):
                words.add(tuple(itertools.chain.from_iterable(combo)))
        active.discard(x)
        memo[x] = words
        return words

    words = sorted(lang(root))
    return words if limit is None else words[:limit]


def accepts(g: Grammar, word) -> bool:
    """Membership by a span chart: ``chart[(x, a, b)]`` when ``x`` derives ``word[a:b]``."""
    word = tuple(word)
    n = len(word)
    derives = set()
    memo = {}

    def seq(rhs, pos, a, b):
        key = (rhs, pos, a, b)
        if key in memo:
            return memo[key]
        memo[key] = False
        if pos == len(rhs):
            res = a == b
        else:
            sym = rhs[pos]
            if is_terminal(sym):
                res = a < b and word[a] == sym and seq(rhs, pos + 1, a + 1, b)
            else:
                res = any(has(sym, a, m) and seq(rhs, pos + 1, m, b) for m in range(a, b + 1))
        memo[key] = res
        return res

    # nonterminals are recomputed until stable so that epsilon cycles are handled
    def has(x, a, b):
        return (x, a, b) in derives

    changed = True
    while changed:
        changed = False
        memo.clear()
        for length in range(n + 1):
            for a in range(n - length + 1):
                b = a + length
                for x, rhss in g.rules.items():
                    if (x, a, b) in derives:
                        continue
                    if any(seq(rhs, 0, a, b) for rhs in rhss):
                        derives.add((x, a, b))
                        changed = True
    return (g.start, 0, n) in derives
