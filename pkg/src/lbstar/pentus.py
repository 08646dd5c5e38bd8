"""Context-free grammar whose language is the set of code words of all nets over a string.

Indices are 0-based.  An ``(i, j, k)`` segment pairs the literals
``l_i .. l_{k-1}`` and owns the connectives ``c_i .. c_k``; ``c_j`` is the
par left in its outer region.  Nonterminals are ``("F", i, j, k, R)`` where
``R`` is a profile: a frozenset of ordered pairs of dominant tensors.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache

from .languages import Grammar
from .translation import Conn, OmegaString

START = "S"


@dataclass(frozen=True)
class TensorTopology:
    """Dominant tensors, their clusters and the chains ``V_i``.

    ``tau[c]`` is the dominant representative of tensor ``c`` (``None`` for pars);
    ``chains[i]`` lists the dominant tensors from ``c_i`` up to the root.
    """

    tau: tuple
    chains: tuple
    clusters: dict = field(compare=False)

    def chain_order(self, i: int) -> frozenset:
        ch = self.chains[i]
        return frozenset((ch[a], ch[b]) for a in range(len(ch)) for b in range(a + 1, len(ch)))

    def weakly_below(self, a: int, b: int, w: OmegaString) -> bool:
        """``a`` reaches ``b`` by dominance steps and moves inside tensor clusters."""
        return b in _weak_reach(w, a)


def _is_tensor(w, c):
    return c is not None and w.conns[c] is Conn.TENSOR


def topology(w: OmegaString) -> TensorTopology:
    tau = []
    for c in range(w.n):
        if not _is_tensor(w, c):
            tau.append(None)
            continue
        t = c
        while _is_tensor(w, w.parent[t]):
            t = w.parent[t]
        tau.append(t)
    clusters = {}
    for c, t in enumerate(tau):
        if t is not None:
            clusters.setdefault(t, []).append(c)
    chains = []
    for c in range(w.n):
        ch = []
        x = c
        while x is not None:
            if tau[x] == x:
                ch.append(x)
            x = w.parent[x]
        chains.append(tuple(ch))
    return TensorTopology(tuple(tau), tuple(chains), clusters)


def _weak_reach(w, a):
    """Connectives reachable from ``a`` going up, or down from a tensor to a tensor child."""
    children = {}
    for c, p in enumerate(w.parent):
        if p is not None and _is_tensor(w, p) and _is_tensor(w, c):
            children.setdefault(p, []).append(c)
    seen = {a}
    todo = [a]
    while todo:
        x = todo.pop()
        nxt = list(children.get(x, ()))
        if w.parent[x] is not None:
            nxt.append(w.parent[x])
        for y in nxt:
            if y not in seen:
                seen.add(y)
                todo.append(y)
    seen.discard(a)
    return seen


def profile_count_bound(dmax: int) -> int:
    return 2 ** (12 * dmax)


# ---------------------------------------------------------------------------
# Grammar


@lru_cache(maxsize=1 << 18)
def _close(rel: frozenset, keep: frozenset) -> frozenset | None:
    """Transitive closure of ``rel`` restricted to ``keep``; ``None`` if it is reflexive."""
    succ = {}
    for a, b in rel:
        if a == b:
            return None
        succ.setdefault(a, set()).add(b)
    reach = {}
    for v in succ:
        seen = set()
        todo = list(succ[v])
        while todo:
            x = todo.pop()
            if x in seen:
                continue
            seen.add(x)
            todo.extend(succ.get(x, ()))
        if v in seen:
            return None
        reach[v] = seen
    return frozenset((a, b) for a, bs in reach.items() if a in keep for b in bs if b in keep)


@dataclass
class GrammarStats:
    nonterminals: int
    rules: int
    size: int
    max_profiles: int
    distinct_profiles: int


class _Builder:
    def __init__(self, w: OmegaString):
        self.w = w
        self.n = n = w.n
        self.topo = topology(w)
        self.is_par = [w.conns[i].is_par for i in range(n)]
        self.par_prefix = [0]
        for i in range(n):
            self.par_prefix.append(self.par_prefix[-1] + self.is_par[i])
        # literal balance: equal prefix signatures mean the literals in between pair off
        sig = [()]
        counts = {}
        for lit in w.lits:
            base = lit.kind.value.lstrip("~") if lit.is_bracket else ("v", lit.name)
            counts[base] = counts.get(base, 0) + (-1 if lit.is_negative else 1)
            sig.append(tuple(sorted(((str(k), v) for k, v in counts.items() if v))))
        self.balance = sig
        self.vsets = [frozenset(ch) for ch in self.topo.chains]
        self.q = [self.topo.chain_order(i) for i in range(n)]
        self.duals = [w.lits[i].dual() for i in range(n)]
        self.table = {}
        self.rules = {}

    def segment_ok(self, i, k):
        if (k - i) % 2:
            return False
        if i == k:
            return self.is_par[i]
        if self.is_par[i] and self.is_par[k]:
            return False
        if self.par_prefix[k + 1] - self.par_prefix[i] != (k - i) // 2 + 1:
            return False
        return self.balance[i] == self.balance[k]

    def add(self, lhs, rhs):
        self.rules.setdefault(lhs, set()).add(rhs)

    def build(self) -> Grammar:
        n, w = self.n, self.w
        lits = w.lits
        for i in range(n):
            if self.is_par[i]:
                nt = ("F", i, i, i, self.q[i])
                self.table[(i, i)] = {(i, self.q[i]): nt}
                self.add(nt, ())
        for span in range(2, n, 2):
            for i in range(0, n - span):
                k = i + span
                if not self.segment_ok(i, k):
                    continue
                entries = {}
                keep_base = self.vsets[i] | self.vsets[k]
                if not self.is_par[i]:
                    tau_i = self.topo.tau[i]
                    for h1 in range(i + 1, k, 2):
                        if lits[h1] != self.duals[i]:
                            continue
                        left = self.table.get((i + 1, h1))
                        right = self.table.get((h1 + 1, k))
                        if not left or not right:
                            continue
                        for (j, r2), nt2 in right.items():
                            extra = self.q[i] | {(tau_i, d) for d in self.vsets[j]}
                            keep = keep_base | self.vsets[j]
                            for (_, r1), nt1 in left.items():
                                r = _close(r1 | r2 | extra, keep)
                                if r is None:
                                    continue
                                nt = entries.setdefault((j, r), ("F", i, j, k, r))
                                self.add(nt, (h1, nt1, i, nt2))
                elif not self.is_par[k]:
                    tau_k = self.topo.tau[k]
                    for h in range(i, k - 1, 2):
                        if lits[h] != self.duals[k - 1]:
                            continue
                        left = self.table.get((i, h))
                        right = self.table.get((h + 1, k - 1))
                        if not left or not right:
                            continue
                        for (j, r1), nt1 in left.items():
                            extra = self.q[k] | {(tau_k, d) for d in self.vsets[j]}
                            keep = keep_base | self.vsets[j]
                            for (_, r2), nt2 in right.items():
                                r = _close(r1 | r2 | extra, keep)
                                if r is None:
                                    continue
                                nt = entries.setdefault((j, r), ("F", i, j, k, r))
                                self.add(nt, (nt1, k - 1, nt2, h))
                if entries:
                    self.table[(i, k)] = entries
        last = n - 1
        for h in range(0, last, 2):
            if lits[h] != self.duals[last]:
                continue
            left = self.table.get((0, h), {})
            right = self.table.get((h + 1, last), {})
            for (j1, r1), nt1 in left.items():
                if j1 != 0:
                    continue
                for (_, r2), nt2 in right.items():
                    if _close(r1 | r2, frozenset()) is None:
                        continue
                    self.add(START, (nt1, last, nt2, h))
        return Grammar(START, {lhs: sorted(rhss, key=_rule_key) for lhs, rhss in self.rules.items()})


def _rule_key(rhs):
    return tuple((0, x) if isinstance(x, int) else (1, x[1], x[2], x[3], sorted(x[4])) for x in rhs)


def build_grammar(w: OmegaString) -> Grammar:
    """Grammar for the code words of all nets over ``w``.

    Only nonterminals with at least one rule are created; ``("F", i, j, k, R)``
    derives exactly the codes of correct ``(i, j, k)``-segments with profile ``R``.
    """
    return _Builder(w).build()


def grammar_stats(g: Grammar) -> GrammarStats:
    per_triple = {}
    profiles = set()
    for lhs in g.rules:
        if lhs == START:
            continue
        _, i, j, k, r = lhs
        per_triple[(i, j, k)] = per_triple.get((i, j, k), 0) + 1
        profiles.add(r)
    return GrammarStats(
        nonterminals=len(g.rules),
        rules=g.rule_count,
        size=g.size,
        max_profiles=max(per_triple.values(), default=0),
        distinct_profiles=len(profiles),
    )


def size_bound(n: int, k: int) -> int:
    return 5 * (n ** 3 * k + 1)


# ---------------------------------------------------------------------------
# Brute-force segments


def segments(w: OmegaString, i: int, j: int, k: int) -> dict:
    """Codes of correct ``(i, j, k)``-segments mapped to their profiles, by exhaustive search.

    A code is the tuple of partner indices for positions ``i .. k-1``.
    """
    topo = topology(w)
    n = w.n
    is_par = [w.conns[x].is_par for x in range(n)]
    if i == k:
        return {(): topo.chain_order(i)} if i == j and is_par[i] else {}
    keep = frozenset(topo.chains[i]) | frozenset(topo.chains[j]) | frozenset(topo.chains[k])
    out = {}
    for pairs in _pairings(w, i, k):
        mate = {}
        for a, b in pairs:
            mate[a], mate[b] = b, a
        region = {}
        stack = []
        for x in range(i, k + 1):
            region[x] = stack[-1] if stack else None
            if x == k:
                break
            if mate[x] > x:
                stack.append(x)
            else:
                stack.pop()
        pars = {}
        for x in range(i, k + 1):
            if is_par[x]:
                pars.setdefault(region[x], []).append(x)
        regs = {None} | {a for a, b in pairs}
        if any(len(pars.get(r, ())) != 1 for r in regs) or pars[None] != [j]:
            continue
        a_edges = {x: pars[region[x]][0] for x in range(i, k + 1) if not is_par[x]}
        succ = {x: [] for x in range(n)}
        for x, p in enumerate(w.parent):
            if p is not None:
                succ[x].append(p)
        for x, y in a_edges.items():
            succ[x].append(y)
        if not _dag(n, succ):
            continue
        for x, p in enumerate(w.parent):
            if p is not None and not is_par[p] and not is_par[x]:
                succ[p].append(x)
        prof = set()
        for a in keep:
            for b in _reach(succ, a):
                if b in keep and b != a:
                    prof.add((a, b))
        code = tuple(mate[x] for x in range(i, k))
        out[code] = frozenset(prof)
    return out


def _pairings(w, lo, hi):
    if lo == hi:
        yield ()
        return
    want = w.lits[lo].dual()
    for m in range(lo + 1, hi, 2):
        if w.lits[m] != want:
            continue
        for inner in _pairings(w, lo + 1, m):
            for rest in _pairings(w, m + 1, hi):
                yield ((lo, m),) + inner + rest


def _dag(n, succ):
    indeg = [0] * n
    for x in range(n):
        for y in succ[x]:
            indeg[y] += 1
    queue = deque(x for x in range(n) if indeg[x] == 0)
    seen = 0
    while queue:
        x = queue.popleft()
        seen += 1
        for y in succ[x]:
            indeg[y] -= 1
            if indeg[y] == 0:
                queue.append(y)
    return seen == n


def _reach(succ, a):
    seen = set()
    todo = list(succ[a])
    while todo:
        x = todo.pop()
        if x not in seen:
            seen.add(x)
            todo.extend(succ[x])
    return seen
