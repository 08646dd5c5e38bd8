"""Proof structures over translated sequents and the net correctness criterion.

A proof structure is a fixed-point-free involution ``mate`` on literal
indices.  Literal ``l_i`` is preceded by connective ``c_i``; an edge
``(a, b)`` with ``a < b`` encloses the gaps (and so the connectives)
``a+1 .. b``.
"""
from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

from .syntax import (
    Box,
    Bracket,
    Derivation,
    Dia,
    Over,
    Prod,
    Rule,
    Sequent,
    Under,
    Var,
    locate,
    replace_span,
)
from .translation import Conn, OmegaString, natural, translate


class Violation(str, Enum):
    DUALITY = "duality"
    PLANARITY = "planarity"
    REGION_PAR = "region-par"
    CYCLE = "cycle"


class NotANet(ValueError):
    def __init__(self, kind: Violation, message: str):
        super().__init__(f"{kind.value}: {message}")
        self.kind = kind


class InternalError(RuntimeError):
    """Raised when a structure that passed the criterion cannot be read back as a derivation."""


@dataclass(frozen=True)
class ProofStructure:
    mate: tuple

    def __post_init__(self):
        n = len(self.mate)
        for i, j in enumerate(self.mate):
            if not (0 <= j < n) or j == i or self.mate[j] != i:
                raise ValueError(f"not a fixed-point-free involution at {i}")

    @classmethod
    def from_pairs(cls, n: int, pairs) -> ProofStructure:
        mate = [None] * n
        for a, b in pairs:
            if mate[a] is not None or mate[b] is not None:
                raise ValueError(f"index linked twice in ({a}, {b})")
            mate[a], mate[b] = b, a
        if None in mate:
            raise ValueError("some literal is not linked")
        return cls(tuple(mate))

    @property
    def n(self) -> int:
        return len(self.mate)

    def pairs(self) -> list[tuple[int, int]]:
        return [(i, j) for i, j in enumerate(self.mate) if i < j]


def is_planar(p: ProofStructure) -> bool:
    stack = []
    for i, j in enumerate(p.mate):
        if j > i:
            stack.append(i)
        elif not stack or stack.pop() != j:
            return False
    return True


def is_dual(p: ProofStructure, w: OmegaString) -> bool:
    return all(w.lits[j] == w.lits[i].dual() for i, j in enumerate(p.mate))


OUTER = -1


@dataclass(frozen=True)
class RegionDecomposition:
    """``region_of[i]`` is the left endpoint of the innermost edge enclosing ``c_i``, or OUTER."""

    region_of: tuple

    def members(self) -> dict[int, list[int]]:
        out = {OUTER: []}
        for i, r in enumerate(self.region_of):
            out.setdefault(r, []).append(i)
        return out

    @property
    def count(self) -> int:
        return len(set(self.region_of) | {OUTER})


def regions(p: ProofStructure) -> RegionDecomposition:
    region_of = []
    stack = []
    for i, j in enumerate(p.mate):
        region_of.append(stack[-1] if stack else OUTER)
        if j > i:
            stack.append(i)
        elif not stack or stack.pop() != j:
            raise NotANet(Violation.PLANARITY, f"edge ({j}, {i}) crosses another edge")
    return RegionDecomposition(tuple(region_of))


@dataclass(frozen=True)
class ProofNet:
    structure: ProofStructure
    regions: RegionDecomposition
    a_edges: dict

    @property
    def mate(self):
        return self.structure.mate


def _region_pars(p: ProofStructure, w: OmegaString, dec: RegionDecomposition) -> dict[int, int]:
    pars = {}
    # every edge opens a region, even one with no connective on its border
    for r in [OUTER] + [a for a, _ in p.pairs()]:
        pars[r] = []
    for i, r in enumerate(dec.region_of):
        if w.conns[i].is_par:
            pars[r].append(i)
    out = {}
    for r, ps in pars.items():
        if len(ps) != 1:
            where = "outer region" if r == OUTER else f"region under edge ({r}, {p.mate[r]})"
            raise NotANet(Violation.REGION_PAR, f"{where} has {len(ps)} pars")
        out[r] = ps[0]
    return out


def _acyclic(n: int, edges) -> bool:
    succ = [[] for _ in range(n)]
    indeg = [0] * n
    for a, b in edges:
        succ[a].append(b)
        indeg[b] += 1
    queue = deque(i for i in range(n) if indeg[i] == 0)
    seen = 0
    while queue:
        v = queue.popleft()
        seen += 1
        for u in succ[v]:
            indeg[u] -= 1
            if indeg[u] == 0:
                queue.append(u)
    return seen == n


def a_graph_edges(w: OmegaString, a_edges: dict):
    """Edges of A together with immediate dominance: tensor -> its par, dominated -> dominator."""
    yield from a_edges.items()
    for j, i in enumerate(w.parent):
        if i is not None:
            yield j, i


def check_net(p: ProofStructure, w: OmegaString) -> ProofNet:
    """Return the net or raise :class:`NotANet` naming the first failed condition."""
    if p.n != w.n:
        raise ValueError(f"structure has {p.n} literals, string has {w.n}")
    for i, j in enumerate(p.mate):
        if w.lits[j] != w.lits[i].dual():
            raise NotANet(Violation.DUALITY, f"literal {i} ({w.lits[i]}) linked to {j} ({w.lits[j]})")
    dec = regions(p)
    par_of = _region_pars(p, w, dec)
    a_edges = {i: par_of[dec.region_of[i]] for i in range(w.n) if w.conns[i] is Conn.TENSOR}
    # immediate dominance suffices: its transitive closure adds no cycles
    if not _acyclic(w.n, a_graph_edges(w, a_edges)):
        raise NotANet(Violation.CYCLE, "A together with dominance has a cycle")
    return ProofNet(p, dec, a_edges)


def is_net(p: ProofStructure, w: OmegaString) -> bool:
    try:
        check_net(p, w)
    except NotANet:
        return False
    return True


def respects_sisterhood(p: ProofStructure, w: OmegaString) -> bool:
    for i, j in enumerate(p.mate):
        si = w.sister_lit[i]
        if si is not None:
            sj = w.sister_lit[j]
            if sj is None or p.mate[si] != sj:
                return False
    return True


# ---------------------------------------------------------------------------
# Code words


@dataclass(frozen=True)
class CodeWord:
    """``letters[i] == j`` stands for letter ``e_{j+1}`` at position ``i+1``."""

    letters: tuple

    def __str__(self):
        return " ".join(f"e{j + 1}" for j in self.letters)

    @classmethod
    def parse(cls, text: str) -> CodeWord:
        out = []
        for tok in text.split():
            if not tok.startswith("e") or not tok[1:].isdigit() or int(tok[1:]) < 1:
                raise ValueError(f"bad letter {tok!r}")
            out.append(int(tok[1:]) - 1)
        return cls(tuple(out))


def encode(p: ProofStructure) -> CodeWord:
    return CodeWord(tuple(p.mate))


def decode(cw: CodeWord) -> ProofStructure:
    return ProofStructure(tuple(cw.letters))


# ---------------------------------------------------------------------------
# Brute-force enumeration


def enumerate_nets(w: OmegaString, require_sisterhood: bool = False, limit: int | None = None,
                   max_n: int = 20) -> list[ProofNet]:
    """All nets over ``w`` (optionally respecting sisterhood), at most ``limit`` of them."""
    if w.n > max_n:
        raise ValueError(f"{w.n} literals exceed the enumeration bound {max_n}")
    if natural(w) != -1:
        return []
    out = []
    for p in planar_dual_structures(w):
        try:
            net = check_net(p, w)
        except NotANet:
            continue
        if require_sisterhood and not respects_sisterhood(p, w):
            continue
        out.append(net)
        if limit is not None and len(out) >= limit:
            break
    return out


def planar_dual_structures(w: OmegaString):
    """Every non-crossing duality-respecting pairing of the literals of ``w``."""
    lits = w.lits

    @lru_cache(maxsize=None)
    def span(lo, hi):
        if lo == hi:
            return ((),)
        out = []
        want = lits[lo].dual()
        for j in range(lo + 1, hi, 2):
            if lits[j] != want:
                continue
            inner = span(lo + 1, j)
            if not inner:
                continue
            rest = span(j + 1, hi)
            for a in inner:
                for b in rest:
                    out.append(((lo, j),) + a + b)
        return tuple(out)

    if w.n % 2:
        return
    for pairs in span(0, w.n):
        yield ProofStructure.from_pairs(w.n, pairs)


# ---------------------------------------------------------------------------
# Reading a derivation off a net


def _tag_formula(f, fresh):
    if isinstance(f, Var):
        return Var(f.name, next(fresh))
    if isinstance(f, Dia):
        return Dia(_tag_formula(f.body, fresh), next(fresh))
    if isinstance(f, Box):
        return Box(_tag_formula(f.body, fresh), next(fresh))
    return type(f)(_tag_formula(f.left, fresh), _tag_formula(f.right, fresh))


def _tag_config(items, fresh):
    return tuple(Bracket(_tag_config(x.inner, fresh), next(fresh)) if isinstance(x, Bracket)
                 else _tag_formula(x, fresh) for x in items)


def tag_sequent(s: Sequent) -> Sequent:
    """Copy of ``s`` in which every variable, modality and bracket carries a distinct tag."""
    fresh = itertools.count()
    return Sequent(_tag_config(s.antecedent, fresh), _tag_formula(s.succedent, fresh))


def _keys(w: OmegaString) -> list:
    return list(w.tags)


class _Reader:
    def __init__(self):
        self.steps = 0

    def read(self, s: Sequent, links: dict) -> Derivation:
        self.steps += 1
        w = translate(s)
        keys = _keys(w)
        if len(set(keys)) != len(keys):
            raise InternalError("occurrence tags are not unique")
        index = {k: i for i, k in enumerate(keys)}
        mate = tuple(index[links[k]] for k in keys)
        net = check_net(ProofStructure(mate), w)
        if isinstance(s.succedent, Var) and len(s.antecedent) == 1 and s.antecedent[0] == s.succedent:
            return Derivation(s, Rule.AXIOM)
        for rule, hole, premises in self._candidates(s, w, net):
            sublinks = []
            for prem in premises:
                pk = set(_keys(translate(prem)))
                sub = {k: links[k] for k in pk}
                if any(v not in pk for v in sub.values()):
                    break
                pw = translate(prem)
                pmate = ProofStructure(tuple({k: i for i, k in enumerate(pw.tags)}[sub[k]] for k in pw.tags))
                if not is_net(pmate, pw) or not respects_sisterhood(pmate, pw):
                    break
                sublinks.append(sub)
            else:
                subs = tuple(self.read(prem, sub) for prem, sub in zip(premises, sublinks))
                return Derivation(s, rule, subs, hole)
        raise InternalError("no rule instance matches a maximal connective of the net")

    def _candidates(self, s, w, net):
        tops = []
        for span in w.spans:
            c = span.top
            if c is None:
                continue
            if w.conns[c] is Conn.TENSOR and w.conns[net.a_edges[c]] is not Conn.META:
                continue
            tops.append((c, span))
        tops.sort(key=lambda t: t[0])
        for c, span in tops:
            yield from self._instances(s, w, net, c, span)

    def _instances(self, s, w, net, c, span):
        ant, goal = s.antecedent, s.succedent
        f = span.formula
        if span.path is None:
            if isinstance(f, Under):
                yield Rule.UNDER_R, None, (Sequent((f.left,) + ant, f.right),)
            elif isinstance(f, Over):
                yield Rule.OVER_R, None, (Sequent(ant + (f.right,), f.left),)
            elif isinstance(f, Box):
                yield Rule.BOX_R, None, (Sequent((Bracket(ant, f.tag),), f.body),)
            elif isinstance(f, Prod):
                slot = w.meta_slot[net.a_edges[c]]
                if slot[0] == ():
                    cut = slot[1]
                    yield Rule.PROD_R, None, (Sequent(ant[:cut], f.left), Sequent(ant[cut:], f.right))
            elif isinstance(f, Dia):
                if len(ant) == 1 and isinstance(ant[0], Bracket):
                    yield Rule.DIA_R, None, (Sequent(ant[0].inner, f.body),)
            return
        path = span.path
        level_path, idx = path[:-1], path[-1]
        level, _ = locate(ant, path)
        if isinstance(f, Prod):
            new = replace_span(ant, level_path, idx, idx + 1, (f.left, f.right))
            yield Rule.PROD_L, path, (Sequent(new, goal),)
        elif isinstance(f, Dia):
            new = replace_span(ant, level_path, idx, idx + 1, (Bracket((f.body,), f.tag),))
            yield Rule.DIA_L, path, (Sequent(new, goal),)
        elif isinstance(f, (Under, Over)):
            slot_path, cut = w.meta_slot[net.a_edges[c]]
            if slot_path != level_path:
                return
            if isinstance(f, Under) and cut <= idx:
                rest = replace_span(ant, level_path, cut, idx + 1, (f.right,))
                yield Rule.UNDER_L, path, (Sequent(level[cut:idx], f.left), Sequent(rest, goal))
            elif isinstance(f, Over) and cut >= idx + 1:
                rest = replace_span(ant, level_path, idx, cut, (f.left,))
                yield Rule.OVER_L, path, (Sequent(level[idx + 1:cut], f.right), Sequent(rest, goal))
        elif isinstance(f, Box):
            if level_path and len(level) == 1:
                outer_path, bidx = level_path[:-1], level_path[-1]
                new = replace_span(ant, outer_path, bidx, bidx + 1, (f.body,))
                yield Rule.BOX_L, level_path, (Sequent(new, goal),)


def net_to_derivation(p: ProofStructure | ProofNet, s: Sequent) -> Derivation:
    """Read a derivation of ``s`` off a sisterhood-respecting net over ``translate(s)``.

    At each step a connective that is maximal for A together with dominance
    is removed by the matching rule; the net restricted to each premise is
    again a net.
    """
    if isinstance(p, ProofNet):
        p = p.structure
    ts = tag_sequent(s)
    w = translate(ts)
    if p.n != w.n:
        raise ValueError(f"structure has {p.n} literals, sequent translates to {w.n}")
    check_net(p, w)
    if not respects_sisterhood(p, w):
        raise ValueError("net does not respect sisterhood")
    links = {w.tags[i]: w.tags[j] for i, j in enumerate(p.mate)}
    return _Reader().read(ts, links)


# ---------------------------------------------------------------------------
# DOT output


def to_dot(p: ProofStructure, w: OmegaString) -> str:
    """E drawn above the token row, A and dominance below."""
    lines = ["digraph net {", "  rankdir=LR;", "  node [shape=plaintext];"]
    for i in range(w.n):
        lines.append(f'  c{i} [label="{w.conns[i].symbol}"];')
        lines.append(f'  l{i} [label="{w.lits[i]}"];')
    order = " -> ".join(f"c{i} -> l{i}" for i in range(w.n))
    lines.append(f"  {{ rank=same; {order} [style=invis]; }}")
    for a, b in p.pairs():
        lines.append(f"  l{a}:n -> l{b}:n [dir=none, color=black];")
    try:
        net = check_net(p, w)
        a_edges = net.a_edges
    except NotANet:
        a_edges = {}
    for t, q in a_edges.items():
        lines.append(f"  c{t}:s -> c{q}:s [color=blue];")
    for j, i in enumerate(w.parent):
        if i is not None:
            lines.append(f"  c{j}:s -> c{i}:s [color=gray, style=dashed];")
    lines.append("}")
    return "\n".join(lines)
