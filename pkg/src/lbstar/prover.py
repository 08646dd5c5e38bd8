"""Exhaustive cut-free backward proof search.

Slow by design.  It shares nothing with the proof-net pipeline apart from the
syntax module and serves as the reference decision procedure in tests.
"""
from __future__ import annotations

import time
from collections import Counter
from dataclasses import dataclass

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
    count_connectives,
    iter_positions,
    print_sequent,
    replace_span,
)


class BudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class SearchBudget:
    max_connectives: int | None = None
    time_limit: float | None = None

    def __post_init__(self):
        if self.max_connectives is not None and self.max_connectives <= 0:
            raise ValueError("max_connectives must be positive")
        if self.time_limit is not None and self.time_limit <= 0:
            raise ValueError("time_limit must be positive")


def _polarity_balance(s: Sequent) -> Counter:
    """Signed occurrence counts; every derivable sequent balances to zero.

    Key ``None`` tracks bracket literals (meta-brackets, and modalities by polarity).
    """
    bal = Counter()

    def walk(f, sign):
        if isinstance(f, Var):
            bal[f.name] += sign
        elif isinstance(f, Dia):
            bal[None] += sign
            walk(f.body, sign)
        elif isinstance(f, Box):
            bal[None] -= sign
            walk(f.body, sign)
        elif isinstance(f, Prod):
            walk(f.left, sign)
            walk(f.right, sign)
        elif isinstance(f, Under):
            walk(f.left, -sign)
            walk(f.right, sign)
        else:
            walk(f.left, sign)
            walk(f.right, -sign)

    for _, item in iter_positions(s.antecedent):
        if isinstance(item, Bracket):
            bal[None] -= 1
        else:
            walk(item, -1)
    walk(s.succedent, 1)
    return bal


def _balanced(s: Sequent) -> bool:
    return not any(_polarity_balance(s).values())


class _Search:
    def __init__(self, deadline: float | None):
        self.deadline = deadline
        self.memo: dict[Sequent, Derivation | None] = {}
        self.ticks = 0

    def prove(self, s: Sequent) -> Derivation | None:
        if s in self.memo:
            return self.memo[s]
        self.ticks += 1
        if self.deadline is not None and self.ticks % 256 == 0 and time.monotonic() > self.deadline:
            raise BudgetExceeded(f"time limit exceeded on {print_sequent(s)}")
        result = self._prove(s) if _balanced(s) else None
        self.memo[s] = result
        return result

    def _prove(self, s: Sequent) -> Derivation | None:
        step = self._invertible(s)
        if step is not None:
            rule, hole, premise = step
            sub = self.prove(premise)
            return None if sub is None else Derivation(s, rule, (sub,), hole)
        for rule, hole, premises in self._choices(s):
            subs = []
            for p in premises:
                d = self.prove(p)
                if d is None:
                    break
                subs.append(d)
            else:
                return Derivation(s, rule, tuple(subs), hole)
        return None

    @staticmethod
    def _invertible(s: Sequent):
        ant, c = s.antecedent, s.succedent
        if isinstance(c, Under):
            return Rule.UNDER_R, None, Sequent((c.left,) + ant, c.right)
        if isinstance(c, Over):
            return Rule.OVER_R, None, Sequent(ant + (c.right,), c.left)
        if isinstance(c, Box):
            return Rule.BOX_R, None, Sequent((Bracket(ant),), c.body)
        for path, item in iter_positions(ant):
            if isinstance(item, Prod):
                new = replace_span(ant, path[:-1], path[-1], path[-1] + 1, (item.left, item.right))
                return Rule.PROD_L, path, Sequent(new, c)
            if isinstance(item, Dia):
                new = replace_span(ant, path[:-1], path[-1], path[-1] + 1, (Bracket((item.body,)),))
                return Rule.DIA_L, path, Sequent(new, c)
        return None

    @staticmethod
    def _choices(s: Sequent):
        ant, c = s.antecedent, s.succedent
        if isinstance(c, Var) and ant == (c,):
            yield Rule.AXIOM, None, ()
            return
        if isinstance(c, Prod):
            for cut in range(len(ant) + 1):
                yield Rule.PROD_R, None, (Sequent(ant[:cut], c.left), Sequent(ant[cut:], c.right))
        if isinstance(c, Dia) and len(ant) == 1 and isinstance(ant[0], Bracket):
            yield Rule.DIA_R, None, (Sequent(ant[0].inner, c.body),)
        for path, item in iter_positions(ant):
            level_path, idx = path[:-1], path[-1]
            level = ant
            for i in level_path:
                level = level[i].inner
            if isinstance(item, Under):
                for m in range(idx + 1):
                    pi = level[idx - m:idx]
                    rest = replace_span(ant, level_path, idx - m, idx + 1, (item.right,))
                    yield Rule.UNDER_L, path, (Sequent(pi, item.left), Sequent(rest, c))
            elif isinstance(item, Over):
                for m in range(len(level) - idx):
                    pi = level[idx + 1:idx + 1 + m]
                    rest = replace_span(ant, level_path, idx, idx + m + 1, (item.left,))
                    yield Rule.OVER_L, path, (Sequent(pi, item.right), Sequent(rest, c))
            elif isinstance(item, Bracket) and len(item.inner) == 1 and isinstance(item.inner[0], Box):
                rest = replace_span(ant, level_path, idx, idx + 1, (item.inner[0].body,))
                yield Rule.BOX_L, path, (Sequent(rest, c),)


def prove(s: Sequent, budget: SearchBudget | None = None) -> Derivation | None:
    """Return a cut-free derivation of ``s``, or ``None`` when none exists.

    Every backward step removes one logical connective, so the search tree has
    depth at most ``count_connectives(s)`` and the search is exhaustive.
    Raises :class:`BudgetExceeded` when the goal is larger than the budget
    allows or the time limit runs out.
    """
    budget = budget or SearchBudget()
    if budget.max_connectives is not None and count_connectives(s) > budget.max_connectives:
        raise BudgetExceeded(
            f"{count_connectives(s)} connectives exceed budget {budget.max_connectives}")
    deadline = None if budget.time_limit is None else time.monotonic() + budget.time_limit
    return _Search(deadline).prove(s)


def is_derivable(s: Sequent, budget: SearchBudget | None = None) -> bool:
    return prove(s, budget) is not None


@dataclass
class AgreementReport:
    checked: int
    disagreements: list[tuple[Sequent, bool, bool]]

    @property
    def ok(self) -> bool:
        return not self.disagreements


def count_derivability_agreement(seqs, decider, budget: SearchBudget | None = None) -> AgreementReport:
    """Compare ``decider(s) -> bool`` with the oracle on each sequent.

    Disagreements are reported as ``(sequent, oracle_answer, decider_answer)``.
    """
    bad = []
    n = 0
    for s in seqs:
        expected = is_derivable(s, budget)
        got = bool(decider(s))
        n += 1
        if expected != got:
            bad.append((s, expected, got))
    return AgreementReport(n, bad)
