"""Deterministic automaton accepting the code words of sisterhood-respecting structures.

Letters are 0-based literal indices (letter ``j`` is ``e_{j+1}``).  A state is
``(pointer, stack)``: the automaton reads the code word position by position
and, at a bracket whose sister comes later, pushes the sister of the bracket
it is linked to; at the sister it pops and demands the popped letter.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .translation import OmegaString, bracket_depth


@dataclass(frozen=True)
class Dfa:
    n: int
    states: tuple
    start: int
    accept: int | None
    delta: tuple

    @classmethod
    def build(cls, w: OmegaString) -> Dfa:
        n = w.n
        sis = w.sister_lit
        brackets = [j for j in range(n) if sis[j] is not None]
        index = {(0, ()): 0}
        states = [(0, ())]
        delta = []
        queue = deque([0])
        while queue:
            sid = queue.popleft()
            while len(delta) <= sid:
                delta.append({})
            pos, stack = states[sid]
            if pos == n:
                continue
            moves = {}
            if sis[pos] is None:
                for a in range(n):
                    moves[a] = (pos + 1, stack)
            elif sis[pos] > pos:
                for a in brackets:
                    moves[a] = (pos + 1, stack + (sis[a],))
            elif stack:
                moves[stack[-1]] = (pos + 1, stack[:-1])
            for a, target in moves.items():
                tid = index.get(target)
                if tid is None:
                    tid = index[target] = len(states)
                    states.append(target)
                    queue.append(tid)
                delta[sid][a] = tid
        while len(delta) < len(states):
            delta.append({})
        accept = index.get((n, ()))
        return cls(n, tuple(states), 0, accept, tuple(delta))

    def step(self, state: int | None, letter: int) -> int | None:
        if state is None:
            return None
        return self.delta[state].get(letter)

    def run(self, word) -> bool:
        letters = getattr(word, "letters", word)
        state = self.start
        for a in letters:
            state = self.step(state, a)
            if state is None:
                return False
        return state is not None and state == self.accept

    @property
    def transition_count(self) -> int:
        return sum(len(d) for d in self.delta)


class LazyDfa:
    """The same automaton with states ``(pointer, stack)`` explored only when stepped into.

    Intersection touches few of the ``n^b`` possible stacks, so the decider
    uses this form; ``states`` holds the states seen so far.
    """

    def __init__(self, w: OmegaString):
        self.n = w.n
        self.sis = w.sister_lit
        self.brackets = frozenset(j for j in range(w.n) if self.sis[j] is not None)
        self.start = (0, ())
        self.accept = (w.n, ())
        self.states = {self.start}

    def step(self, state, letter: int):
        if state is None or not 0 <= letter < self.n:
            return None
        pos, stack = state
        if pos == self.n:
            return None
        sis = self.sis[pos]
        if sis is None:
            target = (pos + 1, stack)
        elif sis > pos:
            if letter not in self.brackets:
                return None
            target = (pos + 1, stack + (self.sis[letter],))
        elif stack and stack[-1] == letter:
            target = (pos + 1, stack[:-1])
        else:
            return None
        self.states.add(target)
        return target

    def run(self, word) -> bool:
        letters = getattr(word, "letters", word)
        state = self.start
        for a in letters:
            state = self.step(state, a)
        return state is not None and state == self.accept


def state_bound(n: int, b: int) -> int:
    """Worst-case state count ``(n+1)(b+1)n^b + 1`` (the last one being the dead state)."""
    return (n + 1) * (b + 1) * n ** b + 1


def build(w: OmegaString) -> Dfa:
    return Dfa.build(w)


def bound(w: OmegaString) -> int:
    return state_bound(w.n, bracket_depth(w))
