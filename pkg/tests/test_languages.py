import random
from dataclasses import dataclass

import pytest
from hypothesis import given, strategies as st

from lbstar.languages import (
    Grammar,
    InfiniteLanguage,
    accepts,
    dump,
    enumerate_language,
    intersect,
    is_empty,
    is_terminal,
    productive,
    some_word,
)


@dataclass
class Parity:
    """Words over {0, 1} with an even number of 1s."""

    start: int = 0
    accept: int | None = 0

    def step(self, q, a):
        if q is None or a not in (0, 1):
            return None
        return q ^ a


# S -> 0 S 1 | A ; A -> 1 | ()
BALANCED = Grammar("S", {"S": [(0, "S", 1), ("A",)], "A": [(1,), ()]})
FINITE = Grammar("S", {"S": [("A", "A"), (1,)], "A": [(0,), (1,)]})


def test_terminals():
    assert is_terminal(3) and not is_terminal("A") and not is_terminal(("F", 0, 0, 0, frozenset()))


def test_sizes():
    assert FINITE.rule_count == 4
    assert FINITE.size == 3 + 2 + 2 + 2
    assert FINITE.max_rule_length == 3


def test_enumerate_finite():
    assert enumerate_language(FINITE) == [(0, 0), (0, 1), (1,), (1, 0), (1, 1)]
    assert enumerate_language(FINITE, limit=2) == [(0, 0), (0, 1)]
    assert enumerate_language(FINITE, symbol="A") == [(0,), (1,)]


def test_enumerate_infinite_raises():
    with pytest.raises(InfiniteLanguage):
        enumerate_language(BALANCED)


def test_intersection_with_everything():
    everything = Parity()
    g = intersect(FINITE, everything)
    assert enumerate_language(g) == [(0, 0), (1, 1)]


def test_intersection_with_nothing():
    g = intersect(FINITE, Parity(accept=None))
    assert is_empty(g) and g.rules == {}


def test_emptiness():
    assert not is_empty(FINITE)
    assert is_empty(Grammar("S", {"S": [("S",)]}))
    assert is_empty(Grammar("S", {"S": [(0, "B")], "B": [("B", 1)]}))
    assert productive(Grammar("S", {"S": [(0, "B"), ()], "B": [("B",)]})) == {"S"}


def test_some_word_is_shortest():
    assert some_word(BALANCED) == ()
    assert some_word(Grammar("S", {"S": [(0, 0, 0), ("A",)], "A": [(1, 1)]})) == (1, 1)
    assert some_word(Grammar("S", {"S": [("S",)]})) is None


def test_accepts():
    assert accepts(BALANCED, (0, 0, 1, 1, 1))
    assert accepts(BALANCED, ())
    assert not accepts(BALANCED, (0, 1, 1, 1))
    # epsilon cycles are harmless
    g = Grammar("S", {"S": [("A", "S"), (0,)], "A": [()]})
    assert accepts(g, (0,)) and not accepts(g, ())


def test_intersection_of_infinite_language():
    g = intersect(BALANCED, Parity())
    for word in [(), (0, 1, 1), (0, 0, 1, 1)]:
        assert accepts(g, word) == (word.count(1) % 2 == 0 and accepts(BALANCED, word))
    assert accepts(g, (0, 1, 1)) and not accepts(g, (0, 1))


def test_dump():
    assert dump(FINITE).splitlines() == ["S -> A A", "S -> e2", "A -> e1", "A -> e2"]
    g = intersect(FINITE, Parity())
    assert "<0,S,0> -> <0,A,0> <0,A,0>" in dump(g)


def random_grammar(rng, levels=4, letters=2):
    rules = {}
    for x in range(levels):
        rhss = []
        for _ in range(rng.randint(1, 3)):
            rhs = []
            for _ in range(rng.randint(0, 3)):
                if x + 1 < levels and rng.random() < 0.4:
                    rhs.append(f"N{rng.randint(x + 1, levels - 1)}")
                else:
                    rhs.append(rng.randrange(letters))
            rhss.append(tuple(rhs))
        rules[f"N{x}"] = rhss
    return Grammar("N0", rules)


@given(st.integers(0, 10**6))
def test_random_intersections(seed):
    rng = random.Random(seed)
    g = random_grammar(rng)
    words = enumerate_language(g)
    both = intersect(g, Parity())
    assert enumerate_language(both) == [w for w in words if w.count(1) % 2 == 0]
    assert is_empty(both) == (some_word(both) is None)
    w = some_word(both)
    if w is not None:
        assert accepts(g, w) and w.count(1) % 2 == 0
    for word in words:
        assert accepts(g, word)
