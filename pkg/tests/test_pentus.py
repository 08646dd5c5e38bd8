import random

import pytest
from hypothesis import given, settings, strategies as st

from conftest import DERIVABLE, NOT_DERIVABLE
from checks import check_segments
from generators import random_balanced, random_sequent
from lbstar.languages import enumerate_language, dump
from lbstar.pentus import (
    START,
    build_grammar,
    grammar_stats,
    profile_count_bound,
    size_bound,
    topology,
)
from lbstar.proofnets import encode, enumerate_nets
from lbstar.syntax import parse_sequent, print_sequent
from lbstar.translation import params, translate


def omega(text):
    return translate(parse_sequent(text))


def test_topology_without_tensors():
    t = topology(omega("p => p"))
    assert t.tau == (None, None) and t.clusters == {}
    assert t.chains == ((), ())


def test_topology_of_positive_diamond():
    # ] ⊗ p ⊗ [ : both tensors belong to the cluster of the outer one
    t = topology(omega("p => <>p"))
    assert t.tau == (None, None, 2, 2)
    assert t.clusters == {2: [2, 3]}
    assert t.chains[3] == (2,)


def test_topology_separated_tensors():
    t = topology(omega("p/p, p => p"))
    assert t.clusters == {2: [2]}
    w = omega("p/p, p/p, p, p\\p, p\\p => p")
    t = topology(w)
    assert all(len(c) == 1 for c in t.clusters.values())


def test_weakly_below():
    w = omega("{ []p }, { []q } => <>[](p*q)")
    t = topology(w)
    assert t.weakly_below(13, 11, w)
    assert t.weakly_below(11, 15, w)
    assert not t.weakly_below(11, 2, w)


def test_axiom_grammar():
    g = build_grammar(omega("p => p"))
    assert dump(g).splitlines() == ["F[0,0,0|] ->", "F[1,1,1|] ->", "S -> F[0,0,0|] e2 F[1,1,1|] e1"]
    assert enumerate_language(g) == [(1, 0)]


def test_rule_shapes():
    g = build_grammar(omega("p/p, p/p, p, p\\p, p\\p => p"))
    assert g.max_rule_length <= 5
    for lhs, rhs in g.productions():
        assert len(rhs) in (0, 4)
        if lhs == START:
            assert rhs[0][1:3] == (0, 0)


def _net_codes(w):
    return {encode(net.structure).letters for net in enumerate_nets(w)}


SHORT = [s for s in DERIVABLE + NOT_DERIVABLE if translate(s).n <= 14]


@pytest.mark.parametrize("s", SHORT, ids=print_sequent)
def test_language_is_the_set_of_net_codes(s):
    w = translate(s)
    assert set(enumerate_language(build_grammar(w))) == _net_codes(w)


@settings(max_examples=60)
@given(st.integers(0, 10**6))
def test_language_on_random_balanced_sequents(seed):
    w = translate(random_balanced(random.Random(seed), max_literals=14, names=("p", "q", "r")))
    assert set(enumerate_language(build_grammar(w))) == _net_codes(w)


@pytest.mark.parametrize("s", DERIVABLE + NOT_DERIVABLE, ids=print_sequent)
def test_segments_on_fixtures(s):
    check_segments(translate(s))


@settings(max_examples=40)
@given(st.integers(0, 10**6), st.booleans())
def test_segments_on_random_sequents(seed, balanced):
    rng = random.Random(seed)
    s = random_balanced(rng, 14, names=("p", "q")) if balanced else random_sequent(rng, 6, 2, ("p", "q"))
    check_segments(translate(s))


@pytest.mark.parametrize("s", DERIVABLE + NOT_DERIVABLE, ids=print_sequent)
def test_size_bounds(s):
    w = translate(s)
    g = build_grammar(w)
    gs = grammar_stats(g)
    p = params(w)
    assert gs.max_profiles <= profile_count_bound(p.d)
    assert g.size <= size_bound(w.n, max(gs.max_profiles, 1))
    assert gs.rules == g.rule_count and gs.size == g.size


def test_bound_formulas():
    assert profile_count_bound(1) == 4096
    assert size_bound(2, 1) == 45
