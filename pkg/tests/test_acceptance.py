"""Acceptance criteria; each test prints one PASS or FAIL line."""
import random
import time

import pytest

from checks import check_segments
from conftest import DERIVABLE, NOT_DERIVABLE
from generators import all_sequents, canonical, random_balanced, random_formula, random_sequent
from lbstar import automaton, bench_family, decide
from lbstar.cli import loglog_slope, run_bench
from lbstar.languages import enumerate_language
from lbstar.pentus import build_grammar, grammar_stats, profile_count_bound, size_bound
from lbstar.proofnets import check_net, encode, enumerate_nets, respects_sisterhood
from lbstar.prover import _balanced, is_derivable
from lbstar.syntax import Sequent, check_derivation, format_formula, metrics, parse_sequent, print_sequent
from lbstar.translation import params, span_natural, translate

YES = [
    "p => p",
    "N, (N\\S)/S, N, (N\\S)/N, N => S",
    "CN, (CN\\CN)/(S/N), N, (N\\S)/S, N, (N\\S)/N => CN",
    "{ N }, <>N\\S, { []((<>N\\S)\\(<>N\\S))/(<>N\\S), <>N\\S } => S",
    "r, (r\\p)/s, s, r, (r\\q)/s, s => r*((r\\p*q)/s)*s",
]
NO = [
    "CN, (CN\\CN)/(S/N), N, N\\S, { []((N\\S)\\(N\\S))/(N\\S), (N\\S)/N } => CN",
    "{ []p }, { []q } => <>[](p*q)",
]


def test_criterion_1_fixtures(report):
    t0 = time.perf_counter()
    wrong = [t for t in YES if not decide(t).derivable] + [t for t in NO if decide(t).derivable]
    elapsed = time.perf_counter() - t0
    ok = not wrong and elapsed < 10
    report(1, "fixture sequents", ok, f"{len(YES) + len(NO)} sequents, {len(wrong)} wrong, {elapsed:.2f}s")
    assert not wrong
    assert elapsed < 10


class Sweep:
    def __init__(self):
        self.checked = 0
        self.disagreements = []
        self.witness_errors = []
        self.derivable = []
        self.seconds = 0.0
        self.counts = {}


def _sweep_set():
    """Balanced sequents up to renaming, a sample of the unbalanced ones, and random ones."""
    rng = random.Random(2024)
    balanced, unbalanced, seen = [], [], set()
    for s in all_sequents(max_conns=5, max_literals=6, depth=2):
        if _balanced(s):
            key = canonical(s)
            if key not in seen:
                seen.add(key)
                balanced.append(s)
        elif rng.random() < 0.0055:
            unbalanced.append(s)
    randoms = []
    while len(randoms) < 1000:
        s = random_balanced(rng, 14, 7, 2) if len(randoms) % 2 else random_sequent(rng, 7, 2)
        if translate(s).n <= 14:
            randoms.append(s)
    return {"balanced": balanced, "unbalanced": unbalanced, "random": randoms}


@pytest.fixture(scope="session")
def sweep():
    out = Sweep()
    t0 = time.perf_counter()
    groups = _sweep_set()
    for name, seqs in groups.items():
        out.counts[name] = len(seqs)
        for s in seqs:
            out.checked += 1
            w = translate(s)
            oracle = is_derivable(s)
            nets = bool(enumerate_nets(w, require_sisterhood=True, limit=1, max_n=14))
            try:
                d = decide(s, want_witness=True)
            except Exception as exc:  # recorded for criterion 6, which counts failures
                out.witness_errors.append((s, repr(exc)))
                continue
            if not (d.derivable == oracle == nets):
                out.disagreements.append((print_sequent(s), d.derivable, oracle, nets))
            if d.derivable:
                out.derivable.append(d)
    out.seconds = time.perf_counter() - t0
    return out


def test_criterion_2_oracle_equivalence(sweep, report):
    detail = (f"{sweep.checked} sequents ({', '.join(f'{k} {v}' for k, v in sweep.counts.items())}), "
              f"{len(sweep.disagreements)} disagreements, {sweep.seconds:.0f}s")
    ok = not sweep.disagreements and sweep.counts["random"] == 1000 and sweep.seconds < 300
    report(2, "decide = oracle = sisterhood nets", ok, detail)
    assert sweep.disagreements == []
    assert sweep.counts["random"] == 1000
    assert sweep.seconds < 300


SHORT = [s for s in DERIVABLE + NOT_DERIVABLE if translate(s).n <= 14]


def test_criterion_3_grammar_language(report):
    bad = []
    for s in SHORT:
        w = translate(s)
        codes = {encode(net.structure).letters for net in enumerate_nets(w)}
        if set(enumerate_language(build_grammar(w))) != codes:
            bad.append(print_sequent(s))
    segment_failures = []
    for s in DERIVABLE + NOT_DERIVABLE:
        try:
            check_segments(translate(s), width=10)
        except AssertionError as exc:
            segment_failures.append((print_sequent(s), str(exc)))
    ok = not bad and not segment_failures
    report(3, "grammar language = net codes; segment oracle", ok,
           f"{len(SHORT)} languages, {len(bad)} mismatches; {len(segment_failures)} segment failures")
    assert bad == [] and segment_failures == []


def _bench_set():
    out = [("pp", k, bench_family("pp", k)) for k in range(1, 21)]
    out += [(kind, k, bench_family(kind, k)) for kind in ("bracket-nest", "box-nest") for k in range(1, 21)]
    return out


def test_criterion_4_structural_bounds(report):
    problems = []
    cases = [("fixture", None, s) for s in DERIVABLE + NOT_DERIVABLE] + _bench_set()
    dfa_checked = 0
    for kind, k, s in cases:
        w = translate(s)
        p = params(w)
        g = build_grammar(w)
        gs = grammar_stats(g)
        name = f"{kind} {k}" if k is not None else print_sequent(s)
        if g.max_rule_length > 5:
            problems.append((name, "rule length"))
        if gs.max_profiles > profile_count_bound(p.d):
            problems.append((name, "profile count"))
        if g.size > size_bound(p.n, gs.max_profiles):
            problems.append((name, "grammar size"))
        bound = automaton.bound(w)
        if p.b <= 3:
            states = len(automaton.build(w).states)
            dfa_checked += 1
        else:
            # the full automaton has up to n^b stacks; count the states the decider explores
            states = decide(s, want_witness=False).stats["dfa_states"]
        if states > bound:
            problems.append((name, f"dfa states {states} > {bound}"))
    report(4, "grammar and automaton bounds", not problems,
           f"{len(cases)} strings, {dfa_checked} full automata, {len(problems)} violations")
    assert problems == []


def test_criterion_5a_translation_invariants(report):
    rng = random.Random(11)
    bad = []
    for _ in range(1000):
        f = random_formula(rng, rng.randint(0, 8), ("p", "q", "r"))
        text = format_formula(f)
        w = translate(parse_sequent(f"{text} => {text}"))
        for span in w.spans:
            if span_natural(w, span) != (0 if span.positive else 1):
                bad.append(("natural", text))
    for _ in range(1000):
        s = random_sequent(rng, rng.randint(0, 9), 2, ("p", "q", "r"))
        m = metrics(s)
        p = params(translate(s))
        if p.d > m.order:
            bad.append(("d > ord", print_sequent(s)))
    report("5a", "natural number of formulas and d <= ord", not bad, f"{len(bad)} violations")
    assert bad == []


@pytest.mark.xfail(strict=True, reason="n <= 2*size fails whenever variables carry size 0, e.g. p => p has n=2, size=0")
def test_criterion_5b_literal_bound(report):
    rng = random.Random(12)
    bad = []
    for _ in range(1000):
        s = random_sequent(rng, rng.randint(0, 9), 2, ("p", "q", "r"))
        if translate(s).n > 2 * metrics(s).size:
            bad.append(print_sequent(s))
    s = parse_sequent("p => p")
    if translate(s).n > 2 * metrics(s).size:
        bad.append(print_sequent(s))
    report("5b", "n <= 2*size", not bad, f"{len(bad)} violations of 1001, e.g. {bad[0] if bad else '-'}")
    assert bad == []


def test_criterion_6_witnesses(sweep, report):
    failures = list(sweep.witness_errors)
    decisions = [decide(t) for t in YES] + sweep.derivable
    for d in decisions:
        s = d.sequent
        w = translate(s)
        wit = d.witness
        try:
            assert wit is not None
            check_net(wit.net.structure, w)
            assert respects_sisterhood(wit.net.structure, w)
            assert wit.derivation.conclusion == s
            assert check_derivation(wit.derivation)
        except Exception as exc:
            failures.append((print_sequent(s), repr(exc)))
    report(6, "witness nets and derivations", not failures,
           f"{len(decisions)} witnesses, {len(failures)} failures")
    assert failures == []


def test_criterion_7_scaling(report):
    t0 = time.perf_counter()
    rows = run_bench("pp", range(1, 21), repeat=3)
    slope = loglog_slope([r["n"] for r in rows], [r["seconds"] for r in rows])
    counts = []
    for k in range(1, 6):
        w = translate(bench_family("pp", k))
        nets = len(enumerate_nets(w, max_n=22))
        assert nets == len(enumerate_language(build_grammar(w)))
        counts.append(nets)
    superlinear = all(counts[i] / (i + 1) < counts[i + 1] / (i + 2) for i in range(len(counts) - 1))
    elapsed = time.perf_counter() - t0
    ok = slope < 6 and superlinear and all(r["derivable"] for r in rows) and elapsed < 120
    report(7, "pp sweep scaling", ok, f"log-log slope {slope:.2f}, net counts {counts}, {elapsed:.0f}s")
    assert all(r["derivable"] for r in rows)
    assert slope < 6
    assert superlinear
    assert elapsed < 120
