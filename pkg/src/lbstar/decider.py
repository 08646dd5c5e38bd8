"""End-to-end decision procedure: net grammar, sisterhood automaton, intersection, emptiness."""
from __future__ import annotations

import time
from dataclasses import dataclass, field

from .automaton import LazyDfa
from .languages import intersect, is_empty, some_word
from .pentus import build_grammar
from .proofnets import (
    CodeWord,
    InternalError,
    NotANet,
    ProofNet,
    check_net,
    decode,
    net_to_derivation,
    respects_sisterhood,
)
from .syntax import Derivation, Sequent, check_derivation, explain_derivation, metrics, parse_sequent, print_sequent
from .translation import params, translate


@dataclass
class Witness:
    code: CodeWord
    net: ProofNet
    derivation: Derivation


@dataclass
class Decision:
    sequent: Sequent
    derivable: bool
    params: dict
    stats: dict
    witness: Witness | None = None
    phase_ms: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        out = {
            "sequent": print_sequent(self.sequent),
            "derivable": self.derivable,
            "params": self.params,
            "stats": dict(self.stats, phase_ms=self.phase_ms),
        }
        if self.witness is not None:
            out["witness"] = {
                "code": [j + 1 for j in self.witness.code.letters],
                "derivation": self.witness.derivation.to_json(),
            }
        return out


class _Clock:
    def __init__(self):
        self.phases = {}
        self.last = time.perf_counter()

    def lap(self, name):
        now = time.perf_counter()
        self.phases[name] = round((now - self.last) * 1000, 3)
        self.last = now


def decide(s: Sequent | str, want_witness: bool = True) -> Decision:
    """Decide derivability of ``s``; with ``want_witness`` also return a checked net and derivation.

    Raises :class:`InternalError` when a witness fails validation.
    """
    if isinstance(s, str):
        s = parse_sequent(s)
    clock = _Clock()
    w = translate(s)
    m = metrics(s)
    p = params(w)
    clock.lap("translate")
    g = build_grammar(w)
    clock.lap("grammar")
    a = LazyDfa(w)
    both = intersect(g, a)
    clock.lap("intersect")
    derivable = not is_empty(both)
    clock.lap("emptiness")
    stats = {
        "grammar_rules": g.rule_count,
        "grammar_size": g.size,
        "dfa_states": len(a.states),
        "intersection_rules": both.rule_count,
    }
    decision = Decision(
        sequent=s,
        derivable=derivable,
        params={"size": m.size, "order": m.order, "bdepth": m.bdepth, "n": p.n, "d": p.d, "b": p.b},
        stats=stats,
        phase_ms=clock.phases,
    )
    if want_witness and derivable:
        decision.witness = _witness(s, w, both)
        clock.lap("witness")
    return decision


def _witness(s, w, grammar) -> Witness:
    word = some_word(grammar)
    if word is None:
        raise InternalError("nonempty grammar produced no word")
    code = CodeWord(word)
    try:
        structure = decode(code)
        net = check_net(structure, w)
    except (ValueError, NotANet) as exc:
        raise InternalError(f"witness {code} is not a net: {exc}") from exc
    if not respects_sisterhood(structure, w):
        raise InternalError(f"witness {code} breaks sisterhood")
    d = net_to_derivation(net, s)
    if d.conclusion != s or not check_derivation(d):
        raise InternalError(f"reconstructed derivation is invalid: {explain_derivation(d)}")
    return Witness(code, net, d)


def is_derivable(s: Sequent | str) -> bool:
    return decide(s, want_witness=False).derivable


FAMILIES = ("pp", "bracket-nest", "box-nest")


def bench_family(kind: str, k: int) -> Sequent:
    """Members of the benchmark families.

    ``pp``: ``p/p`` k times, ``p``, ``p\\p`` k times ``=> p``;
    ``bracket-nest``: ``p`` inside k brackets ``=> <>...<>p``;
    ``box-nest``: ``[]...[]p`` inside k brackets ``=> p``.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    if kind == "pp":
        text = ", ".join(["p/p"] * k + ["p"] + ["p\\p"] * k) + " => p"
    elif kind == "bracket-nest":
        text = "{ " * k + "p" + " }" * k + " => " + "<>" * k + "p"
    elif kind == "box-nest":
        text = "{ " * k + "[]" * k + "p" + " }" * k + " => p"
    else:
        raise ValueError(f"unknown family {kind!r}; choose from {', '.join(FAMILIES)}")
    return parse_sequent(text)
