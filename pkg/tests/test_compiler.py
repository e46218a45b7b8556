"""Compilation of machines into graph-shaped dynamics."""

from fractions import Fraction as F
from math import factorial

import pytest

from graphings.automata import ACCEPT, REJECT, Automaton, Instruction
from graphings.compiler import compile_automaton, format_compiled, prune_reachable
from graphings.corpus import by_name
from graphings.errors import ValidationError
from graphings.execution import accept_path_sum
from graphings.graphing import is_deterministic, is_subprobabilistic, parse_graphing
from graphings.realizer import in_microcosm
from graphings.space import Atom, Region
from graphings.words import canonical_representation

ACCEPT_REGION = Region((Atom("a"),))


def test_dialect_enumerates_state_placement_read_last():
    for name in ("even-ones", "two-head-palindrome", "round-robin"):
        a = by_name(name)
        m = compile_automaton(a)
        k = a.heads
        assert len(m.graphing.dialect) == len(a.states) * factorial(k) * 3 ** k * 3
        assert len(m.dialect_states) == len(m.graphing.dialect)


def test_start_state_is_initial_and_marker_anchored():
    m = compile_automaton(by_name("even-ones"))
    d = m.label(m.start_state)
    assert d.state == "init"
    assert d.read == "*" and d.last == "*"
    assert d.coords == (1,)


def test_compiled_realizers_keep_machine_discipline():
    # machine edges never translate intervals; spatial moves belong to words
    m = compile_automaton(by_name("zeros-then-ones"))
    assert all(in_microcosm(e.realizer, "n") for e in m.graphing.edges)
    stack_free = compile_automaton(by_name("two-head-palindrome"))
    assert all(in_microcosm(e.realizer, "m", index=2)
               for e in stack_free.graphing.edges)


def test_determinism_transfers():
    det = compile_automaton(by_name("even-ones"))
    assert is_deterministic(det.graphing)
    prob = compile_automaton(by_name("coin-half"))
    assert not is_deterministic(prob.graphing)
    assert is_subprobabilistic(prob.graphing)


def test_provenance_points_back_at_instructions():
    m = compile_automaton(by_name("even-ones"))
    assert m.provenance
    for edge, origins in m.provenance.items():
        for key, instr in origins:
            assert key in m.automaton.delta
            assert instr in m.automaton.delta[key]


def test_invalid_machine_is_rejected():
    bad = Automaton("bad", 1, (ACCEPT, REJECT, "init"), {
        ("*", "init", None): (Instruction(1, "o", "id", "nowhere", F(1)),)})
    with pytest.raises(ValidationError):
        compile_automaton(bad)


def test_prune_keeps_behaviour():
    a = by_name("flip-per-one")
    full = compile_automaton(a)
    lean = prune_reachable(full)
    assert len(lean.graphing.edges) <= len(full.graphing.edges)
    for w in ("", "1", "10"):
        rep = canonical_representation(w)
        assert (accept_path_sum(full, rep, ACCEPT_REGION).total
                == accept_path_sum(lean, rep, ACCEPT_REGION).total)


def test_immediate_accept_is_the_unit_dialogue():
    m = compile_automaton(by_name("accept-now"))
    ps = accept_path_sum(m, canonical_representation(""), ACCEPT_REGION)
    assert ps.total == {"": F(1)} and ps.exact


def test_coin_splits_the_unit_dialogue():
    m = compile_automaton(by_name("coin-half"))
    ps = accept_path_sum(m, canonical_representation(""), ACCEPT_REGION)
    assert ps.total == {"": F(1, 2)} and ps.exact


def test_compiled_text_carries_provenance_comments():
    m = compile_automaton(by_name("coin-half"))
    text = format_compiled(m)
    assert sum(1 for ln in text.splitlines() if ln.startswith("# rule ")) >= \
        len(m.graphing.edges)
    # comments are transparent to the parser
    parsed = parse_graphing(text)
    assert parsed.dialect == m.graphing.dialect
    assert parsed.support == m.graphing.support.sorted()
    assert parsed.sorted_edges() == m.graphing.sorted_edges()
