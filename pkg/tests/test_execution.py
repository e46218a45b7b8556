"""Dialogue engine: discretization, path sums, plugging along a cut."""

from collections import Counter
from fractions import Fraction as F

import pytest

from graphings.automata import trace_enumerate
from graphings.compiler import compile_automaton
from graphings.corpus import by_name
from graphings.errors import (ClosureViolation, DiscretizationError,
                              TruncationError, ValidationError)
from graphings.execution import (CutSpec, ExecOptions, accept_path_sum,
                                 cut_between, discretize, enumerate_paths,
                                 plug, plug_dialect_pairs)
from graphings.graphing import Edge, GraphingRep, Weight, is_deterministic
from graphings.realizer import Realizer
from graphings.space import Atom, Interval, Region, region_of
from graphings.words import canonical_representation

ACCEPT_REGION = Region((Atom("a"),))

# a tiny hand-built arena: one accept cell on the left, two dialogue
# symbols as the cut, one reject cell on the right
A = Atom("a", (Interval(F(0), F(1, 2)),))
C1 = Atom("0i")
C2 = Atom("0o")
B = Atom("r")

_TO_C1 = Realizer(shift=-4)          # a -> 0i
_C2_TO_C1 = Realizer(shift=-1)       # 0o -> 0i
_C1_TO_C2 = Realizer(shift=1)
_C1_TO_B = Realizer(shift=5)         # 0i -> r


def _pair(f_edges, g_edges, g_dialect=(0,)):
    f = GraphingRep(region_of(A, C1, C2), (0,), tuple(f_edges))
    g = GraphingRep(region_of(C1, C2, B), g_dialect, tuple(g_edges))
    return f, g


def test_cut_between_splits_supports():
    f, g = _pair((), ())
    cut = cut_between(f, g)
    assert cut.cut.measure == 2
    assert cut.left_rest.atoms == (A,)
    assert cut.right_rest.atoms == (B,)


def test_plug_rejects_overlapping_rests():
    # a hand-built cut whose two rests share the accept cell
    f = GraphingRep(region_of(A, C1), (0,), ())
    g = GraphingRep(region_of(C1, A), (0,), ())
    spec = CutSpec(region_of(C1), region_of(A), region_of(A))
    with pytest.raises(ValidationError):
        plug(f, g, spec)


def test_plug_composes_a_two_step_corridor():
    f, g = _pair((Edge(region_of(A), 0, 0, _TO_C1),),
                 (Edge(region_of(C1), 0, 0, _C1_TO_B),))
    out = plug(f, g, cut_between(f, g))
    assert out.dialect == (0,)
    assert len(out.edges) == 1
    e = out.edges[0]
    assert e.source.atoms == (A,)
    assert e.realizer == Realizer(shift=1)  # a -> r, box untouched
    assert e.weight == Weight(F(1))
    assert is_deterministic(out)


def test_plug_sums_cycles_through_the_cut():
    # g loops back through the cut with probability 1/2 or exits with 1/2;
    # the family masses form a geometric series adding to one
    f, g = _pair((Edge(region_of(A), 0, 0, _TO_C1),
                  Edge(region_of(C2), 0, 0, _C2_TO_C1)),
                 (Edge(region_of(C1), 0, 0, _C1_TO_C2, Weight(F(1, 2))),
                  Edge(region_of(C1), 0, 0, _C1_TO_B, Weight(F(1, 2)))))
    out = plug(f, g, cut_between(f, g))
    assert len(out.edges) == 1
    e = out.edges[0]
    assert e.weight == Weight(F(1))
    assert e.realizer == Realizer(shift=1)


def test_plug_raises_when_family_mass_exceeds_one():
    f, g = _pair((Edge(region_of(A), 0, 0, _TO_C1),
                  Edge(region_of(C2), 0, 0, _C2_TO_C1)),
                 (Edge(region_of(C1), 0, 0, _C1_TO_C2, Weight(F(2, 3))),
                  Edge(region_of(C1), 0, 0, _C1_TO_B, Weight(F(2, 3)))))
    with pytest.raises(ClosureViolation):
        plug(f, g, cut_between(f, g))


def test_plug_stack_budget():
    # every trip around the cycle pops one more tracked symbol, so the
    # composite stack action grows without bound; g either loops the probe
    # back (1/2) or lets it exit (1/2)
    f, g = _pair((Edge(region_of(A), 0, 0, _TO_C1),
                  Edge(region_of(C2), 0, 0,
                       Realizer(shift=-1, pops=1)),),
                 (Edge(region_of(C1), 0, 0, _C1_TO_C2, Weight(F(1, 2))),
                  Edge(region_of(C1), 0, 0, _C1_TO_B, Weight(F(1, 2)))))
    with pytest.raises(TruncationError):
        plug(f, g, cut_between(f, g), ExecOptions(stack_depth=5))
    out = plug(f, g, cut_between(f, g), ExecOptions(stack_depth=5, strict=False))
    # one family per popped prefix: 3^n sources after n laps, none past the budget
    assert len(out.edges) == sum(3 ** n for n in range(6))
    assert max(e.realizer.pops for e in out.edges) == 5
    assert all(e.weight == Weight(F(1, 2 ** (e.realizer.pops + 1)))
               for e in out.edges)


def test_plug_dialect_is_the_sorted_product():
    f, g = _pair((), (), g_dialect=(0, 1))
    assert plug_dialect_pairs(f, g) == [(0, 0), (0, 1)]
    out = plug(f, g, cut_between(f, g))
    assert out.dialect == (0, 1)


def test_plug_keeps_unengaged_side_diagonal():
    # f exits without ever consulting g, so the result carries one copy of
    # the exit per g dialect state
    f, g = _pair((Edge(region_of(A), 0, 0,
                       Realizer(shift=1, box_shift=((1, F(1, 2)),))),),
                 (), g_dialect=(0, 1))
    out = plug(f, g, cut_between(f, g))
    assert len(out.edges) == 2
    assert {(e.in_state, e.out_state) for e in out.edges} == {(0, 0), (1, 1)}


def test_discretize_counts_word_cells():
    rep = canonical_representation("01")
    m = compile_automaton(by_name("even-ones"))
    _, thick_w = discretize(m.graphing, rep.graphing, 3)
    assert thick_w.grid == 3
    assert len(thick_w.nodes) == 6
    assert len(thick_w.edges) == 6
    assert all(e.weight == Weight(F(1)) for e in thick_w.edges)


def test_discretize_rejects_off_grid_boxes():
    rep = canonical_representation("0")  # cells of width 1/2
    m = compile_automaton(by_name("even-ones"))
    with pytest.raises(DiscretizationError):
        discretize(m.graphing, rep.graphing, 3)


def test_path_sum_of_immediate_accept():
    m = compile_automaton(by_name("retry-half"))
    ps = accept_path_sum(m, canonical_representation(""), ACCEPT_REGION)
    assert ps.total == {"": F(1)}
    assert ps.exact and ps.dropped == 0


def test_path_sum_groups_stack_classes():
    m = compile_automaton(by_name("zeros-then-ones"))
    ps = accept_path_sum(m, canonical_representation("01"), ACCEPT_REGION)
    assert ps.lower_bound == 1
    assert set(ps.total) == {""}


def test_path_sum_reports_truncated_mass():
    m = compile_automaton(by_name("biased-stack-walk"))
    ps = accept_path_sum(m, canonical_representation(""), ACCEPT_REGION,
                         ExecOptions(stack_depth=8))
    assert not ps.exact
    assert 0 < ps.dropped < F(1, 1000)
    deeper = accept_path_sum(m, canonical_representation(""), ACCEPT_REGION,
                             ExecOptions(stack_depth=16))
    assert deeper.dropped < ps.dropped
    assert deeper.lower_bound > ps.lower_bound


def test_enumerated_paths_match_machine_traces():
    for name, word in (("coin-half", ""), ("even-ones", "10"),
                       ("zeros-then-ones", "01")):
        a = by_name(name)
        m = compile_automaton(a)
        want = Counter(w for _, w in trace_enumerate(a, word, max_len=10))
        got = Counter(enumerate_paths(m, canonical_representation(word),
                                      max_edges=20))
        assert got == want, name


def test_enumerate_paths_respects_the_length_bound():
    a = by_name("retry-half")  # loops forever with probability 1/2 per round
    m = compile_automaton(a)
    short = enumerate_paths(m, canonical_representation(""), max_edges=4)
    longer = enumerate_paths(m, canonical_representation(""), max_edges=8)
    assert len(longer) > len(short)
