"""Compilation of multihead automata into symbolic dialogue graphings.

A compiled machine plays the answering role against a word representation.
Its dialect tracks everything the control needs between answers: the state,
which coordinate currently carries which head, the remembered letter under
every head, and the most recently popped stack symbol.  The head involved in
the last exchange always sits on coordinate 1, so every move edge composes a
transposition bringing the newly active head there before the answer arrives.

Edges come in three shapes.  Start edges probe the run from either result
interval under the bottom stack marker.  Move edges realize one table row for
every bookkeeping context it can fire in: the coordinate assignment, the
direction the previous answer arrived with, the stale remembered letter of the
previously active head, and the applicable last-popped symbols (pop rows split
further over the symbol actually popped, guarded by its cylinder).  Halting
edges land in the result intervals without moving anything.
"""

from dataclasses import dataclass
from itertools import permutations, product

from .automata import ACCEPT, INIT, REJECT, Automaton, lookup, validate
from .errors import ValidationError
from .graphing import Edge, GraphingRep, Weight
from .realizer import Realizer, perm_apply, swap
from .space import Atom, Region, full_symbol_region, sym_index, sym_of
from .words import WordRepresentation, canonical_representation

_RESULT_SYM = {ACCEPT: "a", REJECT: "r"}


@dataclass(frozen=True)
class DialectState:
    """One dialect state: control state, head placement, beliefs, last pop."""

    state: str
    coords: tuple  # coords[h-1] = coordinate carrying head h
    read: str      # remembered letter per head
    last: str      # most recently popped stack symbol


@dataclass
class CompiledMachine:
    graphing: GraphingRep
    automaton: Automaton
    dialect_states: tuple
    start_state: int
    provenance: dict  # Edge -> list of (key, Instruction)

    @property
    def heads(self) -> int:
        return self.automaton.heads

    def label(self, index: int) -> DialectState:
        return self.dialect_states[index]


def _enumerate_dialect(a: Automaton):
    perms = sorted(permutations(range(1, a.heads + 1)))
    reads = ["".join(r) for r in product("*01", repeat=a.heads)]
    states = []
    for q in a.states:
        for coords in perms:
            for read in reads:
                for last in "*01":
                    states.append(DialectState(q, coords, read, last))
    return tuple(states), {d: i for i, d in enumerate(states)}


def _stack_parts(op: str) -> tuple[int, str]:
    if op == "pop":
        return 1, ""
    if op.startswith("push_"):
        return 0, op[-1]
    return 0, ""


def compile_automaton(a: Automaton, prune: bool = False) -> CompiledMachine:
    problems = validate(a)
    if problems:
        raise ValidationError("; ".join(problems))
    k = a.heads
    marker = "*" * k
    identity = tuple(range(1, k + 1))
    dialect_states, index = _enumerate_dialect(a)
    start = index[DialectState(INIT, identity, marker, "*")]
    edges: list[Edge] = []
    provenance: dict = {}

    def emit(edge: Edge, key, instr):
        edges.append(edge)
        provenance.setdefault(edge, []).append((key, instr))

    # Start edges: the probe arrives on a result interval with the bottom
    # marker tracked, the machine believing every head reads the marker.
    start_key = ("*" * k, INIT, "*" if (marker, INIT, "*") in a.delta else None)
    for t in lookup(a, marker, INIT, "*"):
        for probe in ("a", "r"):
            src = Atom(probe, (), "*")
            if t.next_state in (ACCEPT, REJECT):
                dst_sym = _RESULT_SYM[t.next_state]
                realizer = Realizer(shift=sym_index(dst_sym) - sym_index(probe))
                out = index[DialectState(t.next_state, identity, marker, "*")]
            else:
                coord = t.head
                tau = swap(1, coord)
                dst_sym = sym_of("*", t.direction)
                pops, pushes = _stack_parts(t.stack_op)
                realizer = Realizer(sym_index(dst_sym) - sym_index(probe),
                                    tau, (), pops, pushes)
                out_coords = tuple(perm_apply(tau, c) for c in identity)
                out = index[DialectState(t.next_state, out_coords, marker, "*")]
            emit(Edge(Region((src,)), start, out, realizer, Weight(t.prob, 0)),
                 start_key, t)

    # Move and halting edges, one family member per bookkeeping context.
    for key, instrs in a.delta.items():
        read_t, q, last_t = key
        if last_t is None:
            u_range = [u for u in "*01" if (read_t, q, u) not in a.delta]
        else:
            u_range = [last_t]
        for t in instrs:
            for coords in permutations(range(1, k + 1)):
                h1 = coords.index(1) + 1  # head currently on coordinate 1
                src_letter = read_t[h1 - 1]
                for d_src in "io":
                    src_sym = sym_of(src_letter, d_src)
                    for stale in "*01":
                        in_read = read_t[:h1 - 1] + stale + read_t[h1:]
                        for u in u_range:
                            in_state = index[DialectState(q, coords, in_read, u)]
                            if t.next_state in (ACCEPT, REJECT):
                                dst_sym = _RESULT_SYM[t.next_state]
                                realizer = Realizer(
                                    shift=sym_index(dst_sym) - sym_index(src_sym))
                                out = index[DialectState(t.next_state, coords,
                                                         read_t, u)]
                                emit(Edge(Region((Atom(src_sym),)), in_state, out,
                                          realizer, Weight(t.prob, 0)), key, t)
                                continue
                            coord = coords[t.head - 1]
                            tau = swap(1, coord)
                            out_coords = tuple(perm_apply(tau, c) for c in coords)
                            dst_sym = sym_of(read_t[t.head - 1], t.direction)
                            shift = sym_index(dst_sym) - sym_index(src_sym)
                            if t.stack_op == "pop":
                                for popped in "*01":
                                    out = index[DialectState(t.next_state, out_coords,
                                                             read_t, popped)]
                                    emit(Edge(Region((Atom(src_sym, (), popped),)),
                                              in_state, out,
                                              Realizer(shift, tau, (), 1, ""),
                                              Weight(t.prob, 0)), key, t)
                            else:
                                _, pushes = _stack_parts(t.stack_op)
                                out = index[DialectState(t.next_state, out_coords,
                                                         read_t, u)]
                                emit(Edge(Region((Atom(src_sym),)), in_state, out,
                                          Realizer(shift, tau, (), 0, pushes),
                                          Weight(t.prob, 0)), key, t)

    graphing = GraphingRep(full_symbol_region(), tuple(range(len(dialect_states))),
                           tuple(edges))
    machine = CompiledMachine(graphing, a, dialect_states, start, provenance)
    return prune_reachable(machine) if prune else machine


def prune_reachable(m: CompiledMachine) -> CompiledMachine:
    """Restrict to dialect states reachable from the start state."""
    outgoing: dict[int, list[Edge]] = {}
    for e in m.graphing.edges:
        outgoing.setdefault(e.in_state, []).append(e)
    seen = {m.start_state}
    frontier = [m.start_state]
    kept = []
    while frontier:
        s = frontier.pop()
        for e in outgoing.get(s, ()):
            kept.append(e)
            if e.out_state not in seen:
                seen.add(e.out_state)
                frontier.append(e.out_state)
    graphing = GraphingRep(m.graphing.support, tuple(sorted(seen)), tuple(kept))
    provenance = {e: m.provenance[e] for e in kept}
    return CompiledMachine(graphing, m.automaton, m.dialect_states,
                           m.start_state, provenance)


def finite_view(m: CompiledMachine, word, grid: int | None = None):
    """Discretized skeleton of the machine against a word representation."""
    from .execution import discretize

    rep = canonical_representation(word) if isinstance(word, str) else word
    if not isinstance(rep, WordRepresentation):
        raise ValidationError("finite_view needs a word or a representation")
    return discretize(m.graphing, rep.graphing, grid or rep.cells)


def format_compiled(m: CompiledMachine) -> str:
    """Graphing text with a provenance comment naming each edge's table row.

    Comment lines start with '#' and are skipped by the parser, so the
    output is an ordinary graphing file.
    """
    from .automata import _format_instr
    from .graphing import format_edge, format_graphing

    head = format_graphing(m.graphing).splitlines()[:2]
    lines = [f"# compiled from {m.automaton.name or 'unnamed machine'}"]
    lines.extend(head)
    for e in m.graphing.sorted_edges():
        for (read, state, last), instr in m.provenance.get(e, ()):
            lines.append(f"# rule {read} | {state} | {last or '-'} -> "
                         f"{_format_instr(instr)}")
        lines.append(format_edge(e))
    return "\n".join(lines) + "\n"
