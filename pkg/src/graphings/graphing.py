"""Finite representations of weighted measurable graphs over the symbol space.

A representative holds a support region, a dialect (a finite set of control
states tensored onto the space; the space itself is never enlarged, edges jump
between states), and finitely many edges.  An edge restricts to a source
region at one dialect state, applies a realizer, and lands at another state,
carrying a weight.

A weight is a probability together with a marker flag.  Weights multiply along
paths; the flag is sticky (a path is marked as soon as one of its edges is).

All comparisons are almost-everywhere and respect what edges do as maps, not
how they are written: sources may be carved up differently and stack actions
may pop symbols they immediately push back.  ``equivalent`` decides equality
up to common refinement, ``is_refinement`` the one-sided version.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .errors import FormatError, ValidationError
from .realizer import Realizer, perm_apply, perm_of
from .space import (ONE, ZERO, Atom, Region, ae_equal, format_region,
                    parse_region, refine_regions, subset_ae)
from . import theta


@dataclass(frozen=True)
class Weight:
    p: Fraction = ONE
    flag: int = 0

    def __post_init__(self):
        if not isinstance(self.p, Fraction):
            object.__setattr__(self, "p", Fraction(self.p))
        if not ZERO <= self.p <= ONE:
            raise ValidationError(f"weight probability {self.p} outside [0,1]")
        if self.flag not in (0, 1):
            raise ValidationError(f"weight flag must be 0 or 1, got {self.flag}")

    def combine(self, other: "Weight") -> "Weight":
        return Weight(self.p * other.p, max(self.flag, other.flag))

    def key(self):
        return (self.p, self.flag)


WEIGHT_ONE = Weight(ONE, 0)


@dataclass(frozen=True)
class Edge:
    source: Region
    in_state: int
    out_state: int
    realizer: Realizer = Realizer()
    weight: Weight = WEIGHT_ONE

    def __post_init__(self):
        for a in self.source.atoms:
            if a.state != 0:
                raise ValidationError("edge sources are spatial; state lives in in_state")
            if a.measure == 0:
                raise ValidationError("edge source atom has measure zero")

    def image(self) -> Region:
        return self.realizer.apply(self.source)

    def pieces(self):
        """Source split so the realizer acts exactly: ``(piece, image)`` pairs."""
        for atom in self.source.atoms:
            yield from self.realizer.apply_atom(atom)

    def key(self):
        return (self.in_state, self.out_state,
                sorted(a.sort_key() for a in self.source.atoms),
                realizer_key(self.realizer), self.weight.key())


def realizer_key(r: Realizer):
    return (r.shift, r.perm, r.box_shift, r.pops, r.pushes)


@dataclass(frozen=True)
class GraphingRep:
    support: Region
    dialect: tuple = (0,)
    edges: tuple = ()

    def __post_init__(self):
        dialect = tuple(sorted(set(self.dialect)))
        if not dialect or any(d < 0 for d in dialect):
            raise ValidationError("dialect must be a nonempty set of natural numbers")
        object.__setattr__(self, "dialect", dialect)
        object.__setattr__(self, "edges", tuple(self.edges))

    def validate(self) -> "GraphingRep":
        """Check the measure-theoretic side conditions; returns self."""
        states = set(self.dialect)
        for a in self.support.atoms:
            if a.state != 0:
                raise ValidationError("support is spatial; dialect is listed separately")
        for e in self.edges:
            if e.in_state not in states or e.out_state not in states:
                raise ValidationError(
                    f"edge states ({e.in_state},{e.out_state}) outside dialect")
            if not subset_ae(e.source, self.support):
                raise ValidationError("edge source leaves the support")
            if not subset_ae(e.image(), self.support):
                raise ValidationError("edge image leaves the support")
        return self

    def sorted_edges(self) -> tuple:
        return tuple(sorted(self.edges, key=Edge.key))

    # conveniences over the module-level predicates below
    def equivalent(self, other: "GraphingRep") -> bool:
        return equivalent(self, other)

    def is_deterministic(self) -> bool:
        return is_deterministic(self)

    def is_subprobabilistic(self) -> bool:
        return is_subprobabilistic(self)

    def is_refinement(self, coarse: "GraphingRep") -> bool:
        return is_refinement(self, coarse)


def _split_atom(atom: Atom, depth: int):
    if len(atom.cyl) >= depth:
        yield atom
        return
    for tail in product("*01", repeat=depth - len(atom.cyl)):
        yield Atom(atom.sym, atom.box, atom.cyl + "".join(tail), atom.state)


# --- per-cell tables ----------------------------------------------------------
#
# The comparison predicates all start the same way: split every edge source
# fine enough that the realizer acts exactly, refine everything into elementary
# cells keyed by (spatial atom, in_state), and list what each cell carries.


def _cell_items(graphings):
    items = []  # (graphing index, single-atom region, payload)
    for gi, g in enumerate(graphings):
        for e in g.edges:
            for piece, _ in e.pieces():
                payload = (e.out_state,
                           realizer_key(e.realizer.normalized_on(piece.cyl)),
                           e.weight.key())
                items.append((gi, Region((piece.with_state(e.in_state),)), payload))
    elementary, covers = refine_regions([r for _, r, _ in items])
    tables = [defaultdict(list) for _ in graphings]
    for (gi, _, payload), cover in zip(items, covers):
        for cell in cover:
            tables[gi][cell].append(payload)
    return elementary, tables


def equivalent(g1: GraphingRep, g2: GraphingRep) -> bool:
    """Equality up to common refinement of edge sources."""
    if g1.dialect != g2.dialect:
        return False
    if not ae_equal(g1.support, g2.support):
        return False
    _, (t1, t2) = _cell_items([g1, g2])
    for cell in set(t1) | set(t2):
        if sorted(t1.get(cell, ())) != sorted(t2.get(cell, ())):
            return False
    return True


def is_deterministic(g: GraphingRep) -> bool:
    """At most one edge through every point at every state, with probability 1."""
    if any(e.weight.p != ONE for e in g.edges):
        return False
    _, (table,) = _cell_items([g])
    return all(len(v) <= 1 for v in table.values())


def is_subprobabilistic(g: GraphingRep) -> bool:
    """Total outgoing probability at most 1 through every point at every state."""
    _, (table,) = _cell_items([g])
    for payloads in table.values():
        if sum((Fraction(p) for _, _, (p, _) in payloads), ZERO) > ONE:
            return False
    return True


# --- refinement ----------------------------------------------------------------


def _same_map_on(fe: Edge, ge: Edge) -> bool:
    """Do the two realizers agree pointwise a.e. on the source of ``fe``?"""
    if fe.realizer == ge.realizer:
        return True
    depth = max(fe.realizer.pops, ge.realizer.pops)
    for atom in fe.source.atoms:
        for piece in _split_atom(atom, depth):
            if (fe.realizer.normalized_on(piece.cyl)
                    != ge.realizer.normalized_on(piece.cyl)):
                return False
    return True


def is_refinement(fine: GraphingRep, coarse: GraphingRep) -> bool:
    """Is ``fine`` obtained from ``coarse`` by partitioning edge sources?

    Every fine edge must be a restriction of a coarse edge with the same
    states, weight and map, and the fine edges assigned to one coarse edge
    must tile its source exactly.
    """
    if fine.dialect != coarse.dialect:
        return False
    if not ae_equal(fine.support, coarse.support):
        return False
    groups: dict = defaultdict(lambda: ([], []))
    for e in fine.edges:
        groups[(e.in_state, e.out_state, e.weight.key())][0].append(e)
    for e in coarse.edges:
        groups[(e.in_state, e.out_state, e.weight.key())][1].append(e)
    for f_edges, g_edges in groups.values():
        if not _assignable(f_edges, g_edges):
            return False
    return True


def _assignable(f_edges, g_edges) -> bool:
    compatible = [[j for j, ge in enumerate(g_edges)
                   if subset_ae(fe.source, ge.source) and _same_map_on(fe, ge)]
                  for fe in f_edges]
    if any(not c for c in compatible):
        return False
    _, covers = refine_regions([e.source for e in f_edges]
                               + [e.source for e in g_edges])
    f_cells = covers[:len(f_edges)]
    remaining = [set(c) for c in covers[len(f_edges):]]

    def assign(i: int) -> bool:
        if i == len(f_edges):
            return all(not r for r in remaining)
        for j in compatible[i]:
            if f_cells[i] <= remaining[j]:
                remaining[j] -= f_cells[i]
                if assign(i + 1):
                    return True
                remaining[j] |= f_cells[i]
        return False

    return assign(0)


# --- text form ------------------------------------------------------------------
#
#   dialect: 0-3,7
#   support: <region>
#   edge: <region> @ <in> @ <out> @ <realizer> @ <weight>
#
# Realizers are space-separated tokens: s<shift>, p(<cycle>)(<cycle>),
# b<coord>:<amount>,..., t<stack word> ('e' for the empty word), or 'id'.
# Weights are rationals with a trailing '!' when the flag is set.


def format_weight(w: Weight) -> str:
    return str(w.p) + ("!" if w.flag else "")


def parse_weight(text: str) -> Weight:
    text = text.strip()
    flag = 1 if text.endswith("!") else 0
    try:
        return Weight(Fraction(text[:-1] if flag else text), flag)
    except (ValueError, ZeroDivisionError, ValidationError) as exc:
        raise FormatError(f"bad weight {text!r}: {exc}") from None


def _perm_cycles(perm: tuple) -> str:
    seen, out = set(), []
    for start, _ in perm:
        if start in seen:
            continue
        cycle, c = [start], perm_apply(perm, start)
        seen.add(start)
        while c != start:
            cycle.append(c)
            seen.add(c)
            c = perm_apply(perm, c)
        out.append("(" + ",".join(map(str, cycle)) + ")")
    return "".join(out)


def format_realizer(r: Realizer) -> str:
    parts = []
    if r.shift:
        parts.append(f"s{r.shift}")
    if r.perm:
        parts.append("p" + _perm_cycles(r.perm))
    if r.box_shift:
        parts.append("b" + ",".join(f"{c}:{a}" for c, a in r.box_shift))
    if r.pops or r.pushes:
        parts.append("t" + theta.format_theta(r.theta_word))
    return " ".join(parts) if parts else "id"


def parse_realizer(text: str) -> Realizer:
    text = text.strip()
    if text == "id":
        return Realizer()
    shift, perm, box_shift, pops, pushes = 0, (), [], 0, ""
    for tok in text.split():
        try:
            if tok.startswith("s"):
                shift = int(tok[1:])
            elif tok.startswith("p"):
                mapping: dict = {}
                body = tok[1:]
                if not (body.startswith("(") and body.endswith(")")):
                    raise ValueError("cycles expected")
                for cyc in body[1:-1].split(")("):
                    nums = [int(x) for x in cyc.split(",")]
                    for a, b in zip(nums, nums[1:] + nums[:1]):
                        mapping[a] = b
                perm = perm_of(mapping)
            elif tok.startswith("b"):
                for part in tok[1:].split(","):
                    c, a = part.split(":")
                    box_shift.append((int(c), Fraction(a)))
            elif tok.startswith("t"):
                pushes, pops = theta.split_normal(theta.reduce(theta.parse_theta(tok[1:])))
            else:
                raise ValueError(f"unknown token {tok!r}")
        except (ValueError, ZeroDivisionError, ValidationError) as exc:
            raise FormatError(f"bad realizer {text!r}: {exc}") from None
    return Realizer(shift, perm, tuple(box_shift), pops, pushes)


def _format_ints(values) -> str:
    values = sorted(values)
    runs, start, prev = [], values[0], values[0]
    for v in values[1:]:
        if v == prev + 1:
            prev = v
            continue
        runs.append((start, prev))
        start = prev = v
    runs.append((start, prev))
    return ",".join(f"{a}-{b}" if b > a else f"{a}" for a, b in runs)


def _parse_ints(text: str):
    out = []
    for part in text.split(","):
        part = part.strip()
        if "-" in part:
            a, b = part.split("-")
            out.extend(range(int(a), int(b) + 1))
        else:
            out.append(int(part))
    return out


def format_edge(e: Edge) -> str:
    return (f"edge: {format_region(e.source)} @ {e.in_state} @ {e.out_state}"
            f" @ {format_realizer(e.realizer)} @ {format_weight(e.weight)}")


def format_graphing(g: GraphingRep) -> str:
    lines = [f"dialect: {_format_ints(g.dialect)}",
             f"support: {format_region(g.support)}"]
    lines.extend(format_edge(e) for e in g.sorted_edges())
    return "\n".join(lines) + "\n"


def parse_graphing(text: str) -> GraphingRep:
    dialect, support, edges = None, None, []
    for ln, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if ":" not in line:
            raise FormatError(f"line {ln}: expected 'key: value'")
        key, value = line.split(":", 1)
        key, value = key.strip(), value.strip()
        try:
            if key == "dialect":
                dialect = tuple(_parse_ints(value))
            elif key == "support":
                support = parse_region(value)
            elif key == "edge":
                fields = [f.strip() for f in value.split("@")]
                if len(fields) != 5:
                    raise FormatError("edge needs 5 fields separated by '@'")
                edges.append(Edge(parse_region(fields[0]), int(fields[1]),
                                  int(fields[2]), parse_realizer(fields[3]),
                                  parse_weight(fields[4])))
            else:
                raise FormatError(f"unknown key {key!r}")
        except (ValueError, ValidationError) as exc:
            raise FormatError(f"line {ln}: {exc}") from None
    if dialect is None or support is None:
        raise FormatError("graphing needs 'dialect:' and 'support:' lines")
    return GraphingRep(support, dialect, tuple(edges))
