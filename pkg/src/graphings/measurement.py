"""Measurements between projects and the standard test families.

A measurement value is kept in closed form as ``q + log(r)`` with q, r
rational, r > 0, plus a separate infinite kind.  A number of that shape
vanishes only when q = 0 and r = 1: otherwise log(r) would be a nonzero
rational, impossible since the logarithm of a rational other than one is
transcendental (Lindemann-Weierstrass).  Zero tests are therefore exact.

Orthogonality against the shipped test families never needs the value
itself: each family's law is an exact predicate on the stack-neutral
dialogue mass of its members, which is how the checks here decide.
"""

from dataclasses import dataclass
from fractions import Fraction
import math
import random

from .errors import ScopeError, TruncationError, ValidationError
from .execution import ExecOptions, PathSum, accept_path_sum
from .graphing import GraphingRep, Weight
from .space import Atom, Interval, Region

_ZERO, _ONE = Fraction(0), Fraction(1)


@dataclass(frozen=True)
class MeasurementValue:
    kind: str                    # "zero" | "finite" | "infinite"
    rational_part: Fraction
    log_arg: Fraction

    def __add__(self, other: "MeasurementValue") -> "MeasurementValue":
        if self.kind == "infinite" or other.kind == "infinite":
            return INFINITE_VALUE
        return measurement_value(self.rational_part + other.rational_part,
                                 self.log_arg * other.log_arg)

    @property
    def is_zero(self) -> bool:
        return self.kind == "zero"

    def approx(self) -> float:
        if self.kind == "infinite":
            return math.inf
        return float(self.rational_part) + math.log(self.log_arg)


def measurement_value(rational_part=0, log_arg=1) -> MeasurementValue:
    q, r = Fraction(rational_part), Fraction(log_arg)
    if r < 0:
        raise ValidationError(f"log argument must be nonnegative, got {r}")
    if r == 0:
        return INFINITE_VALUE
    if q == 0 and r == 1:
        return MeasurementValue("zero", _ZERO, _ONE)
    return MeasurementValue("finite", q, r)


INFINITE_VALUE = MeasurementValue("infinite", _ZERO, _ZERO)
ZERO_VALUE = MeasurementValue("zero", _ZERO, _ONE)


def format_value(v: MeasurementValue) -> str:
    if v.kind == "infinite":
        return "inf"
    if v.kind == "zero":
        return "0"
    parts = []
    if v.rational_part != 0:
        parts.append(str(v.rational_part))
    if v.log_arg != 1:
        parts.append(f"log({v.log_arg})")
    return " + ".join(parts)


# --- projects and their pairing -------------------------------------------------


@dataclass(frozen=True)
class Project:
    wager: MeasurementValue
    graphing: GraphingRep


def _fuse_loops(g: GraphingRep):
    """Collapse edges to spatial loop classes, forgetting dialect states.

    Returns a list of (source key, image key, source region, total p, flag);
    edges sharing the same source and image footprint fuse by summing their
    probabilities and or-ing their flags.
    """
    fused: dict = {}
    for e in g.edges:
        pieces = list(e.pieces())
        src_key = tuple(sorted(p.sort_key() for p, _ in pieces))
        img_key = tuple(sorted(i.sort_key() for _, i in pieces))
        key = (src_key, img_key)
        prev = fused.get(key)
        region = Region(tuple(p for p, _ in pieces))
        if prev is None:
            fused[key] = [region, e.weight.p, e.weight.flag]
        else:
            prev[1] += e.weight.p
            prev[2] |= e.weight.flag
    return [(sk, ik, reg, p, fl) for (sk, ik), (reg, p, fl) in fused.items()]


def measure_projects(a: Project, b: Project) -> MeasurementValue:
    """Pair two projects whose interaction decomposes into two-step cycles.

    The right project must consist of spatial identity loops (a weighted
    region observing itself); every fused loop of the left project that
    meets that region must itself be a self-loop.  Each pair of overlapping
    loops is then one prime cycle class, contributing -log(1 - m) with m the
    flagged product of the two masses.
    """
    for e in b.graphing.edges:
        for piece, img in e.pieces():
            if img != piece or not e.realizer.normalized_on(piece.cyl).is_identity:
                raise ScopeError("right project must be made of identity loops")
    total = a.wager + b.wager
    b_region = b.graphing.support
    b_loops = _fuse_loops(b.graphing)
    for src_key, img_key, region, p_a, flag_a in _fuse_loops(a.graphing):
        if region.intersect(b_region).measure == 0:
            continue
        if src_key != img_key:
            raise ScopeError("left project has a non-loop edge meeting the "
                             "observed region; pairing needs loop form")
        for _, _, region_b, p_b, flag_b in b_loops:
            if region.intersect(region_b).measure == 0:
                continue
            m = p_a * p_b if (flag_a | flag_b) else _ZERO
            if m > 1:
                raise ValidationError(f"cycle mass {m} exceeds one")
            total = total + (INFINITE_VALUE if m == 1
                             else measurement_value(0, 1 / (1 - m)))
    return total


# --- test families --------------------------------------------------------------


@dataclass(frozen=True)
class TestMember:
    name: str
    region: Region
    weight: Weight
    wager: MeasurementValue


@dataclass(frozen=True)
class Test:
    kind: str                   # "neg" | "pos" | "prob"
    members: tuple
    heads: int
    epsilon: Fraction | None = None

    def projects(self):
        for mb in self.members:
            loop = GraphingRep(mb.region, (0,), (
                _loop_edge(mb.region, mb.weight),))
            yield mb.name, Project(mb.wager, loop)


def _loop_edge(region: Region, weight: Weight):
    from .graphing import Edge
    from .realizer import Realizer

    return Edge(region, 0, 0, Realizer(), weight)


def _pos_region(n: int, cyl: str = "") -> Region:
    box = tuple(Interval(_ZERO, Fraction(1, n)) for _ in range(n))
    return Region((Atom("a", box, cyl),))


def make_test(kind: str, heads: int = 1, zetas=(Fraction(1),),
              epsilon: Fraction | None = None) -> Test:
    """Build one of the three standard test families.

    ``neg`` observes the reject interval with unit flagged mass and a
    nonzero wager per requested value; membership demands zero reject-side
    dialogue mass.  ``pos`` observes shrinking accept cubes, one per
    dimension count up to heads + 1, at flagged mass one half; membership
    demands positive mass in each.  ``prob`` additionally pins the tracked
    stack tail and raises the bar to a strict threshold.
    """
    if kind == "neg":
        members = []
        for z in zetas:
            z = Fraction(z)
            if z == 0:
                raise ValidationError("negative-side wagers must be nonzero")
            members.append(TestMember(f"reject[{z}]", Region((Atom("r"),)),
                                      Weight(_ONE, 1), measurement_value(z, 1)))
        return Test("neg", tuple(members), heads)
    if kind == "pos":
        members = tuple(
            TestMember(f"cube[{n}]", _pos_region(n), Weight(Fraction(1, 2), 1),
                       ZERO_VALUE)
            for n in range(1, heads + 2))
        return Test("pos", members, heads)
    if kind == "prob":
        if epsilon is None or not 0 <= epsilon <= 1:
            raise ValidationError("a probability test needs a threshold in [0,1]")
        epsilon = Fraction(epsilon)
        members = tuple(
            TestMember(f"cube[{n}]", _pos_region(n, "*" * n),
                       Weight(Fraction(1, 2), 1),
                       measurement_value(0, 1 - epsilon / 2))
            for n in range(1, heads + 2))
        return Test("prob", members, heads, epsilon)
    raise ValidationError(f"unknown test kind {kind!r}")


@dataclass(frozen=True)
class MemberReport:
    name: str
    mass: Fraction              # exact, or a certified lower bound
    upper: Fraction
    exact: bool
    law: str
    ok: bool


@dataclass(frozen=True)
class TestReport:
    kind: str
    orthogonal: bool
    rows: tuple
    epsilon: Fraction | None = None


def _judge(law: str, mass: Fraction, upper: Fraction, exact: bool,
           epsilon) -> bool:
    if law == "zero":
        if mass > 0:
            return False
        if exact or upper == 0:
            return True
    elif law == "positive":
        if mass > 0:
            return True
        if exact:
            return False
    else:  # above threshold
        if mass > epsilon:
            return True
        if exact or upper <= epsilon:
            return False
    raise TruncationError(
        f"stack truncation leaves mass in [{mass}, {upper}]; cannot decide "
        f"law {law!r}")


def orthogonal_to_test(machine, word, test: Test,
                       opts: ExecOptions = ExecOptions()) -> TestReport:
    """Decide orthogonality against a test family by exact member masses.

    Each member's stack-neutral dialogue mass is computed by the path-sum
    engine; the family's law is then an exact comparison.  When truncation
    leaves the comparison undecidable this raises instead of guessing.
    """
    law = {"neg": "zero", "pos": "positive", "prob": "threshold"}[test.kind]
    rows = []
    for mb in test.members:
        ps: PathSum = accept_path_sum(machine, word, mb.region, opts)
        mass = ps.lower_bound
        upper = mass + ps.dropped
        ok = _judge(law, mass, upper, ps.exact, test.epsilon)
        rows.append(MemberReport(mb.name, mass, upper, ps.exact, law, ok))
    return TestReport(test.kind, all(r.ok for r in rows), tuple(rows),
                      test.epsilon)


def membership(machine, word: str, test: Test,
               opts: ExecOptions = ExecOptions()) -> TestReport:
    from .words import canonical_representation

    return orthogonal_to_test(machine, canonical_representation(word), test,
                              opts)


def check_uniformity(machine, word: str, test: Test, m: int | None = None,
                     samples: int = 5, seed: int = 0,
                     opts: ExecOptions = ExecOptions()):
    """Orthogonality verdicts across sampled word representations.

    Samples marker-anchored position injections (the marker stays at cell
    zero; other positions scatter over a grid of m + 1 cells) and reruns the
    test against each.  Returns (uniform, verdicts) with one verdict per
    distinct injection, the canonical placement always included first.
    """
    from .words import bang_representation, word_graph

    k = len(word)
    if m is None:
        m = k + 3
    if m < k:
        raise ValidationError(f"grid bound {m} cannot place {k} positions")
    graph = word_graph(word)
    rng = random.Random(seed)
    injections = [tuple(range(k + 1))]
    available = math.perm(m, k)
    while len(injections) < min(samples + 1, available):
        inj = (0,) + tuple(rng.sample(range(1, m + 1), k))
        if inj not in injections:
            injections.append(inj)
    verdicts = []
    for inj in injections:
        rep = bang_representation(graph, inj, cells=m + 1)
        report = orthogonal_to_test(machine, rep, test, opts)
        verdicts.append((inj, report.orthogonal))
    uniform = len({v for _, v in verdicts}) == 1
    return uniform, verdicts
