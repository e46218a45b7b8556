"""The measured space underlying every graphing, with a symbolic region calculus.

Points live in ``Z x [0,1]^N x {*,0,1}^N``: a real line carved into unit
intervals that name protocol symbols, a countable product of unit intervals
(one per tape head, plus slack), and a ternary sequence space holding a stack.
Everything here is finitely represented: a region is a finite list of atoms,
an atom is a symbol interval times a rational box times a cylinder.  All
measures are exact rationals; the cylinder over a prefix ``w`` has measure
``3**-len(w)``.

Equality of regions is always "almost everywhere": shared interval endpoints
carry no measure and are ignored throughout.

Text grammar (used by the file formats in :mod:`graphings.graphing` and by the
command line tools)::

    region   := atom (';' atom)*
    atom     := SYM '|' box '|' cyl '|' state
    SYM      := '*i' | '*o' | '0i' | '0o' | '1i' | '1o' | 'a' | 'r'
    box      := '-' | interval ('x' interval)*
    interval := '[' rational ',' rational ']'
    cyl      := '-' | word over '*01'
    state    := integer

``-`` denotes the full box (no tracked coordinates) or the full cylinder
(empty prefix).  Example: ``a|[0,1/2]|*0|0``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from .errors import FormatError, ValidationError

# The fixed injection of the eight protocol symbols into unit intervals of the
# real line, in this order.  Index k occupies [k, k+1).  The first six form
# the dialogue alphabet (symbol read x direction); 'a' and 'r' carry results.
SYMBOLS = ("*i", "*o", "0i", "0o", "1i", "1o", "a", "r")
EXT_SYMBOLS = SYMBOLS[:6]
RESULT_SYMBOLS = ("a", "r")

_SYM_INDEX = {s: k for k, s in enumerate(SYMBOLS)}

ZERO = Fraction(0)
ONE = Fraction(1)


def sym_index(sym: str) -> int:
    try:
        return _SYM_INDEX[sym]
    except KeyError:
        raise ValidationError(f"unknown symbol {sym!r}") from None


def sym_shift(sym: str, z: int) -> str:
    """Symbol occupying the interval ``z`` steps to the right of ``sym``."""
    k = sym_index(sym) + z
    if not 0 <= k < len(SYMBOLS):
        raise ValidationError(f"shift {z} moves {sym!r} outside the symbol range")
    return SYMBOLS[k]


def sym_of(char: str, direction: str) -> str:
    """Dialogue symbol for a tape letter and direction ('in' receives, 'out' asks)."""
    if char not in "*01" or direction not in ("i", "o"):
        raise ValidationError(f"bad dialogue symbol ({char!r},{direction!r})")
    return char + direction


@dataclass(frozen=True)
class Interval:
    """A closed rational subinterval of [0,1]."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if not (isinstance(self.lo, Fraction) and isinstance(self.hi, Fraction)):
            object.__setattr__(self, "lo", Fraction(self.lo))
            object.__setattr__(self, "hi", Fraction(self.hi))
        if not ZERO <= self.lo <= self.hi <= ONE:
            raise ValidationError(f"interval [{self.lo},{self.hi}] not within [0,1]")

    @property
    def measure(self) -> Fraction:
        return self.hi - self.lo

    def intersect(self, other: "Interval") -> "Interval | None":
        lo, hi = max(self.lo, other.lo), min(self.hi, other.hi)
        if lo >= hi:  # touching endpoints are a null set
            return None
        return Interval(lo, hi)

    def contains(self, other: "Interval") -> bool:
        return self.lo <= other.lo and other.hi <= self.hi

    def translate(self, amount: Fraction) -> "Interval":
        lo, hi = self.lo + amount, self.hi + amount
        if lo < ZERO or hi > ONE:
            raise ValidationError(
                f"translating [{self.lo},{self.hi}] by {amount} leaves the unit interval")
        return Interval(lo, hi)


FULL = Interval(ZERO, ONE)


def _canon_box(box) -> tuple:
    """Box with trailing full intervals removed (the implicit tail)."""
    box = tuple(box)
    n = len(box)
    while n and box[n - 1] == FULL:
        n -= 1
    return box[:n]


def box_measure(box) -> Fraction:
    m = ONE
    for iv in box:
        m *= iv.measure
    return m


def box_get(box, coord: int) -> Interval:
    """Interval at 1-based coordinate ``coord`` (full beyond the tracked ones)."""
    return box[coord - 1] if coord <= len(box) else FULL


def box_intersect(b1, b2):
    n = max(len(b1), len(b2))
    out = []
    for c in range(1, n + 1):
        iv = box_get(b1, c).intersect(box_get(b2, c))
        if iv is None:
            return None
        out.append(iv)
    return _canon_box(out)


def cyl_measure(prefix: str) -> Fraction:
    return Fraction(1, 3 ** len(prefix))


def cyl_intersect(u: str, v: str) -> str | None:
    """Common refinement of two cylinder prefixes, or None when disjoint."""
    if u.startswith(v):
        return u
    if v.startswith(u):
        return v
    return None


@dataclass(frozen=True)
class Atom:
    """One measurable brick: symbol interval x box x cylinder, at a dialect state."""

    sym: str
    box: tuple = ()
    cyl: str = ""
    state: int = 0

    def __post_init__(self):
        sym_index(self.sym)
        object.__setattr__(self, "box", _canon_box(self.box))
        if any(ch not in "*01" for ch in self.cyl):
            raise ValidationError(f"cylinder prefix {self.cyl!r} not over *01")
        if self.state < 0:
            raise ValidationError("dialect state must be a natural number")

    @property
    def measure(self) -> Fraction:
        return box_measure(self.box) * cyl_measure(self.cyl)

    def intersect(self, other: "Atom") -> "Atom | None":
        if self.sym != other.sym or self.state != other.state:
            return None
        box = box_intersect(self.box, other.box)
        if box is None:
            return None
        cyl = cyl_intersect(self.cyl, other.cyl)
        if cyl is None:
            return None
        return Atom(self.sym, box, cyl, self.state)

    def contains_ae(self, other: "Atom") -> bool:
        got = self.intersect(other)
        return got is not None and got.measure == other.measure

    def with_state(self, state: int) -> "Atom":
        return Atom(self.sym, self.box, self.cyl, state)

    def sort_key(self):
        return (sym_index(self.sym), self.state, self.cyl,
                tuple((iv.lo, iv.hi) for iv in self.box))


@dataclass(frozen=True)
class Region:
    """A finite union of pairwise a.e.-disjoint atoms."""

    atoms: tuple = ()

    def __post_init__(self):
        atoms = tuple(self.atoms)
        object.__setattr__(self, "atoms", atoms)
        for i, a in enumerate(atoms):
            for b in atoms[i + 1:]:
                got = a.intersect(b)
                if got is not None and got.measure > 0:
                    raise ValidationError(
                        f"atoms overlap on positive measure: {format_atom(a)} vs {format_atom(b)}")

    @property
    def measure(self) -> Fraction:
        return sum((a.measure for a in self.atoms), ZERO)

    def intersect(self, other: "Region") -> "Region":
        out = []
        for a in self.atoms:
            for b in other.atoms:
                got = a.intersect(b)
                if got is not None and got.measure > 0:
                    out.append(got)
        return Region(tuple(out))

    def restrict(self, box=None, cyl: str | None = None) -> "Region":
        """Intersection with a box and/or cylinder constraint on every atom."""
        out = []
        for a in self.atoms:
            nb = a.box if box is None else box_intersect(a.box, box)
            if nb is None:
                continue
            nc = a.cyl if cyl is None else cyl_intersect(a.cyl, cyl)
            if nc is None:
                continue
            na = Atom(a.sym, nb, nc, a.state)
            if na.measure > 0:
                out.append(na)
        return Region(tuple(out))

    def union(self, other: "Region") -> "Region":
        return Region(self.atoms + other.atoms)

    def sorted(self) -> "Region":
        return Region(tuple(sorted(self.atoms, key=Atom.sort_key)))


def region_of(*atoms) -> Region:
    return Region(tuple(atoms))


# --- common refinement -------------------------------------------------------
#
# Many predicates reduce to: carve a family of regions into elementary atoms
# fine enough that every input atom is exactly a union of them.  Per
# (symbol, state) group we split each coordinate at every endpoint present and
# expand every cylinder prefix to the longest length present.


def _expand_prefix(prefix: str, depth: int):
    if len(prefix) >= depth:
        yield prefix
        return
    for tail in product("*01", repeat=depth - len(prefix)):
        yield prefix + "".join(tail)


def refine_regions(regions):
    """Elementary partition of a family of regions.

    Returns ``(elementary, covers)`` where ``elementary`` is a list of
    positive-measure atoms, pairwise a.e.-disjoint, and ``covers[i]`` is the
    set of elementary indices whose union is ``regions[i]`` up to null sets.
    """
    groups: dict = {}
    for ri, region in enumerate(regions):
        for atom in region.atoms:
            groups.setdefault((atom.sym, atom.state), []).append((ri, atom))

    elementary: list[Atom] = []
    covers = [set() for _ in regions]
    index: dict = {}
    for (sym, state), members in sorted(groups.items(), key=lambda kv: (sym_index(kv[0][0]), kv[0][1])):
        depth = max(len(a.cyl) for _, a in members)
        width = max((len(a.box) for _, a in members), default=0)
        cuts = [sorted({ZERO, ONE, *(p for _, a in members
                                     for p in (box_get(a.box, c).lo, box_get(a.box, c).hi))})
                for c in range(1, width + 1)]
        cells = [[Interval(lo, hi) for lo, hi in zip(cs, cs[1:]) if lo < hi] for cs in cuts]
        for ri, atom in members:
            coord_cells = [[iv for iv in cells[c] if box_get(atom.box, c + 1).contains(iv)]
                           for c in range(width)]
            for combo in product(*coord_cells) if width else [()]:
                for word in _expand_prefix(atom.cyl, depth):
                    key = (sym, state, combo, word)
                    at = index.get(key)
                    if at is None:
                        elementary.append(Atom(sym, combo, word, state))
                        at = index[key] = len(elementary) - 1
                    covers[ri].add(at)
    return elementary, covers


def ae_equal(r1: Region, r2: Region) -> bool:
    """Do two regions agree up to a null set?"""
    _, (c1, c2) = refine_regions([r1, r2])
    return c1 == c2


def subset_ae(r1: Region, r2: Region) -> bool:
    _, (c1, c2) = refine_regions([r1, r2])
    return c1 <= c2


def difference(r1: Region, r2: Region) -> Region:
    """Atoms of ``r1`` not covered by ``r2`` (an a.e. set difference)."""
    elementary, (c1, c2) = refine_regions([r1, r2])
    return Region(tuple(elementary[i] for i in sorted(c1 - c2)))


def disjoint_ae(r1: Region, r2: Region) -> bool:
    return r1.intersect(r2).measure == 0


# --- text form ---------------------------------------------------------------


def format_interval(iv: Interval) -> str:
    return f"[{iv.lo},{iv.hi}]"


def format_atom(a: Atom) -> str:
    box = "x".join(format_interval(iv) for iv in a.box) if a.box else "-"
    cyl = a.cyl if a.cyl else "-"
    return f"{a.sym}|{box}|{cyl}|{a.state}"


def format_region(r: Region) -> str:
    return ";".join(format_atom(a) for a in r.sorted().atoms)


def parse_interval(text: str) -> Interval:
    text = text.strip()
    if not (text.startswith("[") and text.endswith("]")):
        raise FormatError(f"bad interval {text!r}")
    try:
        lo, hi = text[1:-1].split(",")
        return Interval(Fraction(lo), Fraction(hi))
    except (ValueError, ZeroDivisionError, ValidationError) as exc:
        raise FormatError(f"bad interval {text!r}: {exc}") from None


def parse_atom(text: str) -> Atom:
    parts = text.strip().split("|")
    if len(parts) != 4:
        raise FormatError(f"atom needs 4 fields, got {text!r}")
    sym, box_s, cyl_s, state_s = parts
    if sym not in SYMBOLS:
        raise FormatError(f"unknown symbol {sym!r}")
    box = () if box_s == "-" else tuple(parse_interval(p) for p in box_s.split("x"))
    cyl = "" if cyl_s == "-" else cyl_s
    if any(ch not in "*01" for ch in cyl):
        raise FormatError(f"bad cylinder {cyl_s!r}")
    try:
        state = int(state_s)
    except ValueError:
        raise FormatError(f"bad state {state_s!r}") from None
    return Atom(sym, box, cyl, state)


def parse_region(text: str) -> Region:
    text = text.strip()
    if not text:
        return Region()
    try:
        return Region(tuple(parse_atom(p) for p in text.split(";")))
    except ValidationError as exc:
        raise FormatError(str(exc)) from None


def full_symbol_region(symbols=SYMBOLS) -> Region:
    return Region(tuple(Atom(s) for s in symbols))
