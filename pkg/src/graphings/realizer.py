"""Realizers: the measurable maps that edges of a graphing may carry.

A realizer combines four independent actions:

* ``shift``: an integer translation moving one symbol interval onto another;
* ``perm``: a finite-support permutation of the box coordinates;
* ``box_shift``: a rational translation per coordinate (word representations
  use it to move a head marker; machines never do);
* a stack action on the cylinder factor, kept in the canonical form
  ``pop^pops then prepend pushes``: the word ``pushes`` is written with the
  symbol that ends up on top first.

Only the stack action changes measure: each net push scales the cylinder by
1/3, each net pop by 3.  ``apply`` realises the action on symbolic regions;
popping past the tracked prefix first splits an atom into its three children,
so the result is always again a finite region.

Microcosms classify realizers by what they are allowed to touch: ``m_i``
permits shifts and permutations supported on the first ``i`` coordinates,
``n_i`` additionally permits stack actions, and index ``None`` (spoken
"infinity") drops the support bound.  Fractional translations of the symbol
line and box translations are outside every microcosm here.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .errors import ValidationError
from .space import (FULL, Atom, Interval, Region, box_get, sym_index,
                    sym_shift)
from . import theta

# Permutations are stored as sorted tuples of (source, image) pairs covering
# exactly the non-fixed coordinates, so equal maps compare equal.


def perm_of(mapping: dict) -> tuple:
    items = {i: j for i, j in mapping.items() if i != j}
    if sorted(items) != sorted(items.values()):
        raise ValidationError(f"not a permutation: {mapping}")
    if any(i < 1 for i in items):
        raise ValidationError("coordinates are numbered from 1")
    return tuple(sorted(items.items()))


def swap(i: int, j: int) -> tuple:
    return () if i == j else perm_of({i: j, j: i})


def perm_apply(perm: tuple, coord: int) -> int:
    for i, j in perm:
        if i == coord:
            return j
    return coord


def perm_inverse(perm: tuple) -> tuple:
    return tuple(sorted((j, i) for i, j in perm))


def perm_compose(first: tuple, then: tuple) -> tuple:
    """Permutation applying ``first`` and afterwards ``then``."""
    support = {i for i, _ in first} | {i for i, _ in then}
    return perm_of({i: perm_apply(then, perm_apply(first, i)) for i in support})


def perm_support(perm: tuple) -> set:
    return {i for i, _ in perm}


@dataclass(frozen=True)
class Realizer:
    shift: int = 0
    perm: tuple = ()
    box_shift: tuple = ()  # sorted ((coord, amount), ...), amounts nonzero
    pops: int = 0
    pushes: str = ""

    def __post_init__(self):
        object.__setattr__(self, "perm", tuple(self.perm))
        shifts = tuple(sorted((c, Fraction(a)) for c, a in self.box_shift if a != 0))
        object.__setattr__(self, "box_shift", shifts)
        if self.pops < 0 or any(ch not in "*01" for ch in self.pushes):
            raise ValidationError("bad stack action")

    # -- constructors ---------------------------------------------------------

    @classmethod
    def identity(cls) -> "Realizer":
        return cls()

    @classmethod
    def from_ops(cls, shift: int = 0, perm: tuple = (), box_shift=(),
                 stack_ops=()) -> "Realizer":
        """Build from a stack-operation sequence performed left to right."""
        pushes, pops = theta.split_normal(theta.from_ops(stack_ops))
        return cls(shift, perm, tuple(box_shift), pops, pushes)

    # -- structure ------------------------------------------------------------

    @property
    def theta_word(self) -> str:
        return self.pushes + "c" * self.pops

    @property
    def is_identity(self) -> bool:
        return (self.shift == 0 and not self.perm and not self.box_shift
                and self.pops == 0 and not self.pushes)

    def box_shift_at(self, coord: int) -> Fraction:
        for c, a in self.box_shift:
            if c == coord:
                return a
        return Fraction(0)

    def compose(self, then: "Realizer") -> "Realizer":
        """Realizer applying ``self`` first and ``then`` afterwards."""
        perm = perm_compose(self.perm, then.perm)
        coords = ({c for c, _ in self.box_shift} | {c for c, _ in then.box_shift}
                  | {perm_apply(then.perm, c) for c, _ in self.box_shift})
        shifts = {}
        for c in coords:
            amount = then.box_shift_at(c) + self.box_shift_at(perm_apply(perm_inverse(then.perm), c))
            if amount:
                shifts[c] = amount
        if then.pops <= len(self.pushes):
            pops, pushes = self.pops, then.pushes + self.pushes[then.pops:]
        else:
            pops, pushes = self.pops + then.pops - len(self.pushes), then.pushes
        return Realizer(self.shift + then.shift, perm,
                        tuple(shifts.items()), pops, pushes)

    # -- action ---------------------------------------------------------------

    def apply_atom(self, atom: Atom) -> list[tuple[Atom, Atom]]:
        """Action on one atom as ``(piece, image)`` pairs.

        When the stack action pops deeper than the tracked prefix the atom is
        first split into the three child cylinders, repeatedly, so every piece
        has a long enough prefix; each returned pair maps a piece of the input
        atom onto its exact image.
        """
        out = []
        short = self.pops - len(atom.cyl)
        tails = ["".join(t) for t in product("*01", repeat=short)] if short > 0 else [""]
        for tail in tails:
            piece = Atom(atom.sym, atom.box, atom.cyl + tail, atom.state)
            out.append((piece, self._apply_exact(piece)))
        return out

    def _apply_exact(self, atom: Atom) -> Atom:
        sym = sym_shift(atom.sym, self.shift)
        width = max((len(atom.box), *(perm_support(self.perm) or {0}),
                     *({c for c, _ in self.box_shift} or {0})))
        intervals = []
        inv = perm_inverse(self.perm)
        for c in range(1, width + 1):
            iv = box_get(atom.box, perm_apply(inv, c))
            amount = self.box_shift_at(c)
            intervals.append(iv.translate(amount) if amount else iv)
        assert self.pops <= len(atom.cyl)
        cyl = self.pushes + atom.cyl[self.pops:]
        return Atom(sym, tuple(intervals), cyl, atom.state)

    def apply(self, region: Region) -> Region:
        images = []
        for atom in region.atoms:
            images.extend(img for _, img in self.apply_atom(atom))
        return Region(tuple(images))

    def preimage_atom(self, piece: Atom, constraint: Atom) -> Atom | None:
        """Pull a constraint on the image back onto a source piece.

        ``piece`` must have a long enough prefix for the pops (as produced by
        :meth:`apply_atom`).  Returns the sub-atom of ``piece`` mapping into
        ``constraint``, or ``None`` when the intersection is null.
        """
        image = self._apply_exact(piece)
        got = image.intersect(constraint)
        if got is None or got.measure == 0:
            return None
        intervals = []
        width = max(len(piece.box), len(got.box), *(perm_support(self.perm) or {0}))
        for c in range(1, width + 1):
            iv = box_get(got.box, perm_apply(self.perm, c))
            amount = self.box_shift_at(perm_apply(self.perm, c))
            intervals.append(iv.translate(-amount) if amount else iv)
        assert got.cyl.startswith(self.pushes)
        cyl = piece.cyl[: self.pops] + got.cyl[len(self.pushes):]
        return Atom(piece.sym, tuple(intervals), cyl, piece.state)

    def normalized_on(self, prefix: str) -> "Realizer":
        """Equal-as-a-map canonical form on atoms with cylinder prefix ``prefix``.

        Popping a tracked symbol and pushing it back is the identity on that
        cylinder; this strips such trivial pairs so path composites that agree
        pointwise compare equal.
        """
        pops, pushes = self.pops, self.pushes
        while pops > 0 and pushes and pops <= len(prefix) and pushes[-1] == prefix[pops - 1]:
            pops -= 1
            pushes = pushes[:-1]
        return Realizer(self.shift, self.perm, self.box_shift, pops, pushes)


def in_microcosm(r: Realizer, kind: str, index: int | None = None) -> bool:
    """Does the realizer belong to the microcosm ``m_i``/``n_i`` (``None`` = no bound)?"""
    if kind not in ("m", "n"):
        raise ValidationError(f"microcosm kind must be 'm' or 'n', got {kind!r}")
    if r.box_shift:
        return False
    if kind == "m" and (r.pops or r.pushes):
        return False
    if index is not None and any(c > index for c in perm_support(r.perm)):
        return False
    return True
