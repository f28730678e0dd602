"""Finite bounded lattices: order tables, frame and coframe structure.

Elements are dense integer indices ``0..n-1``; subsets are int bitmasks
(bit ``i`` set iff element ``i`` belongs).  A :class:`Lattice` stores one
up-set bitmask per element plus cached binary meet/join tables, so every
downstream computation is table lookup.  :class:`FrameWitness` and
:class:`CoframeWitness` wrap a lattice once distributivity has been
verified and cache the Heyting arrow, respectively the co-Heyting
difference.  On a finite lattice binary distributivity already implies the
complete frame and coframe laws, and both witnesses record that the check
ran.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from typing import Iterable, Sequence, Union

from .bits import bit, bits, mask_of
from .config import DEFAULT_LIMITS, Limits
from .errors import NotACoframe, NotAFrame


def _extreme(bound_rows: Sequence[int], common: int) -> int | None:
    """The member of ``common`` that bounds all of ``common``, if any.

    With ``bound_rows = dn`` this is the greatest element of ``common``;
    with ``bound_rows = up`` the least.  Used for meets/joins, so a
    ``None`` means the candidate poset is not a lattice.
    """
    for k in bits(common):
        if common & ~bound_rows[k] == 0:
            return k
    return None


@dataclass(frozen=True)
class Lattice:
    """A finite bounded lattice given by its order relation."""

    n: int
    up: tuple[int, ...]
    dn: tuple[int, ...]
    bottom: int
    top: int
    meet_table: tuple[tuple[int, ...], ...] = field(repr=False)
    join_table: tuple[tuple[int, ...], ...] = field(repr=False)

    @classmethod
    def from_up(cls, up: Sequence[int]) -> "Lattice":
        """Validate an up-set table as a lattice order and cache its tables."""
        up = tuple(up)
        n = len(up)
        if n == 0:
            raise ValueError("empty lattice")
        full = (1 << n) - 1
        dn = [0] * n
        for i in range(n):
            row = up[i]
            if row & ~full:
                raise ValueError(f"order row {i} mentions elements outside 0..{n - 1}")
            if not (row >> i) & 1:
                raise ValueError(f"order not reflexive at {i}")
            for j in bits(row):
                if i != j and (up[j] >> i) & 1:
                    raise ValueError(f"order not antisymmetric on {{{i},{j}}}")
                if up[j] & ~row:
                    raise ValueError(f"order not transitive through {i} <= {j}")
                dn[j] |= bit(i)
        bottoms = [i for i in range(n) if up[i] == full]
        tops = [i for i in range(n) if dn[i] == full]
        if len(bottoms) != 1:
            raise ValueError("order has no bottom element")
        if len(tops) != 1:
            raise ValueError("order has no top element")
        meet = [[0] * n for _ in range(n)]
        join = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                m = _extreme(dn, dn[i] & dn[j])
                if m is None:
                    raise ValueError(f"elements {i},{j} have no meet")
                w = _extreme(up, up[i] & up[j])
                if w is None:
                    raise ValueError(f"elements {i},{j} have no join")
                meet[i][j] = meet[j][i] = m
                join[i][j] = join[j][i] = w
        return cls(n, up, tuple(dn), bottoms[0], tops[0],
                   tuple(map(tuple, meet)), tuple(map(tuple, join)))

    @classmethod
    def from_relation(cls, n: int, pairs: Iterable[tuple[int, int]]) -> "Lattice":
        """Build from generating order pairs, taking the reflexive-transitive closure."""
        up = [bit(i) for i in range(n)]
        for i, j in pairs:
            if not (0 <= i < n and 0 <= j < n):
                raise ValueError(f"pair ({i},{j}) outside 0..{n - 1}")
            up[i] |= bit(j)
        changed = True
        while changed:
            changed = False
            for i in range(n):
                acc = up[i]
                for j in bits(acc):
                    acc |= up[j]
                if acc != up[i]:
                    up[i] = acc
                    changed = True
        return cls.from_up(up)

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def leq(self, i: int, j: int) -> bool:
        return bool((self.up[i] >> j) & 1)

    def meet(self, i: int, j: int) -> int:
        return self.meet_table[i][j]

    def join(self, i: int, j: int) -> int:
        return self.join_table[i][j]

    def big_meet(self, mask: int) -> int:
        """Meet of a subset; the empty meet is the top."""
        acc = self.top
        row = self.meet_table
        for i in bits(mask):
            acc = row[acc][i]
        return acc

    def big_join(self, mask: int) -> int:
        """Join of a subset; the empty join is the bottom."""
        acc = self.bottom
        row = self.join_table
        for i in bits(mask):
            acc = row[acc][i]
        return acc

    def dual(self) -> "Lattice":
        """The order-reversed lattice, sharing this one's tables swapped."""
        return Lattice(self.n, self.dn, self.up, self.top, self.bottom,
                       self.join_table, self.meet_table)

    def is_distributive(self) -> bool:
        return _distributive(self)


@functools.lru_cache(maxsize=None)
def _distributive(lat: Lattice) -> bool:
    meet, join = lat.meet_table, lat.join_table
    for x in range(lat.n):
        mx = meet[x]
        for y in range(lat.n):
            jy = join[y]
            mxy = mx[y]
            for z in range(lat.n):
                if mx[jy[z]] != join[mxy][mx[z]]:
                    return False
    return True


@functools.lru_cache(maxsize=None)
def covers(lat: Lattice) -> tuple[tuple[int, int], ...]:
    """Covering pairs ``(i, j)`` of the order (its transitive reduction)."""
    out = []
    for i in range(lat.n):
        for j in bits(lat.up[i] & ~bit(i)):
            between = lat.up[i] & lat.dn[j]
            if between == bit(i) | bit(j):
                out.append((i, j))
    return tuple(out)


def lower_covers(lat: Lattice, j: int) -> int:
    return mask_of(i for i, k in covers(lat) if k == j)


def join_irreducibles(lat: Lattice) -> tuple[int, ...]:
    """Elements with exactly one lower cover; they join-generate the lattice."""
    return tuple(j for j in range(lat.n)
                 if j != lat.bottom and bin(lower_covers(lat, j)).count("1") == 1)


@dataclass(frozen=True)
class ElementFamily:
    """A (possibly empty) subset of a lattice, used to state meet/join laws."""

    lattice: Lattice
    members: int

    def __post_init__(self):
        if self.members & ~self.lattice.full_mask:
            raise ValueError("family members outside the lattice")

    def __iter__(self):
        return bits(self.members)


def family(lat: Lattice, items: Iterable[int]) -> ElementFamily:
    return ElementFamily(lat, mask_of(items))


def _members(fam: Union[ElementFamily, int]) -> int:
    return fam.members if isinstance(fam, ElementFamily) else fam


def big_meet(lat: Lattice, fam: Union[ElementFamily, int]) -> int:
    return lat.big_meet(_members(fam))


def big_join(lat: Lattice, fam: Union[ElementFamily, int]) -> int:
    return lat.big_join(_members(fam))


def is_exact_meet(lat: Lattice, fam: Union[ElementFamily, int]) -> bool:
    """Whether joining any ``y`` distributes over the meet of the family.

    The empty family has meet top, and ``top v y = top`` always, so the
    empty family is exact.
    """
    m = _members(fam)
    bm = lat.big_meet(m)
    join, meet = lat.join_table, lat.meet_table
    for y in range(lat.n):
        acc = lat.top
        for x in bits(m):
            acc = meet[acc][join[x][y]]
        if acc != join[bm][y]:
            return False
    return True


def is_strongly_exact_meet(fw: "FrameWitness", fam: Union[ElementFamily, int]) -> bool:
    """Whether the family's meet inherits every Heyting fixpoint of its members."""
    m = _members(fam)
    lat = fw.lattice
    bm = lat.big_meet(m)
    hey = fw.heyting_table
    for y in range(lat.n):
        if all(hey[x][y] == y for x in bits(m)) and hey[bm][y] != y:
            return False
    return True


def is_complemented(lat: Lattice, c: int) -> bool:
    meet, join = lat.meet_table[c], lat.join_table[c]
    return any(meet[d] == lat.bottom and join[d] == lat.top for d in range(lat.n))


def is_linear(lat: Lattice, c: int, limits: Limits = DEFAULT_LIMITS) -> bool:
    """Whether meeting with ``c`` distributes over arbitrary joins.

    Exhaustive over all families when the lattice is small; otherwise the
    binary instances are checked, which is equivalent by folding.  The
    empty family holds trivially (``bottom ^ c = bottom``).
    """
    meet, join = lat.meet_table, lat.join_table
    if lat.n <= limits.exhaustive_family_elements:
        for fam in range(1 << lat.n):
            acc = lat.bottom
            for a in bits(fam):
                acc = join[acc][meet[a][c]]
            if acc != meet[lat.big_join(fam)][c]:
                return False
        return True
    mc = meet[c]
    for a in range(lat.n):
        ja = join[a]
        for b in range(lat.n):
            if mc[ja[b]] != join[mc[a]][mc[b]]:
                return False
    return True


@dataclass(frozen=True)
class FrameWitness:
    """A lattice together with evidence that it satisfies the frame law."""

    lattice: Lattice
    distributive: bool
    frame_law_checked: bool
    heyting_table: tuple[tuple[int, ...], ...] = field(repr=False)

    @classmethod
    def of(cls, lat: Lattice) -> "FrameWitness":
        if not lat.is_distributive():
            raise NotAFrame("lattice is not distributive")
        n = lat.n
        meet = lat.meet_table
        dn_y = lat.dn
        hey = []
        for x in range(n):
            mx = meet[x]
            row = []
            for y in range(n):
                cand = mask_of(z for z in range(n) if (dn_y[y] >> mx[z]) & 1)
                row.append(lat.big_join(cand))
            hey.append(tuple(row))
        return cls(lat, True, True, tuple(hey))

    @property
    def n(self) -> int:
        return self.lattice.n

    def heyting(self, x: int, y: int) -> int:
        return self.heyting_table[x][y]

    def pseudocomplement(self, a: int) -> int:
        return self.heyting_table[a][self.lattice.bottom]


def heyting(fw: FrameWitness, x: int, y: int) -> int:
    return fw.heyting_table[x][y]


def pseudocomplement(fw: FrameWitness, a: int) -> int:
    return fw.pseudocomplement(a)


@functools.lru_cache(maxsize=None)
def primes(fw: FrameWitness) -> int:
    """Bitmask of prime elements; the top is never prime."""
    lat = fw.lattice
    meet = lat.meet_table
    out = 0
    for p in range(lat.n):
        if p == lat.top:
            continue
        ok = True
        for x in range(lat.n):
            if lat.leq(x, p):
                continue
            mx = meet[x]
            for y in range(lat.n):
                if lat.leq(mx[y], p) and not lat.leq(y, p):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            out |= bit(p)
    return out


@functools.lru_cache(maxsize=None)
def covered_primes(fw: FrameWitness) -> int:
    """Primes whose strict up-set meets strictly above them.

    Any family meeting to such a prime must contain it.  On a finite frame
    this recovers exactly the primes.
    """
    lat = fw.lattice
    out = 0
    for p in bits(primes(fw)):
        strictly_above = lat.up[p] & ~bit(p)
        if lat.big_meet(strictly_above) != p:
            out |= bit(p)
    return out


@dataclass(frozen=True)
class CoframeWitness:
    """A lattice together with evidence that it satisfies the coframe law."""

    lattice: Lattice
    distributive: bool
    coframe_law_checked: bool
    difference_table: tuple[tuple[int, ...], ...] = field(repr=False)

    @classmethod
    def of(cls, lat: Lattice) -> "CoframeWitness":
        if not lat.is_distributive():
            raise NotACoframe("lattice is not distributive")
        n = lat.n
        join = lat.join_table
        diff = []
        for x in range(n):
            up_x = lat.up[x]
            row = []
            for y in range(n):
                jy = join[y]
                cand = mask_of(z for z in range(n) if (up_x >> jy[z]) & 1)
                row.append(lat.big_meet(cand))
            diff.append(tuple(row))
        return cls(lat, True, True, tuple(diff))

    @property
    def n(self) -> int:
        return self.lattice.n

    def difference(self, x: int, y: int) -> int:
        """Least ``z`` with ``x <= y v z``."""
        return self.difference_table[x][y]

    def supplement(self, c: int) -> int:
        return self.difference_table[self.lattice.top][c]


def coframe_difference(cw: CoframeWitness, x: int, y: int) -> int:
    return cw.difference_table[x][y]


def supplement(cw: CoframeWitness, c: int) -> int:
    return cw.supplement(c)
