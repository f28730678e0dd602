"""Sublocales of a finite frame and the coframe they form.

A sublocale of a frame ``L`` is a subset closed under all meets (hence
containing the top) and under Heyting arrows from arbitrary elements.
Sublocales are represented as bitmasks over the ambient elements.  The
collection of all of them, ordered by inclusion, is a coframe: meets are
intersections and joins are closures of unions.  :class:`SublocaleCoframe`
materializes that coframe with dense indices sorted by (size, mask), so
index 0 is the bottom ``{top}`` and the last index is the whole frame, and
cross-checks its meet/join tables against the set-theoretic definitions at
construction time.

The fitted sublocales (intersections of opens) form a further coframe
whose joins are fittings of sublocale joins; :func:`fitted_subcoframe`
builds it from an existing :class:`SublocaleCoframe`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

from .bits import bit, bits, mask_of, submasks
from .config import DEFAULT_LIMITS, Limits
from .errors import SizeLimit
from .lattice import (CoframeWitness, FrameWitness, Lattice, is_exact_meet,
                      is_strongly_exact_meet)


def open_mask(fw: FrameWitness, a: int) -> int:
    """The open sublocale of ``a``: all Heyting arrows out of ``a``."""
    return mask_of(fw.heyting_table[a])


def closed_mask(fw: FrameWitness, a: int) -> int:
    """The closed sublocale of ``a``: its up-set."""
    return fw.lattice.up[a]


def b_mask(fw: FrameWitness, a: int) -> int:
    """The smallest sublocale containing ``a``: all arrows into ``a``."""
    return mask_of(row[a] for row in fw.heyting_table)


def is_sublocale(fw: FrameWitness, members: int) -> bool:
    lat = fw.lattice
    if not (members >> lat.top) & 1:
        return False
    elems = list(bits(members))
    meet = lat.meet_table
    for pos, s in enumerate(elems):
        ms = meet[s]
        for t in elems[pos:]:
            if not (members >> ms[t]) & 1:
                return False
    hey = fw.heyting_table
    for a in range(lat.n):
        ha = hey[a]
        for s in elems:
            if not (members >> ha[s]) & 1:
                return False
    return True


def sublocale_closure(fw: FrameWitness, members: int) -> int:
    """Smallest sublocale containing the given elements."""
    lat = fw.lattice
    m = members | bit(lat.top)
    meet = lat.meet_table
    hey = fw.heyting_table
    while True:
        new = m
        elems = list(bits(m))
        for pos, s in enumerate(elems):
            ms = meet[s]
            for t in elems[pos:]:
                new |= bit(ms[t])
        for a in range(lat.n):
            ha = hey[a]
            for s in elems:
                new |= bit(ha[s])
        if new == m:
            return m
        m = new


def nucleus_element(fw: FrameWitness, members: int, a: int) -> int:
    """Least member of a sublocale above ``a``."""
    return fw.lattice.big_meet(members & fw.lattice.up[a])


def fit_mask(fw: FrameWitness, members: int) -> int:
    """Intersection of all opens containing the given sublocale."""
    acc = fw.lattice.full_mask
    for a in range(fw.lattice.n):
        o = open_mask(fw, a)
        if members & ~o == 0:
            acc &= o
    return acc


@dataclass(frozen=True)
class Sublocale:
    """A validated sublocale of a fixed frame."""

    frame: FrameWitness
    members: int

    @classmethod
    def of(cls, frame: FrameWitness, members: int) -> "Sublocale":
        if not is_sublocale(frame, members):
            raise ValueError("not a sublocale: fails meet or arrow closure")
        return cls(frame, members)

    def contains(self, x: int) -> bool:
        return bool((self.members >> x) & 1)

    def nucleus(self, a: int) -> int:
        return nucleus_element(self.frame, self.members, a)


def open_sublocale(fw: FrameWitness, a: int) -> Sublocale:
    return Sublocale(fw, open_mask(fw, a))


def closed_sublocale(fw: FrameWitness, a: int) -> Sublocale:
    return Sublocale(fw, closed_mask(fw, a))


def b_sublocale(fw: FrameWitness, a: int) -> Sublocale:
    return Sublocale(fw, b_mask(fw, a))


def nucleus(s: Sublocale, a: int) -> int:
    return s.nucleus(a)


class SublocaleCoframe:
    """The coframe of (all, or all fitted) sublocales of a finite frame.

    ``elems[i]`` is the member bitmask of sublocale ``i`` over the ambient
    frame; indices are sorted by (member count, mask), so 0 is the bottom.
    ``as_lattice`` carries the inclusion order with meet/join tables that
    are verified against intersections and (fitted) closures of unions.
    Instances are immutable after construction.
    """

    def __init__(self, ambient: FrameWitness, elems: Sequence[int],
                 fitted: bool, parent: "SublocaleCoframe | None" = None):
        self.ambient = ambient
        self.elems = tuple(sorted(elems, key=lambda m: (bin(m).count("1"), m)))
        self.fitted = fitted
        self.parent = parent
        self.index = {m: i for i, m in enumerate(self.elems)}
        if len(self.index) != len(self.elems):
            raise ValueError("duplicate sublocales")
        k = len(self.elems)
        up_rows = [mask_of(j for j, mj in enumerate(self.elems) if mi & ~mj == 0)
                   for mi in self.elems]
        self.as_lattice = Lattice.from_up(up_rows)
        self._check_tables()
        self.coframe = CoframeWitness.of(self.as_lattice)
        n = ambient.lattice.n
        self.open_index = tuple(self.index[open_mask(ambient, a)] for a in range(n))
        self.closed_index = tuple(self.index.get(ambient.lattice.up[a]) for a in range(n))
        self.fit_index = tuple(self.index[fit_mask(ambient, m)] for m in self.elems)
        self._fitted_sub: SublocaleCoframe | None = None

    def _check_tables(self):
        # the order-theoretic tables must agree with the set-theoretic ops
        k = len(self.elems)
        meet_t, join_t = self.as_lattice.meet_table, self.as_lattice.join_table
        for i in range(k):
            mi = self.elems[i]
            for j in range(i, k):
                mj = self.elems[j]
                got = self.index.get(mi & mj)
                if got is None or meet_t[i][j] != got:
                    raise ValueError("sublocale collection not closed under intersection")
                u = sublocale_closure(self.ambient, mi | mj)
                if self.fitted:
                    u = fit_mask(self.ambient, u)
                got = self.index.get(u)
                if got is None or join_t[i][j] != got:
                    raise ValueError("sublocale collection not closed under join")

    @property
    def size(self) -> int:
        return len(self.elems)

    def leq(self, i: int, j: int) -> bool:
        return self.as_lattice.leq(i, j)

    def meet(self, i: int, j: int) -> int:
        return self.as_lattice.meet_table[i][j]

    def join(self, i: int, j: int) -> int:
        return self.as_lattice.join_table[i][j]

    def diff(self, i: int, j: int) -> int:
        return self.coframe.difference_table[i][j]

    def join_fold(self, idx_mask: int) -> int:
        return self.as_lattice.big_join(idx_mask)

    def meet_fold(self, idx_mask: int) -> int:
        return self.as_lattice.big_meet(idx_mask)

    def open_of(self, a: int) -> int:
        return self.open_index[a]

    def closed_of(self, a: int) -> int:
        c = self.closed_index[a]
        if c is None:
            raise KeyError(f"closed sublocale of {a} is not a member here")
        return c

    def fit(self, i: int) -> int:
        return self.fit_index[i]

    def fitted_subcoframe(self) -> "SublocaleCoframe":
        if self.fitted:
            return self
        if self._fitted_sub is None:
            self._fitted_sub = fitted_subcoframe(self)
        return self._fitted_sub


def enumerate_sublocales(fw: FrameWitness, limits: Limits = DEFAULT_LIMITS) -> SublocaleCoframe:
    """Build the coframe of all sublocales.

    Small frames are scanned subset-by-subset; larger ones are generated by
    closing the closed-meet-open rectangles under joins and intersections,
    which reaches everything because every sublocale here is a join of
    such rectangles.
    """
    lat = fw.lattice
    n = lat.n
    if n <= limits.scan_frame_elements:
        topbit = bit(lat.top)
        found = [m for m in range(1 << n) if m & topbit and is_sublocale(fw, m)]
    else:
        basis = {bit(lat.top)}
        for x in range(n):
            cx = lat.up[x]
            for y in range(n):
                basis.add(cx & open_mask(fw, y))
        found_set = set(basis)
        frontier = list(basis)
        while frontier:
            if len(found_set) > limits.max_sublocales:
                raise SizeLimit("sublocale generation exceeded the configured bound")
            fresh = []
            for a, b in itertools.product(frontier, list(found_set)):
                for c in (sublocale_closure(fw, a | b), a & b):
                    if c not in found_set:
                        found_set.add(c)
                        fresh.append(c)
            frontier = fresh
        found = sorted(found_set)
    if len(found) > limits.max_sublocales:
        raise SizeLimit(f"{len(found)} sublocales exceed the configured bound")
    return SublocaleCoframe(fw, found, fitted=False)


def fitted_subcoframe(sl: SublocaleCoframe) -> SublocaleCoframe:
    """The coframe of fitted sublocales (intersections of opens)."""
    fw = sl.ambient
    opens = {open_mask(fw, a) for a in range(fw.lattice.n)}
    closed = set(opens)
    closed.add(fw.lattice.full_mask)
    while True:
        extra = {a & b for a, b in itertools.combinations(closed, 2)} - closed
        if not extra:
            break
        closed |= extra
    return SublocaleCoframe(fw, sorted(closed), fitted=True, parent=sl)


def sublocale_join(sl: SublocaleCoframe, idxs: Iterable[int]) -> int:
    """Join of sublocales by closure of union, checked against the table."""
    fw = sl.ambient
    acc_mask = 0
    acc_idx = 0
    for i in idxs:
        acc_mask |= sl.elems[i]
        acc_idx = sl.join(acc_idx, i)
    u = sublocale_closure(fw, acc_mask) if acc_mask else sl.elems[0]
    if sl.fitted:
        u = fit_mask(fw, u)
    got = sl.index[u]
    assert got == acc_idx, "join table disagrees with closure of union"
    return got


def fit(sl: SublocaleCoframe, i: int) -> int:
    return sl.fit_index[i]


# ---------------------------------------------------------------------------
# filters


@dataclass(frozen=True)
class FilterSet:
    """A deterministic collection of filters, each a bitmask over the frame."""

    frame: FrameWitness
    filters: tuple[int, ...]


def all_filters(fw: FrameWitness, limits: Limits = DEFAULT_LIMITS) -> tuple[int, ...]:
    """Every filter of the frame: up-closed, top in, binary meets in."""
    lat = fw.lattice
    n = lat.n
    if n > limits.scan_frame_elements:
        raise SizeLimit(f"filter scan over {n} elements exceeds the configured bound")
    topbit = bit(lat.top)
    out = []
    for m in range(1 << n):
        if not m & topbit:
            continue
        elems = list(bits(m))
        if any(lat.up[x] & ~m for x in elems):
            continue
        meet = lat.meet_table
        if all((m >> meet[x][y]) & 1 for x in elems for y in elems):
            out.append(m)
    out.sort(key=lambda m: (bin(m).count("1"), m))
    return tuple(out)


def _meet_stable_filters(fw: FrameWitness, predicate, limits: Limits) -> FilterSet:
    keep = []
    lat = fw.lattice
    for f in all_filters(fw, limits):
        ok = True
        for sub in submasks(f):
            if predicate(sub) and not (f >> lat.big_meet(sub)) & 1:
                ok = False
                break
        if ok:
            keep.append(f)
    return FilterSet(fw, tuple(keep))


def strongly_exact_filters(fw: FrameWitness, limits: Limits = DEFAULT_LIMITS) -> FilterSet:
    """Filters closed under strongly exact meets of their members."""
    return _meet_stable_filters(fw, lambda sub: is_strongly_exact_meet(fw, sub), limits)


def exact_filters(fw: FrameWitness, limits: Limits = DEFAULT_LIMITS) -> FilterSet:
    """Filters closed under exact meets of their members."""
    return _meet_stable_filters(fw, lambda sub: is_exact_meet(fw.lattice, sub), limits)


def phi(sl_o: SublocaleCoframe, i: int) -> int:
    """The filter of elements whose open contains the fitted sublocale ``i``."""
    fw = sl_o.ambient
    m = sl_o.elems[i]
    return mask_of(x for x in range(fw.lattice.n) if m & ~open_mask(fw, x) == 0)


def ker(sl: SublocaleCoframe, i: int) -> int:
    """The filter of elements whose open contains sublocale ``i``."""
    fw = sl.ambient
    m = sl.elems[i]
    return mask_of(x for x in range(fw.lattice.n) if m & ~open_mask(fw, x) == 0)


# ---------------------------------------------------------------------------
# precongruences


@dataclass(frozen=True)
class Precongruence:
    """A relation on frame elements compatible with joins, meets and order.

    ``rel[x]`` is the bitmask of right-related elements.  The five
    conditions: reflexivity, transitivity, stability under shrinking the
    left and growing the right side, stability of left sides under all
    joins (including the empty one, so the bottom relates to everything),
    and stability of right sides under binary meets.
    """

    frame: FrameWitness
    rel: tuple[int, ...]

    @classmethod
    def of(cls, frame: FrameWitness, rel: Sequence[int]) -> "Precongruence":
        rel = tuple(rel)
        if not is_precongruence(frame, rel):
            raise ValueError("relation is not a precongruence")
        return cls(frame, rel)


def is_precongruence(fw: FrameWitness, rel: Sequence[int]) -> bool:
    lat = fw.lattice
    n = lat.n
    if len(rel) != n or any(r & ~lat.full_mask for r in rel):
        return False
    for x in range(n):
        row = rel[x]
        if not (row >> x) & 1:
            return False
        for y in bits(row):
            if rel[y] & ~row:            # transitivity
                return False
            if lat.up[y] & ~row:         # right side may grow
                return False
        for x2 in bits(lat.dn[x]):       # left side may shrink
            if row & ~rel[x2]:
                return False
        ys = list(bits(row))
        meet = lat.meet_table
        for y1 in ys:                    # right sides meet-stable
            m1 = meet[y1]
            for y2 in ys:
                if not (row >> m1[y2]) & 1:
                    return False
    if rel[lat.bottom] != lat.full_mask:  # empty join on the left
        return False
    for b in range(n):
        col = mask_of(a for a in range(n) if (rel[a] >> b) & 1)
        cs = list(bits(col))
        join = lat.join_table
        for a1 in cs:                    # left sides join-stable
            j1 = join[a1]
            for a2 in cs:
                if not (col >> j1[a2]) & 1:
                    return False
    return True


def sublocale_to_precongruence(fw: FrameWitness, members: int) -> Precongruence:
    """The relation ``x R y`` iff the nucleus maps ``x`` below ``y``'s image."""
    lat = fw.lattice
    nu = [nucleus_element(fw, members, a) for a in range(lat.n)]
    rel = tuple(mask_of(b for b in range(lat.n) if lat.leq(nu[a], nu[b]))
                for a in range(lat.n))
    return Precongruence.of(fw, rel)


def precongruence_to_sublocale(fw: FrameWitness, r: Precongruence) -> int:
    """Intersection of the closed-join-open sublocales of the related pairs."""
    lat = fw.lattice
    acc = lat.full_mask
    for x in range(lat.n):
        cx = lat.up[x]
        for y in bits(r.rel[x]):
            acc &= sublocale_closure(fw, cx | open_mask(fw, y))
    return acc


# ---------------------------------------------------------------------------
# exactness of sublocales


def _exact_in_sublocale(fw: FrameWitness, members: int, img: list[int]) -> bool:
    """Whether a family inside a sublocale is exact for the sublocale's ops."""
    lat = fw.lattice
    bm = lat.big_meet(mask_of(img))
    for t in bits(members):
        acc = lat.top
        for y in img:
            acc = lat.meet_table[acc][nucleus_element(fw, members, lat.join_table[y][t])]
        if acc != nucleus_element(fw, members, lat.join_table[bm][t]):
            return False
    return True


def is_exact_sublocale(fw: FrameWitness, members: int,
                       limits: Limits = DEFAULT_LIMITS) -> bool:
    """Whether the quotient surjection onto the sublocale preserves exact meets.

    For every exact meet of an ambient family, the nucleus image family
    must meet to the nucleus of the meet, and must itself be exact inside
    the sublocale.  Exhaustive over all families on small frames; binary
    and empty families otherwise, which folding makes equivalent.
    """
    lat = fw.lattice
    n = lat.n
    nu = [nucleus_element(fw, members, a) for a in range(n)]
    if n <= limits.exhaustive_family_elements:
        fams: Iterable[int] = range(1 << n)
    else:
        fams = itertools.chain((0,), (bit(a) | bit(b) for a in range(n) for b in range(n)))
    for fam in fams:
        if not is_exact_meet(lat, fam):
            continue
        img = [nu[x] for x in bits(fam)]
        if nu[lat.big_meet(fam)] != lat.big_meet(mask_of(img)):
            return False
        if not _exact_in_sublocale(fw, members, img):
            return False
    return True
