"""Frame maps, the two enriched structures, and lifting checks.

A :class:`RaneyExtension` pairs a frame with a subcolocale of its fitted
coframe containing all opens; a :class:`SZDBF` pairs a frame with a
codense subcolocale of its full sublocale coframe.  ``to_raney`` and
``to_szdbf`` convert between them along the fitting adjunction (the
latter requires the fitted collection to be proper).

Morphism checks search for coframe maps between the chosen subcolocales
that extend the action of a given frame map on opens (Raney side) or on
closeds (zero-dimensional side).  The search assigns values to the join
irreducibles of the source in index order, prunes by monotonicity,
interval bounds from the pinned values, and incremental meet consistency,
and reports the lexicographically least witnesses first.  Smoothness of a
sublocale (membership in the smallest codense subcolocale) is equivalent
to the zero-dimensional lift existing, and exactness to the Raney lift
existing.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from .bits import bit, bits, mask_of
from .config import DEFAULT_LIMITS, Limits
from .corpus import downset_masks
from .errors import NotProper, SizeLimit
from .lattice import (FrameWitness, Lattice, is_exact_meet, join_irreducibles)
from .sublocales import SublocaleCoframe, is_sublocale, nucleus_element
from .subcolocales import (Subcolocale, conucleus, delta, fit_image, is_codense,
                           is_essential, is_proper, sb)


@dataclass(frozen=True)
class FrameMap:
    """A bottom/top/meet/join-preserving map between finite frames.

    On finite frames preserving the binary operations and the two bounds
    is the full frame-map condition, since all meets and joins are folds.
    """

    source: FrameWitness
    target: FrameWitness
    mapping: tuple[int, ...]

    @classmethod
    def of(cls, source: FrameWitness, target: FrameWitness,
           mapping: Sequence[int]) -> "FrameMap":
        mapping = tuple(mapping)
        ls, lt = source.lattice, target.lattice
        if len(mapping) != ls.n or any(not 0 <= v < lt.n for v in mapping):
            raise ValueError("mapping is not a function into the target")
        if mapping[ls.bottom] != lt.bottom:
            raise ValueError("map does not preserve the bottom")
        if mapping[ls.top] != lt.top:
            raise ValueError("map does not preserve the top")
        for x in range(ls.n):
            for y in range(x, ls.n):
                if mapping[ls.meet_table[x][y]] != lt.meet_table[mapping[x]][mapping[y]]:
                    raise ValueError(f"map does not preserve the meet of {x},{y}")
                if mapping[ls.join_table[x][y]] != lt.join_table[mapping[x]][mapping[y]]:
                    raise ValueError(f"map does not preserve the join of {x},{y}")
        return cls(source, target, mapping)

    def __call__(self, x: int) -> int:
        return self.mapping[x]

    def right_adjoint(self, m: int) -> int:
        """Largest source element mapping below ``m``."""
        lt = self.target.lattice
        return self.source.lattice.big_join(
            mask_of(x for x, v in enumerate(self.mapping) if lt.leq(v, m)))


def is_exact_map(f: FrameMap, limits: Limits = DEFAULT_LIMITS) -> bool:
    """Whether the map sends exact meets to exact meets, preserving them.

    Exhaustive over source families when small, binary plus empty
    otherwise (equivalent by folding).
    """
    ls, lt = f.source.lattice, f.target.lattice
    n = ls.n
    if n <= limits.exhaustive_family_elements:
        fams = range(1 << n)
    else:
        fams = itertools.chain((0,), (bit(a) | bit(b) for a in range(n) for b in range(n)))
    for fam in fams:
        if not is_exact_meet(ls, fam):
            continue
        img = mask_of(f.mapping[x] for x in bits(fam))
        if f.mapping[ls.big_meet(fam)] != lt.big_meet(img):
            return False
        if not is_exact_meet(lt, img):
            return False
    return True


def sublocale_frame(sl: SublocaleCoframe, i: int) -> tuple[FrameWitness, tuple[int, ...]]:
    """The sublocale at index ``i`` as a frame in its own right.

    Returns the frame and the ambient elements backing its indices, in
    increasing ambient order.
    """
    fw = sl.ambient
    members = sl.elems[i]
    elems = tuple(bits(members))
    pos = {e: p for p, e in enumerate(elems)}
    up_rows = [mask_of(pos[y] for y in bits(fw.lattice.up[x] & members)) for x in elems]
    return FrameWitness.of(Lattice.from_up(up_rows)), elems


def surjection_of(sl: SublocaleCoframe, i: int) -> FrameMap:
    """The quotient map of the frame onto sublocale ``i`` (the nucleus)."""
    sub_fw, elems = sublocale_frame(sl, i)
    pos = {e: p for p, e in enumerate(elems)}
    fw = sl.ambient
    members = sl.elems[i]
    mapping = tuple(pos[nucleus_element(fw, members, a)] for a in range(fw.lattice.n))
    return FrameMap.of(fw, sub_fw, mapping)


def is_smooth(sl: SublocaleCoframe, i: int) -> bool:
    """Whether sublocale ``i`` belongs to the smallest codense subcolocale."""
    return bool((sb(sl) >> i) & 1)


# ---------------------------------------------------------------------------
# structures


class RaneyExtension:
    """A frame plus a subcolocale of its fitted coframe containing all opens."""

    def __init__(self, frame: FrameWitness, f_sub: Subcolocale,
                 limits: Limits = DEFAULT_LIMITS):
        host = f_sub.host
        if not host.fitted or host.ambient != frame:
            raise ValueError("the subcolocale must live on the frame's fitted coframe")
        if mask_of(host.open_index) & ~f_sub.members:
            raise ValueError("a Raney extension must contain every open")
        self.frame = frame
        self.f_sub = f_sub
        self.proper = is_proper(host, f_sub.members, limits)


class SZDBF:
    """A frame plus a codense subcolocale of its full sublocale coframe."""

    def __init__(self, frame: FrameWitness, d_sub: Subcolocale):
        host = d_sub.host
        if host.fitted or host.ambient != frame:
            raise ValueError("the subcolocale must live on the frame's full sublocale coframe")
        if not is_codense(host, d_sub.members):
            raise ValueError("the subcolocale must be codense (contain the whole frame)")
        self.frame = frame
        self.d_sub = d_sub

    def is_essential(self) -> bool:
        return is_essential(self.d_sub.host, self.d_sub.members)


def to_raney(b: SZDBF) -> RaneyExtension:
    """Push a codense subcolocale down to its fitted image."""
    sl = b.d_sub.host
    sl_o = sl.fitted_subcoframe()
    members = fit_image(sl, sl_o, b.d_sub.members)
    return RaneyExtension(b.frame, Subcolocale(sl_o, members))


def to_szdbf(r: RaneyExtension) -> SZDBF:
    """Expand a proper fitted collection to the codense subcolocale it generates."""
    if not r.proper:
        raise NotProper("only proper collections expand to a codense subcolocale")
    sl_o = r.f_sub.host
    sl = sl_o.parent
    if sl is None:
        raise ValueError("the fitted host does not know its full sublocale coframe")
    members = delta(sl, sl_o, r.f_sub.members)
    return SZDBF(r.frame, Subcolocale(sl, members))


# ---------------------------------------------------------------------------
# lifting searches


@dataclass(frozen=True)
class LiftVerdict:
    """Outcome of a lift search.

    ``witnesses`` maps, for each found lift, the source subcolocale members
    (in increasing host-index order) to target host indices.  ``exhausted``
    is false when the node budget or the witness cap stopped the search
    before covering the whole space.
    """

    exists: bool
    witnesses: tuple[tuple[int, ...], ...]
    nodes_explored: int
    exhausted: bool

    def to_json(self) -> dict:
        return {"exists": self.exists,
                "witnesses": [list(w) for w in self.witnesses],
                "nodes_explored": self.nodes_explored,
                "exhausted": self.exhausted}


def subcolocale_lattice(host: SublocaleCoframe, members: int) -> tuple[Lattice, tuple[int, ...]]:
    """A subcolocale as an abstract lattice, plus its backing host indices.

    Joins are the host's; meets are conuclei.  The host order is already
    topologically sorted, so the local indices are too.
    """
    idxs = tuple(bits(members))
    pos = {e: p for p, e in enumerate(idxs)}
    k = len(idxs)
    up_rows = [mask_of(pos[j] for j in idxs if host.leq(i, j)) for i in idxs]
    lat = Lattice.from_up(up_rows)
    for a in range(k):
        for b in range(a, k):
            assert idxs[lat.join_table[a][b]] == host.join(idxs[a], idxs[b])
            assert idxs[lat.meet_table[a][b]] == conucleus(
                host, members, host.meet(idxs[a], idxs[b]))
    return lat, idxs


def extend_to_coframe_map(src: Lattice, dst: Lattice, fixed: dict[int, int],
                          limits: Limits = DEFAULT_LIMITS,
                          max_witnesses: int = 1) -> LiftVerdict:
    """Search for maps ``src -> dst`` preserving all (finite) meets and joins
    and extending the pinned assignments.

    Requires the source order to be topologically sorted by index.  Values
    are assigned to the join irreducibles in index order, each determined
    element is checked as soon as its decomposition completes, and the
    lexicographically least witnesses are reported first.  Raises
    :class:`SizeLimit` if the node budget runs out before any conclusion.
    """
    for i in range(src.n):
        if src.up[i] >> i << i != src.up[i]:
            raise ValueError("source order must be topologically sorted")
    irr = join_irreducibles(src)
    jpos = {j: k for k, j in enumerate(irr)}
    nj = len(irr)
    jbelow = [mask_of(jpos[j] for j in irr if src.leq(j, e)) for e in range(src.n)]
    last_step = [jb.bit_length() - 1 for jb in jbelow]

    # elements with no irreducibles below are exactly the bottom
    for s, t in fixed.items():
        if jbelow[s] == 0 and t != dst.bottom:
            return LiftVerdict(False, (), 0, True)
    fixed_at: list[list[tuple[int, int]]] = [[] for _ in range(nj)]
    for s, t in fixed.items():
        if jbelow[s]:
            fixed_at[last_step[s]].append((s, t))
    ub = [dst.top] * nj
    lb = [dst.bottom] * nj
    for k, j in enumerate(irr):
        for s, t in fixed.items():
            if src.leq(j, s):
                ub[k] = dst.meet_table[ub[k]][t]
            if src.leq(s, j):
                lb[k] = dst.join_table[lb[k]][t]

    val = [0] * nj
    hval = [dst.bottom] * src.n
    witnesses: list[tuple[int, ...]] = []
    nodes = 0
    budget = limits.lift_node_budget
    capped = False

    def fill(step: int) -> bool:
        for e in range(src.n):
            if last_step[e] == step:
                acc = dst.bottom
                for k in bits(jbelow[e]):
                    acc = dst.join_table[acc][val[k]]
                hval[e] = acc
        for s, t in fixed_at[step]:
            if hval[s] != t:
                return False
        jk = irr[step]
        c = val[step]
        for k2 in range(step):
            m = src.meet_table[irr[k2]][jk]
            if dst.meet_table[val[k2]][c] != hval[m]:
                return False
        return True

    def final_check() -> tuple[int, ...] | None:
        h = list(hval)
        for e in range(src.n):
            if jbelow[e] == 0:
                h[e] = dst.bottom
        if h[src.top] != dst.top or h[src.bottom] != dst.bottom:
            return None
        for s, t in fixed.items():
            if h[s] != t:
                return None
        for a in range(src.n):
            ha = h[a]
            for b in range(a, src.n):
                if h[src.meet_table[a][b]] != dst.meet_table[ha][h[b]]:
                    return None
                if h[src.join_table[a][b]] != dst.join_table[ha][h[b]]:
                    return None
        return tuple(h)

    def search(step: int) -> bool:
        """Depth-first; returns True when the search should stop early."""
        nonlocal nodes, capped
        if step == nj:
            w = final_check()
            if w is not None:
                witnesses.append(w)
                if len(witnesses) >= max_witnesses:
                    capped = True
                    return True
            return False
        for c in range(dst.n):
            if not (dst.leq(lb[step], c) and dst.leq(c, ub[step])):
                continue
            ok = True
            for k2 in range(step):
                if src.leq(irr[k2], irr[step]) and not dst.leq(val[k2], c):
                    ok = False
                    break
            if not ok:
                continue
            nodes += 1
            if nodes > budget:
                capped = True
                return True
            val[step] = c
            if fill(step) and search(step + 1):
                return True
        return False

    stopped = search(0)
    if capped and not witnesses:
        raise SizeLimit("lift search exceeded its node budget")
    return LiftVerdict(bool(witnesses), tuple(witnesses), nodes,
                       exhausted=not stopped)


def _local_fixed(src_idxs, dst_idxs, pins: Sequence[tuple[int, int]]) -> dict[int, int]:
    spos = {e: p for p, e in enumerate(src_idxs)}
    dpos = {e: p for p, e in enumerate(dst_idxs)}
    return {spos[s]: dpos[t] for s, t in pins}


def raney_lift_check(f: FrameMap, r1: RaneyExtension, r2: RaneyExtension,
                     limits: Limits = DEFAULT_LIMITS,
                     max_witnesses: int = 1) -> LiftVerdict:
    """Does ``f`` lift to a coframe map of the chosen fitted collections?

    The lift must send the open of ``x`` to the open of ``f(x)``; its
    values elsewhere are searched for.
    """
    if f.source != r1.frame or f.target != r2.frame:
        raise ValueError("the map's frames must match the structures")
    src_lat, src_idxs = subcolocale_lattice(r1.f_sub.host, r1.f_sub.members)
    dst_lat, dst_idxs = subcolocale_lattice(r2.f_sub.host, r2.f_sub.members)
    pins = [(r1.f_sub.host.open_index[x], r2.f_sub.host.open_index[f(x)])
            for x in range(f.source.lattice.n)]
    fixed = _local_fixed(src_idxs, dst_idxs, pins)
    verdict = extend_to_coframe_map(src_lat, dst_lat, fixed, limits, max_witnesses)
    return _globalize(verdict, dst_idxs)


def szdbf_lift_check(f: FrameMap, b1: SZDBF, b2: SZDBF,
                     limits: Limits = DEFAULT_LIMITS,
                     max_witnesses: int = 1) -> LiftVerdict:
    """Does ``f`` lift to a coframe map of the chosen codense subcolocales?

    The lift must send the closed of ``x`` to the closed of ``f(x)``.
    """
    if f.source != b1.frame or f.target != b2.frame:
        raise ValueError("the map's frames must match the structures")
    src_lat, src_idxs = subcolocale_lattice(b1.d_sub.host, b1.d_sub.members)
    dst_lat, dst_idxs = subcolocale_lattice(b2.d_sub.host, b2.d_sub.members)
    pins = [(b1.d_sub.host.closed_of(x), b2.d_sub.host.closed_of(f(x)))
            for x in range(f.source.lattice.n)]
    fixed = _local_fixed(src_idxs, dst_idxs, pins)
    verdict = extend_to_coframe_map(src_lat, dst_lat, fixed, limits, max_witnesses)
    return _globalize(verdict, dst_idxs)


def _globalize(verdict: LiftVerdict, dst_idxs: tuple[int, ...]) -> LiftVerdict:
    """Re-express witness values as host indices of the target coframe."""
    return LiftVerdict(verdict.exists,
                       tuple(tuple(dst_idxs[v] for v in w) for w in verdict.witnesses),
                       verdict.nodes_explored, verdict.exhausted)


# ---------------------------------------------------------------------------
# the down-set frame


def downset_frame(fw: FrameWitness, limits: Limits = DEFAULT_LIMITS
                  ) -> tuple[FrameWitness, FrameMap]:
    """The frame of down-sets of the underlying order, with the join map.

    The map sends a down-set to its join; it is a surjective frame map
    whose right adjoint picks out principal down-sets.
    """
    masks = downset_masks(fw.lattice.up, limits)
    pos = {m: i for i, m in enumerate(masks)}
    up_rows = [mask_of(pos[mj] for mj in masks if mi & ~mj == 0) for mi in masks]
    dl = FrameWitness.of(Lattice.from_up(up_rows))
    eps = FrameMap.of(dl, fw, tuple(fw.lattice.big_join(m) for m in masks))
    return dl, eps


def right_adjoint_image(f: FrameMap) -> int:
    """The sublocale of the source induced by a frame map: the image of its
    right adjoint, as a bitmask of source elements."""
    out = mask_of(f.right_adjoint(a) for a in range(f.target.lattice.n))
    assert is_sublocale(f.source, out)
    return out
