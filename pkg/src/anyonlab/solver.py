"""Shared commutant-solving core on truncated regions.

One engine serves every caller: boundary gauge operators, topological-order
completion, TO verification, corridor strings and defect endpoints all reduce
to "find local operators on a site set commuting with a list of operators,
modulo a quotient span".
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .catalog import StabilizerCodeSpec, TruncationGeometry
from .errors import WindowTooSmall
from .normalforms import SpanTracker, mge
from .paulipoly import PauliVector
from .zdarith import Modulus


@dataclass(frozen=True)
class Region:
    """Kept-qudit rule for a truncated plane.

    Per slot, an inclusive x-interval of allowed cells (None = unbounded);
    y is never restricted.  `stab_exclusion` bans bulk-stabilizer translates
    whose support intersects the given x-interval (used for in-place defect
    strips, where qudits remain but stabilizers are removed).
    """

    spec: StabilizerCodeSpec
    slot_x_range: tuple[tuple[float, float], ...]
    stab_exclusion: tuple[float, float] | None = None

    def qudit_kept(self, slot: int, x: int) -> bool:
        lo, hi = self.slot_x_range[slot]
        return lo <= x <= hi

    def pauli_slot_kept(self, pslot: int, x: int) -> bool:
        return self.qudit_kept(pslot % self.spec.w, x)

    def op_supported(self, op: PauliVector, exclude_check: bool = True) -> bool:
        w = self.spec.w
        xs = []
        for s, a, b, _ in op.support_sites():
            if not self.qudit_kept(s % w, a):
                return False
            xs.append(a)
        if exclude_check and self.stab_exclusion is not None and xs:
            lo, hi = self.stab_exclusion
            if any(lo <= x <= hi for x in xs):
                return False
        return True


def full_plane(spec: StabilizerCodeSpec) -> Region:
    inf = float("inf")
    return Region(spec, tuple((-inf, inf) for _ in range(spec.w)))


def half_plane(spec: StabilizerCodeSpec, geom: TruncationGeometry) -> Region:
    """Left side keeps cells x <= 0 (mask decides the boundary column);
    right side is the mirror with boundary column at x = 0."""
    mask = geom.mask_for(spec)
    inf = float("inf")
    ranges = []
    for s in range(spec.w):
        if geom.side == "left":
            ranges.append((-inf, 0 if mask[s] else -1))
        else:
            ranges.append((0 if mask[s] else 1, inf))
    return Region(spec, tuple(ranges))


def strip_region(spec: StabilizerCodeSpec, x_lo: float, x_hi: float) -> Region:
    """Full plane with stabilizers removed where they touch [x_lo, x_hi]."""
    inf = float("inf")
    return Region(
        spec,
        tuple((-inf, inf) for _ in range(spec.w)),
        stab_exclusion=(x_lo, x_hi),
    )


class SiteIndex:
    """Flat indexing of (pauli_slot, x, y) sites for coefficient vectors."""

    def __init__(self, sites):
        self.sites = list(sites)
        self.lookup = {s: i for i, s in enumerate(self.sites)}

    def __len__(self):
        return len(self.sites)

    def vector(self, op: PauliVector, d: int):
        """Flatten op; returns None if op has support outside the index."""
        vec = np.zeros(len(self.sites), dtype=np.int32)
        for s, a, b, c in op.support_sites():
            i = self.lookup.get((s, a, b))
            if i is None:
                return None
            vec[i] = c % d
        return vec


def op_diameter(ops) -> tuple[int, int]:
    """Max x- and y-extent over a list of PauliVectors."""
    dx = dy = 0
    for op in ops:
        bounds = op.support_bounds()
        if bounds is None:
            continue
        (x0, x1), (y0, y1) = bounds
        dx = max(dx, x1 - x0)
        dy = max(dy, y1 - y0)
    return dx, dy


def enumerate_op_translates(op: PauliVector, region: Region, box, exclude_check=True):
    """All translates of op supported in `region` whose support lies in box
    (x0, x1, y0, y1)."""
    bounds = op.support_bounds()
    if bounds is None:
        return []
    (sx0, sx1), (sy0, sy1) = bounds
    x0, x1, y0, y1 = box
    out = []
    for c in range(int(x0 - sx0), int(x1 - sx1) + 1):
        for e in range(int(y0 - sy0), int(y1 - sy1) + 1):
            t = op.shift(c, e)
            if region.op_supported(t, exclude_check=exclude_check):
                out.append(t)
    return out


def commutant_generators(
    d: int,
    w: int,
    pauli_sites: list[tuple[int, int, int]],
    must_commute: list[PauliVector],
    quotient: list[PauliVector],
    translate_fn,
    site_index: SiteIndex,
):
    """Operators on pauli_sites commuting with every op in must_commute,
    modulo the span of `quotient`.

    Relation rows of the commutation matrix are scanned in elimination order;
    a row enters the output iff it is outside the running span, which then
    absorbs translate_fn(op).  Deterministic start to finish.
    """
    mod = Modulus(d)
    if not pauli_sites:
        return []
    row_of = {s: i for i, s in enumerate(pauli_sites)}
    m1 = np.zeros((len(pauli_sites), max(len(must_commute), 1)), dtype=np.int32)
    for col, op in enumerate(must_commute):
        # Single X at (s,x,y) has exponent op.zblock[s][x,y]; single Z has
        # -op.xblock[s][x,y].
        for s, a, b, c in op.support_sites():
            if s < w:
                i = row_of.get((s + w, a, b))
                val = -c
            else:
                i = row_of.get((s - w, a, b))
                val = c
            if i is not None:
                m1[i, col] = (m1[i, col] + val) % d
    res = mge(m1, mod)

    tracker = SpanTracker(mod, len(site_index))
    qvecs = []
    for q in quotient:
        v = site_index.vector(q, d)
        if v is not None:
            qvecs.append(v)
    if qvecs:
        tracker.add(np.array(qvecs))

    out = []
    for rel in res.relations:
        op = PauliVector.zero(d, w)
        for i in np.flatnonzero(rel):
            s, a, b = pauli_sites[i]
            op = op.add(PauliVector.single(d, w, s, a, b, int(rel[i])))
        if op.is_zero():
            continue
        vec = site_index.vector(op, d)
        if vec is None or tracker.contains(vec):
            continue
        out.append(op)
        tvecs = []
        for t in translate_fn(op):
            tv = site_index.vector(t, d)
            if tv is not None:
                tvecs.append(tv)
        if tvecs:
            tracker.add(np.array(tvecs))
    return out


def build_pauli_sites(region: Region, box) -> list[tuple[int, int, int]]:
    """Single-Pauli sites (pslot, x, y) in the box, slot-major then (y, x)."""
    x0, x1, y0, y1 = box
    out = []
    for pslot in range(2 * region.spec.w):
        for y in range(int(y0), int(y1) + 1):
            for x in range(int(x0), int(x1) + 1):
                if region.pauli_slot_kept(pslot, x):
                    out.append((pslot, x, y))
    return out


def kept_stab_translates(region: Region, box) -> list[PauliVector]:
    """Bulk-stabilizer translates supported in the region with support inside
    box; gauge constraints are appended (they ignore the exclusion strip)."""
    out = []
    for s in region.spec.stabilizers:
        out.extend(enumerate_op_translates(s, region, box))
    for g in region.spec.gauge_constraints:
        out.extend(enumerate_op_translates(g, region, box, exclude_check=False))
    return out


def bulk_stab_translates_only(region: Region, box) -> list[PauliVector]:
    out = []
    for s in region.spec.stabilizers:
        out.extend(enumerate_op_translates(s, region, box))
    return out


def require_some_stabilizer(translates, geom_desc: str):
    if not translates:
        raise WindowTooSmall(
            f"no full stabilizer translate fits the window ({geom_desc})"
        )
