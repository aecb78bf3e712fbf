"""Boundary (and defect) gauge operators of a truncated code.

Workflow: list single Paulis near the cut, record their commutation exponents
against every bulk-stabilizer translate, and read gauge operators off the
relation rows of the elimination.  Accepted generators are de-duplicated
against the translation span of bulk stabilizers plus previously accepted
generators; the Pauli window grows until the generator content stops changing.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .catalog import StabilizerCodeSpec, TruncationGeometry
from .errors import DimensionMismatch, WindowTooSmall
from .paulipoly import PauliVector, dot, x0_slice
from .solver import (
    Region,
    SiteIndex,
    build_pauli_sites,
    commutant_generators,
    enumerate_op_translates,
    half_plane,
    kept_stab_translates,
    op_diameter,
)
from .normalforms import SpanTracker
from .zdarith import Modulus


@dataclass(frozen=True)
class GaugeOperator:
    """One boundary/defect gauge generator; the emitted set generates the full
    gauge group under unit y-translation and products."""

    pauli: PauliVector
    y_period: int = 1
    tag: str = "untagged"  # trivial | primary | secondary


@dataclass(frozen=True)
class GaugeViolationRow:
    """Per-generator violation polynomials in y: entry i is the x^0 part of
    dot(G_i, P), stored as a map y-degree -> Z_d value."""

    entries: tuple

    def is_zero(self) -> bool:
        return all(not e for e in self.entries)

    def shift_y(self, t: int) -> "GaugeViolationRow":
        return GaugeViolationRow(
            tuple({b + t: c for b, c in e.items()} for e in self.entries)
        )

    def scale(self, k: int, d: int) -> "GaugeViolationRow":
        return GaugeViolationRow(
            tuple(
                {b: (c * k) % d for b, c in e.items() if (c * k) % d}
                for e in self.entries
            )
        )

    def add(self, other: "GaugeViolationRow", d: int) -> "GaugeViolationRow":
        out = []
        for a, b in zip(self.entries, other.entries):
            m = dict(a)
            for deg, c in b.items():
                v = (m.get(deg, 0) + c) % d
                if v:
                    m[deg] = v
                else:
                    m.pop(deg, None)
            out.append(m)
        return GaugeViolationRow(tuple(out))

    def y_bounds(self):
        degs = [b for e in self.entries for b in e]
        if not degs:
            return None
        return min(degs), max(degs)

    def canonical(self):
        return tuple(tuple(sorted(e.items())) for e in self.entries)


@dataclass
class GaugeSolveResult:
    generators: list[GaugeOperator]
    region: Region
    geometry: TruncationGeometry
    pauli_window: tuple[int, int, int, int]
    growth_steps: int


def default_geometry(
    spec: StabilizerCodeSpec, side: str = "left", style="smooth"
) -> TruncationGeometry:
    """Windows sized from the stabilizer diameter.

    The starting window is deliberately small so accepted generator
    representatives stay compact; the dynamic-sufficiency loop grows it until
    the generator content saturates.
    """
    dx, dy = op_diameter(spec.all_terms())
    depth = max(dx, 1) + 1
    height = 2 * max(dy, 1) + 2
    if side == "left":
        pw = (-depth, 0, -height, height)
        sw = (-depth - dx - 2, 0, -height - dy - 2, height + dy + 2)
    else:
        pw = (0, depth, -height, height)
        sw = (0, depth + dx + 2, -height - dy - 2, height + dy + 2)
    return TruncationGeometry(side, pw, sw, style)


def _solve_once(region: Region, pauli_box):
    spec = region.spec
    d, w = spec.d, spec.w
    dx, dy = op_diameter(spec.all_terms())
    x0, x1, y0, y1 = pauli_box
    influence = (x0 - dx - 1, x1 + dx + 1, y0 - dy - 1, y1 + dy + 1)
    compare = (x0 - dx - 2, x1 + dx + 2, y0 - dy - 2, y1 + dy + 2)

    stab_part = [
        t
        for s in spec.stabilizers
        for t in enumerate_op_translates(s, region, influence)
    ]
    if spec.stabilizers and not stab_part:
        raise WindowTooSmall(
            f"no stabilizer translate fits the window {pauli_box} on this region"
        )
    must = kept_stab_translates(region, influence)

    sites = build_pauli_sites(region, compare)
    index = SiteIndex(sites)
    quotient = kept_stab_translates(region, compare)

    def translates(op):
        return enumerate_op_translates(op, region, compare, exclude_check=False)

    pauli_sites = build_pauli_sites(region, pauli_box)
    gens = commutant_generators(d, w, pauli_sites, must, quotient, translates, index)
    return gens, index, quotient


def _span_of(ops, region, box, index, extra, d):
    tracker = SpanTracker(Modulus(d), len(index))
    vecs = []
    for op in extra:
        v = index.vector(op, d)
        if v is not None:
            vecs.append(v)
    for op in ops:
        for t in enumerate_op_translates(op, region, box, exclude_check=False):
            v = index.vector(t, d)
            if v is not None:
                vecs.append(v)
    if vecs:
        import numpy as np

        tracker.add(np.array(vecs))
    return tracker


def solve_gauge_operators(
    spec: StabilizerCodeSpec,
    geom: TruncationGeometry | None = None,
    region: Region | None = None,
    max_growth: int = 8,
) -> GaugeSolveResult:
    """All boundary gauge operators of the truncated code, modulo bulk
    stabilizers, tagged primary/secondary.

    The Pauli window grows (dynamic sufficiency) until one growth step adds
    nothing new modulo the translation span of what was already found.
    """
    if geom is None:
        geom = default_geometry(spec)
    if region is None:
        region = half_plane(spec, geom)
    dx, dy = op_diameter(spec.all_terms())
    box = geom.pauli_window

    prev_gens = None
    growth = 0
    for growth in range(max_growth):
        gens, index, quotient = _solve_once(region, box)
        if prev_gens is not None:
            compare_box = (box[0] - dx - 2, box[1] + dx + 2, box[2] - dy - 2, box[3] + dy + 2)
            span = _span_of(prev_gens, region, compare_box, index, quotient, spec.d)
            new_content = False
            for g in gens:
                v = index.vector(g, spec.d)
                if v is None or not span.contains(v):
                    new_content = True
                    break
            if not new_content and len(gens) <= len(prev_gens):
                canonical = [_shift_to_origin(p) for p in prev_gens]
                tagged = classify_primary_secondary(
                    [GaugeOperator(p) for p in canonical], spec, geom, region
                )
                return GaugeSolveResult(tagged, region, geom, prev_box, growth)
        prev_gens, prev_box = gens, box
        grow_x = dx + 1
        grow_y = dy + 1
        if geom.side == "left":
            box = (box[0] - grow_x, box[1], box[2] - grow_y, box[3] + grow_y)
        else:
            box = (box[0], box[1] + grow_x, box[2] - grow_y, box[3] + grow_y)
    raise WindowTooSmall(
        f"gauge-operator set failed to stabilize after {max_growth} window growths "
        f"(last window {box}, {len(prev_gens or [])} generators)"
    )


def _shift_to_origin(p: PauliVector) -> PauliVector:
    """Translate a generator so its lowest y-support sits at 0 (canonical
    representative of its y-translation class)."""
    bounds = p.support_bounds()
    if bounds is None:
        return p
    return p.shift(0, -bounds[1][0])


def truncated_stabilizer_translates(region: Region, box) -> list[PauliVector]:
    """Stabilizer translates straddling the cut, with out-of-region Paulis
    removed (the primary boundary gauge operators, before quotienting)."""
    spec = region.spec
    x0, x1, y0, y1 = box
    out = []
    for s in spec.stabilizers:
        bounds = s.support_bounds()
        if bounds is None:
            continue
        (sx0, sx1), (sy0, sy1) = bounds
        for c in range(int(x0 - sx1), int(x1 - sx0) + 1):
            for e in range(int(y0 - sy0), int(y1 - sy1) + 1):
                t = s.shift(c, e)
                sites = t.support_sites()
                kept = [
                    (sl, a, b, v)
                    for (sl, a, b, v) in sites
                    if region.qudit_kept(sl % spec.w, a)
                ]
                if not kept or len(kept) == len(sites):
                    continue  # fully outside or a bulk stabilizer
                if min(a for _, a, _, _ in kept) < x0 or max(a for _, a, _, _ in kept) > x1:
                    continue
                tr = PauliVector.zero(spec.d, spec.w)
                for sl, a, b, v in kept:
                    tr = tr.add(PauliVector.single(spec.d, spec.w, sl, a, b, v))
                out.append(tr)
    return out


def classify_primary_secondary(
    ops: list[GaugeOperator],
    spec: StabilizerCodeSpec,
    geom: TruncationGeometry,
    region: Region | None = None,
) -> list[GaugeOperator]:
    """primary = in the span of truncated + bulk stabilizer translates;
    trivial = in the span of bulk stabilizers alone; secondary otherwise."""
    import numpy as np

    if region is None:
        region = half_plane(spec, geom)
    d = spec.d
    dx, dy = op_diameter(spec.all_terms())
    bounds = [op.pauli.support_bounds() for op in ops if not op.pauli.is_zero()]
    if not bounds:
        return [replace(op, tag="trivial") for op in ops]
    x0 = min(b[0][0] for b in bounds) - dx - 2
    x1 = max(b[0][1] for b in bounds) + dx + 2
    y0 = min(b[1][0] for b in bounds) - dy - 2
    y1 = max(b[1][1] for b in bounds) + dy + 2
    box = (x0, x1, y0, y1)
    index = SiteIndex(build_pauli_sites(region, box))

    bulk = kept_stab_translates(region, box)
    bulk_vecs = [v for v in (index.vector(t, d) for t in bulk) if v is not None]
    bulk_span = SpanTracker(Modulus(d), len(index))
    if bulk_vecs:
        bulk_span.add(np.array(bulk_vecs))

    truncated = truncated_stabilizer_translates(region, box)
    prim_vecs = bulk_vecs + [
        v for v in (index.vector(t, d) for t in truncated) if v is not None
    ]
    prim_span = SpanTracker(Modulus(d), len(index))
    if prim_vecs:
        prim_span.add(np.array(prim_vecs))

    tagged = []
    for op in ops:
        vec = index.vector(op.pauli, d)
        if vec is None:
            tag = "secondary"
        elif bulk_span.contains(vec):
            tag = "trivial"
        elif prim_span.contains(vec):
            tag = "primary"
        else:
            tag = "secondary"
        tagged.append(replace(op, tag=tag))
    return tagged


def gauge_violation_map(p: PauliVector, generators: list[GaugeOperator]) -> GaugeViolationRow:
    """Row of x^0 slices of dot(G_i, P): how P violates each generator's
    y-translate family."""
    entries = []
    for g in generators:
        if g.pauli.d != p.d or g.pauli.w != p.w:
            raise DimensionMismatch("generator and operator disagree on (d, w)")
        entries.append(x0_slice(dot(g.pauli, p)))
    return GaugeViolationRow(tuple(entries))
