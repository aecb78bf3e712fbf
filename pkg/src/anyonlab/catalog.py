"""Catalog of translation-invariant stabilizer codes, plus file I/O.

Slots within a unit cell carry a small geometric tag (an edge segment or a
site) used for two things: deriving smooth/rough truncation masks and drawing
operators.  Slot s in [0, w) is a qudit; Pauli slot indices in [0, 2w) mean
X on slot s for s < w and Z on slot s - w otherwise.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field

from .errors import ParseError, UnknownCode, ValidationError
from .paulipoly import LaurentPoly, PauliVector, dot
from .zdarith import Modulus


@dataclass(frozen=True)
class SlotGeometry:
    """Anchor segment of a slot inside the unit cell, in cell coordinates."""

    x0: float
    y0: float
    x1: float
    y1: float

    @property
    def x_extent(self) -> int:
        return int(round(abs(self.x1 - self.x0)))

    @property
    def y_extent(self) -> int:
        return int(round(abs(self.y1 - self.y0)))


H_EDGE = SlotGeometry(0.0, 0.0, 1.0, 0.0)
V_EDGE = SlotGeometry(0.0, 0.0, 0.0, 1.0)


def site(x: float, y: float) -> SlotGeometry:
    return SlotGeometry(x, y, x, y)


@dataclass(frozen=True)
class StabilizerCodeSpec:
    name: str
    modulus: Modulus
    w: int
    stabilizers: tuple[PauliVector, ...]
    gauge_constraints: tuple[PauliVector, ...] = ()
    slot_geometry: tuple[SlotGeometry, ...] = ()

    def __post_init__(self):
        if not self.slot_geometry:
            object.__setattr__(
                self, "slot_geometry", tuple(site(0.5, 0.5) for _ in range(self.w))
            )
        if len(self.slot_geometry) != self.w:
            raise ValidationError("slot_geometry length must equal w")

    @property
    def d(self) -> int:
        return self.modulus.d

    def all_terms(self) -> tuple[PauliVector, ...]:
        return self.stabilizers + self.gauge_constraints

    def to_json_dict(self) -> dict:
        return {
            "name": self.name,
            "d": self.d,
            "w": self.w,
            "stabilizers": [s.to_term_list() for s in self.stabilizers],
            "gauge_constraints": [g.to_term_list() for g in self.gauge_constraints],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True, indent=2)


@dataclass(frozen=True)
class TruncationGeometry:
    """Half-plane truncation: which side survives and which slots remain on
    the boundary column.

    boundary_style: "smooth" keeps only slots that do not poke across the cut
    (zero x-extent), "rough" keeps every slot of the boundary column, or an
    explicit per-slot boolean mask.
    """

    side: str = "left"
    pauli_window: tuple[int, int, int, int] = (-6, 0, -8, 8)
    stabilizer_window: tuple[int, int, int, int] = (-10, 0, -12, 12)
    boundary_style: str | tuple[bool, ...] = "smooth"

    def mask_for(self, spec: StabilizerCodeSpec) -> tuple[bool, ...]:
        if isinstance(self.boundary_style, tuple):
            if len(self.boundary_style) != spec.w:
                raise ValidationError("boundary mask length must equal w")
            return self.boundary_style
        if self.boundary_style == "smooth":
            if self.side == "left":
                return tuple(g.x_extent == 0 for g in spec.slot_geometry)
            return tuple(g.x_extent == 0 for g in spec.slot_geometry)
        if self.boundary_style == "rough":
            return tuple(True for _ in range(spec.w))
        raise ValidationError(f"unknown boundary style {self.boundary_style!r}")

    def to_json_dict(self) -> dict:
        style = (
            list(self.boundary_style)
            if isinstance(self.boundary_style, tuple)
            else self.boundary_style
        )
        return {
            "side": self.side,
            "pauli_window": list(self.pauli_window),
            "stabilizer_window": list(self.stabilizer_window),
            "boundary_style": style,
        }


def _pv(d, w, xpolys=None, zpolys=None) -> PauliVector:
    xs = [LaurentPoly(p, d) for p in (xpolys or [{}] * w)]
    zs = [LaurentPoly(p, d) for p in (zpolys or [{}] * w)]
    return PauliVector(d, w, xs, zs)


def _toric(name: str, d: int) -> StabilizerCodeSpec:
    s1 = _pv(d, 2, xpolys=[{(0, 0): 1, (-1, 0): -1}, {(0, 0): 1, (0, -1): -1}])
    s2 = _pv(d, 2, zpolys=[{(0, 0): 1, (0, 1): -1}, {(0, 0): -1, (1, 0): 1}])
    return StabilizerCodeSpec(
        name, Modulus(d), 2, (s1, s2), slot_geometry=(H_EDGE, V_EDGE)
    )


def _trivial(d: int = 2) -> StabilizerCodeSpec:
    s1 = _pv(d, 2, xpolys=[{(0, 0): 1}, {}])
    s2 = _pv(d, 2, xpolys=[{}, {(0, 0): 1}])
    return StabilizerCodeSpec(
        "trivial", Modulus(d), 2, (s1, s2), slot_geometry=(H_EDGE, V_EDGE)
    )


def _fish_toric() -> StabilizerCodeSpec:
    """Z2 toric code conjugated by a finite-depth Clifford layer.

    The vertex term picks up Z legs (a symplectic dressing with B = B^dagger),
    which makes the smooth boundary exhibit secondary gauge operators while
    leaving all bulk topological data untouched.
    """
    d = 2
    s1 = _pv(
        d,
        2,
        xpolys=[{(0, 0): 1, (-1, 0): 1}, {(0, 0): 1, (0, -1): 1}],
        zpolys=[{(0, 0): 1, (0, -1): 1}, {(0, 0): 1, (-1, 0): 1}],
    )
    s2 = _pv(d, 2, zpolys=[{(0, 0): 1, (0, 1): 1}, {(0, 0): 1, (1, 0): 1}])
    return StabilizerCodeSpec(
        "fish_toric", Modulus(d), 2, (s1, s2), slot_geometry=(H_EDGE, V_EDGE)
    )


def _double_semion() -> StabilizerCodeSpec:
    """Z4 double semion: condense the e^2 m^2 boson of the Z4 toric code.

    Generators: the dressed vertex term (toric vertex times a shifted flux)
    and the short e^2 m^2 hopping string; both commute identically.
    """
    d = 4
    vertex = _pv(
        d,
        2,
        xpolys=[{(0, 0): 1, (-1, 0): -1}, {(0, 0): 1, (0, -1): -1}],
        zpolys=[{(-1, 0): 1, (-1, 1): -1}, {(0, 0): 1, (-1, 0): -1}],
    )
    hopper = _pv(d, 2, xpolys=[{}, {(0, 0): 2}], zpolys=[{(0, 0): 2}, {}])
    return StabilizerCodeSpec(
        "double_semion", Modulus(d), 2, (vertex, hopper), slot_geometry=(H_EDGE, V_EDGE)
    )


def _color_code() -> StabilizerCodeSpec:
    """6.6.6 color code; honeycomb embedded in the square cell lattice.

    Unit cell holds two honeycomb vertices.  The hexagon through the cell
    touches slots {1, x, y} of vertex 1 and {1, y, x^-1 y} of vertex 2; X- and
    Z-type face terms share that support.
    """
    d = 2
    f1 = {(0, 0): 1, (1, 0): 1, (0, 1): 1}
    f2 = {(0, 0): 1, (0, 1): 1, (-1, 1): 1}
    s1 = _pv(d, 2, xpolys=[f1, f2])
    s2 = _pv(d, 2, zpolys=[f1, f2])
    return StabilizerCodeSpec(
        "color_code",
        Modulus(d),
        2,
        (s1, s2),
        slot_geometry=(site(0.25, 0.5), site(0.75, 0.5)),
    )


def _bb(a: int, b: int, shifted: bool) -> StabilizerCodeSpec:
    d = 2
    f = {(1, 0): 1, (2, 0): 1, (0, b): 1}
    g = {(0, 1): 1, (0, 2): 1, (a, 0): 1}
    if shifted:
        f = {(i, j + 2): c for (i, j), c in f.items()}
        g = {(i + 2, j): c for (i, j), c in g.items()}
    fbar = {(-i, -j): c for (i, j), c in f.items()}
    gbar = {(-i, -j): c for (i, j), c in g.items()}
    s1 = _pv(d, 2, xpolys=[f, g])
    s2 = _pv(d, 2, zpolys=[gbar, fbar])
    name = f"bb_shifted({a},{b})" if shifted else f"bb({a},{b})"
    return StabilizerCodeSpec(
        name,
        Modulus(d),
        2,
        (s1, s2),
        slot_geometry=(site(0.3, 0.3), site(0.7, 0.7)),
    )


_BB_RE = re.compile(r"^(bb|bb_shifted)\((-?\d+),(-?\d+)\)$")


def builtin(name: str) -> StabilizerCodeSpec:
    """Catalog lookup: z2_toric, fish_toric, z4_toric, double_semion,
    six_semion, color_code, three_fermion, trivial, bb(a,b), bb_shifted(a,b)."""
    m = _BB_RE.match(name.replace(" ", ""))
    if m:
        kind, a, b = m.group(1), int(m.group(2)), int(m.group(3))
        spec = _bb(a, b, shifted=(kind == "bb_shifted"))
    else:
        factories = {
            "z2_toric": lambda: _toric("z2_toric", 2),
            "z4_toric": lambda: _toric("z4_toric", 4),
            "fish_toric": _fish_toric,
            "double_semion": _double_semion,
            "six_semion": _six_semion,
            "color_code": _color_code,
            "three_fermion": _three_fermion,
            "trivial": _trivial,
        }
        if name not in factories:
            raise UnknownCode(f"no catalog entry named {name!r}")
        spec = factories[name]()
    violations = validate(spec)
    if violations:
        raise ValidationError(f"catalog code {name} failed validation: {violations[:3]}")
    return spec


def catalog_names() -> list[str]:
    return [
        "z2_toric",
        "fish_toric",
        "z4_toric",
        "double_semion",
        "six_semion",
        "color_code",
        "three_fermion",
        "trivial",
        "bb(3,3)",
        "bb_shifted(3,3)",
        "bb(2,-3)",
    ]


def validate(spec: StabilizerCodeSpec) -> list[dict]:
    """All pairwise dot products of generators and constraints must vanish
    identically as polynomials.  Violations are returned as data."""
    terms = list(spec.stabilizers) + list(spec.gauge_constraints)
    labels = [f"S{i+1}" for i in range(len(spec.stabilizers))] + [
        f"G{i+1}" for i in range(len(spec.gauge_constraints))
    ]
    out = []
    for i in range(len(terms)):
        for j in range(i, len(terms)):
            p = dot(terms[i], terms[j])
            if not p.is_zero():
                (a, b), c = p.items_sorted()[0]
                out.append(
                    {
                        "pair": [labels[i], labels[j]],
                        "monomial": [a, b],
                        "value": c,
                    }
                )
    return out


def _terms_to_pauli(terms, d: int, w: int, where: str) -> PauliVector:
    v = PauliVector.zero(d, w)
    for t in terms:
        if not isinstance(t, dict) or set(t) - {"slot", "monomial", "coeff"}:
            raise ParseError(f"{where}: malformed term {t!r}")
        slot, (a, b), coeff = t["slot"], t["monomial"], t["coeff"]
        if not 0 <= slot < 2 * w:
            raise ValidationError(f"{where}: slot {slot} outside [0, {2*w})")
        if not 1 <= coeff < d:
            raise ValidationError(f"{where}: coefficient {coeff} outside [1, {d})")
        v = v.add(PauliVector.single(d, w, slot, a, b, coeff))
    return v


def parse_code_file(text: bytes | str) -> StabilizerCodeSpec:
    """Parse and fully validate a JSON code file (schema in the README)."""
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"not valid UTF-8: {exc}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(str(exc), line=exc.lineno, column=exc.colno) from None
    if not isinstance(doc, dict):
        raise ParseError("top level must be a JSON object")
    try:
        d = int(doc["d"])
        w = int(doc["w"])
        stab_terms = doc["stabilizers"]
    except KeyError as exc:
        raise ParseError(f"missing required key {exc}") from None
    if d < 2:
        raise ValidationError("d must be >= 2")
    if w < 1:
        raise ValidationError("w must be >= 1")
    stabs = tuple(
        _terms_to_pauli(t, d, w, f"stabilizers[{i}]") for i, t in enumerate(stab_terms)
    )
    constraints = tuple(
        _terms_to_pauli(t, d, w, f"gauge_constraints[{i}]")
        for i, t in enumerate(doc.get("gauge_constraints", []))
    )
    spec = StabilizerCodeSpec(
        str(doc.get("name", "user_code")), Modulus(d), w, stabs, constraints
    )
    violations = validate(spec)
    if violations:
        v = violations[0]
        raise ValidationError(
            f"generators {v['pair'][0]} and {v['pair'][1]} fail to commute "
            f"at monomial x^{v['monomial'][0]} y^{v['monomial'][1]} "
            f"(exponent {v['value']}); {len(violations)} violation(s) total"
        )
    return spec


def parse_geometry_file(text: bytes | str) -> TruncationGeometry:
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(str(exc), line=exc.lineno, column=exc.colno) from None
    style = doc.get("boundary_style", "smooth")
    if isinstance(style, list):
        style = tuple(bool(s) for s in style)
    return TruncationGeometry(
        side=doc.get("side", "left"),
        pauli_window=tuple(doc.get("pauli_window", (-6, 0, -8, 8))),
        stabilizer_window=tuple(doc.get("stabilizer_window", (-10, 0, -12, 12))),
        boundary_style=style,
    )


def _six_semion() -> StabilizerCodeSpec:
    raise UnknownCode("six_semion pending derivation")


def _three_fermion() -> StabilizerCodeSpec:
    raise UnknownCode("three_fermion pending derivation")
