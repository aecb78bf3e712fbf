"""Laurent-polynomial representation of translation-invariant Pauli operators.

A Pauli operator modulo phase is a length-2w column of Laurent polynomials in
x, y over Z_d: X-block on top, Z-block below.  Commutation is read off the
symplectic dot product; a finite window turns polynomial data into flat Z_d
coefficient vectors for the elimination engine.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, WindowOverflow


class LaurentPoly:
    """Laurent polynomial over Z_d in x, y: map (a, b) -> coefficient.

    Immutable by convention; no zero coefficients are ever stored.  The
    modulus is carried by the caller (PauliVector / code spec), not the poly.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None, d=None):
        t = {}
        if terms:
            for (a, b), c in dict(terms).items():
                c = c % d if d is not None else c
                if c:
                    t[(int(a), int(b))] = int(c)
        self.terms = t

    @staticmethod
    def zero() -> "LaurentPoly":
        return LaurentPoly()

    @staticmethod
    def monomial(a: int, b: int, coeff: int = 1) -> "LaurentPoly":
        return LaurentPoly({(a, b): coeff})

    @staticmethod
    def constant(c: int) -> "LaurentPoly":
        return LaurentPoly({(0, 0): c})

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, a: int, b: int) -> int:
        return self.terms.get((a, b), 0)

    def constant_term(self) -> int:
        return self.terms.get((0, 0), 0)

    def add(self, other: "LaurentPoly", d: int) -> "LaurentPoly":
        t = dict(self.terms)
        for k, c in other.terms.items():
            t[k] = t.get(k, 0) + c
        return LaurentPoly(t, d)

    def scale(self, c: int, d: int) -> "LaurentPoly":
        return LaurentPoly({k: v * c for k, v in self.terms.items()}, d)

    def shift(self, a: int, b: int) -> "LaurentPoly":
        """Multiply by the monomial x^a y^b."""
        return LaurentPoly({(i + a, j + b): c for (i, j), c in self.terms.items()})

    def mul(self, other: "LaurentPoly", d: int) -> "LaurentPoly":
        t: dict = {}
        for (i, j), c in self.terms.items():
            for (a, b), e in other.terms.items():
                k = (i + a, j + b)
                t[k] = t.get(k, 0) + c * e
        return LaurentPoly(t, d)

    def items_sorted(self):
        """Deterministic iteration order: by (b, a)."""
        return sorted(self.terms.items(), key=lambda kv: (kv[0][1], kv[0][0]))

    def to_triples(self) -> list[list[int]]:
        """Wire format: [a, b, coeff] triples sorted lexicographically."""
        return [[a, b, c] for (a, b), c in sorted(self.terms.items())]

    @staticmethod
    def from_triples(triples, d: int) -> "LaurentPoly":
        return LaurentPoly({(a, b): c for a, b, c in triples}, d)

    def support_bounds(self):
        """((min_a, max_a), (min_b, max_b)) or None for the zero polynomial."""
        if not self.terms:
            return None
        xs = [a for a, _ in self.terms]
        ys = [b for _, b in self.terms]
        return (min(xs), max(xs)), (min(ys), max(ys))

    def __eq__(self, other):
        return isinstance(other, LaurentPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for (a, b), c in sorted(self.terms.items()):
            mono = ""
            if a:
                mono += f"x^{a}" if a != 1 else "x"
            if b:
                mono += f"y^{b}" if b != 1 else "y"
            bits.append(f"{c}{mono}" if (c != 1 or not mono) else mono)
        return " + ".join(bits)


def antipode(p: LaurentPoly) -> LaurentPoly:
    """x^a y^b -> x^-a y^-b with coefficients unchanged."""
    return LaurentPoly({(-a, -b): c for (a, b), c in p.terms.items()})


@dataclass(frozen=True)
class PhaseExponent:
    """Exponent e of omega = exp(2*pi*i/d); the phase is omega**e."""

    e: int
    d: int

    def __post_init__(self):
        object.__setattr__(self, "e", self.e % self.d)

    def phase_label(self) -> str:
        # Human-readable value for reports: 1, -1, i, -i or omega^e.
        table = {0: "1"}
        if self.d % 2 == 0:
            table[self.d // 2] = "-1"
        if self.d % 4 == 0:
            table[self.d // 4] = "i"
            table[3 * self.d // 4] = "-i"
        return table.get(self.e, f"w^{self.e}")


@dataclass(frozen=True)
class SymplecticForm:
    """Implicit 2w x 2w matrix [[0, I_w], [-I_w, 0]] over Z_d."""

    w: int

    def matrix(self, d: int) -> np.ndarray:
        lam = np.zeros((2 * self.w, 2 * self.w), dtype=np.int64)
        lam[: self.w, self.w :] = np.eye(self.w, dtype=np.int64)
        lam[self.w :, : self.w] = (-np.eye(self.w, dtype=np.int64)) % d
        return lam


class PauliVector:
    """Length-2w vector of Laurent polynomials: X-block on top, Z-block below."""

    __slots__ = ("d", "w", "xblock", "zblock")

    def __init__(self, d: int, w: int, xblock=None, zblock=None):
        self.d = d
        self.w = w
        self.xblock = tuple(xblock) if xblock else tuple(LaurentPoly() for _ in range(w))
        self.zblock = tuple(zblock) if zblock else tuple(LaurentPoly() for _ in range(w))
        if len(self.xblock) != w or len(self.zblock) != w:
            raise DimensionMismatch("block length must equal w")

    @staticmethod
    def zero(d: int, w: int) -> "PauliVector":
        return PauliVector(d, w)

    @staticmethod
    def single(d: int, w: int, slot: int, a: int = 0, b: int = 0, coeff: int = 1) -> "PauliVector":
        """Single Pauli on one slot: slot < w is X-type, slot >= w is Z-type."""
        xs = [LaurentPoly() for _ in range(w)]
        zs = [LaurentPoly() for _ in range(w)]
        if slot < w:
            xs[slot] = LaurentPoly.monomial(a, b, coeff % d)
        else:
            zs[slot - w] = LaurentPoly.monomial(a, b, coeff % d)
        return PauliVector(d, w, xs, zs)

    def slot(self, s: int) -> LaurentPoly:
        return self.xblock[s] if s < self.w else self.zblock[s - self.w]

    def slots(self):
        return list(self.xblock) + list(self.zblock)

    def is_zero(self) -> bool:
        return all(p.is_zero() for p in self.slots())

    def add(self, other: "PauliVector") -> "PauliVector":
        self._check(other)
        return PauliVector(
            self.d,
            self.w,
            [a.add(b, self.d) for a, b in zip(self.xblock, other.xblock)],
            [a.add(b, self.d) for a, b in zip(self.zblock, other.zblock)],
        )

    def scale(self, c: int) -> "PauliVector":
        return PauliVector(
            self.d,
            self.w,
            [p.scale(c, self.d) for p in self.xblock],
            [p.scale(c, self.d) for p in self.zblock],
        )

    def shift(self, a: int, b: int) -> "PauliVector":
        return PauliVector(
            self.d,
            self.w,
            [p.shift(a, b) for p in self.xblock],
            [p.shift(a, b) for p in self.zblock],
        )

    def mul_poly(self, poly: LaurentPoly) -> "PauliVector":
        return PauliVector(
            self.d,
            self.w,
            [p.mul(poly, self.d) for p in self.xblock],
            [p.mul(poly, self.d) for p in self.zblock],
        )

    def support_bounds(self):
        bounds = [p.support_bounds() for p in self.slots()]
        bounds = [b for b in bounds if b is not None]
        if not bounds:
            return None
        return (
            (min(b[0][0] for b in bounds), max(b[0][1] for b in bounds)),
            (min(b[1][0] for b in bounds), max(b[1][1] for b in bounds)),
        )

    def support_sites(self):
        """Sorted list of (slot, a, b, coeff) over all nonzero monomials."""
        out = []
        for s, p in enumerate(self.slots()):
            for (a, b), c in p.terms.items():
                out.append((s, a, b, c))
        return sorted(out)

    def to_term_list(self) -> list[dict]:
        """Wire format used by code files and reports."""
        return [
            {"slot": s, "monomial": [a, b], "coeff": c}
            for (s, a, b, c) in self.support_sites()
        ]

    def _check(self, other: "PauliVector"):
        if self.d != other.d or self.w != other.w:
            raise DimensionMismatch(
                f"(d={self.d}, w={self.w}) vs (d={other.d}, w={other.w})"
            )

    def __eq__(self, other):
        return (
            isinstance(other, PauliVector)
            and self.d == other.d
            and self.w == other.w
            and self.xblock == other.xblock
            and self.zblock == other.zblock
        )

    def __hash__(self):
        return hash((self.d, self.w, self.xblock, self.zblock))

    def __repr__(self):
        return f"PauliVector(d={self.d}, w={self.w}, X={list(self.xblock)}, Z={list(self.zblock)})"


def dot(v1: PauliVector, v2: PauliVector) -> LaurentPoly:
    """Commutation polynomial conj(v1)^T Lambda v2.

    The coefficient at x^a y^b is the commutation exponent between the
    (a, b)-translate of v1 and v2; the constant term is the phase exponent of
    the untranslated pair.
    """
    v1._check(v2)
    d = v1.d
    acc = LaurentPoly()
    for i in range(v1.w):
        acc = acc.add(antipode(v1.xblock[i]).mul(v2.zblock[i], d), d)
        acc = acc.add(antipode(v1.zblock[i]).mul(v2.xblock[i], d).scale(d - 1, d), d)
    return acc


def commutation_exponent(v1: PauliVector, v2: PauliVector) -> int:
    """Constant term of dot(v1, v2): the phase exponent of [V1, V2]."""
    d = v1.d
    acc = 0
    for i in range(v1.w):
        for (a, b), c in v1.xblock[i].terms.items():
            acc += c * v2.zblock[i].coefficient(a, b)
        for (a, b), c in v1.zblock[i].terms.items():
            acc -= c * v2.xblock[i].coefficient(a, b)
    return acc % d


def excitation_map(p: PauliVector, stabilizers: list[PauliVector]) -> list[LaurentPoly]:
    """Component i is dot(stabilizers[i], p); all-zero iff p commutes with
    every translate of every stabilizer."""
    return [dot(s, p) for s in stabilizers]


def x0_slice(p: LaurentPoly) -> dict[int, int]:
    """The x^0 part of a polynomial, as a map b -> coefficient (poly in y)."""
    return {b: c for (a, b), c in p.terms.items() if a == 0}


@dataclass
class CoefficientVector:
    """Window-truncated flat Z_d form of a PauliVector.

    Layout (public contract): index(s, a, b) = s*(2k+1)^2 + (b+k)*(2k+1) + (a+k)
    for slot s in [0, 2w), a, b in [-k, k].
    """

    d: int
    w: int
    k: int
    data: np.ndarray

    @staticmethod
    def index(s: int, a: int, b: int, k: int) -> int:
        side = 2 * k + 1
        return s * side * side + (b + k) * side + (a + k)


def truncate(p: PauliVector, k: int) -> CoefficientVector:
    """Flatten p into the window [-k, k]^2; raises WindowOverflow rather than
    ever dropping a monomial."""
    side = 2 * k + 1
    data = np.zeros(2 * p.w * side * side, dtype=np.int16)
    for s, poly in enumerate(p.slots()):
        for (a, b), c in poly.terms.items():
            if not (-k <= a <= k and -k <= b <= k):
                raise WindowOverflow(
                    f"monomial x^{a} y^{b} in slot {s} exceeds window k={k}"
                )
            data[CoefficientVector.index(s, a, b, k)] = c % p.d
    return CoefficientVector(p.d, p.w, k, data)


def untruncate(cv: CoefficientVector) -> PauliVector:
    """Inverse of truncate on its window (bijection for in-window vectors)."""
    side = 2 * cv.k + 1
    slots = []
    for s in range(2 * cv.w):
        block = cv.data[s * side * side : (s + 1) * side * side]
        terms = {}
        for idx in np.flatnonzero(block):
            b, a = divmod(int(idx), side)
            terms[(a - cv.k, b - cv.k)] = int(block[idx])
        slots.append(LaurentPoly(terms, cv.d))
    return PauliVector(cv.d, cv.w, slots[: cv.w], slots[cv.w :])


def translational_duplicates(row: list[LaurentPoly], m_x: int, m_y: int, d: int) -> list[list[LaurentPoly]]:
    """All translates x^a y^b * row for a in [-m_x, m_x], b in [-m_y, m_y].

    Row order is part of the contract: y ascending outer, x ascending inner
    (x fastest).
    """
    if m_x < 0 or m_y < 0:
        raise ValueError("translation ranges must be nonnegative")
    out = []
    for b in range(-m_y, m_y + 1):
        for a in range(-m_x, m_x + 1):
            out.append([p.shift(a, b) for p in row])
    return out
