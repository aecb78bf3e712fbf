"""Row reduction over Z_d with relation tracking, and Smith normal form.

The eliminator appends a synthetic d-row per column so gcd pivots absorb the
ring's zero divisors (Hermite-style echelon over Z_d).  Relation rows record
which combinations of *input* rows vanish mod d; synthetic rows carry zero
tracking since multiples of d are invisible mod d.

Everything follows one pinned schedule (smallest positive entry first, ties by
first index, batched floor subtraction) so repeated runs are bit-identical.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .zdarith import Modulus

DTYPE = np.int32


@dataclass
class MgeResult:
    """Echelon + tracking data of one elimination run.

    echelon: staircase rows spanning the input row space mod d (closed under
        the synthetic d-row lattice, so `in_span` is a complete membership
        test).
    relations: canonical generating set of left-null combinations of the
        input rows (each row r satisfies r @ input = 0 mod d).
    transform: transform @ input = echelon (mod d).
    pivots: list of (row, col, value) staircase pivots, in row order.
    """

    echelon: np.ndarray
    relations: np.ndarray
    transform: np.ndarray
    pivots: list[tuple[int, int, int]]
    d: int


def _eliminate(mat: np.ndarray, d: int, track: bool):
    """Shared core: returns (echelon, transform, pivots, relation_rows)."""
    n, m = mat.shape
    cap = n + m + 1
    W = np.zeros((cap, m), dtype=DTYPE)
    W[:n] = np.asarray(mat, dtype=DTYPE) % d
    T = np.zeros((cap, n), dtype=DTYPE) if track else None
    if track:
        T[:n] = np.eye(n, dtype=DTYPE)

    rows = n
    top = 0
    pivots: list[tuple[int, int, int]] = []
    relations: list[np.ndarray] = []

    for col in range(m):
        # Synthetic row d*e_col restores Z_d periodicity for this column.
        W[rows] = 0
        W[rows, col] = d
        if track:
            T[rows] = 0
        rows += 1

        touched = np.zeros(rows, dtype=bool)
        touched[rows - 1] = True
        while True:
            colvals = W[top:rows, col]
            nz = np.flatnonzero(colvals)
            if len(nz) <= 1:
                break
            s_rel = nz[int(np.argmin(colvals[nz]))]
            q = colvals // colvals[s_rel]
            q[s_rel] = 0
            upd = np.flatnonzero(q)
            if len(upd) == 0:
                break
            idx = top + upd
            W[idx] -= q[upd, None] * W[top + s_rel]
            # Reduce every column mod d except the active one, whose literal
            # integer values drive the gcd.
            keep = W[idx, col].copy()
            W[idx] %= d
            W[idx, col] = keep
            touched[idx] = True
            if track:
                T[idx] -= q[upd, None] * T[top + s_rel]
                T[idx] %= d

        colvals = W[top:rows, col]
        nz = np.flatnonzero(colvals)
        if len(nz) == 1:
            g = int(colvals[nz[0]]) % d
            if g != 0:
                src = top + int(nz[0])
                # Rotate the pivot row up to position `top`.
                if src != top:
                    Wp = W[src].copy()
                    W[top + 1 : src + 1] = W[top:src].copy()
                    W[top] = Wp
                    if track:
                        Tp = T[src].copy()
                        T[top + 1 : src + 1] = T[top:src].copy()
                        T[top] = Tp
                    t_src = touched[src]
                    touched[top + 1 : src + 1] = touched[top:src].copy()
                    touched[top] = t_src
                W[top, col] = g
                pivots.append((top, col, g))
                top += 1
            else:
                W[top:rows, col] %= d
        # Harvest rows that became zero (only touched rows can have); compact.
        cand = np.flatnonzero(touched[top:rows])
        if len(cand):
            zero_rel = cand[~W[top + cand].any(axis=1)]
            if len(zero_rel):
                if track:
                    for i in zero_rel:
                        trow = T[top + int(i)] % d
                        if trow.any():
                            relations.append(trow.copy())
                keep_mask = np.ones(rows - top, dtype=bool)
                keep_mask[zero_rel] = False
                keep_idx = np.flatnonzero(keep_mask)
                new_rows = top + len(keep_idx)
                W[top:new_rows] = W[top + keep_idx]
                if track:
                    T[top:new_rows] = T[top + keep_idx]
                rows = new_rows

    echelon = W[:top] % d
    transform = (T[:top] % d) if track else None
    return echelon, transform, pivots, relations


def mge(matrix, modulus: Modulus) -> MgeResult:
    """Modified Gaussian elimination with relation tracking over Z_d."""
    mat = np.atleast_2d(np.asarray(matrix, dtype=DTYPE))
    if mat.size == 0:
        raise ValueError("mge requires a nonempty matrix")
    d = modulus.d
    echelon, transform, pivots, rel_rows = _eliminate(mat, d, track=True)
    if rel_rows:
        raw = np.array(rel_rows, dtype=DTYPE) % d
        rel_ech, _, _, _ = _eliminate(raw, d, track=False)
        relations = rel_ech
    else:
        relations = np.zeros((0, mat.shape[0]), dtype=DTYPE)
    return MgeResult(echelon, relations, transform, pivots, d)


def echelon_only(matrix, modulus: Modulus) -> MgeResult:
    """Same elimination without relation tracking (faster, echelon + pivots)."""
    mat = np.atleast_2d(np.asarray(matrix, dtype=DTYPE))
    d = modulus.d
    echelon, _, pivots, _ = _eliminate(mat, d, track=False)
    return MgeResult(echelon, np.zeros((0, mat.shape[0]), dtype=DTYPE), None, pivots, d)


def in_span(v, basis: MgeResult):
    """Coefficients expressing v over basis.echelon rows, or None.

    Reduction against staircase pivots; a residual entry at a pivot column
    must be divisible by the pivot gcd, all other columns must cancel to 0.
    """
    d = basis.d
    vec = np.asarray(v, dtype=DTYPE).copy() % d
    if basis.echelon.shape[0] == 0:
        return np.zeros(0, dtype=DTYPE) if not vec.any() else None
    coeffs = np.zeros(basis.echelon.shape[0], dtype=DTYPE)
    for row, col, g in basis.pivots:
        r = int(vec[col])
        if r == 0:
            continue
        if r % g != 0:
            return None
        c = r // g
        vec = (vec - c * basis.echelon[row]) % d
        coeffs[row] = c % d
    if vec.any():
        return None
    return coeffs


class SpanTracker:
    """Incrementally grown row span with membership queries.

    Used for the generator de-duplication loops: start from a base matrix,
    test candidates, and absorb accepted ones (with their translates).
    """

    def __init__(self, modulus: Modulus, width: int, rows=None):
        self.modulus = modulus
        self.width = width
        if rows is None or len(rows) == 0:
            self._basis = MgeResult(
                np.zeros((0, width), dtype=DTYPE),
                np.zeros((0, 0), dtype=DTYPE),
                None,
                [],
                modulus.d,
            )
        else:
            self._basis = echelon_only(rows, modulus)

    def contains(self, v) -> bool:
        return in_span(v, self._basis) is not None

    def add(self, rows):
        rows = np.atleast_2d(np.asarray(rows, dtype=DTYPE))
        if rows.size == 0:
            return
        if self._basis.echelon.shape[0]:
            stacked = np.vstack([self._basis.echelon, rows])
        else:
            stacked = rows
        self._basis = echelon_only(stacked, self.modulus)

    @property
    def rank_rows(self) -> int:
        return self._basis.echelon.shape[0]


@dataclass
class SnfResult:
    """P @ M @ Q = A over Z with A diagonal, P and Q unimodular.

    Entries are exact Python integers; `qinv` caches Q^{-1} (also unimodular)
    since basis extraction needs it.
    """

    P: list[list[int]]
    A: list[list[int]]
    Q: list[list[int]]
    qinv: list[list[int]]
    det_q: int

    def diagonal(self) -> list[int]:
        return [self.A[i][i] for i in range(min(len(self.A), len(self.A[0]) if self.A else 0))]

    def nonunit_indices(self, modulus: Modulus) -> list[int]:
        """Indices i with A(i,i) not congruent to +-1 mod d."""
        d = modulus.d
        out = []
        for i, a in enumerate(self.diagonal()):
            if a % d != 1 and a % d != d - 1:
                out.append(i)
        return out

    def q_columns(self, indices: list[int]) -> list[list[int]]:
        return [[self.Q[r][i] for r in range(len(self.Q))] for i in indices]

    def qinv_rows(self, indices: list[int]) -> list[list[int]]:
        return [list(self.qinv[i]) for i in indices]


def smith_normal_form(matrix, modulus: Modulus | None = None) -> SnfResult:
    """Smith normal form over the integers, with full transform recovery.

    The modulus is only used by callers to reduce the reported diagonal; the
    computation itself is exact over Z so zero divisors never interfere.
    """
    M = [list(map(int, row)) for row in np.atleast_2d(np.asarray(matrix))]
    n = len(M)
    m = len(M[0]) if n else 0
    A = [row[:] for row in M]
    P = [[int(i == j) for j in range(n)] for i in range(n)]
    Q = [[int(i == j) for j in range(m)] for i in range(m)]
    Qi = [[int(i == j) for j in range(m)] for i in range(m)]
    det_q = 1

    def row_swap(i, j):
        A[i], A[j] = A[j], A[i]
        P[i], P[j] = P[j], P[i]

    def row_sub(i, j, c):
        # row_i -= c * row_j
        A[i] = [a - c * b for a, b in zip(A[i], A[j])]
        P[i] = [a - c * b for a, b in zip(P[i], P[j])]

    def row_neg(i):
        A[i] = [-a for a in A[i]]
        P[i] = [-a for a in P[i]]

    def col_swap(i, j):
        nonlocal det_q
        for r in range(n):
            A[r][i], A[r][j] = A[r][j], A[r][i]
        for r in range(m):
            Q[r][i], Q[r][j] = Q[r][j], Q[r][i]
        Qi[i], Qi[j] = Qi[j], Qi[i]
        det_q = -det_q

    def col_sub(j, i, c):
        # col_j -= c * col_i   (right-multiply by I - c e_{ij});
        # Q^{-1} picks up row_i += c * row_j.
        for r in range(n):
            A[r][j] -= c * A[r][i]
        for r in range(m):
            Q[r][j] -= c * Q[r][i]
        Qi[i] = [a + c * b for a, b in zip(Qi[i], Qi[j])]

    def col_neg(j):
        nonlocal det_q
        for r in range(n):
            A[r][j] = -A[r][j]
        for r in range(m):
            Q[r][j] = -Q[r][j]
        Qi[j] = [-a for a in Qi[j]]
        det_q = -det_q

    def find_pivot(t):
        best = None
        for i in range(t, n):
            for j in range(t, m):
                a = abs(A[i][j])
                if a and (best is None or a < best[0]):
                    best = (a, i, j)
        return best

    t = 0
    while t < min(n, m):
        best = find_pivot(t)
        if best is None:
            break
        _, bi, bj = best
        if bi != t:
            row_swap(t, bi)
        if bj != t:
            col_swap(t, bj)
        if A[t][t] < 0:
            row_neg(t)

        while True:
            # Clear column t.
            dirty = False
            for i in range(t + 1, n):
                if A[i][t]:
                    q = A[i][t] // A[t][t]
                    row_sub(i, t, q)
                    if A[i][t]:
                        row_swap(t, i)  # smaller remainder becomes the pivot
                        if A[t][t] < 0:
                            row_neg(t)
                        dirty = True
            if dirty:
                continue
            for j in range(t + 1, m):
                if A[t][j]:
                    q = A[t][j] // A[t][t]
                    col_sub(j, t, q)
                    if A[t][j]:
                        col_swap(t, j)
                        if A[t][t] < 0:
                            col_neg(t)
                        dirty = True
            if dirty:
                continue
            # Divisibility: pivot must divide every remaining entry.
            offender = None
            for i in range(t + 1, n):
                for j in range(t + 1, m):
                    if A[i][j] % A[t][t]:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            row_sub(t, offender, -1)  # add the offending row, then re-reduce
        t += 1

    return SnfResult(P, A, Q, Qi, det_q)
