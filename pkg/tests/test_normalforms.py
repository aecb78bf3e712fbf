"""Tests for modified Gaussian elimination and Smith normal form."""

import itertools
import random

import numpy as np
import pytest

from anyonlab.normalforms import (
    SpanTracker,
    echelon_only,
    in_span,
    mge,
    smith_normal_form,
)
from anyonlab.zdarith import Modulus


def brute_force_left_kernel(M, d):
    """All rows r with r @ M = 0 mod d, by exhaustive enumeration."""
    n = M.shape[0]
    out = []
    for combo in itertools.product(range(d), repeat=n):
        r = np.array(combo)
        if not ((r @ M) % d).any():
            out.append(r)
    return np.array(out)


def spans_equal(rows_a, rows_b, d, width):
    mod = Modulus(d)
    a = SpanTracker(mod, width, rows_a if len(rows_a) else None)
    b = SpanTracker(mod, width, rows_b if len(rows_b) else None)
    return all(a.contains(r) for r in rows_b) and all(b.contains(r) for r in rows_a)


def test_appendix_worked_example_z8():
    A = np.array([[4, 2, 0], [6, 0, 3], [0, 7, 4]])
    res = mge(A, Modulus(8))
    # Every relation annihilates the input.
    assert not ((res.relations @ A) % 8).any()
    # The relation lattice equals <2v1 + 4v3, 4v1> as a Z_8-module.
    target = np.array([[2, 0, 4], [4, 0, 0]])
    assert spans_equal(res.relations, target, 8, 3)


def test_identity_has_no_relations():
    for d in (2, 4, 9):
        res = mge(np.eye(4, dtype=int), Modulus(d))
        assert res.relations.shape[0] == 0


def test_random_relations_sound_and_complete_z6():
    rng = np.random.default_rng(42)
    M = rng.integers(0, 6, size=(4, 6))
    res = mge(M, Modulus(6))
    assert not ((res.relations @ M) % 6).any()
    kernel = brute_force_left_kernel(M, 6)
    nonzero_kernel = kernel[kernel.any(axis=1)]
    assert spans_equal(res.relations, nonzero_kernel, 6, 4)


def test_transform_reproduces_echelon():
    rng = np.random.default_rng(7)
    for d in (2, 4, 6, 8):
        M = rng.integers(0, d, size=(5, 7))
        res = mge(M, Modulus(d))
        assert np.array_equal((res.transform @ M) % d, res.echelon % d)


def test_echelon_reproducibility():
    rng = np.random.default_rng(3)
    M = rng.integers(0, 8, size=(6, 9))
    first = mge(M, Modulus(8))
    for _ in range(3):
        again = mge(M, Modulus(8))
        assert np.array_equal(first.echelon, again.echelon)
        assert np.array_equal(first.relations, again.relations)
        assert np.array_equal(first.transform, again.transform)


def test_relation_completeness_exhaustive_small():
    """Exhaustive over all 2x2 matrices mod 4 and mod 6, and all 2x3 mod 4."""
    for d, shape in [(4, (2, 2)), (6, (2, 2)), (4, (2, 3))]:
        cells = shape[0] * shape[1]
        for flat in itertools.product(range(d), repeat=cells):
            M = np.array(flat).reshape(shape)
            res = mge(M, Modulus(d))
            assert not ((res.relations @ M) % d).any()
            kernel = brute_force_left_kernel(M, d)
            nonzero = kernel[kernel.any(axis=1)]
            assert spans_equal(res.relations, nonzero, d, shape[0]), M


def test_in_span_constructed_membership():
    rng = np.random.default_rng(19)
    M = rng.integers(0, 8, size=(4, 6))
    res = mge(M, Modulus(8))
    if res.echelon.shape[0] >= 3:
        v = (2 * res.echelon[0] + 3 * res.echelon[2]) % 8
        coeffs = in_span(v, res)
        assert coeffs is not None
        assert np.array_equal((coeffs @ res.echelon) % 8, v)


def test_in_span_zero_divisor_pivot():
    # Echelon row [2, 1] over Z_4: [0, 2] is 2*row, but [1, 0] is not in the
    # span (exhaustive oracle).
    M = np.array([[2, 1]])
    res = mge(M, Modulus(4))
    reachable = {tuple((c * np.array([2, 1])) % 4) for c in range(4)}
    assert (0, 2) in reachable
    assert in_span(np.array([0, 2]), res) is not None
    assert all(t[0] != 1 for t in reachable)
    assert in_span(np.array([1, 0]), res) is None


def test_in_span_zero_vector():
    res = mge(np.array([[1, 2], [0, 3]]), Modulus(4))
    coeffs = in_span(np.zeros(2, dtype=int), res)
    assert coeffs is not None
    assert not coeffs.any()


def test_in_span_exhaustive_agreement():
    rng = np.random.default_rng(23)
    for d in (4, 6):
        M = rng.integers(0, d, size=(3, 4))
        res = mge(M, Modulus(d))
        reachable = set()
        for combo in itertools.product(range(d), repeat=3):
            reachable.add(tuple((np.array(combo) @ M) % d))
        for probe in itertools.product(range(d), repeat=4):
            got = in_span(np.array(probe), res)
            assert (got is not None) == (probe in reachable), (d, M, probe)
            if got is not None:
                assert np.array_equal((got @ res.echelon) % d, np.array(probe))


def test_snf_already_diagonal():
    res = smith_normal_form(np.diag([1, 2, 4]))
    assert res.diagonal() == [1, 2, 4]
    assert res.nonunit_indices(Modulus(8)) == [1, 2]


def test_snf_with_zero_row():
    res = smith_normal_form(np.array([[2, 0], [0, 0]]))
    assert res.diagonal() == [2, 0]
    assert res.nonunit_indices(Modulus(4)) == [0, 1]


def test_snf_random_verification():
    import sympy

    rng = np.random.default_rng(31)
    for _ in range(25):
        n, m = rng.integers(1, 5), rng.integers(1, 5)
        M = rng.integers(-6, 12, size=(n, m))
        res = smith_normal_form(M)
        P = np.array(res.P, dtype=object)
        A = np.array(res.A, dtype=object)
        Q = np.array(res.Q, dtype=object)
        Qi = np.array(res.qinv, dtype=object)
        assert np.array_equal(P @ M @ Q, A)
        # A diagonal with divisibility chain.
        for i in range(n):
            for j in range(m):
                if i != j:
                    assert A[i][j] == 0
        diag = res.diagonal()
        for a, b in zip(diag, diag[1:]):
            if a:
                assert b % a == 0
        # Q unimodular and qinv correct.
        assert abs(sympy.Matrix(Q.tolist()).det()) == 1
        assert np.array_equal(Q @ Qi, np.eye(m, dtype=object))
        assert res.det_q in (-1, 1)


def test_snf_mod_d_consistency_z12():
    rng = np.random.default_rng(37)
    for _ in range(10):
        M = rng.integers(0, 12, size=(3, 3))
        res = smith_normal_form(M)
        P = np.array(res.P, dtype=object)
        Q = np.array(res.Q, dtype=object)
        A = np.array(res.A, dtype=object)
        assert np.array_equal((P @ M @ Q) % 12, A % 12)


def test_span_tracker_growth():
    mod = Modulus(4)
    tracker = SpanTracker(mod, 3)
    assert not tracker.contains([1, 0, 0])
    tracker.add(np.array([[2, 0, 0]]))
    assert tracker.contains([2, 0, 0])
    assert not tracker.contains([1, 0, 0])
    tracker.add(np.array([[1, 1, 0]]))
    assert tracker.contains([3, 1, 0])
