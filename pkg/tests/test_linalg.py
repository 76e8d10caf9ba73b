import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from povmforge.linalg import (
    Rng,
    fro_norm,
    haar_unitary,
    herm_eigs,
    op_norm,
    partial_trace_ancilla,
    tensor,
)


def rand_herm(rng, n):
    a = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return (a + a.conj().T) / 2


def test_tensor_identity():
    assert np.array_equal(tensor(np.eye(2), np.eye(2)), np.eye(4))


def test_tensor_basis_projectors():
    p0 = np.diag([1.0, 0.0])
    p1 = np.diag([0.0, 1.0])
    assert np.array_equal(tensor(p0, p1), np.diag([0.0, 1.0, 0.0, 0.0]))


def test_tensor_index_formula():
    rng = np.random.default_rng(11)
    a = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
    b = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
    t = tensor(a, b)
    for i in range(2):
        for j in range(2):
            for k in range(3):
                for l in range(3):
                    assert t[3 * i + k, 3 * j + l] == pytest.approx(a[i, j] * b[k, l])


@settings(max_examples=25, deadline=None)
@given(st.integers(1, 3), st.integers(1, 3), st.integers(1, 3), st.integers(0, 2 ** 31))
def test_tensor_associative(da, db, dc, seed):
    rng = np.random.default_rng(seed)
    a, b, c = (rand_herm(rng, d) for d in (da, db, dc))
    lhs = tensor(tensor(a, b), c)
    rhs = tensor(a, tensor(b, c))
    assert np.abs(lhs - rhs).max() <= 1e-12


def test_partial_trace_product_state():
    rng = np.random.default_rng(3)
    rho = rand_herm(rng, 3)
    sigma = rand_herm(rng, 4)
    out = partial_trace_ancilla(tensor(rho, sigma), 3, 4)
    assert np.abs(out - np.trace(sigma) * rho).max() <= 1e-12


def test_partial_trace_identity():
    assert np.abs(partial_trace_ancilla(np.eye(6), 2, 3) - 3 * np.eye(2)).max() == 0


def test_partial_trace_matches_index_sum():
    rng = np.random.default_rng(5)
    m = rand_herm(rng, 4)
    out = partial_trace_ancilla(m, 2, 2)
    expect = np.zeros((2, 2), dtype=complex)
    for i in range(2):
        for j in range(2):
            for a in range(2):
                expect[i, j] += m[i * 2 + a, j * 2 + a]
    assert np.abs(out - expect).max() <= 1e-14


def test_partial_trace_preserves_trace():
    rng = np.random.default_rng(6)
    m = rand_herm(rng, 12)
    out = partial_trace_ancilla(m, 3, 4)
    assert abs(np.trace(out) - np.trace(m)) <= 1e-12


def test_partial_trace_shape_error():
    with pytest.raises(ValueError):
        partial_trace_ancilla(np.eye(5), 2, 2)


def test_herm_eigs_diagonal():
    assert np.allclose(herm_eigs(np.diag([3.0, 1.0, 2.0])), [1, 2, 3])


def test_herm_eigs_flip():
    assert np.allclose(herm_eigs(np.array([[0.0, 1.0], [1.0, 0.0]])), [-1, 1])


def test_herm_eigs_conjugation_invariant():
    rng = np.random.default_rng(9)
    m = rand_herm(rng, 5)
    u = haar_unitary(5, Rng(9))
    before = herm_eigs(m)
    after = herm_eigs(u @ m @ u.conj().T)
    assert np.abs(before - after).max() <= 1e-9


def test_herm_eigs_rejects_nonhermitian():
    with pytest.raises(ValueError):
        herm_eigs(np.array([[0.0, 1.0], [0.0, 0.0]]))


def test_projector_spectrum():
    v = np.array([1.0, 1j]) / np.sqrt(2)
    proj = np.outer(v, v.conj())
    vals = herm_eigs(proj)
    assert all(min(abs(x), abs(x - 1)) <= 1e-9 for x in vals)


def test_op_norm_cases():
    assert op_norm(np.eye(4)) == pytest.approx(1.0)
    assert op_norm(np.diag([-2.0, 1.0])) == pytest.approx(2.0)


def test_op_norm_below_fro():
    rng = np.random.default_rng(13)
    for _ in range(100):
        m = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
        assert op_norm(m) <= fro_norm(m) + 1e-12


def test_fro_norm_cases():
    assert fro_norm(np.eye(2)) == pytest.approx(np.sqrt(2))
    assert fro_norm(np.zeros((3, 3))) == 0.0
    rng = np.random.default_rng(17)
    u = rng.standard_normal(4) + 1j * rng.standard_normal(4)
    v = rng.standard_normal(4) + 1j * rng.standard_normal(4)
    u /= np.linalg.norm(u)
    v /= np.linalg.norm(v)
    assert fro_norm(np.outer(u, v.conj())) == pytest.approx(1.0)


@pytest.mark.parametrize("n", [1, 2, 3, 5])
def test_haar_unitary_is_unitary(n):
    u = haar_unitary(n, Rng(21))
    assert op_norm(u.conj().T @ u - np.eye(n)) <= 1e-10


def test_haar_unitary_deterministic():
    a = haar_unitary(4, Rng(99))
    b = haar_unitary(4, Rng(99))
    assert np.array_equal(a, b)


def test_haar_moment():
    # E|U_00|^2 = 1/n for Haar; empirical mean over 10^4 draws at n=2.
    rng = Rng(31)
    total = 0.0
    for _ in range(10_000):
        total += abs(haar_unitary(2, rng)[0, 0]) ** 2
    assert abs(total / 10_000 - 0.5) <= 0.02


def test_rng_children_are_independent_and_deterministic():
    root = Rng(7)
    c0, c0_again = root.child(0), Rng(7).child(0)
    c1 = root.child(1)
    assert c0.seed == c0_again.seed
    assert c0.seed != c1.seed
    assert np.array_equal(
        c0.generator.standard_normal(5), c0_again.generator.standard_normal(5)
    )


def test_rng_rejects_bad_seed():
    with pytest.raises(ValueError):
        Rng(-1)
    with pytest.raises(ValueError):
        Rng(2 ** 64)
