"""POVMs, Born-rule statistics and exact distance between measurements.

A POVM is stored as an ordered list of effects. Distances pair outcomes by
index; there is no relabeling optimization.
"""

import itertools

import numpy as np

from .linalg import (
    CapacityError,
    as_matrix,
    check_hermitian,
    fro_norm,
    herm_eigh,
    op_norm,
)

PSD_TOL = 1e-9
SUM_TOL = 1e-9
UNITARY_TOL = 1e-10

SIGN_ENUM_CAP = 20


def check_unitary(u, tol=UNITARY_TOL):
    """Validate ‖U†U − I‖₂ ≤ tol and return U as a complex ndarray."""
    a = as_matrix(u)
    if a.shape[0] != a.shape[1]:
        raise ValueError("unitary must be square")
    dev = op_norm(a.conj().T @ a - np.eye(a.shape[0]))
    if dev > tol:
        raise ValueError(f"matrix is not unitary: ‖U†U−I‖ = {dev:.3e} > {tol:.0e}")
    return a


class Povm:
    """Positive operator-valued measure on a finite dimension.

    Validates hermiticity (1e-10 max-entry), positivity (min eigenvalue
    >= -1e-9, tolerating roundoff from constructions) and completeness
    (effects sum to the identity within 1e-9 in operator norm).
    """

    def __init__(self, effects):
        effects = [check_hermitian(e) for e in effects]
        if not effects:
            raise ValueError("a POVM needs at least one effect")
        dim = effects[0].shape[0]
        for e in effects:
            if e.shape != (dim, dim):
                raise ValueError("all effects must share one dimension")
            low = np.linalg.eigvalsh(e)[0]
            if low < -PSD_TOL:
                raise ValueError(f"effect has negative eigenvalue {low:.3e}")
        total = sum(effects)
        dev = op_norm(total - np.eye(dim))
        if dev > SUM_TOL:
            raise ValueError(f"effects do not sum to identity: deviation {dev:.3e}")
        self.dim = dim
        self.effects = effects

    def __len__(self):
        return len(self.effects)

    def __iter__(self):
        return iter(self.effects)

    def __repr__(self):
        return f"Povm(dim={self.dim}, outcomes={len(self.effects)})"


class DensityState:
    """Density matrix: Hermitian, positive semidefinite, unit trace."""

    def __init__(self, matrix):
        m = check_hermitian(matrix)
        low = np.linalg.eigvalsh(m)[0]
        if low < -PSD_TOL:
            raise ValueError(f"state has negative eigenvalue {low:.3e}")
        tr = np.trace(m).real
        if abs(tr - 1.0) > SUM_TOL:
            raise ValueError(f"state trace is {tr}, expected 1")
        self.dim = m.shape[0]
        self.matrix = m

    def __repr__(self):
        return f"DensityState(dim={self.dim})"


def pure_state(vector):
    """Rank-1 density matrix |v⟩⟨v| from a (normalized) vector."""
    v = np.asarray(vector, dtype=complex).reshape(-1)
    nrm = np.linalg.norm(v)
    if nrm == 0:
        raise ValueError("cannot normalize the zero vector")
    v = v / nrm
    return DensityState(np.outer(v, v.conj()))


def maximally_mixed(n):
    return DensityState(np.eye(n) / n)


def born_probabilities(rho, p):
    """Outcome probabilities Re Tr[ρ P_i]."""
    if rho.dim != p.dim:
        raise ValueError(f"state dim {rho.dim} does not match POVM dim {p.dim}")
    return [float(np.trace(rho.matrix @ e).real) for e in p.effects]


def observable_from_unitary(w, basis=None):
    """Rank-1 projector POVM with effects W†|ψ_i⟩⟨ψ_i|W.

    `basis` holds the ψ_i as columns; defaults to the computational basis.
    """
    w = check_unitary(w)
    n = w.shape[0]
    if basis is None:
        basis = np.eye(n)
    b = check_unitary(basis)
    effects = []
    for i in range(n):
        col = w.conj().T @ b[:, i]
        effects.append(np.outer(col, col.conj()))
    return Povm(effects)


def _check_comparable(p, q):
    if p.dim != q.dim:
        raise ValueError(f"dimension mismatch: {p.dim} vs {q.dim}")
    if len(p.effects) != len(q.effects):
        raise ValueError("POVMs must have the same number of outcomes")


def povm_distance(p, q, return_witness=False):
    """Exact measurement distance max_ρ Σ_i |Tr[ρ (P_i − Q_i)]|.

    The sum of absolute values equals the maximum over sign vectors
    s ∈ {±1}^k of Tr[ρ Σ_i s_i Δ_i], and maximizing a Hermitian expectation
    over states lands on the top eigenvector. Enumerating sign vectors is
    exact; the global ± symmetry halves the enumeration. Capped at 20
    outcomes; beyond that use :func:`distance_bounds`.

    With `return_witness` the maximizing pure state is returned alongside.
    """
    _check_comparable(p, q)
    k = len(p.effects)
    if k > SIGN_ENUM_CAP:
        raise CapacityError(
            f"{k} outcomes exceeds the sign-enumeration cap of {SIGN_ENUM_CAP}; "
            "use distance_bounds for an upper bound"
        )
    deltas = [pe - qe for pe, qe in zip(p.effects, q.effects)]
    best = 0.0
    best_vec = None
    dim = p.dim
    for tail in itertools.product((1.0, -1.0), repeat=k - 1):
        signed = deltas[0].copy()
        for s, d in zip(tail, deltas[1:]):
            signed += s * d
        vals, vecs = np.linalg.eigh((signed + signed.conj().T) / 2)
        if vals[-1] >= best:
            best = float(vals[-1])
            best_vec = vecs[:, -1]
        if -vals[0] >= best:
            best = float(-vals[0])
            best_vec = vecs[:, 0]
    if best_vec is None:
        best_vec = np.eye(dim)[:, 0]
    if return_witness:
        return best, pure_state(best_vec)
    return best


def two_outcome_distance(p, q):
    """Closed form 2‖P₀ − Q₀‖ for two-outcome POVMs.

    Valid because Δ₁ = −Δ₀ when both POVMs are complete, so the signed sum
    is ±2Δ₀ and the distance is twice the largest absolute eigenvalue.
    """
    _check_comparable(p, q)
    if len(p.effects) != 2:
        raise ValueError("two_outcome_distance requires exactly 2 outcomes")
    return 2.0 * op_norm(p.effects[0] - q.effects[0])


def distance_bounds(p, q):
    """Upper bounds (Σ_i ‖Δ_i‖, Σ_i ‖Δ_i‖₂) on the measurement distance."""
    _check_comparable(p, q)
    sum_op = 0.0
    sum_fro = 0.0
    for pe, qe in zip(p.effects, q.effects):
        delta = pe - qe
        sum_op += op_norm(delta)
        sum_fro += fro_norm(delta)
    return sum_op, sum_fro
