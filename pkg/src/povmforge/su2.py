"""SU(2) representation machinery and two explicit qubit detector schemes.

Conventions, fixed once and shared by everything basis-dependent here:

* angular momentum values are stored as twice their value (``twice_j``), so
  half-integers stay exact;
* magnetic quantum numbers run descending, m = j, j-1, ..., -j, and the
  spin-1/2 basis identifies ``|1/2,+1/2> == |0>`` and ``|1/2,-1/2> == |1>``;
* Clebsch-Gordan coefficients follow the Condon-Shortley phase convention
  (they come out real, highest-weight couplings positive);
* rotation matrices use the z-y-z Euler decomposition
  D(a,b,g) = exp(-i a Jz) exp(-i b Jy) exp(-i g Jz).

Programmed POVMs are insensitive to the phase conventions; the tests pin
them anyway so every basis-dependent intermediate is reproducible.
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations

import numpy as np

from .detector import Detector
from .linalg import CapacityError, as_matrix, herm_eigh, tensor
from .povm import DensityState, Povm, check_unitary

SYMMETRIC_QUBIT_CAP = 12
FIURASEK_COPY_CAP = 11


@dataclass(frozen=True)
class AngularMomentum:
    """Spin quantum number j, stored as the integer 2j."""

    twice_j: int

    def __post_init__(self):
        if not isinstance(self.twice_j, int) or self.twice_j < 0:
            raise ValueError("twice_j must be a nonnegative integer")

    @property
    def j(self):
        return self.twice_j / 2

    @property
    def dim(self):
        return self.twice_j + 1

    @staticmethod
    def coerce(value):
        if isinstance(value, AngularMomentum):
            return value
        twice = 2 * float(value)
        rounded = round(twice)
        if abs(twice - rounded) > 1e-9:
            raise ValueError(f"{value} is not a half-integer")
        return AngularMomentum(int(rounded))


class GroupElement:
    """SU(2) element carrying both Euler angles and its 2x2 matrix.

    The two representations are kept consistent: building from angles
    computes the matrix, building from a matrix recovers angles that
    reproduce it exactly (including the overall sign, so half-integer
    representations evaluate without ambiguity).
    """

    def __init__(self, alpha, beta, gamma):
        self.euler_angles = (float(alpha), float(beta), float(gamma))
        self.matrix = _irrep_from_euler(1, *self.euler_angles)

    @classmethod
    def identity(cls):
        return cls(0.0, 0.0, 0.0)

    @classmethod
    def from_matrix(cls, u):
        u = check_unitary(u)
        if u.shape != (2, 2):
            raise ValueError("group element matrix must be 2x2")
        det = u[0, 0] * u[1, 1] - u[0, 1] * u[1, 0]
        if abs(det - 1.0) > 1e-10:
            raise ValueError(f"matrix determinant {det} is not 1")
        beta = 2.0 * math.atan2(abs(u[1, 0]), abs(u[0, 0]))
        p = float(np.angle(u[1, 1])) if abs(u[1, 1]) > 1e-12 else 0.0
        q = float(np.angle(u[1, 0])) if abs(u[1, 0]) > 1e-12 else 0.0
        return cls(p + q, beta, p - q)

    @classmethod
    def random(cls, rng):
        """Haar-distributed element: uniform alpha, uniform cos(beta), gamma over 4 pi."""
        g = rng.generator
        alpha = g.uniform(0.0, 2.0 * math.pi)
        beta = math.acos(g.uniform(-1.0, 1.0))
        gamma = g.uniform(0.0, 4.0 * math.pi)
        return cls(alpha, beta, gamma)

    def __repr__(self):
        a, b, g = self.euler_angles
        return f"GroupElement(alpha={a:.4f}, beta={b:.4f}, gamma={g:.4f})"


def compose(g, h):
    """Group product g∘h, recovered through the 2x2 matrices."""
    return GroupElement.from_matrix(g.matrix @ h.matrix)


def _small_d(twice_j, beta):
    # Wigner's formula as a sum over contractions; exact factorials keep the
    # combinatorial prefactors stable well past j = 6.
    dim = twice_j + 1
    half = beta / 2.0
    c, s = math.cos(half), math.sin(half)
    out = np.zeros((dim, dim))
    tms = range(twice_j, -twice_j - 1, -2)
    for row, tmp in enumerate(tms):
        for col, tm in enumerate(tms):
            kmin = max(0, (tm - tmp) // 2)
            kmax = min((twice_j + tm) // 2, (twice_j - tmp) // 2)
            pref = math.sqrt(
                math.factorial((twice_j + tmp) // 2)
                * math.factorial((twice_j - tmp) // 2)
                * math.factorial((twice_j + tm) // 2)
                * math.factorial((twice_j - tm) // 2)
            )
            total = 0.0
            for k in range(kmin, kmax + 1):
                den = (
                    math.factorial((twice_j + tm) // 2 - k)
                    * math.factorial(k)
                    * math.factorial((tmp - tm) // 2 + k)
                    * math.factorial((twice_j - tmp) // 2 - k)
                )
                power = (tmp - tm) // 2 + k
                total += (
                    (-1.0) ** power
                    / den
                    * c ** (twice_j + (tm - tmp) // 2 - 2 * k)
                    * s ** ((tmp - tm) // 2 + 2 * k)
                )
            out[row, col] = pref * total
    return out


def _irrep_from_euler(twice_j, alpha, beta, gamma):
    d = _small_d(twice_j, beta)
    ms = np.arange(twice_j, -twice_j - 1, -2) / 2.0
    return np.exp(-1j * ms[:, None] * alpha) * d * np.exp(-1j * ms[None, :] * gamma)


def irrep_matrix(j, g):
    """Spin-j rotation matrix of a group element, in the m-descending basis."""
    j = AngularMomentum.coerce(j)
    return _irrep_from_euler(j.twice_j, *g.euler_angles)


@lru_cache(maxsize=None)
def _cg_exact(tj1, tm1, tj2, tm2, tJ, tM):
    # Racah's closed form. Everything under the square root and the
    # alternating sum are exact rationals; only the final sqrt is floating.
    if tM != tm1 + tm2:
        return 0.0
    if tJ < abs(tj1 - tj2) or tJ > tj1 + tj2 or (tj1 + tj2 + tJ) % 2 != 0:
        return 0.0

    def fac(twice):
        return Fraction(math.factorial(twice // 2))

    pref = (
        Fraction(tJ + 1)
        * fac(tj1 + tj2 - tJ)
        * fac(tj1 - tj2 + tJ)
        * fac(-tj1 + tj2 + tJ)
        / fac(tj1 + tj2 + tJ + 2)
    )
    pref *= (
        fac(tJ + tM)
        * fac(tJ - tM)
        * fac(tj1 - tm1)
        * fac(tj1 + tm1)
        * fac(tj2 - tm2)
        * fac(tj2 + tm2)
    )
    kmin = max(0, (tj2 - tJ - tm1) // 2, (tj1 - tJ + tm2) // 2)
    kmax = min((tj1 + tj2 - tJ) // 2, (tj1 - tm1) // 2, (tj2 + tm2) // 2)
    total = Fraction(0)
    for k in range(kmin, kmax + 1):
        den = (
            fac(2 * k)
            * fac(tj1 + tj2 - tJ - 2 * k)
            * fac(tj1 - tm1 - 2 * k)
            * fac(tj2 + tm2 - 2 * k)
            * fac(tJ - tj2 + tm1 + 2 * k)
            * fac(tJ - tj1 - tm2 + 2 * k)
        )
        total += Fraction((-1) ** k) / den
    return float(total) * math.sqrt(float(pref))


def _coerce_pair(j, m, names):
    jj = AngularMomentum.coerce(j)
    tm = round(2 * float(m))
    if abs(2 * float(m) - tm) > 1e-9:
        raise ValueError(f"{names[1]} must be a half-integer")
    tm = int(tm)
    if abs(tm) > jj.twice_j:
        raise ValueError(f"|{names[1]}| exceeds {names[0]}")
    if (jj.twice_j - tm) % 2 != 0:
        raise ValueError(f"{names[0]} and {names[1]} must differ by an integer")
    return jj.twice_j, tm


def clebsch_gordan(j1, m1, j2, m2, big_j, big_m):
    """Coupling coefficient <J,M | j1,m1; j2,m2>, Condon-Shortley phases.

    Returns 0 when M != m1+m2 or the triangle rule fails; raises on
    malformed quantum numbers (non-half-integers, |m| > j, parity).
    """
    tj1, tm1 = _coerce_pair(j1, m1, ("j1", "m1"))
    tj2, tm2 = _coerce_pair(j2, m2, ("j2", "m2"))
    tJ, tM = _coerce_pair(big_j, big_m, ("J", "M"))
    return _cg_exact(tj1, tm1, tj2, tm2, tJ, tM)


def coupling_isometry(j1, j2):
    """Unitary change of basis from |j1,m1>|j2,m2> to the coupled basis.

    Rows are coupled states ordered by J descending from j1+j2 to |j1-j2|,
    M descending inside each block; columns are the product basis with m1
    major, m2 minor, both descending. Entries are Clebsch-Gordan
    coefficients, so unitarity is their orthogonality.
    """
    j1 = AngularMomentum.coerce(j1)
    j2 = AngularMomentum.coerce(j2)
    tj1, tj2 = j1.twice_j, j2.twice_j
    size = j1.dim * j2.dim
    u = np.zeros((size, size))
    row = 0
    for tJ in range(tj1 + tj2, abs(tj1 - tj2) - 1, -2):
        for tM in range(tJ, -tJ - 1, -2):
            col = 0
            for tm1 in range(tj1, -tj1 - 1, -2):
                for tm2 in range(tj2, -tj2 - 1, -2):
                    u[row, col] = _cg_exact(tj1, tm1, tj2, tm2, tJ, tM)
                    col += 1
            row += 1
    return u


def dicke_state(num_qubits, num_excited):
    """Equal superposition of all computational states with k qubits set.

    Qubit 0 is the most significant bit of the index, matching the
    system-major tensor ordering.
    """
    if not 0 <= num_excited <= num_qubits:
        raise ValueError("excitation count out of range")
    v = np.zeros(2 ** num_qubits)
    for positions in combinations(range(num_qubits), num_excited):
        v[sum(2 ** (num_qubits - 1 - p) for p in positions)] = 1.0
    return v / np.linalg.norm(v)


def symmetric_projector(num_qubits):
    """Orthogonal projector onto the permutation-symmetric subspace.

    Built from the Dicke basis, which spans that subspace with rank N+1;
    averaging the N! permutation operators gives the same operator and
    serves as the test oracle for small N.
    """
    if num_qubits < 1:
        raise ValueError("need at least one qubit")
    if num_qubits > SYMMETRIC_QUBIT_CAP:
        raise CapacityError(
            f"{num_qubits} qubits exceeds the 2^N memory cap ({SYMMETRIC_QUBIT_CAP})"
        )
    basis = np.column_stack(
        [dicke_state(num_qubits, k) for k in range(num_qubits + 1)]
    )
    return basis @ basis.T


def fiurasek_detector(n_copies):
    """Two-outcome detector projecting system + N program copies symmetrically.

    The first outcome is the symmetric projector on N+1 qubits, system
    qubit first. Programmed with N copies of a pure state psi it realizes
    Q0 = psi + (I - psi)/(N+1), missing the sharp target observable by
    exactly 2/(N+1) while the ancilla dimension grows as 2^N.
    """
    if n_copies < 1:
        raise ValueError("need at least one program copy")
    if n_copies > FIURASEK_COPY_CAP:
        raise CapacityError(
            f"{n_copies} copies exceeds the joint-space cap ({FIURASEK_COPY_CAP})"
        )
    z_plus = symmetric_projector(n_copies + 1)
    joint = Povm([z_plus, np.eye(z_plus.shape[0]) - z_plus])
    return Detector(2, 2 ** n_copies, joint)


def fiurasek_program(psi, n_copies):
    """Matched program state: N copies of |psi><psi|."""
    v = np.asarray(psi, dtype=complex).reshape(-1)
    if v.shape != (2,):
        raise ValueError("program vector must be a qubit")
    v = v / np.linalg.norm(v)
    rho = np.outer(v, v.conj())
    out = np.ones((1, 1), dtype=complex)
    for _ in range(n_copies):
        out = tensor(out, rho)
    return DensityState(out)


def covariant_qubit_detector(j):
    """Two-outcome detector from the 1/2 x j angular momentum coupling.

    The first outcome projects onto the j+ = j + 1/2 irreducible block,
    expressed back in the product basis. The detector commutes with the
    joint rotation action, which is what forces the programmed POVM into
    covariant form. Ancilla dimension is 2j+1.
    """
    j = AngularMomentum.coerce(j)
    if j.twice_j < 1:
        raise ValueError("need twice_j >= 1")
    u = coupling_isometry(AngularMomentum(1), j)
    plus_dim = j.twice_j + 2
    proj = np.zeros((2 * j.dim, 2 * j.dim))
    proj[:plus_dim, :plus_dim] = np.eye(plus_dim)
    f0 = u.T @ proj @ u
    joint = Povm([f0, np.eye(2 * j.dim) - f0])
    return Detector(2, j.dim, joint)


def rotated_highest_weight(j, g):
    """Matched program state W_g |j,j><j,j| W_g† for the covariant detector."""
    j = AngularMomentum.coerce(j)
    w = irrep_matrix(j, g)
    top = w[:, 0]
    return DensityState(np.outer(top, top.conj()))


def covariant_target(g):
    """Sharp qubit observable {V_g|0><0|V_g†, V_g|1><1|V_g†}."""
    v = as_matrix(g.matrix)
    effects = [np.outer(v[:, i], v[:, i].conj()) for i in range(2)]
    return Povm(effects)


def matched_fiurasek_rule(n_copies):
    """Program rule for sharp qubit targets: recover psi, repeat it N times.

    The target's first effect is rank 1, so its top eigenvector is the
    state the detector should hunt for.
    """

    def rule(target):
        _, vecs = herm_eigh(target.effects[0])
        return fiurasek_program(vecs[:, -1], n_copies)

    return rule


def matched_covariant_rule(j):
    """Program rule for sharp qubit targets at fixed ancilla spin j.

    Completes the target's top eigenvector (a, b) to the special unitary
    [[a, -b*], [b, a*]] and rotates the highest-weight ancilla state with
    it. Column phases drop out of both target and programmed POVM, so any
    completion gives the same accuracy.
    """
    j = AngularMomentum.coerce(j)

    def rule(target):
        _, vecs = herm_eigh(target.effects[0])
        a, b = vecs[0, -1], vecs[1, -1]
        v = np.array([[a, -np.conj(b)], [b, np.conj(a)]])
        return rotated_highest_weight(j, GroupElement.from_matrix(v))

    return rule
