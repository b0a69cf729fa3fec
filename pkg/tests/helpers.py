"""Independent oracles shared by the unit and acceptance tests."""

import numpy as np
from scipy.linalg import expm

from lightstore.bloch import LocalFields, bloch_rhs
from lightstore.core import IA, IB, IC, ID, LevelScheme


def random_density_matrix(rng, pure=False):
    """Random physical 4x4 density matrix (Hermitian, trace one, PSD)."""
    if pure:
        psi = rng.normal(size=4) + 1j * rng.normal(size=4)
        psi /= np.linalg.norm(psi)
        return np.outer(psi, psi.conj())
    M = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    sigma = M @ M.conj().T
    return sigma / np.trace(sigma)


def random_hermitian(rng):
    """Random Hermitian matrix (not necessarily positive or trace one)."""
    M = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    return 0.5 * (M + M.conj().T)


# --- Liouvillian assembled from the RHS over a Hermitian basis ------------
#
# The flow is R-linear on the 16-dimensional real vector space of Hermitian
# matrices, so feeding the RHS a Hermitian basis gives a real 16x16 matrix
# whose exponential is an independent constant-field propagator.

def _hermitian_basis():
    basis = []
    for i in range(4):
        B = np.zeros((4, 4), dtype=complex)
        B[i, i] = 1.0
        basis.append(B)
    for i in range(4):
        for j in range(i + 1, 4):
            X = np.zeros((4, 4), dtype=complex)
            X[i, j] = X[j, i] = 1.0
            basis.append(X)
            Y = np.zeros((4, 4), dtype=complex)
            Y[i, j] = 1j
            Y[j, i] = -1j
            basis.append(Y)
    return basis


_BASIS = _hermitian_basis()


def to_coords(sigma):
    coords = [sigma[i, i].real for i in range(4)]
    for i in range(4):
        for j in range(i + 1, 4):
            coords.append(sigma[i, j].real)
            coords.append(sigma[i, j].imag)
    return np.array(coords)


def from_coords(coords):
    sigma = np.zeros((4, 4), dtype=complex)
    for k, B in enumerate(_BASIS):
        sigma = sigma + coords[k] * B
    return sigma


def liouvillian_matrix(fields: LocalFields, scheme: LevelScheme):
    """Real 16x16 generator of the constant-field evolution."""
    L = np.zeros((16, 16))
    for k, B in enumerate(_BASIS):
        L[:, k] = to_coords(bloch_rhs(B, fields, scheme))
    return L


def expm_evolve(sigma0, fields, scheme, t):
    """Constant-field propagation by the matrix exponential of the generator."""
    L = liouvillian_matrix(fields, scheme)
    return from_coords(expm(L * t) @ to_coords(sigma0))


# --- Index-substitution recipe for the case-(a) equations -----------------
#
# Starting from the case-(b) set: interchange the indices b <-> c and the
# field labels 1 <-> 2, drop the channel-3 terms and the a->d decay, then
# substitute the effective coupling iU -> -eps4*d4 where it multiplies
# sigma_dc, sigma_da, sigma_ac, sigma_db, sigma_bc, sigma_cc, sigma_dd,
# and iU -> +eps4*d4 where it multiplies their transpose partners.

def substitution_rhs_case_a(sigma, fields: LocalFields, scheme: LevelScheme):
    e1 = float(np.real(fields.eps1)) * scheme.d1  # recipe applies to real fields
    O2 = float(fields.Omega2)
    e4 = float(fields.ctrl4) * scheme.d4
    Gab, Gac = scheme.Gamma_ab, scheme.Gamma_ac
    Gt = Gab + Gac

    s = sigma
    rhs_i = np.zeros((4, 4), dtype=complex)  # holds i * d(sigma)/dt
    rhs_i[IA, IA] = (
        -0.5 * e1 * (s[IB, IA] - s[IA, IB])
        + 0.5 * O2 * (s[IC, IA] - s[IA, IC])
        - 1j * Gt * s[IA, IA]
    )
    rhs_i[IB, IB] = -0.5 * e1 * (s[IA, IB] - s[IB, IA]) + 1j * Gab * s[IA, IA]
    rhs_i[IC, IC] = (
        0.5 * O2 * (s[IA, IC] - s[IC, IA])
        + 0.5 * (e4 * s[IC, ID] - e4 * s[ID, IC])
        + 1j * Gac * s[IA, IA]
    )
    rhs_i[ID, ID] = -0.5 * (e4 * s[IC, ID] - e4 * s[ID, IC])
    rhs_i[IA, IB] = (
        -0.5 * e1 * (s[IB, IB] - s[IA, IA])
        + 0.5 * O2 * s[IC, IB]
        - 0.5j * Gt * s[IA, IB]
    )
    rhs_i[IA, IC] = (
        0.5 * O2 * (s[IC, IC] - s[IA, IA])
        - 0.5 * e1 * s[IB, IC]
        + 0.5 * e4 * s[IA, ID]
        - 0.5j * Gt * s[IA, IC]
    )
    rhs_i[IA, ID] = (
        0.5 * O2 * s[IC, ID]
        - 0.5 * e1 * s[IB, ID]
        + 0.5 * e4 * s[IA, IC]
        - 0.5j * Gt * s[IA, ID]
    )
    rhs_i[IC, IB] = 0.5 * O2 * s[IA, IB] + 0.5 * e1 * s[IC, IA] - 0.5 * e4 * s[ID, IB]
    rhs_i[IC, ID] = 0.5 * O2 * s[IA, ID] - 0.5 * e4 * (s[ID, ID] - s[IC, IC])
    rhs_i[IB, ID] = -0.5 * e1 * s[IA, ID] + 0.5 * e4 * s[IB, IC]

    deriv = -1j * rhs_i
    out = np.zeros((4, 4), dtype=complex)
    for i, j in ((IA, IA), (IB, IB), (IC, IC), (ID, ID),
                 (IA, IB), (IA, IC), (IA, ID), (IC, IB), (IC, ID), (IB, ID)):
        out[i, j] = deriv[i, j]
        if i != j:
            out[j, i] = np.conj(deriv[i, j])
    return out
