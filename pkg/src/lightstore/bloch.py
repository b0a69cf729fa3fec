"""Density-matrix evolution of one atom under the local fields.

The right-hand sides below are the resonant rotating-frame equations of
the four-level scheme with spontaneous emission from |a>.  They are the
elementwise form of d(sigma)/dt = -i[H, sigma]/hbar + D(sigma) with the
RWA Hamiltonian

    CASE_B: H_ab = -eps1 d1 / 2,  H_ac = hbar Omega2 / 2,
            H_ad = -eps3 d3 / 2,  H_bd = i U / 2,
    CASE_A: H_ab = -eps1 d1 / 2,  H_ac = hbar Omega2 / 2,
            H_cd = -eps4 d4 / 2,

and the dissipator of pure radiative decay a -> b, c, d (populations fed
at Gamma_ab, Gamma_ac, Gamma_ad; optical coherences damped at half the
total rate; ground coherences undamped).  The U term of the cd equation
carries 1/(2 hbar) like every sibling coupling term.

Signal envelopes may be complex; the conjugate envelope then enters the
terms that descend from the lower triangle of H, which keeps H Hermitian
and the trace exactly conserved.  All functions broadcast over leading
axes, so a z-grid of cells is stepped in one call.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import (
    HBAR,
    IA,
    IB,
    IC,
    ID,
    CouplingVariant,
    LevelScheme,
    NumericalFailure,
)

__all__ = [
    "LocalFields",
    "StepStats",
    "hamiltonian",
    "rhs_case_a",
    "rhs_case_b",
    "bloch_rhs",
    "step_cell",
]

TRACE_DRIFT_LIMIT = 1e-8  # per-step tolerance before the state is rejected


@dataclass(frozen=True)
class LocalFields:
    """Fields seen by one cell (scalars) or by every cell (arrays).

    eps1, eps3 : complex signal envelopes (a.u. field).
    Omega2 : signed control Rabi frequency, Omega2 = -eps2 d2 / hbar.
    ctrl4 : control-4 amplitude; the effective coupling U in CASE_B, the
        field amplitude eps4 in CASE_A.
    """

    eps1: complex | np.ndarray
    eps3: complex | np.ndarray
    Omega2: float | np.ndarray
    ctrl4: float | np.ndarray


class StepStats:
    """Running maxima of per-step integrator diagnostics."""

    def __init__(self) -> None:
        self.max_herm_defect = 0.0
        self.max_trace_drift = 0.0

    def update(self, herm_defect: float, trace_drift: float) -> None:
        self.max_herm_defect = max(self.max_herm_defect, herm_defect)
        self.max_trace_drift = max(self.max_trace_drift, trace_drift)


def hamiltonian(f: LocalFields, scheme: LevelScheme) -> np.ndarray:
    """Assemble the 4x4 RWA Hamiltonian (broadcast over field shapes)."""
    shape = np.broadcast(
        np.asarray(f.eps1), np.asarray(f.eps3),
        np.asarray(f.Omega2), np.asarray(f.ctrl4),
    ).shape
    H = np.zeros(shape + (4, 4), dtype=complex)
    H[..., IA, IB] = -np.asarray(f.eps1) * scheme.d1 / 2.0
    H[..., IA, IC] = HBAR * np.asarray(f.Omega2) / 2.0
    if scheme.variant is CouplingVariant.CASE_B:
        H[..., IA, ID] = -np.asarray(f.eps3) * scheme.d3 / 2.0
        H[..., IB, ID] = 1j * np.asarray(f.ctrl4) / 2.0
    else:
        H[..., IC, ID] = -np.asarray(f.ctrl4) * scheme.d4 / 2.0
    lower = np.conj(np.swapaxes(H, -1, -2))
    return H + lower


def _mirror(deriv: np.ndarray) -> np.ndarray:
    """Fill the lower triangle of the derivative by Hermiticity."""
    for i in range(4):
        for j in range(i + 1, 4):
            deriv[..., j, i] = np.conj(deriv[..., i, j])
    return deriv


def rhs_case_b(sigma: np.ndarray, f: LocalFields, scheme: LevelScheme) -> np.ndarray:
    """d(sigma)/dt for CASE_B: signals 1 and 3 plus the effective b-d coupling."""
    G1 = -np.asarray(f.eps1) * scheme.d1 / (2.0 * HBAR)
    G2 = np.asarray(f.Omega2) / 2.0
    G3 = -np.asarray(f.eps3) * scheme.d3 / (2.0 * HBAR)
    h = np.asarray(f.ctrl4) / (2.0 * HBAR)
    Gab, Gac, Gad = scheme.Gamma_ab, scheme.Gamma_ac, scheme.Gamma_ad
    Gt = Gab + Gac + Gad

    s_aa = sigma[..., IA, IA]
    s_bb = sigma[..., IB, IB]
    s_cc = sigma[..., IC, IC]
    s_dd = sigma[..., ID, ID]
    s_ab = sigma[..., IA, IB]
    s_ac = sigma[..., IA, IC]
    s_ad = sigma[..., IA, ID]
    s_bc = sigma[..., IB, IC]
    s_bd = sigma[..., IB, ID]
    s_cd = sigma[..., IC, ID]
    s_ba = sigma[..., IB, IA]
    s_ca = sigma[..., IC, IA]
    s_da = sigma[..., ID, IA]
    s_cb = sigma[..., IB, IC].conj()
    s_db = sigma[..., IB, ID].conj()
    s_dc = sigma[..., IC, ID].conj()

    out = np.zeros_like(sigma)
    out[..., IA, IA] = (
        -1j * (G1 * s_ba - np.conj(G1) * s_ab)
        - 1j * G2 * (s_ca - s_ac)
        - 1j * (G3 * s_da - np.conj(G3) * s_ad)
        - Gt * s_aa
    )
    out[..., IB, IB] = (
        -1j * (np.conj(G1) * s_ab - G1 * s_ba)
        + h * (s_db + s_bd)
        + Gab * s_aa
    )
    out[..., IC, IC] = -1j * G2 * (s_ac - s_ca) + Gac * s_aa
    out[..., ID, ID] = (
        -1j * (np.conj(G3) * s_ad - G3 * s_da)
        - h * (s_bd + s_db)
        + Gad * s_aa
    )
    out[..., IA, IB] = (
        -1j * (G1 * (s_bb - s_aa) + G2 * s_cb + G3 * s_db)
        + h * s_ad
        - 0.5 * Gt * s_ab
    )
    out[..., IA, IC] = (
        -1j * (G1 * s_bc + G2 * (s_cc - s_aa) + G3 * s_dc)
        - 0.5 * Gt * s_ac
    )
    out[..., IA, ID] = (
        -1j * (G1 * s_bd + G2 * s_cd + G3 * (s_dd - s_aa))
        - h * s_ab
        - 0.5 * Gt * s_ad
    )
    out[..., IB, IC] = -1j * (np.conj(G1) * s_ac - G2 * s_ba) + h * s_dc
    out[..., IB, ID] = -1j * (np.conj(G1) * s_ad - np.conj(G3) * s_ba) + h * (s_dd - s_bb)
    out[..., IC, ID] = -1j * (G2 * s_ad - np.conj(G3) * s_ca) - h * s_cb
    return _mirror(out)


def rhs_case_a(sigma: np.ndarray, f: LocalFields, scheme: LevelScheme) -> np.ndarray:
    """d(sigma)/dt for CASE_A: Lambda system plus laser-driven c-d transition."""
    G1 = -np.asarray(f.eps1) * scheme.d1 / (2.0 * HBAR)
    G2 = np.asarray(f.Omega2) / 2.0
    G4 = -np.asarray(f.ctrl4) * scheme.d4 / (2.0 * HBAR)
    Gab, Gac = scheme.Gamma_ab, scheme.Gamma_ac
    Gt = scheme.gamma_total

    s_aa = sigma[..., IA, IA]
    s_bb = sigma[..., IB, IB]
    s_cc = sigma[..., IC, IC]
    s_dd = sigma[..., ID, ID]
    s_ab = sigma[..., IA, IB]
    s_ac = sigma[..., IA, IC]
    s_ad = sigma[..., IA, ID]
    s_bc = sigma[..., IB, IC]
    s_bd = sigma[..., IB, ID]
    s_cd = sigma[..., IC, ID]
    s_ba = sigma[..., IB, IA]
    s_ca = sigma[..., IC, IA]
    s_cb = sigma[..., IB, IC].conj()
    s_dc = sigma[..., IC, ID].conj()

    out = np.zeros_like(sigma)
    out[..., IA, IA] = (
        -1j * (G1 * s_ba - np.conj(G1) * s_ab)
        - 1j * G2 * (s_ca - s_ac)
        - Gt * s_aa
    )
    out[..., IB, IB] = -1j * (np.conj(G1) * s_ab - G1 * s_ba) + Gab * s_aa
    out[..., IC, IC] = -1j * G2 * (s_ac - s_ca) - 1j * G4 * (s_dc - s_cd) + Gac * s_aa
    out[..., ID, ID] = -1j * G4 * (s_cd - s_dc)
    out[..., IA, IB] = -1j * (G1 * (s_bb - s_aa) + G2 * s_cb) - 0.5 * Gt * s_ab
    out[..., IA, IC] = (
        -1j * (G1 * s_bc + G2 * (s_cc - s_aa) - G4 * s_ad)
        - 0.5 * Gt * s_ac
    )
    out[..., IA, ID] = (
        -1j * (G1 * s_bd + G2 * s_cd - G4 * s_ac)
        - 0.5 * Gt * s_ad
    )
    out[..., IB, IC] = -1j * (np.conj(G1) * s_ac - G2 * s_ba - G4 * s_bd)
    out[..., IB, ID] = -1j * (np.conj(G1) * s_ad - G4 * s_bc)
    out[..., IC, ID] = -1j * (G2 * s_ad + G4 * (s_dd - s_cc))
    return _mirror(out)


def bloch_rhs(sigma: np.ndarray, f: LocalFields, scheme: LevelScheme) -> np.ndarray:
    """Variant dispatch for the density-matrix time derivative."""
    if scheme.variant is CouplingVariant.CASE_B:
        return rhs_case_b(sigma, f, scheme)
    return rhs_case_a(sigma, f, scheme)


def step_cell(
    sigma: np.ndarray,
    f: LocalFields,
    scheme: LevelScheme,
    dt: float,
    f_mid: LocalFields | None = None,
    f_end: LocalFields | None = None,
    stats: StepStats | None = None,
) -> np.ndarray:
    """Classical RK4 step of the local density matrices.

    The signal envelopes in `f` are held fixed across the step; the
    analytic control envelopes may be re-sampled at the half and full
    step via `f_mid` / `f_end` (both default to `f`).  The result is
    re-Hermitized by averaging with its conjugate transpose.

    Raises NumericalFailure on non-finite output or a one-step trace
    drift beyond TRACE_DRIFT_LIMIT.
    """
    fm = f if f_mid is None else f_mid
    fe = f if f_end is None else f_end
    k1 = bloch_rhs(sigma, f, scheme)
    k2 = bloch_rhs(sigma + (0.5 * dt) * k1, fm, scheme)
    k3 = bloch_rhs(sigma + (0.5 * dt) * k2, fm, scheme)
    k4 = bloch_rhs(sigma + dt * k3, fe, scheme)
    raw = sigma + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)

    if not np.all(np.isfinite(raw.view(float))):
        raise NumericalFailure("non-finite density matrix after RK4 step")
    drift = float(
        np.max(
            np.abs(
                np.trace(raw, axis1=-2, axis2=-1)
                - np.trace(sigma, axis1=-2, axis2=-1)
            )
        )
    )
    if drift > TRACE_DRIFT_LIMIT:
        raise NumericalFailure(
            f"trace drifted by {drift:.3e} in one step (limit {TRACE_DRIFT_LIMIT:.1e})"
        )
    defect = float(np.max(np.abs(raw - np.conj(np.swapaxes(raw, -1, -2)))))
    if stats is not None:
        stats.update(defect, drift)
    return 0.5 * (raw + np.conj(np.swapaxes(raw, -1, -2)))
