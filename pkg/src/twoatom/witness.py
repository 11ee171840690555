"""Entanglement and spin-squeezing measures for two-atom Dicke states."""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy.optimize import minimize_scalar

from . import dicke, qcore
from .dicke import XStateParams
from .errors import InvalidStateParams, MeanSpinZero, NotPhysical

N_ATOMS = 2
MEAN_SPIN_TOL = 1e-9

# single-atom operators in the (|e>, |g>) ordering
_SX = np.array([[0, 1], [1, 0]], dtype=np.complex128)
_SY = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
_SZ = np.array([[1, 0], [0, -1]], dtype=np.complex128)
_I2 = np.eye(2, dtype=np.complex128)


def _collective(op: np.ndarray) -> np.ndarray:
    return 0.5 * (np.kron(op, _I2) + np.kron(_I2, op))


SX = _collective(_SX)
SY = _collective(_SY)
SZ = _collective(_SZ)


def _check_params(p) -> XStateParams:
    if not isinstance(p, XStateParams):
        raise InvalidStateParams(f"expected XStateParams, got {type(p).__name__}")
    return p


def partial_transpose(m, subsystem: str = "first") -> np.ndarray:
    """Transpose the indices of one atom of a product-basis operator."""
    a = qcore.as_matrix4(m).reshape(2, 2, 2, 2)  # (row1, row2, col1, col2)
    if subsystem == "first":
        a = a.transpose(2, 1, 0, 3)
    elif subsystem == "second":
        a = a.transpose(0, 3, 2, 1)
    else:
        raise ValueError(f"subsystem must be 'first' or 'second', not {subsystem!r}")
    return a.reshape(4, 4).copy()


class PTEigenvalues(NamedTuple):
    mu_1p: float
    mu_1m: float
    mu_2p: float
    mu_2m: float


def pt_eigenvalues_closed_form(p: XStateParams) -> PTEigenvalues:
    """Eigenvalues of the partially transposed X state.

    The coherence pair is ``rho_ss/2 +- |rho_eg|``.  The population pair is
    the spectrum of ``[[rho_ee, rho_ss/2], [rho_ss/2, rho_gg]]``; its smaller
    root is taken as ``det / larger`` so that its sign tracks
    ``rho_ee*rho_gg - rho_ss**2/4`` exactly.
    """
    p = _check_params(p)
    coh = abs(p.rho_eg)
    mu_1p = 0.5 * p.rho_ss + coh
    mu_1m = 0.5 * p.rho_ss - coh
    trace = p.rho_ee + p.rho_gg
    mu_2p = 0.5 * (trace + math.hypot(p.rho_ee - p.rho_gg, p.rho_ss))
    det = p.rho_ee * p.rho_gg - 0.25 * p.rho_ss ** 2
    mu_2m = det / mu_2p if mu_2p > 0.0 else 0.0
    return PTEigenvalues(mu_1p, mu_1m, mu_2p, mu_2m)


def negativity(eigenvalues) -> float:
    return max(0.0, -2.0 * sum(mu for mu in eigenvalues if mu < 0.0))


@dataclass(frozen=True)
class EntanglementReport:
    negativity_e: float
    mu: PTEigenvalues
    criterion_coherence: bool
    criterion_population: bool

    @property
    def entangled(self) -> bool:
        return self.negativity_e > 0.0


def criterion_coherence(p: XStateParams) -> bool:
    """Two-photon coherence beats the symmetric population: |rho_eg| > rho_ss/2."""
    return abs(p.rho_eg) > 0.5 * p.rho_ss


def criterion_population(p: XStateParams) -> bool:
    """Symmetric population beats the product populations: rho_ss > 2 sqrt(rho_ee rho_gg)."""
    # squared form, same rounding as the numerator of mu_2m
    return 0.25 * p.rho_ss ** 2 > p.rho_ee * p.rho_gg


def entanglement_report(p: XStateParams) -> EntanglementReport:
    p = _check_params(p)
    mu = pt_eigenvalues_closed_form(p)
    return EntanglementReport(
        negativity_e=negativity(mu),
        mu=mu,
        criterion_coherence=criterion_coherence(p),
        criterion_population=criterion_population(p),
    )


@dataclass(frozen=True)
class SpinMoments:
    """First and transverse second moments of the collective spin."""

    mean_sx: float
    mean_sy: float
    mean_sz: float
    sx2: float
    sy2: float
    sxy: float  # <(Sx Sy + Sy Sx)/2>

    def variance_at(self, theta: float) -> float:
        """Variance of ``cos(theta) S_x + sin(theta) S_y``."""
        c, s = math.cos(theta), math.sin(theta)
        second = c * c * self.sx2 + s * s * self.sy2 + 2.0 * c * s * self.sxy
        mean = c * self.mean_sx + s * self.mean_sy
        return second - mean * mean


def _expect(rho: np.ndarray, op: np.ndarray) -> float:
    return float(np.trace(rho @ op).real)


def spin_moments(m) -> SpinMoments:
    """Collective-spin moments of a product-basis density matrix.

    Raises :class:`NotPhysical` if ``m`` is not a density matrix.
    """
    try:
        rho = qcore.as_matrix4(m)
    except ValueError as exc:
        raise NotPhysical(str(exc)) from None
    dicke.check_physical(rho)
    return SpinMoments(
        mean_sx=_expect(rho, SX),
        mean_sy=_expect(rho, SY),
        mean_sz=_expect(rho, SZ),
        sx2=_expect(rho, SX @ SX),
        sy2=_expect(rho, SY @ SY),
        sxy=_expect(rho, 0.5 * (SX @ SY + SY @ SX)),
    )


def scan_min_variance(moments: SpinMoments, samples: int = 3600) -> tuple[float, float]:
    """Minimise ``variance_at`` over [0, pi) numerically.

    A uniform scan locates the basin; a bounded Brent search inside the
    neighbouring grid cells polishes it, since grid spacing alone limits the
    minimum to about ``|rho_eg| * (pi/samples)**2``.
    Returns ``(theta, variance)``.
    """
    step = math.pi / samples
    thetas = np.arange(samples) * step
    values = [moments.variance_at(t) for t in thetas]
    k = int(np.argmin(values))
    res = minimize_scalar(
        moments.variance_at,
        bounds=(thetas[k] - step, thetas[k] + step),
        method="bounded",
        options={"xatol": 1e-12},
    )
    if res.fun < values[k]:
        return float(res.x) % math.pi, float(res.fun)
    return float(thetas[k]), float(values[k])


@dataclass(frozen=True)
class SqueezingResult:
    xi_ku: float
    theta_opt: float
    xi_wineland: float | None = None

    @property
    def squeezed(self) -> bool:
        return self.xi_ku < 1.0


def optimal_angle(p: XStateParams) -> float:
    """Angle in [0, pi) at which the transverse spin variance is smallest.

    ``2 Var(S_theta) = 1 + rho_ss + 2 |rho_eg| cos(2 theta + arg rho_eg)``, so
    the minimum sits at ``theta = (pi - arg rho_eg) / 2``.  For ``rho_eg = 0``
    every angle is optimal and this gives ``pi/2``.
    """
    phi = cmath.phase(p.rho_eg) if p.rho_eg != 0 else 0.0
    return ((math.pi - phi) / 2.0) % math.pi


def xi_kitagawa_ueda(p: XStateParams) -> float:
    return 1.0 + p.rho_ss - 2.0 * abs(p.rho_eg)


def squeezing_wineland(p: XStateParams) -> float:
    """Twice the minimal transverse variance over ``<S_z>**2``.

    Raises :class:`MeanSpinZero` when ``<S_z> = rho_ee - rho_gg`` vanishes.
    """
    p = _check_params(p)
    mean_sz = p.mean_sz
    if abs(mean_sz) <= MEAN_SPIN_TOL:
        raise MeanSpinZero(f"<S_z> = {mean_sz:.3g}; use the Kitagawa-Ueda parameter")
    return N_ATOMS * (0.5 * xi_kitagawa_ueda(p)) / mean_sz ** 2


def squeezing_ku(p: XStateParams) -> SqueezingResult:
    p = _check_params(p)
    try:
        wineland = squeezing_wineland(p)
    except MeanSpinZero:
        wineland = None
    return SqueezingResult(xi_ku=xi_kitagawa_ueda(p), theta_opt=optimal_angle(p), xi_wineland=wineland)


@dataclass(frozen=True)
class WitnessReport:
    """Everything the CLI reports about one state."""

    state: XStateParams
    entanglement: EntanglementReport
    squeezing: SqueezingResult
    spectral: dicke.SpectralDecomposition

    def to_dict(self) -> dict:
        st, en, sq, sp = self.state, self.entanglement, self.squeezing, self.spectral
        return {
            "state": {
                "rho_gg": st.rho_gg,
                "rho_ee": st.rho_ee,
                "rho_ss": st.rho_ss,
                "rho_eg": {"re": st.rho_eg.real, "im": st.rho_eg.imag},
            },
            "entanglement": {
                "negativity_e": en.negativity_e,
                "mu": en.mu._asdict(),
                "criterion_coherence": en.criterion_coherence,
                "criterion_population": en.criterion_population,
            },
            "squeezing": {
                "xi_ku": sq.xi_ku,
                "theta_opt": sq.theta_opt,
                "xi_wineland": sq.xi_wineland,
                "squeezed": sq.squeezed,
            },
            "spectral": {
                "pi_plus": sp.pi_plus,
                "pi_minus": sp.pi_minus,
                "pi_s": sp.pi_s,
                "pi_a": sp.pi_a,
            },
        }


def witness_report(p: XStateParams) -> WitnessReport:
    p = _check_params(p)
    return WitnessReport(
        state=p,
        entanglement=entanglement_report(p),
        squeezing=squeezing_ku(p),
        spectral=dicke.spectral_decompose(p),
    )
