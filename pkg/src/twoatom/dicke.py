"""Two-atom Dicke states: collective basis, X-form density matrices, spectra.

Two bases are used throughout, both with fixed ordering:

* ``BasisKind.PRODUCT``: ``|e1 e2>, |e1 g2>, |g1 e2>, |g1 g2>``
* ``BasisKind.COLLECTIVE``: ``|e>, |s>, |a>, |g>`` with
  ``|s>, |a> = (|e1 g2> +- |g1 e2>) / sqrt(2)``

Within the Dicke model the antisymmetric state is never populated, so a
state is fixed by three populations and one two-photon coherence
(:class:`XStateParams`).
"""
from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass

import numpy as np

from . import qcore
from .errors import InvalidStateParams, NotPhysical, NotXForm

PARAM_TOL = 1e-12
XFORM_TOL = 1e-10

_R = 1.0 / math.sqrt(2.0)


class BasisKind(enum.Enum):
    PRODUCT = "product"
    COLLECTIVE = "collective"

    @property
    def labels(self) -> tuple[str, str, str, str]:
        if self is BasisKind.PRODUCT:
            return ("|e1e2>", "|e1g2>", "|g1e2>", "|g1g2>")
        return ("|e>", "|s>", "|a>", "|g>")


# Row k holds the product-basis amplitudes of collective state k.
COLLECTIVE_FROM_PRODUCT = np.array(
    [
        [1.0, 0.0, 0.0, 0.0],
        [0.0, _R, _R, 0.0],
        [0.0, _R, -_R, 0.0],
        [0.0, 0.0, 0.0, 1.0],
    ],
    dtype=np.complex128,
)

# Basis-vector positions of |e> and |g> (identical in both bases).
E_INDEX = 0
G_INDEX = 3


def basis_state(name: str, basis: BasisKind = BasisKind.PRODUCT) -> np.ndarray:
    """Collective state ``e``, ``s``, ``a`` or ``g`` as a vector in ``basis``."""
    k = "esag".index(name)
    v = np.zeros(4, dtype=np.complex128)
    v[k] = 1.0
    if basis is BasisKind.PRODUCT:
        v = COLLECTIVE_FROM_PRODUCT.T @ v
    return v


@dataclass(frozen=True)
class XStateParams:
    """Populations and two-photon coherence of a Dicke X state.

    ``rho_eg`` is the element in row ``|e1e2>``, column ``|g1g2>``; its
    conjugate sits in the mirrored corner.
    """

    rho_gg: float
    rho_ee: float
    rho_ss: float
    rho_eg: complex = 0j

    def __post_init__(self):
        try:
            object.__setattr__(self, "rho_gg", float(self.rho_gg))
            object.__setattr__(self, "rho_ee", float(self.rho_ee))
            object.__setattr__(self, "rho_ss", float(self.rho_ss))
            object.__setattr__(self, "rho_eg", complex(self.rho_eg))
        except (TypeError, ValueError) as exc:
            raise InvalidStateParams(f"non-numeric state parameter: {exc}") from None
        vals = (self.rho_gg, self.rho_ee, self.rho_ss, self.rho_eg.real, self.rho_eg.imag)
        if not all(math.isfinite(x) for x in vals):
            raise InvalidStateParams("state parameters must be finite")
        for name in ("rho_gg", "rho_ee", "rho_ss"):
            x = getattr(self, name)
            if not -PARAM_TOL <= x <= 1.0 + PARAM_TOL:
                raise InvalidStateParams(f"{name}={x!r} is outside [0, 1]")
        total = self.rho_gg + self.rho_ee + self.rho_ss
        if abs(total - 1.0) > PARAM_TOL:
            raise InvalidStateParams(f"populations sum to {total!r}, not 1")
        if abs(self.rho_eg) ** 2 > self.rho_ee * self.rho_gg + PARAM_TOL:
            raise InvalidStateParams(
                f"|rho_eg|^2={abs(self.rho_eg) ** 2!r} exceeds rho_ee*rho_gg="
                f"{self.rho_ee * self.rho_gg!r}"
            )

    @property
    def rho_ge(self) -> complex:
        return self.rho_eg.conjugate()

    @property
    def mean_sz(self) -> float:
        return self.rho_ee - self.rho_gg


@dataclass(frozen=True)
class SpectralDecomposition:
    """Eigenstates and weights of an X-state density matrix.

    Vectors are expressed in ``basis``.  ``psi_plus``/``psi_minus`` live in
    the ``{|g>, |e>}`` plane; ``psi_s`` and ``psi_a`` are the symmetric and
    antisymmetric collective states.
    """

    psi_plus: np.ndarray
    psi_minus: np.ndarray
    psi_s: np.ndarray
    psi_a: np.ndarray
    pi_plus: float
    pi_minus: float
    pi_s: float
    pi_a: float
    basis: BasisKind = BasisKind.PRODUCT

    def pairs(self) -> list[tuple[float, np.ndarray]]:
        return [
            (self.pi_plus, self.psi_plus),
            (self.pi_minus, self.psi_minus),
            (self.pi_s, self.psi_s),
            (self.pi_a, self.psi_a),
        ]

    def reconstruct(self) -> np.ndarray:
        return sum(p * qcore.projector(v) for p, v in self.pairs())


def _as_basis(basis) -> BasisKind:
    return basis if isinstance(basis, BasisKind) else BasisKind(basis)


def to_density_matrix(p: XStateParams, basis: BasisKind = BasisKind.PRODUCT) -> np.ndarray:
    """Build the 4x4 density matrix of ``p`` in the requested basis."""
    if not isinstance(p, XStateParams):
        raise InvalidStateParams(f"expected XStateParams, got {type(p).__name__}")
    basis = _as_basis(basis)
    m = np.zeros((4, 4), dtype=np.complex128)
    m[E_INDEX, E_INDEX] = p.rho_ee
    m[G_INDEX, G_INDEX] = p.rho_gg
    m[E_INDEX, G_INDEX] = p.rho_eg
    m[G_INDEX, E_INDEX] = p.rho_ge
    if basis is BasisKind.PRODUCT:
        m[1:3, 1:3] = 0.5 * p.rho_ss
    else:
        m[1, 1] = p.rho_ss
    return m


def collective_basis_transform(m, from_basis: BasisKind, to_basis: BasisKind) -> np.ndarray:
    """Re-express a 4x4 operator given in ``from_basis`` in ``to_basis``."""
    a = qcore.as_matrix4(m)
    from_basis, to_basis = _as_basis(from_basis), _as_basis(to_basis)
    if from_basis is to_basis:
        return a
    u = COLLECTIVE_FROM_PRODUCT
    if to_basis is BasisKind.COLLECTIVE:
        return u @ a @ u.conj().T
    return u.conj().T @ a @ u


def _xform_violations(m: np.ndarray, basis: BasisKind):
    """Yield (row, col, magnitude) for entries breaking the X pattern."""
    labels = basis.labels
    if basis is BasisKind.PRODUCT:
        allowed = {(0, 0), (0, 3), (3, 0), (3, 3), (1, 1), (1, 2), (2, 1), (2, 2)}
    else:
        allowed = {(0, 0), (0, 3), (3, 0), (3, 3), (1, 1)}
    for i in range(4):
        for j in range(4):
            if (i, j) not in allowed:
                yield labels[i], labels[j], abs(m[i, j])
    if basis is BasisKind.PRODUCT:
        # central block must be (rho_ss / 2) * [[1, 1], [1, 1]]: no |a> content
        half = 0.5 * (m[1, 1] + m[2, 2])
        yield labels[1], labels[1], abs(m[1, 1] - half)
        yield labels[1], labels[2], abs(m[1, 2] - half)
        yield labels[2], labels[1], abs(m[2, 1] - half)


def check_physical(m, tol: float = XFORM_TOL) -> None:
    """Raise :class:`NotPhysical` unless ``m`` is a density matrix within ``tol``."""
    defect = qcore.hermiticity_defect(m)
    if defect > tol:
        raise NotPhysical(f"not Hermitian: max |m - m^dagger| = {defect:.3e}")
    tr = complex(np.trace(m))
    if abs(tr - 1.0) > tol:
        raise NotPhysical(f"trace is {tr.real:.17g}{tr.imag:+.3g}j, not 1")
    lowest = qcore.eigvals_hermitian(m)[0]
    if lowest < -tol:
        raise NotPhysical(f"not positive semidefinite: smallest eigenvalue {lowest:.6g}")


def from_density_matrix(
    m, basis: BasisKind = BasisKind.PRODUCT, tol: float = XFORM_TOL
) -> XStateParams:
    """Extract the X-state parameters from a density matrix.

    The sparsity pattern is checked first, then physicality.  Deviations
    no larger than ``tol`` are projected away: small negative populations
    are clipped, the trace is restored through ``rho_gg`` and ``|rho_eg|``
    is capped at ``sqrt(rho_ee * rho_gg)``.

    Raises
    ------
    NotXForm
        An entry outside the X pattern (or antisymmetric content) exceeds ``tol``.
    NotPhysical
        The matrix is not Hermitian, unit-trace and PSD within ``tol``.
    """
    a = qcore.as_matrix4(m)
    basis = _as_basis(basis)
    for row, col, mag in _xform_violations(a, basis):
        if mag > tol:
            raise NotXForm(
                f"entry ({row}, {col}) deviates from the Dicke X form by {mag:.6g} "
                f"in the {basis.value} basis"
            )
    check_physical(a, tol)

    rho_ee = max(0.0, a[E_INDEX, E_INDEX].real)
    rho_ss = (a[1, 1] + a[2, 2]).real if basis is BasisKind.PRODUCT else a[1, 1].real
    rho_ss = max(0.0, rho_ss)
    rho_gg = a[G_INDEX, G_INDEX].real
    if abs(rho_gg + rho_ee + rho_ss - 1.0) > PARAM_TOL:
        rho_gg = 1.0 - rho_ee - rho_ss
    rho_gg = max(0.0, rho_gg)
    rho_eg = complex(0.5 * (a[E_INDEX, G_INDEX] + a[G_INDEX, E_INDEX].conjugate()))
    if abs(rho_eg) ** 2 > rho_ee * rho_gg + 0.5 * PARAM_TOL:
        rho_eg = cmath.rect(math.sqrt(rho_ee * rho_gg), cmath.phase(rho_eg))
    return XStateParams(rho_gg=rho_gg, rho_ee=rho_ee, rho_ss=rho_ss, rho_eg=rho_eg)


def two_photon_probabilities(p: XStateParams) -> tuple[float, float]:
    """Eigenvalues (Pi_plus, Pi_minus) of the {|e>, |g>} block.

    ``Pi_minus`` is taken as ``det / Pi_plus`` (clipped at zero) so that a
    pure state gives exactly zero instead of rounding noise.
    """
    mean = 0.5 * (p.rho_gg + p.rho_ee)
    half_gap = 0.5 * math.hypot(p.rho_gg - p.rho_ee, 2.0 * abs(p.rho_eg))
    pi_plus = mean + half_gap
    if pi_plus == 0.0:
        return 0.0, 0.0
    det = p.rho_ee * p.rho_gg - abs(p.rho_eg) ** 2
    return pi_plus, max(0.0, det / pi_plus)


def _two_photon_vectors(p: XStateParams) -> tuple[complex, complex, complex, complex]:
    """(g, e) amplitudes of Psi_plus and Psi_minus, unnormalised.

    The closed forms ``[(Pi_+ - rho_ee), rho_eg]`` and ``[rho_ge, (Pi_- - rho_gg)]``
    lose all precision when rho_eg -> 0 with rho_ee > rho_gg (both entries
    vanish).  There the mirrored rows of the eigen-equation,
    ``[rho_ge, (Pi_+ - rho_gg)]`` and ``[(Pi_- - rho_ee), rho_eg]``, are used.
    """
    gap = math.hypot(p.rho_gg - p.rho_ee, 2.0 * abs(p.rho_eg))
    d = p.rho_gg - p.rho_ee
    # Pi_+ - rho_ee and rho_gg - Pi_- written without cancellation
    plus_minus_ee = 0.5 * (gap + d)
    plus_minus_gg = 0.5 * (gap - d)
    if d >= 0.0:
        plus = (complex(plus_minus_ee), p.rho_eg)
        minus = (p.rho_ge, complex(-plus_minus_ee))
    else:
        plus = (p.rho_ge, complex(plus_minus_gg))
        minus = (complex(-plus_minus_gg), p.rho_eg)
    return (*plus, *minus)


def _plane_vector(g_amp: complex, e_amp: complex, basis: BasisKind) -> np.ndarray:
    scale = max(abs(g_amp), abs(e_amp))  # keeps subnormal amplitudes from underflowing
    v = (g_amp / scale) * basis_state("g", basis) + (e_amp / scale) * basis_state("e", basis)
    return qcore.fix_phase(v / np.linalg.norm(v))


def spectral_decompose(p: XStateParams, basis: BasisKind = BasisKind.PRODUCT) -> SpectralDecomposition:
    """Diagonalise the X state into two-photon entangled states plus |s>, |a>.

    When ``rho_eg = 0`` and ``rho_gg = rho_ee`` the plane is degenerate
    (``Pi_plus == Pi_minus``) and ``|g>``, ``|e>`` are returned.
    """
    if not isinstance(p, XStateParams):
        raise InvalidStateParams(f"expected XStateParams, got {type(p).__name__}")
    basis = _as_basis(basis)
    pi_plus, pi_minus = two_photon_probabilities(p)
    if p.rho_eg == 0 and p.rho_gg == p.rho_ee:
        psi_plus = basis_state("g", basis)
        psi_minus = basis_state("e", basis)
    else:
        gp, ep, gm, em = _two_photon_vectors(p)
        psi_plus = _plane_vector(gp, ep, basis)
        psi_minus = _plane_vector(gm, em, basis)
    return SpectralDecomposition(
        psi_plus=psi_plus,
        psi_minus=psi_minus,
        psi_s=basis_state("s", basis),
        psi_a=basis_state("a", basis),
        pi_plus=pi_plus,
        pi_minus=pi_minus,
        pi_s=p.rho_ss,
        pi_a=0.0,
        basis=basis,
    )
