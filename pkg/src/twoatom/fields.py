"""Steady states of two Dicke atoms driven by broadband (squeezed) vacuum.

A reservoir is described by its mean photon number ``N`` and two-photon
correlation ``M`` with ``|M|**2 <= N (N + 1)``.  The steady state is an X
state with

    rho_ee = [N^2 (2N+1) - (2N-1)|M|^2] / [(2N+1) D]
    rho_ss = [N (N+1) - |M|^2] / D
    |rho_eg| = |M| / [(2N+1) D],        D = 3N^2 + 3N + 1 - 3|M|^2

Evaluated as written, ``D`` and the ``rho_ee`` numerator cancel
catastrophically near the quantum bound (``D -> 1`` while each term grows
like ``N^2``).  Everything is therefore expressed through the correlation
deficit ``delta = N (N + 1) - |M|^2 >= 0``:

    D = 1 + 3 delta,   rho_ee = [N + (2N-1) delta] / [(2N+1) D],
    rho_ss = delta / D

which is the same rational function with no cancelling terms.  The named
field kinds supply ``delta`` exactly (``N(N+1)``, ``N``, ``0``).
"""
from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass

import numpy as np

from . import dicke
from .dicke import BasisKind, XStateParams
from .errors import UnphysicalField

BOUND_TOL = 1e-12


class FieldKind(enum.Enum):
    THERMAL = "thermal"
    CLASSICAL_SQUEEZED = "classical"
    QUANTUM_SQUEEZED = "quantum"
    CUSTOM = "custom"


def max_correlation(n_bar: float) -> float:
    return math.sqrt(n_bar * (n_bar + 1.0))


def _bound_slack(n_bar: float) -> float:
    return BOUND_TOL * max(1.0, max_correlation(n_bar))


@dataclass(frozen=True)
class FieldParams:
    n_bar: float
    m_corr: complex = 0j
    kind: FieldKind = FieldKind.CUSTOM

    def __post_init__(self):
        object.__setattr__(self, "n_bar", float(self.n_bar))
        object.__setattr__(self, "m_corr", complex(self.m_corr))
        object.__setattr__(self, "kind", FieldKind(self.kind))
        n, m = self.n_bar, abs(self.m_corr)
        if not (math.isfinite(n) and math.isfinite(m)):
            raise UnphysicalField("field parameters must be finite")
        if n < 0.0:
            raise UnphysicalField(f"mean photon number N={n!r} is negative")
        slack = _bound_slack(n)
        if m > max_correlation(n) + slack:
            raise UnphysicalField(
                f"|M|={m!r} exceeds sqrt(N(N+1))={max_correlation(n)!r} for N={n!r}"
            )
        expected = {
            FieldKind.THERMAL: 0.0,
            FieldKind.CLASSICAL_SQUEEZED: n,
            FieldKind.QUANTUM_SQUEEZED: max_correlation(n),
        }.get(self.kind)
        if expected is not None and abs(m - expected) > slack:
            raise UnphysicalField(f"{self.kind.value} field needs |M|={expected!r}, got {m!r}")

    @classmethod
    def thermal(cls, n_bar: float) -> FieldParams:
        return cls(n_bar, 0j, FieldKind.THERMAL)

    @classmethod
    def classical(cls, n_bar: float, m_arg: float = 0.0) -> FieldParams:
        return cls(n_bar, cmath.rect(n_bar, m_arg), FieldKind.CLASSICAL_SQUEEZED)

    @classmethod
    def quantum(cls, n_bar: float, m_arg: float = 0.0) -> FieldParams:
        return cls(n_bar, cmath.rect(max_correlation(n_bar), m_arg), FieldKind.QUANTUM_SQUEEZED)

    @classmethod
    def custom(cls, n_bar: float, m_abs: float = 0.0, m_arg: float = 0.0) -> FieldParams:
        if m_abs < 0.0:
            raise UnphysicalField(f"|M| must be non-negative, got {m_abs!r}")
        return cls(n_bar, cmath.rect(m_abs, m_arg), FieldKind.CUSTOM)

    @classmethod
    def of_kind(cls, kind, n_bar: float, m_abs: float | None = None, m_arg: float = 0.0) -> FieldParams:
        kind = FieldKind(kind)
        if kind is FieldKind.CUSTOM:
            return cls.custom(n_bar, 0.0 if m_abs is None else m_abs, m_arg)
        if kind is FieldKind.THERMAL:
            return cls.thermal(n_bar)
        if kind is FieldKind.CLASSICAL_SQUEEZED:
            return cls.classical(n_bar, m_arg)
        return cls.quantum(n_bar, m_arg)

    @property
    def correlation_deficit(self) -> float:
        """``N (N + 1) - |M|^2``, exact for the named kinds."""
        n = self.n_bar
        if self.kind is FieldKind.THERMAL:
            return n * (n + 1.0)
        if self.kind is FieldKind.CLASSICAL_SQUEEZED:
            return n
        if self.kind is FieldKind.QUANTUM_SQUEEZED:
            return 0.0
        return max(0.0, n * (n + 1.0) - abs(self.m_corr) ** 2)


def steady_state(f: FieldParams) -> XStateParams:
    """Steady-state X state for broadband driving by the field ``f``."""
    if not isinstance(f, FieldParams):
        raise TypeError(f"expected FieldParams, got {type(f).__name__}")
    n = f.n_bar
    delta = f.correlation_deficit
    denom = 1.0 + 3.0 * delta
    rate = (2.0 * n + 1.0) * denom
    rho_ee = (n + (2.0 * n - 1.0) * delta) / rate
    rho_ss = delta / denom
    coh = abs(f.m_corr) / rate
    rho_eg = cmath.rect(coh, cmath.phase(f.m_corr)) if coh > 0.0 else 0j
    return XStateParams(rho_gg=1.0 - rho_ee - rho_ss, rho_ee=rho_ee, rho_ss=rho_ss, rho_eg=rho_eg)


def classical_witness_parameter(n_bar: float) -> float:
    """``2|rho_eg| - rho_ss`` for the classical squeezed field (|M| = N).

    Positive exactly when ``N < 1/2``, where the state is both entangled and
    spin squeezed.
    """
    if n_bar < 0.0:
        raise ValueError(f"n_bar must be non-negative, got {n_bar!r}")
    return n_bar * (1.0 - 2.0 * n_bar) / ((2.0 * n_bar + 1.0) * (3.0 * n_bar + 1.0))


def quantum_pure_state(n_bar: float, basis: BasisKind = BasisKind.COLLECTIVE) -> np.ndarray:
    """Pure steady state ``(sqrt(N+1)|g> + sqrt(N)|e>) / sqrt(2N+1)`` of the quantum field."""
    if n_bar < 0.0:
        raise ValueError(f"n_bar must be non-negative, got {n_bar!r}")
    norm = math.sqrt(2.0 * n_bar + 1.0)
    return (
        math.sqrt(n_bar + 1.0) / norm * dicke.basis_state("g", basis)
        + math.sqrt(n_bar) / norm * dicke.basis_state("e", basis)
    )


def quantum_negativity(n_bar: float) -> float:
    """Negativity of the quantum-field steady state, ``2 sqrt(N(N+1)) / (2N+1)``."""
    return 2.0 * max_correlation(n_bar) / (2.0 * n_bar + 1.0)
