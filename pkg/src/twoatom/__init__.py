"""Entanglement and spin squeezing in the two-atom Dicke model."""
from .dicke import (
    BasisKind,
    SpectralDecomposition,
    XStateParams,
    collective_basis_transform,
    from_density_matrix,
    spectral_decompose,
    to_density_matrix,
)
from .errors import (
    DickeError,
    InvalidStateParams,
    MeanSpinZero,
    NonHermitianInput,
    NotPhysical,
    NotXForm,
    UnphysicalField,
)
from .fields import (
    FieldKind,
    FieldParams,
    classical_witness_parameter,
    quantum_pure_state,
    steady_state,
)
from .qcore import eigen_hermitian, is_positive_semidefinite
from .witness import (
    entanglement_report,
    partial_transpose,
    pt_eigenvalues_closed_form,
    spin_moments,
    squeezing_ku,
    squeezing_wineland,
    witness_report,
)

__version__ = "0.1.0"
