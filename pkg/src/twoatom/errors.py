"""Exception types raised by the library."""


class DickeError(ValueError):
    """Base class for all errors raised by ``twoatom``."""


class NonHermitianInput(DickeError):
    pass


class ConvergenceError(DickeError):
    pass


class InvalidStateParams(DickeError):
    pass


class NotXForm(DickeError):
    """Matrix has entries outside the two-atom Dicke X pattern."""


class NotPhysical(DickeError):
    """Matrix is not Hermitian, not unit trace, or not positive semidefinite."""


class MeanSpinZero(DickeError):
    """The Wineland parameter is undefined because <S_z> vanishes."""


class UnphysicalField(DickeError):
    pass
