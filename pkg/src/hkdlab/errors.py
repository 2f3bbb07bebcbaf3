"""Exception types raised by hkdlab."""


class HKDError(Exception):
    """Base class for all hkdlab errors."""


class DomainError(HKDError, ValueError):
    """An argument lies outside the domain of an operation."""


class ContractError(HKDError):
    """An input violates a structural precondition (e.g. not a projector)."""


class NotCompatibleError(ContractError):
    """A restriction of U(t, s) to the kernel of P(s) is numerically singular."""

    def __init__(self, msg, t=None, s=None):
        super().__init__(msg)
        self.t = t
        self.s = s


class ResidualError(HKDError):
    """Right-hand side is not in the image of the restricted map."""

    def __init__(self, msg, residual):
        super().__init__(msg)
        self.residual = residual


class PreconditionError(HKDError):
    """A check cannot run because the system fails its standing hypothesis."""

    def __init__(self, msg, where=None, defect=None):
        super().__init__(msg)
        self.where = where
        self.defect = defect
