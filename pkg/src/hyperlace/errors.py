"""Exception types shared by the constructors and the CLI."""


class SameParity(ValueError):
    """Endpoints of a Hamiltonian path in Q_n must have opposite parity."""


class ContractViolation(ValueError):
    """A subsolver was called outside its stated preconditions."""


class ConditionViolated(ContractViolation):
    """The balanced-pairs inequality 2k - |pairs that are edges| < n fails."""


class Inadmissible(ValueError):
    def __init__(self, report):
        super().__init__("; ".join(report.problems()) or "inadmissible instance")
        self.report = report


class NotFound(RuntimeError):
    """Search finished without a solution."""


class ConstructionFailed(RuntimeError):
    """The recursive construction ran out of options; always a defect."""

    def __init__(self, message, trace=None):
        super().__init__(message)
        self.trace = trace
