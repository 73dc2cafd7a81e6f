"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain where the operation is defined."""


class DivergenceError(ArithmeticError):
    """A moment or norm integral is infinite (the function leaves the space)."""


class ConvergenceError(RuntimeError):
    """An iterative method exhausted its budget before meeting its tolerance.

    The best estimate reached so far is kept on the exception.
    """

    def __init__(self, message, value=None, abs_error_estimate=None, evaluations=0):
        super().__init__(message)
        self.value = value
        self.abs_error_estimate = abs_error_estimate
        self.evaluations = evaluations
