"""Exception hierarchy for the resonant oscillator toolkit."""


class OscillatorError(Exception):
    """Base class for every error raised by this package."""


class InvalidParams(OscillatorError, ValueError):
    pass


class WrongSignCase(OscillatorError, ValueError):
    """Raised when a mu < 0 routine is handed mu >= 0 (reflect first)."""


class ResonanceConditionViolated(OscillatorError):
    """4|mu||eps| >= 1, so no barrier certificate can be built."""

    def __init__(self, product, message=None):
        self.product = product
        super().__init__(
            message or f"4|mu||eps| = {product!r} is not < 1; no certificate exists"
        )


class DegenerateDiscriminant(OscillatorError, ValueError):
    def __init__(self, discriminant):
        self.discriminant = discriminant
        super().__init__(f"discriminant {discriminant!r} is not positive")


class InvalidBracketChoice(OscillatorError, ValueError):
    pass


class ShapeError(OscillatorError, ValueError):
    pass


class NonPositiveShift(OscillatorError, ValueError):
    pass


class NoConvergence(OscillatorError):
    """Iteration cap reached. ``trace`` holds the partial history."""

    def __init__(self, message, trace=None, solution=None):
        super().__init__(message)
        self.trace = trace
        self.solution = solution


class BracketEscape(OscillatorError):
    def __init__(self, message, trace=None):
        super().__init__(message)
        self.trace = trace


class SingularJacobian(OscillatorError):
    def __init__(self, condition, trace=None):
        self.condition = condition
        self.trace = trace
        super().__init__(f"Newton Jacobian is numerically singular (cond ~ {condition:.3e})")
