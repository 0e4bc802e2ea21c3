"""Exception hierarchy shared by the numerical modules and the CLI."""


class RefourierError(Exception):
    """Base class for every computation error raised by the package."""


class NonFiniteValue(RefourierError, ArithmeticError):
    """An integrand returned NaN or an infinity inside the integration range."""

    def __init__(self, where):
        self.where = where
        super().__init__(f"non-finite integrand value near t={where!r}")


class ParityMismatch(RefourierError, ValueError):
    pass


class CancellationPreconditionFailed(RefourierError, ValueError):
    pass


class NotIntegrable(RefourierError):
    pass


class PreconditionFailed(RefourierError):
    pass


class InvalidQ(RefourierError, ValueError):
    pass


class UnknownFunction(RefourierError, KeyError):
    pass
