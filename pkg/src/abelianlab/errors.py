"""Exception types raised across the package."""


class AbelianLabError(Exception):
    """Base class for all package errors."""


class NotProlongable(AbelianLabError):
    pass


class AlphabetMismatch(AbelianLabError):
    pass


class TooShort(AbelianLabError):
    pass


class NotStabilized(AbelianLabError):
    """Factor enumeration hit the prefix cap before two doublings agreed."""

    def __init__(self, n, cap):
        super().__init__(f"factors of length {n} did not stabilize below prefix length {cap}")
        self.n = n
        self.cap = cap


class NotClosed(AbelianLabError):
    """Kernel exploration exceeded the rank (or state) cap."""

    def __init__(self, cap, message=None):
        super().__init__(message or f"kernel basis exceeded rank cap {cap}")
        self.cap = cap


class StateCapExceeded(NotClosed):
    def __init__(self, cap):
        super().__init__(cap, f"automatic kernel exceeded {cap} states")


class VerificationFailed(AbelianLabError):
    """A guessed relation broke on full oracle values."""

    def __init__(self, n, label, expected=None, got=None):
        msg = f"relation for slice {label} fails at n={n}"
        if expected is not None:
            msg += f" (oracle {expected}, relation {got})"
        super().__init__(msg)
        self.n = n
        self.label = label
        self.expected = expected
        self.got = got
