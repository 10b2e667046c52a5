"""Exception types shared across the package.

Every error carries a short machine-readable ``code`` so the CLI can
report failures in a scriptable way.
"""


class CertifierError(Exception):
    """Base class for all package errors."""

    def __init__(self, message, code="error"):
        super().__init__(message)
        self.code = code


class InputError(CertifierError):
    """Malformed or inconsistent input data."""

    def __init__(self, message, code="bad-input"):
        super().__init__(message, code)


class LimitError(CertifierError):
    """A configured size limit would be exceeded; refuse rather than crawl."""

    def __init__(self, message, code="limit-exceeded"):
        super().__init__(message, code)
