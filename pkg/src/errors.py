"""Base exception shared by every ctqw module."""


class CtqwError(Exception):
    """Root of all domain errors raised by ctqw.

    Not a ValueError subclass: raised inside a pydantic validator it
    propagates as-is instead of becoming a ValidationError.
    """
    pass
