"""Exception types shared by the library and the command line front end."""


class InputError(ValueError):
    """Malformed or out-of-contract input (wrong shapes, invalid parameters)."""


class PreconditionError(ValueError):
    """Well-formed input that violates a mathematical precondition."""
