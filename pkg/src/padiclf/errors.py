"""Exception types shared across the package."""


class PoleError(ValueError):
    """Evaluation requested at a pole of the defining prefactor."""


class UnsupportedCharacterError(ValueError):
    """Character values do not embed into the p-adic base field."""


class RouteMismatchError(RuntimeError):
    """Two independent computation routes disagreed (invariant violation)."""
