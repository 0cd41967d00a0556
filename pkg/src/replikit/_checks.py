import math
import numbers


class DomainError(ValueError):
    """Raised when an argument is outside the domain of a computation."""


def finite(name, value):
    if isinstance(value, bool) or not isinstance(value, numbers.Real):
        raise DomainError(f"{name} must be a real number, got {value!r}")
    value = float(value)
    if not math.isfinite(value):
        raise DomainError(f"{name} must be finite, got {value!r}")
    return value


def positive(name, value):
    value = finite(name, value)
    if value <= 0:
        raise DomainError(f"{name} must be > 0, got {value!r}")
    return value


def open_unit(name, value):
    value = finite(name, value)
    if not 0.0 < value < 1.0:
        raise DomainError(f"{name} must lie strictly between 0 and 1, got {value!r}")
    return value


def integer(name, value, minimum):
    if isinstance(value, bool) or not isinstance(value, numbers.Integral):
        # accept 100.0 but not 100.5
        if isinstance(value, float) and value.is_integer():
            value = int(value)
        else:
            raise DomainError(f"{name} must be an integer, got {value!r}")
    value = int(value)
    if value < minimum:
        raise DomainError(f"{name} must be >= {minimum}, got {value}")
    return value
