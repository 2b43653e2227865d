"""Exception types raised by the simulator."""
import numbers


class SimulationError(RuntimeError):
    """Base class for errors raised during a simulation."""


class ParameterError(SimulationError, ValueError):
    """Raised when a parameter is outside its legal range."""

    def __init__(self, field, value, legal_range):
        self.field = field
        self.value = value
        self.legal_range = legal_range
        super().__init__(f"{field}={value!r} is outside the legal range {legal_range}")


class ConfigError(ParameterError):
    """Raised for problems in a run configuration file or command-line grid."""

    def __init__(self, message, field=None):
        self.field = field
        self.value = None
        self.legal_range = None
        Exception.__init__(self, message)


def check_range(field, value, low, high, low_open=False, high_open=False):
    """Validate that ``value`` lies in the interval described and return it.

    Args:
        field: Name reported in the error message
        value: Value to check
        low, high: Interval end points (None means unbounded)
        low_open, high_open: Whether each end point is excluded

    Returns:
        The value unchanged
    """
    legal = f"{'(' if low_open else '['}{low if low is not None else '-inf'}, " \
            f"{high if high is not None else 'inf'}{')' if high_open else ']'}"
    if value is None or isinstance(value, bool) or not isinstance(value, numbers.Real):
        raise ParameterError(field, value, legal)
    if low is not None and (value < low or (low_open and value == low)):
        raise ParameterError(field, value, legal)
    if high is not None and (value > high or (high_open and value == high)):
        raise ParameterError(field, value, legal)
    return value
