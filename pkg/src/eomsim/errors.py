"""Exception hierarchy shared by the library and the command-line front end."""


class EomsimError(Exception):
    """Base class; ``exit_code`` is what the CLI returns for it."""

    exit_code = 4


class InvalidParameterError(EomsimError, ValueError):
    exit_code = 2


class DegenerateParametersError(EomsimError, ArithmeticError):
    pass


class FixedPointDivergenceError(EomsimError, ArithmeticError):
    pass


class CalibrationRangeError(EomsimError, ValueError):
    pass


class StabilityError(EomsimError):
    exit_code = 3


class NumericError(EomsimError, ArithmeticError):
    pass


class InvalidStateError(EomsimError, ValueError):
    pass


class InvalidTransformError(EomsimError, ValueError):
    pass


class ConfigError(EomsimError, ValueError):
    exit_code = 2


class PlotSpecError(EomsimError, ValueError):
    exit_code = 2
