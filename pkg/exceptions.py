"""
Error hierarchy for the MIMO switch DMT toolkit.
"""


class SwitchDMTError(Exception):
    """Root of every error raised by this package."""


class InvalidArgumentError(SwitchDMTError, ValueError):
    """An operation was called outside its preconditions."""


class SimulationRefusedError(SwitchDMTError):
    """A simulation configuration is refused rather than approximated."""


class FitRefusedError(SwitchDMTError):
    """An exponent fit has too few usable SNR points."""


class ConfigurationError(SwitchDMTError):
    """An environment setting could not be interpreted."""
