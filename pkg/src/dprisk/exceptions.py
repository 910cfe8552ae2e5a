"""Exception hierarchy.

Every error carries the process exit code the command line maps it to:
2 for bad input data, 3 for bad configuration, 4 for a broken invariant.
"""


class DPRiskError(ValueError):
    exit_code = 2


class InputError(DPRiskError):
    exit_code = 2


class ConfigError(DPRiskError):
    exit_code = 3


class InvariantViolation(DPRiskError):
    exit_code = 4


class RemovalWouldEmpty(InputError):
    """Removing an element would leave an empty data set."""


class ValueNotInUniverse(InputError):
    """A value was added (or sampled) that the universe does not contain."""


class EmptyAfterFilter(InputError):
    """No valid values remained after missing-value filtering."""


class ColumnNotFound(InputError):
    pass


class ParseError(InputError):
    def __init__(self, row, content):
        self.row = row
        self.content = content
        super().__init__(f"row {row}: cannot parse {content!r} as a number")


class SampleTooSmall(InputError):
    pass


class InvalidEpsilon(ConfigError):
    pass


class InvalidSensitivity(ConfigError):
    pass


class UniverseTooLarge(ConfigError):
    """The brute-force oracle refuses universes above its enumeration cap."""
