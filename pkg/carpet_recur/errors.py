"""Error hierarchy shared by the library and the command line.

Each class carries the process exit code the CLI maps it to:
2 for unreadable input, 3 for a violated hypothesis, 4 for an exhausted
enumeration budget and 1 for everything else.
"""


class CarpetRecurError(Exception):
    exit_code = 1


# -- input / parse (exit 2) ---------------------------------------------------

class SpecParseError(CarpetRecurError, ValueError):
    exit_code = 2

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class EmptyAlphabet(CarpetRecurError, ValueError):
    exit_code = 2


class DigitOutOfRange(CarpetRecurError, ValueError):
    exit_code = 2

    def __init__(self, pair: tuple[int, int], m1: int, m2: int):
        self.pair = pair
        super().__init__(f"digit pair {pair} outside {m1}x{m2} grid")


class DuplicatePair(CarpetRecurError, ValueError):
    exit_code = 2

    def __init__(self, pair: tuple[int, int]):
        self.pair = pair
        super().__init__(f"duplicate digit pair {pair}")


class BadBases(CarpetRecurError, ValueError):
    exit_code = 2


class CloudFormatError(CarpetRecurError, ValueError):
    exit_code = 2


class BadScheduleParameter(CarpetRecurError, ValueError):
    exit_code = 2


# -- hypothesis (exit 3) ------------------------------------------------------

class NonUniformFibre(CarpetRecurError, ValueError):
    exit_code = 3

    def __init__(self, column_profile):
        self.column_profile = tuple(column_profile)
        profile = " ".join(f"{col}:{count}" for col, count in self.column_profile)
        super().__init__(f"carpet does not have uniform fibres (column profile {profile})")


class InvalidTauPair(CarpetRecurError, ValueError):
    exit_code = 3


# -- budget (exit 4) ----------------------------------------------------------

class BudgetExceeded(CarpetRecurError):
    exit_code = 4

    def __init__(self, what: str, needed: int, budget: int):
        self.needed = needed
        self.budget = budget
        super().__init__(f"{what}: {needed} exceeds budget {budget} (raise CARPET_RECUR_BUDGET)")


# -- other domain errors (exit 1) ---------------------------------------------

class ShiftTooDeep(CarpetRecurError, ValueError):
    pass


class DepthExceeded(CarpetRecurError, ValueError):
    pass


class DepthMismatch(CarpetRecurError, ValueError):
    pass


class HorizonExceeded(CarpetRecurError, ValueError):
    pass


class DepthTooSmall(CarpetRecurError, ValueError):
    pass


class ZeroConditional(CarpetRecurError, ValueError):
    pass


class UnsupportedLength(CarpetRecurError, ValueError):
    pass


class InsufficientLevels(CarpetRecurError, ValueError):
    pass


class UnsupportedRate(CarpetRecurError, ValueError):
    pass


class CoverViolation(CarpetRecurError):
    pass
