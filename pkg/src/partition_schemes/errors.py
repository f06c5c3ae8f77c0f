"""Exception types shared across the package."""


class SchemeError(Exception):
    """Base class for domain errors raised by this package."""


class OracleCeilingExceeded(SchemeError):
    pass


class NoNontrivialRows(SchemeError):
    pass


class BadParams(SchemeError):
    pass


class InfeasibleDistribution(SchemeError):
    pass


class NoViableBaseSet(SchemeError):
    pass


class TallyOutOfRange(SchemeError):
    def __init__(self, y, r):
        super().__init__(f"tally y={y} outside [0, {r}]")
        self.y = y
        self.r = r


class TableTooLarge(SchemeError):
    pass


class NotRejected(SchemeError):
    pass


class BoundTooLarge(SchemeError):
    pass
