"""Exception hierarchy.

Every error carries a short ``code`` that the command line front end prints
as ``ERROR <code>: <detail>``.
"""


class LangEquityError(Exception):
    """Base class for all data and contract errors raised by the package."""

    code = "error"

    def __init__(self, detail=""):
        super().__init__(detail)
        self.detail = detail


class DataError(LangEquityError):
    code = "DataError"


class ParseError(DataError):
    """A data file could not be parsed.  ``line`` is 1-based when known."""

    code = "ParseError"

    def __init__(self, detail, path=None, line=None):
        where = ""
        if path is not None:
            where = f"{path}"
            if line is not None:
                where += f":{line}"
            where += ": "
        super().__init__(where + detail)
        self.path = path
        self.line = line


class MissingFile(DataError):
    code = "MissingFile"


class UnknownLanguage(DataError):
    code = "UnknownLanguage"


class AmbiguousName(DataError):
    code = "AmbiguousName"


class UnknownTask(DataError):
    code = "UnknownTask"


class DuplicateLanguage(DataError):
    code = "DuplicateLanguage"


class InvalidRecord(DataError):
    code = "InvalidRecord"


class EmptyMemberSet(DataError):
    code = "EmptyMemberSet"


class UnknownCountry(DataError):
    code = "UnknownCountry"


class ZeroCountryPopulation(DataError):
    code = "ZeroCountryPopulation"


class OutOfRangeScore(DataError):
    code = "OutOfRangeScore"


class ShareSumExceedsOne(DataError):
    code = "ShareSumExceedsOne"


class UnmappedCountry(DataError):
    code = "UnmappedCountry"


class NoRowsForFlow(DataError):
    code = "NoRowsForFlow"


class MissingContext(LangEquityError):
    code = "MissingContext"


class DegenerateRange(LangEquityError):
    code = "DegenerateRange"


class EmptyUniverse(LangEquityError):
    code = "EmptyUniverse"


class AllZeroPopulations(LangEquityError):
    code = "AllZeroPopulations"


class UniverseMismatch(LangEquityError):
    code = "UniverseMismatch"


class EmptySubset(LangEquityError):
    code = "EmptySubset"


class UnknownNode(LangEquityError):
    code = "UnknownNode"


class InsufficientData(LangEquityError):
    code = "InsufficientData"


class EmptyGroup(LangEquityError):
    code = "EmptyGroup"
