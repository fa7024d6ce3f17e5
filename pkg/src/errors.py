"""
Exceptions raised by the geometry, series and summation modules.

Every error carries the exit status the command-line front end reports for it.
"""


class LatticeSumError(Exception):
    """Base class for all library errors"""
    exit_code = 1


class InputError(LatticeSumError):
    """Unparsable points, weights or options"""
    exit_code = 2


class IndexOutOfRange(LatticeSumError):
    """Requested quasi-polynomial coefficient does not exist"""
    exit_code = 2


class DegenerateHull(LatticeSumError):
    """The convex hull is a point or a segment"""
    exit_code = 3


class ZeroVector(LatticeSumError):
    """A nonzero vector was required"""
    exit_code = 2


class NotNeeded(LatticeSumError):
    """Decomposition requested for a cone that is already unimodular"""
    exit_code = 4


class NotUnimodular(LatticeSumError):
    """A unimodular cone (det = +1 where orientation matters) was required"""
    exit_code = 4


class OrderExceeded(LatticeSumError):
    """Coefficient requested beyond the truncation order of a series"""
    exit_code = 4


class OrderTooLow(LatticeSumError):
    """Series truncated below the degree of the polynomial it acts on"""
    exit_code = 4


class ConsistencyError(LatticeSumError):
    """An internal invariant failed (oracle mismatch, non-integral count, ...)"""
    exit_code = 4


class BudgetExceeded(LatticeSumError):
    """Enumeration would scan more bounding-box cells than allowed"""
    exit_code = 5
