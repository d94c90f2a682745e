"""
Exceptions raised by the untangle package.
"""


class UntangleError(Exception):
    """base class of every error raised by untangle"""


class AuditFailure(UntangleError):
    """a construction or a bound check did not hold"""


# geometry


class SharedEndpoint(UntangleError):
    """two segments given to a crossing test share an endpoint"""


class DegenerateTriangle(UntangleError):
    """the three corners of a triangle are collinear"""


# matching


class NotCrossing(UntangleError):
    """a flip was requested on two segments that do not cross"""

    def __init__(self, i: int, j: int):
        super().__init__(f"segments {i} and {j} do not cross")
        self.i = i
        self.j = j


class NotRedOnLine(UntangleError):
    """the matching is not red-on-a-line"""


class TiedBlueHeights(UntangleError):
    """two blue points share the maximal height"""


class SegmentStillCrossing(UntangleError):
    """a split was requested along a segment that still crosses"""


class SplitAmbiguous(UntangleError):
    """a segment has endpoints on both sides of the splitting line"""


# search


class BudgetExhausted(UntangleError):
    """a search explored more configurations than allowed"""

    def __init__(self, explored: int):
        super().__init__(f"budget exhausted after {explored} configurations")
        self.explored = explored


# potential


class LineNotAbove(UntangleError):
    """the projection line is not strictly above every point"""


class NotAKPair(UntangleError):
    """the pair does not straddle the focal red point"""


class ProjectedTie(UntangleError):
    """two blue points project to the same image"""


# tracking


class SpectatorIsFlipping(UntangleError):
    """the spectator segment is one of the two flipped segments"""


class NoValidChoice(AuditFailure):
    """no tracking choice avoids the H to X transition"""


# generators


class PerturbationChangedStates(AuditFailure):
    """perturbing blue heights changed a pair state"""


class UnclassifiableCrossing(AuditFailure):
    """a crossing of a derived fence is neither an end nor a middle crossing"""


class WrongPointSet(UntangleError):
    """the matching is not built on the fence point set"""


class NotDerivedFence(UntangleError):
    """the matching is not a derived fence"""


class ScriptInvalidated(AuditFailure):
    """a scripted flip is not a crossing pair"""


# reduction


class DegenerateRectangle(UntangleError):
    """a gadget rectangle has zero width or height"""


class ConstraintUnsatisfied(AuditFailure):
    """a gadget point set violates one of its defining constraints"""


class AssemblyAuditFailed(AuditFailure):
    """an audit failed while assembling the reduction matching"""

    def __init__(self, step: str, constraint: str):
        super().__init__(f"step {step}: {constraint}")
        self.step = step
        self.constraint = constraint
