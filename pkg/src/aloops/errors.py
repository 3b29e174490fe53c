"""Exception hierarchy.

Validation failures derive from :class:`LoopError` (a ``ValueError``);
resource limits derive from :class:`ResourceLimit`. The CLI maps the former
to exit code 1 and the latter to exit code 2.
"""


class LoopError(ValueError):
    pass


class ResourceLimit(RuntimeError):
    pass


class InternalCheckFailed(AssertionError):
    """A computed object violated a property that is known to hold."""


# table_core
class NotLatin(LoopError):
    def __init__(self, row, col, kind="row"):
        self.row, self.col, self.kind = row, col, kind
        super().__init__(f"duplicate entry in {kind} {row if kind == 'row' else col} "
                         f"at cell ({row}, {col}) (1-based)")


class NoIdentity(LoopError):
    pass


class NoTwoSidedInverse(LoopError):
    pass


class NotPowerAssociative(LoopError):
    pass


class NotUniquely2Divisible(LoopError):
    pass


class NotASubloop(LoopError):
    pass


class NotNormal(LoopError):
    pass


class IllDefined(InternalCheckFailed):
    pass


# perm_group
class CapExceeded(ResourceLimit):
    def __init__(self, cap):
        self.cap = cap
        super().__init__(f"group materialization exceeded cap of {cap} elements")


class NotTransitive(LoopError):
    pass


class NotAnAutomorphism(LoopError):
    pass


class EvenOrder(LoopError):
    pass


class BudgetExceeded(ResourceLimit):
    pass


# associated operations
class NotLeftBol(LoopError):
    pass


class NotLeftBruck(LoopError):
    pass


class NotAutomorphic(LoopError):
    pass


class NotCommutativeAutomorphic(LoopError):
    pass


class DecompositionFailed(InternalCheckFailed):
    pass


class BruckNotAbelian(LoopError):
    pass


class Wright1Fails(LoopError):
    def __init__(self, x):
        self.x = x
        super().__init__(f"l_x or r_x is not a bijection for x={x + 1} (1-based)")


# constructions
class OddM(LoopError):
    pass


class NotAutomorphismOfG(LoopError):
    pass


class NotAbelian(LoopError):
    pass


class NotPrime(LoopError):
    pass


# search
class BoundExceeded(ResourceLimit):
    pass


class HNotInStabilizer(LoopError):
    pass


class DegreeMismatch(LoopError):
    pass
