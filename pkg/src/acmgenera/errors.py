"""Exception types shared across the package."""


class EmptyFamilyError(ValueError):
    """The requested family of O-sequences has no members (multiplicity < length)."""


class MembershipError(ValueError):
    """An O-sequence was used with a tree family it does not belong to."""


class BudgetError(RuntimeError):
    """A computation exceeded its degree, node, or memory budget."""


class UnattainableGenusError(ValueError):
    """No O-sequence with the requested multiplicity and genus exists.

    ``kind`` is ``"gap"`` when the genus lies inside the admissible range but
    is not attained, ``"out-of-range"`` when it exceeds the range altogether.
    """

    def __init__(self, message: str, kind: str):
        super().__init__(message)
        self.kind = kind
