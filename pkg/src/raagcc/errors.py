"""Exception hierarchy shared by every module."""


class RaagError(ValueError):
    """Base class; the CLI maps these to exit codes."""


class InvalidVertexError(RaagError):
    pass


class InvalidGraphError(RaagError):
    pass


class SizeLimitError(RaagError):
    pass


class SpecError(RaagError):
    """Malformed relative group descriptor or violated precondition."""


class MixedClassError(SpecError):
    pass


class MalformedGeneratorError(SpecError):
    pass


class ConicalAssumptionError(SpecError):
    pass


class PickError(SpecError):
    pass


class ClassNotSymmetricError(SpecError):
    pass


class FaceNotFoundError(RaagError):
    pass


class PosetError(RaagError):
    pass


class MultigraphError(RaagError):
    pass


class GroupError(RaagError):
    pass


class NotNormalError(GroupError):
    pass


class NotStronglyDividedError(GroupError):
    pass


class HypothesisViolatedError(GroupError):
    pass


class TheoremViolation(RaagError):
    """A computed check contradicts a proven statement; should never fire."""
