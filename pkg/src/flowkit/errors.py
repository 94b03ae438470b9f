"""Exception hierarchy shared by every flowkit module."""


class FlowError(Exception):
    pass


class InvalidTable(FlowError):
    """A table that no Map can carry (multi-valued key, key Zero, ...)."""


class CycleInWellFoundedMode(FlowError):
    pass


class ForbiddenOneCycle(FlowError):
    def __init__(self, term):
        super().__init__(f"table maps {term} -> one and one -> {term}")
        self.term = term


class UnboundedSupport(FlowError):
    pass


class CyclicTermError(FlowError):
    """Raised by well-founded operations when handed a cyclic node."""


class CapExceeded(FlowError):
    def __init__(self, what, size, cap):
        super().__init__(f"{what}: size {size} exceeds cap {cap}")
        self.what, self.size, self.cap = what, size, cap


class NonEmergentSelected(FlowError):
    def __init__(self, term):
        super().__init__(f"formula selects non-emergent term {term}")
        self.term = term


class DefinitionClauseViolated(FlowError):
    def __init__(self, clause, detail=""):
        super().__init__(f"clause ({clause}) violated {detail}".rstrip())
        self.clause = clause


class AlphaNotFunctional(FlowError):
    def __init__(self, term, images):
        super().__init__(f"alpha assigns {len(images)} images to {term}")
        self.term, self.images = term, images


class NonEmergentComponent(FlowError):
    pass


class NotAZfSet(FlowError):
    pass


class NotEquipotent(FlowError):
    pass


class ZCompositionPreconditionFailed(FlowError):
    pass


class GuardFailed(FlowError):
    pass


class UnknownNode(FlowError):
    pass


class UnboundName(FlowError):
    def __init__(self, name):
        super().__init__(f"unbound name {name!r}")
        self.name = name


class PredicateSyntaxError(FlowError):
    def __init__(self, position, expected, text=""):
        super().__init__(f"at position {position}: expected {expected}")
        self.position, self.expected, self.text = position, expected, text


class UniverseSyntaxError(FlowError):
    def __init__(self, line, message, col=1):
        super().__init__(f"line {line}, col {col}: {message}")
        self.line, self.col = line, col
