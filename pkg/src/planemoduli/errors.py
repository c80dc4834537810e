"""Exception hierarchy shared by all modules."""


class ModuliError(Exception):
    """Base class for every error raised by this package."""


class DivisionByZero(ModuliError, ZeroDivisionError):
    pass


class UnsupportedEigenstructure(ModuliError):
    """No root-of-unity-scaled lift of a transformation could be found."""


class CapExceeded(ModuliError):
    pass


class PreconditionViolated(ModuliError, ValueError):
    pass


class InternalInvariant(ModuliError, RuntimeError):
    """A checked postcondition failed; this signals a bug or a false claim."""


class BadDegree(ModuliError, ValueError):
    pass


class NoSuitablePrime(ModuliError):
    pass


class NotCyclicHomologyCase(ModuliError, ValueError):
    pass


class RamificationInconsistent(ModuliError):
    pass


class NotAnIsomorphism(ModuliError, ValueError):
    pass


class ConditionFailed(ModuliError, ValueError):
    """A family side condition does not hold.

    ``which`` names the violated condition so that callers (and the CLI)
    can report it.
    """

    def __init__(self, which: str, message: str = ""):
        self.which = which
        super().__init__(f"{which}: {message}" if message else which)


class DegreeMismatch(ConditionFailed):
    def __init__(self, message: str = ""):
        super().__init__("degree", message)


class RepeatedFactor(ConditionFailed):
    def __init__(self, message: str = ""):
        super().__init__("squarefree", message)


class WrongDivisibility(ConditionFailed):
    def __init__(self, message: str = ""):
        super().__init__("divisibility", message)


class ReducibleForm(ConditionFailed):
    def __init__(self, message: str = ""):
        super().__init__("reducible", message)


class UnknownSubfamily(ConditionFailed):
    def __init__(self, message: str = ""):
        super().__init__("subfamily", message)


class OddDegree(ConditionFailed):
    def __init__(self, message: str = ""):
        super().__init__("odd_degree", message)


class WrongShape(ConditionFailed):
    def __init__(self, message: str = ""):
        super().__init__("shape", message)
