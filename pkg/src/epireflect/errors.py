"""Exception hierarchy shared by every module."""


class EpireflectError(Exception):
    """Base class; the CLI maps these to exit code 2."""


class SizeLimit(EpireflectError):
    """Raised when an input exceeds a configured size guard (CLI exit code 3)."""


class NotATopology(EpireflectError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class InvalidPartition(EpireflectError):
    pass


class EmptySubset(EpireflectError):
    pass


class UnknownAxiom(EpireflectError):
    pass


class MethodUnsupported(EpireflectError):
    pass


class ReflectionNotInClass(EpireflectError):
    pass


class NotNested(EpireflectError):
    pass


class NotT0Contained(EpireflectError):
    pass


class UnboundVariable(EpireflectError):
    pass


class SignatureMismatch(EpireflectError):
    pass


class NotACongruence(EpireflectError):
    pass


class NotAHomomorphism(EpireflectError):
    pass


class KernelNotCongruence(EpireflectError):
    pass


class NotMaltsev(EpireflectError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class DocumentError(EpireflectError):
    """Malformed JSON document."""
