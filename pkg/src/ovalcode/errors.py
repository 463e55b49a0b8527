"""Exception hierarchy shared by all ovalcode modules."""


class OvalCodeError(Exception):
    """Base class for every error raised by this package."""


class FieldDomainError(OvalCodeError, ValueError):
    """A value is not a valid element (or shape) for the field at hand."""


class InvalidDegreeError(FieldDomainError):
    pass


class FieldZeroDivisionError(OvalCodeError, ZeroDivisionError):
    pass


class NoUniqueSolutionError(OvalCodeError, ValueError):
    pass


class InconsistentSystemError(OvalCodeError, ValueError):
    pass


class UnsupportedParameterError(OvalCodeError, ValueError):
    """Family/extension-degree combination outside the supported range."""


class MalformedFamilyError(UnsupportedParameterError):
    """A catalog formula yields a non-integral exponent."""


class PreconditionError(OvalCodeError, ValueError):
    pass


class ResourceLimitError(OvalCodeError):
    """Exhaustive enumeration would exceed the configured cap."""


class InconsistentSeedError(OvalCodeError, ValueError):
    pass


class InconsistentInputError(OvalCodeError, ValueError):
    pass


class InternalConsistencyError(OvalCodeError, AssertionError):
    pass


class NoLocalRepairError(OvalCodeError, ValueError):
    pass


class InsufficientDataError(OvalCodeError, ValueError):
    pass
