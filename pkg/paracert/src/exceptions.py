class ParacertError(Exception):
    """Base exception for paracert."""
    pass


class ConfigurationError(ParacertError):
    """Raised when there's an error in configuration."""
    pass


class UsageError(ParacertError):
    """Raised when an operation is called with arguments outside its domain."""
    pass


class ArithmeticOverflowError(UsageError):
    """Raised when a rational component leaves the signed 64-bit range."""
    pass


class ConsistencyError(ParacertError):
    """Raised when a computed result contradicts a proven structural fact.

    These are never expected in correct operation: a Cartan matrix that does
    not match its type, a Hamming partition search that comes back empty, or a
    length equality whose forced structure is missing all point at a bug.
    """
    pass


class ReductionError(ConsistencyError):
    """Raised when a coset reduction overruns its step guard or lands outside every case."""
    pass


class CapExceededError(ParacertError):
    """Raised when a configured search or enumeration cap is exceeded."""
    pass


class LengthCapExceededError(CapExceededError):
    """Raised when the length search finds no decomposition within its cap."""
    pass


class GroupCapExceededError(CapExceededError):
    """Raised when a group must be enumerated but is larger than the cap."""
    pass


class ExtensionError(ParacertError):
    """Raised when a permutation of roots does not preserve inner products.

    Attributes:
        witness: The pair of root indices whose inner product changes.
    """

    def __init__(self, message: str, witness: tuple = ()):
        super().__init__(message)
        self.witness = witness


class ReconstructionError(ParacertError):
    """Raised when a coset permutation fails a stage of the reconstruction pipeline.

    Attributes:
        stage: Name of the failing pipeline stage.
    """

    def __init__(self, stage: str, message: str):
        super().__init__(f"[{stage}] {message}")
        self.stage = stage


class StorageError(ParacertError):
    """Raised when there's an error storing a report."""
    pass


class ValidationError(ParacertError):
    """Raised when report validation fails."""
    pass
