"""Exception hierarchy shared by all modsum modules."""


class ModsumError(Exception):
    """Base class for all domain errors raised by this package."""


class NotCoprimeError(ModsumError):
    """A dilation factor or inverse argument shares a factor with the modulus."""


class NotDistinctError(ModsumError):
    """An operation required a sumset-distinct input and the set is not."""


class DecompositionUnavailableError(ModsumError):
    """Singleton/pair decomposition of the missing residues needs an odd modulus."""


class TooLargeError(ModsumError):
    """Input exceeds the brute-force oracle scale."""


class CollisionError(ModsumError):
    """Two elements of a residue set coincide modulo N (or reduce to zero)."""


class ModulusMismatchError(ModsumError):
    """Two residue sets that must share a modulus do not."""


class ScaleGuardError(ModsumError):
    """Requested computation exceeds the desk-scale guard (or is vacuous, 2^n > N)."""


class VersionMismatchError(ModsumError):
    """Checkpoint file was written by an incompatible version."""


class CorruptCheckpointError(ModsumError):
    """Checkpoint file failed its checksum or structural validation."""


class WrongModulusShapeError(ModsumError):
    """The modulus is not of the shape a classifier or predicate requires."""


class NonIntegralError(ModsumError):
    """A closed-form count failed to be an integer (would falsify the formula)."""


class PreconditionFailedError(ModsumError):
    """A stated precondition on the input does not hold."""


class BadParityError(ModsumError):
    """Construction parameters (n, k) need n - k odd."""


class InvalidPerturbationError(ModsumError):
    """A perturbation vector violates one of its side conditions."""


class BadValuationError(ModsumError):
    """A prefix element does not have the required 2-adic valuation."""


class BoundViolatedError(ModsumError):
    """A construction's arithmetic side condition on N fails."""
