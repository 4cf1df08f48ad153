"""Exception types shared across the package."""


class FullwitError(Exception):
    """Base class for all library errors."""


class RingMismatchError(FullwitError):
    """Operands belong to different coefficient rings."""


class NoRootOfUnityError(FullwitError):
    """The target ring has no primitive p-th root of unity."""


class SizeGuardError(FullwitError):
    """A requested enumeration or table exceeds the configured cap."""


class NotASubgroupError(FullwitError):
    """A set of group elements is not closed under multiplication."""


class SingularMatrixError(FullwitError):
    """Inversion was requested for a matrix with zero determinant."""


class ContextMismatchError(FullwitError):
    """Group-algebra elements live over different contexts."""


class CertificateError(FullwitError):
    """Base class for certificate decoding failures."""


class CertificateSchemaError(CertificateError):
    """The input is not structurally a certificate document."""


class CertificateVersionError(CertificateError):
    """The certificate declares an unsupported format version."""


class CertificateInvariantError(CertificateError):
    """The document parses but violates a certificate invariant."""
