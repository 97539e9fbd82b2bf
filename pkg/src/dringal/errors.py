"""Exception types raised by the library.

Every anticipated failure mode gets its own class so callers can catch
precisely.  All inherit from DringalError.
"""


class DringalError(Exception):
    """Base class for all library errors."""


class NotPrime(DringalError):
    """Field characteristic must be a prime number."""


class SizeExceeded(DringalError):
    """A requested object would exceed the configured size bound."""


class DivisionByZero(DringalError):
    """Division or inversion by the zero element."""


class BothZero(DringalError):
    """gcd(0, 0) is undefined."""


class ConstantInput(DringalError):
    """Operation requires a non-constant polynomial."""


class ModuliNotCoprime(DringalError):
    """CRT moduli share a common factor."""


class MissingGenerator(DringalError):
    """A multivariate value refers to a generator absent from the target ring."""


class DomainMismatch(DringalError):
    """Operands live over different rings or fields."""


class NotAField(DringalError):
    """Operation requires coefficients in a field."""


class NotADivisor(DringalError):
    """Reduction target does not divide the source modulus."""


class NotInvertible(DringalError):
    """Matrix or element has no inverse over the given ring."""


class NonExactDivision(DringalError):
    """Exact division requested but a nonzero remainder appeared."""


class NotIrreducible(DringalError):
    """A prime (irreducible) polynomial was required."""


class CharacteristicDividesLevel(DringalError):
    """The level N is not coprime to the prime of reduction."""


class ExtensionCapExceeded(DringalError):
    """Torsion points were not found within the extension-degree cap."""


class BasisSearchFailed(DringalError):
    """Randomized module-basis extraction exhausted its retry budget."""


class SolveFailed(DringalError):
    """A linear solve that must succeed was inconsistent (internal invariant)."""


class NoGoodPrimes(DringalError):
    """No primes of good reduction found in the requested degree range."""
