"""Exact arithmetic over the dyadic Gaussian rationals.

Every scalar is ``(re + i*im) / 2**k`` with integer ``re``, ``im`` and
``k >= 0``.  The ring is closed under addition, multiplication and complex
conjugation, and contains everything the gamma-matrix machinery needs:
the quarter phases ``0, +-1, +-i``, the factor ``1/2`` of the kappa
projectors and the ``1/N`` normalisation of trace coefficients when ``N``
is a power of two.

:class:`ExactMatrix` stores a square matrix as a pair of integer arrays
sharing a single power-of-two denominator.  Products go through float64
BLAS only when every partial sum is an integer below ``2**53`` (so the
result is exact), and otherwise fall back to int64 or Python integers.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "DimensionError",
    "ExactScalar",
    "ExactMatrix",
    "mat_mul",
    "kron",
    "adjoint",
    "trace",
    "identity",
    "ZERO",
    "ONE",
    "I",
    "HALF",
]

_FLOAT_EXACT = 2**53
_INT64_SAFE = 2**62


class DimensionError(ValueError):
    """Raised when matrix orders do not conform."""


def _dyadic(x: float) -> tuple[int, int] | None:
    """``(num, k)`` with ``x == num / 2**k``, or ``None`` if ``x`` is not dyadic."""
    try:
        num, den = float(x).as_integer_ratio()
    except (OverflowError, ValueError):
        return None
    if den & (den - 1):
        return None
    return num, den.bit_length() - 1


def _reduce(re: int, im: int, k: int) -> tuple[int, int, int]:
    if re == 0 and im == 0:
        return 0, 0, 0
    while k > 0 and re % 2 == 0 and im % 2 == 0:
        re //= 2
        im //= 2
        k -= 1
    return re, im, k


@dataclass(frozen=True, init=False)
class ExactScalar:
    """A dyadic Gaussian rational ``(re_num + i*im_num) / 2**log2_den``.

    Instances are always stored in reduced form, so ``==`` and ``hash``
    are structural.
    """

    re_num: int
    im_num: int
    log2_den: int

    def __init__(self, re_num: int = 0, im_num: int = 0, log2_den: int = 0):
        if log2_den < 0:
            scale = 2 ** (-log2_den)
            re_num, im_num, log2_den = re_num * scale, im_num * scale, 0
        re_num, im_num, log2_den = _reduce(int(re_num), int(im_num), int(log2_den))
        object.__setattr__(self, "re_num", re_num)
        object.__setattr__(self, "im_num", im_num)
        object.__setattr__(self, "log2_den", log2_den)

    @classmethod
    def coerce(cls, value) -> "ExactScalar":
        if isinstance(value, ExactScalar):
            return value
        if isinstance(value, (int, np.integer)):
            return cls(int(value))
        if isinstance(value, (float, complex, np.floating, np.complexfloating)):
            value = complex(value)
            re, im = _dyadic(value.real), _dyadic(value.imag)
            if re is None or im is None:
                raise TypeError(f"cannot interpret {value!r} as an exact scalar")
            k = max(re[1], im[1])
            return cls(re[0] * 2 ** (k - re[1]), im[0] * 2 ** (k - im[1]), k)
        raise TypeError(f"cannot interpret {value!r} as an exact scalar")

    @classmethod
    def from_complex(cls, value: complex, max_log2_den: int = 0) -> "ExactScalar":
        """Snap a complex number onto the lattice ``2**-max_log2_den * Z[i]``.

        Raises ``ValueError`` if the value does not lie on the lattice.
        """
        scale = 2**max_log2_den
        re = value.real * scale
        im = value.imag * scale
        if not (float(re).is_integer() and float(im).is_integer()):
            raise ValueError(f"{value!r} is not on the dyadic lattice 2^-{max_log2_den}")
        return cls(int(re), int(im), max_log2_den)

    @classmethod
    def quarter(cls, phase: int) -> "ExactScalar":
        """Return ``i**phase``."""
        return _QUARTER[phase % 4]

    def quarter_phase(self) -> int | None:
        """Return ``p`` with ``self == i**p``, or ``None`` if not a unit."""
        return _QUARTER_INDEX.get(self)

    def __add__(self, other):
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        k = max(self.log2_den, other.log2_den)
        sa, sb = 2 ** (k - self.log2_den), 2 ** (k - other.log2_den)
        return ExactScalar(self.re_num * sa + other.re_num * sb, self.im_num * sa + other.im_num * sb, k)

    __radd__ = __add__

    def __neg__(self):
        return ExactScalar(-self.re_num, -self.im_num, self.log2_den)

    def __sub__(self, other):
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        a, b, c, d = self.re_num, self.im_num, other.re_num, other.im_num
        return ExactScalar(a * c - b * d, a * d + b * c, self.log2_den + other.log2_den)

    __rmul__ = __mul__

    def conjugate(self) -> "ExactScalar":
        return ExactScalar(self.re_num, -self.im_num, self.log2_den)

    def __eq__(self, other):
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        return (self.re_num, self.im_num, self.log2_den) == (other.re_num, other.im_num, other.log2_den)

    def __hash__(self):
        return hash((self.re_num, self.im_num, self.log2_den))

    def __bool__(self):
        return self.re_num != 0 or self.im_num != 0

    def __complex__(self):
        s = 2.0**-self.log2_den
        return complex(self.re_num * s, self.im_num * s)

    @property
    def is_real(self) -> bool:
        return self.im_num == 0

    def __repr__(self):
        return f"ExactScalar({self})"

    def __str__(self):
        if self.im_num == 0:
            num = str(self.re_num)
        elif self.re_num == 0:
            num = {1: "i", -1: "-i"}.get(self.im_num, f"{self.im_num}i")
        else:
            sign = "+" if self.im_num > 0 else "-"
            num = f"({self.re_num}{sign}{abs(self.im_num)}i)"
        return num if self.log2_den == 0 else f"{num}/{2**self.log2_den}"


def _coerce_or_none(value):
    try:
        return ExactScalar.coerce(value)
    except TypeError:
        return None


ZERO = ExactScalar(0)
ONE = ExactScalar(1)
I = ExactScalar(0, 1)
HALF = ExactScalar(1, 0, 1)
_QUARTER = (ONE, I, ExactScalar(-1), ExactScalar(0, -1))
_QUARTER_INDEX = {q: p for p, q in enumerate(_QUARTER)}


def _max_abs(a: np.ndarray) -> int:
    if a.size == 0:
        return 0
    return int(max(abs(int(a.max())), abs(int(a.min()))))


def _int_matmul(a: np.ndarray, b: np.ndarray, bound: int) -> np.ndarray:
    if bound < _FLOAT_EXACT:
        out = a.astype(np.float64) @ b.astype(np.float64)
        return np.rint(out).astype(np.int64)
    if bound < _INT64_SAFE and a.dtype != object and b.dtype != object:
        return a.astype(np.int64) @ b.astype(np.int64)
    return a.astype(object) @ b.astype(object)


def _as_int_array(values) -> np.ndarray:
    arr = np.asarray(values)
    if arr.dtype == object:
        big = any(abs(int(v)) >= _INT64_SAFE for v in arr.flat)
        return arr if big else arr.astype(np.int64)
    return arr.astype(np.int64)


class ExactMatrix:
    """Dense square matrix over the dyadic Gaussian rationals.

    Immutable: the backing arrays are flagged read-only.  Equality and
    hashing are exact and structural.
    """

    __slots__ = ("_re", "_im", "_k", "_hash")

    def __init__(self, re, im=None, log2_den: int = 0):
        re = _as_int_array(re)
        im = np.zeros_like(re) if im is None else _as_int_array(im)
        if re.ndim != 2 or re.shape[0] != re.shape[1] or re.shape != im.shape:
            raise DimensionError(f"expected a square matrix, got shapes {re.shape} and {im.shape}")
        if log2_den < 0:
            re, im, log2_den = re * 2 ** (-log2_den), im * 2 ** (-log2_den), 0
        if not (re.any() or im.any()):
            log2_den = 0
        while log2_den > 0 and not (re % 2).any() and not (im % 2).any():
            re, im, log2_den = re // 2, im // 2, log2_den - 1
        if re.dtype == object:
            re, im = _as_int_array(re), _as_int_array(im)
        re.setflags(write=False)
        im.setflags(write=False)
        self._re, self._im, self._k = re, im, int(log2_den)
        self._hash = None

    # construction -------------------------------------------------------

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "ExactMatrix":
        """Build from nested rows of ints, complex numbers or ExactScalars."""
        scalars = [[ExactScalar.coerce(v) for v in row] for row in rows]
        k = max((s.log2_den for row in scalars for s in row), default=0)
        re = [[s.re_num * 2 ** (k - s.log2_den) for s in row] for row in scalars]
        im = [[s.im_num * 2 ** (k - s.log2_den) for s in row] for row in scalars]
        return cls(np.array(re, dtype=object), np.array(im, dtype=object), k)

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls(np.eye(n, dtype=np.int64))

    @classmethod
    def zeros(cls, n: int) -> "ExactMatrix":
        return cls(np.zeros((n, n), dtype=np.int64))

    @classmethod
    def exchange(cls, n: int) -> "ExactMatrix":
        """Antidiagonal matrix of ones."""
        return cls(np.fliplr(np.eye(n, dtype=np.int64)))

    @classmethod
    def diagonal(cls, values: Iterable) -> "ExactMatrix":
        values = [ExactScalar.coerce(v) for v in values]
        n = len(values)
        rows = [[values[i] if i == j else ZERO for j in range(n)] for i in range(n)]
        return cls.from_rows(rows)

    @classmethod
    def from_complex_array(cls, arr: np.ndarray, max_log2_den: int = 0) -> "ExactMatrix":
        """Exact conversion of a complex array already on the lattice ``2^-k Z[i]``."""
        arr = np.asarray(arr, dtype=np.complex128) * 2.0**max_log2_den
        re, im = arr.real, arr.imag
        if not (np.all(re == np.rint(re)) and np.all(im == np.rint(im))):
            raise ValueError("array entries are not on the requested dyadic lattice")
        return cls(np.rint(re).astype(np.int64), np.rint(im).astype(np.int64), max_log2_den)

    @classmethod
    def block(cls, blocks: Sequence[Sequence["ExactMatrix"]]) -> "ExactMatrix":
        """Assemble a square matrix from a square grid of equal-order blocks."""
        k = max(b._k for row in blocks for b in row)
        re = np.block([[b._scaled(k)[0] for b in row] for row in blocks])
        im = np.block([[b._scaled(k)[1] for b in row] for row in blocks])
        return cls(re, im, k)

    def _scaled(self, k: int) -> tuple[np.ndarray, np.ndarray]:
        s = 2 ** (k - self._k)
        if s == 1:
            return self._re, self._im
        bound = max(_max_abs(self._re), _max_abs(self._im)) * s
        if bound >= _INT64_SAFE:
            return self._re.astype(object) * s, self._im.astype(object) * s
        return self._re * s, self._im * s

    # basic accessors ----------------------------------------------------

    @property
    def order(self) -> int:
        return self._re.shape[0]

    @property
    def log2_den(self) -> int:
        return self._k

    @property
    def numerators(self) -> tuple[np.ndarray, np.ndarray]:
        """Read-only integer arrays ``(re, im)``; the matrix is ``(re + i im) / 2**log2_den``."""
        return self._re, self._im

    def __getitem__(self, idx: tuple[int, int]) -> ExactScalar:
        i, j = idx
        return ExactScalar(int(self._re[i, j]), int(self._im[i, j]), self._k)

    def rows(self) -> list[list[ExactScalar]]:
        n = self.order
        return [[self[i, j] for j in range(n)] for i in range(n)]

    def to_complex(self) -> np.ndarray:
        scale = 2.0**-self._k
        return (self._re.astype(np.float64) + 1j * self._im.astype(np.float64)) * scale

    def submatrix(self, rows: slice, cols: slice) -> "ExactMatrix":
        return ExactMatrix(self._re[rows, cols].copy(), self._im[rows, cols].copy(), self._k)

    def is_zero(self) -> bool:
        return not (self._re.any() or self._im.any())

    def is_identity(self) -> bool:
        return self == ExactMatrix.identity(self.order)

    def entries_are_quarter_phases(self) -> bool:
        """True when every entry lies in ``{0, +-1, +-i}``."""
        if self._k != 0:
            return False
        re, im = self._re, self._im
        ok = ((re == 0) & (np.abs(im) <= 1)) | ((im == 0) & (np.abs(re) <= 1))
        return bool(np.all(ok))

    def is_monomial(self) -> bool:
        """Exactly one nonzero entry in every row and every column."""
        nz = (self._re != 0) | (self._im != 0)
        return bool(np.all(nz.sum(axis=0) == 1) and np.all(nz.sum(axis=1) == 1))

    # arithmetic ---------------------------------------------------------

    def _check(self, other: "ExactMatrix"):
        if not isinstance(other, ExactMatrix):
            raise TypeError(f"expected ExactMatrix, got {type(other).__name__}")
        if other.order != self.order:
            raise DimensionError(f"order mismatch: {self.order} vs {other.order}")

    def __add__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        self._check(other)
        k = max(self._k, other._k)
        ar, ai = self._scaled(k)
        br, bi = other._scaled(k)
        return ExactMatrix(ar + br, ai + bi, k)

    def __neg__(self):
        return ExactMatrix(-self._re, -self._im, self._k)

    def __sub__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self + (-other)

    def __matmul__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        self._check(other)
        ar, ai, br, bi = self._re, self._im, other._re, other._im
        ma = max(_max_abs(ar), _max_abs(ai))
        mb = max(_max_abs(br), _max_abs(bi))
        bound = 2 * ma * mb * self.order
        re = _int_matmul(ar, br, bound) - _int_matmul(ai, bi, bound)
        im = _int_matmul(ar, bi, bound) + _int_matmul(ai, br, bound)
        return ExactMatrix(re, im, self._k + other._k)

    def scale(self, c) -> "ExactMatrix":
        """Multiply every entry by the exact scalar ``c``."""
        c = ExactScalar.coerce(c)
        a, b = self._re.astype(object), self._im.astype(object)
        return ExactMatrix(a * c.re_num - b * c.im_num, a * c.im_num + b * c.re_num, self._k + c.log2_den)

    def __mul__(self, c):
        if isinstance(c, ExactMatrix):
            return NotImplemented
        try:
            return self.scale(c)
        except TypeError:
            return NotImplemented

    __rmul__ = __mul__

    def adjoint(self) -> "ExactMatrix":
        return ExactMatrix(self._re.T.copy(), -self._im.T.copy(), self._k)

    def trace(self) -> ExactScalar:
        return ExactScalar(int(np.trace(self._re.astype(object))), int(np.trace(self._im.astype(object))), self._k)

    def kron(self, other: "ExactMatrix") -> "ExactMatrix":
        ar, ai, br, bi = self._re, self._im, other._re, other._im
        re = np.kron(ar, br) - np.kron(ai, bi)
        im = np.kron(ar, bi) + np.kron(ai, br)
        return ExactMatrix(re, im, self._k + other._k)

    def commutes_with(self, other: "ExactMatrix") -> bool:
        return self @ other == other @ self

    def anticommutes_with(self, other: "ExactMatrix") -> bool:
        return (self @ other + other @ self).is_zero()

    def power(self, n: int) -> "ExactMatrix":
        out = ExactMatrix.identity(self.order)
        base = self
        while n > 0:
            if n & 1:
                out = out @ base
            base = base @ base
            n >>= 1
        return out

    # identity -----------------------------------------------------------

    def key(self) -> tuple:
        """Hashable exact fingerprint."""
        return (self._k, self.order, self._re.astype(np.int64).tobytes() if self._re.dtype != object else tuple(self._re.flat),
                self._im.astype(np.int64).tobytes() if self._im.dtype != object else tuple(self._im.flat))

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        if self.order != other.order or self._k != other._k:
            return False
        return bool(np.array_equal(self._re, other._re) and np.array_equal(self._im, other._im))

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.key())
        return self._hash

    def __repr__(self):
        rows = ", ".join("[" + ", ".join(str(x) for x in row) + "]" for row in self.rows())
        return f"ExactMatrix([{rows}])"


def mat_mul(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
    """Exact product ``a @ b``; raises :class:`DimensionError` on order mismatch."""
    return a @ b


def kron(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
    """Kronecker product: block ``(i, j)`` of the result is ``a[i, j] * b``."""
    return a.kron(b)


def adjoint(a: ExactMatrix) -> ExactMatrix:
    return a.adjoint()


def trace(a: ExactMatrix) -> ExactScalar:
    return a.trace()


def identity(n: int) -> ExactMatrix:
    return ExactMatrix.identity(n)
