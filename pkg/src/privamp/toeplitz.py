"""Toeplitz and modified Toeplitz hashing extractors.

Seed-to-matrix convention (frozen — it is the unique one, up to a
mirror symmetry, that reproduces the published 128->64 modified
Toeplitz test vectors bit-exactly): seed bits index the matrix
diagonals cyclically,

    T[i, j] = y[(i - j) mod q],

where q is the seed length (n+m-1 for standard Toeplitz acting on the
whole input, n-1 for the m x (n-m) block T' of modified Toeplitz).
The first column is therefore y[0], y[1], ..., y[m-1] top to bottom and
the first row walks the tail of the seed backwards: y[0], y[q-1],
y[q-2], ...  Under this convention the product T(y)x equals the first m
coefficients of the cyclic convolution of the seed with the zero-padded
input, which is exactly what the FFT fast path computes.

Modified Toeplitz hashes with (T'(y) || I_m): the first n-m input bits
go through T', the last m bits are XORed in through the identity block.
"""

from __future__ import annotations

from fractions import Fraction

import mpmath
import numpy as np

from .bits import BitString, gf2_matvec
from .exceptions import InvalidRange, LengthMismatch, PrecisionLoss
from .extractor import SeededExtractor

_METHODS = ("auto", "fft", "exact", "matrix")

# 120-bit working precision keeps the floor of k + 2 - 2*log2(1/eps) exact
# for any realistic argument; 53-bit doubles would not for k beyond ~2^40.
_PRECISION_BITS = 120


def calculate_length(
    extractor_type: str,
    input_length: int,
    relative_source_entropy: float,
    error_bound: float,
) -> int:
    """Largest secure output length by the leftover hash bound.

    Returns floor(k + 2 - 2*log2(1/error_bound)) clamped to
    [0, input_length], where k = relative_source_entropy * input_length
    is the conditional min-entropy of the source.  The same bound is
    used for extractor_type="quantum" and "classical"; the flag is kept
    for API parity should the two ever diverge.  The subtracted log term
    is rounded up at the final digit, so numerical error can only shrink
    the result (the security-safe direction).
    """
    if extractor_type not in ("quantum", "classical"):
        raise InvalidRange(f"extractor_type must be quantum or classical, got {extractor_type!r}")
    if input_length < 1:
        raise InvalidRange("input_length must be positive")
    if not 0.0 < relative_source_entropy <= 1.0:
        raise InvalidRange("relative_source_entropy must be in (0, 1]")
    if not 0.0 < error_bound < 1.0:
        raise InvalidRange("error_bound must be in (0, 1)")

    with mpmath.workprec(_PRECISION_BITS):
        k = mpmath.mpf(relative_source_entropy) * input_length
        frac = Fraction(error_bound)
        if frac.numerator == 1 and (frac.denominator & (frac.denominator - 1)) == 0:
            # error bound is an exact power of two: the log term is an integer
            term = mpmath.mpf(2 * (frac.denominator.bit_length() - 1))
        else:
            term = 2 * mpmath.log(1 / mpmath.mpf(error_bound), 2)
            scale = mpmath.mpf(2) ** 64
            term = mpmath.ceil(term * scale) / scale
        m = int(mpmath.floor(k + 2 - term))
    return max(0, min(input_length, m))


def _pack_bits(bits: np.ndarray, slot_bytes: int) -> int:
    """Pack 0/1 coefficients into a big integer, one little-endian slot each."""
    buf = np.zeros(len(bits) * slot_bytes, dtype=np.uint8)
    buf[:: slot_bytes] = bits
    return int.from_bytes(buf.tobytes(), "little")


def _conv_exact(c: np.ndarray, x: np.ndarray) -> np.ndarray:
    """Linear convolution of two 0/1 sequences, exactly, mod 2.

    Coefficients are packed into wide slots of one big integer each, so
    the single big-integer product (Karatsuba under the hood) computes
    all convolution coefficients at once without carries between slots.
    """
    n_full = len(c) + len(x) - 1
    slot_bytes = (max(len(c), len(x)).bit_length() + 8) // 8
    prod = _pack_bits(c, slot_bytes) * _pack_bits(x, slot_bytes)
    raw = prod.to_bytes(n_full * slot_bytes + slot_bytes, "little")
    return np.frombuffer(raw, dtype=np.uint8)[: n_full * slot_bytes : slot_bytes] & 1


def _conv_fft(c: np.ndarray, x: np.ndarray) -> np.ndarray:
    """Linear convolution mod 2 via real FFT, verified by a residual check."""
    n_full = len(c) + len(x) - 1
    n_fft = 1 << max(0, n_full - 1).bit_length()
    conv = np.fft.irfft(
        np.fft.rfft(c.astype(np.float64), n_fft) * np.fft.rfft(x.astype(np.float64), n_fft),
        n_fft,
    )[:n_full]
    rounded = np.rint(conv)
    residual = float(np.abs(conv - rounded).max()) if n_full else 0.0
    if residual >= 0.25:
        raise PrecisionLoss(f"convolution residual {residual:.3g} >= 0.25")
    return rounded.astype(np.int64).astype(np.uint8) & 1


def _cyclic_extract(seed: np.ndarray, x: np.ndarray, q: int, m: int, method: str) -> np.ndarray:
    """First m bits of the length-q cyclic convolution of seed and x."""
    if method == "auto":
        try:
            lin = _conv_fft(seed, x)
        except PrecisionLoss:
            lin = _conv_exact(seed, x)
    elif method == "fft":
        lin = _conv_fft(seed, x)
    else:
        lin = _conv_exact(seed, x)
    out = np.zeros(q, dtype=np.uint8)
    for start in range(0, len(lin), q):
        seg = lin[start : start + q]
        out[: len(seg)] ^= seg
    return out[:m]


class ToeplitzExtractor(SeededExtractor):
    """Standard Toeplitz hashing: Ext(x, y) = T(y) . x over GF(2).

    T(y) is the m x n Toeplitz matrix T[i, j] = y[(i - j) mod (n+m-1)].
    The seed is n+m-1 bits; any 1 <= m <= n is allowed.
    """

    vector_name = "ToeplitzHashing"

    def __init__(self, input_length: int, output_length: int):
        if input_length < 1:
            raise InvalidRange("input_length must be positive")
        if not 1 <= output_length <= input_length:
            raise InvalidRange(
                f"output_length must be in [1, {input_length}], got {output_length}"
            )
        self._n = input_length
        self._m = output_length

    @property
    def input_length(self) -> int:
        return self._n

    @property
    def output_length(self) -> int:
        return self._m

    @property
    def seed_length(self) -> int:
        return self._n + self._m - 1

    @classmethod
    def calculate_length(cls, extractor_type, input_length, relative_source_entropy, error_bound):
        return calculate_length(extractor_type, input_length, relative_source_entropy, error_bound)

    def _check_lengths(self, x: BitString, y: BitString):
        if len(x) != self.input_length:
            raise LengthMismatch(f"input must be {self.input_length} bits, got {len(x)}")
        if len(y) != self.seed_length:
            raise LengthMismatch(f"seed must be {self.seed_length} bits, got {len(y)}")

    def to_matrix(self, y: BitString) -> np.ndarray:
        """Explicit hashing matrix for seed ``y`` (reference path)."""
        if len(y) != self.seed_length:
            raise LengthMismatch(f"seed must be {self.seed_length} bits, got {len(y)}")
        q = self.seed_length
        idx = (np.arange(self._m)[:, None] - np.arange(self._n)[None, :]) % q
        return y.bits[idx]

    def extract(self, x: BitString, y: BitString, method: str = "auto") -> BitString:
        """Hash ``x`` with the function selected by seed ``y``.

        method: "auto" uses the FFT fast path and falls back to exact
        integer convolution if the rounding residual check fails; "fft"
        raises PrecisionLoss instead of falling back; "exact" forces
        integer convolution; "matrix" multiplies by the explicit matrix.
        """
        if method not in _METHODS:
            raise InvalidRange(f"unknown method {method!r}")
        x, y = BitString(x), BitString(y)
        self._check_lengths(x, y)
        if method == "matrix":
            return BitString(gf2_matvec(self.to_matrix(y), x))
        return BitString(_cyclic_extract(y.bits, x.bits, self.seed_length, self._m, method))


class ModifiedToeplitzExtractor(SeededExtractor):
    """Modified Toeplitz hashing: Ext(x, y) = (T'(y) || I_m) . x.

    T'(y) is the m x (n-m) Toeplitz block T'[i, j] = y[(i - j) mod (n-1)],
    so only n-1 seed bits are needed.  The identity block passes the last
    m input bits through, XORed onto the Toeplitz part.  Requires m < n:
    at m = n the Toeplitz block would have no columns while the seed
    would still have n-1 bits, which leaves the construction ill-posed.
    """

    vector_name = "ModifiedToeplitzHashing"

    def __init__(self, input_length: int, output_length: int):
        if input_length < 2:
            raise InvalidRange("input_length must be at least 2")
        if not 1 <= output_length < input_length:
            raise InvalidRange(
                f"output_length must be in [1, {input_length - 1}], got {output_length}"
            )
        self._n = input_length
        self._m = output_length

    @property
    def input_length(self) -> int:
        return self._n

    @property
    def output_length(self) -> int:
        return self._m

    @property
    def seed_length(self) -> int:
        return self._n - 1

    @classmethod
    def calculate_length(cls, extractor_type, input_length, relative_source_entropy, error_bound):
        return calculate_length(extractor_type, input_length, relative_source_entropy, error_bound)

    def _check_lengths(self, x: BitString, y: BitString):
        if len(x) != self.input_length:
            raise LengthMismatch(f"input must be {self.input_length} bits, got {len(x)}")
        if len(y) != self.seed_length:
            raise LengthMismatch(f"seed must be {self.seed_length} bits, got {len(y)}")

    def to_matrix(self, y: BitString) -> np.ndarray:
        if len(y) != self.seed_length:
            raise LengthMismatch(f"seed must be {self.seed_length} bits, got {len(y)}")
        q = self.seed_length
        n, m = self._n, self._m
        idx = (np.arange(m)[:, None] - np.arange(n - m)[None, :]) % q
        return np.hstack([y.bits[idx], np.eye(m, dtype=np.uint8)])

    def extract(self, x: BitString, y: BitString, method: str = "auto") -> BitString:
        if method not in _METHODS:
            raise InvalidRange(f"unknown method {method!r}")
        x, y = BitString(x), BitString(y)
        self._check_lengths(x, y)
        if method == "matrix":
            return BitString(gf2_matvec(self.to_matrix(y), x))
        n, m = self._n, self._m
        head = _cyclic_extract(y.bits, x.bits[: n - m], self.seed_length, m, method)
        return BitString(head ^ x.bits[n - m :])
