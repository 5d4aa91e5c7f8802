"""Bit strings with explicit length, and GF(2) linear algebra.

Bit order convention (normative for the whole package): index 0 is the
leftmost, most significant bit, both in display ("0101...") and in hex.
Hex serialization is lowercase and MSB-first; a string whose length is
not a multiple of eight is left-padded with zero bits to the next byte
boundary, so e.g. a 127-bit seed encodes as 32 hex characters whose top
bit is zero.
"""

from __future__ import annotations

import numpy as np

from .exceptions import (
    DimensionMismatch,
    InvalidHexDigit,
    LengthMismatch,
    NonZeroPadding,
)

# GF(2) vectors and matrices are plain numpy arrays of 0/1 values with
# row-major semantics; the aliases exist for documentation purposes.
Gf2Vector = np.ndarray
Gf2Matrix = np.ndarray

_HEX_DIGITS = frozenset("0123456789abcdefABCDEF")


class BitString:
    """Immutable ordered sequence of bits with an exact (bit) length.

    Accepts a "01" string, an iterable of 0/1 integers, a numpy array,
    or another BitString.  Instances hash and compare by value and are
    safe to share between threads.
    """

    __slots__ = ("_bits",)

    def __init__(self, bits):
        if isinstance(bits, BitString):
            arr = bits._bits
        elif isinstance(bits, str):
            arr = np.frombuffer(bits.encode("ascii"), dtype=np.uint8) - ord("0")
        elif isinstance(bits, np.ndarray):
            arr = bits.astype(np.uint8)
        else:
            arr = np.array(list(bits), dtype=np.uint8)
        if arr.ndim != 1:
            raise DimensionMismatch("bits must be one-dimensional")
        if arr.size and arr.max() > 1:
            raise ValueError("bits must contain only 0 and 1")
        arr = np.ascontiguousarray(arr)
        arr.setflags(write=False)
        self._bits = arr

    # -- constructors -------------------------------------------------

    @classmethod
    def zeros(cls, length: int) -> "BitString":
        return cls(np.zeros(length, dtype=np.uint8))

    @classmethod
    def ones(cls, length: int) -> "BitString":
        return cls(np.ones(length, dtype=np.uint8))

    @classmethod
    def random(cls, length: int, rng: np.random.Generator) -> "BitString":
        return cls(rng.integers(0, 2, size=length, dtype=np.uint8))

    @classmethod
    def from_int(cls, value: int, length: int) -> "BitString":
        """MSB-first bits of ``value``, zero-extended to ``length``."""
        if value < 0 or (length < value.bit_length()):
            raise ValueError(f"{value} does not fit in {length} bits")
        return cls([(value >> (length - 1 - i)) & 1 for i in range(length)])

    @classmethod
    def from_hex(cls, s: str, length: int) -> "BitString":
        return hex_decode(s, length)

    # -- conversions --------------------------------------------------

    @property
    def bits(self) -> np.ndarray:
        """Read-only uint8 array view of the bits."""
        return self._bits

    def to_int(self) -> int:
        value = 0
        for b in self._bits:
            value = (value << 1) | int(b)
        return value

    def to_hex(self) -> str:
        return hex_encode(self)

    def to01(self) -> str:
        return (self._bits + ord("0")).tobytes().decode("ascii")

    # -- sequence / algebra -------------------------------------------

    def __len__(self) -> int:
        return self._bits.size

    def __iter__(self):
        return iter(int(b) for b in self._bits)

    def __getitem__(self, key):
        if isinstance(key, (int, np.integer)):
            return int(self._bits[key])
        return BitString(self._bits[key])

    def take(self, indices) -> "BitString":
        """Bits at the given indices, in the given order."""
        return BitString(self._bits[np.asarray(indices, dtype=np.intp)])

    def __xor__(self, other: "BitString") -> "BitString":
        if len(self) != len(other):
            raise LengthMismatch(f"cannot xor {len(self)} bits with {len(other)} bits")
        return BitString(self._bits ^ other._bits)

    def __add__(self, other: "BitString") -> "BitString":
        return BitString(np.concatenate([self._bits, BitString(other)._bits]))

    def __eq__(self, other) -> bool:
        if not isinstance(other, BitString):
            return NotImplemented
        return len(self) == len(other) and bool(np.array_equal(self._bits, other._bits))

    def __hash__(self):
        return hash((self._bits.size, self._bits.tobytes()))

    def __str__(self) -> str:
        return self.to01()

    def __repr__(self) -> str:
        s = self.to01()
        if len(s) > 64:
            s = s[:61] + "..."
        return f"BitString('{s}', length={len(self)})"


def hex_encode(b: BitString) -> str:
    """Lowercase hex of ``b``, MSB first, left-padded to a byte boundary."""
    b = BitString(b)
    if len(b) == 0:
        return ""
    pad = (-len(b)) % 8
    padded = np.concatenate([np.zeros(pad, dtype=np.uint8), b.bits])
    return np.packbits(padded).tobytes().hex()


def hex_decode(s: str, length: int) -> BitString:
    """Inverse of :func:`hex_encode` for a known bit ``length``."""
    if length < 0:
        raise LengthMismatch("length must be non-negative")
    expected_chars = ((length + 7) // 8) * 2
    if len(s) != expected_chars:
        raise LengthMismatch(
            f"expected {expected_chars} hex chars for {length} bits, got {len(s)}"
        )
    if length == 0:
        return BitString.zeros(0)
    bad = set(s) - _HEX_DIGITS
    if bad:
        raise InvalidHexDigit(f"invalid hex digit(s): {sorted(bad)}")
    raw = np.frombuffer(bytes.fromhex(s), dtype=np.uint8)
    bits = np.unpackbits(raw)
    pad = bits.size - length
    if pad and bits[:pad].any():
        raise NonZeroPadding(f"{pad} padding bit(s) must be zero")
    return BitString(bits[pad:])


def as_bit_array(x) -> np.ndarray:
    """Coerce a BitString / array-like of 0s and 1s to a uint8 array."""
    if isinstance(x, BitString):
        return x.bits
    arr = np.asarray(x, dtype=np.uint8)
    if arr.size and arr.max() > 1:
        raise ValueError("vector entries must be 0 or 1")
    return arr


def gf2_matvec(matrix: Gf2Matrix, x) -> Gf2Vector:
    """Matrix-vector product over GF(2): z_i = XOR_j (M_ij AND x_j)."""
    m = np.asarray(matrix, dtype=np.uint8)
    v = as_bit_array(x)
    if m.ndim != 2 or v.ndim != 1:
        raise DimensionMismatch("need a 2-D matrix and a 1-D vector")
    if m.shape[1] != v.size:
        raise DimensionMismatch(f"matrix has {m.shape[1]} columns, vector has {v.size}")
    return ((m & v).sum(axis=1, dtype=np.int64) & 1).astype(np.uint8)
