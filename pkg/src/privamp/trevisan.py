"""Trevisan's extractor: weak designs, one-bit extraction, composition.

The output bit i is a one-bit extraction of the whole input against the
seed bits selected by set S_i of a weak design; the designs here are
the finite-field polynomial family over GF(t) with d = t*t.

Coefficient ordering conventions are normative because silent ordering
drift changes outputs without breaking anything visibly: the one-bit
extractor interprets input chunks in descending degree order (leftmost
chunk is the highest-degree coefficient), while generic polynomial
evaluation in :mod:`privamp.fields` is ascending.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dataclass_field

from .bits import BitString
from .exceptions import InvalidRange, LengthMismatch, NoFeasibleOutput, TooManySets
from .extractor import SeededExtractor
from .fields import GF

#: Overlap parameter guaranteed by the finite-field polynomial design.
DEFAULT_OVERLAP_R = 2 * math.e

#: Above this many set elements (m*t) verification samples indices
#: instead of checking every one; the per-index check stays exact.
DEFAULT_VERIFY_CAP = 100_000


class WeakDesign:
    """A family of m size-t subsets of {0, ..., d-1}.

    The defining bound is sum_{j<i} 2^{|S_i cap S_j|} <= r*m for every i.
    The constructor validates sizes and ranges, and, when m*t is within
    ``verify_cap``, computes the achieved maximum of that sum divided by
    m (``achieved_r``).  It does not reject families that exceed a
    target r — :func:`verify_design` exists to report exactly that.
    """

    def __init__(self, sets, seed_length: int, verify_cap: int = DEFAULT_VERIFY_CAP):
        sets = [tuple(sorted(int(e) for e in s)) for s in sets]
        if not sets:
            raise InvalidRange("a weak design needs at least one set")
        t = len(sets[0])
        if t < 1:
            raise InvalidRange("sets must be non-empty")
        for i, s in enumerate(sets):
            if len(set(s)) != len(s) or len(s) != t:
                raise InvalidRange(f"set {i} must have exactly {t} distinct elements")
            if s[0] < 0 or s[-1] >= seed_length:
                raise InvalidRange(f"set {i} has elements outside [0, {seed_length})")
        self.sets = sets
        self.m = len(sets)
        self.t = t
        self.d = seed_length
        self.achieved_r = None
        if self.m * self.t <= verify_cap:
            self.achieved_r = max(
                (self._overlap_sum(i) / self.m for i in range(self.m)), default=0.0
            )

    def _overlap_sum(self, i: int) -> int:
        si = set(self.sets[i])
        return sum(1 << len(si.intersection(self.sets[j])) for j in range(i))

    def restrict(self, y: BitString, i: int) -> BitString:
        """Seed bits of ``y`` at the indices of S_i, ascending."""
        return y.take(self.sets[i])


class FiniteFieldPolynomialDesign(WeakDesign):
    """Weak design over GF(t): S_i = { a*t + p_i(a) : a in GF(t) }.

    The coefficients of p_i are the base-t digits of i (digit k is the
    degree-k coefficient) and field elements are identified with
    {0, ..., t-1} through the canonical integer encoding.  The maximum
    polynomial degree c is the least value with m <= t^(c+1); the
    family achieves overlap parameter r = 2e as long as m <= t^t, which
    is enforced as a sanity cap.
    """

    def __init__(self, m: int, t: int, verify_cap: int = DEFAULT_VERIFY_CAP):
        if m < 1:
            raise InvalidRange("m must be at least 1")
        field = GF(t)  # raises NotPrimePower for invalid t
        if m > t**t:
            raise TooManySets(f"m = {m} exceeds the sanity cap t**t = {t**t}")
        c = 0
        while t ** (c + 1) < m:
            c += 1
        sets = []
        for i in range(m):
            coeffs = []
            v = i
            for _ in range(c + 1):
                coeffs.append(v % t)
                v //= t
            sets.append(
                tuple(a * t + field.eval_poly_i(coeffs, a) for a in range(t))
            )
        super().__init__(sets, t * t, verify_cap=verify_cap)
        self.degree_cap = c
        self.field = field


def generate_design(m: int, t: int, verify_cap: int = DEFAULT_VERIFY_CAP) -> FiniteFieldPolynomialDesign:
    """Build the finite-field polynomial weak design with m sets over GF(t)."""
    return FiniteFieldPolynomialDesign(m, t, verify_cap=verify_cap)


@dataclass
class DesignVerification:
    """Result of checking a weak design against the overlap bound."""

    passed: bool
    m: int
    t: int
    d: int
    r: float
    achieved_r: float
    worst_index: int
    worst_sum: float
    mode: str  # "exhaustive" or "sampled"
    checked_indices: int
    structural_errors: list = dataclass_field(default_factory=list)

    def summary(self) -> str:
        state = "PASS" if self.passed else "FAIL"
        lines = [
            f"{state}: weak design with m={self.m}, t={self.t}, d={self.d}",
            f"  overlap bound r={self.r:.4f}, achieved {self.achieved_r:.4f} "
            f"(worst index {self.worst_index}, sum {self.worst_sum:.1f} vs r*m "
            f"{self.r * self.m:.1f}; {self.mode}, {self.checked_indices} indices)",
        ]
        lines.extend(f"  structural: {e}" for e in self.structural_errors)
        return "\n".join(lines)


def verify_design(
    design: WeakDesign,
    r: float = DEFAULT_OVERLAP_R,
    verify_cap: int = DEFAULT_VERIFY_CAP,
    rng_seed: int = 0,
    sample_size: int = 1000,
) -> DesignVerification:
    """Check set sizes, element ranges and the overlap bound for every i.

    When m*t exceeds ``verify_cap`` a deterministic sample of indices is
    checked instead (each sampled index still gets its exact sum).  The
    report carries the worst index and the achieved maximum sum / m —
    the number to compare against r.
    """
    structural = []
    t = design.t
    for i, s in enumerate(design.sets):
        if len(s) != t or len(set(s)) != len(s):
            structural.append(f"set {i} does not have {t} distinct elements")
        elif s[0] < 0 or s[-1] >= design.d:
            structural.append(f"set {i} has elements outside [0, {design.d})")

    if design.m * design.t <= verify_cap:
        indices = range(design.m)
        mode = "exhaustive"
    else:
        import numpy as np

        rng = np.random.default_rng(rng_seed)
        count = min(sample_size, design.m)
        indices = sorted(rng.choice(design.m, size=count, replace=False).tolist())
        mode = "sampled"

    worst_index, worst_sum = 0, 0.0
    for i in indices:
        s = design._overlap_sum(i)
        if s > worst_sum:
            worst_index, worst_sum = i, s
    achieved = worst_sum / design.m
    passed = not structural and achieved <= r
    return DesignVerification(
        passed=passed,
        m=design.m,
        t=design.t,
        d=design.d,
        r=r,
        achieved_r=achieved,
        worst_index=worst_index,
        worst_sum=worst_sum,
        mode=mode,
        checked_indices=len(list(indices)),
        structural_errors=structural,
    )


class PolynomialOneBitExtractor(SeededExtractor):
    """One-bit extractor: polynomial evaluation plus an inner-product mask.

    The seed (2l bits) splits into a field point alpha (first l bits)
    and a mask beta (last l bits), both read as GF(2^l) elements with
    the leftmost bit as the highest-degree coefficient.  The input is
    split into ceil(n/l) chunks of l bits (the final chunk is padded
    with zeros on the right); the leftmost chunk is the highest-degree
    coefficient of the input polynomial p_x.  The output bit is the
    parity of p_x(alpha) AND beta.
    """

    vector_name = "PolynomialOneBitExtractor"

    def __init__(self, input_length: int, seed_length: int):
        if input_length < 1:
            raise InvalidRange("input_length must be positive")
        if seed_length < 2 or seed_length % 2:
            raise InvalidRange(f"seed_length must be even and >= 2, got {seed_length}")
        self._n = input_length
        self._l = seed_length // 2
        self._field = GF(2**self._l)
        self._chunks = -(-input_length // self._l)

    @property
    def input_length(self) -> int:
        return self._n

    @property
    def output_length(self) -> int:
        return 1

    @property
    def seed_length(self) -> int:
        return 2 * self._l

    @property
    def field_degree(self) -> int:
        return self._l

    @property
    def chunk_count(self) -> int:
        return self._chunks

    def extract_bit(self, x: BitString, y: BitString) -> int:
        if len(x) != self._n:
            raise LengthMismatch(f"input must be {self._n} bits, got {len(x)}")
        if len(y) != 2 * self._l:
            raise LengthMismatch(f"seed must be {2 * self._l} bits, got {len(y)}")
        l, s = self._l, self._chunks
        alpha = y[:l].to_int()
        beta = y[l:].to_int()
        padded = x.to_int() << (s * l - self._n)
        mask = (1 << l) - 1
        value = 0
        for j in range(s):  # descending degree, leftmost chunk first
            chunk = (padded >> ((s - 1 - j) * l)) & mask
            value = self._field.mul_i(value, alpha) ^ chunk
        return (value & beta).bit_count() & 1

    def extract(self, x: BitString, y: BitString) -> BitString:
        return BitString([self.extract_bit(BitString(x), BitString(y))])


@dataclass(frozen=True)
class TrevisanParams:
    """Parameters behind a calculated Trevisan output length."""

    output_length: int
    one_bit_seed_length: int
    field_degree: int
    chunk_count: int
    seed_length: int
    degree_cap: int
    overlap_r: float
    per_bit_error: float
    one_bit_entropy_required: float
    total_entropy_required: float
    source_entropy: float


def _one_bit_entropy_required(l: int, s: int, per_bit_error: float) -> float:
    # conservative requirement for the polynomial one-bit extractor
    return l + 2 * math.log2(1 / per_bit_error) + math.log2(s)


def calculate_length_trevisan(
    input_length: int,
    relative_source_entropy: float,
    error_bound: float,
    one_bit_seed_length: int,
) -> tuple[int, TrevisanParams]:
    """Largest feasible output length for the composed extractor.

    Composition rule (frozen in this package): a weak (m, t, r, d)-design
    plus a one-bit extractor that is (k - r*m, e1)-strong yields an
    (k, m*e1)-strong extractor, so the per-bit error budget is
    error_bound / m and the total entropy requirement is
    k >= k1(e1) + r*m with r = 2e and
    k1 = l + 2*log2(1/e1) + log2(s).  The result is monotone
    non-decreasing in both the source entropy and the error bound.
    """
    if input_length < 1:
        raise InvalidRange("input_length must be positive")
    if not 0.0 < relative_source_entropy <= 1.0:
        raise InvalidRange("relative_source_entropy must be in (0, 1]")
    if not 0.0 < error_bound < 1.0:
        raise InvalidRange("error_bound must be in (0, 1)")
    t = one_bit_seed_length
    GF(t)  # raises NotPrimePower when t is invalid
    if t % 2:
        raise InvalidRange("one_bit_seed_length must be even (seed = 2 field elements)")

    l = t // 2
    s = -(-input_length // l)
    k = relative_source_entropy * input_length
    r = DEFAULT_OVERLAP_R

    def feasible(m: int) -> bool:
        e1 = error_bound / m
        return k >= _one_bit_entropy_required(l, s, e1) + r * m

    cap = min(input_length, t**t)
    if not feasible(1):
        raise NoFeasibleOutput(
            "source entropy too low for even one output bit at these parameters"
        )
    # grow a feasible lower bound by doubling, then binary search the
    # boundary (the feasibility predicate is monotone decreasing in m)
    lo = 1
    while lo < cap and feasible(min(cap, lo * 2)):
        lo = min(cap, lo * 2)
    hi = min(cap, lo * 2)
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if feasible(mid):
            lo = mid
        else:
            hi = mid - 1
    m = lo

    c = 0
    while t ** (c + 1) < m:
        c += 1
    e1 = error_bound / m
    k1 = _one_bit_entropy_required(l, s, e1)
    params = TrevisanParams(
        output_length=m,
        one_bit_seed_length=t,
        field_degree=l,
        chunk_count=s,
        seed_length=t * t,
        degree_cap=c,
        overlap_r=r,
        per_bit_error=e1,
        one_bit_entropy_required=k1,
        total_entropy_required=k1 + r * m,
        source_entropy=k,
    )
    return m, params


class TrevisanExtractor(SeededExtractor):
    """Composition of a weak design with a one-bit extractor.

    Output bit i is the one-bit extraction of the input against the
    seed restricted to S_i; bits are assembled in index order (the m
    extractions are independent, so any evaluation schedule gives the
    same output).
    """

    vector_name = "TrevisanExtractor"

    def __init__(self, design: WeakDesign, one_bit: PolynomialOneBitExtractor):
        if design.t != one_bit.seed_length:
            raise InvalidRange(
                f"design set size t={design.t} must equal the one-bit extractor "
                f"seed length {one_bit.seed_length}"
            )
        self.design = design
        self.one_bit = one_bit

    @classmethod
    def create(
        cls,
        input_length: int,
        output_length: int,
        one_bit_extractor_seed_length: int,
        verify_cap: int = DEFAULT_VERIFY_CAP,
    ) -> "TrevisanExtractor":
        design = FiniteFieldPolynomialDesign(
            output_length, one_bit_extractor_seed_length, verify_cap=verify_cap
        )
        one_bit = PolynomialOneBitExtractor(input_length, one_bit_extractor_seed_length)
        return cls(design, one_bit)

    @property
    def input_length(self) -> int:
        return self.one_bit.input_length

    @property
    def output_length(self) -> int:
        return self.design.m

    @property
    def seed_length(self) -> int:
        return self.design.d

    def header_params(self) -> dict[str, int]:
        return {"One-bit seed length": self.one_bit.seed_length}

    def extract(self, x: BitString, y: BitString) -> BitString:
        x, y = BitString(x), BitString(y)
        if len(x) != self.input_length:
            raise LengthMismatch(f"input must be {self.input_length} bits, got {len(x)}")
        if len(y) != self.seed_length:
            raise LengthMismatch(f"seed must be {self.seed_length} bits, got {len(y)}")
        return BitString(
            [self.one_bit.extract_bit(x, self.design.restrict(y, i)) for i in range(self.design.m)]
        )
