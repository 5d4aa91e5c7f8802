"""Common interface for strong seeded randomness extractors."""

from __future__ import annotations

from abc import ABC, abstractmethod

from .bits import BitString
from .exceptions import InvalidRange


class SeededExtractor(ABC):
    """A function {0,1}^n x {0,1}^d -> {0,1}^m, pure and immutable.

    Implementations expose ``input_length``, ``seed_length`` and
    ``output_length`` and the :meth:`extract` method.  ``vector_name``
    is the identifier used in test vector file headers.
    """

    vector_name: str = ""

    @property
    @abstractmethod
    def input_length(self) -> int: ...

    @property
    @abstractmethod
    def output_length(self) -> int: ...

    @property
    @abstractmethod
    def seed_length(self) -> int: ...

    @abstractmethod
    def extract(self, x: BitString, y: BitString) -> BitString:
        """Apply the extractor to input ``x`` and uniform seed ``y``."""

    def header_params(self) -> dict[str, int]:
        """Extractor-specific parameters carried in test vector headers."""
        return {}

    @staticmethod
    def create(extractor_type: str, **kwargs) -> "SeededExtractor":
        """Factory over the implemented extractor families.

        ``extractor_type`` is one of "toeplitz", "modified-toeplitz" or
        "trevisan" (underscores accepted).  Toeplitz variants take
        ``input_length`` and ``output_length``; Trevisan additionally
        takes ``one_bit_extractor_seed_length``.
        """
        from .toeplitz import ModifiedToeplitzExtractor, ToeplitzExtractor
        from .trevisan import TrevisanExtractor

        kind = extractor_type.replace("_", "-").lower()
        if kind == "toeplitz":
            return ToeplitzExtractor(**kwargs)
        if kind == "modified-toeplitz":
            return ModifiedToeplitzExtractor(**kwargs)
        if kind == "trevisan":
            return TrevisanExtractor.create(**kwargs)
        raise InvalidRange(f"unknown extractor type {extractor_type!r}")
