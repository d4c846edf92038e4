from dataclasses import dataclass
from typing import Tuple

import numpy as np

from ..errors import FormatError, NotIdempotent, SpecMismatch
from ..utils.formats import MatrixBlock, parse_element_blocks, parse_ring_components
from ..utils.validators import MAX_PRIME, validate_matrix_size, validate_prime
from .linear import Mat, PrimeField


@dataclass(frozen=True)
class RingSpec:
    """Product of full matrix rings M_n(GF(p)), one (n, p) per component."""
    components: Tuple[Tuple[int, int], ...]

    def __post_init__(self):
        components = tuple((int(n), int(p)) for n, p in self.components)
        if not components:
            raise FormatError("a ring needs at least one component")
        for n, p in components:
            if not validate_matrix_size(n):
                raise FormatError(f"matrix size must be at least 1, got {n}")
            if not validate_prime(p):
                raise FormatError(f"{p} is not a prime in 2..{MAX_PRIME}")
        object.__setattr__(self, 'components', components)

    @classmethod
    def parse(cls, text):
        return cls(tuple(parse_ring_components(text)))

    @classmethod
    def matrix_ring(cls, n, p):
        return cls(((n, p),))

    @property
    def fields(self):
        return tuple(PrimeField(p) for _, p in self.components)

    @property
    def sizes(self):
        return tuple(n for n, _ in self.components)

    @property
    def length(self):
        """Height of L(R): the sum of the matrix sizes."""
        return sum(self.sizes)

    def cardinality(self):
        total = 1
        for n, p in self.components:
            total *= p ** (n * n)
        return total

    def __str__(self):
        return 'x'.join(f"M{n}(F{p})" for n, p in self.components)

    def to_dict(self):
        return {
            'spec': str(self),
            'components': [{'n': n, 'p': p} for n, p in self.components],
            'length': self.length
        }


@dataclass(frozen=True, eq=False)
class RingElement:
    """Element of a RingSpec: one square Mat per component."""
    spec: RingSpec
    parts: Tuple[Mat, ...]

    def __post_init__(self):
        parts = tuple(self.parts)
        if len(parts) != len(self.spec.components):
            raise SpecMismatch(f"{len(parts)} parts for a ring with {len(self.spec.components)} components")
        for part, (n, p) in zip(parts, self.spec.components):
            if part.p != p or part.shape != (n, n):
                raise SpecMismatch(f"part {part.to_text()} does not fit M{n}(F{p})")
        object.__setattr__(self, 'parts', parts)

    @classmethod
    def from_blocks(cls, spec, blocks):
        """Build from row-major entry lists, one per component.

        A block may also be a MatrixBlock, which must fit its component exactly.
        """
        blocks = list(blocks)
        if len(blocks) != len(spec.components):
            raise FormatError(f"expected {len(spec.components)} components, got {len(blocks)}")
        parts = []
        for block, field, n in zip(blocks, spec.fields, spec.sizes):
            if isinstance(block, MatrixBlock):
                if (block.p, block.rows, block.cols) != (field.p, n, n):
                    raise SpecMismatch(f"matrix {block.p}:{block.rows}x{block.cols} does not fit M{n}(F{field.p})")
                block = block.entries
            parts.append(Mat.from_entries(field, n, n, block))
        return cls(spec, tuple(parts))

    @classmethod
    def parse(cls, spec, text):
        return cls.from_blocks(spec, parse_element_blocks(text))

    @classmethod
    def from_arrays(cls, spec, arrays):
        return cls(spec, tuple(Mat(field, np.asarray(a)) for field, a in zip(spec.fields, arrays)))

    def _check(self, other, op):
        if not isinstance(other, RingElement):
            raise TypeError(f"{op}: expected RingElement, got {type(other).__name__}")
        if other.spec != self.spec:
            raise SpecMismatch(f"{op}: {self.spec} vs {other.spec}")
        return other

    def __add__(self, other):
        other = self._check(other, '+')
        return RingElement(self.spec, tuple(x + y for x, y in zip(self.parts, other.parts)))

    def __sub__(self, other):
        other = self._check(other, '-')
        return RingElement(self.spec, tuple(x - y for x, y in zip(self.parts, other.parts)))

    def __neg__(self):
        return RingElement(self.spec, tuple(-x for x in self.parts))

    def __mul__(self, other):
        other = self._check(other, '*')
        return RingElement(self.spec, tuple(x @ y for x, y in zip(self.parts, other.parts)))

    def is_zero(self):
        return all(part.is_zero() for part in self.parts)

    def key(self):
        return tuple(part.key() for part in self.parts)

    def __eq__(self, other):
        if not isinstance(other, RingElement):
            return NotImplemented
        return self.spec == other.spec and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def to_text(self):
        return ';'.join(','.join(str(e) for e in part.entries) for part in self.parts)

    def to_dict(self):
        return {
            'text': self.to_text(),
            'parts': [part.to_rows() for part in self.parts]
        }

    def __repr__(self):
        return f"RingElement({self.spec}, {self.to_text()})"


@dataclass(frozen=True)
class Corner:
    """The corner ring eRe with unit e; arithmetic is that of R."""
    unit: RingElement

    def __post_init__(self):
        e = self.unit
        if e * e != e:
            raise NotIdempotent(f"corner unit {e.to_text()} is not idempotent")

    @property
    def spec(self):
        return self.unit.spec

    def contains(self, x):
        return self.unit * x * self.unit == x

    def project(self, x):
        return self.unit * x * self.unit
