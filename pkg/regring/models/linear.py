from dataclasses import dataclass

import numpy as np

from ..errors import DimensionMismatch, FormatError
from ..utils.validators import validate_prime, validate_residues, MAX_PRIME


@dataclass(frozen=True)
class PrimeField:
    """GF(p) for a prime p <= 251."""
    p: int

    def __post_init__(self):
        if not validate_prime(self.p):
            raise FormatError(f"{self.p} is not a prime in 2..{MAX_PRIME}")

    def inv(self, x):
        return pow(int(x) % self.p, -1, self.p)

    def __str__(self):
        return f"F{self.p}"


@dataclass(frozen=True, eq=False)
class Mat:
    """Immutable matrix over GF(p); entries are kept reduced to 0..p-1."""
    field: PrimeField
    data: np.ndarray

    def __post_init__(self):
        data = np.array(self.data, dtype=np.int64, copy=True)
        if data.ndim != 2:
            raise DimensionMismatch(f"matrix data must be 2-dimensional, got shape {data.shape}")
        data %= self.field.p
        data.flags.writeable = False
        object.__setattr__(self, 'data', data)

    @classmethod
    def from_entries(cls, field, rows, cols, entries):
        if isinstance(field, int):
            field = PrimeField(field)
        entries = list(entries)
        if len(entries) != rows * cols:
            raise FormatError(f"expected {rows * cols} entries, got {len(entries)}")
        if not validate_residues(entries, field.p):
            raise FormatError(f"entries must be residues mod {field.p}")
        return cls(field, np.array(entries, dtype=np.int64).reshape(rows, cols))

    @classmethod
    def zeros(cls, field, rows, cols=None):
        return cls(field, np.zeros((rows, rows if cols is None else cols), dtype=np.int64))

    @classmethod
    def identity(cls, field, n):
        return cls(field, np.eye(n, dtype=np.int64))

    @classmethod
    def unit(cls, field, n, i, j):
        """Matrix unit E_ij (0-based indices) of size n."""
        data = np.zeros((n, n), dtype=np.int64)
        data[i, j] = 1
        return cls(field, data)

    @property
    def p(self):
        return self.field.p

    @property
    def rows(self):
        return self.data.shape[0]

    @property
    def cols(self):
        return self.data.shape[1]

    @property
    def shape(self):
        return self.data.shape

    @property
    def entries(self):
        return tuple(int(e) for e in self.data.ravel())

    @property
    def T(self):
        return Mat(self.field, self.data.T)

    def is_zero(self):
        return not self.data.any()

    def is_square(self):
        return self.rows == self.cols

    def _check(self, other, op):
        if not isinstance(other, Mat):
            raise TypeError(f"{op}: expected Mat, got {type(other).__name__}")
        if other.field != self.field:
            raise DimensionMismatch(f"{op}: fields differ ({self.field} vs {other.field})")
        return other

    def __add__(self, other):
        other = self._check(other, '+')
        if self.shape != other.shape:
            raise DimensionMismatch(f"+: shapes {self.shape} and {other.shape}")
        return Mat(self.field, self.data + other.data)

    def __sub__(self, other):
        other = self._check(other, '-')
        if self.shape != other.shape:
            raise DimensionMismatch(f"-: shapes {self.shape} and {other.shape}")
        return Mat(self.field, self.data - other.data)

    def __neg__(self):
        return Mat(self.field, -self.data)

    def __matmul__(self, other):
        other = self._check(other, '@')
        if self.cols != other.rows:
            raise DimensionMismatch(f"@: shapes {self.shape} and {other.shape}")
        return Mat(self.field, self.data @ other.data)

    def scale(self, k):
        return Mat(self.field, self.data * int(k))

    def key(self):
        return (self.p, self.shape, self.data.tobytes())

    def __eq__(self, other):
        if not isinstance(other, Mat):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def to_rows(self):
        return [[int(e) for e in row] for row in self.data]

    def to_text(self):
        return f"{self.p}:{self.rows}x{self.cols}:[{','.join(str(e) for e in self.entries)}]"

    def __repr__(self):
        return f"Mat({self.to_text()})"

    @staticmethod
    def hstack(field, blocks):
        return Mat(field, np.hstack([b.data for b in blocks]))

    @staticmethod
    def vstack(field, blocks):
        return Mat(field, np.vstack([b.data for b in blocks]))


@dataclass(frozen=True, eq=False)
class Subspace:
    """Subspace of GF(p)^ambient_dim held by its reduced row echelon basis.

    Build instances through gf_linear.span; the basis is trusted to be in
    RREF with no zero rows, so equality is equality of bases.
    """
    field: PrimeField
    ambient_dim: int
    basis: Mat

    def __post_init__(self):
        if self.basis.cols != self.ambient_dim:
            raise DimensionMismatch(
                f"basis has {self.basis.cols} columns, ambient dimension is {self.ambient_dim}")
        if self.basis.rows > self.ambient_dim:
            raise DimensionMismatch("more basis rows than the ambient dimension")

    @property
    def dim(self):
        return self.basis.rows

    @property
    def p(self):
        return self.field.p

    def is_zero(self):
        return self.dim == 0

    def is_full(self):
        return self.dim == self.ambient_dim

    def columns(self):
        """Basis vectors as the columns of an ambient_dim x dim matrix."""
        return self.basis.T

    def key(self):
        return (self.p, self.ambient_dim, self.basis.data.tobytes())

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def to_dict(self):
        return {
            'dim': self.dim,
            'basis': self.basis.to_rows()
        }

    def __repr__(self):
        return f"Subspace(F{self.p}^{self.ambient_dim}, dim={self.dim}, basis={self.basis.to_rows()})"
