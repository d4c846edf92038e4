from dataclasses import dataclass, field
from typing import Dict, Tuple

from ..errors import SpecMismatch
from .linear import Subspace
from .ring import RingElement, RingSpec

AXIS_CHECKS = ('a+b=a+c', 'a+b=b+c', 'a+c=b+c', 'ab=ac', 'ab=bc')


@dataclass(frozen=True, eq=False)
class Ideal:
    """Principal right ideal aR, one column space per component."""
    spec: RingSpec
    spaces: Tuple[Subspace, ...]

    def __post_init__(self):
        spaces = tuple(self.spaces)
        if len(spaces) != len(self.spec.components):
            raise SpecMismatch(f"{len(spaces)} subspaces for a ring with {len(self.spec.components)} components")
        for space, (n, p) in zip(spaces, self.spec.components):
            if space.ambient_dim != n or space.p != p:
                raise SpecMismatch(f"subspace of F{space.p}^{space.ambient_dim} does not fit M{n}(F{p})")
        object.__setattr__(self, 'spaces', spaces)

    @property
    def dims(self):
        return tuple(s.dim for s in self.spaces)

    @property
    def height(self):
        return sum(self.dims)

    def is_zero(self):
        return self.height == 0

    def is_full(self):
        return self.height == self.spec.length

    def key(self):
        return tuple(s.key() for s in self.spaces)

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        return self.spec == other.spec and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def to_dict(self):
        return [
            {'component': i, 'dim': s.dim, 'basis': s.basis.to_rows()}
            for i, s in enumerate(self.spaces)
        ]

    def __repr__(self):
        return f"Ideal({self.spec}, dims={list(self.dims)})"


@dataclass(frozen=True)
class PerspectivityAxis:
    """Common complement c of A and B with the recorded axis equalities."""
    c: RingElement
    checks: Dict[str, bool] = field(default_factory=dict)

    @property
    def verified(self):
        return bool(self.checks) and all(self.checks.get(name, False) for name in AXIS_CHECKS)

    def to_dict(self):
        return {
            'c': self.c.to_text(),
            'checks': dict(self.checks),
            'verified': self.verified
        }


@dataclass(frozen=True)
class MvnWitness:
    """e = y·x and f = x·y with f·x·e = x and e·y·f = y."""
    x: RingElement
    y: RingElement
    e: RingElement
    f: RingElement

    def holds(self):
        x, y, e, f = self.x, self.y, self.e, self.f
        return y * x == e and x * y == f and f * x * e == x and e * y * f == y

    def to_dict(self):
        return {
            'x': self.x.to_text(),
            'y': self.y.to_text(),
            'e': self.e.to_text(),
            'f': self.f.to_text()
        }
