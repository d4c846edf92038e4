from dataclasses import dataclass

from .linear import Mat, Subspace
from .ring import RingElement, RingSpec


@dataclass(frozen=True)
class ExampleOneInstance:
    """Mutually reflexive pair a, a_plus on GF(p)^dim whose reduction chain
    drops strictly n + 1 times.

    v1 = im a_plus and v2 = im a are hyperplanes and a maps v1 onto v2.
    """
    n: int
    p: int
    a: Mat
    a_plus: Mat
    v1_basis: Subspace
    v2_basis: Subspace

    @property
    def dim(self):
        return self.a.rows

    @property
    def spec(self):
        return RingSpec.matrix_ring(self.dim, self.p)

    def pair(self):
        spec = self.spec
        return RingElement(spec, (self.a,)), RingElement(spec, (self.a_plus,))

    def to_dict(self):
        return {
            'n': self.n,
            'p': self.p,
            'dim': self.dim,
            'a': self.a.to_rows(),
            'a_plus': self.a_plus.to_rows(),
            'v1': self.v1_basis.to_dict(),
            'v2': self.v2_basis.to_dict()
        }


@dataclass(frozen=True)
class ExampleOneTriple:
    """a, b, c on W = V ⊕ U, V the space of `base` and U a copy of it.

    a, b and a, c are pairs of reflexive inverses, aR, bR and cR are
    pairwise perspective, caR ∩ acR = 0, and (a, b) restricted to V is the
    base pair.
    """
    base: ExampleOneInstance
    a: Mat
    b: Mat
    c: Mat

    @property
    def dim(self):
        return self.a.rows

    @property
    def spec(self):
        return RingSpec.matrix_ring(self.dim, self.base.p)

    def elements(self):
        spec = self.spec
        return tuple(RingElement(spec, (m,)) for m in (self.a, self.b, self.c))

    def to_dict(self):
        return {
            'dim': self.dim,
            'a': self.a.to_rows(),
            'b': self.b.to_rows(),
            'c': self.c.to_rows()
        }
