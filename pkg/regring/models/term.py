"""
Terms in the language of rings with quasi-inversion.

Nodes are immutable and compared by identity; derived terms share subterms,
so a term is a DAG and evaluation is memoized per node.
"""
from dataclasses import dataclass
from typing import Optional, Tuple


class Term:
    children: Tuple['Term', ...] = ()

    def __add__(self, other):
        return Add(self, other)

    def __sub__(self, other):
        return Add(self, Neg(other))

    def __mul__(self, other):
        return Mul(self, other)

    def __neg__(self):
        return Neg(self)

    def q(self):
        """Quasi-inverse x'."""
        return QuasiInv(self)

    def __str__(self):
        from ..services.term_lang import render
        return render(self)


@dataclass(frozen=True, eq=False)
class Var(Term):
    name: str


@dataclass(frozen=True, eq=False)
class Zero(Term):
    pass


@dataclass(frozen=True, eq=False)
class One(Term):
    pass


@dataclass(frozen=True, eq=False)
class Add(Term):
    left: Term
    right: Term

    @property
    def children(self):
        return (self.left, self.right)


@dataclass(frozen=True, eq=False)
class Neg(Term):
    operand: Term

    @property
    def children(self):
        return (self.operand,)


@dataclass(frozen=True, eq=False)
class Mul(Term):
    left: Term
    right: Term

    @property
    def children(self):
        return (self.left, self.right)


@dataclass(frozen=True, eq=False)
class QuasiInv(Term):
    operand: Term

    @property
    def children(self):
        return (self.operand,)


@dataclass(frozen=True, eq=False)
class Named(Term):
    """A macro application: renders as name[index](args), evaluates as body."""
    name: str
    args: Tuple[Term, ...]
    body: Term
    index: Optional[int] = None

    @property
    def children(self):
        return (self.body,)
