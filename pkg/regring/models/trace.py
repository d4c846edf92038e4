from dataclasses import dataclass, field
from typing import Dict, List, Optional, Union

from .ring import RingElement

AXIS = 'axis'
UNIT = 'unit'


@dataclass(frozen=True)
class Stabilized:
    at: int

    def to_dict(self):
        return {'stabilized_at': self.at}


@dataclass(frozen=True)
class Exhausted:
    max_steps: int

    def to_dict(self):
        return {'exhausted': self.max_steps}


@dataclass(frozen=True)
class ReductionStep:
    """One stage of the chains: e_n, f_n and g_n generating e_nR ∩ f_nR.

    alpha_fixes_g records whether a^(2^n)·g_nR = g_nR; injective whether
    a^(2^n) keeps the rank of e_n in every component.
    """
    n: int
    e: RingElement
    f: RingElement
    g: RingElement
    e_height: int
    f_height: int
    g_height: int
    alpha_fixes_g: bool
    injective: bool

    def to_dict(self):
        return {
            'n': self.n,
            'e': self.e.to_text(),
            'f': self.f.to_text(),
            'g': self.g.to_text(),
            'e_height': self.e_height,
            'f_height': self.f_height,
            'g_height': self.g_height
        }


@dataclass
class ReductionTrace:
    a: RingElement
    b: RingElement
    steps: List[ReductionStep] = field(default_factory=list)
    status: Union[Stabilized, Exhausted, None] = None

    @property
    def spec(self):
        return self.a.spec

    @property
    def stabilized(self):
        return isinstance(self.status, Stabilized)

    @property
    def stabilized_at(self) -> Optional[int]:
        return self.status.at if self.stabilized else None

    def heights(self):
        return [step.g_height for step in self.steps]

    def to_dict(self):
        return {
            'ring': str(self.spec),
            'a': self.a.to_text(),
            'b': self.b.to_text(),
            'trace': [step.to_dict() for step in self.steps],
            'status': self.status.to_dict() if self.status else None
        }


@dataclass(frozen=True)
class Certificate:
    kind: str
    payload: RingElement
    verified: Dict[str, bool] = field(default_factory=dict)

    @property
    def ok(self):
        return bool(self.verified) and all(self.verified.values())

    def to_dict(self):
        return {
            'kind': self.kind,
            'payload': self.payload.to_text(),
            'verified': dict(self.verified)
        }


@dataclass(frozen=True)
class Decomposition:
    """x_n, y_n with e_n = x_n ⊕ (e_{n+1} + g_n) and y_n generating a^(2^n)·x_nR."""
    xs: List[RingElement]
    ys: List[RingElement]
    checks: Dict[str, bool]

    @property
    def ok(self):
        return all(self.checks.values())

    def to_dict(self):
        return {
            'x': [x.to_text() for x in self.xs],
            'y': [y.to_text() for y in self.ys],
            'checks': dict(self.checks)
        }


@dataclass(frozen=True)
class CertificateBundle:
    """Everything `reduce` reports for a pair; serializes to the certificate schema."""
    trace: ReductionTrace
    axis: Certificate
    unit: Certificate

    @property
    def ok(self):
        return self.axis.ok and self.unit.ok

    def to_dict(self):
        return {
            'ring': str(self.trace.spec),
            'a': self.trace.a.to_text(),
            'b': self.trace.b.to_text(),
            'trace': [
                {'n': s.n, 'g_height': s.g_height, 'e': s.e.to_text(), 'f': s.f.to_text(), 'g': s.g.to_text()}
                for s in self.trace.steps
            ],
            'status': self.trace.status.to_dict(),
            'axis': self.axis.payload.to_text(),
            'unit': self.unit.payload.to_text(),
            'verified': {AXIS: self.axis.ok, UNIT: self.unit.ok}
        }
