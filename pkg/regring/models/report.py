from dataclasses import dataclass, field
from typing import Any, Dict, Optional

from ..errors import FormatError
from ..utils.validators import validate_matrix_size, validate_prime, validate_seed, validate_trials
from .ring import RingSpec

MODES = ('exhaustive', 'sampled')
LAW_MODES = ('constructive', 'rejection')


def _serialize(value):
    if hasattr(value, 'to_text'):
        return value.to_text()
    if hasattr(value, 'to_dict'):
        return value.to_dict()
    if isinstance(value, dict):
        return {str(k): _serialize(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_serialize(v) for v in value]
    return value


@dataclass(frozen=True)
class Verdict:
    """Outcome of a universally quantified check over a finite ring."""
    holds: bool
    cases_checked: int
    mode: str
    counterexample: Optional[Dict[str, Any]] = None
    details: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {self.mode}")
        if not self.holds and self.counterexample is None:
            raise ValueError("a failing verdict needs a counterexample")

    def __bool__(self):
        return self.holds

    def to_dict(self):
        return {
            'holds': self.holds,
            'cases_checked': self.cases_checked,
            'mode': self.mode,
            'counterexample': None if self.counterexample is None else {
                name: _serialize(value) for name, value in self.counterexample.items()
            },
            'details': {name: _serialize(value) for name, value in self.details.items()}
        }


@dataclass(frozen=True)
class LawConfig:
    """Sampling setup of a law suite.

    Lattice suites run in L(M_dim(GF(p))), the subspace lattice of
    GF(p)^dim, unless an explicit ring spec is given.
    Verdicts do not depend on workers.
    """
    dim: int = 4
    p: int = 2
    trials: int = 1000
    seed: int = 0
    mode: str = 'constructive'
    spec: Optional[RingSpec] = None
    workers: int = 1

    def __post_init__(self):
        if not validate_trials(self.trials):
            raise FormatError(f"trials must be at least 1, got {self.trials}")
        if not validate_seed(self.seed):
            raise FormatError(f"seed must be a non-negative integer, got {self.seed}")
        if self.mode not in LAW_MODES:
            raise FormatError(f"mode must be one of {LAW_MODES}, got {self.mode}")
        if not validate_trials(self.workers):
            raise FormatError(f"workers must be at least 1, got {self.workers}")
        if self.spec is None:
            if not validate_matrix_size(self.dim) or not validate_prime(self.p):
                raise FormatError(f"invalid lattice GF({self.p})^{self.dim}")
            object.__setattr__(self, 'spec', RingSpec.matrix_ring(self.dim, self.p))

    def to_dict(self):
        return {
            'ring': str(self.spec),
            'trials': self.trials,
            'seed': self.seed,
            'mode': self.mode
        }


@dataclass
class LawVerdict:
    law: str
    passed: int = 0
    failed: int = 0
    skipped: int = 0
    first_failure: Optional[Dict[str, Any]] = None

    @property
    def ok(self):
        return self.failed == 0

    def record(self, passed, configuration=None):
        if passed:
            self.passed += 1
            return
        self.failed += 1
        if self.first_failure is None:
            self.first_failure = {name: _serialize(value) for name, value in (configuration or {}).items()}

    def to_dict(self):
        return {
            'law': self.law,
            'passed': self.passed,
            'failed': self.failed,
            'skipped': self.skipped,
            'first_failure': self.first_failure
        }


@dataclass
class PropReport:
    ring: str
    property: str
    holds: bool
    cases: int = 0
    witness_or_counterexample: Optional[Dict[str, Any]] = None

    def __bool__(self):
        return self.holds

    def to_dict(self):
        witness = self.witness_or_counterexample
        return {
            'ring': self.ring,
            'property': self.property,
            'holds': self.holds,
            'cases': self.cases,
            'witness_or_counterexample': None if witness is None else {
                name: _serialize(value) for name, value in witness.items()
            }
        }
