from .linear import PrimeField, Mat, Subspace
from .ring import RingSpec, RingElement, Corner
from .term import Term, Var, Zero, One, Add, Neg, Mul, QuasiInv, Named
from .ideal import Ideal, PerspectivityAxis, MvnWitness
from .trace import (ReductionStep, ReductionTrace, Stabilized, Exhausted, Certificate, Decomposition,
                    CertificateBundle)
from .report import Verdict, LawConfig, LawVerdict, PropReport
from .example import ExampleOneInstance, ExampleOneTriple

__all__ = [
    'PrimeField',
    'Mat',
    'Subspace',
    'RingSpec',
    'RingElement',
    'Corner',
    'Term',
    'Var',
    'Zero',
    'One',
    'Add',
    'Neg',
    'Mul',
    'QuasiInv',
    'Named',
    'Ideal',
    'PerspectivityAxis',
    'MvnWitness',
    'ReductionStep',
    'ReductionTrace',
    'Stabilized',
    'Exhausted',
    'Certificate',
    'Decomposition',
    'CertificateBundle',
    'Verdict',
    'LawConfig',
    'LawVerdict',
    'PropReport',
    'ExampleOneInstance',
    'ExampleOneTriple'
]
