"""Exact super Iwasawa factorization over truncated Grassmann-type algebras.

Submodules
----------
algebra      truncated graded-commutative algebra with a graded star
supermatrix  block supermatrices: product, supertranspose, inverse, Berezinian
iwasawa      super Gram-Schmidt factorization ``M = Phi @ Psi`` and predicates
hopf         coproduct, counit, antipode, graded real form and their checks
cli          ``superiwasawa`` command-line tool
"""
from .algebra import (
    AlgebraElement,
    AlgebraMorphism,
    GaussianRational,
    Generator,
    GeneratorTable,
    invert_even,
    is_star_real,
    mul,
    sqrt_even,
    star,
)
from .exceptions import (
    DomainError,
    IncompatibleContextError,
    MalformedInputError,
    NotInvertibleError,
    ParityError,
    PreconditionError,
    SuperAlgebraError,
)
from .hopf import HopfContext, TensorElement
from .iwasawa import (
    DecompositionResult,
    InstanceSpec,
    classical_oracle,
    decompose,
    generate_instance,
    gram_schmidt,
    is_san_supermatrix,
    is_su_supermatrix,
)
from .supermatrix import SuperDims, SuperMatrix, SuperVector, block_inverse, sdet

__version__ = "0.1.0"

__all__ = [
    "AlgebraElement",
    "AlgebraMorphism",
    "DecompositionResult",
    "DomainError",
    "GaussianRational",
    "Generator",
    "GeneratorTable",
    "HopfContext",
    "IncompatibleContextError",
    "InstanceSpec",
    "MalformedInputError",
    "NotInvertibleError",
    "ParityError",
    "PreconditionError",
    "SuperAlgebraError",
    "SuperDims",
    "SuperMatrix",
    "SuperVector",
    "TensorElement",
    "block_inverse",
    "classical_oracle",
    "decompose",
    "generate_instance",
    "gram_schmidt",
    "invert_even",
    "is_san_supermatrix",
    "is_star_real",
    "is_su_supermatrix",
    "mul",
    "sdet",
    "sqrt_even",
    "star",
]
