"""String attractors of bi-infinite words.

Exact window oracles for eventually periodic words, characteristic Sturmian
words and their shifts and morphic images, with attractor checks, span
computations and desubstitution.
"""
from .attractor import (ArithmeticProgression, CoverageReport, FiniteSet, Interval,
                        SpanResult, check_attractor, eventually_periodic_attractor,
                        min_size_bruteforce, min_span_bruteforce)
from .biword import (CharacteristicSturmian, DirectiveSequence, EventuallyPeriodic,
                     MorphicImage, OrbitPoint, Shifted, Window, fibonacci, load_spec,
                     loads_spec, dumps_spec)
from .config import work_ceiling
from .errors import (BiattrError, InvariantError, PreconditionError, ResourceLimitError,
                     SpecError)
from .morphism import L0, L1, Substitution

__version__ = "0.1.0"

__all__ = [
    "ArithmeticProgression", "BiattrError", "CharacteristicSturmian", "CoverageReport",
    "DirectiveSequence", "EventuallyPeriodic", "FiniteSet", "Interval", "InvariantError",
    "L0", "L1", "MorphicImage", "OrbitPoint", "PreconditionError", "ResourceLimitError",
    "Shifted", "SpanResult", "SpecError", "Substitution", "Window", "check_attractor",
    "dumps_spec", "eventually_periodic_attractor", "fibonacci", "load_spec", "loads_spec",
    "min_size_bruteforce", "min_span_bruteforce", "work_ceiling",
]
