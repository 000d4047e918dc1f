"""Span-1 windows, attractor descent along L0/L1 and Sturmian span verdicts."""
from __future__ import annotations

from dataclasses import dataclass

from .attractor import (Interval, SpanResult, check_attractor, min_span_bruteforce)
from .biword import (BiWordSpec, CharacteristicSturmian, MorphicImage, OrbitPoint, Shifted,
                     reduce_spec, sample_language)
from .errors import InvariantError, PreconditionError
from .morphism import L
from .substitution import Desubstitution, desubstitute_L, image_attractor
from .words import special_factors

SPAN1 = Interval(0, 1)


@dataclass(frozen=True)
class Span1Report:
    passed: bool
    variant: str | None
    failed_at: int | None
    N: int
    radius: int
    covered: bool

    @property
    def agrees(self) -> bool:
        """The window law and the [0,1] coverage check give the same verdict."""
        return self.passed == self.covered

    def to_dict(self):
        return dict(self.__dict__, agrees=self.agrees)


def special_prefixes(spec: BiWordSpec, n: int, radius: int | None = None):
    """``(l_m, r_m)`` for ``0 <= m <= n`` from the sampled language.

    Raises unless the sample has complexity ``m+1`` up to ``n+1``.
    """
    sample = sample_language(spec, n + 1, radius or 2 * (n + 1))
    for m in range(1, n + 2):
        if len(sample[m]) != m + 1:
            raise PreconditionError(f"not complexity n+1 at length {m}: p({m}) = {len(sample[m])}")
    out = [("", "")]
    for m in range(1, n + 1):
        ls, rs = special_factors(sample[m], sample[m + 1])
        if len(ls) != 1 or len(rs) != 1:
            raise PreconditionError(f"special factors of length {m} are not unique")
        out.append((ls.pop(), rs.pop()))
    return out, sample.radius


def verify_span1(spec: BiWordSpec, n: int, radius: int | None = None) -> Span1Report:
    """Check ``x[-m, m+1] = r_m (01|10) l_m`` for every ``m <= n``."""
    specials, used = special_prefixes(spec, n, radius)
    win = spec.window(-n, n + 1)
    variant = None
    failed = None
    for m, (l, r) in enumerate(specials):
        core = win.slice(-m, m + 1)
        if core == r + "01" + l:
            here = "upper"
        elif core == r + "10" + l:
            here = "lower"
        else:
            failed = m
            break
        if variant is None:
            variant = here
        elif here != variant:
            failed = m
            break
    covered = check_attractor(spec, SPAN1, n, radius=used).covered
    passed = failed is None
    return Span1Report(passed, variant if passed else None, failed, n, used, covered)


# --------------------------------------------------------------------------
# descent


@dataclass(frozen=True)
class DescentStep:
    which: int
    shift: int
    gamma_before: Interval
    gamma_after: Interval
    stabilized: bool
    pattern: str
    removal: dict

    def to_dict(self):
        return {"which": self.which, "shift": self.shift,
                "gamma_before": self.gamma_before.to_json(),
                "gamma_after": self.gamma_after.to_json(), "stabilized": self.stabilized,
                "pattern": self.pattern, "removal": self.removal}


@dataclass(frozen=True)
class DescentTrace:
    steps: tuple[DescentStep, ...]
    final: Interval
    reached_span1: bool
    exhausted: bool

    def spans(self):
        return [self.steps[0].gamma_before.span] + [s.gamma_after.span for s in self.steps] \
            if self.steps else [self.final.span]

    def to_dict(self):
        return {"steps": [s.to_dict() for s in self.steps], "final": self.final.to_json(),
                "reached_span1": self.reached_span1, "exhausted": self.exhausted}


def _one_isolated(block: str, which: int) -> bool:
    """Is ``block`` of the form 0^i 1 0^j (letters swapped for L1)?"""
    big, small = ("1", "0") if which == 0 else ("0", "1")
    return block.count(big) == 1 and set(block) <= {big, small}


def desubstitute_step(spec: CharacteristicSturmian, gamma: Interval, n: int) -> tuple[
        CharacteristicSturmian, DescentStep, Desubstitution]:
    """One step: ``x = S L_a(x')`` with ``x'`` the characteristic word of the tail directive."""
    a = int(spec.directive.letter(0))
    inner = CharacteristicSturmian(spec.directive.drop(1), spec.variant)
    lifted = gamma.shift(1)  # attractor of L_a(x') = S^{-1} x
    x = MorphicImage(inner, L(a), 0)
    block = x.window(lifted.lo, lifted.hi).content
    res = desubstitute_L(inner, a, lifted, n)
    if not res.report.covered:
        raise InvariantError(f"desubstituted attractor {res.attractor} misses {res.report.witness!r}")
    after = res.attractor
    if after.span > gamma.span:
        raise InvariantError(f"span increased from {gamma.span} to {after.span}")
    stabilized = after.span == gamma.span and gamma.span > 1
    if stabilized and not _one_isolated(block, a):
        raise InvariantError(f"span stalled outside the isolated-letter pattern: {block}")
    step = DescentStep(a, 1, gamma, after, stabilized, block, res.removal.to_dict())
    return inner, step, res


def descend(spec: CharacteristicSturmian, gamma: Interval, n: int = 60,
            budget: int = 64) -> DescentTrace:
    """Peel ``L_a`` letters off the directive until the attractor has span 1."""
    if not isinstance(spec, CharacteristicSturmian):
        raise PreconditionError("descent needs a characteristic spec with a directive")
    report = check_attractor(spec, gamma, n)
    if not report.covered:
        raise PreconditionError(f"{gamma} is not an attractor up to {n}: {report.witness!r}")
    steps = []
    while gamma.span > 1 and len(steps) < budget:
        spec, step, _ = desubstitute_step(spec, gamma, n)
        steps.append(step)
        gamma = step.gamma_after
    return DescentTrace(tuple(steps), gamma, gamma.span <= 1, gamma.span > 1)


def push_forward(spec: CharacteristicSturmian, gamma: Interval, depth: int) -> tuple[
        CharacteristicSturmian, Interval]:
    """Attractor of ``char(d)`` from one of ``char(d.drop(depth))`` via images.

    Uses ``char(d) = S L_{a0}(char(d.drop(1)))``.
    """
    d = spec.directive
    chain = [CharacteristicSturmian(d.drop(t), spec.variant) for t in range(depth + 1)]
    g = gamma
    for t in range(depth, 0, -1):
        a = int(chain[t - 1].directive.letter(0))
        img = image_attractor(chain[t], L(a), g)
        g = Interval(img.inf - 1, img.sup - 1)
    return chain[0], g


def classify_sturmian_span(spec: BiWordSpec, n: int = 40, search: int = 60) -> SpanResult:
    """Finite(1) for characteristic words up to shift, Infinite for declared orbit points."""
    r = reduce_spec(spec)
    if isinstance(r.base, OrbitPoint):
        if r.base.family != "sturmian" or r.phi is not None:
            raise PreconditionError("orbit point is not a Sturmian one")
        return SpanResult.infinite("non-characteristic Sturmian orbit point: span is 1 or infinite, "
                                   "and 1 only up to shift of a characteristic word")
    sample = sample_language(spec, n, 2 * n)
    for m in range(1, n + 1):
        if len(sample[m]) != m + 1:
            raise PreconditionError(f"not Sturmian: p({m}) = {len(sample[m])}")
    if isinstance(r.base, CharacteristicSturmian) and r.phi is None:
        gamma = SPAN1.shift(-r.shift)
        report = check_attractor(spec, gamma, n, sample=sample)
        if not report.covered:
            raise InvariantError(f"shifted characteristic attractor fails: {report.witness!r}")
        return SpanResult.finite(1, gamma, n)
    return min_span_bruteforce(spec, n, search)


@dataclass(frozen=True)
class ImageCheck:
    a: int
    variant: str
    report: Span1Report

    @property
    def passed(self):
        return self.report.passed and self.report.variant == self.variant

    def to_dict(self):
        return {"a": self.a, "variant": self.variant, "passed": self.passed,
                "span1": self.report.to_dict()}


def characteristic_image_check(spec: CharacteristicSturmian, a: int, n: int = 40) -> ImageCheck:
    """``S L_a(x)`` must be characteristic with the same variant."""
    image = Shifted(MorphicImage(spec, L(a), 0), 1)
    return ImageCheck(int(a), spec.variant, verify_span1(image, n))
