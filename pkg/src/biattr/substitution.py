"""Substitution images and preimages of attractors, return morphisms and the
L0/L1 desubstitution step."""
from __future__ import annotations

import bisect
from dataclasses import dataclass, field

from .attractor import (CoverageReport, FiniteSet, Interval, check_attractor)
from .biword import BiWordSpec, MorphicImage, Window
from .errors import InvariantError, PreconditionError
from .morphism import Substitution, L
from .words import occurrences, primitive_root


def apply(phi: Substitution, target):
    """Apply ``phi`` to a finite word, a window touching the origin, or a spec.

    A window must contain position 0 or end at -1, since otherwise the
    image positions depend on letters outside it.
    """
    if isinstance(target, str):
        return phi(target)
    if isinstance(target, Window):
        if not target.offset <= 0 <= target.end + 1:
            raise PreconditionError("window must contain position 0 or end at -1")
        neg = phi(target.slice(target.offset, -1))
        pos = phi(target.slice(0, target.end))
        return Window(-len(neg), neg + pos)
    if isinstance(target, BiWordSpec):
        return MorphicImage(target, phi, 0)
    raise PreconditionError(f"cannot apply a substitution to {type(target).__name__}")


def _supports(source, phi: Substitution, lo: int, hi: int) -> list[tuple[int, int, int]]:
    """``(i, start, end)`` of ``supp phi(x_i)`` for ``lo <= i <= hi``."""
    a, b = min(lo, 0), max(hi, -1)
    win = source.window(a, b) if a <= b else None
    text = win.content if win is not None else ""
    lengths = [len(phi.image(c)) for c in text]
    # starts relative to position 0 of phi(x)
    neg_total = sum(lengths[:-a]) if a < 0 else 0
    start = -neg_total
    out = []
    for idx, length in enumerate(lengths):
        i = a + idx
        if lo <= i <= hi:
            out.append((i, start, start + length - 1))
        start += length
    return out


def image_attractor(source, phi: Substitution, gamma) -> FiniteSet:
    """Union of the supports ``supp phi(x_i)`` over ``i`` in ``gamma``."""
    pos = sorted(set(gamma))
    if not pos:
        raise PreconditionError("gamma must be non-empty")
    keep = set(pos)
    out: list[int] = []
    for i, s, e in _supports(source, phi, pos[0], pos[-1]):
        if i in keep:
            out.extend(range(s, e + 1))
    return FiniteSet(tuple(out))


def preimage_attractor(source, phi: Substitution, gamma) -> FiniteSet:
    """Letter positions of ``x`` whose image support meets ``gamma``."""
    pos = sorted(set(gamma))
    if not pos:
        raise PreconditionError("gamma must be non-empty")
    # images are non-empty, so letter i sits within |i| + 1 of its image
    out = []
    for i, s, e in _supports(source, phi, min(pos[0], 0) - 1, max(pos[-1], 0) + 1):
        k = bisect.bisect_left(pos, s)
        if k < len(pos) and pos[k] <= e:
            out.append(i)
    if not out:
        raise PreconditionError("preimage is empty")
    return FiniteSet(tuple(out))


def image_span_bound(gamma, phi: Substitution) -> int:
    """``(spn(gamma) + 1) * max |phi(a)| - 1``."""
    return (gamma.span + 1) * phi.max_length - 1


def is_acyclic(phi: Substitution) -> bool:
    """True iff the two images are not powers of a common word."""
    if len(phi.rules) != 2:
        raise PreconditionError(f"acyclicity is defined for binary domains, got {phi.domain!r}")
    (_, u), (_, v) = phi.rules
    return primitive_root(u) != primitive_root(v)


@dataclass(frozen=True)
class LetterCheck:
    letter: str
    occurrences: tuple[int, ...]
    ok: bool


@dataclass(frozen=True)
class ReturnMorphismCertificate:
    w: str
    letters: tuple[LetterCheck, ...]
    injective: bool

    @property
    def valid(self) -> bool:
        return self.injective and all(c.ok for c in self.letters)

    def __bool__(self):
        return self.valid

    def to_dict(self):
        return {"w": self.w, "valid": self.valid, "injective": self.injective,
                "letters": {c.letter: {"occurrences": list(c.occurrences), "ok": c.ok}
                            for c in self.letters}}


def is_return_morphism(phi: Substitution, w: str) -> ReturnMorphismCertificate:
    """Check that ``w phi(a)`` holds ``w`` exactly as prefix and as suffix, for each ``a``."""
    if not w:
        raise PreconditionError("w must be non-empty")
    checks = []
    for a, img in phi.rules:
        text = w + img
        occ = tuple(occurrences(text, w))
        checks.append(LetterCheck(a, occ, occ == (0, len(text) - len(w))))
    images = [img for _, img in phi.rules]
    return ReturnMorphismCertificate(w, tuple(checks), len(set(images)) == len(images))


@dataclass(frozen=True)
class Validated:
    """A constructed attractor together with its coverage report."""

    attractor: FiniteSet | Interval
    report: CoverageReport
    notes: tuple[str, ...] = ()

    @property
    def valid(self):
        return self.report.covered

    def to_dict(self):
        return {"attractor": self.attractor.to_json(), "report": self.report.to_dict(),
                "notes": list(self.notes)}


def _require_return(phi, w):
    cert = is_return_morphism(phi, w)
    if not cert.valid:
        raise PreconditionError(f"not a return morphism for {w!r}: {cert.to_dict()}")
    return cert


def trim_positions(image: FiniteSet, w: str) -> FiniteSet:
    """Drop the ``|w|`` largest positions."""
    if len(image) <= len(w):
        raise PreconditionError(
            f"image has {len(image)} positions, at most |w| = {len(w)}; nothing left after trimming")
    return FiniteSet(image.positions[:-len(w)])


def trim_image_attractor(spec: BiWordSpec, phi: Substitution, w: str, gamma: Interval,
                         n: int = 60) -> Validated:
    """Image of an interval attractor minus its last ``|w|`` positions, validated on ``phi(spec)``.

    Aperiodicity of ``phi(spec)`` is the caller's responsibility.
    """
    _require_return(phi, w)
    trimmed = trim_positions(image_attractor(spec, phi, gamma), w)
    report = check_attractor(MorphicImage(spec, phi, 0), trimmed, n)
    return Validated(trimmed, report, ("image assumed aperiodic",))


def lift_attractor_return(spec: BiWordSpec, phi: Substitution, w: str, gamma: Interval,
                          n: int = 60) -> Validated:
    """``[m, m+l+|w|]`` from an interval attractor ``[m, m+l]`` preimage, validated on ``spec``."""
    _require_return(phi, w)
    pre = preimage_attractor(spec, phi, gamma)
    lifted = Interval(pre.inf, pre.sup + len(w))
    return Validated(lifted, check_attractor(spec, lifted, n))


# --------------------------------------------------------------------------
# L0 / L1 desubstitution


@dataclass(frozen=True)
class RemovalReport:
    which: int
    m: int
    ell: int
    count: int
    left_pair: str
    right_pair: str
    removed_left: bool
    removed_right: bool
    reasons: tuple[str, ...]
    rule_source: str

    def to_dict(self):
        return {k: (list(v) if isinstance(v, tuple) else v) for k, v in self.__dict__.items()}


@dataclass(frozen=True)
class Desubstitution:
    attractor: Interval
    removal: RemovalReport
    report: CoverageReport | None = field(default=None)

    def to_dict(self):
        return {"attractor": self.attractor.to_json(), "removal": self.removal.to_dict(),
                "report": None if self.report is None else self.report.to_dict()}


def desubstitute_L(y: BiWordSpec, which: int, gamma: Interval, n: int = 50,
                   validate: bool = True) -> Desubstitution:
    """Attractor of ``y`` from an interval attractor of ``x = L_which(y)``."""
    which = int(which)
    phi = L(which)
    x = MorphicImage(y, phi, 0)
    lo, k = gamma.lo, gamma.span
    pre = preimage_attractor(y, phi, gamma)
    m, ell = pre.inf, pre.span
    if pre.positions != tuple(range(m, m + ell + 1)):
        raise InvariantError(f"preimage {pre.positions} is not an interval")
    # L0 counts 1s; L1 exchanges the roles of the letters
    big, small = ("1", "0") if which == 0 else ("0", "1")
    count = x.window(lo + 1, lo + k).content.count(big) if k > 0 else 0
    if ell != k - count:
        raise InvariantError(f"l = {ell} but k - #{big} = {k} - {count}")
    left_pair = x.window(lo - 1, lo).content
    right_pair = x.window(lo + k, lo + k + 1).content
    keep_pattern = small * 2
    drop_pattern = small + big
    reasons = []
    removed_left = left_pair != keep_pattern
    reasons.append(f"x[n-1]x[n] = {left_pair}: " +
                   ("m-1 removed" if removed_left else f"equals {keep_pattern}, m-1 kept"))
    removed_right = right_pair == drop_pattern
    reasons.append(f"x[n+k]x[n+k+1] = {right_pair}: " +
                   ("m+l removed" if removed_right else f"differs from {drop_pattern}, m+l kept"))
    a = m if removed_left else m - 1
    b = m + ell - 1 if removed_right else m + ell
    if a > b:
        raise InvariantError("both removal rules fired on a single position")
    removal = RemovalReport(which, m, ell, count, left_pair, right_pair, removed_left,
                            removed_right, tuple(reasons),
                            "direct" if which == 0 else "roles of 0 and 1 exchanged")
    result = Interval(a, b)
    report = check_attractor(y, result, n) if validate else None
    return Desubstitution(result, removal, report)
