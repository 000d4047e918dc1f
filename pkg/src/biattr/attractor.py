"""String-attractor coverage, spans and brute-force minimal attractors.

Every verdict about an infinite word is bounded: "covered" means every
factor of length at most ``N`` seen in a stabilised sample has an
occurrence crossing the candidate set, and the report names ``N`` and the
sampling radius.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .biword import (BiWordSpec, LanguageSample, NormalForm, PurelyPeriodic, Window,
                     as_eventually_periodic, factor_complexity_profile,
                     normalize_eventually_periodic, sample_language)
from .errors import InvariantError, PreconditionError, ResourceLimitError
from .words import all_factors, has_period, is_conjugate

# --------------------------------------------------------------------------
# position sets


@dataclass(frozen=True)
class FiniteSet:
    positions: tuple[int, ...]

    def __post_init__(self):
        pos = tuple(sorted(set(self.positions)))
        if not pos:
            raise PreconditionError("a finite position set must be non-empty")
        object.__setattr__(self, "positions", pos)

    @property
    def inf(self):
        return self.positions[0]

    @property
    def sup(self):
        return self.positions[-1]

    @property
    def span(self):
        return self.sup - self.inf

    def __iter__(self):
        return iter(self.positions)

    def __len__(self):
        return len(self.positions)

    def __contains__(self, n):
        return n in set(self.positions)

    def shift(self, m):
        return FiniteSet(tuple(p + m for p in self.positions))

    def to_json(self):
        return {"set": list(self.positions)}


@dataclass(frozen=True)
class Interval:
    lo: int
    hi: int

    def __post_init__(self):
        if self.lo > self.hi:
            raise PreconditionError(f"empty interval [{self.lo},{self.hi}]")

    @property
    def inf(self):
        return self.lo

    @property
    def sup(self):
        return self.hi

    @property
    def span(self):
        return self.hi - self.lo

    @property
    def positions(self):
        return tuple(range(self.lo, self.hi + 1))

    def __iter__(self):
        return iter(range(self.lo, self.hi + 1))

    def __len__(self):
        return self.hi - self.lo + 1

    def __contains__(self, n):
        return self.lo <= n <= self.hi

    def shift(self, m):
        return Interval(self.lo + m, self.hi + m)

    def to_json(self):
        return {"interval": [self.lo, self.hi]}


@dataclass(frozen=True)
class ArithmeticProgression:
    residue: int
    modulus: int

    def __post_init__(self):
        if self.modulus < 1:
            raise PreconditionError("modulus must be at least 1")
        object.__setattr__(self, "residue", self.residue % self.modulus)

    span = float("inf")

    def __contains__(self, n):
        return (n - self.residue) % self.modulus == 0

    def shift(self, m):
        return ArithmeticProgression(self.residue + m, self.modulus)

    def to_json(self):
        return {"ap": [self.residue, self.modulus]}


PositionSet = FiniteSet | Interval | ArithmeticProgression


def as_finite(gamma) -> FiniteSet:
    if isinstance(gamma, ArithmeticProgression):
        raise PreconditionError("expected a finite position set")
    if isinstance(gamma, FiniteSet):
        return gamma
    return FiniteSet(tuple(gamma))


def hull(gamma) -> Interval:
    return Interval(gamma.inf, gamma.sup)


def position_set_from_json(obj) -> PositionSet:
    if "interval" in obj:
        return Interval(*obj["interval"])
    if "set" in obj:
        return FiniteSet(tuple(obj["set"]))
    if "ap" in obj:
        return ArithmeticProgression(*obj["ap"])
    raise PreconditionError("position set needs one of 'interval', 'set', 'ap'")


# --------------------------------------------------------------------------
# reports


@dataclass(frozen=True)
class CoverageReport:
    covered: bool
    N: int
    radius: int
    witness: str | None
    attractor: PositionSet

    @property
    def verdict(self):
        return f"covered-up-to-{self.N}" if self.covered else "uncovered"

    def __bool__(self):
        return self.covered

    def to_dict(self):
        span = self.attractor.span
        return {"verdict": self.verdict, "N": self.N, "radius": self.radius,
                "witness": self.witness, "attractor": self.attractor.to_json(),
                "span": None if span == float("inf") else span}


@dataclass(frozen=True)
class SpanResult:
    """``kind`` is ``finite``, ``infinite`` or ``unknown``."""

    kind: str
    value: int | None = None
    attractor: PositionSet | None = None
    reason: str | None = None
    N: int | None = None
    provenance: str = "window-verified"

    @classmethod
    def finite(cls, value, attractor, N=None, provenance="window-verified"):
        if attractor.span != value:
            raise InvariantError(f"witness span {attractor.span} differs from {value}")
        return cls("finite", value, attractor, None, N, provenance)

    @classmethod
    def infinite(cls, reason):
        return cls("infinite", None, None, reason, None, "theorem-derived")

    @classmethod
    def unknown(cls, N):
        return cls("unknown", None, None, None, N, "window-verified")

    def to_dict(self):
        return {"kind": self.kind, "span": self.value,
                "attractor": None if self.attractor is None else self.attractor.to_json(),
                "reason": self.reason, "N": self.N, "provenance": self.provenance}


# --------------------------------------------------------------------------
# coverage


def _start_ranges(positions, n):
    """Merged ranges of start indices whose length-n occurrence crosses a position."""
    out = []
    for g in positions:
        lo, hi = g - n + 1, g
        if out and lo <= out[-1][1] + 1:
            out[-1][1] = max(out[-1][1], hi)
        else:
            out.append([lo, hi])
    return out


def _clusters(positions, gap):
    groups = [[positions[0]]]
    for g in positions[1:]:
        if g - groups[-1][-1] <= gap:
            groups[-1].append(g)
        else:
            groups.append([g])
    return groups


def _first_uncovered_finite(source, layers, positions, nmax):
    """Shortest, then lexicographically least, factor not crossing ``positions``."""
    windows = []
    for cl in _clusters(list(positions), 2 * nmax):
        windows.append((cl, source.window(cl[0] - nmax + 1, cl[-1] + nmax - 1)))
    for n in range(1, nmax + 1):
        covered = set()
        for cl, win in windows:
            text, off = win.content, win.offset
            for lo, hi in _start_ranges(cl, n):
                covered.update(text[t - off:t - off + n] for t in range(lo, hi + 1))
        missing = layers[n] - covered
        if missing:
            return min(missing)
    return None


def _residues(win: Window, nmax: int, modulus: int) -> dict[str, set[int]]:
    text, off = win.content, win.offset
    res: dict[str, set[int]] = {}
    for n in range(1, nmax + 1):
        for t in range(len(text) - n + 1):
            res.setdefault(text[t:t + n], set()).add((t + off) % modulus)
    return res


def _ap_criterion(residues: set[int], i: int, k: int, n: int) -> bool:
    return any((i - r) % k <= n - 1 for r in residues)


def _first_uncovered_ap(sample: LanguageSample, ap: ArithmeticProgression, nmax: int,
                        occ_window: Window | None = None):
    k, i = ap.modulus, ap.residue
    win = occ_window or sample.window
    if nmax >= 1:
        res = _residues(win, min(nmax, k), k)
    for w in sample.all_factors():
        if len(w) > nmax:
            break
        if len(w) >= k and w in win.content:
            continue
        if not _ap_criterion(res.get(w, set()) if len(w) <= k else
                             {t % k for t in _find_all(win, w)}, i, k, len(w)):
            return w
    return None


def _find_all(win: Window, w: str):
    t = win.content.find(w)
    while t != -1:
        yield t + win.offset
        t = win.content.find(w, t + 1)


def is_covered(win: Window, gamma: PositionSet, w: str) -> bool:
    """Does some occurrence of ``w`` inside ``win`` cross ``gamma``?"""
    if not w:
        raise PreconditionError("the empty word is never tested for coverage")
    if isinstance(gamma, ArithmeticProgression):
        return any(any(p in gamma for p in range(t, t + len(w))) for t in _find_all(win, w))
    need_lo, need_hi = gamma.inf - len(w) + 1, gamma.sup + len(w) - 1
    if not win.contains(need_lo, need_hi):
        raise PreconditionError(f"window must contain [{need_lo},{need_hi}]")
    for lo, hi in _start_ranges(list(gamma.positions), len(w)):
        for t in range(lo, hi + 1):
            if win.slice(t, t + len(w) - 1) == w:
                return True
    return False


def default_radius(spec: BiWordSpec, n: int) -> int:
    """Radius ``4N`` for eventually periodic specs, ``2N`` otherwise."""
    return 4 * n if as_eventually_periodic(spec) is not None else 2 * n


def check_attractor(spec: BiWordSpec, gamma: PositionSet, n: int,
                    radius: int | None = None,
                    sample: LanguageSample | None = None) -> CoverageReport:
    """Check that every factor of length ``<= n`` is covered by ``gamma``."""
    if n < 1:
        raise PreconditionError("N must be at least 1")
    if sample is None or sample.max_length < n:
        sample = sample_language(spec, n, radius or default_radius(spec, n))
    if isinstance(gamma, ArithmeticProgression):
        witness = _first_uncovered_ap(sample, gamma, n)
    else:
        witness = _first_uncovered_finite(spec, sample.layers, gamma.positions, n)
    return CoverageReport(witness is None, n, sample.radius, witness, gamma)


# --------------------------------------------------------------------------
# span search


def _min_end_table(text: str, off: int, layer, n: int) -> dict[int, int]:
    """For each start ``s``, least ``T`` with every factor of ``layer`` starting in ``[s, T]``."""
    starts = len(text) - n + 1
    ids = [text[t:t + n] for t in range(starts)]
    need = len(layer)
    counts: dict[str, int] = {}
    have = 0
    right = 0  # ids[s:right] is the current range
    out = {}
    for s in range(starts):
        while have < need and right < starts:
            f = ids[right]
            if f in layer:
                c = counts.get(f, 0)
                if c == 0:
                    have += 1
                counts[f] = c + 1
            right += 1
        if have < need:
            break
        out[s + off] = right - 1 + off
        f = ids[s]
        if f in layer:
            counts[f] -= 1
            if counts[f] == 0:
                have -= 1
    return out


def min_span_bruteforce(spec: BiWordSpec, n: int, search: int,
                        radius: int | None = None) -> SpanResult:
    """Smallest ``k`` such that some ``[a, a+k]`` with ``|a| <= search`` covers up to ``n``.

    Intervals suffice: the hull of a finite attractor is an attractor with
    the same span. Ties go to the smallest ``|a|``, then the smallest ``a``.
    """
    if search < n:
        raise PreconditionError("search radius must be at least N")
    sample = sample_language(spec, n, radius or default_radius(spec, n))
    lo, hi = -(search + n), 3 * search + 2 * n
    win = spec.window(lo, hi)
    tables = [None] + [_min_end_table(win.content, lo, sample[m], m) for m in range(1, n + 1)]
    best = None
    for a in sorted(range(-search, search + 1), key=lambda a: (abs(a), a)):
        b = a
        for m in range(1, n + 1):
            t = tables[m].get(a - m + 1)
            if t is None:
                b = None
                break
            b = max(b, t)
            if best is not None and b - a > best[0]:
                break
        if b is None:
            continue
        if best is None or b - a < best[0]:
            best = (b - a, a)
    if best is None:
        return SpanResult.unknown(n)
    k, a = best
    gamma = Interval(a, a + k)
    report = check_attractor(spec, gamma, n, sample=sample)
    if not report.covered:
        raise InvariantError(f"brute-force span witness {gamma} fails coverage: {report.witness!r}")
    return SpanResult.finite(k, gamma, n)


# --------------------------------------------------------------------------
# finite words


def finite_uncovered(w: str, gamma) -> str | None:
    """Shortest, then least, factor of the finite word ``w`` missing ``gamma``."""
    pos = sorted(p for p in gamma if 0 <= p < len(w))
    for n in range(1, len(w) + 1):
        every = {w[t:t + n] for t in range(len(w) - n + 1)}
        covered = set()
        for lo, hi in _start_ranges(pos, n):
            covered.update(w[t:t + n] for t in range(max(lo, 0), min(hi, len(w) - n) + 1))
        missing = every - covered
        if missing:
            return min(missing)
    return None


def is_finite_attractor(w: str, gamma) -> bool:
    return finite_uncovered(w, gamma) is None


MIN_SIZE_BOUND = 20


def min_size_bruteforce(w: str, bound: int = MIN_SIZE_BOUND) -> tuple[int, FiniteSet]:
    """Smallest attractor of a finite word by subset enumeration.

    Among sets of minimum size the lexicographically first is returned.
    """
    if len(w) > bound:
        raise ResourceLimitError(len(w), bound)
    if not w:
        raise PreconditionError("the empty word has no non-empty factors")
    blocks: dict[str, list[range]] = {}
    for f in all_factors(w):
        blocks[f] = []
    for i in range(len(w)):
        for j in range(i + 1, len(w) + 1):
            blocks[w[i:j]].append(range(i, j))
    for size in range(1, len(w) + 1):
        for cand in combinations(range(len(w)), size):
            s = set(cand)
            if all(any(s.intersection(r) for r in occ) for occ in blocks.values()):
                return size, FiniteSet(cand)
    raise InvariantError("the full position set is always an attractor")


@dataclass(frozen=True)
class PeriodAudit:
    attractor: Interval
    validated: bool
    witness: str | None

    def to_dict(self):
        return {"attractor": self.attractor.to_json(), "validated": self.validated,
                "witness": self.witness}


def doubly_periodic_attractor(w: str, p: int, q: int) -> PeriodAudit:
    """Build ``[|w|-q, p-1]`` for a word with two periods and re-validate it."""
    if p == q:
        raise PreconditionError("p and q must differ")
    if not (has_period(w, p) and 1 <= p <= len(w)):
        raise PreconditionError(f"{p} is not a period of {w!r}")
    if not (has_period(w, q) and 1 <= q <= len(w)):
        raise PreconditionError(f"{q} is not a period of {w!r}")
    if not len(w) < p + q:
        raise PreconditionError(f"|w| < p + q fails: {len(w)} >= {p + q}")
    gamma = Interval(len(w) - q, p - 1)
    witness = finite_uncovered(w, gamma)
    return PeriodAudit(gamma, witness is None, witness)


# --------------------------------------------------------------------------
# eventually periodic words


def periodic_attractor(spec: BiWordSpec) -> tuple[Interval, int, NormalForm]:
    """Closed-form minimal-span attractor of a non-purely-periodic word.

    Returns ``(gamma, span, normal_form)`` without validation.
    """
    nf = normalize_eventually_periodic(spec)
    if isinstance(nf, PurelyPeriodic):
        raise PreconditionError("purely periodic: the closed form needs distinct left and right tails")
    i, p, j, q = nf.i, nf.p, nf.j, nf.q
    left_word = spec.window(j - q + 1, j).content
    right_word = spec.window(i, i + p - 1).content
    if is_conjugate(left_word, right_word):
        return Interval(j + 1, i + p - 1), i - j + p - 2, nf
    return Interval(j - q + 1, i + p - 1), i - j + p + q - 2, nf


def ep_check_length(spec: BiWordSpec) -> int:
    """Default check length ``|center| + 4(p+q)`` for eventually periodic specs."""
    ep, _ = as_eventually_periodic(spec)
    nf = normalize_eventually_periodic(spec)
    if isinstance(nf, PurelyPeriodic):
        return len(ep.center) + 8 * nf.period
    return len(ep.center) + 4 * (nf.p + nf.q)


def eventually_periodic_attractor(spec: BiWordSpec, n: int | None = None):
    """``(gamma, span)`` for a two-sided eventually periodic, non-purely-periodic word."""
    gamma, span, _ = periodic_attractor(spec)
    n = n or ep_check_length(spec)
    report = check_attractor(spec, gamma, n)
    if not report.covered:
        raise InvariantError(f"closed-form attractor {gamma} misses {report.witness!r}")
    return gamma, span


def complexity_span_consistency(spec: BiWordSpec, gamma: PositionSet, n: int,
                                radius: int | None = None) -> dict:
    """Assert ``p(m) <= m + span(gamma)`` for ``1 <= m <= n``."""
    gamma = as_finite(gamma) if not isinstance(gamma, Interval) else gamma
    profile, used = factor_complexity_profile(spec, n, radius or default_radius(spec, n))
    for m, count in enumerate(profile, start=1):
        if count > m + gamma.span:
            raise InvariantError(f"p({m}) = {count} exceeds {m} + {gamma.span}")
    return {"N": n, "radius": used, "span": gamma.span, "profile": list(profile),
            "equality": [m for m, c in enumerate(profile, 1) if c == m + gamma.span]}
