"""Occurrence residues, arithmetic-progression attractors, sparse attractors
and sliding-block codes.

Verdicts here fail open: "pass" means no counterexample inside the sampled
radius, while "fail" always carries a concrete witness.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .attractor import (ArithmeticProgression, CoverageReport, FiniteSet,
                        _first_uncovered_finite, _residues)
from .biword import BiWordSpec, Window, sample_language
from .errors import InvariantError, PreconditionError, ResourceLimitError
from .words import occurrences


@dataclass(frozen=True)
class ResidueSet:
    k: int
    residues: frozenset
    radius: int

    @property
    def full(self):
        return len(self.residues) == self.k

    def missing(self):
        return sorted(set(range(self.k)) - self.residues)

    def to_json(self):
        return {"k": self.k, "residues": sorted(self.residues), "radius": self.radius}


def occ_mod(spec: BiWordSpec, w: str, k: int, radius: int) -> ResidueSet:
    """Residues mod ``k`` of occurrences of ``w`` inside ``[-radius, radius]``."""
    if k < 1:
        raise PreconditionError("k must be at least 1")
    win = spec.window(-radius, radius)
    res = frozenset((t + win.offset) % k for t in occurrences(win.content, w))
    return ResidueSet(k, res, radius)


def ap_attractor_check(spec: BiWordSpec, i: int, k: int, n: int, radius: int | None = None,
                       min_length: int = 1) -> CoverageReport:
    """Is ``i + kZ`` an attractor for factors of length ``min_length..n``?"""
    if k < 1:
        raise PreconditionError("k must be at least 1")
    sample = sample_language(spec, n, radius or 2 * n)
    win = sample.window
    res = _residues(win, min(n, k - 1), k) if k > 1 else {}
    witness = None
    for w in sample.all_factors():
        if len(w) < min_length or len(w) >= k:
            continue  # a factor of length >= k meets every residue class
        if not any((i - r) % k <= len(w) - 1 for r in res.get(w, ())):
            witness = w
            break
    return CoverageReport(witness is None, n, sample.radius, witness,
                          ArithmeticProgression(i, k))


@dataclass(frozen=True)
class ModRecFailure:
    k: int
    w: str
    missing: tuple[int, ...]

    def to_json(self):
        return {"k": self.k, "w": self.w, "missing": list(self.missing)}


@dataclass(frozen=True)
class ModRecReport:
    passed: bool
    K: int
    N: int
    radius: int
    failures: tuple[ModRecFailure, ...] = field(default=())

    def to_dict(self):
        return {"passed": self.passed, "K": self.K, "N": self.N, "radius": self.radius,
                "failures": [f.to_json() for f in self.failures]}


def modulo_recurrent_upto(spec: BiWordSpec, K: int, n: int, radius: int | None = None
                          ) -> ModRecReport:
    """Check ``Occ_k(w) = Z/kZ`` for ``k <= K`` and factors of length ``<= n``."""
    sample = sample_language(spec, n, radius or 2 * n)
    win = sample.window
    failures = []
    for k in range(1, K + 1):
        res = _residues(win, n, k)
        for w in sample.all_factors():
            if not w:
                continue
            got = res.get(w, set())
            if len(got) < k:
                failures.append(ModRecFailure(k, w, tuple(sorted(set(range(k)) - got))))
    return ModRecReport(not failures, K, n, sample.radius, tuple(failures))


# --------------------------------------------------------------------------
# sparse attractors


@dataclass(frozen=True)
class DensityBudget:
    """``eta(n) = table[n]`` on the table, then the tail rule.

    Tail rules: ``log2`` is ``floor(log2(n+2))``, ``linear`` is ``n+1``.
    """

    table: tuple[int, ...] = ()
    tail: str = "log2"

    def __post_init__(self):
        if self.tail not in ("log2", "linear"):
            raise PreconditionError(f"unknown tail rule {self.tail!r}")
        vals = list(self.table) + [self._tail(len(self.table))]
        if any(a > b for a, b in zip(vals, vals[1:])):
            raise PreconditionError("density budget must be non-decreasing")

    def _tail(self, n):
        return (n + 2).bit_length() - 1 if self.tail == "log2" else n + 1

    def __call__(self, n: int) -> int:
        n = abs(n)
        return self.table[n] if n < len(self.table) else self._tail(n)

    def threshold(self, i: int) -> int:
        """Least ``t >= 0`` with ``eta(t) >= i``."""
        hi = 1
        while self(hi) < i:
            hi *= 2
        lo = 0
        while lo < hi:
            mid = (lo + hi) // 2
            if self(mid) >= i:
                hi = mid
            else:
                lo = mid + 1
        return lo

    def to_json(self):
        return {"table": list(self.table), "tail": self.tail}


LOG2 = DensityBudget()


def density_violation(gamma, budget: DensityBudget) -> int | None:
    """Least ``n`` with ``#(gamma & [-n, n]) > eta(n)``, or None.

    The count only grows where ``|g|`` hits a position, and ``eta`` is
    non-decreasing, so checking those ``n`` decides every ``n``.
    """
    dist = sorted(abs(g) for g in gamma)
    count = 0
    for idx, d in enumerate(dist):
        count += 1
        if idx + 1 < len(dist) and dist[idx + 1] == d:
            continue
        if count > budget(d):
            return d
    return None


@dataclass(frozen=True)
class SparseResult:
    attractor: FiniteSet
    density_ok: bool
    covered: bool
    witness: str | None
    N: int
    radius: int
    blocks: tuple = ()

    def to_dict(self):
        return {"attractor": self.attractor.to_json(), "size": len(self.attractor),
                "density_ok": self.density_ok, "covered": self.covered,
                "witness": self.witness, "N": self.N, "radius": self.radius,
                "blocks": [list(b) for b in self.blocks]}


def _require_recurrent(win: Window, layers, n):
    words = [w for m in range(1, n + 1) for w in sorted(layers[m])]
    for w in words:
        if len(occurrences(win.content, w)) < 2:
            raise PreconditionError(f"factor {w!r} occurs once within the sample; "
                                    "no second admissible position")
    for w in words:
        neg = occurrences(win.slice(win.offset, -1), w)
        pos = occurrences(win.slice(0, win.end), w)
        if len(neg) < 2 or len(pos) < 2:
            raise PreconditionError(f"factor {w!r} does not recur on both sides; "
                                    "no second admissible position")


def _closest_crossing(win: Window, w: str, t: int) -> int | None:
    """Position closest to 0 (ties to the negative side) with ``|g| >= t``
    crossing an occurrence of ``w`` in ``win``."""
    best = None
    for s in occurrences(win.content, w):
        a, b = s + win.offset, s + win.offset + len(w) - 1
        for g in (max(a, t), min(b, -t)):
            if a <= g <= b and abs(g) >= t:
                if best is None or (abs(g), g) < (abs(best), best):
                    best = g
    return best


def sparse_attractor(spec: BiWordSpec, budget: DensityBudget, n: int,
                     radius: int | None = None) -> SparseResult:
    """Greedy sparse attractor covering every factor of length ``<= n``.

    Factors are taken by length, then lexicographically. A factor already
    crossing a chosen position is skipped; otherwise it receives index
    ``i = #chosen + 1`` and the position closest to 0 with ``eta(|g|) >= i``
    crossing one of its occurrences.
    """
    sample = sample_language(spec, n, 2 * n)
    layers = sample.layers
    order = [w for w in sample.all_factors() if w]
    _require_recurrent(sample.window, layers, n)
    radius = max(radius or 0, sample.radius)
    win = spec.window(-radius, radius)
    chosen: list[int] = []
    for w in order:
        if chosen and _first_uncovered_in(win, w, chosen):
            continue
        t = budget.threshold(len(chosen) + 1)
        while True:
            if t + len(w) <= radius:
                g = _closest_crossing(win, w, t)
                if g is not None:
                    break
            radius = max(2 * radius, t + 2 * len(w))
            win = spec.window(-radius, radius)
        chosen.append(g)
    gamma = FiniteSet(tuple(chosen))
    witness = _first_uncovered_finite(spec, layers, gamma.positions, n)
    return SparseResult(gamma, density_violation(gamma, budget) is None, witness is None,
                        witness, n, radius)


def _first_uncovered_in(win: Window, w: str, chosen) -> bool:
    """True if some occurrence of ``w`` crosses a chosen position."""
    for g in chosen:
        lo = max(g - len(w) + 1, win.offset)
        hi = min(g, win.end - len(w) + 1)
        for t in range(lo, hi + 1):
            if win.content.startswith(w, t - win.offset):
                return True
    return False


def recurrence_constant(spec: BiWordSpec, w: str, radius: int) -> int:
    """Least ``c`` such that every length-``c`` block of the window contains ``w``.

    Window edges count literally, so the value is an estimate from the sample.
    """
    win = spec.window(-radius, radius)
    occ = occurrences(win.content, w)
    if not occ:
        raise PreconditionError(f"{w!r} does not occur within radius {radius}")
    size = len(win.content)
    c = occ[0] + len(w)
    for s, t in zip(occ, occ[1:]):
        c = max(c, t - s + len(w) - 1)
    c = max(c, size - occ[-1])
    return min(c, size)


def block_sparse_attractor(spec: BiWordSpec, budget: DensityBudget, n: int,
                           radius: int = 2000) -> SparseResult:
    """Union of blocks ``[s, s + c_i - 1]`` sharing one start ``s``.

    ``c_i`` is the measured recurrence constant of the ``i``-th factor, so
    each block holds an occurrence. ``s`` is the least start for which the
    density inequality holds.
    """
    sample = sample_language(spec, n, 2 * n)
    order = [w for w in sample.all_factors() if w]
    consts = [recurrence_constant(spec, w, radius) for w in order]
    c = max(consts)

    def fits(s):
        return all(t <= budget(s + t - 1) for t in range(1, c + 1))

    hi = 1
    while not fits(hi):
        hi *= 2
    lo = 0
    while lo < hi:
        mid = (lo + hi) // 2
        if fits(mid):
            hi = mid
        else:
            lo = mid + 1
    s = lo
    gamma = FiniteSet(tuple(range(s, s + c)))
    witness = _first_uncovered_finite(spec, sample.layers, gamma.positions, n)
    blocks = tuple((w, s, s + ci - 1) for w, ci in zip(order, consts))
    return SparseResult(gamma, density_violation(gamma, budget) is None, witness is None,
                        witness, n, radius, blocks)


# --------------------------------------------------------------------------
# sliding-block codes


@dataclass(frozen=True)
class LocalRule:
    M: int
    table: tuple[tuple[str, str], ...]

    def __post_init__(self):
        if self.M < 1:
            raise PreconditionError("window length M must be at least 1")
        for block, _ in self.table:
            if len(block) != self.M:
                raise PreconditionError(f"block {block!r} does not have length {self.M}")
        object.__setattr__(self, "_map", dict(self.table))

    @classmethod
    def from_mapping(cls, M, mapping):
        return cls(M, tuple(sorted(mapping.items())))

    def __call__(self, block: str) -> str:
        try:
            return self._map[block]
        except KeyError:
            raise PreconditionError(f"block {block!r} is not in the rule table") from None

    def to_json(self):
        return {"M": self.M, "table": dict(self.table)}


def apply_sliding_block(source, rule: LocalRule, i: int, j: int) -> Window:
    """``pi(x)_n = rule(x[n, n+M-1])`` for ``i <= n <= j``."""
    win = source.window(i, j + rule.M - 1)
    text = win.content
    return Window(i, "".join(rule(text[t:t + rule.M]) for t in range(j - i + 1)))


def smallest_period(text: str) -> int:
    for p in range(1, len(text) + 1):
        if text[p:] == text[:-p]:
            return p
    return len(text)


def periodizing_rule(spec: BiWordSpec, w: str, k: int, radius: int = 2000) -> LocalRule | None:
    """Rule marking windows with an occurrence of ``w`` at a multiple of ``k``.

    Returns None when ``Occ_k(w)`` is empty or everything, since then
    ``(w, k)`` exposes no hidden period.
    """
    occ = occ_mod(spec, w, k, radius)
    if not 0 < len(occ.residues) < k:
        return None
    win = spec.window(-radius, radius)
    starts = [t + win.offset for t in occurrences(win.content, w)]
    reps = {}
    for s in sorted(starts, key=lambda s: (abs(s), s)):
        reps.setdefault(s % k, s)
    big_n = len(w) + max(abs(s) for s in reps.values())
    u = spec.window(-big_n, big_n).content
    M = recurrence_constant(spec, u, radius)
    if M >= len(win.content) // 2:
        raise ResourceLimitError(M, len(win.content) // 2,
                                 "recurrence constant not found within radius")
    table = {}
    text = win.content
    for t in range(len(text) - M + 1):
        block = text[t:t + M]
        if block not in table:
            hit = any(block.startswith(w, q) for q in range(0, M - len(w) + 1, k))
            table[block] = "1" if hit else "0"
    rule = LocalRule.from_mapping(M, table)
    half = (radius - M) // 2
    out = apply_sliding_block(win, rule, -half, half).content
    if len(set(out)) < 2 or k % smallest_period(out) != 0:
        raise InvariantError("constructed rule does not produce a non-constant k-periodic window")
    return rule
