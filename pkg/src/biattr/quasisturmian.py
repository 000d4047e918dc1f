"""Rauzy graphs, return-morphism extraction and quasi-Sturmian span verdicts.

Sampling assumes the input is uniformly recurrent, which holds for
quasi-Sturmian words but cannot be certified from a finite window.
"""
from __future__ import annotations

from dataclasses import dataclass

from .attractor import (Interval, SpanResult, _first_uncovered_finite, check_attractor,
                        eventually_periodic_attractor, min_span_bruteforce)
from .biword import (BiWordSpec, OrbitPoint, PurelyPeriodic, Window, as_eventually_periodic,
                     normalize_eventually_periodic, reduce_spec, sample_language,
                     window_language)
from .errors import InvariantError, PreconditionError
from .morphism import Substitution
from .substitution import apply, image_attractor, is_return_morphism, trim_positions
from .words import FactorSet, _consistency_check, is_balanced, special_factors

UNIFORM_RECURRENCE = "uniform recurrence of the sampled word is assumed, not certified"


@dataclass(frozen=True)
class RauzyGraph:
    rank: int
    vertices: frozenset
    edges: tuple[tuple[str, str, str], ...]

    def out_edges(self, u):
        return [e for e in self.edges if e[0] == u]

    def out_degree(self) -> dict[str, int]:
        deg = dict.fromkeys(self.vertices, 0)
        for u, _, _ in self.edges:
            deg[u] += 1
        return deg

    def in_degree(self) -> dict[str, int]:
        deg = dict.fromkeys(self.vertices, 0)
        for _, _, v in self.edges:
            deg[v] += 1
        return deg


def build_rauzy(sample_n: FactorSet, sample_n1: FactorSet) -> RauzyGraph:
    """Edge ``u -a-> v`` whenever ``ua = bv`` is a sampled factor."""
    _consistency_check(sample_n, sample_n1)
    edges = tuple(sorted((f[:-1], f[-1], f[1:]) for f in sample_n1))
    return RauzyGraph(sample_n.length, frozenset(sample_n), edges)


def stabilization_point(profile) -> int:
    """Least ``n0`` with ``p(n+1) - p(n) = 1`` for every sampled ``n >= n0``."""
    p = [1] + list(profile)
    n0 = len(p) - 1
    while n0 > 0 and p[n0] - p[n0 - 1] == 1:
        n0 -= 1
    return n0


def find_bispecial(spec: BiWordSpec, n0: int, n: int, radius: int | None = None) -> tuple[int, str]:
    """Smallest ``n1 >= n0`` whose unique left-special factor is also right-special."""
    sample = sample_language(spec, n + 1, radius or 2 * (n + 1))
    for m in range(max(n0, 1), n + 1):
        ls, rs = special_factors(sample[m], sample[m + 1])
        if len(ls) != 1 or len(rs) != 1:
            raise PreconditionError(f"not complexity n+k with unique special factors at length {m}")
        (left,) = ls
        if left in rs:
            return m, left
    raise PreconditionError(f"no bispecial <= {n}")


@dataclass(frozen=True)
class ExtractionResult:
    w: str
    phi: Substitution
    m: int
    inner: Window
    k: int
    n1: int
    orientation: str
    radius: int

    def to_dict(self):
        return {"w": self.w, "phi": self.phi.to_json(), "m": self.m, "k": self.k,
                "n1": self.n1, "orientation": self.orientation, "radius": self.radius,
                "inner": {"offset": self.inner.offset, "length": len(self.inner)},
                "return_morphism": is_return_morphism(self.phi, self.w).valid}


def _loops(graph: RauzyGraph, w: str) -> list[str]:
    out = []
    for _, a, v in sorted(graph.out_edges(w), key=lambda e: e[1]):
        label = [a]
        seen = {v}
        while v != w:
            (edge,) = graph.out_edges(v)
            label.append(edge[1])
            v = edge[2]
            if v in seen and v != w:
                raise PreconditionError("not quasi-Sturmian at this rank: loop does not return")
            seen.add(v)
        out.append("".join(label))
    return out


def _decode(text: str, offset: int, w: str, phi: Substitution) -> tuple[Window, int]:
    """Cut ``text`` at the occurrences of ``w`` and read off preimage letters."""
    inverse = {img: a for a, img in phi.rules}
    starts = []
    t = text.find(w)
    while t != -1:
        starts.append(t)
        t = text.find(w, t + 1)
    letters = []
    supports = []
    for s, e in zip(starts, starts[1:]):
        block = text[s + len(w):e + len(w)]
        if block not in inverse:
            raise PreconditionError(f"block {block!r} between occurrences of {w!r} is no loop label")
        letters.append(inverse[block])
        supports.append(s + len(w) + offset)
    # the letter whose image holds position 0
    j0 = max(j for j, p in enumerate(supports) if p <= 0)
    if supports[j0] + len(phi.image(letters[j0])) <= 0:
        raise PreconditionError("sample window too small to decode around position 0")
    return Window(-j0, "".join(letters)), -supports[j0]


def extract_return_morphism(spec: BiWordSpec, n1: int, radius: int = 2000,
                            n: int | None = None) -> ExtractionResult:
    """Read ``phi`` off the two loops of the Rauzy graph at rank ``n1``."""
    n = n or n1 + 8
    sample = sample_language(spec, max(n, n1 + 1), radius)
    graph = build_rauzy(sample[n1], sample[n1 + 1])
    out, inn = graph.out_degree(), graph.in_degree()
    branching = [u for u, d in out.items() if d == 2]
    if (len(branching) != 1 or any(d not in (1, 2) for d in out.values())
            or sorted(inn.values()) != sorted(out.values())):
        raise PreconditionError("not quasi-Sturmian at this rank")
    (w,) = branching
    if inn[w] != 2:
        raise PreconditionError("not quasi-Sturmian at this rank")
    first, second = _loops(graph, w)
    phi = Substitution.from_mapping({"0": first, "1": second})
    orientation = "first-letter"
    if not _oriented(phi, w):
        swapped = Substitution.from_mapping({"0": second, "1": first})
        if _oriented(swapped, w):
            phi, orientation = swapped, "swapped"
    else:
        orientation = "first-letter, aw suffix of w phi(a)"
    if orientation == "swapped":
        orientation = "swapped so that aw is a suffix of w phi(a)"
    if not is_return_morphism(phi, w).valid:
        raise InvariantError(f"extracted substitution is not a return morphism for {w!r}")
    win = sample.window
    inner, m = _decode(win.content, win.offset, w, phi)
    k = len(first) + len(second) - len(w) - 1
    profile = sample.profile()
    for length in range(len(w), len(profile) + 1):
        if profile[length - 1] != length + k:
            raise InvariantError(f"p({length}) = {profile[length - 1]} but n + k = {length + k}")
    return ExtractionResult(w, phi, m, inner, k, n1, orientation, sample.radius)


def _oriented(phi: Substitution, w: str) -> bool:
    return all((w + img)[-len(w) - 1] == a for a, img in phi.rules)


def extract(spec: BiWordSpec, n: int = 40, radius: int = 2000) -> ExtractionResult:
    """Measure ``n0``, find the bispecial rank and extract."""
    sample = sample_language(spec, n + 1, 2 * (n + 1))
    n0 = stabilization_point(sample.profile())
    if n0 >= n:
        raise PreconditionError(f"complexity does not stabilise to n+k below {n}")
    n1, _ = find_bispecial(spec, n0, n, radius=sample.radius)
    return extract_return_morphism(spec, n1, radius=max(radius, sample.radius), n=n)


@dataclass(frozen=True)
class DesubstitutionReport:
    round_trip: bool
    complexity_ok: bool
    balanced: bool
    witness: tuple | None
    N: int
    inner_length: int

    @property
    def passed(self):
        return self.round_trip and self.complexity_ok and self.balanced

    def to_dict(self):
        return dict(self.__dict__, passed=self.passed)


def desubstitute(spec: BiWordSpec, result: ExtractionResult, n: int = 40) -> DesubstitutionReport:
    """Round trip ``S^m phi(inner)`` against the input word, then Sturmian checks on ``inner``."""
    image = apply(result.phi, result.inner)
    lo, hi = image.offset - result.m, image.end - result.m
    if spec.window(lo, hi).content != image.content:
        raise InvariantError("round trip S^m phi(inner) differs from the input window")
    layers = window_language(result.inner, n)
    complexity_ok = all(len(layers[m]) == m + 1 for m in range(1, n + 1))
    balanced, witness = True, None
    for m in range(1, n + 1):
        ok, pair = is_balanced(layers[m])
        if not ok:
            balanced, witness = False, pair
            break
    return DesubstitutionReport(True, complexity_ok, balanced, witness, n, len(result.inner))


def span1_on_window(win: Window, n: int, search: int = 64) -> Interval:
    """First ``[a, a+1]`` (by ``|a|``, then ``a``) covering the window's language up to ``n``."""
    layers = window_language(win, n)
    for a in sorted(range(-search, search + 1), key=lambda a: (abs(a), a)):
        if not win.contains(a - n, a + n + 1):
            continue
        if _first_uncovered_finite(win, layers, (a, a + 1), n) is None:
            return Interval(a, a + 1)
    raise PreconditionError(f"no span-1 interval within {search} of the origin")


def classify_qs_span(spec: BiWordSpec, n: int = 60, radius: int = 2000) -> SpanResult:
    """Span ``k`` with a trimmed-image witness, or a symbolic infinite verdict."""
    r = reduce_spec(spec)
    if isinstance(r.base, OrbitPoint):
        return SpanResult.infinite("generic orbit point of a quasi-Sturmian shift: "
                                   "finite span only up to shift of a characteristic image")
    ex = extract(spec, min(n, 40), radius)
    inner_gamma = span1_on_window(ex.inner, 40)
    image = image_attractor(ex.inner, ex.phi, inner_gamma)
    trimmed = trim_positions(image, ex.w).shift(-ex.m)
    gamma = Interval(trimmed.inf, trimmed.sup)
    if len(trimmed) != len(gamma):
        raise InvariantError("trimmed image of an interval is not an interval")
    report = check_attractor(spec, gamma, n)
    if not report.covered:
        raise InvariantError(f"trimmed witness {gamma} misses {report.witness!r}")
    if gamma.span != ex.k:
        raise InvariantError(f"witness span {gamma.span} differs from k = {ex.k}")
    return SpanResult.finite(ex.k, gamma, n)


@dataclass(frozen=True)
class ClassifierVerdict:
    kind: str
    span: SpanResult
    details: dict

    def to_dict(self):
        return {"kind": self.kind, "span": self.span.to_dict(), "details": self.details}


def _eventual_law(spec, span, n, start=None):
    """Check ``p(m) = m + span`` from ``start`` (default: the measured ``n0``) up to ``n``."""
    sample = sample_language(spec, n, 4 * n)
    profile = sample.profile()
    if start is None:
        start = stabilization_point(profile)
        if start >= n:
            raise InvariantError(f"complexity has not stabilised below {n}")
    bad = [m for m in range(max(start, 1), n + 1) if profile[m - 1] != m + span]
    if bad:
        raise InvariantError(f"p({bad[0]}) = {profile[bad[0] - 1]} differs from n + {span}")
    return {"profile": list(profile), "law_from": start, "radius": sample.radius}


def finite_attractor_classifier(spec: BiWordSpec, n: int = 60) -> ClassifierVerdict:
    """BiEventuallyPeriodic, CharacteristicMorphicImage or NoFiniteAttractor."""
    r = reduce_spec(spec)
    if isinstance(r.base, OrbitPoint):
        reason = ("declared generic orbit point: a word with a finite attractor is eventually "
                  "periodic or, up to shift, an image of a characteristic Sturmian word")
        return ClassifierVerdict("NoFiniteAttractor", SpanResult.infinite(reason),
                                 {"family": r.base.family})
    found = as_eventually_periodic(spec)
    if found is not None:
        nf = normalize_eventually_periodic(spec)
        if isinstance(nf, PurelyPeriodic):
            res = min_span_bruteforce(spec, 4 * nf.period, 4 * nf.period)
            return ClassifierVerdict("BiEventuallyPeriodic", res, {"purely_periodic": True,
                                                                   "period": nf.period})
        gamma, span = eventually_periodic_attractor(spec)
        ep, _ = found
        n_law = max(n, len(ep.center) + 4 * (nf.p + nf.q))
        details = {"normal_form": [nf.i, nf.p, nf.j, nf.q]}
        details.update(_eventual_law(spec, span, n_law))
        return ClassifierVerdict("BiEventuallyPeriodic", SpanResult.finite(span, gamma, n_law),
                                 details)
    res = classify_qs_span(spec, n)
    ex = extract(spec, min(n, 40))
    details = {"w": ex.w, "phi": ex.phi.to_json(), "m": ex.m, "k": ex.k,
               "assumption": UNIFORM_RECURRENCE}
    details.update(_eventual_law(spec, res.value, min(n, 40), len(ex.w)))
    return ClassifierVerdict("CharacteristicMorphicImage", res, details)
