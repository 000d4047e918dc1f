"""Symbolic bi-infinite words with an exact window oracle.

A spec denotes one word ``x`` indexed by the integers. ``spec.window(i, j)``
returns the exact symbols ``x_i ... x_j`` together with the offset ``i``.
Four concrete kinds are supported:

* :class:`EventuallyPeriodic` -- ``...uuu.c vvv...`` with ``c`` starting at 0;
* :class:`CharacteristicSturmian` -- the upper or lower characteristic word
  whose left-special prefixes come from a directive over ``{L0, L1}``;
* :class:`Shifted` -- ``S^m`` applied to another spec;
* :class:`MorphicImage` -- ``S^r(phi(x))`` for a substitution ``phi``.

:class:`OrbitPoint` is a purely symbolic declaration (a generic point of a
Sturmian or quasi-Sturmian shift) and has no window.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache

from . import config
from .errors import PreconditionError, SpecError
from .morphism import Substitution
from .words import FactorSet, factors, primitive_root

# --------------------------------------------------------------------------
# windows


@dataclass(frozen=True)
class Window:
    """Symbols ``x_offset ... x_{offset+len-1}`` of some bi-infinite word."""

    offset: int
    content: str

    @property
    def end(self) -> int:
        return self.offset + len(self.content) - 1

    def __len__(self):
        return len(self.content)

    def __str__(self):
        return self.content

    def contains(self, i: int, j: int) -> bool:
        return self.offset <= i and j <= self.end

    def at(self, pos: int) -> str:
        if not self.offset <= pos <= self.end:
            raise PreconditionError(f"position {pos} outside window [{self.offset},{self.end}]")
        return self.content[pos - self.offset]

    def slice(self, i: int, j: int) -> str:
        if i > j:
            return ""
        if not self.contains(i, j):
            raise PreconditionError(
                f"window [{self.offset},{self.end}] does not contain [{i},{j}]"
            )
        return self.content[i - self.offset:j - self.offset + 1]

    def window(self, i: int, j: int) -> "Window":
        """Sub-window, so that a window can stand in for a spec."""
        return Window(i, self.slice(i, j))

    def to_dict(self):
        return {"offset": self.offset, "content": self.content}


# --------------------------------------------------------------------------
# directive sequences and characteristic words


@dataclass(frozen=True)
class DirectiveSequence:
    """``head`` followed by ``tail`` repeated forever, over ``{0, 1}``."""

    head: str
    tail: str

    def __post_init__(self):
        if set(self.head + self.tail) - {"0", "1"}:
            raise SpecError("directive letters must be 0 or 1")
        if not {"0", "1"} <= set(self.tail):
            raise SpecError("directive tail must contain both 0 and 1")

    def letter(self, i: int) -> str:
        if i < len(self.head):
            return self.head[i]
        return self.tail[(i - len(self.head)) % len(self.tail)]

    def prefix(self, n: int) -> str:
        return "".join(self.letter(i) for i in range(n))

    def drop(self, k: int) -> "DirectiveSequence":
        """The directive ``a_k a_{k+1} ...``."""
        if k <= len(self.head):
            return DirectiveSequence(self.head[k:], self.tail)
        r = (k - len(self.head)) % len(self.tail)
        return DirectiveSequence("", self.tail[r:] + self.tail[:r])


def _common_prefix_len(a: str, b: str) -> int:
    lo, hi = 0, min(len(a), len(b))
    if a[:hi] == b[:hi]:
        return hi
    while lo < hi:  # a[:lo] == b[:lo], a[:hi] != b[:hi]
        mid = (lo + hi + 1) // 2
        if a[:mid] == b[:mid]:
            lo = mid
        else:
            hi = mid - 1
    return lo


@lru_cache(maxsize=128)
def _standard_prefix(d: DirectiveSequence, want: int) -> str:
    # (A, B) = (M(0), M(1)) with M = L_{a_0} ... L_{a_i}
    a, b = "0", "1"
    i = 0
    while True:
        if d.letter(i) == "0":
            b = a + b
        else:
            a = b + a
        i += 1
        config.charge(len(a) + len(b))
        cp = _common_prefix_len(a, b)
        if cp >= want:
            return a[:cp]


def left_special_prefix(d: DirectiveSequence, n: int) -> str:
    """Length-``n`` prefix ``l_n`` of the limit of ``L_{a_0}...L_{a_i}(0|1)``."""
    if n < 0:
        raise PreconditionError("length must be non-negative")
    if n == 0:
        return ""
    want = 64
    while want < n:
        want *= 2
    return _standard_prefix(d, want)[:n]


def _image_lengths(d: DirectiveSequence, need: int) -> list[tuple[int, int]]:
    """``(|M_i(0)|, |M_i(1)|)`` for ``i = 0, 1, ...`` until the shorter reaches ``need``."""
    a, b = 1, 1
    out = []
    i = 0
    while min(a, b) < need or not out:
        if d.letter(i) == "0":
            b = a + b
        else:
            a = b + a
        out.append((a, b))
        i += 1
    return out


_RULES = {"0": {"0": "0", "1": "01"}, "1": {"0": "10", "1": "1"}}


def standard_slice(d: DirectiveSequence, lo: int, hi: int) -> str:
    """``l[lo:hi]`` of the one-sided limit word, by descending the image tree.

    Costs about ``(hi - lo) * log(hi)`` steps, so far-away windows never
    materialise the prefix in front of them.
    """
    if not 0 <= lo <= hi:
        raise PreconditionError("slice bounds must satisfy 0 <= lo <= hi")
    lens = _image_lengths(d, hi)
    top = len(lens) - 1
    c = "0" if lens[top][0] <= lens[top][1] else "1"
    out: list[str] = []

    def emit(i: int, letter: str, a: int, b: int) -> None:
        # append M_i(letter)[a:b]
        if i < 0:
            out.append(letter)
            return
        pos = 0
        for child in _RULES[d.letter(i)][letter]:
            size = lens[i - 1][int(child)] if i > 0 else 1
            if pos + size > a and pos < b:
                emit(i - 1, child, max(a - pos, 0), min(b - pos, size))
            pos += size
            if pos >= b:
                break

    emit(top, c, lo, hi)
    return "".join(out)


# windows farther out than this use random access instead of a full prefix
DIRECT_LIMIT = 1 << 16


def char_window(d: DirectiveSequence, variant: str, n: int) -> Window:
    """Window ``[-n, n+1]`` of a characteristic word: ``rev(l_n) ab l_n``."""
    if n < 0:
        raise PreconditionError("n must be non-negative")
    l = left_special_prefix(d, n)
    mid = "01" if variant == "upper" else "10"
    return Window(-n, l[::-1] + mid + l)


# --------------------------------------------------------------------------
# specs


class BiWordSpec:
    """Base class: a bi-infinite word answering exact window queries."""

    def window(self, i: int, j: int) -> Window:
        raise NotImplementedError

    def at(self, n: int) -> str:
        return self.window(n, n).content

    def _check_range(self, i: int, j: int) -> None:
        if i > j:
            raise PreconditionError(f"empty range [{i},{j}]")
        config.charge(j - i + 1)


@dataclass(frozen=True)
class EventuallyPeriodic(BiWordSpec):
    """``...uuu . c vvv...`` where ``c`` occupies positions ``0..|c|-1``."""

    left: str
    center: str
    right: str

    def __post_init__(self):
        if not self.left or not self.right:
            raise SpecError("left and right periods must be non-empty")

    def _symbol(self, n: int) -> str:
        c, u, v = self.center, self.left, self.right
        if 0 <= n < len(c):
            return c[n]
        if n >= len(c):
            return v[(n - len(c)) % len(v)]
        t = -1 - n
        return u[len(u) - 1 - (t % len(u))]

    def window(self, i, j):
        self._check_range(i, j)
        c, u, v = self.center, self.left, self.right
        parts = []
        if i < 0:
            stop = min(j, -1)
            # positions i..stop of ...uuu ending at -1
            count = stop - i + 1
            start = (i % len(u))  # index into u of position i
            reps = (start + count) // len(u) + 2
            parts.append((u * reps)[start:start + count])
        lo, hi = max(i, 0), min(j, len(c) - 1)
        if lo <= hi:
            parts.append(c[lo:hi + 1])
        if j >= len(c):
            lo = max(i, len(c)) - len(c)
            count = j - len(c) - lo + 1
            start = lo % len(v)
            reps = (start + count) // len(v) + 2
            parts.append((v * reps)[start:start + count])
        return Window(i, "".join(parts))


@dataclass(frozen=True)
class CharacteristicSturmian(BiWordSpec):
    directive: DirectiveSequence
    variant: str = "lower"

    def __post_init__(self):
        if self.variant not in ("upper", "lower"):
            raise SpecError("variant must be 'upper' or 'lower'")

    def window(self, i, j):
        self._check_range(i, j)
        n = max(-i, j - 1, 0)
        if n <= DIRECT_LIMIT or 8 * (j - i + 1) > n:
            return char_window(self.directive, self.variant, n).window(i, j)
        d = self.directive
        parts = []
        if i <= -1:
            stop = min(j, -1)
            parts.append(standard_slice(d, -1 - stop, -i)[::-1])
        mid = "01" if self.variant == "upper" else "10"
        if i <= 1 and j >= 0:
            parts.append(mid[max(i, 0):min(j, 1) + 1])
        if j >= 2:
            parts.append(standard_slice(d, max(i, 2) - 2, j - 1))
        return Window(i, "".join(parts))


@dataclass(frozen=True)
class Shifted(BiWordSpec):
    """``S^m(inner)``, i.e. ``x_n = inner_{n+m}``."""

    inner: BiWordSpec
    m: int

    def window(self, i, j):
        self._check_range(i, j)
        return Window(i, self.inner.window(i + self.m, j + self.m).content)


def image_start(source, phi: Substitution, i: int) -> int:
    """First position of ``phi(x_i)`` inside ``phi(x)``.

    ``source`` is anything with a ``window`` method (a spec or a window).
    Both signs of ``i`` go through this one function.
    """
    if i >= 0:
        return phi.image_length(source.window(0, i - 1).content) if i > 0 else 0
    return -phi.image_length(source.window(i, -1).content)


def image_support(source, phi: Substitution, i: int) -> tuple[int, int]:
    """Interval of positions occupied by ``phi(x_i)`` in ``phi(x)``."""
    start = image_start(source, phi, i)
    return start, start + len(phi.image(source.window(i, i).content)) - 1


def image_window(source, phi: Substitution, i: int, j: int) -> Window:
    """Window ``[i, j]`` of ``phi(x)`` (no residue shift)."""
    m = max(-i, j, 0) + 1
    inner = source.window(-m, m)
    neg = phi(inner.slice(-m, -1))
    pos = phi(inner.slice(0, m))
    full = neg + pos
    base = -len(neg)
    if i < base or j > len(pos) - 1:
        raise PreconditionError("inner window too short for the requested image range")
    return Window(i, full[i - base:j - base + 1])


@dataclass(frozen=True)
class MorphicImage(BiWordSpec):
    """``S^residue(phi(inner))`` with ``0 <= residue < |phi(inner_0)|``."""

    inner: BiWordSpec
    phi: Substitution
    residue: int = 0

    def __post_init__(self):
        if isinstance(_base_of(self.inner), OrbitPoint):
            return
        first = len(self.phi.image(self.inner.at(0)))
        if not 0 <= self.residue < first:
            raise SpecError(f"residue {self.residue} outside [0, {first})")

    def window(self, i, j):
        self._check_range(i, j)
        r = self.residue
        return Window(i, image_window(self.inner, self.phi, i + r, j + r).content)


@dataclass(frozen=True)
class OrbitPoint(BiWordSpec):
    """A declared generic point of a Sturmian or quasi-Sturmian shift.

    Such points are not characteristic up to shift, so no finite window
    description exists; only theorem-derived verdicts apply to them.
    """

    family: str
    directive: DirectiveSequence
    phi: Substitution | None = None

    def __post_init__(self):
        if self.family not in ("sturmian", "quasi-sturmian"):
            raise SpecError("family must be 'sturmian' or 'quasi-sturmian'")
        if self.family == "quasi-sturmian" and self.phi is None:
            raise SpecError("a quasi-sturmian orbit point needs a substitution")

    def window(self, i, j):
        raise PreconditionError("orbit-point specs are symbolic and have no window")


def _base_of(spec: BiWordSpec) -> BiWordSpec:
    while isinstance(spec, (Shifted, MorphicImage)):
        spec = spec.inner
    return spec


def is_symbolic(spec: BiWordSpec) -> bool:
    return isinstance(_base_of(spec), OrbitPoint)


def fibonacci(variant: str = "lower") -> CharacteristicSturmian:
    """The characteristic word with directive ``(01)^omega``."""
    return CharacteristicSturmian(DirectiveSequence("", "01"), variant)


# --------------------------------------------------------------------------
# structural reduction


@dataclass(frozen=True)
class Reduction:
    """``spec == S^shift(phi(base))``; ``phi`` is None for the identity."""

    base: BiWordSpec
    phi: Substitution | None
    shift: int


def reduce_spec(spec: BiWordSpec) -> Reduction:
    """Collapse nested shifts and images onto a single base word."""
    if isinstance(spec, Shifted):
        r = reduce_spec(spec.inner)
        return Reduction(r.base, r.phi, r.shift + spec.m)
    if isinstance(spec, MorphicImage):
        r = reduce_spec(spec.inner)
        phi = spec.phi if r.phi is None else spec.phi.compose(r.phi)
        if isinstance(r.base, OrbitPoint):
            return Reduction(r.base, phi, 0)
        z = r.base if r.phi is None else MorphicImage(r.base, r.phi, 0)
        # phi(S^t z) = S^{start of letter t} phi(z)
        return Reduction(r.base, phi, image_start(z, spec.phi, r.shift) + spec.residue)
    return Reduction(spec, None, 0)


def as_eventually_periodic(spec: BiWordSpec) -> tuple[EventuallyPeriodic, int] | None:
    """Return ``(ep, t)`` with ``spec == S^t(ep)``, or None if not periodic."""
    r = reduce_spec(spec)
    if isinstance(r.base, EventuallyPeriodic):
        ep = r.base
        if r.phi is not None:
            ep = EventuallyPeriodic(r.phi(ep.left), r.phi(ep.center), r.phi(ep.right))
        return ep, r.shift
    if isinstance(r.base, CharacteristicSturmian) and r.phi is not None:
        roots = {primitive_root(r.phi.image(a)) for a in "01"}
        if len(roots) == 1:
            z = roots.pop()
            return EventuallyPeriodic(z, "", z), r.shift
    return None


# --------------------------------------------------------------------------
# eventually periodic normal form


@dataclass(frozen=True)
class NormalForm:
    """``x_n = x_{n+p}`` exactly for ``n >= i``; ``x_n = x_{n-q}`` for ``n <= j``."""

    i: int
    p: int
    j: int
    q: int


@dataclass(frozen=True)
class PurelyPeriodic:
    period: int


def normalize_eventually_periodic(spec: BiWordSpec) -> NormalForm | PurelyPeriodic:
    found = as_eventually_periodic(spec)
    if found is None:
        raise PreconditionError("spec is not eventually periodic in both directions")
    ep, t = found
    p = len(primitive_root(ep.right))
    q = len(primitive_root(ep.left))
    c = len(ep.center)
    lo = -p - q - len(ep.left) - 1
    hi = c + p + q + len(ep.right) + 1
    win = ep.window(lo - p - q, hi + p + q)
    x = win.at
    # the predicate x_n == x_{n+p} is |u|-periodic in n below -p
    i = c
    while i - 1 >= lo and x(i - 1) == x(i - 1 + p):
        i -= 1
    if i - 1 < lo:
        return PurelyPeriodic(p)
    j = -1
    while j + 1 <= hi and x(j + 1) == x(j + 1 - q):
        j += 1
    if j + 1 > hi:
        return PurelyPeriodic(q)
    return NormalForm(i - t, p, j - t, q)


# --------------------------------------------------------------------------
# language sampling


@dataclass
class LanguageSample:
    """Factors of lengths ``0..max_length`` read in ``window``."""

    window: Window
    radius: int
    max_length: int
    layers: list[FactorSet]

    def __getitem__(self, n: int) -> FactorSet:
        return self.layers[n]

    def profile(self) -> tuple[int, ...]:
        """``(p(1), ..., p(max_length))``."""
        return tuple(len(s) for s in self.layers[1:])

    def all_factors(self):
        """Non-empty factors ordered by length, then lexicographically."""
        for layer in self.layers[1:]:
            yield from sorted(layer)


def window_language(win: Window, nmax: int) -> list[FactorSet]:
    return [factors(win.content, n) for n in range(nmax + 1)]


def sample_language(spec: BiWordSpec, nmax: int, radius: int | None = None) -> LanguageSample:
    """Factors of length at most ``nmax`` with a stabilised radius.

    Starting from ``radius`` the window ``[-R, R]`` is doubled until the
    factor counts stay unchanged across two consecutive doublings.
    """
    if nmax < 0:
        raise PreconditionError("nmax must be non-negative")
    r = max(radius or 0, nmax, 8)
    prev, stable = None, 0
    while True:
        config.charge(2 * r + 1)
        win = spec.window(-r, r)
        layers = window_language(win, nmax)
        counts = tuple(len(s) for s in layers)
        if counts == prev:
            stable += 1
            if stable >= 2:
                return LanguageSample(win, r, nmax, layers)
        else:
            stable = 0
        prev = counts
        r *= 2


def factor_complexity_profile(spec: BiWordSpec, n: int, radius: int | None = None):
    """``(p(1..n), radius_used)`` from a stabilised sample."""
    if radius is not None and radius < n:
        raise PreconditionError("radius must be at least N")
    s = sample_language(spec, n, radius)
    return s.profile(), s.radius


# --------------------------------------------------------------------------
# JSON spec files


def spec_to_json(spec: BiWordSpec) -> dict:
    if isinstance(spec, EventuallyPeriodic):
        return {"type": "eventually-periodic", "left": spec.left,
                "center": spec.center, "right": spec.right}
    if isinstance(spec, CharacteristicSturmian):
        return {"type": "char-sturmian", "head": spec.directive.head,
                "tail": spec.directive.tail, "variant": spec.variant}
    if isinstance(spec, Shifted):
        return {"type": "shift", "m": spec.m, "inner": spec_to_json(spec.inner)}
    if isinstance(spec, MorphicImage):
        return {"type": "image", "phi": spec.phi.to_json(), "residue": spec.residue,
                "inner": spec_to_json(spec.inner)}
    if isinstance(spec, OrbitPoint):
        d = {"type": "orbit-point", "family": spec.family,
             "head": spec.directive.head, "tail": spec.directive.tail}
        if spec.phi is not None:
            d["phi"] = spec.phi.to_json()
        return d
    raise SpecError(f"cannot serialise {type(spec).__name__}")


def _field(obj, name, kind, path):
    if name not in obj:
        raise SpecError(f"{path}: missing field {name!r}")
    value = obj[name]
    if kind is int and isinstance(value, bool) or not isinstance(value, kind):
        raise SpecError(f"{path}.{name}: expected {kind.__name__}")
    return value


def spec_from_json(obj, path: str = "$") -> BiWordSpec:
    if not isinstance(obj, dict):
        raise SpecError(f"{path}: expected an object")
    kind = _field(obj, "type", str, path)
    try:
        if kind == "eventually-periodic":
            return EventuallyPeriodic(_field(obj, "left", str, path),
                                      _field(obj, "center", str, path),
                                      _field(obj, "right", str, path))
        if kind == "char-sturmian":
            d = DirectiveSequence(_field(obj, "head", str, path), _field(obj, "tail", str, path))
            return CharacteristicSturmian(d, obj.get("variant", "lower"))
        if kind == "shift":
            return Shifted(spec_from_json(_field(obj, "inner", dict, path), path + ".inner"),
                           _field(obj, "m", int, path))
        if kind == "image":
            if "phi" not in obj:
                raise SpecError(f"{path}: missing field 'phi'")
            return MorphicImage(spec_from_json(_field(obj, "inner", dict, path), path + ".inner"),
                                Substitution.from_json(obj["phi"]),
                                obj.get("residue", 0))
        if kind == "orbit-point":
            d = DirectiveSequence(_field(obj, "head", str, path), _field(obj, "tail", str, path))
            phi = Substitution.from_json(obj["phi"]) if "phi" in obj else None
            return OrbitPoint(_field(obj, "family", str, path), d, phi)
    except SpecError as e:
        if str(e).startswith(path):
            raise
        raise SpecError(f"{path}: {e}") from None
    raise SpecError(f"{path}.type: unknown spec type {kind!r}")


def dumps_spec(spec: BiWordSpec) -> str:
    return json.dumps(spec_to_json(spec), separators=(",", ":"), ensure_ascii=False)


def loads_spec(text: str) -> BiWordSpec:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise SpecError(f"line {e.lineno}, column {e.colno}: {e.msg}") from None
    return spec_from_json(obj)


def load_spec(path) -> BiWordSpec:
    with open(path, encoding="utf-8") as fh:
        return loads_spec(fh.read())
