"""Finite-word primitives.

Words are plain Python strings whose characters are the letters. Any
single character can serve as a letter; the binary alphabet is ``"01"``.
"""
from __future__ import annotations

from collections.abc import Iterable
from math import gcd

from .errors import PreconditionError

EMPTY = ""


class FactorSet(frozenset):
    """A set of words that all share the same length.

    >>> sorted(FactorSet(["ab", "ba"]))
    ['ab', 'ba']
    >>> FactorSet(["ab", "ba"]).length
    2
    """

    def __new__(cls, factors: Iterable[str] = (), length: int | None = None):
        self = super().__new__(cls, factors)
        lengths = {len(f) for f in self}
        if len(lengths) > 1:
            raise PreconditionError(f"factors of mixed lengths {sorted(lengths)}")
        if length is None:
            length = lengths.pop() if lengths else 0
        elif lengths and lengths != {length}:
            raise PreconditionError(f"factors do not have length {length}")
        self.length = length
        return self

    def __repr__(self):
        return f"FactorSet({sorted(self)!r}, length={self.length})"


def factors(w: str, n: int) -> FactorSet:
    """All distinct length-``n`` blocks of ``w`` (empty if ``n > len(w)``)."""
    if n < 0:
        raise PreconditionError("factor length must be non-negative")
    return FactorSet((w[t:t + n] for t in range(len(w) - n + 1)), length=n)


def all_factors(w: str) -> set[str]:
    """Every non-empty factor of ``w``."""
    return {w[i:j] for i in range(len(w)) for j in range(i + 1, len(w) + 1)}


def reversal(w: str) -> str:
    return w[::-1]


def occurrences(text: str, w: str) -> list[int]:
    """Start indices of all (possibly overlapping) occurrences of ``w``."""
    if not w:
        return list(range(len(text) + 1))
    out = []
    t = text.find(w)
    while t != -1:
        out.append(t)
        t = text.find(w, t + 1)
    return out


def has_period(w: str, p: int) -> bool:
    return 1 <= p and (p >= len(w) or w[p:] == w[:-p])


def periods(w: str) -> set[int]:
    """All periods ``p`` of ``w`` with ``1 <= p <= len(w)``.

    >>> sorted(periods("ababa"))
    [2, 4, 5]
    """
    if not w:
        raise PreconditionError("empty word has no periods")
    return {p for p in range(1, len(w) + 1) if has_period(w, p)}


def primitive_root(w: str) -> str:
    """Shortest ``z`` with ``w`` a power of ``z``."""
    if not w:
        raise PreconditionError("empty word has no primitive root")
    p = (w + w).find(w, 1)
    return w[:p] if len(w) % p == 0 else w


def is_conjugate(u: str, v: str) -> bool:
    return len(u) == len(v) and u in v + v


def fine_wilf_holds(w: str, p: int, q: int) -> bool:
    """Check the periodicity lemma's conclusion on ``w`` (vacuous if short)."""
    if len(w) < p + q - gcd(p, q):
        return True
    return has_period(w, gcd(p, q))


def _consistency_check(sample_n: FactorSet, sample_n1: FactorSet) -> None:
    if sample_n1 and sample_n1.length != sample_n.length + 1:
        raise PreconditionError(
            f"expected lengths n and n+1, got {sample_n.length} and {sample_n1.length}"
        )
    for f in sorted(sample_n1):
        if f[1:] not in sample_n or f[:-1] not in sample_n:
            raise PreconditionError(f"inconsistent sample: factor {f!r} has a block "
                                    "missing from the length-n set")


def special_factors(sample_n: FactorSet, sample_n1: FactorSet) -> tuple[set[str], set[str]]:
    """Left- and right-special factors of a language sample.

    ``sample_n1`` holds the length-(n+1) factors. A factor ``u`` of length n
    is left-special when at least two letters ``a`` have ``au`` in the
    sample; right-special is symmetric.
    """
    _consistency_check(sample_n, sample_n1)
    left: dict[str, set[str]] = {}
    right: dict[str, set[str]] = {}
    for f in sample_n1:
        left.setdefault(f[1:], set()).add(f[0])
        right.setdefault(f[:-1], set()).add(f[-1])
    ls = {u for u, ext in left.items() if len(ext) >= 2}
    rs = {u for u, ext in right.items() if len(ext) >= 2}
    return ls, rs


def bispecial_factors(sample_n: FactorSet, sample_n1: FactorSet) -> set[str]:
    ls, rs = special_factors(sample_n, sample_n1)
    return ls & rs


def is_balanced(sample: Iterable[str]) -> tuple[bool, tuple[str, str] | None]:
    """Check that letter counts of same-length words differ by at most one.

    Returns ``(True, None)`` or ``(False, (u, v))`` where ``u`` has the most
    occurrences of the counted letter and ``v`` the fewest.
    """
    words = sorted(set(sample))
    letters = set("".join(words))
    if len(letters) > 2:
        raise PreconditionError(f"balance needs a binary alphabet, got {sorted(letters)}")
    if not words:
        return True, None
    letter = "0" if "0" in letters or not letters else min(letters)
    by_len: dict[int, list[str]] = {}
    for u in words:
        by_len.setdefault(len(u), []).append(u)
    for group in by_len.values():
        hi = max(group, key=lambda u: (u.count(letter), [-ord(c) for c in u]))
        lo = min(group, key=lambda u: (u.count(letter), u))
        if hi.count(letter) - lo.count(letter) > 1:
            return False, (hi, lo)
    return True, None


def distinct_letters(w: str) -> int:
    return len(set(w))
