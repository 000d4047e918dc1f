"""Slow reference implementations that share no code with the package.

They are used to derive the frozen values in the tests and to cross-check
the package on random inputs.
"""
from __future__ import annotations

import math
from fractions import Fraction

L_RULES = ({"0": "0", "1": "01"}, {"0": "10", "1": "1"})


def ep_letter(left: str, center: str, right: str, n: int) -> str:
    """Letter ``n`` of ...left left . center right right..."""
    if 0 <= n < len(center):
        return center[n]
    if n >= len(center):
        return right[(n - len(center)) % len(right)]
    return left[n % len(left)]


def ep_window(left, center, right, i, j) -> str:
    return "".join(ep_letter(left, center, right, n) for n in range(i, j + 1))


def directive_letters(head: str, tail: str, count: int) -> list[int]:
    out = [int(c) for c in head]
    while len(out) < count:
        out.extend(int(c) for c in tail)
    return out[:count]


def standard_by_iteration(head: str, tail: str, n: int) -> str:
    """First ``n`` letters of lim L_{a0}(L_{a1}(...L_{ai}(0))), applied right to left."""
    depth = 1
    while True:
        letters = directive_letters(head, tail, depth)
        imgs = []
        for seed in "01":
            s = seed
            for a in reversed(letters):
                s = "".join(L_RULES[a][c] for c in s)
            imgs.append(s)
        k = 0
        while k < min(map(len, imgs)) and imgs[0][k] == imgs[1][k]:
            k += 1
        if k >= n:
            return imgs[0][:n]
        depth += 1


def slope(head: str, tail: str, depth: int = 80) -> Fraction:
    """Frequency of 1 in the standard word, from letter-count matrices."""
    # column c of the matrix is the Parikh vector of L_a(c)
    mats = ((1, 1, 0, 1), (1, 0, 1, 1))  # (z0, z1, o0, o1) for L0 and L1
    z0, z1, o0, o1 = 1, 0, 0, 1
    for a in directive_letters(head, tail, depth):
        a0, a1, b0, b1 = mats[a]
        z0, z1, o0, o1 = (z0 * a0 + z1 * b0, z0 * a1 + z1 * b1,
                          o0 * a0 + o1 * b0, o0 * a1 + o1 * b1)
    return Fraction(o0, z0 + o0)


def mechanical_standard(alpha: Fraction, n: int) -> str:
    """``c_alpha(t) = floor((t+2) alpha) - floor((t+1) alpha)``."""
    return "".join(str(math.floor((t + 2) * alpha) - math.floor((t + 1) * alpha))
                   for t in range(n))


def char_window(head, tail, variant, n) -> str:
    """``x[-n, n+1]`` of the characteristic word built from the mechanical word."""
    l = mechanical_standard(slope(head, tail), n)
    return l[::-1] + ("01" if variant == "upper" else "10") + l


def factor_sets(text: str, nmax: int) -> dict[int, set[str]]:
    return {m: {text[t:t + m] for t in range(len(text) - m + 1)} for m in range(1, nmax + 1)}


def first_uncovered(text: str, offset: int, positions, nmax: int, inner: int) -> str | None:
    """Brute force: a factor of length <= nmax (seen in the inner part) with no
    occurrence in ``text`` meeting ``positions``. Returns the least such factor."""
    pos = set(positions)
    start_inner = inner
    stop_inner = len(text) - inner
    for m in range(1, nmax + 1):
        seen = {text[t:t + m] for t in range(start_inner, stop_inner - m + 1)}
        hit = set()
        for t in range(len(text) - m + 1):
            if any((offset + t + r) in pos for r in range(m)):
                hit.add(text[t:t + m])
        missing = seen - hit
        if missing:
            return min(missing)
    return None


def min_span_finite_window(text: str, offset: int, nmax: int, inner: int, search: int):
    """Minimal span of an interval attractor ``[a, b]`` with ``-search <= a``, by exhaustion."""
    for span in range(0, 2 * search + 1):
        for a in range(-search, search + 1):
            if first_uncovered(text, offset, range(a, a + span + 1), nmax, inner) is None:
                return span, (a, a + span)
    return None


def is_attractor_of_finite(w: str, positions) -> bool:
    pos = set(positions)
    for m in range(1, len(w) + 1):
        every = {w[t:t + m] for t in range(len(w) - m + 1)}
        hit = {w[t:t + m] for t in range(len(w) - m + 1) if pos & set(range(t, t + m))}
        if every - hit:
            return False
    return True
