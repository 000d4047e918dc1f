"""Non-erasing substitutions on finite words."""
from __future__ import annotations

from dataclasses import dataclass, field

from .errors import PreconditionError, SpecError


@dataclass(frozen=True)
class Substitution:
    """A letter-to-word map extended to words by concatenation.

    >>> L0 = Substitution.named("L0")
    >>> L0("11")
    '0101'
    """

    rules: tuple[tuple[str, str], ...]
    name: str | None = field(default=None, compare=False)

    def __post_init__(self):
        letters = [a for a, _ in self.rules]
        if len(set(letters)) != len(letters):
            raise SpecError("substitution lists a letter twice")
        for a, img in self.rules:
            if len(a) != 1:
                raise SpecError(f"letters are single characters, got {a!r}")
            if not img:
                raise SpecError(f"image of {a!r} is empty (erasing morphism)")
        object.__setattr__(self, "rules", tuple(sorted(self.rules)))
        object.__setattr__(self, "_table", dict(self.rules))

    @classmethod
    def from_mapping(cls, mapping, name=None) -> "Substitution":
        return cls(tuple(mapping.items()), name)

    @classmethod
    def named(cls, name: str) -> "Substitution":
        try:
            return cls.from_mapping(RESERVED[name], name)
        except KeyError:
            raise SpecError(f"unknown substitution name {name!r}") from None

    @property
    def table(self) -> dict[str, str]:
        return self._table

    @property
    def domain(self) -> str:
        return "".join(a for a, _ in self.rules)

    def image(self, a: str) -> str:
        try:
            return self._table[a]
        except KeyError:
            raise PreconditionError(f"letter {a!r} is not in the domain {self.domain!r}") from None

    def __call__(self, w: str) -> str:
        t = self._table
        try:
            return "".join([t[a] for a in w])
        except KeyError as e:
            raise PreconditionError(f"letter {e.args[0]!r} is not in the domain {self.domain!r}") from None

    def image_length(self, w: str) -> int:
        t = self._table
        return sum(len(t[a]) for a in w)

    @property
    def max_length(self) -> int:
        return max(len(img) for _, img in self.rules)

    def is_uniform(self) -> bool:
        return len({len(img) for _, img in self.rules}) == 1

    def compose(self, inner: "Substitution") -> "Substitution":
        """Return ``self o inner`` (apply ``inner`` first)."""
        return Substitution(tuple((a, self(img)) for a, img in inner.rules))

    def to_json(self):
        if self.name in RESERVED and RESERVED[self.name] == self._table:
            return self.name
        return dict(self.rules)

    @classmethod
    def from_json(cls, obj) -> "Substitution":
        if isinstance(obj, str):
            return cls.named(obj)
        if not isinstance(obj, dict) or not obj:
            raise SpecError("substitution must be a reserved name or a non-empty object")
        for a, img in obj.items():
            if not isinstance(img, str):
                raise SpecError(f"image of {a!r} must be a string")
        return cls.from_mapping(obj)

    def __str__(self):
        body = ", ".join(f"{a}->{img}" for a, img in self.rules)
        return f"{self.name}: {body}" if self.name else body


RESERVED = {
    "L0": {"0": "0", "1": "01"},
    "L1": {"0": "10", "1": "1"},
}

L0 = Substitution.named("L0")
L1 = Substitution.named("L1")


def L(which: int | str) -> Substitution:
    return L0 if str(which) == "0" else L1
