"""Integer partitions, box containment and the three-part decompositions."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable, NamedTuple

__all__ = [
    "Partition",
    "BoxShape",
    "G3Decomposition",
    "transpose",
    "fits_in_box",
    "enumerate_box",
    "g3_decompose",
    "parse_partition",
    "format_partition",
]


class Partition(tuple):
    """A weakly decreasing tuple of positive integers.

    Trailing zeros are dropped on construction, so ``Partition((2, 1, 0))``
    and ``Partition((2, 1))`` compare and hash equal.
    """

    __slots__ = ()

    def __new__(cls, parts: Iterable[int] = ()) -> "Partition":
        parts = tuple(int(p) for p in parts)
        n = len(parts)
        while n and parts[n - 1] == 0:
            n -= 1
        parts = parts[:n]
        for i, p in enumerate(parts):
            if p < 0:
                raise ValueError(f"negative part in {parts}")
            if i and parts[i - 1] < p:
                raise ValueError(f"parts not weakly decreasing: {parts}")
        return super().__new__(cls, parts)

    @classmethod
    def _trusted(cls, parts: tuple) -> "Partition":
        # caller guarantees canonical form
        return super().__new__(cls, parts)

    @property
    def size(self) -> int:
        return sum(self)

    @property
    def length(self) -> int:
        return len(self)

    def part(self, i: int) -> int:
        """0-based part access that returns 0 past the end."""
        return self[i] if i < len(self) else 0

    def padded(self, n: int) -> tuple[int, ...]:
        if len(self) > n:
            raise ValueError(f"{self} has more than {n} parts")
        return tuple(self) + (0,) * (n - len(self))

    def transpose(self) -> "Partition":
        return transpose(self)

    def multiplicities(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for p in self:
            out[p] = out.get(p, 0) + 1
        return out

    def dominates(self, other: "Partition") -> bool:
        """Dominance order, for partitions of equal size."""
        if self.size != other.size:
            return False
        s = t = 0
        for i in range(max(len(self), len(other))):
            s += self.part(i)
            t += other.part(i)
            if s < t:
                return False
        return True

    def __repr__(self) -> str:
        return f"Partition({tuple(self)!r})"


class BoxShape(NamedTuple):
    """The rectangle ``(cols^rows)``: at most ``rows`` parts, each ``<= cols``."""

    rows: int
    cols: int

    def validate(self) -> "BoxShape":
        if self.rows < 1 or not 1 <= self.cols <= 3:
            raise ValueError(f"invalid box {tuple(self)}: need rows >= 1, 1 <= cols <= 3")
        return self


@dataclass(frozen=True)
class G3Decomposition:
    """``lambda' = (z + b' + eps + 2k, b' + eps + 2k, eps + 2k)``."""

    k: int
    epsilon: int
    z: int
    b_prime: int

    def reconstruct(self) -> Partition:
        base = self.epsilon + 2 * self.k
        return Partition((self.z + self.b_prime + base, self.b_prime + base, base))

    def as_dict(self) -> dict[str, int]:
        return {"k": self.k, "epsilon": self.epsilon, "z": self.z, "b_prime": self.b_prime}


def transpose(lam: Iterable[int]) -> Partition:
    lam = Partition(lam)
    if not lam:
        return lam
    return Partition._trusted(
        tuple(sum(1 for p in lam if p > j) for j in range(lam[0]))
    )


def fits_in_box(lam: Iterable[int], box: BoxShape | tuple[int, int]) -> bool:
    lam = Partition(lam)
    rows, cols = box
    return len(lam) <= rows and lam.part(0) <= cols


def _box_key(lam: Partition) -> tuple:
    # graded, then reverse lexicographic inside each degree
    return (lam.size, tuple(-p for p in lam))


def enumerate_box(box: BoxShape | tuple[int, int]) -> list[Partition]:
    """All partitions inside the box, ordered by size and then reverse-lex.

    There are ``binomial(rows + cols, cols)`` of them.
    """
    rows, cols = BoxShape(*box).validate()
    out = []
    # a partition in (cols^rows) is fixed by its column lengths
    # rows >= c_1 >= ... >= c_cols >= 0
    for cs in product(range(rows + 1), repeat=cols):
        if all(cs[i] >= cs[i + 1] for i in range(cols - 1)):
            out.append(transpose(Partition(cs)))
    out.sort(key=_box_key)
    return out


def g3_decompose(lam_prime: Iterable[int]) -> G3Decomposition:
    lp = Partition(lam_prime)
    if len(lp) > 3:
        raise ValueError(f"{tuple(lp)} has more than 3 parts")
    a, b, c = lp.padded(3)
    eps = c % 2
    return G3Decomposition(k=(c - eps) // 2, epsilon=eps, z=a - b, b_prime=b - c)


def parse_partition(text: str) -> Partition:
    """Parse ``"2,2,1"``; ``""`` and ``"0"`` are the empty partition."""
    text = text.strip()
    if text in ("", "0", "()"):
        return Partition()
    text = text.strip("()[]")
    try:
        return Partition(int(t) for t in text.split(",") if t.strip())
    except ValueError as exc:
        raise ValueError(f"bad partition {text!r}: {exc}") from None


def format_partition(lam: Iterable[int]) -> str:
    return ",".join(str(p) for p in Partition(lam))
