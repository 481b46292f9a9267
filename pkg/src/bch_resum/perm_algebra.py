"""Signed permutations of argument positions and their group-algebra sums.

A permutation is stored in one-line notation ``map = (pi(1), ..., pi(N))``.
It acts on an argument tuple by index substitution: position ``j`` of the
result holds ``L[pi(j)]``.  With this action the operator product ``a * b``
is the composition ``a o b`` (apply ``b`` first, then ``a``), so that
``(a * b) . args == a . (b . args)`` for the substitution action on functions
of the arguments.

A permutation of arity ``N`` may also fill a bracket of length ``N - 1``
(see :meth:`SignedPerm.apply_prefix`): the last slot is dropped, so ``R_4``
turns the bracket ``[x1 x2 x3]`` into ``[x4 x3 x2]``.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, Sequence, TypeVar

from .errors import ArityMismatch

T = TypeVar("T")


@dataclass(frozen=True, order=True)
class SignedPerm:
    map: tuple[int, ...]
    sign: int = 1

    def __post_init__(self) -> None:
        if sorted(self.map) != list(range(1, len(self.map) + 1)):
            raise ValueError(f"not a permutation of 1..{len(self.map)}: {self.map}")
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")

    @property
    def arity(self) -> int:
        return len(self.map)

    @classmethod
    def identity(cls, n: int) -> SignedPerm:
        return cls(tuple(range(1, n + 1)))

    def __mul__(self, other: SignedPerm) -> SignedPerm:
        if self.arity != other.arity:
            raise ArityMismatch(f"arity {self.arity} vs {other.arity}")
        return SignedPerm(tuple(self.map[j - 1] for j in other.map), self.sign * other.sign)

    def inverse(self) -> SignedPerm:
        inv = [0] * self.arity
        for j, pj in enumerate(self.map, start=1):
            inv[pj - 1] = j
        return SignedPerm(tuple(inv), self.sign)

    def promote(self, n: int) -> SignedPerm:
        """Extend to arity ``n`` by fixing the trailing positions."""
        if n < self.arity:
            raise ArityMismatch(f"cannot shrink arity {self.arity} to {n}")
        return SignedPerm(self.map + tuple(range(self.arity + 1, n + 1)), self.sign)

    def apply(self, args: Sequence[T]) -> list[T]:
        if len(args) != self.arity:
            raise ArityMismatch(f"permutation of arity {self.arity} on {len(args)} arguments")
        return [args[p - 1] for p in self.map]

    def apply_prefix(self, args: Sequence[T], length: int) -> list[T]:
        """First ``length`` entries of the permuted full-length ``args``.

        This is the shorter-bracket convention: ``R_4`` on a three-slot bracket
        over ``(x1, x2, x3, x4)`` yields ``(x4, x3, x2)``.
        """
        if len(args) != self.arity:
            raise ArityMismatch(f"permutation of arity {self.arity} on {len(args)} arguments")
        return [args[self.map[j] - 1] for j in range(length)]

    def __str__(self) -> str:
        return ("+" if self.sign > 0 else "-") + " ".join(map(str, self.map))


class PermSum:
    """Integer linear combination of permutations of a fixed arity."""

    __slots__ = ("arity", "_terms")

    def __init__(self, arity: int, terms: Iterable[SignedPerm] | dict[tuple[int, ...], int] = ()):
        self.arity = arity
        acc: dict[tuple[int, ...], int] = defaultdict(int)
        if isinstance(terms, dict):
            for m, c in terms.items():
                acc[tuple(m)] += c
        else:
            for p in terms:
                if p.arity != arity:
                    raise ArityMismatch(f"term arity {p.arity} in sum of arity {arity}")
                acc[p.map] += p.sign
        self._terms = {m: c for m, c in acc.items() if c != 0}

    @classmethod
    def one(cls, n: int) -> PermSum:
        return cls(n, [SignedPerm.identity(n)])

    @classmethod
    def zero(cls, n: int) -> PermSum:
        return cls(n)

    def canonical(self) -> tuple[tuple[tuple[int, ...], int], ...]:
        """Sorted ``(map, coefficient)`` pairs with zero coefficients dropped."""
        return tuple(sorted(self._terms.items()))

    def items(self) -> Iterator[tuple[tuple[int, ...], int]]:
        return iter(self.canonical())

    def signed_perms(self) -> Iterator[tuple[SignedPerm, int]]:
        """Yield ``(perm, multiplicity)`` with the sign folded into ``perm``."""
        for m, c in self.canonical():
            yield SignedPerm(m, 1 if c > 0 else -1), abs(c)

    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self) -> int:
        return sum(abs(c) for c in self._terms.values())

    def num_maps(self) -> int:
        return len(self._terms)

    def promote(self, n: int) -> PermSum:
        if n == self.arity:
            return self
        return PermSum(n, {SignedPerm(m).promote(n).map: c for m, c in self._terms.items()})

    def __add__(self, other: PermSum) -> PermSum:
        if self.arity != other.arity:
            raise ArityMismatch(f"arity {self.arity} vs {other.arity}")
        acc = dict(self._terms)
        for m, c in other._terms.items():
            acc[m] = acc.get(m, 0) + c
        return PermSum(self.arity, acc)

    def __neg__(self) -> PermSum:
        return PermSum(self.arity, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other: PermSum) -> PermSum:
        return self + (-other)

    def __mul__(self, other: PermSum | SignedPerm) -> PermSum:
        if isinstance(other, SignedPerm):
            other = PermSum(other.arity, [other])
        return algebra_mul(self, other)

    def __rmul__(self, other: SignedPerm) -> PermSum:
        return algebra_mul(PermSum(other.arity, [other]), self)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PermSum):
            return NotImplemented
        return self.arity == other.arity and self.canonical() == other.canonical()

    def __hash__(self) -> int:
        return hash((self.arity, self.canonical()))

    def __repr__(self) -> str:
        return f"PermSum({self.arity}, {dict(self.canonical())})"

    def lines(self) -> list[str]:
        return [f"{c:+d} " + " ".join(map(str, m)) for m, c in self.canonical()]


def algebra_mul(a: PermSum, b: PermSum, promote: bool = False) -> PermSum:
    """Distributed product ``a * b`` in the group algebra."""
    if a.arity != b.arity:
        if not promote:
            raise ArityMismatch(f"arity {a.arity} vs {b.arity}; pass promote=True to extend")
        n = max(a.arity, b.arity)
        a, b = a.promote(n), b.promote(n)
    acc: dict[tuple[int, ...], int] = defaultdict(int)
    for ma, ca in a._terms.items():
        for mb, cb in b._terms.items():
            acc[tuple(ma[j - 1] for j in mb)] += ca * cb
    return PermSum(a.arity, acc)


def reversal(n: int) -> SignedPerm:
    """R_n: position m maps to n + 1 - m."""
    if n < 1:
        raise ValueError("reversal needs n >= 1")
    return SignedPerm(tuple(range(n, 0, -1)))


def cycle(m: int, n: int) -> SignedPerm:
    """The cycle (m m+1 ... n) as an arity-``n`` permutation."""
    if not 1 <= m <= n:
        raise ValueError(f"need 1 <= m <= n, got m={m}, n={n}")
    out = list(range(1, n + 1))
    for j in range(m, n):
        out[j - 1] = j + 1
    out[n - 1] = m
    return SignedPerm(tuple(out))


def expand_P(n: int) -> PermSum:
    """Expansion of prod_{k=1}^{n-1} (1 - (-1)^(k+1) R_{k+1}), highest factor leftmost."""
    if n < 1:
        raise ValueError("expand_P needs n >= 1")
    one = SignedPerm.identity(n)
    acc = PermSum.one(n)
    for k in range(1, n):
        r = reversal(k + 1).promote(n)
        sign = -1 if (k + 1) % 2 == 0 else 1
        factor = PermSum(n, [one, SignedPerm(r.map, sign)])
        acc = algebra_mul(factor, acc)
    return acc


def marching(n: int, m: int) -> PermSum:
    """M_{n,m}: all order-preserving interleavings of blocks (1..m) and (m+1..n).

    Built from M_{n,m} = M_{n-1,m} + (m m+1 ... n) M_{n-1,m-1}.
    """
    if not 0 <= m <= n or n < 1:
        raise ValueError(f"need 0 <= m <= n and n >= 1, got n={n}, m={m}")
    return _marching(n, m)


def _marching(n: int, m: int) -> PermSum:
    if m == 0 or m == n:
        return PermSum.one(n)
    stay = _marching(n - 1, m).promote(n)
    moved = algebra_mul(PermSum(n, [cycle(m, n)]), _marching(n - 1, m - 1).promote(n))
    return stay + moved


def shuffles(n: int, m: int) -> list[tuple[int, ...]]:
    """Direct enumeration of the interleavings (independent of the recursion)."""
    out = []
    for slots in combinations(range(n), m):
        word = [0] * n
        first = iter(range(1, m + 1))
        second = iter(range(m + 1, n + 1))
        for j in range(n):
            word[j] = next(first) if j in slots else next(second)
        out.append(tuple(word))
    return sorted(out)


def s_perms(n: int, r: int) -> PermSum:
    """S_{n,r} = S_{n-1,r} + R_n R_{n-1} S_{n-1,r-1}, S_{1,1} = 1."""
    if n < 1 or not 1 <= r <= n:
        raise ValueError(f"need 1 <= r <= n, got n={n}, r={r}")
    return _s(n, r)


def _s(n: int, r: int) -> PermSum:
    if r < 1 or r > n:
        return PermSum.zero(n)
    if n == 1:
        return PermSum.one(1)
    rot = reversal(n) * reversal(n - 1).promote(n)
    return _s(n - 1, r).promote(n) + algebra_mul(PermSum(n, [rot]), _s(n - 1, r - 1).promote(n))


def alternating_s_sum(n: int) -> PermSum:
    """sum_r (-1)^(r-1) S_{n,r}."""
    acc = PermSum.zero(n)
    for r in range(1, n + 1):
        term = s_perms(n, r)
        acc = acc + (term if r % 2 == 1 else -term)
    return acc
