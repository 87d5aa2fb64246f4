"""Finite abelian groups presented as products of cyclic factors.

A group is a tuple of factor orders (n_1, ..., n_r) standing for
Z_{n_1} x ... x Z_{n_r}.  Elements are plain int tuples of the same
rank, reduced componentwise.  Sequences over a group are finite
multisets, stored sorted so that equal multisets compare equal.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product as _cartesian
from typing import Iterable, Iterator

from .errors import InvalidElementError, ParseError, UnsupportedSymmetryError

Element = tuple[int, ...]


@dataclass(frozen=True)
class AbelianGroup:
    """Direct product of cyclic groups, given by its factor orders."""

    factors: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.factors:
            raise ValueError("group needs at least one cyclic factor")
        if any(not isinstance(n, int) or n < 1 for n in self.factors):
            raise ValueError("factor orders must be positive integers")

    @property
    def rank(self) -> int:
        return len(self.factors)

    @property
    def order(self) -> int:
        return math.prod(self.factors)

    @property
    def exponent(self) -> int:
        return math.lcm(*self.factors)

    @property
    def is_cyclic(self) -> bool:
        # the product of the factors equals their lcm exactly when they
        # are pairwise coprime, i.e. the product is cyclic
        return self.exponent == self.order

    @property
    def identity(self) -> Element:
        return (0,) * self.rank

    def element(self, value: int | Iterable[int]) -> Element:
        """Coerce an int (rank 1) or an int tuple into a reduced element."""
        if isinstance(value, int):
            if self.rank != 1:
                raise InvalidElementError(
                    f"bare int element needs a rank-1 group, got rank {self.rank}"
                )
            return (value % self.factors[0],)
        coords = tuple(value)
        if len(coords) != self.rank:
            raise InvalidElementError(
                f"element has {len(coords)} coordinates, group has rank {self.rank}"
            )
        if any(not isinstance(c, int) for c in coords):
            raise InvalidElementError(f"non-integer coordinate in {coords!r}")
        return tuple(c % n for c, n in zip(coords, self.factors))

    def validate(self, g: Element) -> Element:
        """Check that g is a reduced element of this group and return it."""
        if (
            not isinstance(g, tuple)
            or len(g) != self.rank
            or any(not isinstance(c, int) or not 0 <= c < n for c, n in zip(g, self.factors))
        ):
            raise InvalidElementError(f"{g!r} is not an element of {self}")
        return g

    def elements(self) -> Iterator[Element]:
        """All group elements in mixed-radix order (identity first)."""
        return _cartesian(*(range(n) for n in self.factors))

    def index_of(self, g: Element) -> int:
        """Mixed-radix encoding of an element as an int in range(order)."""
        self.validate(g)
        idx = 0
        for c, n in zip(g, self.factors):
            idx = idx * n + c
        return idx

    def element_at(self, idx: int) -> Element:
        if not 0 <= idx < self.order:
            raise InvalidElementError(f"index {idx} out of range for {self}")
        coords = []
        for n in reversed(self.factors):
            idx, c = divmod(idx, n)
            coords.append(c)
        return tuple(reversed(coords))

    def __str__(self) -> str:
        return "x".join(f"Z{n}" for n in self.factors)


def element_add(group: AbelianGroup, a: Element, b: Element) -> Element:
    group.validate(a)
    group.validate(b)
    return tuple((x + y) % n for x, y, n in zip(a, b, group.factors))


def element_neg(group: AbelianGroup, a: Element) -> Element:
    group.validate(a)
    return tuple((-x) % n for x, n in zip(a, group.factors))


def element_scale(group: AbelianGroup, k: int, a: Element) -> Element:
    """k-fold sum of a (k may be any integer)."""
    group.validate(a)
    return tuple((k * x) % n for x, n in zip(a, group.factors))


def element_order(group: AbelianGroup, g: Element) -> int:
    """Order of g: lcm over coordinates of n_j / gcd(n_j, g_j)."""
    group.validate(g)
    return math.lcm(*(n // math.gcd(n, c) for c, n in zip(g, group.factors)))


@dataclass(frozen=True)
class ZSequence:
    """Finite multiset of group elements, stored sorted.

    Construction goes through from_iterable so entries are always
    reduced and canonically ordered; two sequences over the same group
    are equal exactly when they are equal as multisets.
    """

    group: AbelianGroup
    entries: tuple[Element, ...]

    @classmethod
    def from_iterable(
        cls, group: AbelianGroup, items: Iterable[int | Iterable[int]]
    ) -> "ZSequence":
        return cls(group, tuple(sorted(group.element(x) for x in items)))

    def __post_init__(self) -> None:
        for g in self.entries:
            self.group.validate(g)
        if self.entries != tuple(sorted(self.entries)):
            raise ValueError("sequence entries must be sorted; use from_iterable")

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[Element]:
        return iter(self.entries)

    @property
    def support(self) -> tuple[Element, ...]:
        """Distinct entries, in sorted order."""
        return tuple(dict.fromkeys(self.entries))

    def multiplicity(self, g: Element) -> int:
        return self.entries.count(self.group.validate(g))

    def total(self) -> Element:
        """Sum of all entries (identity for the empty sequence)."""
        acc = self.group.identity
        for g in self.entries:
            acc = element_add(self.group, acc, g)
        return acc

    def with_entry(self, g: int | Iterable[int]) -> "ZSequence":
        return ZSequence.from_iterable(self.group, self.entries + (self.group.element(g),))

    def without_entry(self, g: Element) -> "ZSequence":
        """Remove one copy of g (g must occur)."""
        g = self.group.validate(g)
        items = list(self.entries)
        items.remove(g)
        return ZSequence(self.group, tuple(items))

    def __str__(self) -> str:
        return ",".join(format_element(self.group, g) for g in self.entries)


# ---------------------------------------------------------------------------
# unit action and orbit canonicalisation (cyclic groups only)


def units(n: int) -> tuple[int, ...]:
    """Multiplicative units mod n, as residues in [1, n]."""
    if n < 1:
        raise ValueError("modulus must be positive")
    return tuple(u for u in range(1, n + 1) if math.gcd(u, n) == 1)


def unit_multiply(group: AbelianGroup, u: int, seq: ZSequence) -> ZSequence:
    """Image of a sequence under entrywise multiplication by a unit u."""
    _require_cyclic_rank_one(group)
    n = group.factors[0]
    if math.gcd(u, n) != 1:
        raise InvalidElementError(f"{u} is not a unit mod {n}")
    return ZSequence.from_iterable(group, ((u * g[0]) % n for g in seq))


def canonical_orbit_representative(group: AbelianGroup, seq: ZSequence) -> ZSequence:
    """Lexicographically least sorted multiset among all unit multiples u*S.

    Every statement this package verifies is invariant under the unit
    action, so enumerating one representative per orbit suffices.
    """
    _require_cyclic_rank_one(group)
    n = group.factors[0]
    base = tuple(g[0] for g in seq.entries)
    best = base
    for u in units(n):
        if u == 1:
            continue
        image = tuple(sorted((u * x) % n for x in base))
        if image < best:
            best = image
    return ZSequence(group, tuple((x,) for x in best))


def _require_cyclic_rank_one(group: AbelianGroup) -> None:
    # the unit action is only wired up for a single cyclic factor; a
    # product like Z2xZ3 is abstractly cyclic but its presentation here
    # is not, and the raw enumeration path handles it instead
    if group.rank != 1:
        raise UnsupportedSymmetryError(
            f"unit-orbit reduction needs a single cyclic factor, got {group}"
        )


# ---------------------------------------------------------------------------
# parsing and formatting


def parse_group(text: str) -> AbelianGroup:
    """Parse strings like 'Z6' or 'Z2xZ4' (case-insensitive)."""
    s = text.strip().replace(" ", "")
    if not s:
        raise ParseError("empty group string")
    factors = []
    for part in s.lower().split("x"):
        if not part.startswith("z") or not part[1:].isdigit():
            raise ParseError(f"bad group string {text!r}; expected like Z6 or Z2xZ4")
        n = int(part[1:])
        if n < 1:
            raise ParseError(f"factor order must be >= 1 in {text!r}")
        factors.append(n)
    return AbelianGroup(tuple(factors))


def parse_element(group: AbelianGroup, text: str) -> Element:
    """Parse '3' (rank 1) or '(1,3)' into a reduced element."""
    s = text.strip()
    if s.startswith("(") and s.endswith(")"):
        inner = s[1:-1].strip()
        if not inner:
            raise ParseError(f"empty element tuple {text!r}")
        try:
            coords = [int(p.strip()) for p in inner.split(",")]
        except ValueError as exc:
            raise ParseError(f"bad element {text!r}") from exc
        try:
            return group.element(coords)
        except InvalidElementError as exc:
            raise ParseError(str(exc)) from exc
    try:
        value = int(s)
    except ValueError as exc:
        raise ParseError(f"bad element {text!r}") from exc
    try:
        return group.element(value)
    except InvalidElementError as exc:
        raise ParseError(str(exc)) from exc


def parse_entries(group: AbelianGroup, text: str) -> list[Element]:
    """Parse a comma-separated entry list in input order; tuples keep
    their parentheses."""
    s = text.strip()
    if not s:
        raise ParseError("empty sequence string")
    parts = []
    depth = 0
    current = []
    for ch in s:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise ParseError(f"unbalanced parentheses in {text!r}")
        if ch == "," and depth == 0:
            parts.append("".join(current))
            current = []
        else:
            current.append(ch)
    if depth != 0:
        raise ParseError(f"unbalanced parentheses in {text!r}")
    parts.append("".join(current))
    return [parse_element(group, part) for part in parts]


def parse_sequence(group: AbelianGroup, text: str) -> ZSequence:
    """Parse a comma-separated entry list into a canonical sequence."""
    return ZSequence.from_iterable(group, parse_entries(group, text))


def format_element(group: AbelianGroup, g: Element) -> str:
    group.validate(g)
    if group.rank == 1:
        return str(g[0])
    return "(" + ",".join(str(c) for c in g) + ")"


# ---------------------------------------------------------------------------


def groups_of_order(m: int) -> list[AbelianGroup]:
    """All abelian groups of order m, one per isomorphism type.

    Each type is presented in invariant-factor form d_1 | d_2 | ... | d_k
    (so Z6 appears as Z6, never as Z2xZ3).  Types are enumerated by
    choosing a partition of the exponent of each prime dividing m.
    """
    if m < 1:
        raise ValueError("group order must be positive")
    if m == 1:
        return [AbelianGroup((1,))]
    prime_exponents = _prime_factorisation(m)
    per_prime: list[list[list[int]]] = []
    for p, a in prime_exponents:
        per_prime.append([[p**e for e in part] for part in _partitions(a)])
    out = []
    for choice in _cartesian(*per_prime):
        # align the largest prime powers across primes to build the
        # largest invariant factor, then the next largest, and so on
        depth = max(len(powers) for powers in choice)
        invariant = []
        for i in range(depth):
            d = 1
            for powers in choice:
                if i < len(powers):
                    d *= powers[i]
            invariant.append(d)
        out.append(AbelianGroup(tuple(sorted(invariant))))
    out.sort(key=lambda g: (g.rank, g.factors))
    return out


def _prime_factorisation(m: int) -> list[tuple[int, int]]:
    out = []
    p = 2
    while p * p <= m:
        if m % p == 0:
            a = 0
            while m % p == 0:
                m //= p
                a += 1
            out.append((p, a))
        p += 1
    if m > 1:
        out.append((m, 1))
    return out


def _partitions(a: int) -> Iterator[list[int]]:
    """Partitions of a as non-increasing exponent lists."""

    def rec(remaining: int, cap: int) -> Iterator[list[int]]:
        if remaining == 0:
            yield []
            return
        for first in range(min(remaining, cap), 0, -1):
            for rest in rec(remaining - first, first):
                yield [first] + rest

    return rec(a, a)
