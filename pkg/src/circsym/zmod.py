"""Arithmetic in Z_n: units, the unit groups preserving the connection set,
special linear conditions and representative sets of Z_j inside Z_2j."""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from math import gcd

from .errors import (
    InvalidModulusError,
    InvariantViolationError,
    NormalizationRequiredError,
    WrongRegimeError,
)


@dataclass(frozen=True)
class Residue:
    value: int
    modulus: int

    def __post_init__(self):
        if self.modulus < 1:
            raise InvalidModulusError(f"modulus must be >= 1, got {self.modulus}")
        object.__setattr__(self, "value", self.value % self.modulus)

    def _coerce(self, other) -> int:
        if isinstance(other, Residue):
            if other.modulus != self.modulus:
                raise InvalidModulusError("residues with different moduli")
            return other.value
        return int(other)

    def __add__(self, other):
        return Residue(self.value + self._coerce(other), self.modulus)

    __radd__ = __add__

    def __sub__(self, other):
        return Residue(self.value - self._coerce(other), self.modulus)

    def __rsub__(self, other):
        return Residue(self._coerce(other) - self.value, self.modulus)

    def __mul__(self, other):
        return Residue(self.value * self._coerce(other), self.modulus)

    __rmul__ = __mul__

    def __neg__(self):
        return Residue(-self.value, self.modulus)

    def __int__(self):
        return self.value

    def __eq__(self, other):
        if isinstance(other, Residue):
            return self.modulus == other.modulus and self.value == other.value
        if isinstance(other, int):
            return (other - self.value) % self.modulus == 0
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.modulus))

    def is_unit(self) -> bool:
        return gcd(self.value, self.modulus) == 1

    def inverse(self) -> "Residue":
        return Residue(pow(self.value, -1, self.modulus), self.modulus)


@dataclass(frozen=True)
class UnitGroup:
    modulus: int
    elements: tuple[int, ...]

    def __contains__(self, t) -> bool:
        return int(t) % self.modulus in self.elements

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)


def units(n: int) -> UnitGroup:
    """U(n): the residues in [0, n) coprime to n."""
    if n < 3:
        raise InvalidModulusError(f"units() needs n >= 3, got {n}")
    return UnitGroup(n, tuple(t for t in range(1, n) if gcd(t, n) == 1))


def is_normalized(n: int, i: int, j: int) -> bool:
    return 0 < i < j and 2 * j <= n and gcd(gcd(n, i), j) == 1


def _require_normalized(n: int, i: int, j: int) -> None:
    if not is_normalized(n, i, j):
        raise NormalizationRequiredError(
            f"expected 0 < i < j <= n/2 and gcd(n,i,j) = 1, got (n,i,j) = ({n},{i},{j})"
        )


def _pm(x: int, n: int) -> frozenset[int]:
    return frozenset({x % n, -x % n})


@dataclass(frozen=True)
class SymbolStabilizer:
    """H = units preserving {+-i, +-j}; H' = units preserving {+-i} and {+-j} separately."""

    modulus: int
    i: int
    j: int
    h: tuple[int, ...]
    h_prime: tuple[int, ...]

    @property
    def trivial_prime(self) -> bool:
        """True when H' = {1, n-1}."""
        return len(self.h_prime) == 2


def symbol_stabilizer(n: int, i: int, j: int) -> SymbolStabilizer:
    _require_normalized(n, i, j)
    pm_i, pm_j = _pm(i, n), _pm(j, n)
    symbol = pm_i | pm_j
    h, h_prime = [], []
    for t in units(n):
        if frozenset(t * x % n for x in symbol) != symbol:
            continue
        h.append(t)
        if frozenset(t * x % n for x in pm_i) == pm_i:
            h_prime.append(t)
    return SymbolStabilizer(n, i, j, tuple(h), tuple(h_prime))


class SpecialCondition(enum.Enum):
    FOUR_I = "4i=0"
    FOUR_J = "4j=0"
    THREE_I_J = "3i=j"
    THREE_I_MINUS_J = "3i=-j"
    THREE_J_I = "3j=i"
    THREE_J_MINUS_I = "3j=-i"


@dataclass(frozen=True)
class SpecialConditionSet:
    flags: frozenset[SpecialCondition]

    def __contains__(self, flag) -> bool:
        return flag in self.flags

    def __len__(self):
        return len(self.flags)

    def __iter__(self):
        return iter(sorted(self.flags, key=lambda f: list(SpecialCondition).index(f)))


def special_conditions(n: int, i: int, j: int) -> SpecialConditionSet:
    _require_normalized(n, i, j)
    if 2 * j == n:
        raise WrongRegimeError("special conditions are only defined for j < n/2")
    tests = {
        SpecialCondition.FOUR_I: 4 * i,
        SpecialCondition.FOUR_J: 4 * j,
        SpecialCondition.THREE_I_J: 3 * i - j,
        SpecialCondition.THREE_I_MINUS_J: 3 * i + j,
        SpecialCondition.THREE_J_I: 3 * j - i,
        SpecialCondition.THREE_J_MINUS_I: 3 * j + i,
    }
    return SpecialConditionSet(frozenset(f for f, v in tests.items() if v % n == 0))


def prime_divisors(n: int) -> list[int]:
    out, m, p = [], abs(n), 2
    while p * p <= m:
        if m % p == 0:
            out.append(p)
            while m % p == 0:
                m //= p
        p += 1
    if m > 1:
        out.append(m)
    return out


def unit_with_nonunit_shift(n: int, i: int) -> int | None:
    """A unit a with a + i not a unit, or None when every prime of n divides i.

    Deterministic: a = b - i where b is the product of the primes dividing n but not i.
    """
    b = 1
    found = False
    for q in prime_divisors(n):
        if i % q:
            b *= q
            found = True
    if not found:
        return None
    return (b - i) % n


@dataclass(frozen=True)
class RepSet:
    """One representative of each pair {k, k+j} in Z_2j, listed as (a_0, ..., a_{j-1})."""

    j: int
    members: tuple[int, ...]

    def __post_init__(self):
        if self.j < 1 or len(self.members) != self.j:
            raise InvariantViolationError(f"need exactly j={self.j} members, got {self.members}")
        for k, a in enumerate(self.members):
            if a not in (k, k + self.j):
                raise InvariantViolationError(
                    f"member a_{k}={a} is not in {{{k}, {k + self.j}}}"
                )

    def as_set(self) -> frozenset[int]:
        return frozenset(self.members)


def representative_sets(j: int) -> list[RepSet]:
    if j < 2:
        raise InvariantViolationError(f"j must be >= 2, got {j}")
    return [
        RepSet(j, tuple(k + j * bit for k, bit in enumerate(bits)))
        for bits in itertools.product((0, 1), repeat=j)
    ]


def preserving_affines(j: int, rep: RepSet) -> list[tuple[int, int]]:
    """All (s, t) in Z_2j x {+-1} with s + t*S = S; t is reported as 1 or -1."""
    if not isinstance(rep, RepSet):
        rep = RepSet(j, tuple(rep))
    if rep.j != j:
        raise InvariantViolationError(f"RepSet built for j={rep.j}, asked for j={j}")
    n = 2 * j
    members = rep.as_set()
    return [
        (s, t)
        for t in (1, -1)
        for s in range(n)
        if frozenset((s + t * a) % n for a in members) == members
    ]
