"""Exact arithmetic in finite products of chain rings, and in the integers.

A ring spec is a product of factors, each one of:

* ``zmod``  -- Z/p^k for a prime p (k = 0 is allowed and denotes the zero ring;
  it only arises through quotients),
* ``poly``  -- F_p[t]/(t^k),
* ``int``   -- the ring of integers (at most one factor, and then the only one).

Every ideal of such a product is principal per factor: in a chain factor it is
(pi^j) for the uniformizer pi and some 0 <= j <= k (j = k is the zero ideal),
and in the integers it is (m) for some m >= 0.  This makes ideal arithmetic a
matter of exponent bookkeeping and keeps every operation exact.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from itertools import product as _iproduct
from math import gcd
from typing import Iterator

from .errors import DomainError, NonUnitError, SpecMismatchError

ZMOD = "zmod"
POLY = "poly"
INT = "int"


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def factorize(n: int) -> list[tuple[int, int]]:
    """Prime factorization of n >= 1 as sorted (p, k) pairs."""
    if n < 1:
        raise DomainError(f"cannot factorize {n}")
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            k = 0
            while n % d == 0:
                n //= d
                k += 1
            out.append((d, k))
        d += 1
    if n > 1:
        out.append((n, 1))
    return out


@dataclass(frozen=True)
class Factor:
    kind: str
    p: int = 0
    k: int = 0

    def __post_init__(self):
        if self.kind == ZMOD:
            if not _is_prime(self.p) or self.k < 0:
                raise DomainError(f"zmod factor needs a prime and k >= 0, got {self}")
        elif self.kind == POLY:
            if not _is_prime(self.p) or self.k < 1:
                raise DomainError(f"poly factor needs a prime and k >= 1, got {self}")
        elif self.kind != INT:
            raise DomainError(f"unknown factor kind {self.kind!r}")

    @property
    def modulus(self) -> int:
        """p^k for a zmod factor."""
        return self.p**self.k

    @property
    def size(self) -> int | None:
        if self.kind == ZMOD:
            return self.modulus
        if self.kind == POLY:
            return self.p**self.k
        return None


@dataclass(frozen=True)
class RingSpec:
    factors: tuple[Factor, ...]

    def __post_init__(self):
        if not self.factors:
            raise DomainError("ring spec needs at least one factor")
        if any(f.kind == INT for f in self.factors) and len(self.factors) > 1:
            raise DomainError("the integers must be the only factor")

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zmod(n: int) -> "RingSpec":
        """Z/n, split into its prime-power chain factors."""
        if n < 2:
            raise DomainError("zmod ring needs n >= 2")
        return RingSpec(tuple(Factor(ZMOD, p, k) for p, k in factorize(n)))

    @staticmethod
    def poly(p: int, k: int) -> "RingSpec":
        return RingSpec((Factor(POLY, p, k),))

    @staticmethod
    def integers() -> "RingSpec":
        return RingSpec((Factor(INT),))

    # -- basic queries -----------------------------------------------------

    @property
    def is_finite(self) -> bool:
        return all(f.kind != INT for f in self.factors)

    @property
    def size(self) -> int | None:
        n = 1
        for f in self.factors:
            s = f.size
            if s is None:
                return None
            n *= s
        return n

    def describe(self) -> str:
        parts = []
        for f in self.factors:
            if f.kind == ZMOD:
                parts.append(f"Z/{f.modulus}")
            elif f.kind == POLY:
                parts.append(f"F{f.p}[t]/(t^{f.k})")
            else:
                parts.append("Z")
        return " x ".join(parts)

    # -- element constructors ---------------------------------------------

    def _reduce_part(self, i: int, part):
        f = self.factors[i]
        if f.kind == ZMOD:
            m = f.modulus
            return int(part) % m if m > 0 else 0
        if f.kind == POLY:
            if isinstance(part, int):
                part = (part,) + (0,) * (f.k - 1)
            part = tuple(part)
            if len(part) != f.k:
                raise DomainError(f"poly residue needs {f.k} coefficients")
            return tuple(int(c) % f.p for c in part)
        return int(part)

    def el(self, x: int) -> "RingElem":
        """The image of an integer under the diagonal embedding."""
        return RingElem(self, tuple(self._reduce_part(i, x) for i in range(len(self.factors))))

    def from_parts(self, parts) -> "RingElem":
        parts = tuple(parts)
        if len(parts) != len(self.factors):
            raise DomainError("wrong number of residues")
        return RingElem(self, tuple(self._reduce_part(i, p) for i, p in enumerate(parts)))

    @property
    def zero(self) -> "RingElem":
        return self.el(0)

    @property
    def one(self) -> "RingElem":
        return self.el(1)

    def elements(self) -> Iterator["RingElem"]:
        """All elements of a finite ring, in a fixed order."""
        if not self.is_finite:
            raise DomainError("cannot enumerate an infinite ring")
        ranges = []
        for f in self.factors:
            if f.kind == ZMOD:
                ranges.append([i for i in range(max(f.modulus, 1))] or [0])
            else:
                ranges.append([tuple(c) for c in _iproduct(range(f.p), repeat=f.k)])
        for parts in _iproduct(*ranges):
            yield RingElem(self, tuple(parts))

    def units(self) -> Iterator["RingElem"]:
        for x in self.elements():
            if x.is_unit():
                yield x

    # -- serialization ------------------------------------------------------

    def to_json(self) -> dict:
        out = []
        for f in self.factors:
            if f.kind == INT:
                out.append({"kind": INT})
            else:
                out.append({"kind": f.kind, "p": f.p, "k": f.k})
        return {"factors": out}

    @staticmethod
    def from_json(data: dict) -> "RingSpec":
        factors = []
        for d in data["factors"]:
            if d["kind"] == INT:
                factors.append(Factor(INT))
            else:
                factors.append(Factor(d["kind"], int(d["p"]), int(d["k"])))
        return RingSpec(tuple(factors))


def _check_same_spec(a, b) -> None:
    if a.spec != b.spec:
        raise SpecMismatchError(f"operands over {a.spec.describe()} vs {b.spec.describe()}")


# -- per-factor scalar kernels ----------------------------------------------


def _poly_mul(a, b, p, k):
    out = [0] * k
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j in range(k - i):
            out[i + j] = (out[i + j] + ai * b[j]) % p
    return tuple(out)


def _poly_inv(a, p, k):
    if a[0] % p == 0:
        raise NonUnitError("constant term is divisible by p")
    x = (pow(a[0], -1, p),) + (0,) * (k - 1)
    # Newton iteration doubles the precision in t each round.
    prec = 1
    while prec < k:
        ax = _poly_mul(a, x, p, k)
        two_minus = tuple((2 if i == 0 else 0) - c for i, c in enumerate(ax))
        x = _poly_mul(x, two_minus, p, k)
        prec *= 2
    return x


def _factor_val(f: Factor, part) -> int:
    """Valuation of a residue in a chain factor (k for zero)."""
    if f.kind == ZMOD:
        if part == 0:
            return f.k
        v = 0
        while part % f.p == 0:
            part //= f.p
            v += 1
        return v
    if f.kind == POLY:
        for i, c in enumerate(part):
            if c % f.p != 0:
                return i
        return f.k
    raise DomainError("valuation is only defined in chain factors")


@dataclass(frozen=True)
class RingElem:
    spec: RingSpec
    parts: tuple

    def __add__(self, other: "RingElem") -> "RingElem":
        _check_same_spec(self, other)
        out = []
        for f, a, b in zip(self.spec.factors, self.parts, other.parts):
            if f.kind == ZMOD:
                m = f.modulus
                out.append((a + b) % m if m > 0 else 0)
            elif f.kind == POLY:
                out.append(tuple((x + y) % f.p for x, y in zip(a, b)))
            else:
                out.append(a + b)
        return RingElem(self.spec, tuple(out))

    def __neg__(self) -> "RingElem":
        out = []
        for f, a in zip(self.spec.factors, self.parts):
            if f.kind == ZMOD:
                m = f.modulus
                out.append((-a) % m if m > 0 else 0)
            elif f.kind == POLY:
                out.append(tuple((-x) % f.p for x in a))
            else:
                out.append(-a)
        return RingElem(self.spec, tuple(out))

    def __sub__(self, other: "RingElem") -> "RingElem":
        return self + (-other)

    def __mul__(self, other: "RingElem") -> "RingElem":
        _check_same_spec(self, other)
        out = []
        for f, a, b in zip(self.spec.factors, self.parts, other.parts):
            if f.kind == ZMOD:
                m = f.modulus
                out.append((a * b) % m if m > 0 else 0)
            elif f.kind == POLY:
                out.append(_poly_mul(a, b, f.p, f.k))
            else:
                out.append(a * b)
        return RingElem(self.spec, tuple(out))

    def is_zero(self) -> bool:
        return self == self.spec.zero

    def is_unit(self) -> bool:
        for f, a in zip(self.spec.factors, self.parts):
            if f.kind == INT:
                if a not in (1, -1):
                    return False
            elif f.kind == ZMOD:
                if f.k > 0 and a % f.p == 0:
                    return False
            else:
                if a[0] % f.p == 0:
                    return False
        return True

    def inv(self) -> "RingElem":
        out = []
        for f, a in zip(self.spec.factors, self.parts):
            if f.kind == INT:
                if a not in (1, -1):
                    raise NonUnitError(f"{a} is not invertible over the integers")
                out.append(a)
            elif f.kind == ZMOD:
                m = f.modulus
                if m == 1:
                    out.append(0)
                    continue
                if a % f.p == 0:
                    raise NonUnitError(f"{a} is not a unit mod {m}")
                out.append(pow(a, -1, m))
            else:
                out.append(_poly_inv(a, f.p, f.k))
        return RingElem(self.spec, tuple(out))

    def to_json(self):
        return [list(p) if isinstance(p, tuple) else p for p in self.parts]

    @staticmethod
    def from_json(spec: RingSpec, data) -> "RingElem":
        if isinstance(data, int):
            return spec.el(data)
        return spec.from_parts(tuple(tuple(p) if isinstance(p, list) else p for p in data))

    def __repr__(self):
        return f"RingElem({self.parts!r} over {self.spec.describe()})"


# -- ideals -------------------------------------------------------------------


@dataclass(frozen=True)
class Ideal:
    """Per-factor principal ideal: exponent j in chain factors, generator m in Z."""

    spec: RingSpec
    parts: tuple[int, ...]

    def __post_init__(self):
        for f, j in zip(self.spec.factors, self.parts):
            if f.kind == INT:
                if j < 0:
                    raise DomainError("integer ideal generator must be >= 0")
            elif not 0 <= j <= f.k:
                raise DomainError(f"ideal exponent {j} out of range for {f}")

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero(spec: RingSpec) -> "Ideal":
        return Ideal(spec, tuple(0 if f.kind == INT else f.k for f in spec.factors))

    @staticmethod
    def unit(spec: RingSpec) -> "Ideal":
        return Ideal(spec, tuple(1 if f.kind == INT else 0 for f in spec.factors))

    @staticmethod
    def from_elems(spec: RingSpec, elems) -> "Ideal":
        """The ideal generated by the given elements."""
        parts = []
        for i, f in enumerate(spec.factors):
            if f.kind == INT:
                g = 0
                for x in elems:
                    g = gcd(g, abs(x.parts[i]))
                parts.append(g)
            else:
                v = f.k
                for x in elems:
                    v = min(v, _factor_val(f, x.parts[i]))
                parts.append(v)
        return Ideal(spec, tuple(parts))

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other: "Ideal") -> "Ideal":
        _check_same_spec(self, other)
        parts = []
        for f, a, b in zip(self.spec.factors, self.parts, other.parts):
            parts.append(gcd(a, b) if f.kind == INT else min(a, b))
        return Ideal(self.spec, tuple(parts))

    def __mul__(self, other: "Ideal") -> "Ideal":
        _check_same_spec(self, other)
        parts = []
        for f, a, b in zip(self.spec.factors, self.parts, other.parts):
            parts.append(a * b if f.kind == INT else min(a + b, f.k))
        return Ideal(self.spec, tuple(parts))

    def __and__(self, other: "Ideal") -> "Ideal":
        _check_same_spec(self, other)
        parts = []
        for f, a, b in zip(self.spec.factors, self.parts, other.parts):
            if f.kind == INT:
                parts.append(0 if a == 0 or b == 0 else a * b // gcd(a, b))
            else:
                parts.append(max(a, b))
        return Ideal(self.spec, tuple(parts))

    def square(self) -> "Ideal":
        return self * self

    def contains(self, other: "Ideal") -> bool:
        _check_same_spec(self, other)
        for f, a, b in zip(self.spec.factors, self.parts, other.parts):
            if f.kind == INT:
                if a == 0:
                    if b != 0:
                        return False
                elif b % a != 0:
                    return False
            elif a > b:
                return False
        return True

    def __le__(self, other: "Ideal") -> bool:
        return other.contains(self)

    def __contains__(self, x: RingElem) -> bool:
        _check_same_spec(self, x)
        for f, j, part in zip(self.spec.factors, self.parts, x.parts):
            if f.kind == INT:
                if j == 0:
                    if part != 0:
                        return False
                elif part % j != 0:
                    return False
            elif _factor_val(f, part) < j:
                return False
        return True

    def is_zero(self) -> bool:
        return self == Ideal.zero(self.spec)

    def is_unit_ideal(self) -> bool:
        return self == Ideal.unit(self.spec)

    def generator(self) -> RingElem:
        """Canonical single generator (pi^j per chain factor, m in Z)."""
        parts = []
        for f, j in zip(self.spec.factors, self.parts):
            if f.kind == INT:
                parts.append(j)
            elif f.kind == ZMOD:
                parts.append(f.p**j % f.modulus if f.k > 0 else 0)
            else:
                parts.append(tuple(1 if i == j else 0 for i in range(f.k)))
        return self.spec.from_parts(tuple(parts))

    def elements(self) -> Iterator[RingElem]:
        if not self.spec.is_finite:
            raise DomainError("cannot enumerate an ideal of an infinite ring")
        ranges = []
        for f, j in zip(self.spec.factors, self.parts):
            if f.kind == ZMOD:
                step = f.p**j
                m = f.modulus
                ranges.append(list(range(0, m, step)) if j < f.k else [0])
            else:
                opts = []
                for tail in _iproduct(range(f.p), repeat=f.k - j):
                    opts.append((0,) * j + tail)
                ranges.append(opts)
        for parts in _iproduct(*ranges):
            yield RingElem(self.spec, tuple(parts))

    # -- quotients -----------------------------------------------------------

    def quotient_spec(self) -> RingSpec:
        factors = []
        for f, j in zip(self.spec.factors, self.parts):
            if f.kind == INT:
                if j == 0:
                    factors.append(Factor(INT))
                elif j == 1:
                    factors.append(Factor(ZMOD, 2, 0))
                else:
                    factors.extend(Factor(ZMOD, p, k) for p, k in factorize(j))
            elif f.kind == ZMOD:
                factors.append(Factor(ZMOD, f.p, j))
            else:
                factors.append(Factor(POLY, f.p, j) if j > 0 else Factor(ZMOD, f.p, 0))
        return RingSpec(tuple(factors))

    def reduce_elem(self, x: RingElem) -> RingElem:
        """Image of x in the quotient by this ideal."""
        _check_same_spec(self, x)
        qspec = self.quotient_spec()
        parts = []
        for f, j, part in zip(self.spec.factors, self.parts, x.parts):
            if f.kind == INT:
                if j == 0:
                    parts.append(part)
                elif j == 1:
                    parts.append(0)
                else:
                    parts.extend(part % p**k for p, k in factorize(j))
            elif f.kind == ZMOD:
                parts.append(part % f.p**j if j > 0 else 0)
            else:
                parts.append(tuple(part[:j]) if j > 0 else 0)
        return RingElem(qspec, tuple(parts))

    def reduce_ideal(self, other: "Ideal") -> "Ideal":
        """Image of another ideal in the quotient by this ideal."""
        _check_same_spec(self, other)
        qspec = self.quotient_spec()
        parts = []
        for f, j, b in zip(self.spec.factors, self.parts, other.parts):
            if f.kind == INT:
                if j == 0:
                    parts.append(b)
                elif j == 1:
                    parts.append(0)
                else:
                    for p, k in factorize(j):
                        vb = k if b == 0 else min(k, _val_int(b, p))
                        parts.append(vb)
            else:
                parts.append(min(j, b))
        return Ideal(qspec, tuple(parts))

    def to_json(self):
        return list(self.parts)

    @staticmethod
    def from_json(spec: RingSpec, data) -> "Ideal":
        return Ideal(spec, tuple(int(j) for j in data))

    def describe(self) -> str:
        if self.is_zero():
            return "(0)"
        if self.is_unit_ideal():
            return "(1)"
        g = self.generator()
        return f"({g.parts if len(g.parts) > 1 else g.parts[0]})"


def _val_int(n: int, p: int) -> int:
    n = abs(n)
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def ideal_from_int(spec: RingSpec, n: int) -> Ideal:
    """The ideal generated by the image of the integer n."""
    return Ideal.from_elems(spec, [spec.el(n)])


@lru_cache(maxsize=None)
def named_ring(name: str) -> RingSpec:
    """Parse shorthand ring names: ``z8``, ``z12``, ``f2t2``, ``int``."""
    name = name.strip().lower()
    if name in ("z", "int", "integers"):
        return RingSpec.integers()
    if name.startswith("z") and name[1:].isdigit():
        return RingSpec.zmod(int(name[1:]))
    if name.startswith("f") and "t" in name:
        p_str, k_str = name[1:].split("t", 1)
        if p_str.isdigit() and k_str.isdigit():
            return RingSpec.poly(int(p_str), int(k_str))
    try:
        return RingSpec.from_json(json.loads(name))
    except (json.JSONDecodeError, KeyError, TypeError):
        raise DomainError(f"cannot parse ring name {name!r}") from None
