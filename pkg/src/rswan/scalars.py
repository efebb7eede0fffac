"""Coefficient arithmetic: F_q and its unramified Z/p^s lift.

Both rings are quotients (Z/p^s)[x]/(f) for a fixed monic polynomial f from
a published table (s = 1 gives the field).  For speed the domains operate on
*raw* values: a plain int when k == 1, a length-k tuple of ints otherwise.
The thin wrapper classes :class:`FqElem` / :class:`GaloisRingElem` give raw
values an operator interface for API use and tests; the series layer talks
to the domains directly.
"""

from __future__ import annotations

from functools import lru_cache

from .errors import ZeroInput

__all__ = [
    "DEFINING_POLYNOMIALS",
    "FqDomain",
    "GaloisRingDomain",
    "fq_domain",
    "galois_ring_domain",
    "FqElem",
    "GaloisRingElem",
]

# Conway polynomials for F_{p^k}, coefficients ascending, monic.
# Read mod p they define F_q; the same integers read mod p^s define the
# unramified extension W_s(F_q) of Z/p^s.
DEFINING_POLYNOMIALS: dict[tuple[int, int], tuple[int, ...]] = {
    (2, 1): (1, 1),
    (2, 2): (1, 1, 1),
    (2, 3): (1, 1, 0, 1),
    (2, 4): (1, 1, 0, 0, 1),
    (3, 1): (1, 1),
    (3, 2): (2, 2, 1),
    (3, 3): (1, 2, 0, 1),
    (3, 4): (2, 0, 0, 2, 1),
    (5, 1): (3, 1),
    (5, 2): (2, 4, 1),
    (5, 3): (3, 3, 0, 1),
    (5, 4): (2, 4, 4, 0, 1),
}


class _QuotientDomain:
    """Shared arithmetic for (Z/m)[x]/(f), m = p^s, f monic of degree k."""

    __slots__ = ("p", "k", "s", "modulus", "poly", "_red_rows")

    def __init__(self, p: int, k: int, s: int):
        if (p, k) not in DEFINING_POLYNOMIALS:
            raise ValueError(f"no defining polynomial on file for (p, k) = ({p}, {k})")
        if s < 1 or s > 8:
            # 1..4 for user-facing lifts; up to 8 internally (ghost-component
            # bookkeeping needs double length).
            raise ValueError(f"lift length s = {s} out of the supported range 1..8")
        self.p = p
        self.k = k
        self.s = s
        self.modulus = p**s
        self.poly = tuple(c % self.modulus for c in DEFINING_POLYNOMIALS[(p, k)])
        # Reductions of x^k .. x^(2k-2) mod f, for schoolbook products.
        rows: list[tuple[int, ...]] = []
        if k > 1:
            neg_tail = [(-c) % self.modulus for c in self.poly[:k]]
            rows.append(tuple(neg_tail))
            for _ in range(k - 2):
                prev = rows[-1]
                shifted = [0] + list(prev[:-1])
                top = prev[-1]
                rows.append(
                    tuple((shifted[i] + top * neg_tail[i]) % self.modulus for i in range(k))
                )
        self._red_rows = tuple(rows)

    # -- raw constructors -------------------------------------------------
    def zero(self):
        return 0 if self.k == 1 else (0,) * self.k

    def one(self):
        return 1 if self.k == 1 else (1,) + (0,) * (self.k - 1)

    def from_int(self, n: int):
        n %= self.modulus
        return n if self.k == 1 else (n,) + (0,) * (self.k - 1)

    def from_coeffs(self, coeffs) -> int | tuple:
        cs = [c % self.modulus for c in coeffs]
        if len(cs) > self.k:
            raise ValueError("too many coefficients")
        cs += [0] * (self.k - len(cs))
        return cs[0] if self.k == 1 else tuple(cs)

    def coeffs(self, x) -> tuple[int, ...]:
        return (x,) if self.k == 1 else tuple(x)

    def generator(self):
        """The residue class of x (for k = 1: the root of the degree-1 polynomial)."""
        if self.k == 1:
            return (-self.poly[0]) % self.modulus
        return (0, 1) + (0,) * (self.k - 2)

    # -- ring ops ----------------------------------------------------------
    def is_zero(self, x) -> bool:
        return x == 0 if self.k == 1 else not any(x)

    def add(self, x, y):
        if self.k == 1:
            return (x + y) % self.modulus
        m = self.modulus
        return tuple((a + b) % m for a, b in zip(x, y))

    def sub(self, x, y):
        if self.k == 1:
            return (x - y) % self.modulus
        m = self.modulus
        return tuple((a - b) % m for a, b in zip(x, y))

    def neg(self, x):
        if self.k == 1:
            return (-x) % self.modulus
        m = self.modulus
        return tuple((-a) % m for a in x)

    def mul(self, x, y):
        m = self.modulus
        if self.k == 1:
            return (x * y) % m
        k = self.k
        prod = [0] * (2 * k - 1)
        for i, a in enumerate(x):
            if a:
                for j, b in enumerate(y):
                    if b:
                        prod[i + j] += a * b
        out = [c % m for c in prod[:k]]
        for d in range(k, 2 * k - 1):
            c = prod[d] % m
            if c:
                row = self._red_rows[d - k]
                for i in range(k):
                    out[i] = (out[i] + c * row[i]) % m
        return tuple(out)

    def mul_int(self, x, n: int):
        n %= self.modulus
        if self.k == 1:
            return (x * n) % self.modulus
        m = self.modulus
        return tuple((a * n) % m for a in x)

    def pow(self, x, n: int):
        if n < 0:
            return self.pow(self.inv(x), -n)
        acc = self.one()
        base = x
        while n:
            if n & 1:
                acc = self.mul(acc, base)
            base = self.mul(base, base)
            n >>= 1
        return acc

    def inv(self, x):
        if self.is_zero(x):
            raise ZeroInput("cannot invert zero")
        if self.s == 1:
            q = self.p**self.k
            if self.k == 1:
                return pow(x, self.p - 2, self.p)
            return self.pow(x, q - 2)
        # Unit check, then Hensel/Newton from the residue-field inverse.
        res = self.reduce_mod_p(x)
        fld = fq_domain(self.p, self.k)
        if fld.is_zero(res):
            raise ZeroInput("not a unit in the lift ring (reduction mod p is zero)")
        cur = self.lift_from_field(fld.inv(res))
        # each step doubles p-adic accuracy; s <= 8 needs three steps
        for _ in range(3):
            err = self.sub(self.from_int(2), self.mul(x, cur))
            cur = self.mul(cur, err)
        return cur

    # -- structure maps ----------------------------------------------------
    def frobenius(self, x):
        """x ** p (used in characteristic p only)."""
        return self.pow(x, self.p)

    def pth_root(self, x):
        """Unique p-th root in F_q (s = 1; F_q is perfect)."""
        if self.s != 1:
            raise ValueError("p-th roots are a residue-field operation")
        if self.k == 1:
            return x
        return self.pow(x, self.p ** (self.k - 1))

    def trace(self, x) -> int:
        """Trace to Z/p^s, as the trace of the multiplication matrix."""
        if self.k == 1:
            return x
        total = 0
        basis = self.one()
        for i in range(self.k):
            total += self.mul(x, basis)[i]
            basis = self._mul_by_x(basis)
        return total % self.modulus

    def _mul_by_x(self, v):
        m = self.modulus
        shifted = [0] + list(v[:-1])
        top = v[-1]
        if top:
            row = self._red_rows[0]
            shifted = [(shifted[i] + top * row[i]) % m for i in range(self.k)]
        else:
            shifted = [c % m for c in shifted]
        return tuple(shifted)

    # -- lift / reduce -----------------------------------------------------
    def reduce_mod_p(self, x):
        if self.k == 1:
            return x % self.p
        return tuple(a % self.p for a in x)

    def lift_from_field(self, x):
        """Coefficientwise lift of an F_q raw value into this ring."""
        return x if self.k == 1 else tuple(x)

    # -- misc ---------------------------------------------------------------
    def random(self, rng):
        if self.k == 1:
            return rng.randrange(self.modulus)
        return tuple(rng.randrange(self.modulus) for _ in range(self.k))

    def random_nonzero(self, rng):
        while True:
            x = self.random(rng)
            if not self.is_zero(x):
                return x

    def elements(self):
        if self.k == 1:
            yield from range(self.modulus)
            return

        def rec(i):
            if i == self.k:
                yield ()
                return
            for c in range(self.modulus):
                for rest in rec(i + 1):
                    yield (c,) + rest

        yield from rec(0)

    def render(self, x) -> str:
        """Human-readable form (polynomial in g)."""
        cs = self.coeffs(x)
        parts = []
        for j, c in enumerate(cs):
            if c == 0:
                continue
            if j == 0:
                parts.append(str(c))
            elif j == 1:
                parts.append("g" if c == 1 else f"{c}*g")
            else:
                parts.append(f"g^{j}" if c == 1 else f"{c}*g^{j}")
        return " + ".join(parts) if parts else "0"


class FqDomain(_QuotientDomain):
    """Arithmetic of F_q, q = p^k, on raw int/tuple values."""

    def __init__(self, p: int, k: int):
        super().__init__(p, k, 1)

    @property
    def q(self) -> int:
        return self.p**self.k

    def is_pth_power(self, x) -> bool:  # F_q is perfect
        return True


class GaloisRingDomain(_QuotientDomain):
    """Arithmetic of the unramified extension of Z/p^s defined by the same table."""

    def is_unit(self, x) -> bool:
        return not fq_domain(self.p, self.k).is_zero(self.reduce_mod_p(x))


@lru_cache(maxsize=None)
def fq_domain(p: int, k: int) -> FqDomain:
    return FqDomain(p, k)


@lru_cache(maxsize=None)
def galois_ring_domain(p: int, k: int, s: int) -> GaloisRingDomain:
    return GaloisRingDomain(p, k, s)


class _Elem:
    """Operator sugar over (domain, raw value).  Immutable."""

    __slots__ = ("domain", "raw")

    def __init__(self, domain, raw):
        object.__setattr__(self, "domain", domain)
        object.__setattr__(self, "raw", raw)

    def __setattr__(self, *a):
        raise AttributeError("immutable")

    def _wrap(self, raw):
        return type(self)(self.domain, raw)

    def _raw_of(self, other):
        if isinstance(other, _Elem):
            if other.domain is not self.domain:
                raise ValueError("elements of different coefficient rings")
            return other.raw
        if isinstance(other, int):
            return self.domain.from_int(other)
        return NotImplemented

    def __add__(self, other):
        r = self._raw_of(other)
        return NotImplemented if r is NotImplemented else self._wrap(self.domain.add(self.raw, r))

    __radd__ = __add__

    def __sub__(self, other):
        r = self._raw_of(other)
        return NotImplemented if r is NotImplemented else self._wrap(self.domain.sub(self.raw, r))

    def __rsub__(self, other):
        r = self._raw_of(other)
        return NotImplemented if r is NotImplemented else self._wrap(self.domain.sub(r, self.raw))

    def __mul__(self, other):
        r = self._raw_of(other)
        return NotImplemented if r is NotImplemented else self._wrap(self.domain.mul(self.raw, r))

    __rmul__ = __mul__

    def __neg__(self):
        return self._wrap(self.domain.neg(self.raw))

    def __pow__(self, n):
        return self._wrap(self.domain.pow(self.raw, n))

    def __truediv__(self, other):
        r = self._raw_of(other)
        return NotImplemented if r is NotImplemented else self._wrap(self.domain.mul(self.raw, self.domain.inv(r)))

    def __eq__(self, other):
        if isinstance(other, _Elem):
            return self.domain is other.domain and self.raw == other.raw
        if isinstance(other, int):
            return self.raw == self.domain.from_int(other)
        return NotImplemented

    def __hash__(self):
        return hash((id(self.domain), self.raw))

    def __bool__(self):
        return not self.domain.is_zero(self.raw)

    def __repr__(self):
        return self.domain.render(self.raw)

    @property
    def coefficients(self) -> tuple[int, ...]:
        return self.domain.coeffs(self.raw)


class FqElem(_Elem):
    """An element of F_q.  ``FqElem(fq_domain(2, 2), raw)`` or via helpers."""

    def frobenius(self) -> "FqElem":
        return self._wrap(self.domain.frobenius(self.raw))

    def pth_root(self) -> "FqElem":
        return self._wrap(self.domain.pth_root(self.raw))

    def trace(self) -> int:
        return self.domain.trace(self.raw)


class GaloisRingElem(_Elem):
    """An element of the unramified Z/p^s extension."""

    def reduce_mod_p(self) -> FqElem:
        d = fq_domain(self.domain.p, self.domain.k)
        return FqElem(d, self.domain.reduce_mod_p(self.raw))

    def trace(self) -> int:
        return self.domain.trace(self.raw)
