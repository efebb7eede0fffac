"""Nested truncated Laurent series with explicit precision windows.

An element of F_q((T_1))...((T_d)) is stored recursively: a series at level
``l`` is a sparse map ``exponent -> coefficient`` in the level-``l`` variable,
whose coefficients are series at level ``l - 1`` (raw scalars at level 1).
The same container carries lift-ring series (Galois-ring scalars) and the
rational-function-coefficient series used by the curve experiments; the
``domain`` object decides the scalar arithmetic.

Precision model
---------------
``ceiling = None`` means the series is *exact*: every unstored exponent is
exactly zero.  A finite ``ceiling`` means exponents ``>= ceiling`` are
unknown; unstored exponents below it are exactly zero.  Exact data stays
exact through ring operations; finite windows appear where they must
(inversion, reversion, substitution through non-monomial images) and
propagate by window intersection.  Operations that cannot certify a result
raise :class:`PrecisionExhausted` instead of truncating silently.
"""

from __future__ import annotations

from .errors import NoPthRoot, PrecisionExhausted, TowerMismatch, ZeroInput

__all__ = [
    "NestedSeries",
    "series_arith",
    "series_inv",
    "series_substitute",
    "series_reverse",
    "identity_images",
]

DEFAULT_WIDTH = 64
_ORD_FLOOR = -10_000


def _min_ceiling(*cs):
    finite = [c for c in cs if c is not None]
    return min(finite) if finite else None


class NestedSeries:
    __slots__ = ("level", "domain", "coeffs", "ceiling")

    def __init__(self, level: int, domain, coeffs: dict, ceiling: int | None = None):
        if level < 1:
            raise ValueError("series level must be >= 1")
        clean = {}
        for e, c in coeffs.items():
            if ceiling is not None and e >= ceiling:
                continue
            if e < _ORD_FLOOR:
                raise ValueError(f"exponent {e} below the supported range (>{_ORD_FLOOR})")
            if level == 1:
                if domain.is_zero(c):
                    continue
            else:
                if not isinstance(c, NestedSeries) or c.level != level - 1:
                    raise TowerMismatch("coefficient level does not match series level")
                # Only an *exactly* zero coefficient may be dropped.  A slot
                # that is zero merely within a finite window stays stored:
                # absent slots read back as exact zeros, so pruning it would
                # claim knowledge beyond the slot's inner ceiling.
                if c.is_zero() and c.is_exact():
                    continue
            clean[e] = c
        object.__setattr__(self, "level", level)
        object.__setattr__(self, "domain", domain)
        object.__setattr__(self, "coeffs", clean)
        object.__setattr__(self, "ceiling", ceiling)

    def __setattr__(self, *a):
        raise AttributeError("series are immutable")

    # ------------------------------------------------------------------ build
    @classmethod
    def zero(cls, level: int, domain, ceiling: int | None = None) -> "NestedSeries":
        return cls(level, domain, {}, ceiling)

    @classmethod
    def constant(cls, level: int, domain, raw, ceiling: int | None = None) -> "NestedSeries":
        cur = raw
        for lvl in range(1, level + 1):
            if lvl == 1:
                cur = cls(1, domain, {0: cur}, None)
            else:
                cur = cls(lvl, domain, {0: cur}, None)
        if ceiling is not None:
            cur = cur.truncate(ceiling)
        return cur

    @classmethod
    def one(cls, level: int, domain) -> "NestedSeries":
        return cls.constant(level, domain, domain.one())

    @classmethod
    def from_monomials(cls, level: int, domain, monomials) -> "NestedSeries":
        """Build an exact series from ``[(exponent_tuple, raw_scalar), ...]``.

        ``exponent_tuple[i]`` is the exponent of the level-``i+1`` variable.
        """
        if level == 1:
            acc: dict = {}
            for exps, raw in monomials:
                (e,) = exps
                acc[e] = domain.add(acc[e], raw) if e in acc else raw
            return cls(1, domain, acc)
        grouped: dict[int, list] = {}
        for exps, raw in monomials:
            grouped.setdefault(exps[-1], []).append((exps[:-1], raw))
        return cls(
            level,
            domain,
            {e: cls.from_monomials(level - 1, domain, ms) for e, ms in grouped.items()},
        )

    @classmethod
    def variable(cls, level: int, domain, var_level: int) -> "NestedSeries":
        """The monomial T_{var_level}, as an exact series at ``level``."""
        exps = tuple(1 if i == var_level else 0 for i in range(1, level + 1))
        return cls.from_monomials(level, domain, [(exps, domain.one())])

    # ------------------------------------------------------------- inspection
    def is_zero(self) -> bool:
        """Zero within the window (exactly zero when the series is exact)."""
        if self.level == 1:
            return not self.coeffs
        return all(c.is_zero() for c in self.coeffs.values())

    def is_exact(self) -> bool:
        if self.ceiling is not None:
            return False
        if self.level == 1:
            return True
        return all(c.is_exact() for c in self.coeffs.values())

    def low(self) -> int:
        """Best known lower bound for the valuation (ceiling when window-zero)."""
        if self.coeffs:
            return min(self.coeffs)
        return self.ceiling if self.ceiling is not None else 0

    def ord(self) -> int:
        """Valuation in the top variable.  Raises ZeroInput on a window-zero series."""
        if self.is_zero():
            raise ZeroInput("ord of a (window-)zero series is undefined")
        e = min(self.coeffs)
        c = self.coeffs[e]
        if self.level > 1 and c.is_zero():
            raise PrecisionExhausted(
                "order is ambiguous: the lowest stored coefficient "
                f"(exponent {e}) is zero only within a finite window",
                exponent=e,
            )
        return e

    def width(self) -> int | None:
        if self.ceiling is None:
            return None
        return self.ceiling - self.low()

    def coefficient(self, e: int):
        """Level-(l-1) coefficient at exponent ``e`` (raw scalar at level 1)."""
        if self.ceiling is not None and e >= self.ceiling:
            raise PrecisionExhausted(
                f"coefficient at exponent {e} is beyond the window ceiling {self.ceiling}",
                exponent=e,
            )
        if e in self.coeffs:
            return self.coeffs[e]
        return self._zero_coeff()

    def _zero_coeff(self):
        return self.domain.zero() if self.level == 1 else NestedSeries.zero(self.level - 1, self.domain)

    def leading(self):
        return self.coeffs[self.ord()]

    def iter_monomials(self):
        """Yield ``(exponent_tuple, raw_scalar)`` over the stored support."""
        for e in sorted(self.coeffs):
            c = self.coeffs[e]
            if self.level == 1:
                yield (e,), c
            else:
                for exps, raw in c.iter_monomials():
                    yield exps + (e,), raw

    # ------------------------------------------------------------------- ring
    def _check_compatible(self, other: "NestedSeries"):
        if not isinstance(other, NestedSeries):
            raise TypeError(f"expected a series, got {type(other).__name__}")
        if other.level != self.level or other.domain is not self.domain:
            raise TowerMismatch("series belong to different towers or coefficient rings")

    def _cadd(self, a, b):
        return self.domain.add(a, b) if self.level == 1 else a + b

    def _cneg(self, a):
        return self.domain.neg(a) if self.level == 1 else -a

    def _cmul(self, a, b):
        return self.domain.mul(a, b) if self.level == 1 else a * b

    def _ciszero(self, a) -> bool:
        return self.domain.is_zero(a) if self.level == 1 else a.is_zero()

    def __add__(self, other):
        self._check_compatible(other)
        ceiling = _min_ceiling(self.ceiling, other.ceiling)
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = self._cadd(out[e], c) if e in out else c
        return NestedSeries(self.level, self.domain, out, ceiling)

    def __neg__(self):
        return NestedSeries(
            self.level, self.domain, {e: self._cneg(c) for e, c in self.coeffs.items()}, self.ceiling
        )

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._check_compatible(other)
        ceiling = _min_ceiling(
            None if self.ceiling is None else self.ceiling + other.low(),
            None if other.ceiling is None else other.ceiling + self.low(),
        )
        out: dict = {}
        for ea, ca in self.coeffs.items():
            for eb, cb in other.coeffs.items():
                e = ea + eb
                if ceiling is not None and e >= ceiling:
                    continue
                prod = self._cmul(ca, cb)
                out[e] = self._cadd(out[e], prod) if e in out else prod
        return NestedSeries(self.level, self.domain, out, ceiling)

    def scalar_mul(self, raw) -> "NestedSeries":
        """Multiply by a raw scalar of the coefficient domain."""
        if self.domain.is_zero(raw):
            return NestedSeries.zero(self.level, self.domain, self.ceiling)
        if self.level == 1:
            out = {e: self.domain.mul(c, raw) for e, c in self.coeffs.items()}
        else:
            out = {e: c.scalar_mul(raw) for e, c in self.coeffs.items()}
        return NestedSeries(self.level, self.domain, out, self.ceiling)

    def mul_int(self, n: int) -> "NestedSeries":
        return self.scalar_mul(self.domain.from_int(n))

    def embed_coeff(self, c) -> "NestedSeries":
        """A level-(l-1) coefficient as a series at this level (exponent 0)."""
        return NestedSeries(self.level, self.domain, {0: c})

    def shift(self, n: int) -> "NestedSeries":
        """Multiply by T^n in the top variable."""
        return NestedSeries(
            self.level,
            self.domain,
            {e + n: c for e, c in self.coeffs.items()},
            None if self.ceiling is None else self.ceiling + n,
        )

    def shift_at(self, var_level: int, n: int) -> "NestedSeries":
        """Multiply by T_{var_level}^n (any level, not just the top)."""
        if var_level == self.level:
            return self.shift(n)
        if var_level > self.level or var_level < 1:
            raise TowerMismatch(f"no variable at level {var_level}")
        return NestedSeries(
            self.level,
            self.domain,
            {e: c.shift_at(var_level, n) for e, c in self.coeffs.items()},
            self.ceiling,
        )

    def truncate(self, ceiling: int | None) -> "NestedSeries":
        new = _min_ceiling(self.ceiling, ceiling)
        if new == self.ceiling:
            return self
        return NestedSeries(self.level, self.domain, self.coeffs, new)

    def pow(self, n: int, precision: int | None = None) -> "NestedSeries":
        if n < 0:
            return self.inv(precision).pow(-n)
        acc = NestedSeries.one(self.level, self.domain)
        base = self
        while n:
            if n & 1:
                acc = acc * base
            base = base * base if n > 1 else base
            n >>= 1
        return acc

    def inv(self, precision: int | None = None) -> "NestedSeries":
        """Multiplicative inverse, Newton iteration on the top variable.

        The result window is exactly what the input window supports: for an
        input known on [v, v + w) the inverse is known on [-v, -v + w).  An
        exact single-term input inverts exactly; otherwise ``precision``
        (default 64) bounds a fresh window.
        """
        if not self.coeffs:
            raise ZeroInput("cannot invert a (window-)zero series")
        v = self.ord()
        lead = self.coeffs[v]
        lead_inv = self.domain.inv(lead) if self.level == 1 else lead.inv(precision)
        if len(self.coeffs) == 1:
            out = NestedSeries(self.level, self.domain, {-v: lead_inv})
            if self.ceiling is not None:
                out = out.truncate(-v + (self.ceiling - v))
            return out
        if self.ceiling is not None:
            width = self.ceiling - v
        else:
            width = precision if precision is not None else DEFAULT_WIDTH
        # x_{n+1} = x_n (2 - a x_n); the error 1 - a x_n squares each step.
        two = NestedSeries.one(self.level, self.domain).mul_int(2)
        x = NestedSeries(self.level, self.domain, {-v: lead_inv}, -v + width)
        steps = max(1, (width - 1).bit_length() + 1)
        a = self.truncate(v + width)
        for _ in range(steps):
            x = (x * (two - a * x)).truncate(-v + width)
        return x

    # --------------------------------------------------- characteristic-p maps
    def frobenius(self, times: int = 1) -> "NestedSeries":
        """Raise to the p-th power ``times`` times (field coefficients only)."""
        if times == 0:
            return self
        p_t = self.domain.p**times
        if self.level == 1:
            out = {e * p_t: self.domain.pow(c, p_t) for e, c in self.coeffs.items()}
        else:
            out = {e * p_t: c.frobenius(times) for e, c in self.coeffs.items()}
        ceiling = None if self.ceiling is None else (self.ceiling - 1) * p_t + 1
        return NestedSeries(self.level, self.domain, out, ceiling)

    def is_pth_power(self) -> bool:
        """Window-level test: stored support has p-divisible exponents and
        recursively p-th-power coefficients."""
        p = self.domain.p
        for e, c in self.coeffs.items():
            if e % p != 0:
                return False
            if self.level == 1:
                if not self.domain.is_pth_power(c):
                    return False
            elif not c.is_pth_power():
                return False
        return True

    def pth_root(self) -> "NestedSeries":
        p = self.domain.p
        out = {}
        for e, c in self.coeffs.items():
            if e % p != 0:
                raise NoPthRoot(f"exponent {e} is not divisible by p = {p}")
            out[e // p] = self.domain.pth_root(c) if self.level == 1 else c.pth_root()
        ceiling = None if self.ceiling is None else (self.ceiling - 1) // p + 1
        return NestedSeries(self.level, self.domain, out, ceiling)

    # ------------------------------------------------------------- comparison
    def agrees_with(self, other: "NestedSeries") -> bool:
        """Equality on the common window, recursively at every level."""
        self._check_compatible(other)
        ceiling = _min_ceiling(self.ceiling, other.ceiling)
        keys = set(self.coeffs) | set(other.coeffs)
        if ceiling is not None:
            keys = {e for e in keys if e < ceiling}
        for e in keys:
            a = self.coeffs.get(e)
            b = other.coeffs.get(e)
            if a is None:
                a = self._zero_coeff()
            if b is None:
                b = self._zero_coeff()
            if self.level == 1:
                if a != b:
                    return False
            elif not a.agrees_with(b):
                return False
        return True

    def __eq__(self, other):
        if not isinstance(other, NestedSeries):
            return NotImplemented
        return (
            self.level == other.level
            and self.domain is other.domain
            and self.ceiling == other.ceiling
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.level, id(self.domain), self.ceiling, tuple(sorted(self.coeffs))))

    def __repr__(self):
        if not self.coeffs:
            body = "0"
        else:
            bits = []
            for exps, raw in self.iter_monomials():
                mono = "*".join(
                    f"T{i + 1}^{e}" for i, e in enumerate(exps) if e != 0
                )
                bits.append(f"{raw!r}*{mono}" if mono else f"{raw!r}")
            body = " + ".join(bits)
        tail = "" if self.ceiling is None else f" + O(T{self.level}^{self.ceiling})"
        return f"<series L{self.level}: {body}{tail}>"


# ---------------------------------------------------------------- module ops

def series_arith(a: NestedSeries, b: NestedSeries, op: str) -> NestedSeries:
    """Windowed ring operations with structural checks.

    ``op`` is one of ``add``, ``sub``, ``mul``.
    """
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


def series_inv(a: NestedSeries, precision: int | None = None) -> NestedSeries:
    return a.inv(precision)


def identity_images(level: int, domain) -> dict[int, NestedSeries]:
    return {j: NestedSeries.variable(level, domain, j) for j in range(1, level + 1)}


def series_substitute(
    a: NestedSeries,
    images: dict[int, NestedSeries],
    precision: int | None = None,
) -> NestedSeries:
    """Evaluate ``a`` with each level-``j`` variable replaced by ``images[j]``.

    All images must be series of one common level and domain (the target).
    Fails loudly (:class:`PrecisionExhausted`) when an unknown tail of ``a``
    would pollute the guaranteed part of the result: that happens exactly
    when ``a`` has a finite ceiling and the relevant image is not a
    uniformizer-like element (top-variable order >= 1).
    """
    targets = list(images.values())
    if not targets:
        raise ValueError("no images supplied")
    out_level = targets[0].level
    domain = targets[0].domain
    for img in targets:
        if img.level != out_level or img.domain is not domain:
            raise TowerMismatch("substitution images live in different targets")
    return _substitute(a, images, out_level, domain, precision)


def _substitute(a, images, out_level, domain, precision):
    img = images.get(a.level)
    if img is None:
        raise TowerMismatch(f"no image supplied for level {a.level}")
    result = NestedSeries.zero(out_level, domain)
    if a.coeffs:
        pows = _PowerCache(img, precision)
        for e in sorted(a.coeffs):
            c = a.coeffs[e]
            if a.level == 1:
                piece = NestedSeries.constant(out_level, domain, c)
            else:
                piece = _substitute(c, images, out_level, domain, precision)
            result = result + piece * pows.get(e)
    if a.ceiling is not None:
        # Bound the damage of the unknown tail of `a`.
        if img.is_zero():
            tail_bound = None  # image is zero: tail contributes nothing
        else:
            m = img.ord()
            if m >= 1:
                tail_bound = m * a.ceiling
            else:
                raise PrecisionExhausted(
                    "cannot substitute a windowed series through a unit-order image",
                    exponent=a.ceiling,
                )
        if tail_bound is not None:
            result = result.truncate(tail_bound)
    return result


class _PowerCache:
    def __init__(self, base: NestedSeries, precision):
        self.base = base
        self.precision = precision
        self.cache: dict[int, NestedSeries] = {}

    def get(self, e: int) -> NestedSeries:
        if e not in self.cache:
            if e >= 0:
                self.cache[e] = self.base.pow(e)
            else:
                inv = self.cache.get(-1)
                if inv is None:
                    inv = self.base.inv(self.precision)
                    self.cache[-1] = inv
                self.cache[e] = inv.pow(-e)
        return self.cache[e]


def _top_derivative(f: NestedSeries) -> NestedSeries:
    """d/dT in the top variable (not logarithmic)."""
    out = {}
    for e, c in f.coeffs.items():
        out[e - 1] = c.mul_int(e) if f.level > 1 else f.domain.mul_int(c, e)
    ceiling = None if f.ceiling is None else f.ceiling - 1
    return NestedSeries(f.level, f.domain, out, ceiling)


def series_reverse(f: NestedSeries, precision: int | None = None) -> NestedSeries:
    """Composition inverse of a series of order 1 in the top variable.

    Returns ``g`` with ``f(g) = T`` to the requested precision (default 64
    exponents, or the input window width when narrower).
    """
    if f.is_zero() or f.ord() != 1:
        raise ZeroInput("reversion needs a series of valuation exactly 1")
    lead = f.coeffs[1]
    if f.level > 1 and (lead.is_zero() or lead.ord() != 0):
        raise ZeroInput("reversion needs a unit linear coefficient")
    width = precision if precision is not None else DEFAULT_WIDTH
    if f.ceiling is not None:
        width = min(width, f.ceiling - 1)
    if width < 1:
        raise PrecisionExhausted("no room to compute a reversion")
    domain = f.domain
    level = f.level
    ident = NestedSeries.variable(level, domain, level)
    images = identity_images(level, domain)
    lead_inv = domain.inv(lead) if level == 1 else lead.inv(width)
    g = NestedSeries(level, domain, {1: lead_inv}, width + 1)
    fprime = _top_derivative(f)
    steps = max(1, (width - 1).bit_length() + 1)
    for _ in range(steps):
        images[level] = g
        err = series_substitute(f, images, width) - ident
        if err.is_zero():
            break
        deriv = series_substitute(fprime, images, width)
        g = (g - err * deriv.inv(width)).truncate(width + 1)
    return g
