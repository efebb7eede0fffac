"""Logarithmic differential forms over nested series, and their operators.

A degree-``r`` form over a level-``d`` series ring is stored on the basis
``dlog T_{i_1} ^ ... ^ dlog T_{i_r}`` (``i_1 < ... < i_r``), i.e. as a map
from sorted ``r``-subsets of ``{1..d}`` to coefficient series.  Degree-0
forms are plain series under the empty key.

Implemented here: the exterior derivative ``d`` (in the log basis), wedge
products, the Cartier operator on top-degree forms, the one-step residue
``Res`` (coefficient of ``T_d^0 dlog T_d``), the full residue-plus-trace map
to the prime field, windowed forms (classes modulo a power of the maximal
ideal of the top variable), the window collapse ``r_b = C^b(omega_0)``, and
the Gram matrix of the pairing ``(x, y) -> r_b(x ^ y)`` on twisted monomial
bases, with exact Gaussian elimination to decide invertibility.
"""

from __future__ import annotations

from .errors import (
    DegreeMismatch,
    DegreeOverflow,
    InconsistentValue,
    NoPthRoot,
    NotTopDegree,
    PrecisionExhausted,
    TowerMismatch,
    WindowTooWide,
    ZeroInput,
)
from .series import NestedSeries

__all__ = [
    "LogForm",
    "WindowedForm",
    "d",
    "wedge",
    "dlog",
    "log_derivative",
    "cartier",
    "cartier_scalar",
    "residue_step",
    "residue_to_prime_field",
    "r_b",
    "wedge_windowed",
    "scale_windowed",
    "duality_matrix",
    "gram_is_invertible",
    "window_basis",
]


def log_derivative(sr: NestedSeries, var_level: int) -> NestedSeries:
    """T d/dT in the level-``var_level`` variable: T^e -> e T^e monomialwise."""
    if var_level < 1 or var_level > sr.level:
        raise TowerMismatch(f"no variable at level {var_level}")
    if sr.level == var_level:
        if sr.level == 1:
            out = {e: sr.domain.mul_int(c, e) for e, c in sr.coeffs.items()}
        else:
            out = {e: c.mul_int(e) for e, c in sr.coeffs.items()}
    else:
        out = {e: log_derivative(c, var_level) for e, c in sr.coeffs.items()}
    return NestedSeries(sr.level, sr.domain, out, sr.ceiling)


class LogForm:
    __slots__ = ("level", "domain", "degree", "coeffs")

    def __init__(self, level: int, domain, degree: int, coeffs: dict):
        if degree < 0 or degree > level:
            raise DegreeOverflow(f"degree {degree} outside 0..{level}")
        clean = {}
        for key, c in coeffs.items():
            key = tuple(key)
            if len(key) != degree or list(key) != sorted(set(key)):
                raise DegreeMismatch(f"bad basis key {key} for degree {degree}")
            if any(i < 1 or i > level for i in key):
                raise TowerMismatch(f"basis key {key} outside levels 1..{level}")
            if not isinstance(c, NestedSeries) or c.level != level or c.domain is not domain:
                raise TowerMismatch("coefficient series does not match the form's ring")
            if c.is_zero() and c.ceiling is None:
                continue
            clean[key] = c
        object.__setattr__(self, "level", level)
        object.__setattr__(self, "domain", domain)
        object.__setattr__(self, "degree", degree)
        object.__setattr__(self, "coeffs", clean)

    def __setattr__(self, *a):
        raise AttributeError("forms are immutable")

    # ------------------------------------------------------------------
    @classmethod
    def zero(cls, level: int, domain, degree: int) -> "LogForm":
        return cls(level, domain, degree, {})

    @classmethod
    def from_series(cls, sr: NestedSeries) -> "LogForm":
        return cls(sr.level, sr.domain, 0, {(): sr})

    @classmethod
    def basis(cls, level: int, domain, key) -> "LogForm":
        key = tuple(sorted(key))
        return cls(level, domain, len(key), {key: NestedSeries.one(level, domain)})

    def coefficient(self, key) -> NestedSeries:
        key = tuple(key)
        return self.coeffs.get(key, NestedSeries.zero(self.level, self.domain))

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs.values())

    def _peer(self, other: "LogForm"):
        if not isinstance(other, LogForm):
            raise TypeError("expected a form")
        if other.level != self.level or other.domain is not self.domain:
            raise TowerMismatch("forms over different rings")

    def __add__(self, other):
        self._peer(other)
        if other.degree != self.degree:
            raise DegreeMismatch("cannot add forms of different degrees")
        out = dict(self.coeffs)
        for key, c in other.coeffs.items():
            out[key] = out[key] + c if key in out else c
        return LogForm(self.level, self.domain, self.degree, out)

    def __neg__(self):
        return LogForm(
            self.level, self.domain, self.degree, {k: -c for k, c in self.coeffs.items()}
        )

    def __sub__(self, other):
        return self + (-other)

    def scale(self, sr: NestedSeries) -> "LogForm":
        """Multiply every coefficient by the series ``sr``."""
        return LogForm(
            self.level, self.domain, self.degree, {k: c * sr for k, c in self.coeffs.items()}
        )

    def mul_int(self, n: int) -> "LogForm":
        return LogForm(
            self.level, self.domain, self.degree, {k: c.mul_int(n) for k, c in self.coeffs.items()}
        )

    def agrees_with(self, other: "LogForm") -> bool:
        self._peer(other)
        if other.degree != self.degree:
            return False
        for key in set(self.coeffs) | set(other.coeffs):
            if not self.coefficient(key).agrees_with(other.coefficient(key)):
                return False
        return True

    def __eq__(self, other):
        if not isinstance(other, LogForm):
            return NotImplemented
        return (
            self.level == other.level
            and self.domain is other.domain
            and self.degree == other.degree
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.level, id(self.domain), self.degree, tuple(sorted(self.coeffs))))

    def __repr__(self):
        bits = [f"[{','.join(map(str, k))}]: {c!r}" for k, c in sorted(self.coeffs.items())]
        return f"<form deg {self.degree} L{self.level}: " + ("; ".join(bits) or "0") + ">"


def _merge_sign(a: tuple, b: tuple):
    """Sign of sorting the concatenation a+b; None when an index repeats."""
    if set(a) & set(b):
        return None, ()
    inversions = sum(1 for x in a for y in b if x > y)
    return (-1) ** inversions, tuple(sorted(a + b))


def wedge(alpha: LogForm, beta: LogForm) -> LogForm:
    alpha._peer(beta)
    degree = alpha.degree + beta.degree
    if degree > alpha.level:
        raise DegreeOverflow(
            f"wedge of degrees {alpha.degree} and {beta.degree} exceeds top degree {alpha.level}"
        )
    out: dict = {}
    for ka, ca in alpha.coeffs.items():
        for kb, cb in beta.coeffs.items():
            sign, key = _merge_sign(ka, kb)
            if sign is None:
                continue
            term = (ca * cb).mul_int(sign)
            out[key] = out[key] + term if key in out else term
    return LogForm(alpha.level, alpha.domain, degree, out)


def d(omega) -> LogForm:
    """Exterior derivative; accepts a series (degree-0 form) or a LogForm."""
    if isinstance(omega, NestedSeries):
        omega = LogForm.from_series(omega)
    if omega.degree >= omega.level:
        raise DegreeOverflow("the derivative of a top-degree form leaves the module")
    out: dict = {}
    for key, c in omega.coeffs.items():
        for i in range(1, omega.level + 1):
            if i in key:
                continue
            dc = log_derivative(c, i)
            if dc.is_zero() and dc.ceiling is None:
                continue
            sign, new_key = _merge_sign((i,), key)
            term = dc.mul_int(sign)
            out[new_key] = out[new_key] + term if new_key in out else term
    return LogForm(omega.level, omega.domain, omega.degree + 1, out)


def dlog(f: NestedSeries, precision: int | None = None) -> LogForm:
    """dlog f = df / f as a degree-1 form; f must be invertible."""
    if f.is_zero():
        raise ZeroInput("dlog of zero")
    f_inv = f.inv(precision)
    out = {}
    for i in range(1, f.level + 1):
        c = log_derivative(f, i) * f_inv
        out[(i,)] = c
    return LogForm(f.level, f.domain, 1, out)


# ------------------------------------------------------------------ Cartier

def _cartier_series(sr: NestedSeries) -> NestedSeries:
    p = sr.domain.p
    out = {}
    for e, c in sr.coeffs.items():
        if e % p:
            continue
        if sr.level == 1:
            if not sr.domain.is_pth_power(c):
                raise NoPthRoot("coefficient is not a p-th power at the scalar level")
            out[e // p] = sr.domain.pth_root(c)
        else:
            out[e // p] = _cartier_series(c)
    ceiling = None if sr.ceiling is None else (sr.ceiling - 1) // p + 1
    return NestedSeries(sr.level, sr.domain, out, ceiling)


def cartier(omega: LogForm) -> LogForm:
    """Cartier operator on a top-degree form: C(c T^{pe} dlog base) = c^{1/p} T^e dlog base."""
    if omega.degree != omega.level:
        raise NotTopDegree(
            f"Cartier acts on top-degree forms (degree {omega.degree} != {omega.level})"
        )
    key = tuple(range(1, omega.level + 1))
    c = omega.coeffs.get(key)
    if c is None:
        return LogForm.zero(omega.level, omega.domain, omega.degree)
    return LogForm(omega.level, omega.domain, omega.degree, {key: _cartier_series(c)})


def cartier_scalar(raw, domain):
    """Degree-0 Cartier: the p-th root of a scalar."""
    if not domain.is_pth_power(raw):
        raise NoPthRoot("scalar is not a p-th power")
    return domain.pth_root(raw)


# ------------------------------------------------------------------ residues

def residue_step(omega: LogForm):
    """Coefficient of T_top^0 dlog T_top: a form one level down (a raw scalar
    from level 1)."""
    if omega.degree != omega.level:
        raise NotTopDegree(
            f"residue needs a top-degree form (degree {omega.degree} != {omega.level})"
        )
    level = omega.level
    key = tuple(range(1, level + 1))
    c = omega.coeffs.get(key)
    if level == 1:
        if c is None:
            return omega.domain.zero()
        return c.coefficient(0)
    if c is None:
        return LogForm.zero(level - 1, omega.domain, level - 1)
    return LogForm(level - 1, omega.domain, level - 1, {key[:-1]: c.coefficient(0)})


def residue_to_prime_field(omega, domain=None) -> int:
    """Iterated residues down the tower, then the trace to the prime field.

    Accepts a top-degree form (over any level) or a raw scalar with its
    ``domain``.  Returns an integer mod p (mod p^s over a lift ring).
    """
    if isinstance(omega, LogForm):
        domain = omega.domain
        cur = omega
        while isinstance(cur, LogForm):
            cur = residue_step(cur)
        raw = cur
    else:
        if domain is None:
            raise ValueError("a raw scalar needs its domain")
        raw = omega
    return domain.trace(raw) % domain.modulus


# ------------------------------------------------------------------ windows

def _window_truncate(sr: NestedSeries, upper: int, lower: int) -> NestedSeries:
    """Canonical representative: stored exponents in [lower, upper), exact."""
    if sr.ceiling is not None and sr.ceiling < upper:
        raise PrecisionExhausted(
            f"series window ends at {sr.ceiling}, below the quotient bound {upper}",
            exponent=sr.ceiling,
        )
    if sr.coeffs and min(sr.coeffs) < lower:
        raise InconsistentValue(
            f"representative has a term of order {min(sr.coeffs)} below the window floor {lower}"
        )
    return NestedSeries(sr.level, sr.domain, {e: c for e, c in sr.coeffs.items() if e < upper}, None)


class WindowedForm:
    """A class in m^{-n}/m^{-m} tensor (degree-``r`` log forms).

    ``m`` is the ideal of the top variable; stored representatives keep the
    top-variable exponents in ``[-n, -m-1]`` and are exact there.
    """

    __slots__ = ("form", "n", "m")

    def __init__(self, form: LogForm, n: int, m: int):
        if n <= m:
            raise InconsistentValue(f"window needs n > m, got ({n}, {m})")
        coeffs = {k: _window_truncate(c, -m, -n) for k, c in form.coeffs.items()}
        object.__setattr__(self, "form", LogForm(form.level, form.domain, form.degree, coeffs))
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "m", m)

    def __setattr__(self, *a):
        raise AttributeError("windowed forms are immutable")

    @property
    def width(self) -> int:
        return self.n - self.m

    def __eq__(self, other):
        if not isinstance(other, WindowedForm):
            return NotImplemented
        return (self.n, self.m) == (other.n, other.m) and self.form == other.form

    def __hash__(self):
        return hash((self.n, self.m, self.form))

    def __repr__(self):
        return f"<windowed ({self.n},{self.m}) {self.form!r}>"


def scale_windowed(x: WindowedForm, c_raw, power: int = 1) -> WindowedForm:
    """Act by the residue constant c through the degree-``p^power`` twist:
    multiply the representative by the constant c^(p^power)."""
    domain = x.form.domain
    scalar = domain.pow(c_raw, domain.p**power)
    form = LogForm(
        x.form.level,
        x.form.domain,
        x.form.degree,
        {k: s.scalar_mul(scalar) for k, s in x.form.coeffs.items()},
    )
    return WindowedForm(form, x.n, x.m)


def wedge_windowed(x: WindowedForm, y: WindowedForm) -> WindowedForm:
    """Pairing-side wedge: x in m^{-n}/m^{-m}, y in m^{m+1}/m^{n+1} (windows
    (n, m) and (-m-1, -n-1)) land in m^{1-a}/m, window (a-1, -1)."""
    if y.n != -x.m - 1 or y.m != -x.n - 1:
        raise DegreeMismatch(
            f"windows ({x.n},{x.m}) and ({y.n},{y.m}) are not dual to each other"
        )
    a = x.width
    return WindowedForm(wedge(x.form, y.form), a - 1, -1)


def r_b(x: WindowedForm, b: int):
    """Collapse a window (a-1, -1) top form to C^b of its residue slot.

    Returns a top form one level down (a raw scalar over a one-variable
    ring).  Requires p^b >= a = n - m; otherwise the class admits no
    well-defined collapse and :class:`WindowTooWide` is raised.
    """
    if x.m != -1:
        raise InconsistentValue(
            f"r_b needs a window of shape (a-1, -1); got ({x.n}, {x.m})"
        )
    form = x.form
    if form.degree != form.level:
        raise NotTopDegree("r_b needs a top-degree windowed form")
    a = x.width
    p = form.domain.p
    if b < 0 or p**b < a:
        raise WindowTooWide(f"p^{b} < {a}: the window is too wide for r_{b}")
    omega0 = residue_step(form)
    if isinstance(omega0, LogForm):
        for _ in range(b):
            omega0 = cartier(omega0)
        return omega0
    raw = omega0
    for _ in range(b):
        raw = cartier_scalar(raw, form.domain)
    return raw


# ---------------------------------------------------------------- duality

def _subsets(universe, size):
    universe = list(universe)
    if size == 0:
        yield ()
        return
    if size > len(universe):
        return
    first, rest = universe[0], universe[1:]
    for tail in _subsets(rest, size - 1):
        yield (first,) + tail
    yield from _subsets(rest, size)


def window_basis(level: int, domain, degree: int, n: int, m: int, b: int):
    """Monomial basis of m^{-n}/m^{-m} tensor degree-``degree`` forms, as a
    twisted vector space over the residue ring: top exponents -n..-m-1,
    one dlog key per sorted subset, residue monomials with exponents
    0..p^b-1 in each lower variable."""
    p = domain.p
    exps_lower = [range(p**b) for _ in range(level - 1)]

    def lower_tuples(idx):
        if idx == level - 1:
            yield ()
            return
        for e in exps_lower[idx]:
            for tail in lower_tuples(idx + 1):
                yield (e,) + tail

    out = []
    for key in _subsets(range(1, level + 1), degree):
        for top_e in range(-n, -m):
            for lower in lower_tuples(0):
                exps = tuple(lower) + (top_e,)
                mono = NestedSeries.from_monomials(level, domain, [(exps, domain.one())])
                out.append(WindowedForm(LogForm(level, domain, degree, {key: mono}), n, m))
    return out


def duality_matrix(n: int, m: int, b: int, K, i: int, j: int):
    """Gram matrix of (x, y) -> r_b(x ^ y) on the twisted monomial bases.

    ``x`` runs over the window (n, m) in degree ``j``; ``y`` over the dual
    window (-m-1, -n-1) in degree ``i``; ``i + j`` must be the top degree.
    Entries are the coefficient series of the resulting top form over the
    residue ring (raw scalars when the tower has one variable).
    """
    level = K.d
    domain = K.field_domain
    if i + j != level:
        raise DegreeMismatch(f"degrees {i} + {j} != top degree {level}")
    a = n - m
    if a < 1:
        raise InconsistentValue("empty window")
    if b < 0 or domain.p**b < a:
        raise WindowTooWide(f"p^{b} < {a}: the window is too wide for r_{b}")
    xs = window_basis(level, domain, j, n, m, b)
    ys = window_basis(level, domain, i, -m - 1, -n - 1, b)
    rows = []
    res_key = tuple(range(1, level))
    for x in xs:
        row = []
        for y in ys:
            val = r_b(wedge_windowed(x, y), b)
            if isinstance(val, LogForm):
                row.append(val.coefficient(res_key))
            else:
                row.append(val)
        rows.append(row)
    return rows


def gram_is_invertible(rows, domain=None, precision: int | None = None) -> bool:
    """Exact Gaussian elimination; entries are series or raw scalars.

    A pivot candidate that is zero within a finite window (but not exactly
    zero) raises :class:`PrecisionExhausted` rather than guessing.
    """
    size = len(rows)
    if size == 0:
        return True
    if any(len(r) != size for r in rows):
        return False
    series_entries = isinstance(rows[0][0], NestedSeries)
    if series_entries:
        def is_exact_zero(v):
            if v.is_zero() and v.ceiling is not None:
                raise PrecisionExhausted("pivot is zero within its window; rank is ambiguous")
            return v.is_zero()
    else:
        if domain is None:
            raise ValueError("raw-scalar matrices need their domain")

        def is_exact_zero(v):
            return domain.is_zero(v)

    work = [list(r) for r in rows]
    for col in range(size):
        pivot_row = None
        for r in range(col, size):
            if not is_exact_zero(work[r][col]):
                pivot_row = r
                break
        if pivot_row is None:
            return False
        work[col], work[pivot_row] = work[pivot_row], work[col]
        pivot = work[col][col]
        pivot_inv = pivot.inv(precision) if series_entries else domain.inv(pivot)
        for r in range(col + 1, size):
            factor = work[r][col]
            if is_exact_zero(factor):
                continue
            if series_entries:
                quot = factor * pivot_inv
                for c in range(col, size):
                    work[r][c] = work[r][c] - work[col][c] * quot
            else:
                quot = domain.mul(factor, pivot_inv)
                for c in range(col, size):
                    work[r][c] = domain.sub(work[r][c], domain.mul(work[col][c], quot))
    return True
