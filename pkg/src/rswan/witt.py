"""Truncated Witt vectors over series fields, and character reduction.

Component order
---------------
A length-``s`` vector is stored internally as ``comps = [a_0, ..., a_{s-1}]``
where ``a_i`` sits at *standard* Witt index ``s - 1 - i``; equivalently the
standard tuple ``(x_0, ..., x_{s-1})`` is ``comps`` reversed.  All printed /
configured tuples use the standard order (:meth:`WittVector.print_order`),
so ``comps[i]`` carries weight ``p^i``: a polar term of order ``-m`` in
``comps[i]`` contributes ``p^i * m`` to the Swan conductor.

Arithmetic
----------
Sums, negations and integer combinations are computed instance-wise through
ghost components: the field coefficients are lifted to the length-``2s``
quotient ring, the combined ghost vector is unwound by the usual recursion

    z_n = (W_n - sum_{i<n} p^i z_i^{p^(n-i)}) / p^n,

and the result is reduced mod p.  Double length makes every division exact
and leaves the mod-p answer correct (``z_n`` is accurate mod ``p^(2s-n)``).
Length-1 vectors use plain componentwise arithmetic, which also serves
coefficient domains without a stored lift ring (rational-function scalars).
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    PrecisionExhausted,
    RswanError,
    TowerMismatch,
    ZeroInput,
)
from .scalars import galois_ring_domain
from .series import NestedSeries
from .tower import FieldTower

__all__ = [
    "WittVector",
    "Character",
    "witt_combine",
    "witt_add",
    "witt_neg",
    "witt_sub",
    "witt_frobenius",
    "witt_verschiebung",
    "witt_ord_of",
    "asw_reduce_components",
    "asw_reduce",
    "swan_conductor",
    "lift_series",
    "reduce_series",
]

_REDUCTION_STEP_CAP = 10_000


def _map_raw(sr: NestedSeries, fn, domain) -> NestedSeries:
    if sr.level == 1:
        out = {e: fn(c) for e, c in sr.coeffs.items()}
    else:
        out = {e: _map_raw(c, fn, domain) for e, c in sr.coeffs.items()}
    return NestedSeries(sr.level, domain, out, sr.ceiling)


def lift_series(a: NestedSeries, lift_domain) -> NestedSeries:
    """Coefficientwise lift of a residue-field series into a lift ring."""
    return _map_raw(a, lift_domain.lift_from_field, lift_domain)


def reduce_series(a: NestedSeries, field_domain) -> NestedSeries:
    """Coefficientwise reduction mod p of a lift-ring series."""
    return _map_raw(a, a.domain.reduce_mod_p, field_domain)


# --------------------------------------------------------------- raw engine

def witt_combine(comps_list, ints, p: int):
    """Integer combination ``sum_j ints[j] * vec_j`` of Witt vectors.

    Each entry of ``comps_list`` is a component tuple in internal order; all
    must share one length and one coefficient domain.  Length 1 is plain
    componentwise arithmetic; longer vectors go through ghost lifting and
    need finite-field coefficients.
    """
    if not comps_list:
        raise ValueError("nothing to combine")
    s = len(comps_list[0])
    domain = comps_list[0][0].domain
    level = comps_list[0][0].level
    for comps in comps_list:
        if len(comps) != s:
            raise TowerMismatch("Witt vectors of different lengths")
        for c in comps:
            if c.domain is not domain or c.level != level:
                raise TowerMismatch("Witt components live in different towers")
    if s == 1:
        acc = NestedSeries.zero(level, domain)
        for n, (comp,) in zip(ints, comps_list):
            acc = acc + comp.mul_int(n)
        return (acc,)
    if not hasattr(domain, "k") or getattr(domain, "s", 1) != 1:
        raise TowerMismatch(
            "length-s Witt arithmetic needs finite-field coefficients"
        )
    big = galois_ring_domain(p, domain.k, 2 * s)
    # standard order (x_0 first), lifted coefficientwise
    lifted = [
        [lift_series(x, big) for x in reversed(comps)] for comps in comps_list
    ]
    z: list[NestedSeries] = []
    for n in range(s):
        acc = NestedSeries.zero(level, big)
        for cj, lx in zip(ints, lifted):
            if cj % big.modulus == 0:
                continue
            for i in range(n + 1):
                acc = acc + lx[i].pow(p ** (n - i)).mul_int(cj * p**i)
        for i in range(n):
            acc = acc - z[i].pow(p ** (n - i)).mul_int(p**i)
        z.append(_divide_by_int(acc, p**n))
    out_std = [reduce_series(zi, domain) for zi in z]
    return tuple(reversed(out_std))


def _divide_by_int(a: NestedSeries, n: int) -> NestedSeries:
    if n == 1:
        return a
    domain = a.domain

    def div_raw(x):
        cs = domain.coeffs(x)
        out = []
        for c in cs:
            if c % n:
                raise RswanError(
                    "ghost recursion produced a coefficient not divisible "
                    f"by {n} (internal error)"
                )
            out.append(c // n)
        return domain.from_coeffs(out)

    return _map_raw(a, div_raw, domain)


def witt_add(a, b, p: int):
    return witt_combine([a, b], [1, 1], p)


def witt_neg(a, p: int):
    return witt_combine([a], [-1], p)


def witt_sub(a, b, p: int):
    return witt_combine([a, b], [1, -1], p)


def witt_frobenius(comps):
    """Componentwise p-th power (valid over rings of characteristic p)."""
    return tuple(c.frobenius() for c in comps)


def witt_verschiebung(comps):
    """Shift each slot one weight down, dropping the weight-1 component;
    composed with Frobenius this is multiplication by p."""
    s = len(comps)
    zero = NestedSeries.zero(comps[0].level, comps[0].domain)
    return tuple(list(comps[1:]) + [zero]) if s > 1 else (zero,)


def witt_ord_of(comps, p: int) -> int:
    """min_i p^i * ord(comps[i]); ZeroInput when every component vanishes.

    Raises :class:`PrecisionExhausted` when an unknown window tail could lie
    below the stored minimum.
    """
    known = None
    bound = None
    for i, c in enumerate(comps):
        w = p**i
        if c.coeffs:
            v = w * c.ord()
            known = v if known is None else min(known, v)
        if c.ceiling is not None:
            b = w * c.ceiling
            bound = b if bound is None else min(bound, b)
    if known is None:
        if bound is not None:
            raise PrecisionExhausted(
                "vector is zero within its windows; its order is not determined"
            )
        raise ZeroInput("order of the zero Witt vector is undefined")
    if bound is not None and bound < known:
        raise PrecisionExhausted(
            f"window tails (>= {bound}) could undercut the stored order {known}"
        )
    return known


# ----------------------------------------------------------- reduction loop

def _pth_power_part(c, domain, level: int):
    """Root of the removable part of a coefficient, or None.

    ``c`` is a raw scalar when ``level == 0``, a series otherwise.  The
    removable part consists of the monomials whose exponents are divisible
    by p at every level and whose scalars admit p-th roots; only that part
    is returned (as its p-th root), so partially removable coefficients are
    split rather than skipped.
    """
    p = domain.p
    if level == 0:
        if domain.is_zero(c):
            return None
        return domain.pth_root(c) if domain.is_pth_power(c) else None
    out = {}
    for e, sub in c.coeffs.items():
        if e % p:
            continue
        root = _pth_power_part(sub, domain, level - 1)
        if root is not None:
            out[e // p] = root
    if not out:
        return None
    ceiling = None if c.ceiling is None else (c.ceiling - 1) // p + 1
    return NestedSeries(level, domain, out, ceiling)


def _find_reducible(comps, p: int):
    """Deepest removable polar term: (weighted_ord, slot, exponent, root)."""
    best = None
    domain = comps[0].domain
    level = comps[0].level
    for i, comp in enumerate(comps):
        w = p**i
        for e in sorted(comp.coeffs):
            if e >= 0:
                break
            if e % p:
                continue
            root = _pth_power_part(comp.coeffs[e], domain, level - 1)
            if root is None:
                continue
            cand = (w * e, i, e, root)
            if best is None or cand[0] < best[0]:
                best = cand
            break  # deeper terms in this slot dominate shallower ones
    return best


def _check_windows_cover_polar_part(comps):
    for i, c in enumerate(comps):
        if c.ceiling is not None and c.ceiling <= 0:
            raise PrecisionExhausted(
                f"component {i} is only known below order {c.ceiling}; "
                "its polar part cannot be certified",
                exponent=c.ceiling,
            )


def asw_reduce_components(comps, p: int):
    """Greedy reduction: remove every removable polar term.

    Repeatedly picks the removable polar term of lowest weighted order, say
    ``c * T^e`` in slot ``i`` with ``c = u_0^p`` and ``p | e``, and subtracts
    the coboundary ``F(E) - E`` of the vector ``E`` with ``u_0 T^(e/p)`` in
    slot ``i``.  The offending term cancels exactly; everything the
    subtraction introduces sits at strictly higher weighted order, so the
    loop terminates with a vector whose polar part admits no further
    removal.
    """
    _check_windows_cover_polar_part(comps)
    comps = tuple(comps)
    steps = 0
    last_weight = None
    while True:
        target = _find_reducible(comps, p)
        if target is None:
            return comps
        weight, slot, e, root = target
        if last_weight is not None and weight < last_weight:
            raise RswanError(
                "reduction made the polar part worse (internal error)"
            )
        last_weight = weight
        steps += 1
        if steps > _REDUCTION_STEP_CAP:
            raise RswanError("reduction did not terminate (internal error)")
        level = comps[0].level
        domain = comps[0].domain
        u = NestedSeries(level, domain, {e // p: root})
        correction = [NestedSeries.zero(level, domain)] * len(comps)
        correction[slot] = u
        correction = tuple(correction)
        coboundary = witt_sub(witt_frobenius(correction), correction, p)
        comps = witt_sub(comps, coboundary, p)
        _check_windows_cover_polar_part(comps)


# ------------------------------------------------------------- tower layer

@dataclass(frozen=True)
class WittVector:
    """A length-``tower.s`` Witt vector of series over ``tower``."""

    tower: FieldTower
    comps: tuple[NestedSeries, ...]

    def __post_init__(self):
        if len(self.comps) != self.tower.s:
            raise TowerMismatch(
                f"expected {self.tower.s} components, got {len(self.comps)}"
            )
        for c in self.comps:
            if c.level != self.tower.d or c.domain is not self.tower.field_domain:
                raise TowerMismatch("component does not live over the tower")

    # -- constructors -------------------------------------------------------
    @classmethod
    def from_print_order(cls, tower: FieldTower, printed) -> "WittVector":
        """Build from the standard tuple ``(x_0, ..., x_{s-1})``."""
        printed = tuple(printed)
        return cls(tower, tuple(reversed(printed)))

    @classmethod
    def zero(cls, tower: FieldTower) -> "WittVector":
        z = NestedSeries.zero(tower.d, tower.field_domain)
        return cls(tower, (z,) * tower.s)

    @classmethod
    def teichmuller(cls, tower: FieldTower, series: NestedSeries) -> "WittVector":
        z = NestedSeries.zero(tower.d, tower.field_domain)
        return cls(tower, (z,) * (tower.s - 1) + (series,))

    # -- views ----------------------------------------------------------------
    @property
    def print_order(self) -> tuple[NestedSeries, ...]:
        """Standard component order ``(x_0, ..., x_{s-1})``."""
        return tuple(reversed(self.comps))

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.comps)

    def witt_ord(self) -> int:
        return witt_ord_of(self.comps, self.tower.p)

    # -- arithmetic -------------------------------------------------------
    def _peer(self, other: "WittVector"):
        if not isinstance(other, WittVector):
            raise TypeError("expected a Witt vector")
        if other.tower != self.tower:
            raise TowerMismatch("Witt vectors over different towers")

    def __add__(self, other):
        self._peer(other)
        return WittVector(self.tower, witt_add(self.comps, other.comps, self.tower.p))

    def __neg__(self):
        return WittVector(self.tower, witt_neg(self.comps, self.tower.p))

    def __sub__(self, other):
        self._peer(other)
        return WittVector(self.tower, witt_sub(self.comps, other.comps, self.tower.p))

    def frobenius(self) -> "WittVector":
        return WittVector(self.tower, witt_frobenius(self.comps))

    def verschiebung(self) -> "WittVector":
        return WittVector(self.tower, witt_verschiebung(self.comps))

    def agrees_with(self, other: "WittVector") -> bool:
        self._peer(other)
        return all(a.agrees_with(b) for a, b in zip(self.comps, other.comps))


@dataclass(frozen=True)
class Character:
    """A Witt vector regarded as a character datum, with a reducedness flag."""

    vector: WittVector
    reduced: bool = False

    @property
    def tower(self) -> FieldTower:
        return self.vector.tower


def asw_reduce(vec: WittVector | Character) -> Character:
    if isinstance(vec, Character):
        if vec.reduced:
            return vec
        vec = vec.vector
    comps = asw_reduce_components(vec.comps, vec.tower.p)
    return Character(WittVector(vec.tower, comps), reduced=True)


def swan_conductor(char: WittVector | Character) -> int:
    """Swan conductor: minus the weighted order of the reduced vector, at least 0.

    Unreduced input is reduced first.  Raises :class:`PrecisionExhausted`
    when windows leave the answer ambiguous.
    """
    char = asw_reduce(char)
    comps = char.vector.comps
    p = char.tower.p
    known = None
    bound = None
    for i, c in enumerate(comps):
        w = p**i
        if c.coeffs:
            v = w * c.ord()
            known = v if known is None else min(known, v)
        if c.ceiling is not None:
            b = w * c.ceiling
            bound = b if bound is None else min(bound, b)
    sw_known = max(0, -known) if known is not None else 0
    if bound is not None and -bound > sw_known:
        raise PrecisionExhausted(
            "window tails could carry deeper polar terms than the stored data"
        )
    return sw_known
