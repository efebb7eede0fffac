"""Field embeddings of variable towers: pullbacks and conductor behavior.

An :class:`ExtensionMap` sends each source variable to a series over the
target tower (same constants, same length).  Characters pull back
componentwise and are re-reduced on the target side; the source character is
reduced *before* pulling back, so tame coboundary junk never inflates the
source conductor entering the comparison.

``delta_tor`` measures the torsion depth of the embedding for one-variable
source fields: the minimum target-order of the coefficients of
``dlog(image of the source uniformizer)`` in the basis
``{db_lambda = T_lambda dlog T_lambda, dlog pi_L}``.  Under the strong-
ramification hypothesis ``Sw > (p/(p-1)) * delta/e`` the target conductor is
``e*Sw - delta``; :func:`conductor_change` reports both sides and a
PASS/FAIL/NOT_APPLICABLE verdict.

Two ratio experiments live here as well: the imperfect-residue family
``u -> v^p + w, t -> w^t`` (ratios 2 - 1/t) and curve restriction over
F_p(x)((t)) (generic conductor vs. per-curve conductors, ratios like
3 - 1/e).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    NonEmbedding,
    NonPerfectBase,
    PrecisionExhausted,
    TowerMismatch,
)
from .logdiff import dlog
from .ratfunc import RatFuncDomain
from .series import NestedSeries
from .tower import FieldTower
from .witt import (
    Character,
    WittVector,
    asw_reduce,
    asw_reduce_components,
    swan_conductor,
    witt_ord_of,
)

__all__ = [
    "ExtensionMap",
    "ramification_index",
    "pullback_series",
    "pullback_character",
    "pullback_form",
    "TorsionReport",
    "delta_tor",
    "ConductorChangeReport",
    "conductor_change",
    "imperfect_residue_family",
    "perfect_residue_ratios",
    "curve_restriction_ratios",
]


class ExtensionMap:
    """An embedding of the source tower's field into the target tower's.

    ``images`` maps every source variable name to its image series.  The top
    source variable (the uniformizer) must map to a series of positive
    target-top order; the lower variables are units of the valuation ring
    and must map to units (target-top order exactly zero).
    """

    __slots__ = ("source", "target", "images")

    def __init__(self, source: FieldTower, target: FieldTower, images: dict):
        if (source.p, source.k, source.s) != (target.p, target.k, target.s):
            raise TowerMismatch(
                "source and target towers must share p, the constant field, and the length"
            )
        resolved = {}
        for idx, name in enumerate(source.variables):
            if name not in images:
                raise NonEmbedding(f"no image given for source variable {name!r}")
            img = images[name]
            if not isinstance(img, NestedSeries) or img.level != target.d:
                raise NonEmbedding(
                    f"image of {name!r} must be a series over the target tower"
                )
            if img.domain is not target.field_domain:
                raise NonEmbedding(f"image of {name!r} lives over the wrong coefficients")
            if img.is_zero():
                if img.ceiling is None:
                    raise NonEmbedding(f"image of {name!r} is zero")
                raise PrecisionExhausted(
                    f"image of {name!r} is zero within its window; cannot certify an embedding"
                )
            is_top = idx == len(source.variables) - 1
            if is_top:
                if img.ord() < 1:
                    raise NonEmbedding(
                        f"the source uniformizer must map into the maximal ideal "
                        f"(image of {name!r} has order {img.ord()})"
                    )
            else:
                if img.ord() != 0:
                    raise NonEmbedding(
                        f"lower variables are units; image of {name!r} has order {img.ord()}"
                    )
            resolved[name] = img
        unused = set(images) - set(resolved)
        if unused:
            raise NonEmbedding(f"images given for unknown variables: {sorted(unused)}")
        object.__setattr__(self, "source", source)
        object.__setattr__(self, "target", target)
        object.__setattr__(self, "images", resolved)

    def __setattr__(self, *a):
        raise AttributeError("extension maps are immutable")


def ramification_index(ext: ExtensionMap) -> int:
    """Target order of the image of the source uniformizer."""
    return ext.images[ext.source.variables[-1]].ord()


def pullback_series(
    ext: ExtensionMap, sr: NestedSeries, precision: int | None = None
) -> NestedSeries:
    """Image of a source series under the embedding.

    Coefficients are shared constants; each source monomial maps to the
    product of the variable images raised to its exponents.  A finite source
    window propagates to the target window at ``ceiling * e``.
    """
    if sr.level != ext.source.d:
        raise TowerMismatch("series does not live over the source tower")
    target = ext.target
    domain = target.field_domain
    prec = precision if precision is not None else target.precision
    image_list = [ext.images[name] for name in ext.source.variables]
    power_cache: dict = {}

    def power_of(var_idx: int, n: int) -> NestedSeries:
        key = (var_idx, n)
        if key not in power_cache:
            power_cache[key] = image_list[var_idx].pow(n, prec)
        return power_cache[key]

    acc = NestedSeries.zero(target.d, domain)
    for exps, raw in sr.iter_monomials():
        term = NestedSeries.constant(target.d, domain, raw)
        for var_idx, e in enumerate(exps):
            if e:
                term = term * power_of(var_idx, e)
        acc = acc + term
    if sr.ceiling is not None:
        acc = acc.truncate(sr.ceiling * ramification_index(ext))
    return acc


def pullback_character(
    ext: ExtensionMap, char: Character | WittVector, precision: int | None = None
) -> Character:
    """Reduce over the source, pull each component back, re-reduce over the
    target."""
    if isinstance(char, WittVector):
        char = Character(char)
    char = asw_reduce(char)
    comps = tuple(pullback_series(ext, c, precision) for c in char.vector.comps)
    return asw_reduce(Character(WittVector(ext.target, comps)))


def pullback_form(ext: ExtensionMap, form, precision: int | None = None):
    """Image of a log form: coefficients pull back as series, each
    ``dlog T_lambda`` maps to ``dlog(image of T_lambda)``."""
    from .logdiff import LogForm, wedge

    target = ext.target
    domain = target.field_domain
    dlog_images = {
        idx + 1: dlog(ext.images[name], precision)
        for idx, name in enumerate(ext.source.variables)
    }
    acc = LogForm.zero(target.d, domain, form.degree)
    for key, c in form.coeffs.items():
        term = LogForm.from_series(pullback_series(ext, c, precision))
        for lam in key:
            term = wedge(term, dlog_images[lam])
        acc = acc + term
    return acc


@dataclass(frozen=True)
class TorsionReport:
    """Torsion depth of an embedding plus the relation coefficients.

    ``coefficients`` maps each basis slot of the target's integral log
    differentials — ``db_lambda`` for lower variables, ``dlog pi`` for the
    top one — to its coefficient in ``dlog(image of the source
    uniformizer)``.  ``delta`` is the least target-top order among them.
    """

    delta: int
    coefficients: dict


def delta_tor(ext: ExtensionMap, precision: int | None = None) -> TorsionReport:
    """Torsion depth of the embedding (one-variable source fields only).

    The minimum target-top order of the coefficients of ``dlog(image of the
    source uniformizer)`` in the basis ``{db_lambda, dlog pi_L}``.
    """
    if ext.source.d != 1:
        raise NonPerfectBase(
            "the torsion depth is defined over a one-variable source field"
        )
    target = ext.target
    omega = dlog(ext.images[ext.source.variables[-1]], precision)
    if not omega.coeffs:
        raise NonEmbedding(
            "dlog of the uniformizer image vanishes identically "
            "(the image is a p-th power); the torsion depth is undefined"
        )
    depths = []
    coefficients = {}
    for key, c in omega.coeffs.items():
        lam = key[0]
        name = target.variables[lam - 1]
        if lam < target.d:
            c = c.shift_at(lam, -1)  # dlog T_lambda = T_lambda^{-1} db_lambda
            slot = f"db({name})"
        else:
            slot = f"dlog({name})"
        if c.is_zero():
            if c.ceiling is None:
                continue
            raise PrecisionExhausted(
                "a dlog coefficient is zero within its window; "
                "the torsion depth cannot be certified"
            )
        coefficients[slot] = c
        depths.append(c.ord())
    if not depths:
        raise NonEmbedding(
            "dlog of the uniformizer image vanishes identically "
            "(the image is a p-th power); the torsion depth is undefined"
        )
    return TorsionReport(delta=min(depths), coefficients=coefficients)


@dataclass(frozen=True)
class ConductorChangeReport:
    e: int
    delta: int
    sw_source: int
    sw_target: int
    predicted: int
    hypothesis_lhs: Fraction
    hypothesis_rhs: Fraction
    hypothesis_holds: bool
    status: str  # PASS | FAIL | NOT_APPLICABLE

    def describe(self) -> str:
        return (
            f"e={self.e} delta={self.delta} Sw_source={self.sw_source} "
            f"Sw_target={self.sw_target} predicted={self.predicted} "
            f"hypothesis {self.hypothesis_lhs} > {self.hypothesis_rhs}: "
            f"{'holds' if self.hypothesis_holds else 'fails'} -> {self.status}"
        )


def conductor_change(
    ext: ExtensionMap, char: Character | WittVector, precision: int | None = None
) -> ConductorChangeReport:
    """Compare the actual target conductor against ``e*Sw - delta``.

    The formula is asserted only under the strong-ramification hypothesis
    ``Sw > (p/(p-1)) * delta/e``; outside it the report carries both
    conductors and the verdict NOT_APPLICABLE.
    """
    if isinstance(char, WittVector):
        char = Character(char)
    char = asw_reduce(char)
    p = ext.source.p
    e = ramification_index(ext)
    delta = delta_tor(ext, precision).delta
    sw_source = swan_conductor(char)
    sw_target = swan_conductor(pullback_character(ext, char, precision))
    predicted = e * sw_source - delta
    lhs = Fraction(sw_source)
    rhs = Fraction(p, p - 1) * Fraction(delta, e)
    holds = lhs > rhs
    if not holds:
        status = "NOT_APPLICABLE"
    elif sw_target == predicted:
        status = "PASS"
    else:
        status = "FAIL"
    return ConductorChangeReport(
        e=e,
        delta=delta,
        sw_source=sw_source,
        sw_target=sw_target,
        predicted=predicted,
        hypothesis_lhs=lhs,
        hypothesis_rhs=rhs,
        hypothesis_holds=holds,
        status=status,
    )


# ------------------------------------------------- imperfect-residue ratios

def imperfect_residue_family(p: int = 2, t_values=(3, 5, 7)):
    """The canned family ``u -> v^p + w, t -> w^t`` (t prime to p) together
    with its test character chi = (u t^-2) over F_p((u))((t))."""
    source = FieldTower(p, 1, 1, ("u", "t"))
    target = FieldTower(p, 1, 1, ("v", "w"))
    fd = source.field_domain
    chi = asw_reduce(
        Character(
            WittVector(
                source,
                (NestedSeries.from_monomials(2, fd, [((1, -2), fd.one())]),),
            )
        )
    )
    tfd = target.field_domain
    u_image = NestedSeries.from_monomials(
        2, tfd, [((p, 0), tfd.one()), ((0, 1), tfd.one())]
    )
    family = []
    for t in t_values:
        if t % p == 0:
            raise NonEmbedding(f"family exponent t = {t} must be prime to p = {p}")
        t_image = NestedSeries.from_monomials(2, tfd, [((0, t), tfd.one())])
        family.append(ExtensionMap(source, target, {"u": u_image, "t": t_image}))
    return chi, family


def perfect_residue_ratios(
    chi: Character | WittVector, family, precision: int | None = None
):
    """Conductor growth ratios ``Sw(pullback)/e`` over a family of embeddings.

    Every ratio is bounded by the source conductor ``n``; the report carries
    the rows, the maximum, and the residue-decomposition gate (``c`` not a
    unit, residual coefficients units) under which the canned family
    ``u -> v^p + w, t -> w^t`` realizes the ratio ``n - 1/t`` exactly.
    """
    from .rsw import rsw_char_p, rsw_decompose

    if isinstance(chi, WittVector):
        chi = Character(chi)
    chi = asw_reduce(chi)
    n = swan_conductor(chi)
    decomposition = rsw_decompose(rsw_char_p(chi))
    gate = (not decomposition.c_is_unit) and all(
        decomposition.residual_units.values()
    ) and decomposition.residual
    rows = []
    for ext in family:
        e = ramification_index(ext)
        sw_t = swan_conductor(pullback_character(ext, chi, precision))
        rows.append({"e": e, "sw_target": sw_t, "ratio": Fraction(sw_t, e)})
    return {
        "sw_source": n,
        "formula_applies": bool(gate),
        "c_is_unit": decomposition.c_is_unit,
        "residual_units": dict(decomposition.residual_units),
        "rows": rows,
        "max_ratio": max((r["ratio"] for r in rows), default=Fraction(0)),
        "all_bounded": all(r["ratio"] <= n for r in rows),
    }


# ---------------------------------------------------- curve restriction

def _swan_of_raw(comps, p: int) -> int:
    reduced = asw_reduce_components(list(comps), p)
    if all(c.is_zero() and c.ceiling is None for c in reduced):
        return 0
    return max(0, -witt_ord_of(reduced, p))


def _eval_poly_at(series_base: NestedSeries, coeffs, domain) -> NestedSeries:
    acc = NestedSeries.zero(series_base.level, domain)
    for c in reversed(coeffs):
        acc = acc * series_base + NestedSeries.constant(
            series_base.level, domain, domain.from_int(c)
        )
    return acc


def curve_restriction_ratios(
    p: int,
    f: NestedSeries,
    x0: int,
    exponents=(2, 4, 8),
    precision: int | None = None,
):
    """Restrict a character over F_p(x)((t)) to curves t -> u^e, x -> x0 + u.

    ``f`` is a length-one component with coefficients in F_p(x) (the
    :class:`~rswan.ratfunc.RatFuncDomain`).  The generic conductor is
    computed over the rational-function field; each curve gives a character
    over F_p((u)) whose conductor divided by e approaches the generic one
    from below.  Coefficients with a pole at x0 are rejected.
    """
    if not isinstance(f.domain, RatFuncDomain) or f.domain.p != p:
        raise TowerMismatch("f must have F_p(x) coefficients for this experiment")
    if f.level != 1:
        raise TowerMismatch("the experiment restricts one-variable characters")
    sw_generic = _swan_of_raw((f,), p)
    target = FieldTower(p, 1, 1, ("u",))
    fd = target.field_domain
    prec = precision if precision is not None else target.precision
    base = NestedSeries.from_monomials(
        1, fd, [((0,), fd.from_int(x0)), ((1,), fd.one())]
    )
    rows = []
    for e in exponents:
        acc = NestedSeries.zero(1, fd)
        for (te,), raw in f.iter_monomials():
            num, den = raw
            num_s = _eval_poly_at(base, num, fd)
            den_s = _eval_poly_at(base, den, fd)
            if den_s.is_zero() or den_s.ord() > 0:
                raise NonEmbedding(
                    f"coefficient denominator vanishes at x = {x0}; the curve "
                    "meets a pole of the character"
                )
            coeff = num_s * den_s.inv(prec) if den_s != NestedSeries.one(1, fd) else num_s
            acc = acc + coeff.shift(e * te)
        chi_e = asw_reduce(Character(WittVector(target, (acc,))))
        sw_e = swan_conductor(chi_e)
        rows.append({"e": e, "sw": sw_e, "ratio": Fraction(sw_e, e)})
    return {
        "sw_generic": sw_generic,
        "rows": rows,
        "all_bounded": all(r["ratio"] <= sw_generic for r in rows),
    }
