"""Tower descriptors for iterated Laurent series fields.

A :class:`FieldTower` names the field K = F_q((T_1))...((T_d)) together with
the lift length s used by its characters and the precision budget N that
caps the width of any freshly created finite window.  Towers are immutable
value objects; all structural checks (TowerMismatch and friends) compare
them by equality.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

from .errors import TowerMismatch
from .scalars import fq_domain, galois_ring_domain

__all__ = ["FieldTower", "require_same_tower"]

DEFAULT_PRECISION = 64


@dataclass(frozen=True)
class FieldTower:
    """F_q((T_1))...((T_d)) with q = p^k, Witt/lift length s, precision N.

    ``variables`` are listed inside-out: ``variables[-1]`` is the uniformizer
    of K, ``variables[:-1]`` generate the residue field.  The absolute
    ramification index is infinite (equal characteristic); there is no e_K
    field for that reason.
    """

    p: int
    k: int
    s: int
    variables: tuple[str, ...]
    precision: int = DEFAULT_PRECISION

    def __post_init__(self):
        if isinstance(self.variables, list):
            object.__setattr__(self, "variables", tuple(self.variables))
        # triggers the table lookup for (p, k) and the 1 <= s <= 4 bound
        galois_ring_domain(self.p, self.k, self.s)
        if len(set(self.variables)) != len(self.variables):
            raise ValueError("tower variables must be distinct")
        for v in self.variables:
            if not v.isidentifier() or v == "g":
                raise ValueError(f"bad variable name {v!r}")
        if self.precision < 4:
            raise ValueError("precision budget too small to be useful")

    # -- structure ----------------------------------------------------------
    @property
    def d(self) -> int:
        return len(self.variables)

    @property
    def q(self) -> int:
        return self.p**self.k

    @property
    def uniformizer(self) -> str:
        if not self.variables:
            raise ValueError("a zero-dimensional tower has no uniformizer")
        return self.variables[-1]

    def residue(self) -> "FieldTower":
        """The residue field, as a tower with one variable fewer."""
        if not self.variables:
            raise ValueError("the residue tower of a finite field is not defined here")
        return replace(self, variables=self.variables[:-1])

    def level_of(self, name: str) -> int:
        """1-based level of a variable (1 = innermost)."""
        try:
            return self.variables.index(name) + 1
        except ValueError:
            raise TowerMismatch(f"variable {name!r} not in tower {self.variables}") from None

    # -- coefficient domains --------------------------------------------------
    @property
    def field_domain(self):
        return fq_domain(self.p, self.k)

    @property
    def lift_domain(self):
        return galois_ring_domain(self.p, self.k, self.s)

    def describe(self) -> str:
        base = f"F_{self.q}"
        return base + "".join(f"(({v}))" for v in self.variables)


def require_same_tower(a: FieldTower, b: FieldTower, what: str = "operands"):
    if a != b:
        raise TowerMismatch(f"{what} live in different towers: {a.describe()} vs {b.describe()}")
