"""Affine forms over summation indices and the factors built from them."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Union

Rational = Union[int, Fraction]


def _frac(value) -> Fraction:
    return value if isinstance(value, Fraction) else Fraction(value)


@dataclass(frozen=True)
class AffineForm:
    """sum_i coeffs[i] * n_i + constant + n_coeff * N, with exact rationals.

    ``N`` is the Debye dimension kept as a formal parameter; forms with a
    nonzero ``n_coeff`` need a numeric N before they can be evaluated.
    """

    terms: tuple[tuple[str, Fraction], ...] = ()
    constant: Fraction = Fraction(0)
    n_coeff: Fraction = Fraction(0)

    @classmethod
    def of(cls, coeffs: Mapping[str, Rational] | None = None, constant: Rational = 0,
           n: Rational = 0) -> "AffineForm":
        items = {}
        for key, value in (coeffs or {}).items():
            value = _frac(value)
            if value:
                items[key] = value
        return cls(tuple(sorted(items.items(), key=_index_key)), _frac(constant), _frac(n))

    @classmethod
    def index(cls, name: str) -> "AffineForm":
        return cls.of({name: 1})

    @classmethod
    def const(cls, value: Rational) -> "AffineForm":
        return cls.of(constant=value)

    @property
    def coeffs(self) -> dict[str, Fraction]:
        return dict(self.terms)

    def coeff(self, name: str) -> Fraction:
        for key, value in self.terms:
            if key == name:
                return value
        return Fraction(0)

    @property
    def indices(self) -> tuple[str, ...]:
        return tuple(key for key, _ in self.terms)

    def is_zero(self) -> bool:
        return not self.terms and self.constant == 0 and self.n_coeff == 0

    def is_constant(self) -> bool:
        return not self.terms

    def __add__(self, other: "AffineForm | Rational") -> "AffineForm":
        if not isinstance(other, AffineForm):
            other = AffineForm.const(other)
        merged = self.coeffs
        for key, value in other.terms:
            merged[key] = merged.get(key, Fraction(0)) + value
        return AffineForm.of(merged, self.constant + other.constant, self.n_coeff + other.n_coeff)

    __radd__ = __add__

    def __neg__(self) -> "AffineForm":
        return self.scale(-1)

    def __sub__(self, other: "AffineForm | Rational") -> "AffineForm":
        return self + (-other if isinstance(other, AffineForm) else -_frac(other))

    def __rsub__(self, other: Rational) -> "AffineForm":
        return (-self) + other

    def scale(self, factor: Rational) -> "AffineForm":
        factor = _frac(factor)
        return AffineForm.of(
            {k: v * factor for k, v in self.terms}, self.constant * factor, self.n_coeff * factor
        )

    def __mul__(self, factor: Rational) -> "AffineForm":
        return self.scale(factor)

    __rmul__ = __mul__

    def __truediv__(self, factor: Rational) -> "AffineForm":
        return self.scale(1 / _frac(factor))

    def substitute(self, mapping: Mapping[str, "AffineForm"]) -> "AffineForm":
        """Replace indices by forms; indices absent from ``mapping`` stay."""
        out = AffineForm.of(constant=self.constant, n=self.n_coeff)
        for key, value in self.terms:
            out = out + (mapping[key] * value if key in mapping else AffineForm.of({key: value}))
        return out

    def at_n(self, N: int | None) -> "AffineForm":
        """Fold a numeric N into the constant (no-op when N is None)."""
        if N is None or not self.n_coeff:
            return self
        return AffineForm(self.terms, self.constant + self.n_coeff * N, Fraction(0))

    def evaluate(self, assignment: Mapping[str, Rational], N: int | None = None) -> Fraction:
        if self.n_coeff and N is None:
            raise ValueError(f"form {self} needs a numeric N")
        total = self.constant + (self.n_coeff * N if self.n_coeff else 0)
        for key, value in self.terms:
            total += value * assignment[key]
        return total

    def __str__(self) -> str:
        parts = []
        if self.n_coeff:
            parts.append(_monomial(self.n_coeff, "N"))
        if self.constant or not (self.terms or self.n_coeff):
            parts.append(str(self.constant))
        parts.extend(_monomial(v, k) for k, v in self.terms)
        text = " + ".join(parts)
        return text.replace("+ -", "- ")


def _monomial(coeff: Fraction, name: str) -> str:
    if coeff == 1:
        return name
    if coeff == -1:
        return f"-{name}"
    return f"{coeff}*{name}"


def _index_key(item):
    name = item[0]
    digits = "".join(ch for ch in name if ch.isdigit())
    return (name.rstrip("0123456789"), int(digits) if digits else -1, name)


class FactorKind(str, enum.Enum):
    GAMMA_NUM = "gamma_num"
    GAMMA_DEN = "gamma_den"
    POWER = "power"
    SIGN = "sign"


#: symbolic power bases; affine forms are also accepted as bases
SYMBOLS = ("alpha", "X")


@dataclass(frozen=True)
class Factor:
    """One multiplicative piece of a series coefficient.

    gamma_num: Gamma(arg); gamma_den: 1/Gamma(arg); sign: (-1)^arg;
    power: base^arg with ``base`` either a symbol from SYMBOLS or an
    affine form (a summation index, N, or 1 + n1 and the like).
    """

    kind: FactorKind
    arg: AffineForm
    base: Union[str, AffineForm, None] = field(default=None)

    def __post_init__(self):
        if self.kind is FactorKind.POWER:
            if self.base is None:
                raise ValueError("power factor needs a base")
            if isinstance(self.base, str) and self.base not in SYMBOLS:
                raise ValueError(f"unknown symbolic base {self.base!r}")
        elif self.base is not None:
            raise ValueError(f"{self.kind.value} factor takes no base")

    def substitute(self, mapping: Mapping[str, AffineForm]) -> "Factor":
        base = self.base.substitute(mapping) if isinstance(self.base, AffineForm) else self.base
        return Factor(self.kind, self.arg.substitute(mapping), base)

    def at_n(self, N: int | None) -> "Factor":
        base = self.base.at_n(N) if isinstance(self.base, AffineForm) else self.base
        return Factor(self.kind, self.arg.at_n(N), base)

    @property
    def indices(self) -> set[str]:
        used = set(self.arg.indices)
        if isinstance(self.base, AffineForm):
            used.update(self.base.indices)
        return used

    def __str__(self) -> str:
        if self.kind is FactorKind.GAMMA_NUM:
            return f"Gamma({self.arg})"
        if self.kind is FactorKind.GAMMA_DEN:
            return f"1/Gamma({self.arg})"
        if self.kind is FactorKind.SIGN:
            return f"(-1)^({self.arg})"
        base = self.base if isinstance(self.base, str) else f"({self.base})"
        return f"{base}^({self.arg})"


def gamma_num(arg: AffineForm) -> Factor:
    return Factor(FactorKind.GAMMA_NUM, arg)


def gamma_den(arg: AffineForm) -> Factor:
    return Factor(FactorKind.GAMMA_DEN, arg)


def sign(arg: AffineForm) -> Factor:
    return Factor(FactorKind.SIGN, arg)


def power(base: Union[str, AffineForm], arg: AffineForm) -> Factor:
    return Factor(FactorKind.POWER, arg, base)
