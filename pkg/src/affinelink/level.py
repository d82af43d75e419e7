"""The level kappa: an exact nonzero rational, or a formal transcendental."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union


class CriticalLevelError(ValueError):
    """Raised for kappa = 0 (central charge equal to -h^vee)."""


@dataclass(frozen=True)
class Level:
    kind: str  # "rational" | "generic"
    value: Optional[Fraction] = None

    def __post_init__(self):
        if self.kind == "rational":
            if self.value is None:
                raise ValueError("rational level needs a value")
            object.__setattr__(self, "value", Fraction(self.value))
            if self.value == 0:
                raise CriticalLevelError("critical level kappa = 0 is excluded")
        elif self.kind == "generic":
            if self.value is not None:
                raise ValueError("generic level carries no value")
        else:
            raise ValueError(f"unknown level kind {self.kind!r}")

    @classmethod
    def rational(cls, value) -> "Level":
        return cls("rational", Fraction(value))

    @classmethod
    def generic(cls) -> "Level":
        return cls("generic")

    @classmethod
    def parse(cls, text: str) -> "Level":
        text = text.strip()
        if text.lower() in ("generic", "kappa", "κ"):
            return cls.generic()
        try:
            value = Fraction(text)
        except (ValueError, ZeroDivisionError):
            raise ValueError(f"malformed level {text!r}") from None
        return cls.rational(value)

    @property
    def is_generic(self) -> bool:
        return self.kind == "generic"

    def to_json(self) -> str:
        if self.is_generic:
            return "generic"
        return f"{self.value.numerator}/{self.value.denominator}"

    def __str__(self) -> str:
        return self.to_json()

    def integer_part(self, const: Fraction, kappa_coeff: Fraction) -> Optional[int]:
        """Return ``const + kappa_coeff * kappa`` if it is an integer, else None.

        At a generic level this holds only when ``kappa_coeff == 0``.
        """
        if kappa_coeff == 0:
            v = Fraction(const)
        elif self.is_generic:
            return None
        else:
            v = const + kappa_coeff * self.value
        return int(v) if v.denominator == 1 else None


class KappaLaurent:
    """Exact Laurent polynomial in kappa with rational coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict[int, Fraction] | None = None):
        self.terms = {p: Fraction(c) for p, c in (terms or {}).items() if c != 0}

    @classmethod
    def kappa(cls) -> "KappaLaurent":
        return cls({1: 1})

    @classmethod
    def const(cls, c) -> "KappaLaurent":
        return cls({0: Fraction(c)})

    def _coerce(self, other) -> "KappaLaurent":
        return other if isinstance(other, KappaLaurent) else KappaLaurent.const(other)

    def __add__(self, other):
        other = self._coerce(other)
        t = dict(self.terms)
        for p, c in other.terms.items():
            t[p] = t.get(p, 0) + c
        return KappaLaurent(t)

    __radd__ = __add__

    def __neg__(self):
        return KappaLaurent({p: -c for p, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        t: dict[int, Fraction] = {}
        for p, a in self.terms.items():
            for q, b in other.terms.items():
                t[p + q] = t.get(p + q, 0) + a * b
        return KappaLaurent(t)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, KappaLaurent):
            if len(other.terms) != 1:
                raise ZeroDivisionError("can only divide by a monomial in kappa")
            (p, c), = other.terms.items()
            return KappaLaurent({q - p: a / c for q, a in self.terms.items()})
        return KappaLaurent({q: a / Fraction(other) for q, a in self.terms.items()})

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = KappaLaurent.const(other)
        if not isinstance(other, KappaLaurent):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def coeff(self, power: int) -> Fraction:
        return self.terms.get(power, Fraction(0))

    def evaluate(self, kappa) -> Fraction:
        k = Fraction(kappa)
        return sum((c * k ** p for p, c in self.terms.items()), Fraction(0))

    def __repr__(self):
        return f"KappaLaurent({str(self)!r})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        out = []
        for p in sorted(self.terms, reverse=True):
            c = self.terms[p]
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if p == 0:
                body = str(a)
            elif p > 0:
                mono = "κ" if p == 1 else f"κ^{p}"
                body = mono if a == 1 else f"{a}*{mono}"
            else:
                den = "κ" if p == -1 else f"κ^{-p}"
                if a.denominator == 1:
                    body = f"{a.numerator}/{den}"
                else:
                    body = f"{a.numerator}/({a.denominator}{den})"
            out.append((sign, body))
        first_sign, first = out[0]
        s = ("-" if first_sign == "-" else "") + first
        for sign, body in out[1:]:
            s += sign + body
        return s


Scalar = Union[Fraction, KappaLaurent]


def kappa_value(level: Level) -> Scalar:
    """kappa itself, as a rational or as the formal symbol."""
    return KappaLaurent.kappa() if level.is_generic else level.value


def format_scalar(x: Scalar) -> str:
    return str(x)
