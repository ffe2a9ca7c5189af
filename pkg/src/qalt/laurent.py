"""Exact sparse Laurent polynomials over the integers, plus the gap and
sign-alternation analyses used throughout the toolkit.

Two formal variables occur in practice: ``A`` for bracket polynomials and
``q`` for Jones polynomials (``q = t^(1/2)``, so the q-exponent ``2k``
stands for ``t^k``).  Coefficients are plain Python ints, so all arithmetic
is exact at any size.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

__all__ = [
    "LaurentPoly",
    "JonesPoly",
    "GapReport",
    "eval_gaussian",
    "is_alternating_poly",
    "is_strictly_alternating",
    "max_gap",
    "jones_from_bracket",
    "gap_report",
]

JONES_Q_STEP = 2  # q-exponent spacing of consecutive integer t-powers


class VariableMismatch(ValueError):
    """Raised when combining polynomials in different formal variables."""


@dataclass(frozen=True)
class LaurentPoly:
    """Sparse Laurent polynomial: map exponent -> nonzero integer coefficient."""

    terms: Mapping[int, int]
    variable: str = "A"

    def __post_init__(self):
        clean = {e: c for e, c in self.terms.items() if c != 0}
        object.__setattr__(self, "terms", clean)

    @classmethod
    def zero(cls, variable: str = "A") -> "LaurentPoly":
        return cls({}, variable)

    @classmethod
    def one(cls, variable: str = "A") -> "LaurentPoly":
        return cls({0: 1}, variable)

    @classmethod
    def monomial(cls, exponent: int, coeff: int = 1, variable: str = "A") -> "LaurentPoly":
        return cls({exponent: coeff}, variable)

    def is_zero(self) -> bool:
        return not self.terms

    def support(self) -> list[int]:
        return sorted(self.terms)

    def min_degree(self) -> int:
        if self.is_zero():
            raise ValueError("zero polynomial has no degree")
        return min(self.terms)

    def max_degree(self) -> int:
        if self.is_zero():
            raise ValueError("zero polynomial has no degree")
        return max(self.terms)

    def coeff(self, exponent: int) -> int:
        return self.terms.get(exponent, 0)

    def _check(self, other: "LaurentPoly") -> None:
        if self.variable != other.variable:
            raise VariableMismatch(
                f"cannot combine polynomials in {self.variable!r} and {other.variable!r}"
            )

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        self._check(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, 0) + c
        return LaurentPoly(terms, self.variable)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly({e: -c for e, c in self.terms.items()}, self.variable)

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        self._check(other)
        terms: dict[int, int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = e1 + e2
                terms[e] = terms.get(e, 0) + c1 * c2
        return LaurentPoly(terms, self.variable)

    def scale(self, k: int) -> "LaurentPoly":
        return LaurentPoly({e: k * c for e, c in self.terms.items()}, self.variable)

    def shift(self, by: int) -> "LaurentPoly":
        """Multiply by variable**by."""
        return LaurentPoly({e + by: c for e, c in self.terms.items()}, self.variable)

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            raise ValueError("negative powers of a polynomial are not defined")
        out = LaurentPoly.one(self.variable)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.variable == other.variable and dict(self.terms) == dict(other.terms)

    def __hash__(self) -> int:
        return hash((self.variable, tuple(sorted(self.terms.items()))))

    def __str__(self) -> str:
        return render(self)

    def __repr__(self) -> str:
        return f"LaurentPoly({render(self)!r})"


def render(p: LaurentPoly) -> str:
    """Canonical text form, ascending exponents: ``-A^-3 + A``."""
    if p.is_zero():
        return "0"
    var = p.variable
    parts: list[str] = []
    for e in p.support():
        c = p.terms[e]
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if e == 0:
            body = str(mag)
        else:
            pw = var if e == 1 else f"{var}^{e}"
            body = pw if mag == 1 else f"{mag}*{pw}"
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f"{sign} {body}")
    return " ".join(parts)


def eval_gaussian(p: LaurentPoly) -> tuple[int, int]:
    """Evaluate at variable = i exactly over the Gaussian integers.

    Returns (re, im).  Negative exponents use i^-1 = -i, i.e. i**(e mod 4).
    """
    re = im = 0
    for e, c in p.terms.items():
        k = e % 4
        if k == 0:
            re += c
        elif k == 1:
            im += c
        elif k == 2:
            re -= c
        else:
            im -= c
    return re, im


def is_alternating_poly(p: LaurentPoly, step: int = 4) -> bool:
    """True iff all exponents are congruent mod ``step`` and coefficients of
    consecutive terms (in exponent order) have opposite signs.

    The sign comparison is scaled to the exponent distance, so two terms
    ``2*step`` apart must carry the *same* sign: the alternating pattern is a
    property of the exponent residue, not merely of adjacency in the support.
    """
    if step <= 0:
        raise ValueError("step must be positive")
    if p.is_zero():
        return True
    sup = p.support()
    base = sup[0] % step
    if any(e % step != base for e in sup):
        return False
    for prev, cur in zip(sup, sup[1:]):
        hops = (cur - prev) // step
        sp = 1 if p.terms[prev] > 0 else -1
        sc = 1 if p.terms[cur] > 0 else -1
        if sc != sp * (-1) ** hops:
            return False
    return True


def is_strictly_alternating(p: LaurentPoly, step: int = 4) -> bool:
    """Alternating with full support: consecutive exponent spacing == step."""
    if not is_alternating_poly(p, step):
        return False
    sup = p.support()
    return all(b - a == step for a, b in zip(sup, sup[1:]))


def max_gap(p: LaurentPoly, step: int = 4) -> int:
    """Largest spacing between consecutive support exponents (0 for monomials).

    "No gap" for a bracket-style polynomial means ``max_gap(p, 4) <= 4``.
    """
    if p.is_zero():
        raise ValueError("zero polynomial has no gaps")
    sup = p.support()
    if len(sup) == 1:
        return 0
    return max(b - a for a, b in zip(sup, sup[1:]))


@dataclass(frozen=True)
class JonesPoly:
    """Jones polynomial stored in q = t^(1/2); q-exponent 2k stands for t^k.

    All q-exponents share one parity, fixed by the component count: even for
    an odd number of components (knots included), odd otherwise.
    """

    poly: LaurentPoly
    components: int = 1

    def __post_init__(self):
        if self.poly.variable != "q":
            raise VariableMismatch("JonesPoly requires a polynomial in q")
        want = (self.components + 1) % 2
        for e in self.poly.terms:
            if e % 2 != want:
                raise ValueError(
                    f"q-exponent {e} clashes with component parity {self.components}"
                )

    def determinant(self) -> int:
        """|V(-1)| via q = i; the value is det times a unit in {1,-1,i,-i}."""
        re, im = eval_gaussian(self.poly)
        if re != 0 and im != 0:
            raise ValueError(f"V(q=i) = {re}+{im}i is not a unit multiple of an integer")
        return abs(re) + abs(im)

    def span(self) -> int:
        """max - min t-exponent (integer; q-span is always even)."""
        if self.poly.is_zero():
            raise ValueError("zero Jones polynomial")
        q_span = self.poly.max_degree() - self.poly.min_degree()
        return q_span // 2

    def __str__(self) -> str:
        return render_jones(self)


def jones_from_bracket(bracket: LaurentPoly, writhe: int, components: int) -> JonesPoly:
    """Apply the writhe normalization (-A^3)^(-w) and substitute A^4 = t^-1.

    After normalization every A-exponent is even; the map is A^e -> q^(-e/2).
    An odd exponent after normalization signals a convention bug upstream and
    raises immediately.
    """
    if bracket.variable != "A":
        raise VariableMismatch("bracket polynomial must be in A")
    normalized = bracket.shift(-3 * writhe)
    if writhe % 2:
        normalized = -normalized
    terms: dict[int, int] = {}
    for e, c in normalized.terms.items():
        if e % 2:
            raise ValueError(f"odd A-exponent {e} after writhe normalization")
        terms[-e // 2] = terms.get(-e // 2, 0) + c
    return JonesPoly(LaurentPoly(terms, "q"), components)


@dataclass(frozen=True)
class GapReport:
    """Gap structure of a Jones polynomial, in exact q-exponent units.

    ``gaps`` lists (lower q-exponent, spacing) for every consecutive support
    pair with spacing > 2; ``max_gap`` is the largest spacing overall (0 for
    a monomial).  ``sign_alternating`` holds iff consecutive support
    coefficients alternate in sign at the scale of their distance, i.e. the
    polynomial is alternating at q-step 2.
    """

    span: int
    gaps: tuple[tuple[int, int], ...]
    sign_alternating: bool
    max_gap: int

    @property
    def has_gap(self) -> bool:
        return bool(self.gaps)

    @property
    def no_gap(self) -> bool:
        """Consecutive integer t-powers present with alternating signs."""
        return not self.gaps and self.sign_alternating


def gap_report(v: JonesPoly) -> GapReport:
    p = v.poly
    if p.is_zero():
        raise ValueError("zero Jones polynomial has no gap report")
    sup = p.support()
    gaps = tuple(
        (a, b - a) for a, b in zip(sup, sup[1:]) if b - a > JONES_Q_STEP
    )
    return GapReport(
        span=p.max_degree() - p.min_degree(),
        gaps=gaps,
        sign_alternating=is_alternating_poly(p, JONES_Q_STEP),
        max_gap=0 if len(sup) == 1 else max(b - a for a, b in zip(sup, sup[1:])),
    )


def render_jones(v: JonesPoly, variable: str = "t") -> str:
    """Render in t with half-integer exponents as ``t^(k/2)`` when needed."""
    p = v.poly
    if p.is_zero():
        return "0"
    parts: list[str] = []
    for e in p.support():
        c = p.terms[e]
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if e == 0:
            body = str(mag)
        else:
            if e % 2 == 0:
                te = e // 2
                pw = variable if te == 1 else f"{variable}^{te}"
            else:
                pw = f"{variable}^({e}/2)"
            body = pw if mag == 1 else f"{mag}*{pw}"
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f"{sign} {body}")
    return " ".join(parts)
