"""Single-variable differential realizations over exact rationals.

Each algebra acts on monomial bases z^n / sqrt(N_n) with integer squared
norms N_n; the generators are differential operators of order at most three
with rational polynomial coefficients.  Everything here is symbolic: matrix
elements come out as sign-carrying squared rationals, so the equivalence
with the closed-form matrices can be asserted with no tolerance at all.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .errors import BasisSpanError, InvalidLabelError
from .polyalg import RationalPoly, as_fraction
from .reps import AlgebraLabel, Su2Label, Su11Label, AnyLabel

MAX_ORDER = 3


@dataclass(frozen=True)
class DiffOp:
    """Differential operator sum_i c_i(z) d^i/dz^i with rational c_i."""

    terms: tuple[tuple[int, RationalPoly], ...]

    def __post_init__(self):
        for order, coeff in self.terms:
            if not 0 <= order <= MAX_ORDER:
                raise ValueError(f"derivative order {order} outside 0..{MAX_ORDER}")
            if not isinstance(coeff, RationalPoly):
                raise TypeError("coefficients must be RationalPoly")

    def apply(self, poly: RationalPoly) -> RationalPoly:
        """Exact symbolic application to a rational polynomial."""
        out = RationalPoly.zero()
        for order, coeff in self.terms:
            p = poly
            for _ in range(order):
                p = p.derivative()
            out = out + coeff * p
        return out

    def commutator_apply(self, other: "DiffOp", poly: RationalPoly) -> RationalPoly:
        return self.apply(other.apply(poly)) - other.apply(self.apply(poly))


@dataclass(frozen=True)
class MonomialBasis:
    """Monomial basis z^n / sqrt(N_n), with the exact squared norms N_n.

    ``truncated`` marks bases cut out of an infinite family, for which the
    raising image of the top function is allowed to leave the span.
    """

    label: AnyLabel
    squared_norms: tuple[Fraction, ...]
    size: int
    truncated: bool

    def __post_init__(self):
        if any(n <= 0 for n in self.squared_norms):
            raise ValueError("squared norms must be positive")


@dataclass(frozen=True)
class DiffRealization:
    q0: DiffOp
    qp: DiffOp
    qm: DiffOp
    basis: MonomialBasis

    @property
    def generators(self) -> dict[str, DiffOp]:
        return {"q0": self.q0, "qp": self.qp, "qm": self.qm}


def _op(*terms: tuple[int, list]) -> DiffOp:
    return DiffOp(tuple((o, RationalPoly(c)) for o, c in terms))


def build_realization(kind: str, label, size: Optional[int] = None) -> DiffRealization:
    """Generator triple and monomial basis for one of the four families.

    ``kind`` is one of 'su2', 'su11', 'compactQ', 'noncompactQ'.  The label
    is j for su2, the lowest weight k for su11, and an
    :class:`~quadalg.reps.AlgebraLabel` for the quadratic kinds.  ``size`` is
    required for the infinite families (su11, noncompactQ).
    """
    if kind == "su2":
        lab = label if isinstance(label, Su2Label) else Su2Label(as_fraction(label))
        j = lab.j
        dim = int(2 * j) + 1
        q0 = _op((1, [0, 1]), (0, [-j]))
        qp = _op((1, [0, 0, -1]), (0, [0, 2 * j]))
        qm = _op((1, [1]))
        norms = tuple(Fraction(math.factorial(n) * math.factorial(int(2 * j) - n))
                      for n in range(dim))
        return DiffRealization(q0, qp, qm, MonomialBasis(lab, norms, dim, False))

    if kind == "su11":
        lab = label if isinstance(label, Su11Label) else Su11Label(as_fraction(label))
        k = lab.k
        if (2 * k).denominator != 1 or 2 * k < 1:
            raise InvalidLabelError(f"su11 realization needs 2k a positive integer, got k={k}")
        if size is None or size < 1:
            raise ValueError("su11 basis is infinite; a positive size is required")
        q0 = _op((1, [0, 1]), (0, [k]))
        qp = _op((0, [0, 1]))
        qm = _op((2, [0, 1]), (1, [2 * k]))
        norms = tuple(Fraction(math.factorial(n) * math.factorial(n + int(2 * k) - 1))
                      for n in range(size))
        return DiffRealization(q0, qp, qm, MonomialBasis(lab, norms, size, True))

    if kind == "compactQ":
        lab: AlgebraLabel = label
        if lab.sector != "compact":
            raise InvalidLabelError("compactQ needs a compact label")
        k, l = lab.k, lab.l
        dim = lab.dim
        q0 = _op((1, [0, 1]), (0, [k - l]))
        qp = _op((1, [0, 0, -1]), (0, [0, 2 * l - k]))
        qm = _op((2, [0, 1]), (1, [2 * k]))
        norms = tuple(
            Fraction(math.factorial(n)
                     * math.factorial(n + int(2 * k) - 1)
                     * math.factorial(int(2 * l - k) - n))
            for n in range(dim))
        return DiffRealization(q0, qp, qm, MonomialBasis(lab, norms, dim, False))

    if kind == "noncompactQ":
        lab = label
        if lab.sector != "noncompact":
            raise InvalidLabelError("noncompactQ needs a noncompact label")
        if size is None or size < 1:
            raise ValueError("noncompactQ basis is infinite; a positive size is required")
        k, l = lab.k, lab.l
        q0 = _op((1, [0, 1]), (0, [k - l]))
        qp = _op((0, [0, 1]))
        qm = _op((3, [0, 0, 1]), (2, [0, 3 * k - 2 * l + 2]),
                 (1, [2 * k * k - 4 * k * l + 2 * k]))
        norms = tuple(
            Fraction(math.factorial(n)
                     * math.factorial(n + int(2 * k) - 1)
                     * math.factorial(n + int(k - 2 * l)))
            for n in range(size))
        return DiffRealization(q0, qp, qm, MonomialBasis(lab, norms, size, True))

    raise ValueError(f"unknown realization kind {kind!r}")


def matrix_elements(real: DiffRealization) -> dict[str, list[list[Fraction]]]:
    """Signed squared matrix elements of each generator on the basis.

    Entry [m][n] is sign(c) * c^2 * N_m / N_n for the coefficient c of the
    m-th basis function in the image of the n-th; elements of these
    realizations are square roots of rationals, so this representation is
    exact.  Raises :class:`BasisSpanError` if an image leaves the span,
    except for the raising overflow out of a truncated basis, which is
    dropped to mirror the matrix truncation.
    """
    basis = real.basis
    size = basis.size
    tables: dict[str, list[list[Fraction]]] = {}
    for name, op in real.generators.items():
        table = [[Fraction(0)] * size for _ in range(size)]
        for n in range(size):
            image = op.apply(RationalPoly.monomial(n))
            for power, c in enumerate(image.coeffs):
                if c == 0:
                    continue
                if power >= size:
                    if basis.truncated and name == "qp" and n == size - 1 and power == size:
                        continue
                    raise BasisSpanError(
                        f"{name} maps basis function {n} onto z^{power}, outside the span")
                sign = 1 if c > 0 else -1
                table[power][n] = sign * c * c * basis.squared_norms[power] / basis.squared_norms[n]
        tables[name] = table
    return tables


def signed_square(x: Union[int, Fraction]) -> Fraction:
    """sign(x) * x^2 as an exact rational, for comparisons against tables."""
    x = as_fraction(x)
    return x * x if x >= 0 else -(x * x)
