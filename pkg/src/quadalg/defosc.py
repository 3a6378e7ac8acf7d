"""Deformed-oscillator form of the compact algebra, and the fermion check.

Rescaling the compact ladder pair by 1/sqrt(l(l+1) - k(1-k)) turns each
finite representation into a deformed oscillator (N, A, A+) with
[A, A+] = F(N) for a quadratic polynomial F with F(0) = 1.  The canonical
fermion is the 2-dimensional instance: it coincides with the deformation of
the (k=1, l=1) representation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .polyalg import RationalPoly
from .reps import AlgebraLabel, Representation, compact_rep


@dataclass
class DeformedOscillator:
    """Number/lowering/raising triple with its exact commutator polynomial."""

    label: AlgebraLabel
    n_mat: np.ndarray
    a_mat: np.ndarray
    adag_mat: np.ndarray
    f_poly: RationalPoly
    scale_sq: Fraction
    scale: float


def deform(rep: Representation) -> DeformedOscillator:
    """Rescale a compact representation into deformed-oscillator form.

    F(N) = 1 - 3 N^2 / sq - (2l-1) N / sq with sq = l(l+1) - k(1-k), which
    is positive for every valid compact label.
    """
    label = rep.label
    if not isinstance(label, AlgebraLabel) or label.sector != "compact":
        raise ValueError("deformation is defined for compact representations")
    k, l = label.k, label.l
    sq = l * (l + 1) - k * (1 - k)
    if sq <= 0:
        raise ValueError(f"non-positive scale l(l+1) - k(1-k) = {sq}")
    scale = float(np.sqrt(float(sq)))
    f_poly = RationalPoly([1, -(2 * l - 1) / sq, -Fraction(3) / sq])
    return DeformedOscillator(
        label=label, n_mat=rep.q0.copy(),
        a_mat=rep.qm / scale, adag_mat=rep.qp / scale,
        f_poly=f_poly, scale_sq=sq, scale=scale,
    )


def commutator_residuals(osc: DeformedOscillator) -> dict[str, float]:
    """Max-norm residuals of [N,A]+A, [N,A+]-A+ and [A,A+]-F(N)."""
    n, a, ad = osc.n_mat, osc.a_mat, osc.adag_mat
    return {
        "n_a": float(np.abs((n @ a - a @ n) + a).max()),
        "n_adag": float(np.abs((n @ ad - ad @ n) - ad).max()),
        "a_adag": float(np.abs((a @ ad - ad @ a) - osc.f_poly.eval_matrix(n)).max()),
    }


@dataclass
class FermionCheck:
    """Exact verification that the canonical fermion is a quadratic oscillator."""

    n_mat: np.ndarray
    f_mat: np.ndarray
    fdag_mat: np.ndarray
    commutator: np.ndarray
    rhs_poly: RationalPoly
    relations_exact: bool
    nilpotent: bool
    matches_deformed_rep: bool

    @property
    def passed(self) -> bool:
        return self.relations_exact and self.nilpotent and self.matches_deformed_rep


def fermion_check() -> FermionCheck:
    """Build the 2x2 fermion and verify its oscillator form exactly.

    [f, f+] must equal 1 - N/2 - 3 N^2/2 elementwise, f^2 = 0, and the triple
    must coincide with the deformation of the (k=1, l=1) representation.
    """
    n = np.diag([0.0, 1.0])
    f = np.array([[0.0, 1.0], [0.0, 0.0]])
    fdag = f.T.copy()
    comm = f @ fdag - fdag @ f
    rhs_poly = RationalPoly([1, Fraction(-1, 2), Fraction(-3, 2)])
    relations_exact = (
        np.array_equal(comm, rhs_poly.eval_matrix(n))
        and np.array_equal(n @ f - f @ n, -f)
        and np.array_equal(n @ fdag - fdag @ n, fdag)
    )
    nilpotent = not np.any(f @ f)
    osc = deform(compact_rep(AlgebraLabel.compact(1, 1)))
    matches = (
        osc.f_poly == rhs_poly
        and np.array_equal(osc.n_mat, n)
        and np.array_equal(osc.a_mat, f)
        and np.array_equal(osc.adag_mat, fdag)
    )
    return FermionCheck(
        n_mat=n, f_mat=f, fdag_mat=fdag, commutator=comm, rhs_poly=rhs_poly,
        relations_exact=relations_exact, nilpotent=nilpotent,
        matches_deformed_rep=matches,
    )
