"""Truncated multi-mode Fock spaces and bosonic realizations.

The spaces are small (a few thousand states), so all operators are kept as
dense arrays; construction goes through a sparse triplet build internally.
Truncation policy: any amplitude raised past a mode cutoff is dropped, so
operator products are only trusted on the *interior* states, whose orbits
under short words of the realized ladder operators stay inside the cutoffs.
Boundary states are excluded from every residual norm and counted in the
reports.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np
from scipy import sparse

from . import polyalg


class FockSpace:
    """Occupation-number basis with per-mode cutoffs, ordered lexicographically.

    ``basis[i]`` is the i-th occupation tuple and ``index[t]`` its row, a
    bijection by construction.
    """

    def __init__(self, cutoffs: Sequence[int]):
        cutoffs = tuple(int(c) for c in cutoffs)
        if not cutoffs or any(c < 0 for c in cutoffs):
            raise ValueError(f"cutoffs must be non-negative, got {cutoffs}")
        self.cutoffs = cutoffs
        self.nmodes = len(cutoffs)
        self.basis = tuple(itertools.product(*(range(c + 1) for c in cutoffs)))
        self.index = {occ: i for i, occ in enumerate(self.basis)}
        self.dim = len(self.basis)

    def __repr__(self):
        return f"FockSpace(cutoffs={self.cutoffs}, dim={self.dim})"


def ladder_matrices(space: FockSpace) -> tuple[list[np.ndarray], list[np.ndarray]]:
    """Per-mode annihilation and creation matrices with dropped over-cutoff images.

    a|..n..> = sqrt(n)|..n-1..> and adag|..n..> = sqrt(n+1)|..n+1..>; the
    creation matrix is exactly the transpose of the annihilation matrix under
    this truncation policy.
    """
    lower, raise_ = [], []
    for mode in range(space.nmodes):
        rows, cols, vals = [], [], []
        for i, occ in enumerate(space.basis):
            n = occ[mode]
            if n > 0:
                target = occ[:mode] + (n - 1,) + occ[mode + 1:]
                rows.append(space.index[target])
                cols.append(i)
                vals.append(np.sqrt(n))
        a = sparse.coo_matrix((vals, (rows, cols)), shape=(space.dim, space.dim)).toarray()
        lower.append(a)
        raise_.append(a.T.copy())
    return lower, raise_


@dataclass
class RealizedOperators:
    """Generators realized on a truncated Fock space.

    ``interior_mask`` flags the basis states whose images under all words of
    length <= 2 in the realized ladder operators stay inside the cutoffs;
    equalities are only exact there.
    """

    space: FockSpace
    sector: str
    q0: np.ndarray
    qp: np.ndarray
    qm: np.ndarray
    kmat: Optional[np.ndarray]
    lmat: Optional[np.ndarray]
    interior_mask: np.ndarray


# occupation change of the raising monomial, per sector
_RAISE_MOVE = {
    "compact": (1, 1, -1),
    "noncompact": (1, 1, 1),
    "su2": (1, -1),
    "su11": (1, 1),
}


def interior_mask(space: FockSpace, sector: str, depth: int = 2) -> np.ndarray:
    """States whose orbit under words of length <= depth stays inside the box.

    Every occupation path generated by words in the raising/lowering
    monomials must keep 0 <= n_i <= cutoff_i at each step.  This is
    deliberately conservative: a path that leaves the box downward would be
    annihilated exactly, but such states are still flagged as boundary, so
    the mask never depends on cancellation arguments.
    """
    up = _RAISE_MOVE[sector]
    down = tuple(-d for d in up)
    mask = np.ones(space.dim, dtype=bool)
    for i, occ in enumerate(space.basis):
        for word in itertools.product((up, down), repeat=depth):
            state = occ
            for move in word:
                state = tuple(n + d for n, d in zip(state, move))
                if any(n < 0 or n > c for n, c in zip(state, space.cutoffs)):
                    mask[i] = False
                    break
            if not mask[i]:
                break
    return mask


def _diag_of(space: FockSpace, fn) -> np.ndarray:
    """Diagonal operator with exact per-state entries fn(occupation)."""
    return np.diag([float(fn(occ)) for occ in space.basis])


def realize_compact(space: FockSpace) -> RealizedOperators:
    """Compact-sector generators: raising = a1†a2†a3, lowering its conjugate.

    The diagonal invariants are k-like (the two-mode Casimir) and l-like
    with entries (n1+n2+2n3+1)/4; both are exact quarter-integers.
    """
    if space.nmodes != 3:
        raise ValueError("compact realization needs a three-mode space")
    (a1, a2, a3), (c1, c2, c3) = ladder_matrices(space)
    q0 = _diag_of(space, lambda o: (o[0] + o[1] - 2 * o[2] + 1) / 4)
    qp = c1 @ c2 @ a3
    qm = a1 @ a2 @ c3
    kmat = _diag_of(space, lambda o: (1 - (o[0] - o[1]) ** 2) / 4)
    lmat = _diag_of(space, lambda o: (o[0] + o[1] + 2 * o[2] + 1) / 4)
    return RealizedOperators(space, "compact", q0, qp, qm, kmat, lmat,
                             interior_mask(space, "compact"))


def realize_noncompact(space: FockSpace) -> RealizedOperators:
    """Noncompact-sector generators: raising = a1†a2†a3†.

    Relative to the compact realization the roles of the grading operator and
    the l-like invariant swap.
    """
    if space.nmodes != 3:
        raise ValueError("noncompact realization needs a three-mode space")
    (a1, a2, a3), (c1, c2, c3) = ladder_matrices(space)
    q0 = _diag_of(space, lambda o: (o[0] + o[1] + 2 * o[2] + 1) / 4)
    qp = c1 @ c2 @ c3
    qm = a1 @ a2 @ a3
    kmat = _diag_of(space, lambda o: (1 - (o[0] - o[1]) ** 2) / 4)
    lmat = _diag_of(space, lambda o: (o[0] + o[1] - 2 * o[2] + 1) / 4)
    return RealizedOperators(space, "noncompact", q0, qp, qm, kmat, lmat,
                             interior_mask(space, "noncompact"))


def realize_two_mode(kind: str, space: FockSpace) -> RealizedOperators:
    """Two-mode realizations: quantum-transfer (su2) or pair-creation (su11).

    The k-slot carries the realized quadratic Casimir; there is no l-like
    invariant for the linear algebras.
    """
    if space.nmodes != 2:
        raise ValueError("two-mode realization needs a two-mode space")
    if kind not in ("su2", "su11"):
        raise ValueError(f"kind must be 'su2' or 'su11', got {kind!r}")
    (a1, a2), (c1, c2) = ladder_matrices(space)
    if kind == "su2":
        q0 = _diag_of(space, lambda o: (o[0] - o[1]) / 2)
        qp = c1 @ a2
        qm = a1 @ c2
        kmat = _diag_of(space, lambda o: (o[0] + o[1]) * (o[0] + o[1] + 2) / 4)
    else:
        q0 = _diag_of(space, lambda o: (o[0] + o[1] + 1) / 2)
        qp = c1 @ c2
        qm = a1 @ a2
        kmat = _diag_of(space, lambda o: (1 - (o[0] - o[1]) ** 2) / 4)
    return RealizedOperators(space, kind, q0, qp, qm, kmat, None,
                             interior_mask(space, kind))


@dataclass
class RealizationReport:
    """Interior max-norm residuals of the defining and invariance relations."""

    sector: str
    dim: int
    interior_count: int
    boundary_count: int
    residuals: dict[str, float]

    @property
    def max_residual(self) -> float:
        return max(self.residuals.values()) if self.residuals else 0.0

    def to_dict(self) -> dict:
        return {
            "sector": self.sector,
            "dim": self.dim,
            "interior_count": self.interior_count,
            "boundary_count": self.boundary_count,
            "residuals": dict(self.residuals),
            "max_residual": self.max_residual,
        }


def _structure_matrix(ops: RealizedOperators) -> np.ndarray:
    """Expected [raising, lowering] with the diagonal invariants as matrices."""
    eye = np.eye(ops.space.dim)
    q0, km, lm = ops.q0, ops.kmat, ops.lmat
    if ops.sector == "compact":
        return 3 * q0 @ q0 + (2 * lm - eye) @ q0 + (km - lm @ (lm + eye))
    if ops.sector == "noncompact":
        return -3 * q0 @ q0 - (2 * lm + eye) @ q0 - (km - lm @ (lm - eye))
    sign = 2.0 if ops.sector == "su2" else -2.0
    return sign * q0


def verify_realization(ops: RealizedOperators) -> RealizationReport:
    """Report interior residuals of every defining relation of the realization."""
    mask = ops.interior_mask

    def resid(m: np.ndarray) -> float:
        return float(np.abs(m[:, mask]).max(initial=0.0))

    comm = lambda a, b: a @ b - b @ a
    residuals = {
        "q0_qp": resid(comm(ops.q0, ops.qp) - ops.qp),
        "q0_qm": resid(comm(ops.q0, ops.qm) + ops.qm),
        "qp_qm": resid(comm(ops.qp, ops.qm) - _structure_matrix(ops)),
    }
    diagonals = {"k": ops.kmat, "l": ops.lmat}
    for name, d in diagonals.items():
        if d is None:
            continue
        for gname, g in (("q0", ops.q0), ("qp", ops.qp), ("qm", ops.qm)):
            residuals[f"{name}_{gname}"] = resid(comm(d, g))
    if ops.kmat is not None and ops.lmat is not None:
        residuals["k_l"] = resid(comm(ops.kmat, ops.lmat))
    n_int = int(mask.sum())
    return RealizationReport(
        sector=ops.sector, dim=ops.space.dim,
        interior_count=n_int, boundary_count=ops.space.dim - n_int,
        residuals=residuals,
    )


def eigenspace_states(ops: RealizedOperators, k, l) -> list[list[int]]:
    """Ordered chains of basis indices carrying the (k, l) representation.

    Chains are returned lowest weight first; for k > 1/2 there are two (the
    two occupation assignments related by swapping the first two modes), for
    k = 1/2 one.
    """
    k = polyalg.as_fraction(k)
    l = polyalg.as_fraction(l)
    delta = int(2 * k - 1)
    chains = []
    swaps = (False,) if delta == 0 else (False, True)
    for swapped in swaps:
        chain = []
        n = 0
        while True:
            if ops.sector == "compact":
                n3 = 2 * l - k - n
            else:
                n3 = n + k - 2 * l
            if n3 < 0 or n3.denominator != 1:
                break
            occ = (n, n + delta, int(n3)) if not swapped else (n + delta, n, int(n3))
            if occ not in ops.space.index:
                break
            chain.append(ops.space.index[occ])
            if ops.sector == "compact" and n == int(2 * l - k):
                break
            n += 1
        if chain:
            chains.append(chain)
    return chains
