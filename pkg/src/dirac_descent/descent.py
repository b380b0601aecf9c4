"""Dimensional reduction of gamma sets.

Even to odd: an even set whose first ``d - 1`` matrices are block-diagonal
(and whose last matrix is block-off-diagonal) splits into the two diagonal
block families, two inequivalent odd sets of half the order.  Odd to even:
drop the last matrix.  Descent always removes the highest index.

Sets without built-in block form go through :func:`diagonalize_kappa`
first, which rotates to an eigenbasis of kappa in floating point.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, NamedTuple

import numpy as np

from .adapted import FACTORS, AdaptedSet
from .clifford import (
    GammaSet,
    NumericGammaSet,
    ParityError,
    StructureError,
    VerificationReport,
    chiral,
    classify_odd_pair,
    gamma_arrays,
    pseudoscalar_class,
)
from .exact import ExactMatrix, ExactScalar

__all__ = [
    "NotBlockStructuredError",
    "NumericError",
    "KappaFrame",
    "DescentNode",
    "is_block_structured",
    "split_even",
    "reembed",
    "diagonalize_kappa",
    "drop_last",
    "descend_chain",
    "verify_block_relations",
    "children_inequivalent",
]

BLOCK_TOL = 1e-10


class NotBlockStructuredError(StructureError):
    """Even set lacks the kappa-diagonal block form; diagonalize kappa first."""


class NumericError(RuntimeError):
    pass


def _halves(n: int) -> tuple[slice, slice]:
    h = n // 2
    return slice(0, h), slice(h, n)


def _block_violation(s: GammaSet | NumericGammaSet, tol: float) -> str | None:
    if not s.is_even:
        raise ParityError(f"block structure is defined for even sets, got d={s.dim}")
    if s.order % 2:
        return f"matrix order {s.order} is odd"
    up, lo = _halves(s.order)
    last = s.dim - 1
    for mu in range(s.dim):
        m = s[mu]
        pairs = ((up, lo), (lo, up)) if mu < last else ((up, up), (lo, lo))
        for r, c in pairs:
            if isinstance(m, ExactMatrix):
                bad = not m.submatrix(r, c).is_zero()
            else:
                bad = np.max(np.abs(m[r, c]), initial=0.0) > tol
            if bad:
                kind = "off-diagonal" if mu < last else "diagonal"
                return f"g^{mu} has a nonzero {kind} block"
    return None


def is_block_structured(s: GammaSet | NumericGammaSet, tol: float = BLOCK_TOL) -> bool:
    """``g^{mu'}`` block-diagonal and ``g^{d-1}`` block-off-diagonal (exact for GammaSet)."""
    return _block_violation(s, tol) is None


def _child_recipe(recipe, row: int):
    # upper/lower diagonal block of (factor (x) rest) is factor[row, row] * rest
    phase, tags = recipe
    head = FACTORS[tags[0]][row, row]
    q = head.quarter_phase()
    if q is None or len(tags) < 2:
        return None
    return (phase + q, tags[1:])


def split_even(s: GammaSet | NumericGammaSet, tol: float = BLOCK_TOL):
    """Split a block-structured even set into its ``(plus, minus)`` odd children.

    ``plus`` collects the upper-left blocks of ``g^0 ... g^{d-2}``, ``minus``
    the lower-right ones.  Adapted inputs yield adapted children (with
    Kronecker recipes); numeric inputs yield numeric children.
    """
    problem = _block_violation(s, tol)
    if problem:
        raise NotBlockStructuredError(problem)
    up, lo = _halves(s.order)
    n = s.dim - 1
    label = s.label or f"d={s.dim}"
    if isinstance(s, NumericGammaSet):
        plus = NumericGammaSet(n, [s[mu][up, up] for mu in range(n)], label + "/+")
        minus = NumericGammaSet(n, [s[mu][lo, lo] for mu in range(n)], label + "/-")
        return plus, minus
    plus_m = tuple(s[mu].submatrix(up, up) for mu in range(n))
    minus_m = tuple(s[mu].submatrix(lo, lo) for mu in range(n))
    if isinstance(s, AdaptedSet):
        recipes = [[_child_recipe(r, row) for r in s.kron_recipe[:n]] for row in (0, 1)]
        if all(r is not None for rs in recipes for r in rs):
            plus = AdaptedSet(n, plus_m, label + "/+", tuple(recipes[0]))
            minus = AdaptedSet(n, minus_m, label + "/-", tuple(recipes[1]))
            return plus, minus
    return GammaSet(n, plus_m, label + "/+"), GammaSet(n, minus_m, label + "/-")


def reembed(plus: GammaSet, minus: GammaSet, label: str = "") -> GammaSet:
    """Inverse of :func:`split_even` in the complementary pattern of adapted sets.

    ``g^{mu'} = diag(plus^{mu'}, minus^{mu'})`` and the new last matrix has
    off-diagonal blocks ``i plus^{last}`` and ``i minus^{last}``.
    """
    if plus.dim != minus.dim or plus.order != minus.order or plus.is_even:
        raise StructureError("reembedding needs two odd sets of equal dimension and order")
    z = ExactMatrix.zeros(plus.order)
    i = ExactScalar(0, 1)
    mats = [ExactMatrix.block([[a, z], [z, b]]) for a, b in zip(plus, minus)]
    mats.append(ExactMatrix.block([[z, plus[-1].scale(i)], [minus[-1].scale(i), z]]))
    return GammaSet(plus.dim + 1, tuple(mats), label)


class KappaFrame(NamedTuple):
    """Result of :func:`diagonalize_kappa`."""

    u: np.ndarray
    gammas: GammaSet | NumericGammaSet
    exact: bool


def _canonical_basis(projector: np.ndarray, rank: int, tol: float) -> np.ndarray:
    # Gram-Schmidt over the projector's columns in index order: independent of
    # the eigensolver's arbitrary rotation inside a degenerate eigenspace
    vecs = []
    for j in range(projector.shape[1]):
        v = projector[:, j].copy()
        for w in vecs:
            v -= (w.conj() @ v) * w
        norm = np.linalg.norm(v)
        if norm > tol:
            v = v / norm
            k = int(np.flatnonzero(np.abs(v) > tol)[0])
            v = v * (abs(v[k]) / v[k])
            vecs.append(v)
        if len(vecs) == rank:
            break
    if len(vecs) != rank:
        raise NumericError(f"found {len(vecs)} independent eigenvectors, expected {rank}")
    return np.array(vecs).T


def _snap_exact(arr: np.ndarray, max_log2_den: int, tol: float) -> ExactMatrix | None:
    scaled = arr * 2.0**max_log2_den
    re, im = np.rint(scaled.real), np.rint(scaled.imag)
    if np.max(np.abs(scaled.real - re)) > tol or np.max(np.abs(scaled.imag - im)) > tol:
        return None
    return ExactMatrix(re.astype(np.int64), im.astype(np.int64), max_log2_den)


def diagonalize_kappa(s: GammaSet | NumericGammaSet, tol: float = BLOCK_TOL) -> KappaFrame:
    """Rotate an even set so that kappa becomes ``diag(1_{N/2}, -1_{N/2})``.

    Returns the unitary ``u`` and the transformed set ``u g u^dagger``.  The
    transformed set is snapped back to exact arithmetic when every entry is
    within ``tol`` of the dyadic Gaussian lattice with denominator ``2N``;
    otherwise it is returned as a :class:`NumericGammaSet`.
    """
    if not s.is_even:
        raise ParityError(f"kappa is defined for even sets, got d={s.dim}")
    g = gamma_arrays(s)
    n = s.order
    ch = (1j ** (s.half_dim - 1)) * np.linalg.multi_dot(list(g)) if s.dim > 2 else g[0] @ g[1]
    k = g[-1] @ ch
    try:
        evals, vecs = np.linalg.eigh((k + k.conj().T) / 2)
    except np.linalg.LinAlgError as exc:
        raise NumericError(f"kappa eigendecomposition failed: {exc}") from exc
    if np.max(np.abs(np.abs(evals) - 1)) > 1e-8:
        raise NumericError("kappa eigenvalues are not +-1")
    n_plus = int(np.sum(evals > 0))
    if n_plus != n // 2:
        raise NumericError(f"kappa eigenvalue multiplicities ({n_plus}, {n - n_plus}) are not balanced")
    plus = vecs[:, evals > 0]
    minus = vecs[:, evals < 0]
    basis = np.hstack([_canonical_basis(plus @ plus.conj().T, n // 2, 1e-8),
                       _canonical_basis(minus @ minus.conj().T, n // 2, 1e-8)])
    u = basis.conj().T
    target = np.diag(np.r_[np.ones(n // 2), -np.ones(n // 2)])
    if np.max(np.abs(u @ k @ u.conj().T - target)) > tol:
        raise NumericError("rotation does not diagonalize kappa within tolerance")
    t = u @ g @ u.conj().T
    label = (s.label or f"d={s.dim}") + "|kappa-diag"
    lattice = int(np.log2(n)) + 1
    snapped = [_snap_exact(m, lattice, tol) for m in t]
    if all(m is not None for m in snapped):
        return KappaFrame(u, GammaSet(s.dim, tuple(snapped), label), True)
    return KappaFrame(u, NumericGammaSet(s.dim, t, label), False)


def drop_last(s: GammaSet | NumericGammaSet):
    """Odd to even: discard the last matrix, keeping the matrix order."""
    if s.is_even:
        raise ParityError(f"drop_last applies to odd sets, got d={s.dim}")
    label = (s.label or f"d={s.dim}") + "/drop"
    if isinstance(s, NumericGammaSet):
        return NumericGammaSet(s.dim - 1, s.matrices[:-1], label)
    if isinstance(s, AdaptedSet):
        return AdaptedSet(s.dim - 1, s.matrices[:-1], label, s.kron_recipe[:-1])
    return GammaSet(s.dim - 1, s.matrices[:-1], label)


@dataclass(eq=False)
class DescentNode:
    """One node of a descent tree."""

    gamma_set: GammaSet | NumericGammaSet
    parent: "DescentNode | None" = field(default=None, repr=False)
    branch: str = "root"
    children: list["DescentNode"] = field(default_factory=list, repr=False)

    def __post_init__(self):
        if self.branch not in ("root", "plus", "minus", "drop"):
            raise ValueError(f"unknown branch {self.branch!r}")
        if self.parent is not None:
            parent_even = self.parent.gamma_set.is_even
            if self.branch in ("plus", "minus") and not parent_even:
                raise StructureError("plus/minus branches only leave even sets")
            if self.branch == "drop" and parent_even:
                raise StructureError("drop branches only leave odd sets")

    @property
    def dim(self) -> int:
        return self.gamma_set.dim

    @property
    def path(self) -> str:
        marks = {"plus": "+", "minus": "-", "drop": "v"}
        node, parts = self, []
        while node.parent is not None:
            parts.append(marks[node.branch])
            node = node.parent
        return "".join(reversed(parts)) or "root"

    def walk(self) -> Iterator["DescentNode"]:
        yield self
        for c in self.children:
            yield from c.walk()

    def leaves(self) -> list["DescentNode"]:
        return [n for n in self.walk() if not n.children]

    def depth(self) -> int:
        return 0 if self.parent is None else 1 + self.parent.depth()

    def odd_class(self) -> int | None:
        if self.gamma_set.is_even:
            return None
        return pseudoscalar_class(self.gamma_set)

    def to_dict(self) -> dict:
        out = {
            "branch": self.branch,
            "path": self.path,
            "dim": self.dim,
            "order": self.gamma_set.order,
            "label": self.gamma_set.label,
        }
        if not self.gamma_set.is_even:
            out["pseudoscalar_class"] = self.odd_class()
        out["children"] = [c.to_dict() for c in self.children]
        return out


def descend_chain(s: GammaSet | NumericGammaSet, steps: int) -> DescentNode:
    """Iterate descent ``steps`` times: split even nodes, drop odd ones."""
    if not 0 <= steps <= s.dim - 2:
        raise ValueError(f"steps must be in [0, {s.dim - 2}] for d={s.dim}, got {steps}")
    root = DescentNode(s)
    frontier = [root]
    for _ in range(steps):
        nxt = []
        for node in frontier:
            gs = node.gamma_set
            if gs.is_even:
                plus, minus = split_even(gs)
                node.children = [DescentNode(plus, node, "plus"), DescentNode(minus, node, "minus")]
            else:
                node.children = [DescentNode(drop_last(gs), node, "drop")]
            nxt.extend(node.children)
        frontier = nxt
    return root


def verify_block_relations(s: GammaSet) -> VerificationReport:
    """Off-diagonal blocks of the last matrix are unitary and opposite inverses; chiral has the induced form."""
    problem = _block_violation(s, 0.0)
    if problem:
        raise NotBlockStructuredError(problem)
    up, lo = _halves(s.order)
    last = s[s.dim - 1]
    b_pm = last.submatrix(up, lo)
    b_mp = last.submatrix(lo, up)
    one = ExactMatrix.identity(s.order // 2)
    if b_pm @ b_pm.adjoint() != one or b_pm.adjoint() @ b_pm != one:
        return VerificationReport("block-relations", False, "B+- is not unitary")
    if b_pm.adjoint() != -b_mp:
        return VerificationReport("block-relations", False, "B+-^dagger != -B-+")
    z = ExactMatrix.zeros(s.order // 2)
    if chiral(s) != ExactMatrix.block([[z, b_pm], [-b_mp, z]]):
        return VerificationReport("block-relations", False, "chiral matrix is not [[0, B+-], [-B-+, 0]]")
    return VerificationReport("block-relations", True, "B+-^dagger = B+-^-1 = -B-+, chiral off-diagonal")


def children_inequivalent(s: GammaSet) -> bool:
    """The two split children fall in opposite odd classes."""
    plus, minus = split_even(s)
    return classify_odd_pair(plus, minus) == "inequivalent"
