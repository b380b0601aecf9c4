"""Representation-independent Clifford-algebra machinery.

Everything here works on a :class:`GammaSet` of exact matrices with the
Minkowski metric ``diag(+1, -1, ..., -1)``.  Verification functions return
:class:`VerificationReport` objects instead of raising, so that callers can
print diagnostics; structural impossibilities (wrong parity, index out of
range, order mismatch) raise.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from typing import Iterator, Sequence

import numpy as np

from .exact import HALF, I, ExactMatrix, ExactScalar, ZERO

__all__ = [
    "ParityError",
    "MalformedSetError",
    "GroupBlowUpError",
    "StructureError",
    "GammaSet",
    "NumericGammaSet",
    "gamma_arrays",
    "OrderedProduct",
    "MatrixGroup",
    "VerificationReport",
    "metric",
    "verify_clifford",
    "verify_hermiticity",
    "verify_traceless",
    "normal_order",
    "combine",
    "materialize",
    "chiral",
    "pseudoscalar",
    "pseudoscalar_class",
    "kappa",
    "kappa_word",
    "kappa_projectors",
    "commutant_basis",
    "lorentz_generators",
    "group_closure",
    "direct_sum_closure",
    "block_characters",
    "character_inner_product",
    "character_orthogonality",
    "classify_odd_pair",
    "similar",
]

DEFAULT_MAX_GROUP = 10**5


class ParityError(ValueError):
    """Operation defined only for even (or only for odd) dimension."""


class MalformedSetError(ValueError):
    """A gamma set violates a structural property the operation relies on."""


class GroupBlowUpError(RuntimeError):
    """Group closure exceeded the configured element bound."""


class StructureError(ValueError):
    """Block or word structure does not match what the operation requires."""


def metric(mu: int, nu: int | None = None) -> int:
    """Minkowski metric entry; ``metric(mu)`` is the diagonal ``eta^{mu mu}``."""
    if nu is not None and nu != mu:
        return 0
    return 1 if mu == 0 else -1


@dataclass(frozen=True)
class GammaSet:
    """A ``dim``-dimensional set of exact gamma matrices."""

    dim: int
    matrices: tuple[ExactMatrix, ...]
    label: str = ""

    def __post_init__(self):
        object.__setattr__(self, "matrices", tuple(self.matrices))
        if self.dim < 1:
            raise MalformedSetError(f"dimension must be positive, got {self.dim}")
        if len(self.matrices) != self.dim:
            raise MalformedSetError(f"expected {self.dim} matrices, got {len(self.matrices)}")
        orders = {m.order for m in self.matrices}
        if len(orders) != 1:
            raise MalformedSetError(f"matrices have differing orders {sorted(orders)}")

    @property
    def order(self) -> int:
        return self.matrices[0].order

    @property
    def half_dim(self) -> int:
        """``l`` with ``dim = 2l`` or ``dim = 2l + 1``."""
        return self.dim // 2

    @property
    def is_even(self) -> bool:
        return self.dim % 2 == 0

    def __getitem__(self, mu: int) -> ExactMatrix:
        return self.matrices[mu]

    def __iter__(self) -> Iterator[ExactMatrix]:
        return iter(self.matrices)

    def __len__(self) -> int:
        return self.dim

    def __eq__(self, other):
        if not isinstance(other, GammaSet):
            return NotImplemented
        return self.dim == other.dim and self.matrices == other.matrices

    def __hash__(self):
        return hash((self.dim, self.matrices))

    def conjugated(self, u: ExactMatrix, label: str | None = None) -> "GammaSet":
        """Representation change ``gamma -> U gamma U^dagger``."""
        ud = u.adjoint()
        return GammaSet(self.dim, tuple(u @ g @ ud for g in self.matrices), label if label is not None else self.label)

    def relabel(self, label: str) -> "GammaSet":
        return GammaSet(self.dim, self.matrices, label)

    def with_matrix(self, mu: int, m: ExactMatrix, label: str | None = None) -> "GammaSet":
        mats = list(self.matrices)
        mats[mu] = m
        return GammaSet(self.dim, tuple(mats), self.label if label is None else label)


class NumericGammaSet:
    """Gamma set held as a ``(d, N, N)`` complex array, e.g. after a floating similarity."""

    def __init__(self, dim: int, matrices, label: str = ""):
        arr = np.array(matrices, dtype=np.complex128)
        if arr.ndim != 3 or arr.shape[0] != dim or arr.shape[1] != arr.shape[2]:
            raise MalformedSetError(f"expected shape ({dim}, N, N), got {arr.shape}")
        arr.setflags(write=False)
        self.dim, self.matrices, self.label = dim, arr, label

    @classmethod
    def from_exact(cls, s: GammaSet) -> "NumericGammaSet":
        return cls(s.dim, [m.to_complex() for m in s], s.label)

    @property
    def order(self) -> int:
        return self.matrices.shape[1]

    @property
    def half_dim(self) -> int:
        return self.dim // 2

    @property
    def is_even(self) -> bool:
        return self.dim % 2 == 0

    def __getitem__(self, mu: int) -> np.ndarray:
        return self.matrices[mu]

    def __len__(self):
        return self.dim

    def conjugated(self, u: np.ndarray, label: str | None = None) -> "NumericGammaSet":
        u = np.asarray(u, dtype=np.complex128)
        mats = u @ self.matrices @ u.conj().T
        return NumericGammaSet(self.dim, mats, self.label if label is None else label)

    def __repr__(self):
        return f"NumericGammaSet(dim={self.dim}, order={self.order}, label={self.label!r})"


def gamma_arrays(s: GammaSet | NumericGammaSet) -> np.ndarray:
    """Complex ``(d, N, N)`` array of the gamma matrices."""
    if isinstance(s, NumericGammaSet):
        return s.matrices
    return np.stack([m.to_complex() for m in s])


@dataclass(frozen=True)
class VerificationReport:
    check: str
    passed: bool
    detail: str = ""
    failing: object = None
    value: float | None = None

    def __bool__(self):
        return self.passed

    def line(self) -> str:
        tag = "PASS" if self.passed else "FAIL"
        return f"{tag} {self.check}" + (f": {self.detail}" if self.detail else "")


def _require_even(s: GammaSet, what: str):
    if not s.is_even:
        raise ParityError(f"{what} requires an even dimension, got d={s.dim}")


def _require_odd(s: GammaSet, what: str):
    if s.is_even:
        raise ParityError(f"{what} requires an odd dimension, got d={s.dim}")


def verify_clifford(s: GammaSet) -> VerificationReport:
    """Check ``{g^mu, g^nu} = 2 eta^{mu nu} 1`` exactly for all ``mu <= nu``."""
    one = ExactMatrix.identity(s.order)
    for mu in range(s.dim):
        for nu in range(mu, s.dim):
            a, b = s[mu], s[nu]
            anti = a @ b + b @ a
            expected = one.scale(2 * metric(mu, nu))
            if anti != expected:
                return VerificationReport(
                    "clifford", False, f"anticommutator of ({mu},{nu}) != {2 * metric(mu, nu)}*1", (mu, nu)
                )
    return VerificationReport("clifford", True, f"{s.dim * (s.dim + 1) // 2} anticommutators exact")


def verify_hermiticity(s: GammaSet) -> VerificationReport:
    """Check ``(g^mu)^dagger = g^0 g^mu g^0`` and unitarity of every matrix."""
    g0 = s[0]
    one = ExactMatrix.identity(s.order)
    for mu, g in enumerate(s):
        if g.adjoint() != g0 @ g @ g0:
            return VerificationReport("hermiticity", False, f"(g^{mu})^dagger != g^0 g^{mu} g^0", mu)
        if g @ g.adjoint() != one:
            return VerificationReport("hermiticity", False, f"g^{mu} is not unitary", mu)
    return VerificationReport("hermiticity", True, "g^0 hermitian, spatial anti-hermitian, all unitary")


def verify_traceless(s: GammaSet) -> VerificationReport:
    for mu, g in enumerate(s):
        tr = g.trace()
        if tr:
            return VerificationReport("traceless", False, f"trace(g^{mu}) = {tr}", mu)
    return VerificationReport("traceless", True)


# ordered products ------------------------------------------------------


@dataclass(frozen=True)
class OrderedProduct:
    """``i**phase`` times the ordered product of the listed gamma matrices."""

    indices: tuple[int, ...] = ()
    phase: int = 0

    def __post_init__(self):
        idx = tuple(int(i) for i in self.indices)
        if any(b <= a for a, b in zip(idx, idx[1:])):
            raise ValueError(f"indices must be strictly increasing: {idx}")
        object.__setattr__(self, "indices", idx)
        object.__setattr__(self, "phase", int(self.phase) % 4)

    @property
    def rank(self) -> int:
        return len(self.indices)

    def coefficient(self) -> ExactScalar:
        return ExactScalar.quarter(self.phase)

    def __str__(self):
        coef = ("", "i", "-", "-i")[self.phase]
        body = "gamma^{" + "".join(map(str, self.indices)) + "}" if self.indices else "1"
        return coef + body


def _check_indices(s: GammaSet | int, seq: Sequence[int]) -> int:
    dim = s if isinstance(s, int) else s.dim
    for mu in seq:
        if not 0 <= mu < dim:
            raise IndexError(f"gamma index {mu} out of range for d={dim}")
    return dim


def normal_order(s: GammaSet | int, seq: Sequence[int]) -> OrderedProduct:
    """Rewrite a word of gamma matrices as ``i**phase * gamma^{sorted indices}``.

    Purely combinatorial: each swap of distinct neighbours costs a sign and
    each adjacent equal pair collapses to its metric sign.  No matrices are
    multiplied.
    """
    _check_indices(s, seq)
    seq = list(seq)
    inversions = sum(1 for a, b in itertools.combinations(seq, 2) if a > b)
    counts: dict[int, int] = {}
    for mu in seq:
        counts[mu] = counts.get(mu, 0) + 1
    square_signs = sum(c // 2 for mu, c in counts.items() if metric(mu) < 0)
    survivors = tuple(sorted(mu for mu, c in counts.items() if c % 2))
    return OrderedProduct(survivors, 2 * (inversions + square_signs))


def combine(s: GammaSet | int, a: OrderedProduct, b: OrderedProduct) -> OrderedProduct:
    """Product of two ordered products, again in normal order."""
    word = normal_order(s, a.indices + b.indices)
    return OrderedProduct(word.indices, word.phase + a.phase + b.phase)


def materialize(s: GammaSet, p: OrderedProduct) -> ExactMatrix:
    _check_indices(s, p.indices)
    out = ExactMatrix.identity(s.order)
    for mu in p.indices:
        out = out @ s[mu]
    return out.scale(p.coefficient()) if p.phase else out


def _word_product(s: GammaSet, seq: Sequence[int]) -> ExactMatrix:
    out = ExactMatrix.identity(s.order)
    for mu in seq:
        out = out @ s[mu]
    return out


# chiral matrix, pseudoscalar, kappa ------------------------------------


def chiral(s: GammaSet) -> ExactMatrix:
    """``i**(l-1) g^0 ... g^{2l-1}`` for ``d = 2l``."""
    _require_even(s, "chiral matrix")
    return materialize(s, OrderedProduct(tuple(range(s.dim)), s.half_dim - 1))


def pseudoscalar(s: GammaSet) -> ExactMatrix:
    """Full ordered product ``g^0 ... g^{d-1}``."""
    return _word_product(s, range(s.dim))


def pseudoscalar_class(s: GammaSet | NumericGammaSet, tol: float = 1e-10) -> int:
    """Sign ``eps`` with ``g^0 ... g^{2l} = eps * i**l * 1`` in odd dimension.

    Exact for :class:`GammaSet`; a :class:`NumericGammaSet` is compared
    entrywise within ``tol``.
    """
    _require_odd(s, "pseudoscalar class")
    if isinstance(s, NumericGammaSet):
        top = np.linalg.multi_dot(list(s.matrices))
        base = (1j**s.half_dim) * np.eye(s.order)
        for eps in (1, -1):
            if np.max(np.abs(top - eps * base)) <= tol:
                return eps
        raise MalformedSetError(f"g^0...g^{s.dim - 1} is not +-i^{s.half_dim} times the identity")
    top = pseudoscalar(s)
    base = ExactMatrix.identity(s.order).scale(ExactScalar.quarter(s.half_dim))
    if top == base:
        return 1
    if top == -base:
        return -1
    raise MalformedSetError(f"g^0...g^{s.dim - 1} is not +-i^{s.half_dim} times the identity")


def kappa(s: GammaSet) -> ExactMatrix:
    """``g^{d-1} g^ch``: the charge that commutes with all but the last gamma."""
    _require_even(s, "kappa")
    return s[s.dim - 1] @ chiral(s)


def kappa_word(s: GammaSet | int) -> OrderedProduct:
    """Normal-ordered form of ``g^{d-1} g^ch`` (always proportional to ``g^{0..d-2}``)."""
    dim = s if isinstance(s, int) else s.dim
    if dim % 2:
        raise ParityError(f"kappa requires an even dimension, got d={dim}")
    word = normal_order(dim, [dim - 1, *range(dim)])
    return OrderedProduct(word.indices, word.phase + dim // 2 - 1)


def kappa_projectors(s: GammaSet) -> tuple[ExactMatrix, ExactMatrix]:
    """``P+- = (1 +- kappa) / 2``."""
    k = kappa(s)
    one = ExactMatrix.identity(s.order)
    return (one + k).scale(HALF), (one - k).scale(HALF)


def _subset_products(s: GammaSet) -> Iterator[tuple[tuple[int, ...], ExactMatrix]]:
    # depth-first keeps only O(d) partial products alive
    def walk(start, indices, mat):
        yield indices, mat
        for mu in range(start, s.dim):
            yield from walk(mu + 1, indices + (mu,), mat @ s[mu])

    yield from walk(0, (), ExactMatrix.identity(s.order))


def commutant_basis(s: GammaSet, preserved: int | None = None) -> list[OrderedProduct]:
    """Ordered-product basis elements commuting with ``g^0 ... g^{preserved-1}``.

    Scans all ``2**d`` ordered products (phase 0) and keeps those that
    commute exactly with every retained gamma.  Defaults to ``d - 1``
    retained matrices.
    """
    _require_even(s, "commutant basis")
    k = s.dim - 1 if preserved is None else preserved
    if not 0 <= k <= s.dim:
        raise ValueError(f"preserved count must be in [0, {s.dim}], got {k}")
    kept = []
    for indices, mat in _subset_products(s):
        if all(mat.commutes_with(s[mu]) for mu in range(k)):
            kept.append(OrderedProduct(indices, 0))
    return sorted(kept, key=lambda p: (p.rank, p.indices))


def lorentz_generators(s: GammaSet) -> dict[tuple[int, int], ExactMatrix]:
    """Spinor Lorentz generators ``(i/2) g^mu g^nu`` keyed by ``(mu, nu)``, ``mu < nu``."""
    coef = I * HALF
    return {(mu, nu): (s[mu] @ s[nu]).scale(coef) for mu, nu in itertools.combinations(range(s.dim), 2)}


# finite groups ---------------------------------------------------------


@dataclass(frozen=True)
class MatrixGroup:
    """A finite group of exact matrices, listed in breadth-first discovery order."""

    elements: tuple[ExactMatrix, ...]
    generator_indices: tuple[int, ...]
    _index: dict = field(default=None, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "_index", {m.key(): i for i, m in enumerate(self.elements)})

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, m: ExactMatrix):
        return m.key() in self._index

    def index(self, m: ExactMatrix) -> int:
        return self._index[m.key()]

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def matrix_order(self) -> int:
        return self.elements[0].order


def group_closure(generators: Sequence[ExactMatrix], max_elements: int = DEFAULT_MAX_GROUP) -> MatrixGroup:
    """Breadth-first closure of ``generators`` under multiplication."""
    generators = list(generators)
    if not generators:
        raise ValueError("need at least one generator")
    one = ExactMatrix.identity(generators[0].order)
    elements = [one]
    seen = {one.key(): 0}
    queue = deque([one])
    while queue:
        x = queue.popleft()
        for g in generators:
            y = x @ g
            key = y.key()
            if key not in seen:
                seen[key] = len(elements)
                elements.append(y)
                queue.append(y)
                if len(elements) > max_elements:
                    raise GroupBlowUpError(f"closure exceeded {max_elements} elements")
    gens = tuple(seen[g.key()] for g in generators)
    return MatrixGroup(tuple(elements), gens)


def direct_sum_closure(set_a: GammaSet, set_b: GammaSet, max_elements: int = DEFAULT_MAX_GROUP) -> MatrixGroup:
    """Closure of the block-diagonal generators ``diag(a^mu, b^mu)``.

    Each element carries the images of one abstract group element in both
    representations, so characters of ``set_a`` and ``set_b`` are read off
    the two diagonal blocks of the same element.
    """
    if set_a.dim != set_b.dim or set_a.order != set_b.order:
        raise StructureError("both sets need the same dimension and matrix order")
    z = ExactMatrix.zeros(set_a.order)
    gens = [ExactMatrix.block([[a, z], [z, b]]) for a, b in zip(set_a, set_b)]
    return group_closure(gens, max_elements)


def block_characters(group: MatrixGroup, block: int, n_blocks: int = 2) -> list[ExactScalar]:
    """Trace of diagonal block ``block`` for each element, checking block-diagonality."""
    size, rem = divmod(group.matrix_order, n_blocks)
    if rem:
        raise StructureError(f"matrix order {group.matrix_order} not divisible into {n_blocks} blocks")
    lo, hi = block * size, (block + 1) * size
    chars = []
    for g in group:
        for other in range(n_blocks):
            if other != block and not g.submatrix(slice(lo, hi), slice(other * size, (other + 1) * size)).is_zero():
                raise StructureError("group element is not block-diagonal")
        chars.append(g.submatrix(slice(lo, hi), slice(lo, hi)).trace())
    return chars


def character_inner_product(group: MatrixGroup, left: int, right: int) -> ExactScalar:
    """``sum_g conj(chi_left(g)) chi_right(g)`` over a block-diagonal group."""
    ca = block_characters(group, left)
    cb = block_characters(group, right)
    total = ZERO
    for a, b in zip(ca, cb):
        total = total + a.conjugate() * b
    return total


def character_orthogonality(set_a: GammaSet, set_b: GammaSet, group: MatrixGroup | None = None) -> ExactScalar:
    """Character inner product of two odd sets over the group they jointly generate.

    Zero certifies that the two sets are inequivalent representations.
    ``group`` defaults to :func:`direct_sum_closure` of the two sets and must
    otherwise consist of block-diagonal elements whose blocks have the
    order of the sets.
    """
    if group is None:
        group = direct_sum_closure(set_a, set_b)
    if group.matrix_order != set_a.order + set_b.order:
        raise StructureError(
            f"group acts on order {group.matrix_order}, sets need {set_a.order} + {set_b.order}"
        )
    return character_inner_product(group, 0, 1)


def classify_odd_pair(a: GammaSet | NumericGammaSet, b: GammaSet | NumericGammaSet) -> str:
    """``"equivalent"`` or ``"inequivalent"``, decided by the pseudoscalar class."""
    if a.dim != b.dim:
        raise ValueError(f"dimension mismatch: {a.dim} vs {b.dim}")
    if a.is_even:
        raise ParityError("classification applies to odd-dimensional sets")
    return "equivalent" if pseudoscalar_class(a) == pseudoscalar_class(b) else "inequivalent"


def similar(a: GammaSet, b: GammaSet, u: ExactMatrix) -> bool:
    """True iff ``b^mu = U a^mu U^dagger`` for every ``mu``."""
    return a.dim == b.dim and a.conjugated(u).matrices == b.matrices
