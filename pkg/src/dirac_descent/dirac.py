"""Momentum-space Dirac operators ``D(p) = g^mu p_mu - m``.

Plane waves turn ``(i g^mu d_mu - m) Psi = 0`` into ``D(p) Psi = 0`` with
covariant momentum ``p_mu`` and metric ``diag(+1, -1, ..., -1)``.  The
descent condition on the last coordinate becomes ``p_{d-1} = 0``.

Double precision throughout; the gamma matrices are converted from exact
form on entry.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .clifford import GammaSet, NumericGammaSet, VerificationReport, gamma_arrays
from .descent import NotBlockStructuredError, is_block_structured, split_even
from .exact import DimensionError

__all__ = [
    "DescentConditionError",
    "Momentum",
    "DiracOperator",
    "ON_SHELL_TOL",
    "KERNEL_TOL",
    "dirac_operator",
    "dispersion_check",
    "determinant_deviation",
    "kernel_basis",
    "plane_wave_solutions",
    "reduced_operator",
    "reflection_pair_check",
    "reflection_equivalence_check",
    "dirac_adjoint",
    "lagrangian_density",
    "lagrangian_split_check",
    "random_momentum",
    "random_spinor",
    "spawn_generators",
]

ON_SHELL_TOL = 1e-8
KERNEL_TOL = 1e-8


class DescentConditionError(ValueError):
    """The momentum along the descended direction is not zero."""


@dataclass(frozen=True)
class Momentum:
    """Covariant momentum components ``p_mu`` and a mass ``m >= 0``."""

    components: tuple[float, ...]
    mass: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(float(x) for x in self.components))
        if self.mass < 0:
            raise ValueError(f"mass must be non-negative, got {self.mass}")

    @property
    def dim(self) -> int:
        return len(self.components)

    def square(self) -> float:
        """Minkowski square ``p.p = p_0^2 - sum_j p_j^2``."""
        p = np.asarray(self.components)
        return float(p[0] ** 2 - np.sum(p[1:] ** 2))

    def mass_shell(self) -> float:
        """``p.p - m^2``; zero on shell."""
        return self.square() - self.mass**2

    def scale(self) -> float:
        """``|p| + m`` with the Euclidean norm of the components."""
        return float(np.linalg.norm(self.components)) + self.mass

    def is_on_shell(self, tol: float = ON_SHELL_TOL) -> bool:
        return abs(self.mass_shell()) <= tol * max(self.scale() ** 2, 1.0)

    def truncated(self) -> "Momentum":
        """Drop the last component."""
        return Momentum(self.components[:-1], self.mass)

    def reflected(self) -> "Momentum":
        """Negate the last component."""
        return Momentum(self.components[:-1] + (-self.components[-1],), self.mass)

    def extended(self, value: float = 0.0) -> "Momentum":
        return Momentum(self.components + (float(value),), self.mass)


@dataclass(frozen=True)
class DiracOperator:
    matrix: np.ndarray
    momentum: Momentum
    set_label: str = ""

    @property
    def order(self) -> int:
        return self.matrix.shape[0]


def _gammas(s: GammaSet | NumericGammaSet, p: Momentum) -> np.ndarray:
    if p.dim != s.dim:
        raise DimensionError(f"momentum has {p.dim} components, gamma set has dimension {s.dim}")
    return gamma_arrays(s)


def _assemble(g: np.ndarray, p: Momentum) -> np.ndarray:
    # fixed summation order keeps block and reflection identities bit-exact
    d = np.zeros(g.shape[1:], dtype=np.complex128)
    for mu, p_mu in enumerate(p.components):
        d = d + g[mu] * p_mu
    return d - p.mass * np.eye(g.shape[1])


def dirac_operator(s: GammaSet | NumericGammaSet, p: Momentum) -> DiracOperator:
    """``D(p) = g^mu p_mu - m 1``."""
    return DiracOperator(_assemble(_gammas(s, p), p), p, s.label)


def dispersion_check(s: GammaSet | NumericGammaSet, p: Momentum) -> float:
    """Max-norm of ``(g.p - m)(g.p + m) - (p.p - m^2) 1``; zero up to rounding."""
    d = dirac_operator(s, p).matrix
    n = d.shape[0]
    lhs = d @ (d + 2 * p.mass * np.eye(n))
    return float(np.max(np.abs(lhs - p.mass_shell() * np.eye(n))))


def determinant_deviation(s: GammaSet | NumericGammaSet, p: Momentum) -> float:
    """Relative deviation of ``|det D(p)|`` from ``|p.p - m^2|^{N/2}``."""
    d = dirac_operator(s, p).matrix
    n = d.shape[0]
    sign, logdet = np.linalg.slogdet(d)
    shell = abs(p.mass_shell())
    if shell == 0.0:
        return float(np.exp(logdet) if sign != 0 else 0.0)
    expected_log = (n / 2) * np.log(shell)
    if sign == 0:
        return 1.0
    return float(abs(np.expm1(logdet - expected_log)))


def kernel_basis(matrix: np.ndarray, rel_tol: float = KERNEL_TOL) -> np.ndarray:
    """Orthonormal null-space basis as columns, canonically ordered.

    Singular values below ``rel_tol`` times the largest count as zero.  The
    basis is rebuilt by Gram-Schmidt on the columns of the kernel projector
    and each vector's first nonzero component is made real-positive, so the
    output does not depend on the SVD's internal choices.
    """
    matrix = np.asarray(matrix, dtype=np.complex128)
    n = matrix.shape[1]
    _, sv, vh = np.linalg.svd(matrix)
    top = sv[0] if sv.size else 0.0
    if top == 0.0:
        null = np.eye(n, dtype=np.complex128)
    else:
        rank = int(np.sum(sv > rel_tol * top))
        null = vh[rank:].conj().T
    k = null.shape[1]
    if k == 0:
        return np.zeros((n, 0), dtype=np.complex128)
    proj = null @ null.conj().T
    vecs = []
    for j in range(n):
        v = proj[:, j].copy()
        for w in vecs:
            v -= (w.conj() @ v) * w
        norm = np.linalg.norm(v)
        if norm > 1e-8:
            v /= norm
            lead = v[np.flatnonzero(np.abs(v) > 1e-8)[0]]
            vecs.append(v * (abs(lead) / lead))
        if len(vecs) == k:
            break
    return np.array(vecs).T


def plane_wave_solutions(s: GammaSet | NumericGammaSet, p: Momentum, tol: float = ON_SHELL_TOL) -> np.ndarray:
    """Orthonormal basis (columns) of plane-wave spinors with ``D(p) Psi = 0``.

    Off-shell momenta have no solutions and give an empty ``(N, 0)`` basis.
    """
    if p.mass == 0 and not any(p.components):
        raise ValueError("p = 0 with m = 0 makes D(p) vanish identically")
    d = dirac_operator(s, p).matrix
    if not p.is_on_shell(tol):
        return np.zeros((d.shape[0], 0), dtype=np.complex128)
    return kernel_basis(d, KERNEL_TOL)


def _require_descent(p: Momentum):
    if p.components[-1] != 0.0:
        raise DescentConditionError(f"descent needs p_(d-1) = 0, got {p.components[-1]}")


def reduced_operator(s: GammaSet, p: Momentum) -> tuple[np.ndarray, np.ndarray]:
    """Diagonal blocks of ``D(p)`` for a block-structured even set with ``p_{d-1} = 0``.

    The off-diagonal blocks are checked to vanish exactly.
    """
    _require_descent(p)
    if not is_block_structured(s, 0.0):
        raise NotBlockStructuredError("even set is not in kappa-diagonal block form")
    d = dirac_operator(s, p).matrix
    h = d.shape[0] // 2
    if np.any(d[:h, h:] != 0) or np.any(d[h:, :h] != 0):
        raise AssertionError("off-diagonal blocks of D(p) did not vanish")
    return d[:h, :h].copy(), d[h:, h:].copy()


def reflection_pair_check(plus: GammaSet, minus: GammaSet, p: Momentum) -> VerificationReport:
    """``D_minus(p) == D_plus(p with its last component negated)``, bit for bit."""
    d_minus = dirac_operator(minus, p).matrix
    d_plus = dirac_operator(plus, p.reflected()).matrix
    if np.array_equal(d_minus, d_plus):
        return VerificationReport("reflection", True, "D-(p) = D+(p reflected in the last coordinate)")
    dev = float(np.max(np.abs(d_minus - d_plus)))
    return VerificationReport("reflection", False, f"max deviation {dev:.3g}", value=dev)


def reflection_equivalence_check(s_even: GammaSet, p: Momentum) -> VerificationReport:
    """Reflection identity between the two split children of an even set.

    ``p`` is the truncated momentum, with ``d - 1`` components.
    """
    plus, minus = split_even(s_even)
    return reflection_pair_check(plus, minus, p)


def dirac_adjoint(s: GammaSet | NumericGammaSet, psi) -> np.ndarray:
    """Row covector ``Psi^dagger g^0``."""
    psi = np.asarray(psi, dtype=np.complex128)
    g0 = gamma_arrays(s)[0]
    if psi.shape != (g0.shape[0],):
        raise DimensionError(f"spinor has shape {psi.shape}, expected ({g0.shape[0]},)")
    return psi.conj() @ g0


def lagrangian_density(s: GammaSet | NumericGammaSet, psi, p: Momentum) -> complex:
    """Plane-wave Lagrangian ``Psi-bar D(p) Psi``."""
    psi = np.asarray(psi, dtype=np.complex128)
    return complex(dirac_adjoint(s, psi) @ dirac_operator(s, p).matrix @ psi)


def lagrangian_split_check(s: GammaSet, psi, p: Momentum, rel_tol: float = 1e-10) -> VerificationReport:
    """The reduced Lagrangian equals the sum of the two child Lagrangians."""
    _require_descent(p)
    psi = np.asarray(psi, dtype=np.complex128)
    reduced = GammaSet(s.dim - 1, s.matrices[:-1], s.label)
    full = lagrangian_density(reduced, psi, p.truncated())
    plus, minus = split_even(s)
    h = s.order // 2
    q = p.truncated()
    parts = lagrangian_density(plus, psi[:h], q) + lagrangian_density(minus, psi[h:], q)
    scale = max(float(np.vdot(psi, psi).real) * p.scale(), np.finfo(float).tiny)
    dev = abs(full - parts) / scale
    passed = dev <= rel_tol
    return VerificationReport("lagrangian-split", passed, f"relative deviation {dev:.3g}", value=dev)


def spawn_generators(seed: int, n: int) -> list[np.random.Generator]:
    """Independent generators from one seed, reproducible regardless of scheduling."""
    return [np.random.default_rng(s) for s in np.random.SeedSequence(seed).spawn(n)]


def random_momentum(rng: np.random.Generator, dim: int, on_shell: bool = False, max_abs: float = 2.0,
                    descent: bool = False) -> Momentum:
    """Random momentum; ``on_shell`` fixes ``p_0``, ``descent`` zeroes the last component."""
    comps = rng.uniform(-max_abs, max_abs, size=dim)
    mass = float(rng.uniform(0.0, max_abs))
    if descent:
        comps[-1] = 0.0
    if on_shell:
        comps[0] = np.sqrt(np.sum(comps[1:] ** 2) + mass**2)
    return Momentum(tuple(comps), mass)


def random_spinor(rng: np.random.Generator, n: int) -> np.ndarray:
    return rng.normal(size=n) + 1j * rng.normal(size=n)
