"""The adapted sequence of gamma matrices.

Starting from the seed ``(sigma3, i sigma2)`` in two dimensions, each even
step prepends a 2x2 Kronecker factor::

    g^{mu''}_(2l+2) = 1_2      (x) g^{mu''}_(2l)
    g^{2l}_(2l+2)   = -i s3    (x) g^ch_(2l)
    g^{2l+1}_(2l+2) =  i s2    (x) g^ch_(2l)

and odd dimensions are filled with ``g^{2l}_(2l+1) = -i g^ch_(2l)``.
All matrices are monomial with entries in ``{0, +-1, +-i}``, kappa is
``sigma3 (x) 1`` and the chiral matrix is the exchange matrix.

Every matrix also carries its Kronecker recipe: a quarter phase and a
tuple of 2x2 factor tags, left factor first.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache, reduce

from .clifford import GammaSet, ParityError, VerificationReport, chiral
from .exact import ExactMatrix, ExactScalar

__all__ = [
    "DEFAULT_MAX_DIM",
    "FACTORS",
    "SIGMA0",
    "SIGMA1",
    "SIGMA2",
    "SIGMA3",
    "ISIGMA2",
    "Recipe",
    "AdaptedSet",
    "adapted_base",
    "adapted_step_even",
    "adapted_fill_odd",
    "conjugate_odd",
    "adapted",
    "chiral_recipe",
    "verify_exchange_chiral",
]

DEFAULT_MAX_DIM = 16

SIGMA0 = ExactMatrix.identity(2)
SIGMA1 = ExactMatrix.from_rows([[0, 1], [1, 0]])
SIGMA2 = ExactMatrix.from_rows([[0, -1j], [1j, 0]])
SIGMA3 = ExactMatrix.from_rows([[1, 0], [0, -1]])
ISIGMA2 = ExactMatrix.from_rows([[0, 1], [-1, 0]])

# the six order-2 building blocks of the construction (seed, seed chiral, left factors)
FACTORS: dict[str, ExactMatrix] = {
    "1": SIGMA0,
    "s1": SIGMA1,
    "s3": SIGMA3,
    "is2": ISIGMA2,
    "-is3": SIGMA3.scale(ExactScalar(0, -1)),
}

Recipe = tuple[int, tuple[str, ...]]


def _materialize_recipe(recipe: Recipe) -> ExactMatrix:
    phase, tags = recipe
    m = reduce(lambda acc, t: acc.kron(FACTORS[t]), tags[1:], FACTORS[tags[0]])
    return m.scale(ExactScalar.quarter(phase)) if phase % 4 else m


def chiral_recipe(half_dim: int) -> Recipe:
    """Recipe of the adapted chiral matrix in ``d = 2 * half_dim``: ``sigma1`` to the Kronecker power."""
    return (0, ("s1",) * half_dim)


@dataclass(frozen=True, eq=False)
class AdaptedSet(GammaSet):
    """A gamma set of the adapted sequence, with one Kronecker recipe per matrix."""

    kron_recipe: tuple[Recipe, ...] = ()

    def __post_init__(self):
        super().__post_init__()
        recipe = tuple((int(p) % 4, tuple(tags)) for p, tags in self.kron_recipe)
        object.__setattr__(self, "kron_recipe", recipe)
        if len(recipe) != self.dim:
            raise ValueError(f"expected {self.dim} recipes, got {len(recipe)}")

    @classmethod
    def from_recipe(cls, dim: int, recipe, label: str = "") -> "AdaptedSet":
        mats = tuple(_materialize_recipe(r) for r in recipe)
        return cls(dim, mats, label, tuple(recipe))

    @property
    def base(self) -> GammaSet:
        return GammaSet(self.dim, self.matrices, self.label)

    def recipe_matches(self) -> bool:
        """Re-materialise every recipe and compare exactly with the stored matrices."""
        return all(_materialize_recipe(r) == m for r, m in zip(self.kron_recipe, self.matrices))

    def describe(self) -> list[str]:
        """Human-readable Kronecker factorisation of each matrix."""
        names = {"1": "1", "s1": "s1", "s3": "s3", "is2": "i s2", "-is3": "-i s3"}
        phases = ("", "i ", "-", "-i ")
        out = []
        for mu, (phase, tags) in enumerate(self.kron_recipe):
            out.append(f"g^{mu} = {phases[phase]}" + " (x) ".join(names[t] for t in tags))
        return out


def adapted_base() -> AdaptedSet:
    """The two-dimensional seed ``g^0 = sigma3``, ``g^1 = i sigma2``."""
    return AdaptedSet.from_recipe(2, ((0, ("s3",)), (0, ("is2",))), "adapted(2)")


def adapted_step_even(s: AdaptedSet) -> AdaptedSet:
    """Lift an even adapted set of dimension ``2l`` to dimension ``2l + 2``."""
    if not s.is_even:
        raise ParityError(f"even step needs an even set, got d={s.dim}")
    ch = chiral_recipe(s.half_dim)[1]
    recipe = [(p, ("1",) + tags) for p, tags in s.kron_recipe]
    recipe.append((0, ("-is3",) + ch))
    recipe.append((0, ("is2",) + ch))
    return AdaptedSet.from_recipe(s.dim + 2, recipe, f"adapted({s.dim + 2})")


def adapted_fill_odd(s: AdaptedSet) -> AdaptedSet:
    """Append ``-i g^ch`` to an even adapted set."""
    if not s.is_even:
        raise ParityError(f"odd fill needs an even set, got d={s.dim}")
    recipe = list(s.kron_recipe) + [(3, chiral_recipe(s.half_dim)[1])]
    return AdaptedSet.from_recipe(s.dim + 1, recipe, f"adapted({s.dim + 1})")


def conjugate_odd(s: AdaptedSet) -> AdaptedSet:
    """Flip the sign of the last matrix; lands in the other odd equivalence class."""
    if s.is_even:
        raise ParityError(f"conjugation applies to odd sets, got d={s.dim}")
    recipe = list(s.kron_recipe)
    phase, tags = recipe[-1]
    recipe[-1] = (phase + 2, tags)
    label = s.label[:-5] if s.label.endswith("[bar]") else s.label + "[bar]"
    return AdaptedSet.from_recipe(s.dim, recipe, label)


@lru_cache(maxsize=None)
def _adapted_cached(d: int) -> AdaptedSet:
    if d == 2:
        return adapted_base()
    if d % 2:
        return adapted_fill_odd(_adapted_cached(d - 1))
    return adapted_step_even(_adapted_cached(d - 2))


def adapted(d: int, max_dim: int = DEFAULT_MAX_DIM) -> AdaptedSet:
    """The adapted gamma set in dimension ``d`` (``2 <= d <= max_dim``)."""
    if not 2 <= d <= max_dim:
        raise ValueError(f"dimension must be in [2, {max_dim}], got {d}")
    return _adapted_cached(d)


def verify_exchange_chiral(s: GammaSet) -> VerificationReport:
    """The chiral matrix equals the exchange matrix ``J_N``."""
    if not s.is_even:
        raise ParityError(f"exchange check needs an even set, got d={s.dim}")
    if chiral(s) == ExactMatrix.exchange(s.order):
        return VerificationReport("exchange-chiral", True, f"g^ch = J_{s.order}")
    return VerificationReport("exchange-chiral", False, f"g^ch != J_{s.order}")
