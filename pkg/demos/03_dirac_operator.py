"""
Plane waves and the reduced Dirac operator
==========================================

In momentum space the Dirac equation is D(p) psi = 0 with
D(p) = g^mu p_mu - m.  Its square is (p.p - m^2) times the identity, and
with p_(d-1) = 0 it becomes block diagonal in the adapted basis.
"""

# %%
import numpy as np

from dirac_descent import Momentum, adapted, dirac_operator, plane_wave_solutions, split_even
from dirac_descent.dirac import (
    determinant_deviation,
    dispersion_check,
    lagrangian_split_check,
    random_momentum,
    random_spinor,
    reflection_pair_check,
    spawn_generators,
)

np.set_printoptions(precision=3, suppress=True, linewidth=120)

# %%
s = adapted(4)
p = Momentum((2.0, 1.0, 0.5, 0.0), mass=1.0)
D = dirac_operator(s, p).matrix
print(D)
print("dispersion residual", dispersion_check(s, p))
print("det deviation", determinant_deviation(s, p))

# %%
# Off-diagonal blocks vanish, the diagonal blocks are the odd children's operators
plus, minus = split_even(s)
q = p.truncated()
print(np.array_equal(D[:2, :2], dirac_operator(plus, q).matrix),
      np.array_equal(D[2:, 2:], dirac_operator(minus, q).matrix))

# %%
# The two children differ only by a reflection of the last remaining axis
print(reflection_pair_check(plus, minus, Momentum((1.3, -0.4, 0.9), 0.5)).line())

# %%
# On shell there are N/2 independent plane-wave spinors
on_shell = Momentum((np.sqrt(1 + 0.25 + 0.09 + 1), 1.0, 0.5, 0.3), mass=1.0)
basis = plane_wave_solutions(s, on_shell)
print(basis.shape, np.abs(dirac_operator(s, on_shell).matrix @ basis).max())

# %%
# The reduced Lagrangian is the sum of the two child Lagrangians
rngs = spawn_generators(0, 5)
for rng in rngs:
    k = random_momentum(rng, 6, descent=True)
    print(lagrangian_split_check(adapted(6), random_spinor(rng, 8), k).line())
