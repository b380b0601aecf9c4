"""
Finding the adapted form of an arbitrary representation
=======================================================

Any even set can be rotated so that kappa is diagonal; the split then
works as for adapted sets.  Here we start from the textbook Dirac basis and
from a randomly rotated adapted set.
"""

# %%
import numpy as np

from dirac_descent import GammaSet, NumericGammaSet, adapted, pseudoscalar_class, split_even
from dirac_descent.descent import diagonalize_kappa, is_block_structured
from dirac_descent.exact import ExactMatrix
from dirac_descent.serialize import dumps

# %%
sig = [np.array([[0, 1], [1, 0]]), np.array([[0, -1j], [1j, 0]]), np.array([[1, 0], [0, -1]])]
z, one = np.zeros((2, 2)), np.eye(2)
dirac = GammaSet(4, [ExactMatrix.from_complex_array(np.block([[one, z], [z, -one]]))]
                 + [ExactMatrix.from_complex_array(np.block([[z, s], [-s, z]])) for s in sig], "dirac")
print("block structured?", is_block_structured(dirac))

# %%
frame = diagonalize_kappa(dirac)
print("exact after rotation:", frame.exact)
a, b = split_even(frame.gammas)
print("child classes:", pseudoscalar_class(a), pseudoscalar_class(b))

# %%
# A Haar-random rotation of adapted(6) leaves the floating-point world,
# but the classes of the children are basis independent
rng = np.random.default_rng(7)
zm = rng.normal(size=(8, 8)) + 1j * rng.normal(size=(8, 8))
u, _ = np.linalg.qr(zm)
rotated = NumericGammaSet.from_exact(adapted(6)).conjugated(u)
frame = diagonalize_kappa(rotated)
a, b = split_even(frame.gammas)
print(frame.exact, pseudoscalar_class(a), pseudoscalar_class(b))

# %%
# Numeric sets serialize with the dense float encoding
print(dumps(frame.gammas)[:200])
