"""
Building adapted gamma matrices
===============================

The adapted sequence starts from two 2x2 matrices and grows by Kronecker
products.  Every matrix is monomial with entries in {0, +-1, +-i}, so all
the identities below are checked with exact arithmetic.
"""

# %%
from dirac_descent import adapted, chiral, kappa, verify_clifford, verify_hermiticity
from dirac_descent.exact import ExactMatrix
from dirac_descent.render import render_grid

# %%
# The seed and its first two lifts, written as Kronecker recipes
for d in (2, 3, 4, 5):
    print(f"d={d}")
    for line in adapted(d).describe():
        print("   ", line)

# %%
# A text picture: '+' and '-' are +-1, 'i' and 'j' are +-i, '.' is zero
print(render_grid(adapted(4)))

# %%
# The chiral matrix is always the exchange matrix, kappa is always s3 (x) 1
for d in range(2, 13, 2):
    s = adapted(d)
    k = kappa(s) if d > 2 else None
    print(d, s.order, chiral(s) == ExactMatrix.exchange(s.order),
          k is None or k == ExactMatrix.diagonal([1] * (s.order // 2) + [-1] * (s.order // 2)))

# %%
# Exact verification all the way to d = 12 (64x64 matrices)
for d in range(2, 13):
    print(d, verify_clifford(adapted(d)).line(), "|", verify_hermiticity(adapted(d)).line())

# %%
# SVG output, one grid per matrix; the chiral matrix sits outside the box
with open("adapted6.svg", "w") as fh:
    fh.write(render_grid(adapted(6), "svg", cell_size=12))
