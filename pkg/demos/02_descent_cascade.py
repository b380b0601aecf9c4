"""
The descent cascade
===================

Dropping the dependence on the last coordinate splits an even set into two
inequivalent odd sets; dropping the last matrix of an odd set gives an even
set again.  In the adapted basis the split is a literal block slice.
"""

# %%
from dirac_descent import adapted, conjugate_odd, descend_chain, drop_last, pseudoscalar_class, split_even
from dirac_descent.clifford import character_inner_product, direct_sum_closure, group_closure

# %%
s = adapted(6)
plus, minus = split_even(s)
print(plus.label, "==", "adapted(5):", plus == adapted(5))
print(minus.label, "==", "conjugate:", minus == conjugate_odd(adapted(5)))
print("classes:", pseudoscalar_class(plus), pseudoscalar_class(minus))

# %%
# Both odd children drop to the same even grandchild
print(drop_last(plus) == drop_last(minus) == adapted(4))

# %%
# The whole tree from d = 6 down to d = 2
def show(node, indent=0):
    extra = "" if node.gamma_set.is_even else f"  class {node.odd_class():+d}"
    print("  " * indent + f"{node.path:6s} d={node.dim} N={node.gamma_set.order}{extra}")
    for child in node.children:
        show(child, indent + 1)


show(descend_chain(s, 4))

# %%
# Character orthogonality: the children are inequivalent representations
# of the same finite group G' (closure of the retained gammas)
for d in (4, 6, 8):
    a, b = split_even(adapted(d))
    g_prime = direct_sum_closure(a, b)
    g_full = group_closure(list(adapted(d)))
    print(f"d={d}  |G|={len(g_full)}  |G'|={len(g_prime)}  "
          f"<chi+,chi+>={character_inner_product(g_prime, 0, 0)}  <chi+,chi->={character_inner_product(g_prime, 0, 1)}")
