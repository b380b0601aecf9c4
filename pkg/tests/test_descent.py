import numpy as np
import pytest

from dirac_descent.adapted import AdaptedSet, adapted, conjugate_odd
from dirac_descent.clifford import (
    GammaSet,
    NumericGammaSet,
    ParityError,
    StructureError,
    classify_odd_pair,
    kappa,
    pseudoscalar_class,
    verify_clifford,
    verify_hermiticity,
)
from dirac_descent.descent import (
    DescentNode,
    NotBlockStructuredError,
    children_inequivalent,
    descend_chain,
    diagonalize_kappa,
    drop_last,
    is_block_structured,
    reembed,
    split_even,
    verify_block_relations,
)
from dirac_descent.exact import ExactMatrix

from conftest import haar_unitary, random_monomial_unitary
from test_clifford import dirac_basis


@pytest.mark.parametrize("d", [4, 6, 8, 10, 12])
def test_split_gives_adapted_pair(d):
    plus, minus = split_even(adapted(d))
    assert plus == adapted(d - 1)
    assert minus == conjugate_odd(adapted(d - 1))
    assert isinstance(plus, AdaptedSet) and plus.recipe_matches() and minus.recipe_matches()
    assert plus.kron_recipe == adapted(d - 1).kron_recipe


def test_split_two_dimensional():
    plus, minus = split_even(adapted(2))
    assert plus.dim == 1 and plus.order == 1
    assert plus[0] == ExactMatrix([[1]]) and minus[0] == ExactMatrix([[-1]])


@pytest.mark.parametrize("d", [4, 6, 8, 10])
def test_diamond_closes(d):
    plus, minus = split_even(adapted(d))
    assert drop_last(plus) == drop_last(minus) == adapted(d - 2)
    assert isinstance(drop_last(plus), AdaptedSet)


@pytest.mark.parametrize("d", [4, 6, 8])
def test_reembed_inverts_split(d):
    plus, minus = split_even(adapted(d))
    assert reembed(plus, minus) == adapted(d)


def test_reembed_rejects_even_input():
    with pytest.raises(StructureError):
        reembed(adapted(4), adapted(4))


@pytest.mark.parametrize("d", [4, 6, 8])
def test_block_relations(d):
    assert verify_block_relations(adapted(d))
    assert children_inequivalent(adapted(d))


def test_non_block_sets_are_rejected():
    assert not is_block_structured(dirac_basis())
    with pytest.raises(NotBlockStructuredError):
        split_even(dirac_basis())
    with pytest.raises(ParityError):
        split_even(adapted(5))


def test_diagonalize_dirac_basis():
    frame = diagonalize_kappa(dirac_basis())
    s = frame.gammas
    assert is_block_structured(s)
    u = frame.u
    assert np.allclose(u @ u.conj().T, np.eye(4))
    plus, minus = split_even(s)
    assert classify_odd_pair(plus, minus) == "inequivalent"
    if frame.exact:
        assert verify_clifford(s) and verify_hermiticity(s)


@pytest.mark.parametrize("d", [4, 6])
def test_diagonalize_after_monomial_conjugation_is_exact(d, rng):
    s = adapted(d).conjugated(random_monomial_unitary(rng, adapted(d).order))
    frame = diagonalize_kappa(s)
    assert frame.exact and isinstance(frame.gammas, GammaSet)
    assert kappa(frame.gammas) == kappa(adapted(d))
    assert verify_clifford(frame.gammas)


@pytest.mark.parametrize("d", [4, 6, 8])
def test_diagonalize_after_haar_conjugation(d, rng):
    base = adapted(d)
    s = NumericGammaSet.from_exact(base).conjugated(haar_unitary(rng, base.order))
    frame = diagonalize_kappa(s)
    g = frame.gammas
    assert is_block_structured(g)
    plus, minus = split_even(g)
    # the class of each child is fixed by the kappa eigenvalue, not by the basis
    assert pseudoscalar_class(plus) == pseudoscalar_class(adapted(d - 1))
    assert pseudoscalar_class(minus) == -pseudoscalar_class(adapted(d - 1))


def test_diagonalize_is_deterministic(rng):
    base = NumericGammaSet.from_exact(adapted(6)).conjugated(haar_unitary(rng, 8))
    a = diagonalize_kappa(base)
    b = diagonalize_kappa(NumericGammaSet(6, base.matrices.copy()))
    assert np.array_equal(a.u, b.u)


def test_drop_last_numeric_and_errors():
    s = NumericGammaSet.from_exact(adapted(5))
    assert drop_last(s).dim == 4
    with pytest.raises(ParityError):
        drop_last(adapted(4))
    plain = GammaSet(5, tuple(adapted(5)))
    assert type(drop_last(plain)) is GammaSet


def test_descend_chain_cascade():
    root = descend_chain(adapted(6), 4)
    assert root.path == "root" and root.depth() == 0
    leaves = root.leaves()
    assert len(leaves) == 4
    assert all(leaf.dim == 2 and leaf.gamma_set == adapted(2) for leaf in leaves)
    assert sorted(leaf.path for leaf in leaves) == ["+v+v", "+v-v", "-v+v", "-v-v"]
    odd = [n for n in root.walk() if not n.gamma_set.is_even]
    assert all(n.odd_class() in (1, -1) for n in odd)
    plus, minus = root.children
    assert plus.odd_class() == -minus.odd_class()


def test_descend_chain_odd_start_and_limits():
    root = descend_chain(adapted(5), 1)
    assert [c.branch for c in root.children] == ["drop"]
    assert root.children[0].gamma_set == adapted(4)
    assert descend_chain(adapted(4), 0).children == []
    with pytest.raises(ValueError):
        descend_chain(adapted(4), 3)


def test_descent_node_dict():
    tree = descend_chain(adapted(4), 2).to_dict()
    assert tree["dim"] == 4 and len(tree["children"]) == 2
    assert tree["children"][0]["pseudoscalar_class"] == pseudoscalar_class(adapted(3))
    assert tree["children"][1]["children"][0]["dim"] == 2


def test_descent_node_validation():
    with pytest.raises(ValueError):
        DescentNode(adapted(4), branch="sideways")
    root = DescentNode(adapted(5))
    with pytest.raises(StructureError):
        DescentNode(adapted(4), root, "plus")
