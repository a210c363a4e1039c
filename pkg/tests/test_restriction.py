import pytest

from cubical.restriction import (
    MAX_ASSIGNMENTS, AllSatisfied, EqSet, NoneSatisfied, ReduceBy, Unclassifiable, classify, kan_family,
    reduction_subst, satisfies,
)
from cubical.substitution import SubstError, TotalDimSubst
from cubical.syntax import ONE, ZERO

from restriction_oracle import agrees


def test_eqset_is_unordered():
    assert EqSet.of((0, "x")) == EqSet.of(("x", 0))
    assert EqSet.of((0, "x"), (1, "y")) == EqSet.of((1, "y"), (0, "x"), ("x", 0))
    assert EqSet.of((0, "x")).names == {"x"}
    assert str(EqSet.of(("x", 0))) == "(0=x)"


def test_classify_basic():
    assert classify(EqSet()) == AllSatisfied()
    assert classify(EqSet.of((0, 0))) == AllSatisfied()
    assert classify(EqSet.of(("x", "x"))) == AllSatisfied()
    assert classify(EqSet.of((0, 1))) == NoneSatisfied()
    assert classify(EqSet.of(("x", 0), ("x", 1))) == NoneSatisfied()
    c = classify(EqSet.of(("x", 1)))
    assert isinstance(c, ReduceBy) and reduction_subst(c) == {"x": ONE}
    c = classify(EqSet.of(("x", 1), ("y", 0), (1, 1)))
    assert reduction_subst(c) == {"x": ONE, "y": ZERO} and c.residual


def test_classify_limits():
    with pytest.raises(Unclassifiable):
        classify(EqSet.of(("x", "y")))
    with pytest.raises(Unclassifiable):
        classify(EqSet.of(("x", 0), ("y", 0), ("z", 0)))
    assert MAX_ASSIGNMENTS == 2
    with pytest.raises(SubstError):
        classify(EqSet.of(("q", 0)), psi={"x"})


def test_satisfies():
    psi = TotalDimSubst({"x", "y"}, {"u"}, {"x": 0, "y": "u"})
    assert satisfies(psi, EqSet.of(("x", 0)))
    assert not satisfies(psi, EqSet.of(("y", 0)))
    with pytest.raises(SubstError):
        satisfies(psi, EqSet.of(("z", 0)))


@pytest.mark.parametrize("names", [("x",), ("x", "y"), ("x", "y", "z")])
def test_family_agrees_with_brute_force(names):
    fam = kan_family(names)
    assert fam
    for xi in fam:
        assert agrees(classify(xi, names), xi, names), str(xi)


def test_family_size_two_names():
    assert len(kan_family(("x", "y"))) == 18


def test_all_constant_equation_sets_up_to_three():
    # every set of at most three equations eps = r over three names
    from itertools import combinations, product

    names = ("x", "y", "z")
    eqs = [(e, r) for e, r in product((0, 1), (0, 1, *names))]
    seen = 0
    for k in (1, 2, 3):
        for combo in combinations(eqs, k):
            xi = EqSet.of(*combo)
            try:
                cls = classify(xi, names)
            except Unclassifiable:
                fixed = {r for _, r in combo if isinstance(r, str)}
                assert len(fixed) > MAX_ASSIGNMENTS
                continue
            assert agrees(cls, xi, names), str(xi)
            seen += 1
    assert seen == 167  # 175 sets, 8 fix all three names
