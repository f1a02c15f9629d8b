import pytest

from codegree_lab.builders import alternating, build, symmetric
from codegree_lab.classes import class_members, class_of_element, conjugacy_classes, fuse
from codegree_lab.dsl import parse_spec

from oracles import classes as brute_classes
from oracles import closure, compose, element_order

SPECS = ["Sym(3)", "Sym(4)", "Alt(5)", "Dih(5)", "Dih(8)", "Cyc(6)", "PSL2(7)",
         "DP(Sym(3),Cyc(3))", "Wr(Cyc(2),Cyc(2))"]


@pytest.mark.parametrize("spec", SPECS)
def test_classes_against_brute_force(spec):
    G = build(parse_spec(spec))
    cd = conjugacy_classes(G)
    cd.check()
    elems = closure([g.images for g in G.generators], G.degree)
    brute = brute_classes(elems)
    assert sorted(cd.sizes) == sorted(len(c) for c in brute)
    for i, rep in enumerate(cd.reps):
        cls = next(c for c in brute if rep.images in c)
        assert len(cls) == cd.sizes[i]
        assert element_order(rep.images) == cd.element_orders[i]
        enum = G.enumeration()
        members = {enum.perm(int(k)).images for k in class_members(G, i)}
        assert members == set(cls)


@pytest.mark.parametrize("spec", SPECS)
def test_power_maps_and_inverses(spec):
    G = build(parse_spec(spec))
    cd = conjugacy_classes(G)
    for i, g in enumerate(cd.reps):
        for k in range(2 * cd.element_orders[i]):
            assert cd.power(i, k) == class_of_element(G, g ** k)
        assert cd.inverse_map[i] == class_of_element(G, ~g)


def test_canonical_order():
    cd = conjugacy_classes(symmetric(4))
    keys = [(o, s) for o, s in zip(cd.element_orders, cd.sizes)]
    assert keys == [(1, 1), (2, 3), (2, 6), (3, 8), (4, 6)]


def test_fusion_alt_in_sym():
    A, S = alternating(5), symmetric(5)
    A5 = type(A)(A.generators, degree=5, parent=S)
    f = fuse(A5, S)
    f.check()
    ca, cs = conjugacy_classes(A5), conjugacy_classes(S)
    # the two classes of 5-cycles fuse
    fives = [f.mapping[i] for i, o in enumerate(ca.element_orders) if o == 5]
    assert len(fives) == 2 and fives[0] == fives[1]
    assert all(cs.element_orders[f.mapping[i]] == ca.element_orders[i] for i in range(len(ca)))
