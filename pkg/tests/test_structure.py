import pytest

from codegree_lab.builders import alternating, build, dihedral, symmetric
from codegree_lab.dsl import parse_spec
from codegree_lab.structure import (centralizer, fitting_subgroup, is_nilpotent, is_simple,
                                    is_solvable, minimal_normal_subgroups, normal_closure, socle)

from oracles import closure, fitting_order, normal_subgroups


def _elements(G):
    return closure([g.images for g in G.generators], G.degree)


@pytest.mark.parametrize("spec", ["Sym(3)", "Sym(4)", "Alt(4)", "Dih(6)", "Dih(8)", "Cyc(12)",
                                  "Alt(5)", "DP(Sym(3),Cyc(2))", "Perm(4; (0 1)(2 3), (0 2)(1 3))"])
def test_fitting_against_brute_force(spec):
    G = build(parse_spec(spec))
    assert fitting_subgroup(G).order == fitting_order(_elements(G), G.degree)


@pytest.mark.parametrize("spec", ["Sym(4)", "Alt(4)", "Dih(6)", "Sym(3)", "DP(Cyc(2),Cyc(2))"])
def test_minimal_normal_against_brute_force(spec):
    G = build(parse_spec(spec))
    normals = [N for N in normal_subgroups(_elements(G), G.degree) if len(N) > 1]
    minimal = {N for N in normals if not any(M < N for M in normals)}
    found = minimal_normal_subgroups(G)
    assert sorted(M.order for M in found) == sorted(len(N) for N in minimal)
    assert {frozenset(closure([g.images for g in M.generators], G.degree)) for M in found} == minimal


def test_simplicity():
    assert is_simple(alternating(5)) and is_simple(build(parse_spec("PSL2(7)")))
    assert not is_simple(alternating(4)) and not is_simple(symmetric(5))


def test_solvable_and_nilpotent():
    assert is_solvable(symmetric(4)) and not is_solvable(symmetric(5))
    assert is_nilpotent(dihedral(8)) and not is_nilpotent(dihedral(6))


def test_monolithic_wreath():
    G = build(parse_spec("Wr(Alt(5),Cyc(2))"))
    mins = minimal_normal_subgroups(G)
    assert [M.order for M in mins] == [3600]
    assert socle(G).order == 3600
    assert fitting_subgroup(G).order == 1


def test_normal_closure_and_centralizer():
    S4 = symmetric(4)
    t = S4.generators[0]
    assert normal_closure(S4, [t]).order == 24
    from codegree_lab.perm import Permutation
    v = Permutation.from_cycles(4, [[0, 1], [2, 3]])
    assert normal_closure(S4, [v]).order == 4
    assert centralizer(S4, [v]).order == 8
