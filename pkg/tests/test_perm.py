import pytest

import oracles as O
from aloops.analysis import inn, inn_from_generators, lmlt, mlt
from aloops.associated import bruck_from_automorphic, p_map
from aloops.errors import CapExceeded, EvenOrder, LoopError, NotAnAutomorphism, NotTransitive
from aloops.perm import (Permutation, PermGroup, alternating_group, block_system, centralizer, closure,
                         commutator, conj_class, cyclic_group, format_generators, group_sqrt,
                         is_fixed_point_free, is_primitive, is_solvable_group, is_transitive,
                         is_twisted_subgroup, k_tau, orbit, parse_generators, read_group, stabilizer,
                         symmetric_group)
from conftest import GROUPS_DIR


def cyc(d, *cycles):
    return Permutation.from_cycles(d, *cycles)


class TestPermutation:
    def test_composition_is_right_to_left(self):
        p, q = cyc(3, (0, 1)), cyc(3, (1, 2))
        assert (p * q)(1) == p(q(1)) == 2
        assert (q * p)(1) == q(p(1)) == 0

    def test_inverse_and_power(self):
        g = cyc(5, (0, 1, 2, 3, 4))
        assert (g * g.inverse()).is_identity()
        assert g ** 5 == Permutation.identity(5)
        assert g ** -1 == g.inverse()
        assert g.order() == 5

    def test_rejects_non_bijection(self):
        with pytest.raises(LoopError):
            Permutation([0, 0, 1])

    def test_one_based_io(self):
        g = Permutation.from_one_based([2, 3, 1])
        assert g.one_based() == (2, 3, 1) and g == cyc(3, (0, 1, 2))

    def test_fixed_point_free(self, Q6):
        assert not is_fixed_point_free(Permutation.identity(4))
        assert is_fixed_point_free(cyc(4, (0, 1), (2, 3)))
        assert is_fixed_point_free(Q6.L(1))


class TestClosure:
    def test_small(self):
        assert closure([Permutation.from_one_based([2, 3, 1])], cap=100).order == 3
        assert closure([], cap=10, degree=4).order == 1

    def test_cap(self):
        with pytest.raises(CapExceeded):
            closure(symmetric_group(5).generators, cap=50)

    def test_mlt_q6_against_oracle(self, Q6):
        assert mlt(Q6).order == O.multiplication_group_order(O.rows_of(Q6)) == 36

    def test_named_groups(self):
        assert symmetric_group(4).order == 24
        assert alternating_group(4).order == 12
        assert cyclic_group(6).order == 6


class TestOrbitsAndStabilizers:
    def test_examples(self, Q6):
        C3 = closure([cyc(3, (0, 1, 2))])
        assert stabilizer(C3, 0).order == 1
        S3 = symmetric_group(3)
        assert orbit(S3, 0) == {0, 1, 2}
        M = mlt(Q6)
        assert stabilizer(M, 0).elements == inn_from_generators(Q6).elements == inn(Q6).elements

    def test_orbit_stabilizer(self, Q6):
        for G in (mlt(Q6), symmetric_group(4), closure([cyc(6, (0, 1), (2, 3))])):
            for pt in range(G.degree):
                assert len(orbit(G, pt)) * stabilizer(G, pt).order == G.order


class TestTransitivity:
    def test_examples(self):
        assert is_transitive(symmetric_group(4), 4)
        assert not is_transitive(closure([cyc(4, (0, 1, 2, 3))]), 2)
        assert is_transitive(alternating_group(4), 2)
        assert not is_transitive(alternating_group(4), 3)

    def test_k_too_large(self):
        with pytest.raises(LoopError):
            is_transitive(symmetric_group(3), 4)


class TestPrimitivity:
    def test_examples(self):
        assert is_primitive(symmetric_group(4))
        C4 = closure([cyc(4, (0, 1, 2, 3))])
        assert not is_primitive(C4)
        assert block_system(C4, 0, 2) == [frozenset({0, 2}), frozenset({1, 3})]

    def test_regular_z6(self):
        from aloops.constructions import cyclic
        assert not is_primitive(mlt(cyclic(6)))

    def test_intransitive_rejected(self):
        with pytest.raises(NotTransitive):
            is_primitive(closure([cyc(4, (0, 1))]))


class TestSolvability:
    def test_examples(self):
        assert is_solvable_group(symmetric_group(3))
        assert not is_solvable_group(closure([cyc(5, (0, 1, 2, 3, 4)), cyc(5, (0, 1, 2))]))
        assert is_solvable_group(closure([], degree=3))
        assert is_solvable_group(symmetric_group(4))

    def test_commutator(self):
        a, b = cyc(3, (0, 1)), cyc(3, (1, 2))
        assert commutator(a, b) == a.inverse() * b.inverse() * a * b


class TestConjugationAndCentralizers:
    def test_conj_class(self, Q6):
        g = cyc(3, (0, 1))
        assert conj_class(closure([], degree=3), g) == {g}
        assert conj_class(symmetric_group(3), g) == {cyc(3, (0, 1)), cyc(3, (0, 2)), cyc(3, (1, 2))}
        H = inn(Q6)
        assert len(conj_class(H, Q6.L(1))) == len(orbit(H, 1))

    def test_class_size_divides(self, Q6):
        H = mlt(Q6)
        for g in list(H.elements)[:10]:
            assert H.order % len(conj_class(H, g)) == 0

    def test_centralizer(self, Q6):
        S3 = symmetric_group(3)
        assert centralizer(S3, []).order == 6
        assert centralizer(S3, [cyc(3, (0, 1, 2))]).elements == closure([cyc(3, (0, 1, 2))]).elements
        M = mlt(Q6)
        from aloops.search import candidate_translations
        cands = candidate_translations(M, stabilizer(M, 0))
        for x, ls in cands.items():
            Cx = centralizer(M, stabilizer(stabilizer(M, 0), x).elements)
            assert set(ls) <= Cx.elements


class TestTwistedSubgroups:
    def test_full_group(self):
        S3 = symmetric_group(3)
        assert is_twisted_subgroup(S3, S3.elements)

    def test_group_left_translations(self):
        from aloops.constructions import cyclic
        from aloops.table import direct_product
        Q = direct_product(cyclic(3), cyclic(5))
        assert is_twisted_subgroup(lmlt(Q), [Q.L(x) for x in range(Q.n)])

    def test_p_maps_of_q6(self, Q6):
        assert is_twisted_subgroup(mlt(Q6), {p_map(Q6, x) for x in range(6)})

    def test_non_twisted(self):
        S3 = symmetric_group(3)
        assert not is_twisted_subgroup(S3, {Permutation.identity(3), cyc(3, (0, 1, 2))})


class TestKTau:
    def test_identity_tau(self):
        S3 = symmetric_group(3)
        K = k_tau(S3, Permutation.identity(3))
        assert K == {g for g in S3.elements if (g * g).is_identity()}
        C5 = cyclic_group(5)
        assert k_tau(C5, Permutation.identity(5)) == {Permutation.identity(5)}

    def test_bruck_inversion(self, corpus):
        B = bruck_from_automorphic(corpus["Drapal5_2"])
        G = lmlt(B)
        K = k_tau(G, B.inversion)
        assert {B.L(x) for x in range(B.n)} <= K
        assert is_twisted_subgroup(G, K)

    def test_not_an_automorphism(self):
        G = closure([cyc(3, (0, 1))])
        with pytest.raises(NotAnAutomorphism):
            k_tau(G, cyc(3, (1, 2)))


class TestGroupSqrt:
    def test_examples(self):
        S3 = symmetric_group(3)
        assert group_sqrt(S3, Permutation.identity(3)).is_identity()
        g = cyc(3, (0, 1, 2))
        r = group_sqrt(S3, g)
        assert r == g ** 2 and r * r == g
        h = cyc(5, (0, 1, 2, 3, 4))
        assert group_sqrt(cyclic_group(5), h) == h ** 3

    def test_even_order(self):
        with pytest.raises(EvenOrder):
            group_sqrt(symmetric_group(3), cyc(3, (0, 1)))


class TestGeneratorFiles:
    def test_round_trip(self, tmp_path):
        gens = [cyc(4, (0, 1)), cyc(4, (0, 1, 2, 3))]
        path = tmp_path / "s4.gens"
        path.write_text(format_generators(gens, "S4"))
        G = read_group(path)
        assert G.order == 24 and parse_generators(path.read_text()) == gens

    def test_degree_enforced(self):
        with pytest.raises(LoopError):
            parse_generators("1 2 3\n2 1\n")

    def test_supplied_degree6_groups(self):
        orders = {p.stem: read_group(p).order for p in GROUPS_DIR.glob("*.gens")}
        assert orders == {"psl2_5": 60, "pgl2_5": 120, "a6": 360, "s6": 720, "c6": 6, "s3wrs2": 72}

    def test_permgroup_requires_degree(self):
        with pytest.raises(LoopError):
            PermGroup([])
