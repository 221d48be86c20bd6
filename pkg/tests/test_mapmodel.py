from fractions import Fraction

import pytest

from rht.gca import Cdga, Poly
from rht.dgl import Dgl, FiniteCdga, free_lie, tensor_map_model
from rht.cefunctor import ce_cochains
from rht.mapmodel import (MapSpaceProblem, check_hypotheses, suspension_model,
                          split_odd_generator, reduce_to_odd_sphere,
                          SplitError, bar_name, finite_cohomology_rank)

F = Fraction


def section4_y(truncation=20):
    gens = [("x1", 4), ("x2", 4), ("y", 7)]
    alg = Cdga(gens, {}, truncation)
    return Cdga(gens, {"y": alg.multiply(alg.gen("x1"), alg.gen("x2"))},
                truncation)


def odd_section4_y(truncation=22):
    gens = [("x1", 5), ("x2", 5), ("y", 9)]
    alg = Cdga(gens, {}, truncation)
    return Cdga(gens, {"y": alg.multiply(alg.gen("x1"), alg.gen("x2"))},
                truncation)


def test_check_hypotheses_section4_setup():
    prob = MapSpaceProblem(FiniteCdga.sphere(2), 2, y_cdga=section4_y())
    rep = check_hypotheses(prob)
    assert rep.ok
    assert prob.m == 3
    assert rep.odd_closed is False  # S^2 has no odd closed class; not blocking


def test_check_hypotheses_connectivity_violation():
    prob = MapSpaceProblem(FiniteCdga.sphere(3), 3,
                           y_dgl=Dgl([("l", 3)], {}, {}, 9))
    rep = check_hypotheses(prob)
    assert not rep.ok and not rep.connectivity_ok


def test_check_hypotheses_hp_zero():
    # declare p = 2 on a point model: H^2 = 0
    prob = MapSpaceProblem(FiniteCdga.point(), 2, y_cdga=section4_y())
    rep = check_hypotheses(prob)
    assert not rep.hp_nonzero


def test_finite_cohomology_rank_sphere():
    A = FiniteCdga.sphere(4)
    assert [finite_cohomology_rank(A, n) for n in range(0, 5)] == [1, 0, 0, 0, 1]


def test_suspension_model_section4():
    model = suspension_model(section4_y(), 2)
    alg = model.cdga
    assert alg.generators == [("x1", 4), ("x2", 4), ("y", 7),
                              ("x1_bar", 2), ("x2_bar", 2), ("y_bar", 5)]
    assert not alg.differential.images.get("x1_bar")
    assert not alg.differential.images.get("x2_bar")
    dyb = alg.differential.images["y_bar"]
    want = alg.multiply(alg.gen("x1_bar"), alg.gen("x2")) + \
        alg.multiply(alg.gen("x1"), alg.gen("x2_bar"))
    assert dyb == want  # the displayed +S(dy) for p = 2
    assert alg.check()


def test_suspension_model_single_closed_generator():
    Y = Cdga([("v", 4)], {}, 10)
    model = suspension_model(Y, 2)
    assert model.cdga.generators == [("v", 4), ("v_bar", 2)]
    assert not model.cdga.differential.images


def test_suspension_model_odd_p_barred_degrees():
    model = suspension_model(odd_section4_y(), 3)
    alg = model.cdga
    assert [alg.gen_degree(bar_name(n)) for n in ("x1", "x2", "y")] == [2, 2, 6]
    dyb = alg.differential.images["y_bar"]
    want = (alg.multiply(alg.gen("x1_bar"), alg.gen("x2")) +
            alg.multiply(alg.gen("x1"), alg.gen("x2_bar")).scale(-1)).scale(-1)
    assert dyb == want  # -S(dy) for odd p
    assert alg.check()


def test_suspension_model_rejects_nonminimal_and_low_degrees():
    nonmin = Cdga([("a", 3), ("b", 4)], {"a": Poly({((1, 1),): F(1)})}, 10)
    with pytest.raises(ValueError):
        suspension_model(nonmin, 2)
    with pytest.raises(ValueError):
        suspension_model(section4_y(), 4)  # 4 is not > |x1|


def test_suspension_degree_bookkeeping():
    model = suspension_model(section4_y(12), 2)
    Y = model.origin
    big = model.cdga
    for n in range(1, 10):
        left = big.dim(1) if False else None
        dimV = sum(1 for d in Y.degrees if d == n)
        dimS = sum(1 for d in Y.degrees if d == n + model.p)
        got = sum(1 for d in big.degrees if d == n)
        assert got == dimV + dimS


def test_suspension_identities_on_generators():
    for Y, p in ((section4_y(), 2), (odd_section4_y(), 3)):
        model = suspension_model(Y, p)
        alg, S = model.cdga, model.S
        sign = (-1) ** p
        for name in Y.names:
            v = alg.gen(name)
            sv = alg.gen(model.bar_of[name])
            assert alg.apply_derivation(S, sv) == Poly()  # S^2 = 0 on gens
            dv = alg.d(v)
            dsv = alg.d(sv)
            assert dsv == alg.apply_derivation(S, dv).scale(sign)


def test_ce_of_sphere_tensor_equals_suspension_on_section4():
    # the identification C*(L + Lbar) = Lambda(V + SV): the section-4 shape
    for p, gdeg in ((2, 3), (3, 4)):
        bdeg = 2 * gdeg
        L = Dgl([("a1", gdeg), ("a2", gdeg), ("b", bdeg)],
                {("a1", "a2"): {"b": 1}}, {},
                truncation=bdeg + 2 * p + 1)
        assert L.validate()
        ceL = ce_cochains(L, bdeg + 2)
        M = tensor_map_model(FiniteCdga.sphere(p), L)
        ceM = ce_cochains(M, bdeg + 2)
        susp = suspension_model(ceL.cdga, p, truncation=bdeg + 2)
        # match generators: dual of 1(x)x <-> v_x, dual of t(x)x <-> bar v_x
        rename = {}
        for vname in ceM.cdga.names:
            x = ceM.basis_of[vname]
            if x.startswith("t_"):
                rename[vname] = bar_name(ceL.gen_of[x[2:]])
            else:
                rename[vname] = ceL.gen_of[x]
        big = susp.cdga
        assert sorted(rename.values()) == sorted(big.names)
        for vname in ceM.cdga.names:
            img = ceM.cdga.differential.images.get(vname, Poly())
            translated = Poly()
            for m, c in img.items():
                word = [rename[ceM.cdga.names[i]] for i, _ in m
                        for _ in range(dict(m)[i])]
                translated = translated + big.monomial_of_word(word).scale(c)
            want = big.differential.images.get(rename.get(vname), Poly())
            assert translated == want, (p, vname)


def test_fibration_on_the_flagship_configuration():
    # projection/section for the sphere tensor the target's Lie model
    from rht.dgl import fibration_model
    L = Dgl([("a1", 3), ("a2", 3), ("b", 6)], {("a1", "a2"): {"b": 1}}, {}, 11)
    M = tensor_map_model(FiniteCdga.sphere(2), L)
    proj, sect = fibration_model(M)
    assert proj.check() and sect.check()
    assert proj.compose(sect).is_identity()


def split_test_model():
    # Lambda(t) (x) Q[x]/(x^2): a model of S^3 x S^2
    return FiniteCdga(
        [("1", 0), ("x", 2), ("t", 3), ("tx", 5)], "1",
        {("t", "x"): {"tx": 1}, ("x", "t"): {"tx": 1},
         ("x", "x"): {}, ("t", "t"): {}, ("t", "tx"): {}, ("tx", "t"): {},
         ("x", "tx"): {}, ("tx", "x"): {}, ("tx", "tx"): {}})


def test_split_odd_generator_trivial_and_product():
    T = FiniteCdga.sphere(3)
    i, q = split_odd_generator(T, "t")
    assert q.compose(i).is_identity()
    A = split_test_model()
    assert A.validate()
    i, q = split_odd_generator(A, "t")
    assert i.check() and q.check()
    assert q.compose(i).is_identity()
    assert q.images["x"] == {} and q.images["tx"] == {}


def test_split_odd_generator_rejects_even_or_nonclosed():
    A = split_test_model()
    with pytest.raises(SplitError):
        split_odd_generator(A, "x")
    gens = [("t3", 3), ("t5", 5), ("u7", 7)]
    alg = Cdga(gens, {}, 16)
    B = FiniteCdga.from_free_odd(
        Cdga(gens, {"u7": alg.multiply(alg.gen("t3"), alg.gen("t5"))}, 16))
    with pytest.raises(SplitError):
        split_odd_generator(B, "u7")  # odd but not closed


def test_split_with_d_nonzero_and_qd_zero():
    gens = [("t3", 3), ("t5", 5), ("u7", 7)]
    alg = Cdga(gens, {}, 16)
    B = FiniteCdga.from_free_odd(
        Cdga(gens, {"u7": alg.multiply(alg.gen("t3"), alg.gen("t5"))}, 16))
    assert B.validate()
    i, q = split_odd_generator(B, "t3")
    assert q.compose(i).is_identity()
    for a in B.names:
        assert q.apply(B.d(a)) == {}


def test_reduce_to_odd_sphere_identity_case():
    # X = S^3 itself: the reduction is the identity package
    L = free_lie([("l", 5)], 16)
    prob = MapSpaceProblem(FiniteCdga.sphere(3), 3, y_dgl=L, t="t")
    red = reduce_to_odd_sphere(prob)
    assert red.Q.compose(red.I).is_identity()
    assert red.I.is_identity() and red.Q.is_identity()
    assert red.g.compose(red.f).is_identity()


def test_reduce_to_odd_sphere_product_model():
    # X = S^3 x S^2 with t the 3-sphere class, Y abelian in degree 6
    A = split_test_model()
    L = Dgl([("l", 6), ("k", 7)], {("l", "k"): {}}, {}, 17)
    prob = MapSpaceProblem(A, 5, y_dgl=L, t="t")
    red = reduce_to_odd_sphere(prob)
    assert red.Q.compose(red.I).is_identity()
    assert red.g.compose(red.f).is_identity()
    assert red.f.check() and red.g.check()


def test_reduce_picks_lowest_odd_class_when_unspecified():
    A = split_test_model()
    L = Dgl([("l", 6)], {}, {}, 16)
    prob = MapSpaceProblem(A, 5, y_dgl=L)
    red = reduce_to_odd_sphere(prob)
    assert red.sphere_degree == 3
