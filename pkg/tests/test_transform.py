import json

import pytest

from biorder import freeword as fw
from biorder import magnus
from biorder.groups import F2Group
from biorder.magnus import MAGNUS
from biorder.transform import (NielsenMap, convex_flip, degree3_thresholds, family,
                               from_descriptor, lex_append_Z, lex_prepend_Z,
                               monomial_swap, nielsen_maps, pullback, reverse)

BALL5 = fw.ball(5)[1:]


def same(o1, o2, words=BALL5):
    return all(o1.sign(w) == o2.sign(w) for w in words)


def test_reverse_examples():
    r = reverse(MAGNUS)
    assert r.sign("a") == -1 and r.sign("abAB") == -1
    assert same(reverse(r), MAGNUS)


def test_convex_flip_examples():
    f = convex_flip(MAGNUS, "AA")
    assert f.sign("abAB") == -1 and f.sign("a") == 1
    assert same(convex_flip(f, "AA"), MAGNUS)
    assert same(convex_flip(MAGNUS, "A"), reverse(MAGNUS))


def test_pullback_examples():
    assert pullback(MAGNUS, NielsenMap(["swap"])).sign("Ba") == -1
    assert MAGNUS.sign("Ab") == -1
    assert same(pullback(MAGNUS, NielsenMap([])), MAGNUS)
    assert pullback(MAGNUS, NielsenMap(["inv_a"])).sign("a") == -1


def test_nielsen_composition_order():
    phi = NielsenMap(["swap", "right_mult"])  # swap o right_mult
    assert phi.images == ("ba", "a")
    for w in fw.ball(3):
        assert phi(w) == NielsenMap(["swap"])(NielsenMap(["right_mult"])(w))


def test_nielsen_maps_are_automorphisms_on_abelianization():
    for phi in nielsen_maps(2):
        (a1, b1), (a2, b2) = (fw.exponent_sums(x) for x in phi.images)
        assert abs(a1 * b2 - a2 * b1) == 1


def test_monomial_swap_examples():
    s = monomial_swap(MAGNUS)
    assert s.sign("Ba") == -1
    assert s.sign("a") == 1
    assert s.sign("abAB") == -s.sign("baBA")
    assert s.sign("abAB") == -1


def test_monomial_swap_equals_pullback_by_swap():
    assert same(monomial_swap(MAGNUS), pullback(MAGNUS, NielsenMap(["swap"])), fw.ball(6)[1:])


def test_degree3_thresholds():
    assert degree3_thresholds() == ["A", "B", "AB", "AAB", "ABB"]


def test_family_shape():
    fam = family(MAGNUS)
    assert len(fam) == 22
    descs = [json.dumps(o.descriptor(), sort_keys=True) for o in fam]
    assert len(set(descs)) == 22


def test_descriptor_roundtrip(tmp_path):
    for o in family(MAGNUS):
        d = o.descriptor()
        assert same(from_descriptor(d), o, fw.ball(4)[1:])
        p = tmp_path / "d.json"
        p.write_text(json.dumps(d))
        assert from_descriptor(str(p)).descriptor() == d
    assert from_descriptor("magnus-swapped").descriptor() == monomial_swap(MAGNUS).descriptor()
    with pytest.raises(ValueError):
        from_descriptor({"base": "magnus", "transforms": [{"kind": "reverse"},
                                                          {"kind": "monomial_swap"}]})


def test_family_axiom_suite_L4():
    for o in family(MAGNUS):
        rep = magnus.axiom_suite(o, L=4, Lc=3)
        assert rep["passed"], (o.descriptor(), rep["examples"])


def test_lex_extensions():
    G = F2Group(MAGNUS)
    P, A = lex_prepend_Z(G), lex_append_Z(G)
    assert P.arch_cmp(P.z, P.embed("a")) == ">>"
    assert A.arch_cmp(A.z, A.embed("abAB")) == "<<"
    assert P.sign(P.embed("b")) == MAGNUS.sign("b")


def test_lex_extension_cone_axioms():
    G = F2Group(MAGNUS)
    for H in (lex_prepend_Z(G), lex_append_Z(G)):
        elems = [(k, w) for k in (-1, 0, 1) for w in fw.ball(2)]
        elems = [x for x in elems if not H.is_identity(x)]
        for x in elems:
            assert H.sign(x) == -H.sign(H.invert(x))
            for y in elems:
                if H.sign(x) > 0 and H.sign(y) > 0:
                    assert H.sign(H.multiply(x, y)) > 0
                assert H.sign(H.conjugate(x, y)) == H.sign(x)
