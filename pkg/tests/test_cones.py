import itertools

import pytest

from biorder import cones
from biorder import freeword as fw
from biorder.errors import ImmediateClash, LengthExceeded
from biorder.magnus import MAGNUS
from biorder.transform import family, reverse


def test_assert_sign_examples():
    c = cones.PartialCone(length_bound=4).assert_sign("a", 1)
    assert c.get("a") == 1 and c.get("A") == -1
    with pytest.raises(ImmediateClash):
        c.assert_sign("A", 1)
    with pytest.raises(LengthExceeded):
        cones.PartialCone(length_bound=3).assert_sign("abAB", 1)


def test_assert_sign_does_not_mutate():
    c = cones.PartialCone(length_bound=2)
    c.assert_sign("a", 1)
    assert c.get("a") == 0


def test_saturate_two_generators():
    cone = cones.cone_from_signs(["a", "b"], L=2, Lc=2)
    sat, rep = cones.saturate(cone)
    assert rep.outcome == "Consistent"
    for w in ("aa", "bb", "ab", "ba"):
        assert sat.get(w) == 1 and sat.get(fw.invert(w)) == -1
    assert cones.replay(rep, 2, 2, known=["a", "b"])


def test_saturate_reports_contradiction_with_trace():
    cone = cones.cone_from_signs(["a", "b"], L=2, Lc=2)
    cone.signs["ab"] = -1  # pre-seeded inconsistently, bypassing assert
    _, rep = cones.saturate(cone)
    assert rep.outcome == "Contradiction"
    assert rep.contradiction_trace
    words = {step["word"] for step in rep.contradiction_trace}
    assert "ab" in words or "AB" in words


def test_saturate_idempotent():
    sat, _ = cones.saturate(cones.cone_from_signs(["a", "Ba"], L=3, Lc=2))
    sat2, rep2 = cones.saturate(sat)
    assert sat2.signs == sat.signs and not rep2.derived


def test_from_oracle_examples():
    c = cones.from_oracle(MAGNUS, 1, 0)
    assert {w: c.get(w) for w in "aAbB"} == {"a": 1, "A": -1, "b": 1, "B": -1}
    r = cones.from_oracle(reverse(MAGNUS), 1, 0)
    assert {w: r.get(w) for w in "aAbB"} == {"a": -1, "A": 1, "b": -1, "B": 1}
    c2 = cones.from_oracle(MAGNUS, 2, 0)
    assert c2.get("Ba") == 1 and c2.get("Ab") == -1
    assert c2.get("aB") == 1  # a b^-1 = 1 + A - B + ..., so positive


@pytest.mark.parametrize("L", [2, 3, 4])
def test_magnus_soundness(L):
    _, rep = cones.saturate(cones.from_oracle(MAGNUS, L, L))
    assert rep.consistent and not rep.derived


def test_family_soundness_L3():
    for o in family(MAGNUS):
        _, rep = cones.saturate(cones.from_oracle(o, 3, 3))
        assert rep.consistent and not rep.derived, o.descriptor()


def test_census_examples():
    assert len(cones.enumerate_extensions(cones.cone_from_signs([], L=1))) == 4
    clash = cones.PartialCone(length_bound=2)
    clash.signs.update({"a": 1, "A": 1})
    assert len(cones.enumerate_extensions(clash)) == 0


def test_census_two_generators_left_mode():
    # without conjugation the free choices are sign(aB) and sign(Ab)
    cone = cones.cone_from_signs(["a", "b"], L=2, Lc=2, mode="left")
    assert len(cones.enumerate_extensions(cone)) == 4


def test_census_two_generators_bi_mode():
    # B (aB) b = Ba, so conjugation ties sign(aB) to sign(Ba) = -sign(Ab)
    cone = cones.cone_from_signs(["a", "b"], L=2, Lc=2, mode="bi")
    census = cones.enumerate_extensions(cone)
    assert len(census) == 2
    assert all(c.get("aB") == c.get("Ba") for c in census.completions)


def test_census_budget_exhaustion():
    census = cones.enumerate_extensions(cones.cone_from_signs([], L=3), budget=5)
    assert census.exhausted


def test_census_completions_are_complete_and_distinct():
    census = cones.enumerate_extensions(cones.cone_from_signs(["a"], L=2, Lc=1))
    seen = set()
    for c in census.completions:
        assert c.is_complete()
        seen.add(tuple(sorted(c.signs.items())))
    assert len(seen) == len(census)


def test_replay_rejects_forged_derivation():
    _, rep = cones.saturate(cones.cone_from_signs(["a", "b"], L=2, Lc=2))
    forged = [dict(d) for d in rep.derived]
    forged[0]["premises"] = ["b", "b"] if forged[0]["word"] != "bb" else ["a", "a"]
    forged[0]["rule"] = "R2"
    assert not cones.replay(forged, 2, 2)


def test_report_json_has_no_floats():
    sat, rep = cones.saturate(cones.cone_from_signs(["a", "b"], L=2, Lc=2))
    data = cones.report_json(sat, rep)

    def walk(x):
        if isinstance(x, float):
            raise AssertionError("float in report")
        if isinstance(x, dict):
            for v in x.values():
                walk(v)
        if isinstance(x, (list, tuple)):
            for v in x:
                walk(v)

    walk(data)
    assert data["outcome"] == "Consistent"


def test_all_assignments_of_small_ball_pass_or_fail_consistently():
    # every complete sign choice on length-1 words is consistent at L = 1
    for signs in itertools.product((1, -1), repeat=2):
        c = cones.cone_from_signs([w for w, s in zip("ab", signs) if s > 0],
                                  [w for w, s in zip("ab", signs) if s < 0], L=1)
        assert cones.saturate(c)[1].consistent
