import copy
from fractions import Fraction as F

import pytest

import pinchcert as pc


def test_theta1_coefficients_and_root():
    c = pc.theta1()
    assert c == [F(-22801, 5184), F(83597, 2880), F(-2975, 64), F(3485, 192)]
    lo, hi = pc.isolate_root(c, F(5, 3), F(9, 5), F(1, 10**6))
    assert F("1.7075") < lo < hi < F("1.7076")
    assert hi - lo <= F(1, 10**6)
    assert pc.count_roots(c, F(5, 3), F(9, 5)) == 1


def test_poly_eval_exact():
    assert pc.poly_eval(pc.theta1(), F(5, 3)) == F(-10, 9)
    assert pc.poly_eval([1, 0, 1], "0.5") == F(5, 4)
    with pytest.raises(TypeError):
        pc.poly_eval([1, 2], 0.5)


def test_gap_bound_value():
    assert pc.gap_lower_bound(F("1.7853")) == F(47445490092, 10392441085625)
    assert pc.gap_lower_bound(F(5, 3)) == F(150, 4261)


def test_certificate_replay_and_tamper():
    cert = pc.certify_sign([1, 0, 1], -1, 1, positive=True)
    assert pc.replay(cert) == ""
    bad = copy.deepcopy(cert)
    bad["evidence"]["root_count"] = 3
    assert pc.replay(bad) != ""
    with pytest.raises(pc.SignClaimError):
        pc.certify_sign([-1, 0, 1], -2, 2, positive=True)


def test_errors_map_to_python():
    with pytest.raises(ValueError):
        pc.isolate_root([-1, 0, 1], -2, 2)
    with pytest.raises(ValueError):
        pc.right_threshold(F(3, 4))


def test_thresholds():
    left = pc.left_threshold(F(1, 2), F(5, 3))
    assert not left["degenerate"]
    right = pc.right_threshold(F(1, 4))
    assert F(right["enclosure"][0]) > F("1.7852")
    opt = pc.optimize("right", {"t_grid": ["1/8", "1/4"], "w_grid": ["9/5"], "refinement_rounds": 1})
    assert opt["side"] == "right"


def test_calabi_values_and_scan():
    K, S = pc.calabi_value(3)
    assert (K, S) == (F(1, 6), F(5, 3))
    scan = pc.geometry_scan(3, samples=20, seed=5)
    assert scan["check"]["all_pass"]


def test_classify_and_scale():
    assert pc.spherical_to_shrinker(F("1.7075")) == F("0.426875")
    out = pc.classify({"a_circ_min": "0.446325", "a_circ_max": "9/20"})
    assert out["verdict"] == "calabi-s4"
    out = pc.classify({"a_circ_min": "5/12", "a_circ_max": "0.426876"})
    assert out["verdict"] == "inconclusive"


def test_certify_report_replays():
    rep = pc.certify()
    assert rep["ok"]
    again = pc.replay_report(rep)
    assert again["ok"]
