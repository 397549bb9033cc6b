import numpy as np
import pytest

import hmorph


def test_group_descriptor():
    g = hmorph.Group("u_pq:2,1")
    assert str(g) == "u_pq:2,1"
    assert g.matrix_size == 3
    assert g.dimension == 9
    assert g.dual().is_dual
    with pytest.raises(ValueError):
        hmorph.Group("gl_r:x")


def test_sample_point_is_member():
    g = hmorph.Group("sp_r:2")
    x = hmorph.sample_point(g, seed=3)
    assert x.shape == (4, 4)
    assert hmorph.membership_residual(g, x) < 1e-10
    assert np.array_equal(x, hmorph.sample_point(g, seed=3))


def test_tension_of_coordinates_on_gl():
    g = hmorph.Group("gl_r:3")
    x = hmorph.sample_point(g, seed=1)
    f = hmorph.Field.coordinate(g, "x", 1, 2)
    h = hmorph.Field.coordinate(g, "x", 3, 2)
    assert abs(hmorph.tension(f, g, x) - x[0, 1]) < 1e-12
    assert abs(hmorph.kappa(f, h, g, x) - (x @ x.T)[0, 2]) < 1e-12


def test_identities():
    r = hmorph.check_identities(4, 2, 2)
    assert r["sum-X2"] == (pytest.approx(0.0, abs=1e-14), 0)
    assert r["mixed-xyd-corrected"][1] == 0
    assert r["mixed-xyd"][1] > 0


def test_lemma_and_family():
    assert hmorph.verify_lemma("gl_r:3", "4.1")["pass"]
    fam = hmorph.make_family("10.2", "u_pq:2,1")
    rep = hmorph.verify_family(fam)
    assert rep["pass"]
    dual = hmorph.dualize(fam)
    assert hmorph.verify_dual(dual, samples=5)["pass"]


def test_morphisms():
    rep = hmorph.verify_morphism(hmorph.example_sl2_morphism(), samples=20, tol=1e-10)
    assert rep["pass"]
    fam = hmorph.make_family("6.2")
    m = hmorph.random_morphism(fam, 2, seed=11)
    assert hmorph.verify_morphism(m, samples=10)["pass"]


def test_bad_family_document():
    with pytest.raises(ValueError):
        hmorph.verify_family({"format": "nope"})
