import pathlib

import pytest

import mfc

DATA = pathlib.Path(__file__).resolve().parent.parent / "data"


def line_charts():
    return mfc.Chart("M", [("x", "even")]), mfc.Chart("N", [("y", "even")])


def test_running_example():
    M, N = line_charts()
    phi = mfc.Morphism(M, N, "even", "x*q_y + 1/2*q_y^2")
    assert str(mfc.pullback(phi, mfc.Series("y^2", N), 2)) == "eps*x^2 + 2*eps^2*x^2"
    assert [str(c) for c in phi.base_map()] == ["x"]
    assert phi.relation_passed()


def test_series_algebra():
    c = mfc.Chart("M", [("x", "even"), ("th", "odd"), ("et", "odd")])
    a, b = mfc.Series("th", c), mfc.Series("et", c)
    assert a * b == -(b * a)
    assert (a * a).is_zero()
    assert str(mfc.Series("th*et", c).partial("et")) == "-th"
    assert mfc.Series("x*th", c).parity == "odd"


def test_lifts_and_compose():
    M, N = line_charts()
    P = mfc.Chart("P", [("z", "even")])
    phi = mfc.Morphism(M, N, "even", "x*q_y + 1/2*q_y^2")
    psi = mfc.Morphism(N, P, "even", "y*q_z + 1/2*q_z^2")
    assert str(mfc.compose(psi, phi, 3).S) == "x*q_z + q_z^2"
    assert str(mfc.tangent_lift(mfc.Morphism(M, N, "even", "x^2*q_y")).S) == "x^2*dot_q_y + 2*x*dot_x*q_y"
    lifted = mfc.antitangent_lift(phi)
    assert lifted.kind == "odd"
    assert all(ok for _, ok, _ in mfc.check_antitangent_q(phi))


def test_workspace_file():
    ws = mfc.parse_workspace((DATA / "running.ws").read_text())
    assert "F" in ws.morphisms
    out = mfc.pullback(ws.morphism("F"), ws.function("g"), ws.eps_order)
    assert str(out) == "eps*x^2 + 2*eps^2*x^2"


def test_errors():
    c = mfc.Chart("M", [("th", "odd")])
    with pytest.raises(mfc.ParseError, match="odd variable squared"):
        mfc.Series("th^2", c)
    M, N = line_charts()
    with pytest.raises(mfc.Error, match="strict"):
        mfc.Morphism(M, N, "even", "x + x*q_y")
    with pytest.raises(mfc.ParseError, match="1:"):
        mfc.parse_workspace("chart M { x: bogus }")


def test_suites():
    for name in mfc.suite_names():
        checks = mfc.run_suite(name, seed=2, trials=3)
        assert checks and all(ok for _, ok, _ in checks), name
