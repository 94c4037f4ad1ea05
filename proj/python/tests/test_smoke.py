import pathlib

import pytest

import bcover

GOLDEN = pathlib.Path(__file__).resolve().parents[2] / "tests" / "golden"


def test_betti():
    circle = [[0], [1], [2], [0, 1], [1, 2], [0, 2]]
    assert bcover.betti(circle) == [1, 1]


def test_fixture_round_trip():
    spec = bcover.fixture("circle-cover", perm=[1, 0])
    assert spec["monodromy"]["degree"] == 2
    assert bcover.generators(spec) == ["3->4"]
    assert set(bcover.fixture_names()) >= {"sphere-branched", "pinched-torus"}


def test_verify_sphere():
    for perversity in ("lower", "upper"):
        report = bcover.verify(bcover.fixture("sphere-branched", points=6, degree=2), perversity)
        assert report["ih_cover"] == [1, 4, 1]
        assert report["ih_base"] == [1, 0, 1]
        assert report["ih_kernel"] == [0, 4, 0]
        assert report["exit_code"] == 0


def test_verify_from_file():
    report = bcover.verify(GOLDEN / "unknot.json")
    assert report["betti_cover"] == [1, 0, 0, 1]
    assert report["decomposition_holds"] == 1


def test_ih():
    torus = bcover.fixture("suspension-torus")
    assert bcover.ih_betti(torus, "lower") == [1, 2, 0, 1]
    assert bcover.ih_betti(torus, "upper") == [1, 0, 2, 1]
    assert bcover.ih_betti(bcover.fixture("pinched-torus")) == [1, 0, 1]
    sphere = bcover.fixture("sphere-branched", points=3, degree=3)
    assert bcover.ih_betti(sphere, twisted=True) == [0, 2, 0]


def test_fibers():
    rows = bcover.fiber_report(bcover.fixture("sphere-branched", points=3, degree=3))
    assert len(rows) == 3
    assert all(r["orbits"] == r["invariants_plus_one"] == 1 for r in rows)


def test_errors():
    with pytest.raises(bcover.BcoverError, match="UnknownFixture"):
        bcover.fixture("klein-bottle")
    with pytest.raises(bcover.BcoverError, match="complex"):
        bcover.verify("{}")
    with pytest.raises(bcover.BcoverError, match="monodromy"):
        bcover.verify(bcover.fixture("pinched-torus"))
