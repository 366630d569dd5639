import pytest

from gwh.verify import SUITES, Ceilings, run_suite, run_suites


def test_capped_lowers_degrees_only():
    c = Ceilings().capped(2)
    assert c.gwh_degree == 2 and c.oracle_g1_degree == 2
    assert c.completion_k == Ceilings().completion_k
    assert Ceilings().capped(None) == Ceilings()


def test_from_mapping_rejects_unknown():
    with pytest.raises(ValueError):
        Ceilings.from_mapping({"bogus": 1})
    assert Ceilings.from_mapping({"gwh_genera": [0]}).gwh_genera == (0,)


def test_threaded_run_keeps_order(monkeypatch):
    monkeypatch.setenv("GWH_THREADS", "3")
    small = Ceilings().capped(2)
    names = ["toda", "completion", "degree0"]
    results = run_suites(names, small)
    assert [r.name for r in results] == names
    assert all(r.ok and r.passed for r in results)


def test_unknown_suite():
    with pytest.raises(KeyError):
        run_suite("nope")


@pytest.mark.parametrize("name", sorted(SUITES))
def test_each_suite_small(name):
    result = run_suite(name, Ceilings().capped(2))
    assert result.ok, result.failures[:5]
