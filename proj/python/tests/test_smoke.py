import pytest

import owflab


def test_library_machines_run():
    assert "not" in owflab.library_names()
    assert owflab.run_machine("not", "1001") == "0110"
    assert owflab.run_machine("rot-pair", "10110") == "01110"


@pytest.mark.parametrize("backend", ["pcp", "tiling"])
def test_compiled_instance_maps_to_the_machine_output(backend):
    x = "1011"
    inst = owflab.compile(backend, "not", x)
    image = owflab.evaluate(backend, inst["bits"])
    assert len(image) == len(inst["bits"])
    assert image != inst["bits"]
    assert owflab.evaluate(backend, image) == image or backend == "tiling"


def test_semithue_under_accepting_lookahead():
    inst = owflab.compile("semithue", "id", "1101")
    assert owflab.evaluate("semithue", inst["bits"], "lookahead-accept:46") != inst["bits"]


def test_functions_are_total_and_length_preserving():
    for s in owflab.sample("string", count=200, seed=3):
        for kind in ("staf", "ptf", "tiling"):
            assert len(owflab.evaluate(kind, s)) == len(s)


def test_invert_finds_the_input():
    r = owflab.invert("ptf", "not", "10110100", jobs=2)
    assert r["status"] == "found"
    assert r["x"] == "10110100"
    assert 1 <= r["attempts"] <= 256


def test_sampling_is_seeded():
    assert owflab.sample("pcp", count=5, seed=7) == owflab.sample("pcp", count=5, seed=7)


def test_verify_determinism_suite():
    rows = owflab.verify("determinism")
    statuses = {name: status for name, status, _ in rows}
    assert "expected-fail" in statuses.values()
    assert "fail" not in statuses.values()


def test_experiment_header():
    csv = owflab.experiment(kinds=["ptf"], ns=[3], semantics=["paper-pcp"], samples=10)
    assert csv.splitlines()[0] == "kind,machine,n,seed,forward_us,attempts,found,identity_rate,policy"


def test_errors_raise_value_error():
    with pytest.raises(ValueError):
        owflab.evaluate("sat", "0101")
    with pytest.raises(owflab.OwfError):
        owflab.run_machine("not", "01x")
    assert owflab.block_decompose("0") is None
    assert owflab.block_decompose("000101") == ["000", "10", "1"]
