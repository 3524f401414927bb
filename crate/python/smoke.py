"""Smoke test for the endok extension module.

Build and install first:  pip install --no-build-isolation ./crates/py
"""

import json

import endok


def main() -> None:
    doubling = endok.LatticeEndo([[2]])
    assert doubling.index == 2
    assert doubling.is_exact()
    r = endok.k_endo(doubling)
    assert (r.k0, r.k1) == (["Z"], ["Z"]), r
    assert r.k_b == (["Z[1/2]"], ["Z"])

    cat = endok.LatticeEndo([[2, 1], [1, 1]])
    assert cat.det == 1 and cat.charpoly() == [1, -3, 1]
    assert cat.apply([1, 0]) == [2, 1]
    assert str(endok.LatticeEndo([[2, 1], [0, 2]]).cokernel()) == "Z/4"

    r = endok.k_poly(endok.LatticeEndo([[5]]), endok.LatticeEndo([[3]]))
    assert r.k0 == ["Z/2", "Z"] and r.k1 == ["Z"]
    assert json.loads(r.to_json())["labels"]["K0"] == ["Z/2", "Z"]

    assert endok.k_solenoid(2, 3).k0 == ["Z/2", "Z[1/2]"]
    assert endok.k_shift(3).k0 == ["Z/2"]

    two = endok.LatticeEndo([[2]])
    assert not endok.independent(two, two)
    try:
        endok.k_poly(two, two)
    except ValueError as e:
        assert "independence fails" in str(e)
    else:
        raise AssertionError("dependent pair accepted")

    try:
        endok.LatticeEndo([[1, 2], [2, 4]])
    except ValueError as e:
        assert "not injective" in str(e)
    else:
        raise AssertionError("singular matrix accepted")

    big = 2**80 + 1
    assert endok.LatticeEndo([[big]]).index == big

    d, u, v = endok.snf([[2, 4], [6, 8]])
    assert d == [[2, 0], [0, 4]], d

    assert endok.FgAbGroup([2, 4], 1).labels() == ["Z/2", "Z/4", "Z"]

    report, code = endok.run_job('command = "endo"\nmatrix = [[3]]\n')
    assert code == 0 and json.loads(report)["status"] == "ok"
    _, code = endok.run_job('command = "poly"\nphi = [[2]]\npsi = [[2]]\n')
    assert code == 2

    print("endok", endok.__version__, "smoke test passed")


if __name__ == "__main__":
    main()
