"""Smoke test for the superloop extension module.

    pip install -e crates/python --no-build-isolation
    python python/smoke.py
"""

import json
import sys

import superloop as sl


def spec(**fields):
    base = {"schema": sl.SCHEMA_VERSION, "algebra": {"type": "sl", "m": 2, "n": 1}}
    base.update(fields)
    return json.dumps(base)


def main():
    g = sl.Algebra("sl", 2, 1)
    assert g.dim == 8, g.dim
    even, odd = g.positive_roots()
    assert (len(even), len(odd)) == (1, 2)
    assert g.check_jacobi()
    assert sl.Algebra("C", 3).dim == 19

    try:
        sl.Algebra("sl", 2, 2)
    except ValueError as e:
        assert "A(n,n)" in str(e)
    else:
        raise AssertionError("sl(2,2) accepted")

    # τ for (t−1)² with window (0, 1) is τ_s = s
    sq = sl.Ideal(["1"], [2])
    assert sl.tau_sequence(sq, ["0", "1"], -3, 3) == [str(s) for s in range(-3, 4)]
    assert not sl.is_evaluation(sq, ["0", "1"])
    assert sl.tau_sequence(sl.Ideal(["2"], [1]), ["1"], -2, 2) == ["1/4", "1/2", "1", "2", "4"]

    loop = spec(kind="loop", a=["1", "-1"], **{"lambda": [[1, 0, 0], [1, 0, 0]]})
    m = sl.Module(loop)
    assert m.dim == 9 and m.period == 2 and m.is_evaluation
    assert m.is_irreducible() and m.is_integrable()

    tau = spec(kind="tau", a=["1"], mults=[2], tau_window=["0", "1"], **{"lambda": [[0, 0, 0]]})
    t = sl.Module(tau)
    assert not t.is_evaluation
    assert [t.tau(s) for s in range(3)] == ["0", "1", "2"]
    recovered = json.loads(t.extract())
    assert recovered["tau_window"] == ["0", "1"], recovered

    w = sl.iso(loop, loop)
    assert w is not None and w[0] == "1"
    assert sl.iso(tau, loop) is None

    reports = [json.loads(r) for r in sl.verify(["structure", "controls"])]
    assert reports and all(r["verdict"] == r["expected"] for r in reports)
    print(f"ok: {len(reports)} checks, {m.dim}-dim loop module, τ = {[t.tau(s) for s in range(-2, 3)]}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
