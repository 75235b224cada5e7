"""Smoke test for the lmcost extension module. Run after building it with maturin."""

import math

import lmcost


def close(a, b, tol):
    return abs(a - b) <= tol


def main():
    probs, tail = lmcost.crossing_distribution("uniform", 0.1, n_max=20)
    assert close(sum(probs) + tail, 1.0, 1e-9), sum(probs) + tail
    assert close(lmcost.crossing_probability("exp", 1.0, 0), 0.5, 1e-12)

    params = lmcost.CostParams(1, 10000.0, 0.1)
    assert params.stable_value() == 10.0
    v = lmcost.characterize_valley(params)
    assert v.has_valley()
    assert close(v.minimum, 6.577, 5e-4), v
    assert close(v.p_m, 34.23, 5e-3), v

    t, value, censored = lmcost.find_minimum(params)
    assert not censored and close(value, v.minimum, 1e-9)
    times, costs = params.curve(0.01, 10.0, 50)
    assert len(times) == len(costs) == 50 and min(costs) >= value - 1e-9

    row = lmcost.minima_ratio(14000.0, 0.1)
    assert row.window is None and close(row.ratio, row.min_2d / row.min_1d, 1e-12)
    assert close(lmcost.crossover_r(), 1 / math.pi ** 2, 1e-15)
    assert close(lmcost.sv_ratio(lmcost.crossover_r()), 1.0, 1e-12)

    sim = lmcost.simulate("const", 0.7, n_calls=200_000, seed=42)
    again = lmcost.simulate("const", 0.7, n_calls=200_000, seed=42)
    assert sim.freq == again.freq
    assert sim.p_value > 1e-4, sim.p_value

    for bad in (lambda: lmcost.CostParams(3, 1.0, 0.1), lambda: lmcost.crossing_probability("foo", 1.0, 0)):
        try:
            bad()
        except ValueError:
            pass
        else:
            raise AssertionError("expected ValueError")

    print("lmcost smoke test: ok")


if __name__ == "__main__":
    main()
