import numpy as np
import pytest
from hypothesis import given, strategies as st
from hypothesis.extra.numpy import arrays

from admire.histogram import (
    CumulativeHistogram,
    column_cumhist,
    gaussian_weights,
    global_cumhist,
    midway_cumhist,
    midway_inverse,
    pseudo_inverse_eval,
    round_half_up,
    specify,
)

columns = arrays(np.uint8, st.integers(1, 40))


def brute_inverse(values, l):
    """min{z : #(values <= z) / N >= l}, smallest occupied level at l = 0."""
    values = np.asarray(values)
    if l == 0:
        return int(values.min())
    for z in range(256):
        if np.count_nonzero(values <= z) / values.size >= l:
            return z
    raise AssertionError


def test_cumhist_constant_column():
    img = np.full((4, 3), 7, np.uint8)
    H = column_cumhist(img, 1)
    assert np.all(H.bins[:7] == 0)
    assert np.all(H.bins[7:] == 1)
    assert H.sample_count == 4


def test_cumhist_two_point():
    H = column_cumhist(np.array([[0], [255]], np.uint8), 0)
    assert np.all(H.bins[:255] == 0.5)
    assert H.bins[255] == 1


def test_cumhist_direct_count():
    H = column_cumhist(np.array([[3], [3], [5], [9]], np.uint8), 0)
    assert np.all(H.bins[:3] == 0)
    assert np.all(H.bins[3:5] == 0.5)
    assert np.all(H.bins[5:9] == 0.75)
    assert np.all(H.bins[9:] == 1)


def test_cumhist_column_out_of_range():
    with pytest.raises(IndexError):
        column_cumhist(np.zeros((2, 2), np.uint8), 2)


def test_pseudo_inverse_examples():
    H7 = CumulativeHistogram.from_values([7, 7, 7, 7])
    assert pseudo_inverse_eval(H7, 0.5) == 7
    H = CumulativeHistogram.from_values([3, 3, 5, 9])
    assert pseudo_inverse_eval(H, 0.6) == 5
    assert pseudo_inverse_eval(H, 1.0) == 9
    assert pseudo_inverse_eval(H, 0.0) == 3
    with pytest.raises(ValueError):
        pseudo_inverse_eval(H, 1.5)
    with pytest.raises(ValueError):
        pseudo_inverse_eval(H, -0.1)


@given(columns, st.lists(st.floats(0, 1), min_size=1, max_size=20))
def test_pseudo_inverse_matches_brute_force(values, ls):
    H = CumulativeHistogram.from_values(values)
    for l in ls:
        assert pseudo_inverse_eval(H, l) == brute_inverse(values, l)


@given(columns, st.floats(0, 1), st.floats(0, 1))
def test_pseudo_inverse_monotone(values, a, b):
    H = CumulativeHistogram.from_values(values)
    lo, hi = min(a, b), max(a, b)
    assert pseudo_inverse_eval(H, lo) <= pseudo_inverse_eval(H, hi)


def test_gaussian_weights_identity():
    assert np.array_equal(gaussian_weights(0), [1.0])


def test_gaussian_weights_half():
    w = gaussian_weights(0.5)
    k = np.arange(-2, 3)
    expected = np.exp(-(k**2) / 0.5)
    expected /= expected.sum()
    assert w.size == 5
    np.testing.assert_allclose(w, expected, rtol=1e-15)
    assert w.sum() == pytest.approx(1.0, abs=1e-15)
    np.testing.assert_array_equal(w, w[::-1])


def test_gaussian_weights_default_max():
    assert gaussian_weights(8).size == 2 * 32 + 1


def test_gaussian_weights_negative():
    with pytest.raises(ValueError):
        gaussian_weights(-1)


@given(st.floats(0.01, 10))
def test_gaussian_weights_properties(s):
    w = gaussian_weights(s)
    n = (w.size - 1) // 2
    assert n == int(np.floor(4 * s + 0.5 + 1e-9))
    assert w.sum() == pytest.approx(1.0)
    np.testing.assert_allclose(w, w[::-1])


@given(columns)
def test_midway_of_identical_is_fixed_point(values):
    H = CumulativeHistogram.from_values(values)
    mid = midway_inverse([H, H, H], gaussian_weights(0.3))
    ls = np.linspace(0, 1, 257)
    np.testing.assert_array_equal(mid(ls), pseudo_inverse_eval(H, ls))
    assert midway_cumhist([H, H], [0.5, 0.5]) == CumulativeHistogram(H.bins, 0)


@pytest.mark.parametrize("n1,n2", [(40, 200), (10, 11), (0, 255)])
def test_midway_of_two_deltas_is_one_delta(n1, n2):
    H1 = CumulativeHistogram.from_values([n1] * 5)
    H2 = CumulativeHistogram.from_values([n2] * 5)
    Hm = midway_cumhist([H1, H2], [0.5, 0.5])
    centre = int(np.floor((n1 + n2) / 2 + 0.5))
    expected = (np.arange(256) >= centre).astype(float)
    np.testing.assert_array_equal(Hm.bins, expected)
    # the plain average of the two histograms would be bimodal instead
    assert np.count_nonzero(np.diff(0.5 * (H1.bins + H2.bins), prepend=0)) == 2


def test_midway_three_histograms_weighted(rng):
    vals = [rng.integers(0, 256, 30) for _ in range(3)]
    hists = [CumulativeHistogram.from_values(v) for v in vals]
    w = np.array([0.25, 0.5, 0.25])
    mid = midway_inverse(hists, w)
    ls = np.arange(256) / 255
    expected = [
        int(np.floor(sum(wk * brute_inverse(v, l) for wk, v in zip(w, vals)) + 0.5))
        for l in ls
    ]
    np.testing.assert_array_equal(mid(ls), expected)


def test_midway_length_mismatch():
    H = CumulativeHistogram.from_values([1])
    with pytest.raises(ValueError):
        midway_inverse([H, H], [1 / 3] * 3)


@given(columns)
def test_self_specification_is_identity(values):
    H = CumulativeHistogram.from_values(values)
    out = specify(values, H, lambda l: pseudo_inverse_eval(H, l))
    np.testing.assert_array_equal(out, values)
    assert CumulativeHistogram.from_values(out) == H


def test_specify_constant_onto_delta():
    col = np.full(6, 17, np.uint8)
    target = CumulativeHistogram.from_values([200])
    out = specify(col, CumulativeHistogram.from_values(col), midway_inverse([target], [1.0]))
    assert np.all(out == 200)


def test_specify_onto_delta_pair_target():
    col = np.array([3, 3, 5, 9], np.uint8)
    H = CumulativeHistogram.from_values(col)
    A = CumulativeHistogram.from_values([20, 20, 100, 100])
    B = CumulativeHistogram.from_values([40, 40, 40, 140])
    mid = midway_inverse([A, B], [0.5, 0.5])
    # brute-force composition of the two 256-entry tables
    own = np.array([np.count_nonzero(col <= v) / 4 for v in range(256)])
    inv = np.array([
        int(np.floor(0.5 * brute_inverse([20, 20, 100, 100], l)
                     + 0.5 * brute_inverse([40, 40, 40, 140], l) + 0.5))
        for l in own
    ])
    np.testing.assert_array_equal(specify(col, H, mid), inv[col])
    np.testing.assert_array_equal(specify(col, H, mid), [30, 30, 70, 120])


@given(columns, columns)
def test_specify_is_monotone(values, other):
    H = CumulativeHistogram.from_values(values)
    T = CumulativeHistogram.from_values(other)
    mid = midway_inverse([H, T], [0.5, 0.5])
    order = np.argsort(values, kind="stable")
    out = specify(values, H, mid)
    assert np.all(np.diff(out[order].astype(int)) >= 0)


def test_global_cumhist():
    assert np.all(global_cumhist(np.zeros((1, 1), np.uint8)).bins == 1)
    ramp = np.arange(256, dtype=np.uint8).reshape(16, 16)
    np.testing.assert_allclose(global_cumhist(ramp).bins, (np.arange(256) + 1) / 256)
    const = np.full((5, 5), 99, np.uint8)
    assert np.array_equal(global_cumhist(const).bins, (np.arange(256) >= 99).astype(float))
    with pytest.raises(ValueError):
        global_cumhist(np.zeros((0, 3), np.uint8))


def test_round_half_up():
    np.testing.assert_array_equal(round_half_up([0.5, 1.5, 2.49, -0.5]), [1, 2, 2, 0])


def perturbed_family(rng, m, n_samples=1000):
    """A random landscape seen through m random monotone contrast changes
    centred on the identity."""
    counts = np.convolve(rng.gamma(1.0, 1.0, 256), np.ones(15), "same")
    vals = rng.choice(256, size=n_samples, p=counts / counts.sum())
    true = CumulativeHistogram.from_values(vals)
    x = np.arange(256)
    hists = []
    for _ in range(m):
        a, b, c = rng.uniform(0.8, 1.2), rng.uniform(-20, 20), rng.uniform(-15, 15)
        phi = np.clip(np.floor(a * x + b + c * 4 * x * (255 - x) / 255**2 + 0.5), 0, 255)
        phi = np.maximum.accumulate(phi).astype(np.int64)
        hists.append(CumulativeHistogram.from_values(phi[vals]))
    return true, hists


def contraction_gap(true, hists, rounded=True):
    m = len(hists)
    mid = midway_cumhist(hists, np.full(m, 1.0 / m), rounded=rounded)
    d_mid = np.linalg.norm(mid.bins - true.bins)
    d_max = max(np.linalg.norm(h.bins - true.bins) for h in hists)
    return d_mid, d_max


@pytest.mark.parametrize("m", [3, 9, 33])
def test_midway_contracts_towards_truth(m):
    rng = np.random.default_rng(m)
    for _ in range(20):
        true, hists = perturbed_family(rng, m)
        d_mid, d_max = contraction_gap(true, hists)
        assert d_mid <= d_max


def test_midway_error_shrinks_with_window():
    rng = np.random.default_rng(7)
    means = []
    for n in (1, 4, 16, 64):
        errs = [contraction_gap(*perturbed_family(rng, 2 * n + 1), rounded=False)[0] for _ in range(20)]
        means.append(np.mean(errs))
    assert all(a > b for a, b in zip(means, means[1:])), means
