import math

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from emorank.freqsource import FrequencyTriple, build_index
from emorank.proximity import (
    ContextError,
    MeasureKind,
    PmingContext,
    UndefinedMeasure,
    build_pming_context,
    confidence,
    measure_record,
    ngd,
    pmi,
    pming,
    proximity,
)

T = FrequencyTriple


class TestConfidence:
    def test_values(self):
        assert confidence(T(10, 7, 5, 100)) == 0.5
        assert confidence(T(10, 10, 10, 100)) == 1.0
        assert confidence(T(10, 10, 0, 100)) == 0.0

    def test_undefined(self):
        with pytest.raises(UndefinedMeasure):
            confidence(T(0, 10, 0, 100))

    def test_asymmetric_witness(self):
        t = T(10, 40, 5, 100)
        assert confidence(t) != confidence(t.swapped())


class TestPmi:
    def test_independence(self):
        assert pmi(T(10, 10, 1, 100)) == 0.0

    def test_perfect(self):
        assert pmi(T(10, 10, 10, 100)) == pytest.approx(3.321928094887362, abs=1e-12)

    def test_against_corpus_probabilities(self):
        # 10 docs with both, 40 with x only, 30 with y only, 920 with neither
        docs = (["x y"] * 10 + ["x"] * 40 + ["y"] * 30 + ["z"] * 920)
        index = build_index(enumerate(docs))
        n = index.m
        p_x, p_y, p_xy = index.df("x") / n, index.df("y") / n, index.cooccurrence("x", "y") / n
        oracle = math.log(p_xy / (p_x * p_y), 2)
        t = T(index.df("x"), index.df("y"), index.cooccurrence("x", "y"), n)
        assert t == T(50, 40, 10, 1000)
        assert pmi(t) == pytest.approx(oracle, abs=1e-12)
        assert pmi(t) == pytest.approx(math.log2(5), abs=1e-12)

    def test_zero_cooccurrence(self):
        assert pmi(T(10, 10, 0, 100)) == -math.inf

    def test_undefined(self):
        with pytest.raises(UndefinedMeasure):
            pmi(T(0, 10, 0, 100))


class TestNgd:
    def test_identical(self):
        assert ngd(T(7, 7, 7, 100)) == 0.0

    def test_hand_values(self):
        assert ngd(T(10, 10, 1, 100)) == pytest.approx(1.0, abs=1e-12)
        assert ngd(T(100, 10, 10, 10000)) == pytest.approx(1 / 3, abs=1e-12)

    def test_zero_cooccurrence(self):
        assert ngd(T(10, 10, 0, 100)) == math.inf

    def test_corpus_too_small(self):
        with pytest.raises(UndefinedMeasure):
            ngd(T(10, 10, 5, 10))

    def test_base_invariant(self):
        t = T(321, 45, 17, 98765)
        assert ngd(t, math.log2) == pytest.approx(ngd(t, math.log10), rel=1e-12)


# four pairs in one context; expected values from the written-out formula in log10
CONTEXT_PAIRS = [T(120, 40, 30, 10000), T(60, 200, 25, 10000), T(500, 80, 12, 10000), T(45, 45, 40, 10000)]
FROZEN_MU1 = 7.625934281777462
FROZEN_MU2 = 0.7724646018380049
FROZEN_PMING = [0.2713637404854349, 0.4758603800599121, 0.8960807658342598, 0.014108625580890667]


def oracle_pming(t, mu1, mu2, rho):
    fx, fy = max(t.fx, t.fy), min(t.fx, t.fy)
    log = math.log10
    pmi_bits = math.log((t.fxy / t.m) / ((fx / t.m) * (fy / t.m)), 2)
    return rho * (1 - pmi_bits / mu1) + (1 - rho) * ((log(fx) - log(t.fxy)) / ((log(t.m) - log(fy)) * mu2))


class TestPming:
    def test_context_maxima(self):
        ctx = build_pming_context(CONTEXT_PAIRS, rho=0.5)
        assert ctx.mu1 == pytest.approx(FROZEN_MU1, abs=1e-12)
        assert ctx.mu2 == pytest.approx(FROZEN_MU2, abs=1e-12)

    def test_fixture_values(self):
        ctx = build_pming_context(CONTEXT_PAIRS, rho=0.5)
        for t, expected in zip(CONTEXT_PAIRS, FROZEN_PMING):
            assert pming(t, ctx) == pytest.approx(expected, abs=1e-12)
            assert pming(t, ctx) == pytest.approx(oracle_pming(t, ctx.mu1, ctx.mu2, 0.5), abs=1e-12)

    def test_max_pair_boundary(self):
        t = T(40, 20, 10, 1000)
        ctx = PmingContext(pmi(t), ngd(t), 0.5)
        assert pming(t, ctx) == pytest.approx(0.5, abs=1e-12)

    def test_rho_one(self):
        ctx = build_pming_context(CONTEXT_PAIRS, rho=1.0)
        for t in CONTEXT_PAIRS:
            assert pming(t, ctx) == pytest.approx(1 - pmi(t) / ctx.mu1, abs=1e-12)

    def test_orientation_swap(self):
        ctx = build_pming_context(CONTEXT_PAIRS, rho=0.3)
        t = T(60, 200, 25, 10000)
        assert pming(t, ctx) == pming(t.swapped(), ctx)

    def test_two_triple_context(self):
        a, b = T(10, 10, 2, 100), T(10, 10, 8, 100)
        ctx = build_pming_context([a, b])
        assert ctx.mu1 == max(pmi(a), pmi(b))
        assert ctx.mu2 == max(ngd(a), ngd(b))

    def test_single_self_pair_context(self):
        ctx = build_pming_context([T(10, 10, 10, 100)])
        assert ctx.mu1 == pytest.approx(math.log2(10))
        assert ctx.mu2 == 0.0
        assert pming(T(10, 10, 10, 100), ctx) == pytest.approx(0.5 * (1 - 1), abs=1e-12)

    def test_undefined_context(self):
        with pytest.raises(ContextError):
            build_pming_context([T(0, 10, 0, 100), T(10, 10, 0, 100)])

    def test_context_validation(self):
        with pytest.raises(ContextError):
            PmingContext(1.0, 1.0, rho=1.5)
        with pytest.raises(ContextError):
            PmingContext(0.0, 1.0)


class TestProximity:
    def test_ngd_identical_is_max(self):
        assert proximity("ngd", T(7, 7, 7, 100)) == 1.0

    def test_pmi_clipped(self):
        t = T(50, 50, 1, 1000)  # log2(0.4) = -1.32
        assert pmi(t) < 0
        assert proximity(MeasureKind.PMI, t) == 0.0

    def test_confidence_pass_through(self):
        assert proximity("confidence", T(10, 7, 5, 100)) == 0.5

    def test_zero_cooccurrence_is_zero(self):
        ctx = PmingContext(2.0, 1.0)
        for kind in MeasureKind:
            assert proximity(kind, T(10, 10, 0, 100), ctx) == 0.0

    def test_undefined_is_zero(self):
        assert proximity("confidence", T(0, 10, 0, 100)) == 0.0

    def test_pming_needs_context(self):
        with pytest.raises(ContextError):
            proximity("pming", T(10, 10, 5, 100))

    def test_record_marks_infinities(self):
        record = measure_record("pmi", T(10, 10, 0, 100))
        assert record["pmi_raw"] is None and record["ngd_raw"] is None
        assert record["proximity"] == 0.0


@st.composite
def triples(draw, max_m=10**9):
    m = draw(st.integers(2, max_m))
    fx = draw(st.integers(1, m - 1))
    fy = draw(st.integers(1, m - 1))
    fxy = draw(st.integers(1, min(fx, fy)))
    return T(fx, fy, fxy, m)


@given(triples())
def test_pmi_ngd_symmetric(t):
    assert pmi(t.swapped()) == pytest.approx(pmi(t), rel=1e-12, abs=1e-12)
    assert ngd(t.swapped()) == pytest.approx(ngd(t), rel=1e-12, abs=1e-12)


@given(st.integers(1, 10**9), st.integers(2, 10**10))
def test_ngd_self_zero(f, m):
    assume(f < m)
    assert ngd(T(f, f, f, m)) == 0.0


@given(st.integers(1, 1000), st.integers(1, 1000), st.integers(0, 1000), st.integers(0, 1000))
def test_pmi_zero_at_independence(p, r, dq, ds):
    q, s = r + dq, p + ds
    # fx * fy == fxy * m == p * q * r * s
    t = T(p * q, r * s, p * r, q * s)
    assert abs(pmi(t)) <= 1e-12


@given(st.lists(triples(), min_size=1, max_size=8))
def test_pming_decomposition(ts):
    ctx = build_pming_context(ts) if any(pmi(t) > 0 for t in ts) else None
    assume(ctx is not None and ctx.mu2 > 0)
    one = PmingContext(ctx.mu1, ctx.mu2, 1.0)
    zero = PmingContext(ctx.mu1, ctx.mu2, 0.0)
    for t in ts:
        assert pming(t, one) == pytest.approx(1 - pmi(t) / ctx.mu1, abs=1e-12)
        assert pming(t, zero) == pytest.approx(ngd(t) / ctx.mu2, abs=1e-12)


@given(st.integers(2, 10**6), st.integers(2, 10**6), st.floats(0, 1))
def test_pming_monotone_in_cooccurrence(fx, fy, rho):
    m = 10 * max(fx, fy)
    ctx = PmingContext(mu1=3.0, mu2=1.5, rho=rho)
    top = min(fx, fy)
    grid = sorted({1, 2, top // 3 or 1, top // 2 or 1, top})
    values = [pming(T(fx, fy, fxy, m), ctx) for fxy in grid]
    assert all(a >= b - 1e-12 for a, b in zip(values, values[1:]))


@given(triples(), st.floats(0.1, 20), st.floats(0.01, 5), st.floats(0, 1), st.sampled_from(list(MeasureKind)))
def test_proximity_range(t, mu1, mu2, rho, kind):
    value = proximity(kind, t, PmingContext(mu1, mu2, rho))
    assert value >= 0.0
    if kind is not MeasureKind.PMI:
        # floored PMI is unbounded above until the vector is normalized
        assert value <= 1.0
