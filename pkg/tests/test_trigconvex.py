import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import atomic_measures, h_quadrature, integral_midpoint, mixed_measures, random_atomic
from sigmau.measure import AngularMeasure, sector_mass
from sigmau.trigconvex import (
    TrigConvexFunction,
    add_linear,
    check_trig_convex,
    from_measure,
    integrate,
    measure_from_h,
    one_sided_derivative,
    sine_defect,
    support_line,
)

PI = math.pi
LINEAR = TrigConvexFunction(AngularMeasure(), 1.3, -0.7)


def test_eval_examples():
    h = from_measure(AngularMeasure.create([(0, 1 / (2 * PI))]))
    assert h(PI / 2) == pytest.approx(1.0, abs=1e-15)
    assert from_measure(AngularMeasure.create([(1, 2)]), 0.4, 9.0)(0.0) == 0.4
    lattice = AngularMeasure.create([(0, 1), (PI, 1)])
    h = from_measure(lattice)
    assert h(3 * PI / 2) == pytest.approx(0.0, abs=1e-12)
    assert h(3 * PI / 2) == pytest.approx(h_quadrature(lattice, 3 * PI / 2), abs=1e-12)


def test_eval_rejects_out_of_range():
    h = from_measure(AngularMeasure.create([(0, 1)]))
    with pytest.raises(ValueError):
        h(-0.1)
    with pytest.raises(ValueError):
        h(2 * PI + 0.1)


def test_atom_at_zero_counts_from_start():
    h = from_measure(AngularMeasure.create([(0, 1)]))
    assert h(0.0) == 0.0
    assert h(1e-3) == pytest.approx(2 * PI * math.sin(1e-3))


def test_eval_matches_quadrature_on_random_pairs():
    rng = np.random.default_rng(5)
    for _ in range(200):
        lo, hi = np.sort(rng.uniform(0, 2 * PI, 2))
        m = AngularMeasure.create(
            [(rng.uniform(0, 2 * PI), rng.uniform(0.1, 2))], [(lo, hi, rng.uniform(0.1, 1))]
        )
        a, b = rng.uniform(-3, 3, 2)
        t = rng.uniform(0, 2 * PI)
        assert from_measure(m, a, b)(t) == pytest.approx(h_quadrature(m, t, a, b), abs=1e-8)


def test_defect_examples():
    for triple in [(0.1, 0.5, 1.2), (3.0, 4.0, 5.0)]:
        assert check_trig_convex(LINEAR, *triple) == pytest.approx(0.0, abs=1e-14)
    # one atom at 0 gives h = 2*pi*sin(t), itself a linear part, so the defect is zero up to roundoff
    h = from_measure(AngularMeasure.create([(0, 1)]))
    assert check_trig_convex(h, 0.1, 0.2, 0.3) <= 1e-15
    h = from_measure(AngularMeasure.create([(0, 1), (0.15, 1)]))
    assert check_trig_convex(h, 0.1, 0.2, 0.3) < 0
    # -sin(t) is a linear part (defect 0); a negated kink is a genuine concavity witness
    assert sine_defect(lambda t: -math.sin(t), PI / 4, PI / 2, 3 * PI / 4) == pytest.approx(0.0, abs=1e-15)
    kink = lambda t: -max(0.0, math.sin(t - PI / 2))  # noqa: E731
    assert sine_defect(kink, PI / 4, PI / 2, 3 * PI / 4) == pytest.approx(0.5)


@pytest.mark.parametrize("triple", [(0.3, 0.2, 0.4), (0.1, 0.2, 0.1 + PI)])
def test_defect_preconditions(triple):
    with pytest.raises(ValueError):
        sine_defect(math.sin, *triple)


def test_derivative_examples():
    h = from_measure(AngularMeasure.create([(PI, 1)]))
    jump = one_sided_derivative(h, PI, "right") - one_sided_derivative(h, PI, "left")
    assert jump == pytest.approx(2 * PI)
    for t in (0.0, 1.0, 4.0):
        expect = -1.3 * math.sin(t) + -0.7 * math.cos(t)
        assert one_sided_derivative(LINEAR, t, "left") == pytest.approx(expect)
        assert one_sided_derivative(LINEAR, t, "right") == pytest.approx(expect)
    h = from_measure(AngularMeasure.create([(0, 1)]))
    step = 1e-6
    fd = (h(PI / 2 + step) - h(PI / 2 - step)) / (2 * step)
    for side in ("left", "right"):
        assert one_sided_derivative(h, PI / 2, side) == pytest.approx(0.0, abs=1e-12)
        assert one_sided_derivative(h, PI / 2, side) == pytest.approx(fd, abs=1e-5)


def test_measure_from_h_examples():
    h = from_measure(AngularMeasure.create([(PI / 2, 0.7)]))
    assert measure_from_h(h, PI / 4, 3 * PI / 4) == pytest.approx(0.7, abs=1e-12)
    assert measure_from_h(LINEAR, 0.2, 5.0) == pytest.approx(0.0, abs=1e-12)
    assert measure_from_h(add_linear(h, 2.0, -3.0), PI / 4, 3 * PI / 4) == pytest.approx(0.7, abs=1e-12)
    with pytest.raises(ValueError):
        measure_from_h(h, 1.0, 1.0)


def test_integrate_against_midpoint_rule():
    m = AngularMeasure.create([(1.0, 0.5), (4.0, 1.0)], [(2.0, 3.0, 0.3)])
    h = from_measure(m, 0.2, 0.1)
    assert integrate(h, 0.5, 5.5) == pytest.approx(integral_midpoint(h, 0.5, 5.5), abs=1e-7)


def test_add_linear_examples():
    h = from_measure(AngularMeasure.create([(1, 1)]))
    assert add_linear(h, 0, 0) == h
    assert add_linear(h, 1, 0)(0.0) == h(0.0) + 1
    t = 0.8
    _, before = support_line(h, t)
    _, after = support_line(add_linear(h, 2.0, 3.0), t)
    assert after - before == pytest.approx(2 * math.cos(t) + 3 * math.sin(t))


def test_support_line_examples():
    h = TrigConvexFunction(AngularMeasure(), 2.5, 0.0)
    assert support_line(h, 0.0) == (0.0, 2.5)
    # uniform density R/(2 pi) with a = R is the constant R: the support function of a circle
    R = 1.7
    circle = from_measure(AngularMeasure.uniform(R / (2 * PI)), R, 0.0)
    for t in np.linspace(0, 2 * PI, 9):
        normal, offset = support_line(circle, t)
        assert offset == pytest.approx(R, abs=1e-12)
        # the circle point R e^{it} lies on the line, so the line is tangent there
        x, y = R * math.cos(t), R * math.sin(t)
        assert x * math.cos(normal) + y * math.sin(normal) == pytest.approx(offset, abs=1e-12)


def test_recovery_round_trip_random_sectors():
    rng = np.random.default_rng(17)
    for _ in range(100):
        m = random_atomic(rng, max_atoms=10)
        h = from_measure(m)
        while True:
            a, b = np.sort(rng.uniform(0, 2 * PI, 2))
            if min(abs(x - y) for x in (a, b) for y, _ in m.atoms) > 1e-6:
                break
        assert measure_from_h(h, a, b) == pytest.approx(sector_mass(m, a, b), abs=1e-6)


def test_recovery_includes_endpoint_atoms():
    m = AngularMeasure.create([(1.0, 0.4), (2.0, 0.6)])
    assert measure_from_h(from_measure(m), 1.0, 2.0) == pytest.approx(1.0, abs=1e-12)


@st.composite
def triples(draw):
    t1 = draw(st.floats(0.0, 2 * PI - 0.02))
    span = draw(st.floats(0.01, min(PI - 1e-3, 2 * PI - t1)))
    t2 = draw(st.floats(t1 + 1e-4 * span, t1 + span * (1 - 1e-4)))
    return t1, t2, t1 + span


@given(mixed_measures(), triples())
def test_trig_convex_everywhere(m, triple):
    h = from_measure(m)
    if not triple[0] < triple[1] < triple[2] or triple[2] > 2 * PI:
        return
    assert check_trig_convex(h, *triple) <= 1e-9 * h.scale()


@given(atomic_measures, st.floats(-10, 10), st.floats(-10, 10), triples())
@settings(max_examples=50)
def test_linear_shift_invariance(m, a, b, triple):
    h = from_measure(m)
    t1, _, t3 = triple
    if not t1 < t3:
        return
    shifted = measure_from_h(add_linear(h, a, b), t1, t3)
    assert shifted == pytest.approx(measure_from_h(h, t1, t3), abs=1e-9 * max(1, abs(a) + abs(b)))
