import pytest

from biattr.attractor import Interval
from biattr.biword import (DirectiveSequence, EventuallyPeriodic, MorphicImage, OrbitPoint,
                           fibonacci)
from biattr.morphism import Substitution
from biattr.quasisturmian import (classify_qs_span, desubstitute, extract, find_bispecial,
                                  finite_attractor_classifier, stabilization_point)

PSI = Substitution.from_mapping({"0": "01", "1": "00"})


def test_stabilization_point():
    assert stabilization_point([2, 3, 5, 6, 7]) == 3
    assert stabilization_point([2, 3, 4]) == 0


def test_fibonacci_bispecial():
    assert find_bispecial(fibonacci(), 1, 10) == (1, "0")


def test_extract_fibonacci():
    ex = extract(fibonacci())
    assert (ex.w, ex.phi.table, ex.k) == ("0", {"0": "0", "1": "10"}, 1)


@pytest.fixture(scope="module")
def psi_fib():
    x = MorphicImage(fibonacci(), PSI, 0)
    return x, extract(x)


def test_extract_psi_image(psi_fib):
    x, ex = psi_fib
    assert ex.w == "010" and ex.phi.table == {"0": "0010", "1": "10"}
    assert ex.m == 3 and ex.k == 2
    assert desubstitute(x, ex).passed


def test_qs_span_witness(psi_fib):
    x, _ = psi_fib
    res = classify_qs_span(x, n=40)
    assert res.value == 2 and res.attractor == Interval(1, 3)


def test_classifier_verdicts():
    v = finite_attractor_classifier(EventuallyPeriodic("0", "", "1"))
    assert v.kind == "BiEventuallyPeriodic" and v.span.value == 1
    v = finite_attractor_classifier(EventuallyPeriodic("01", "", "01"))
    assert v.details["purely_periodic"] and v.span.value == 1
    orbit = OrbitPoint("quasi-sturmian", DirectiveSequence("", "01"), PSI)
    v = finite_attractor_classifier(orbit)
    assert v.kind == "NoFiniteAttractor" and v.span.provenance == "theorem-derived"
