import pytest

from biattr.attractor import Interval
from biattr.biword import (CharacteristicSturmian, DirectiveSequence, EventuallyPeriodic,
                           OrbitPoint, Shifted, fibonacci)
from biattr.errors import PreconditionError
from biattr.sturmian import (characteristic_image_check, classify_sturmian_span, descend,
                             push_forward, special_prefixes, verify_span1)


def test_special_prefixes_of_fibonacci():
    specials, _ = special_prefixes(fibonacci(), 5)
    assert specials[5] == ("01001", "10010")


def test_span1_law_on_fibonacci():
    rep = verify_span1(fibonacci(), 50)
    assert rep.passed and rep.variant == "lower" and rep.covered and rep.agrees


def test_span1_law_fails_after_shift():
    rep = verify_span1(Shifted(fibonacci(), 3), 20)
    assert not rep.passed and rep.failed_at == 2 and rep.agrees


def test_step_word_needs_a_shift():
    step = EventuallyPeriodic("0", "", "1")
    assert not verify_span1(step, 10).passed
    rep = verify_span1(Shifted(step, -1), 10)
    assert rep.passed and rep.variant == "upper"


@pytest.mark.parametrize("tail", ["01", "10", "0011", "0101"])
@pytest.mark.parametrize("depth", [1, 3])
def test_descent_reaches_span1(tail, depth):
    spec = CharacteristicSturmian(DirectiveSequence("", tail), "lower")
    top, gamma = push_forward(spec, Interval(0, 1), depth)
    trace = descend(top, gamma, n=40)
    spans = trace.spans()
    assert trace.reached_span1
    assert all(a >= b for a, b in zip(spans, spans[1:]))


def test_descent_rejects_non_attractors():
    with pytest.raises(PreconditionError):
        descend(fibonacci(), Interval(5, 5), n=10)


def test_classify():
    assert classify_sturmian_span(Shifted(fibonacci(), 4)).attractor == Interval(-4, -3)
    orbit = OrbitPoint("sturmian", DirectiveSequence("", "01"))
    assert classify_sturmian_span(orbit).kind == "infinite"


@pytest.mark.parametrize("a", [0, 1])
def test_image_stays_characteristic(a):
    assert characteristic_image_check(fibonacci("upper"), a, n=30).passed
