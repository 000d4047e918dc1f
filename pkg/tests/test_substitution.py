import pytest
from hypothesis import given, settings, strategies as st

from biattr.attractor import FiniteSet, Interval
from biattr.biword import EventuallyPeriodic, MorphicImage, Window, fibonacci
from biattr.errors import PreconditionError
from biattr.morphism import L0, Substitution
from biattr.substitution import (apply, desubstitute_L, image_attractor, image_span_bound,
                                 is_acyclic, is_return_morphism, lift_attractor_return,
                                 preimage_attractor, trim_image_attractor)

PSI = Substitution.from_mapping({"0": "01", "1": "00"})
images = st.text(alphabet="01", min_size=1, max_size=4)


def test_apply_to_window():
    assert apply(PSI, Window(-1, "101")) == Window(-2, "000100")
    with pytest.raises(PreconditionError):
        apply(PSI, Window(3, "01"))
    assert isinstance(apply(PSI, fibonacci()), MorphicImage)


def test_image_and_preimage_on_fibonacci():
    f = fibonacci()
    # x[0..2] = 100, so psi(x) = 00 01 01 ...
    assert image_attractor(f, PSI, Interval(0, 1)) == FiniteSet((0, 1, 2, 3))
    assert preimage_attractor(f, PSI, FiniteSet((1, 2))) == FiniteSet((0, 1))


def test_acyclic():
    assert is_acyclic(PSI)
    assert not is_acyclic(Substitution.from_mapping({"0": "01", "1": "0101"}))


def test_return_morphism_certificates():
    assert is_return_morphism(Substitution.from_mapping({"0": "0", "1": "10"}), "0").valid
    # 001 does not end with 0
    assert not is_return_morphism(L0, "0").valid
    cert = is_return_morphism(Substitution.from_mapping({"0": "0010", "1": "10"}), "010")
    assert cert.valid and cert.to_dict()["letters"]["1"]["occurrences"] == [0, 2]


@settings(max_examples=40)
@given(images, images, st.integers(-5, 5), st.integers(0, 3))
def test_round_trip_identities(a, b, lo, k):
    phi = Substitution.from_mapping({"0": a, "1": b})
    f = fibonacci()
    gamma = Interval(lo, lo + k)
    img = image_attractor(f, phi, gamma)
    assert preimage_attractor(f, phi, img) == FiniteSet(gamma.positions)
    back = image_attractor(f, phi, preimage_attractor(f, phi, gamma))
    assert set(gamma) <= set(back)
    assert img.span <= image_span_bound(gamma, phi)


def test_trim_and_lift():
    f = fibonacci()
    phi = Substitution.from_mapping({"0": "0", "1": "10"})
    v = trim_image_attractor(f, phi, "0", Interval(0, 1), n=30)
    assert v.valid
    lifted = lift_attractor_return(f, phi, "0", Interval(0, 1), n=30)
    assert lifted.attractor.span >= 1 and lifted.valid


def test_l0_worked_instance():
    y = EventuallyPeriodic("1", "0", "1")
    x = MorphicImage(y, L0, 0)
    assert x.window(-4, 5).content == "0101001010"
    res = desubstitute_L(y, 0, Interval(1, 2), n=50)
    assert res.attractor == Interval(0, 1)
    assert not res.removal.removed_left and not res.removal.removed_right
    assert res.report.covered
