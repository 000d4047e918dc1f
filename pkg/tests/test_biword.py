import pytest
from hypothesis import given, strategies as st

import oracles
from biattr.biword import (CharacteristicSturmian, DirectiveSequence, EventuallyPeriodic,
                           MorphicImage, NormalForm, OrbitPoint, PurelyPeriodic, Shifted,
                           Window, dumps_spec, factor_complexity_profile, fibonacci,
                           image_support, left_special_prefix, loads_spec,
                           normalize_eventually_periodic, reduce_spec, sample_language,
                           standard_slice)
from biattr.config import work_ceiling
from biattr.errors import PreconditionError, ResourceLimitError, SpecError
from biattr.morphism import Substitution

word = st.text(alphabet="01", min_size=1, max_size=6)
tails = st.sampled_from(["01", "10", "0011", "0101", "001", "110", "0111"])
PSI = Substitution.from_mapping({"0": "01", "1": "00"})


def test_step_word_window():
    assert EventuallyPeriodic("0", "", "1").window(-2, 1).content == "0011"


def test_fibonacci_window_and_prefix():
    assert fibonacci().window(-4, 5).content == "0010100100"
    assert left_special_prefix(fibonacci().directive, 5) == "01001"


def test_window_bounds():
    w = Window(-2, "0011")
    assert w.end == 1 and w.at(-1) == "0" and w.slice(0, 1) == "11"
    with pytest.raises(PreconditionError):
        w.at(2)


def test_directive_needs_both_letters():
    with pytest.raises(SpecError):
        DirectiveSequence("0", "1")


@given(word, st.text(alphabet="01", max_size=8), word, st.integers(-40, 40), st.integers(0, 40))
def test_ep_window_matches_oracle(u, c, v, i, length):
    x = EventuallyPeriodic(u, c, v)
    assert x.window(i, i + length).content == oracles.ep_window(u, c, v, i, i + length)


@pytest.mark.parametrize("head,tail", [("", "01"), ("", "10"), ("", "0011"), ("1", "001"),
                                       ("00", "10")])
@pytest.mark.parametrize("variant", ["upper", "lower"])
def test_char_window_matches_mechanical_word(head, tail, variant):
    x = CharacteristicSturmian(DirectiveSequence(head, tail), variant)
    assert x.window(-300, 301).content == oracles.char_window(head, tail, variant, 300)


@given(tails, st.integers(0, 5000), st.integers(0, 300))
def test_random_access_matches_prefix(tail, lo, length):
    d = DirectiveSequence("", tail)
    assert standard_slice(d, lo, lo + length) == left_special_prefix(d, lo + length)[lo:]


def test_far_window_uses_random_access():
    # a window near 2^20 would need a million symbols by direct expansion
    x = fibonacci()
    far = 1 << 20
    with work_ceiling(100_000):
        got = x.window(far, far + 20).content
    alpha = oracles.slope("", "01")
    expect = "".join(oracles.mechanical_standard(alpha, far + 20)[far - 2:far + 19])
    assert got == expect


def test_ceiling_is_enforced():
    with work_ceiling(100):
        with pytest.raises(ResourceLimitError):
            EventuallyPeriodic("0", "", "1").window(0, 1000)


def test_image_support_and_window():
    f = fibonacci()
    x = MorphicImage(f, PSI, 0)
    assert PSI("01001") == "0100010100"
    assert x.window(0, 9).content == PSI(f.window(0, 4).content) == "0001010001"
    assert x.window(-4, -1).content == PSI(f.window(-2, -1).content)
    assert image_support(f, PSI, 2) == (4, 5)


def test_shift_convention():
    f = fibonacci()
    assert Shifted(f, 3).window(0, 4).content == f.window(3, 7).content


def test_reduce_nested():
    f = fibonacci()
    r = reduce_spec(Shifted(MorphicImage(Shifted(f, 2), PSI, 1), -1))
    assert isinstance(r.base, CharacteristicSturmian)
    x = MorphicImage(f, r.phi, 0)
    assert Shifted(x, r.shift).window(-30, 30) == \
        Shifted(MorphicImage(Shifted(f, 2), PSI, 1), -1).window(-30, 30)


def test_normal_forms():
    assert normalize_eventually_periodic(EventuallyPeriodic("0", "", "1")) == NormalForm(0, 1, -1, 1)
    assert isinstance(normalize_eventually_periodic(EventuallyPeriodic("01", "0", "10")),
                      PurelyPeriodic)


def test_sample_language_complexity():
    s = sample_language(fibonacci(), 12)
    assert s.profile() == tuple(range(2, 14))
    profile, _ = factor_complexity_profile(EventuallyPeriodic("0", "", "1"), 5)
    assert profile == (2, 3, 4, 5, 6)


def test_orbit_points_have_no_window():
    p = OrbitPoint("sturmian", DirectiveSequence("", "01"))
    with pytest.raises(PreconditionError):
        p.window(0, 1)


@pytest.mark.parametrize("spec", [
    EventuallyPeriodic("0", "1", "01"),
    fibonacci("upper"),
    Shifted(MorphicImage(fibonacci(), PSI, 1), -3),
    MorphicImage(fibonacci(), Substitution.named("L1"), 0),
    OrbitPoint("quasi-sturmian", DirectiveSequence("0", "01"), PSI),
])
def test_json_round_trip(spec):
    assert loads_spec(dumps_spec(spec)) == spec


@pytest.mark.parametrize("text,needle", [
    ('{"type": "char-sturmian", "tail": "01"}', "head"),
    ('{"type": "shift", "inner": {"type": "eventually-periodic"}, "m": 1}', "$.inner"),
    ('{"type": "blob"}', "unknown spec type"),
    ('{"type": ', "line 1"),
])
def test_json_errors_name_the_field(text, needle):
    with pytest.raises(SpecError, match=needle.replace("$", r"\$")):
        loads_spec(text)
