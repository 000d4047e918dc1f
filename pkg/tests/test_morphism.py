import json

import pytest
from hypothesis import given, strategies as st

from biattr.errors import PreconditionError, SpecError
from biattr.morphism import L, L0, L1, Substitution

binary = st.text(alphabet="01", max_size=20)
images = st.text(alphabet="01", min_size=1, max_size=5)


def test_reserved_images():
    assert L0("11") == "0101"
    assert L0.table == {"0": "0", "1": "01"}
    assert L1.table == {"0": "10", "1": "1"}
    assert L(0) is L0 or L(0).table == L0.table


def test_erasing_and_unknown_letters():
    with pytest.raises(SpecError):
        Substitution.from_mapping({"0": "", "1": "1"})
    with pytest.raises(PreconditionError):
        L0("2")
    with pytest.raises(SpecError):
        Substitution.named("L7")


def test_json_round_trip():
    phi = Substitution.from_mapping({"0": "01", "1": "00"})
    assert Substitution.from_json(json.loads(json.dumps(phi.to_json()))).table == phi.table
    assert L1.to_json() == "L1"


@given(images, images, images, images, binary)
def test_compose_applies_inner_first(a, b, c, d, w):
    f = Substitution.from_mapping({"0": a, "1": b})
    g = Substitution.from_mapping({"0": c, "1": d})
    assert f.compose(g)(w) == f(g(w))


@given(images, images, binary, binary)
def test_morphism_property(a, b, u, v):
    f = Substitution.from_mapping({"0": a, "1": b})
    assert f(u + v) == f(u) + f(v)
    assert f.image_length(u) == len(f(u))
