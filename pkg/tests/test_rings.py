import pytest

from hdx.errors import InputFormatError
from hdx.rings import INTEGERS, modular_ring, parse_ring, prime_field


def test_parse_roundtrip():
    for spec in ["Z", "F2", "F7", "Z/6", "Z/2"]:
        assert str(parse_ring(spec)) == spec


def test_parse_rejects_garbage():
    for bad in ["F4", "F1", "Q", "Z/1", "Fx", "Z/x"]:
        with pytest.raises(InputFormatError):
            parse_ring(bad)


def test_reduce_and_neg():
    F3 = prime_field(3)
    assert F3.reduce(-1) == 2
    assert F3.neg(1) == 2
    Z6 = modular_ring(6)
    assert Z6.reduce(7) == 1
    assert INTEGERS.reduce(-5) == -5


def test_field_flags():
    assert prime_field(5).is_field
    assert modular_ring(5).is_field
    assert not modular_ring(6).is_field
    assert not INTEGERS.is_finite
    assert list(prime_field(3).elements()) == [0, 1, 2]
