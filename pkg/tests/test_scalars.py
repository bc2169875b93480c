from fractions import Fraction

import pytest

from diagforge.scalars import (
    ComplexRational,
    abs2,
    conj,
    exact_complex,
    im_part,
    is_exact,
    is_real,
    re_part,
    scalar_abs,
    scalar_family,
    to_float,
)


def test_exact_complex_collapses_real():
    assert exact_complex(3, 0) == Fraction(3)
    assert isinstance(exact_complex(3, 0), Fraction)
    z = exact_complex(Fraction(1, 2), -2)
    assert isinstance(z, ComplexRational)
    assert z.re == Fraction(1, 2) and z.im == Fraction(-2)


def test_complex_rational_arithmetic():
    z = exact_complex(-2, 3)
    w = exact_complex(-2, -3)
    assert z + w == Fraction(-4)
    assert z * w == Fraction(13)       # (-2)^2 + 3^2
    assert conj(z) == w
    assert abs2(z) == Fraction(13)
    assert z - z == Fraction(0)
    assert complex(z) == complex(-2, 3)


def test_complex_rational_rejects_floats():
    z = exact_complex(1, 1)
    with pytest.raises(TypeError):
        z + 0.5
    with pytest.raises(TypeError):
        0.5 * z


def test_part_helpers_cover_both_backends():
    assert re_part(complex(1.5, -2.0)) == 1.5
    assert im_part(complex(1.5, -2.0)) == -2.0
    assert im_part(Fraction(7)) == Fraction(0)
    assert is_real(Fraction(7)) and is_real(complex(2.0, 0.0))
    assert not is_real(exact_complex(1, 1))
    assert abs2(complex(3.0, 4.0)) == 25.0
    assert scalar_abs(exact_complex(3, 4)) == 5.0
    assert to_float(Fraction(1, 4)) == 0.25
    assert to_float(exact_complex(1, 2)) == complex(1, 2)


def test_scalar_family_rules():
    assert scalar_family([1, 2, 3]) == "int"
    assert scalar_family([1, Fraction(1, 2)]) == "exact"
    assert scalar_family([1, 2.0]) == "float"
    with pytest.raises(TypeError):
        scalar_family([Fraction(1, 2), 2.0])
    assert is_exact(Fraction(1)) and is_exact(2) and not is_exact(2.0)
