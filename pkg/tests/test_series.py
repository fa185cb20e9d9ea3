from annuli.laurent import LaurentPoly
from annuli.rings import SCALARS
from annuli.scalars import Scalar
from annuli.series import TS, laurent_at_shifted_point


def ts(*coeffs):
    return TS(SCALARS, 0, [Scalar.of(c) for c in coeffs])


def test_inverse():
    f = ts(1, 2, 1, 0, 0)
    g = f.mul(f.inv())
    assert g.coeff(0) == Scalar(1)
    assert g.coeff(1).is_zero() and g.coeff(2).is_zero()


def test_nth_root_monic():
    f = ts(1, 2, 1, 0, 0)  # (1 + t)^2
    r = f.nth_root_monic(2)
    assert r.coeff(0) == Scalar(1) and r.coeff(1) == Scalar(1) and r.coeff(2).is_zero()
    c = ts(1, 3, 3, 1, 0, 0, 0).nth_root_monic(3)  # (1 + t)^3
    assert c.coeff(1) == Scalar(1) and c.coeff(2).is_zero()


def test_reversion_of_t_plus_t2():
    f = TS(SCALARS, 1, [Scalar(1), Scalar(1), Scalar(0), Scalar(0), Scalar(0)])
    g = f.reversion()
    # t = s - s^2 + 2 s^3 - 5 s^4 + ...
    assert [g.coeff(i) for i in (1, 2, 3, 4)] == [Scalar(1), Scalar(-1), Scalar(2), Scalar(-5)]


def test_laurent_at_shifted_point_with_pole():
    phi = LaurentPoly({2: 1, 0: -3, -1: 2})
    s = laurent_at_shifted_point(SCALARS, phi, Scalar(1), 6)
    # phi(1 + tau) = 3 tau^2 - 2 tau^3 + 2 tau^4 - ...
    assert s.coeff(0).is_zero() and s.coeff(1).is_zero()
    assert s.coeff(2) == Scalar(3) and s.coeff(3) == Scalar(-2) and s.coeff(4) == Scalar(2)


def test_laurent_at_shifted_point_positive_bot():
    phi = LaurentPoly({3: 1, 2: -1})  # t^2 (t - 1)
    s = laurent_at_shifted_point(SCALARS, phi, Scalar("2/3"), 5)
    assert s.coeff(0) == Scalar("-4/27")
    assert s.coeff(1).is_zero()  # critical point of t^3 - t^2
    assert s.coeff(2) == Scalar(1)


def test_compose_laurent_negative_powers():
    inner = TS(SCALARS, 1, [Scalar(1), Scalar(1)] + [Scalar(0)] * 6)  # t + t^2
    f = LaurentPoly({-1: 1})  # 1/t
    out = inner.compose_laurent(f, 6)
    # 1/(t + t^2) = t^-1 - 1 + t - t^2 + ...
    assert out.coeff(-1) == Scalar(1) and out.coeff(0) == Scalar(-1) and out.coeff(1) == Scalar(1)
