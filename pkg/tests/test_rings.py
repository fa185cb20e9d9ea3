import pytest

from annuli.laurent import LaurentPoly, poly_gcd, make_poly
from annuli.rings import BranchState, Quotient, SCALARS, SplitEvent, explore_branches, quotient_gcd
from annuli.scalars import DivisionByZero, Scalar


def ring_mod(*coeffs):
    return Quotient(SCALARS, [Scalar.of(c) for c in coeffs], "pt")


def test_gcd_over_cyclotomic_quotient():
    # over Q[s]/(s^2+s+1): gcd(u^2 - s u, u - s) = u - s
    R = ring_mod(1, 1, 1)
    s = R.gen()
    g = quotient_gcd(R, [R.zero(), R.neg(s), R.one()], [R.neg(s), R.one()])
    assert g == [R.neg(s), R.one()]


def test_split_on_zero_divisor():
    # over Q[s]/(s^2-1): inverting (s-1) splits the modulus
    R = ring_mod(-1, 0, 1)
    with pytest.raises(SplitEvent) as exc:
        R.inv(R.sub(R.gen(), R.one()))
    f1, f2 = exc.value.f1, exc.value.f2
    roots = sorted([-f1[0].a / f1[1].a, -f2[0].a / f2[1].a])
    assert roots == [-1, 1]


def test_gcd_with_zero_is_monic():
    R = ring_mod(1, 1, 1)
    f = [R.from_scalar(Scalar(2)), R.from_scalar(Scalar(4))]
    assert quotient_gcd(R, f, []) == [R.from_scalar(Scalar("1/2")), R.one()]


def test_inv_zero_raises():
    R = ring_mod(1, 1, 1)
    with pytest.raises(DivisionByZero):
        R.inv(R.zero())


def test_explore_branches_covers_factors():
    def fn(st: BranchState):
        R = st.quotient(SCALARS, "pt", [Scalar(-1), Scalar(0), Scalar(1)])
        x = R.sub(R.gen(), R.one())
        return R.decide_zero(x)

    assert sorted(explore_branches(fn)) == [False, True]


def test_split_gcds_match_per_factor_gcds():
    # modulus (s^2 - 1): after exhaustive splitting, quotient gcds agree with
    # the gcds computed over each factor separately
    f = make_poly(0, -1, 1)  # u^2 - u
    g = make_poly(-1, 1)  # u - 1

    def over(st: BranchState):
        R = st.quotient(SCALARS, "pt", [Scalar(-1), Scalar(0), Scalar(1)])
        s = R.gen()
        # u^2 - s*u vs u - s: gcd depends on the branch only via s
        a = [R.zero(), R.neg(s), R.one()]
        b = [R.neg(s), R.one()]
        gg = quotient_gcd(R, a, b)
        return [R.as_scalar(c) for c in gg]

    branches = explore_branches(over)
    assert len(branches) >= 1
    for out in branches:
        assert out[-1] == Scalar(1)  # monic, degree 1: u - s on every branch


def test_nested_tower_arithmetic():
    base = Quotient(SCALARS, [Scalar(1), Scalar(1), Scalar(1)], "pt")  # s^2+s+1
    s = base.gen()
    # adjoin g with g^2 = s (a unit)
    R2 = Quotient(base, [base.neg(s), base.zero(), base.one()], "rt")
    g = R2.gen()
    assert R2.eq(R2.mul(g, g), R2.from_base(s))
    gi = R2.inv(g)
    assert R2.eq(R2.mul(g, gi), R2.one())
