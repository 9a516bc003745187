import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hypermod.qmodular import (
    ETA_ARGUMENT_C_AS_PRINTED,
    Q_IDENTITIES,
    QSeries,
    QSeriesError,
    compose_h,
    eisenstein,
    equal_q,
    eta_quotient,
    hauptmodul,
    logderiv_z,
    rational_in,
    verify_q_identity,
)
from hypermod.series import PowerSeries

from oracles import euler_product, naive_inverse, naive_mul, naive_power, residue_product, sigma

N = 30


def test_eta_head_against_product():
    eta = eta_quotient([(1, 1)], N)
    assert eta.frac24 == 1
    assert list(eta.coeffs) == euler_product(N)
    assert eta.coeffs[:8] == (1, -1, -1, 0, 0, 1, 0, 1)


@given(st.lists(st.tuples(st.integers(1, 6), st.integers(-4, 4)), min_size=1, max_size=3))
@settings(max_examples=30, deadline=None)
def test_eta_quotient_against_product(spec):
    n = 20
    num, den = [1] + [0] * n, [1] + [0] * n
    for m, e in spec:
        power = naive_power(euler_product(n, m), abs(e), n)
        if e > 0:
            num = naive_mul(num, power, n)
        else:
            den = naive_mul(den, power, n)
    q = eta_quotient(spec, n)
    assert q.frac24 == sum(m * e for m, e in spec)
    assert list(q.coeffs) == naive_mul(num, naive_inverse(den, n), n)


def test_discriminant_spec():
    delta = eta_quotient([(1, 24)], 10)
    assert delta.frac24 == 24
    # Ramanujan tau(1..6) after dividing by q
    assert delta.coeffs[:6] == (1, -24, 252, -1472, 4830, -6048)


@pytest.mark.parametrize("kind,c,k", [("P", -24, 1), ("Q", 240, 3)])
def test_eisenstein_against_divisor_sums(kind, c, k):
    for m in (1, 2, 3):
        e = eisenstein(kind, m, N)
        want = [1] + [c * sigma(n // m, k) if n % m == 0 else 0 for n in range(1, N + 1)]
        assert list(e.coeffs) == want
    assert eisenstein("P", 1, 4).coeffs == (1, -24, -72, -96, -168)
    assert eisenstein("Q", 1, 3).coeffs == (1, 240, 2160, 6720)


def test_hauptmoduls_against_products():
    h = hauptmodul(12, N)
    k = hauptmodul(10, N)
    assert h.frac24 == k.frac24 == 24
    assert list(h.coeffs) == residue_product(12, (11, 1), (7, 5), N)
    assert list(k.coeffs) == residue_product(10, (9, 8, 2, 1), (7, 6, 4, 3), N)
    # as plain q-series: q - q^2 + q^6 - q^7 + q^8 - q^9
    assert h.plain().coeffs[:10] == (0, 1, -1, 0, 0, 0, 1, -1, 1, -1)
    assert k.plain().coeffs[:4] == (0, 1, -1, -1)
    with pytest.raises(QSeriesError):
        hauptmodul(11, 5)


def test_logderiv_of_h():
    h = hauptmodul(12, N)
    z = logderiv_z(h)
    # independent: q u'/u + 1 with u the unit part
    u = residue_product(12, (11, 1), (7, 5), N)
    want = naive_mul([i * c for i, c in enumerate(u)], naive_inverse(u, N), N)
    want[0] += 1
    assert list(z.coeffs) == want
    assert z.coeffs[:6] == (1, -1, -1, -1, -1, 4)


def test_logderiv_trivial_and_errors():
    assert logderiv_z(QSeries(24, (1, 0, 0, 0))).coeffs == (1, 0, 0, 0)
    with pytest.raises(QSeriesError):
        logderiv_z(QSeries(48, (1, 2, 3)))
    with pytest.raises(QSeriesError):
        logderiv_z(QSeries(24, (2, 1, 0)))


def test_compose_h():
    h = hauptmodul(12, N)
    ident = PowerSeries("t", (0, 1) + (0,) * N)
    assert compose_h(ident, h).coeffs == h.plain().coeffs
    assert compose_h(ident, h, 10).order == 10
    p = rational_in(h, (0, 1), (1, 0, 1))
    assert p.plain().coeffs[:3] == (0, 1, -1)
    # h/(1+h^2) as the power series sum (-1)^j h^(2j+1)
    outer = PowerSeries("t", tuple((-1) ** (i // 2) if i % 2 else 0 for i in range(N + 1)))
    assert equal_q(compose_h(outer, h), QSeries(0, p.plain().coeffs)) == (True, None)


def test_p_equals_eta_quotient():
    assert verify_q_identity("C74", N).certified


def test_sign_substitution_and_sqrt():
    q = QSeries(24, (1, 2, 3, 4))
    assert q.substitute_sign().coeffs == (-1, 2, -3, 4)
    sq = (eisenstein("Q", 1, 20)).sqrt()
    assert sq * sq == eisenstein("Q", 1, 20)
    with pytest.raises(QSeriesError):
        QSeries(24, (1, 1)).sqrt()


def test_arithmetic_alignment():
    a = QSeries(24, (1, 1, 0, 0))
    b = QSeries(0, (0, 1, 1, 0))
    ok, _ = equal_q(a, b)
    assert ok
    assert equal_q(QSeries(1, (1,)), QSeries(2, (1,))) == (False, None)
    assert QSeries.from_json(a.to_json()) == a
    assert a.leading_power() == 1


@pytest.mark.parametrize("qid", list(Q_IDENTITIES))
def test_identities_certify(qid):
    order = 60 if qid == "M2" else min(Q_IDENTITIES[qid][1], 30)
    rep = verify_q_identity(qid, order)
    assert rep.certified, rep.to_json()


@pytest.mark.parametrize("qid,where", [("H7.a", 2), ("H7.d", 3)])
def test_as_printed_h_forms_fail(qid, where):
    rep = verify_q_identity(qid, 20)
    assert rep.variants == {"corrected": "certified", "as_printed": "failed"}
    assert rep.notes == [f"as-printed form failed at q^{where}"]


def test_as_printed_eta_forms_fail():
    for qid in ("L73.c", "M1"):
        rep = verify_q_identity(qid, 20)
        assert rep.variants.get("as_printed") == "failed", qid
    assert ETA_ARGUMENT_C_AS_PRINTED[-1] == (3, -3)


def test_m2_sign_relation_directly():
    n = 60
    lhs = eisenstein("P", 1, n).substitute_sign()
    rhs = (eisenstein("P", 1, n).scale(-1) + eisenstein("P", 2, n).scale(6)
           - eisenstein("P", 4, n).scale(4))
    assert equal_q(lhs, rhs) == (True, None)


def test_unknown_identity():
    with pytest.raises(KeyError):
        verify_q_identity("L99")
