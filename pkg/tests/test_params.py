"""Balanced parameter search."""

import pytest

from cardshare import balanced_tau, parameter_table, prime_power_above, validate_suitable
from cardshare.errors import InfeasibleParams, InvalidParams

PINNED_ROWS = [
    ((18, 4, 5), 2, 3, 2),
    ((54, 13, 14), 2, 3, 3),
    ((162, 40, 41), 2, 3, 4),
    ((486, 121, 122), 2, 3, 5),
    ((48, 5, 5, 6), 3, 4, 2),
    ((192, 21, 21, 22), 3, 4, 3),
    ((100, 6, 6, 6, 7), 4, 5, 2),
    ((500, 31, 31, 31, 32), 4, 5, 3),
]


def test_prime_power_above_examples():
    assert prime_power_above(1) == 2
    assert prime_power_above(2) == 3
    assert prime_power_above(4) == 5
    assert prime_power_above(6) == 7
    assert prime_power_above(8) == 9  # 3^2 beats 11 and 16
    with pytest.raises(InvalidParams):
        prime_power_above(0)


def test_prime_power_above_window():
    for m in range(1, 40):
        q = prime_power_above(m)
        assert m < q <= 2 * m


@pytest.mark.parametrize("tau,m,q,d", PINNED_ROWS)
def test_balanced_tau_pinned_rows(tau, m, q, d):
    got, cert = balanced_tau(m, q, d)
    assert got.sizes == tau
    assert cert.sizes == tau
    assert cert.a == q ** (d - 1) and cert.upper == 4 * m * m * cert.a


def test_balanced_tau_is_suitable_and_certified():
    for m in range(2, 9):
        q = prime_power_above(m)
        for d in range(2, 7):
            tau, cert = balanced_tau(m, q, d)
            params = validate_suitable(m, q, d, tau)
            assert params.tau.total == q ** (d + 1)
            assert all(cert.a < s < cert.upper for s in tau.sizes)


def test_balanced_tau_accepts_workable_d1():
    tau, cert = balanced_tau(2, 4, 1)
    assert tau.sizes == (12, 2, 2)
    assert (cert.a, cert.upper) == (1, 16)


def test_balanced_tau_infeasible_cases():
    with pytest.raises(InfeasibleParams):
        balanced_tau(2, 3, 1)  # splitting 3 cards two ways hits the q^{d-1} floor
    with pytest.raises(InfeasibleParams):
        balanced_tau(2, 7, 2)  # q above 2m: Alice's hand leaves the certified window


def test_parameter_table_reproduces_pinned_rows():
    rows = parameter_table(4, 5)
    table = {(r.tau.sizes, r.m, r.q, r.d) for r in rows}
    for pinned in PINNED_ROWS:
        assert pinned in table


def test_parameter_table_rows_all_validate():
    for row in parameter_table(6, 4):
        params = validate_suitable(row.m, row.q, row.d, row.tau)
        assert params.tau.total == row.q ** (row.d + 1)
        assert row.certificate.lower == row.certificate.a
        assert all(row.certificate.a < s < row.certificate.upper for s in row.tau.sizes)


def test_parameter_table_empty_ranges():
    assert parameter_table(1, 5) == []
    assert parameter_table(4, 1) == []
