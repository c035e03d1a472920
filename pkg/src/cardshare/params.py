"""Choosing reasonably balanced protocol parameters.

Alice always holds q**(d+1) - q**d cards, so the deal is never uniform; but
with q chosen in (m, 2m] — a prime power always exists there, since that
window contains a power of two — every hand can be kept within a factor of
4*m**2 of a = q**(d-1).  The remaining q**d cards are split among the other
m agents as evenly as possible.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import BobTooSmall, InfeasibleParams, InvalidParams
from .fields import factor_prime_power
from .protocol import DistributionType, validate_suitable

__all__ = ["BalanceCertificate", "ParameterRow", "prime_power_above", "balanced_tau", "parameter_table"]


@dataclass(frozen=True)
class BalanceCertificate:
    """Witness that every hand size lies strictly inside (a, 4 * m**2 * a)."""

    a: int
    lower: int
    upper: int
    sizes: tuple[int, ...]


@dataclass(frozen=True)
class ParameterRow:
    tau: DistributionType
    m: int
    q: int
    d: int
    certificate: BalanceCertificate


def _is_prime_power(n: int) -> bool:
    try:
        factor_prime_power(n)
        return True
    except InvalidParams:
        return False


def prime_power_above(m: int) -> int:
    """The smallest prime power q with m < q <= 2m."""
    if m < 1:
        raise InvalidParams(f"need m >= 1, got {m}")
    for q in range(m + 1, 2 * m + 1):
        if _is_prime_power(q):
            return q
    raise AssertionError(f"no prime power in ({m}, {2 * m}]")  # unreachable: a power of 2 is in range


def balanced_tau(m: int, q: int, d: int) -> tuple[DistributionType, BalanceCertificate]:
    """The most balanced suitable distribution type for (m, q, d).

    Alice gets q**(d+1) - q**d; the remaining q**d cards are split as evenly
    as possible among the m other agents, smaller hands first.  Requires
    d >= 2 to be feasible for every q > m; d = 1 is accepted when the split
    still works out (e.g. m=2, q=4 gives (12, 2, 2)).
    """
    alice = q ** (d + 1) - q**d
    base, rem = divmod(q**d, m)
    bobs = (base,) * (m - rem) + (base + 1,) * rem
    try:
        params = validate_suitable(m, q, d, (alice, *bobs))
    except BobTooSmall as exc:
        raise InfeasibleParams(f"no balanced split exists for m={m}, q={q}, d={d}") from exc
    a = q ** (d - 1)
    upper = 4 * m * m * a
    if not all(a < s < upper for s in params.tau.sizes):
        raise InfeasibleParams(
            f"hand sizes {params.tau.sizes} leave the certified window ({a}, {upper}); "
            f"is q within (m, 2m]?"
        )
    return params.tau, BalanceCertificate(a=a, lower=a, upper=upper, sizes=params.tau.sizes)


def parameter_table(max_m: int, max_d: int) -> list[ParameterRow]:
    """Balanced parameter rows for every m in [2, max_m] and d in [2, max_d]."""
    rows = []
    for m in range(2, max_m + 1):
        q = prime_power_above(m)
        for d in range(2, max_d + 1):
            tau, cert = balanced_tau(m, q, d)
            rows.append(ParameterRow(tau=tau, m=m, q=q, d=d, certificate=cert))
    return rows
