"""Berry-Esseen bound arithmetic and the deviation sample-size construction.

The classical Berry-Esseen statement used throughout: for i.i.d. summands
with mean mu, standard deviation sigma and third absolute central moment
rho = E|X - mu|^3, the standardized-sum CDF G_n satisfies

    |G_n(x) - Phi(x)| <= 3 * rho / (sigma^3 * sqrt(n))   for all x,

with the printed constant 3 kept as-is (no modern sharpening).  From it,
``phi_of_k`` builds the smallest sample size at which the centered Bernoulli
sum escapes +/-k with probability > 1/2 - alpha on each side.
"""

import math
from dataclasses import dataclass, field

from .errors import InvalidInterval, ParameterOutOfRange


@dataclass(frozen=True)
class BEParams:
    """Moment triple (mean, standard deviation, third absolute central moment)."""

    mu: float
    sigma: float
    rho: float

    def __post_init__(self):
        if not self.sigma > 0.0:
            raise ParameterOutOfRange(f"sigma must be positive, got {self.sigma!r}")
        if not self.rho > 0.0:
            raise ParameterOutOfRange(f"rho must be positive, got {self.rho!r}")


@dataclass(frozen=True)
class PhiOfK:
    """Result of the deviation sample-size search.

    ``n1`` is the smallest n with 3*rho/(sigma^3*sqrt(n)) <= alpha/2 (the
    normal approximation is trusted from there on); ``n2`` is the smallest n
    with Phi(k/(sigma*sqrt(n))) < 1/2 + alpha/2 (a +/-k deviation is only
    half a standard error away); ``phi = max(n1, n2)``.
    """

    k: int
    alpha: float
    n1: int
    n2: int
    phi: int = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "phi", max(self.n1, self.n2))


def std_normal_cdf(z: float) -> float:
    """Standard normal CDF via the complementary error function.

    Phi(z) = erfc(-z / sqrt(2)) / 2; accurate to well below 1e-12 over the
    range that matters here (|z| <= 40 saturates to 0/1 in double precision).
    """
    return 0.5 * math.erfc(-z / math.sqrt(2.0))


def bernoulli_moments(q: float) -> BEParams:
    """Moments of a Bernoulli(q) draw: mean q, sd sqrt(q(1-q)),
    third absolute central moment q^3(1-q) + (1-q)^3 q."""
    if not 0.0 < q < 1.0:
        raise ParameterOutOfRange(f"bernoulli_moments requires 0 < q < 1, got {q!r}")
    sigma = math.sqrt(q * (1.0 - q))
    rho = q**3 * (1.0 - q) + (1.0 - q) ** 3 * q
    return BEParams(mu=q, sigma=sigma, rho=rho)


def be_bound(params: BEParams, n: int) -> float:
    """The uniform CDF error bound 3*rho/(sigma^3*sqrt(n)) at sample size n."""
    return 3.0 * params.rho / (params.sigma**3 * math.sqrt(n))


def interval_prob_bounds(
    params: BEParams, n: int, z1: float, z2: float
) -> tuple[float, float]:
    """Certified bracket for P(z1 < sqrt(n)*(mean_n - mu)/sigma <= z2).

    Combines the normal-window mass Phi(z2) - Phi(z1) with the two-sided
    slack 6*rho/(sigma^3*sqrt(n)) (one bound contribution per endpoint),
    clipped into [0, 1].  Endpoints may be -inf/+inf.
    """
    if not z1 < z2:
        raise InvalidInterval(f"need z1 < z2, got {z1!r} >= {z2!r}")
    width = std_normal_cdf(z2) - std_normal_cdf(z1)
    slack = 2.0 * be_bound(params, n)
    return max(0.0, width - slack), min(1.0, width + slack)


def phi_of_k(params: BEParams, k: int, alpha: float) -> PhiOfK:
    """Smallest block length making +/-k deviations of the centered sum likely.

    Parameters
    ----------
    params :
        Summand moments (use :func:`bernoulli_moments` for coin experiments).
    k :
        Deviation threshold, a positive integer.
    alpha :
        Slack in (0, 1/2); the guaranteed one-sided escape probability at
        ``phi`` is > 1/2 - alpha.

    Both component sizes are minimal: their conditions fail at n1 - 1 and
    n2 - 1.  The n1 condition is a weak inequality and the n2 condition is
    strict, so the two strictnesses combine to the strict lemma conclusion.
    """
    if k < 1:
        raise ParameterOutOfRange(f"k must be a positive integer, got {k!r}")
    if not 0.0 < alpha < 0.5:
        raise ParameterOutOfRange(f"alpha must be in (0, 1/2), got {alpha!r}")
    half = alpha / 2.0
    n1 = _least_n(lambda n: be_bound(params, n) <= half)
    n2 = _least_n(
        lambda n: std_normal_cdf(k / (params.sigma * math.sqrt(n))) < 0.5 + half
    )
    return PhiOfK(k=k, alpha=alpha, n1=n1, n2=n2)


def _least_n(pred) -> int:
    """Least n >= 1 satisfying a monotone predicate, by doubling + bisection."""
    if pred(1):
        return 1
    lo, hi = 1, 2  # invariant: pred(lo) false
    while not pred(hi):
        lo, hi = hi, hi * 2
        if hi > 1 << 62:
            raise ParameterOutOfRange("no feasible n below 2^62")
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if pred(mid):
            hi = mid
        else:
            lo = mid
    return hi
