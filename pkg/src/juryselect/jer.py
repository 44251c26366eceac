"""Jury error rate for majority voting over independent, unequal voters.

The number of wrong voters in a group follows a Poisson-Binomial
distribution; the group errs when that count reaches the majority
threshold (n+1)/2.  Three routes to the same tail probability live here:

* ``jer_naive``   -- exact subset enumeration, the oracle the fast paths
  are checked against (capped at n = 25);
* ``jer_dp``      -- O(n^2) tail recurrence with two rolling rows;
* ``wrong_count_distribution`` + ``jer_from_distribution`` -- O(n log n)
  divide and conquer that builds the full wrong-count mass by polynomial
  convolution (FFT above a size cutoff).

A Paley-Zygmund style lower bound (``jer_lower_bound``) lets callers skip
full evaluations when the bound already exceeds a known-better value.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence, Union

import numpy as np

from .errors import EvenSize, InvalidDistribution, InvalidJury, SizeLimitExceeded

EPSILON_FLOOR = 1e-6
EPSILON_CEIL = 1.0 - 1e-6

# min(len) at or below this uses the direct product; FFT otherwise.  Both
# paths must agree within 1e-9, so the value only affects speed.
DIRECT_CONVOLUTION_MAX = 64

# 2**25 terms is a few seconds of vectorized work; past that the
# enumeration stops being a usable oracle.
NAIVE_SIZE_MAX = 25

_NEGATIVE_MASS_TOL = 1e-9
_MASS_SUM_TOL = 1e-6


def clamp_epsilon(value: float) -> float:
    """Clamp an individual error rate into [1e-6, 1 - 1e-6]."""
    return min(max(float(value), EPSILON_FLOOR), EPSILON_CEIL)


@dataclass(frozen=True)
class Juror:
    """One candidate voter: identifier, error rate, payment requirement.

    ``epsilon`` is the probability of voting against the ground truth and
    is clamped into [1e-6, 1 - 1e-6] on construction so that estimated
    scores hitting 0 or 1 never produce a deterministic voter.
    ``requirement`` is the payment needed to enroll the juror (0 for
    altruistic voters).
    """

    id: str
    epsilon: float
    requirement: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "epsilon", clamp_epsilon(self.epsilon))
        object.__setattr__(self, "requirement", float(self.requirement))
        if not self.requirement >= 0.0:
            raise ValueError(f"juror {self.id!r}: requirement must be >= 0")


@dataclass(frozen=True)
class Jury:
    """An odd-sized group of distinct jurors voting under majority rule."""

    members: tuple[Juror, ...]

    def __post_init__(self):
        members = tuple(self.members)
        object.__setattr__(self, "members", members)
        n = len(members)
        if n == 0:
            raise InvalidJury("a jury needs at least one member")
        if n % 2 == 0:
            raise InvalidJury(f"jury size must be odd, got {n}")
        if len({j.id for j in members}) != n:
            raise InvalidJury("jury member ids must be distinct")

    @classmethod
    def from_epsilons(cls, epsilons: Iterable[float], requirement: float = 0.0) -> "Jury":
        """Build a jury with generated ids; handy for tests and demos."""
        members = [Juror(f"j{i}", e, requirement) for i, e in enumerate(epsilons)]
        return cls(tuple(members))

    @property
    def size(self) -> int:
        return len(self.members)

    @property
    def epsilons(self) -> np.ndarray:
        return np.array([j.epsilon for j in self.members])

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)


JuryLike = Union[Jury, Sequence[Juror]]


def _epsilons(jury: JuryLike, require_odd: bool = True) -> np.ndarray:
    """Extract the error-rate vector, validating size parity."""
    if isinstance(jury, Jury):
        eps = jury.epsilons
    else:
        members = tuple(jury)
        if not all(isinstance(j, Juror) for j in members):
            raise InvalidJury("jury members must be Juror instances")
        eps = np.array([j.epsilon for j in members])
    if eps.size == 0:
        raise InvalidJury("a jury needs at least one member")
    if require_odd and eps.size % 2 == 0:
        raise InvalidJury(f"jury size must be odd, got {eps.size}")
    return eps


@dataclass(frozen=True)
class WrongCountDistribution:
    """Probability mass of the number of wrong voters in a group of size n.

    ``mass[k]`` is Pr(exactly k of the n voters are wrong).  Construction
    clamps FFT round-off residue (entries within 1e-9 outside [0, 1]) and
    rejects anything further out, and requires the total mass to be 1
    within 1e-6.
    """

    mass: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.mass, dtype=float)
        if arr.ndim != 1 or arr.size == 0:
            raise InvalidDistribution("mass must be a non-empty 1-d array")
        if not np.all(np.isfinite(arr)):
            raise InvalidDistribution("mass must be finite")
        low = arr.min()
        if low < -_NEGATIVE_MASS_TOL:
            raise InvalidDistribution(
                f"mass has entry {low}, below the -{_NEGATIVE_MASS_TOL} round-off allowance"
            )
        high = arr.max()
        if high > 1.0 + _NEGATIVE_MASS_TOL:
            raise InvalidDistribution(
                f"mass has entry {high}, above the 1 + {_NEGATIVE_MASS_TOL} round-off allowance"
            )
        arr = np.clip(arr, 0.0, 1.0)
        total = float(arr.sum())
        if abs(total - 1.0) > _MASS_SUM_TOL:
            raise InvalidDistribution(f"mass sums to {total}, expected 1 within {_MASS_SUM_TOL}")
        arr.setflags(write=False)
        object.__setattr__(self, "mass", arr)

    @property
    def size(self) -> int:
        """The group size n; the mass vector has n + 1 entries."""
        return self.mass.size - 1

    def __len__(self) -> int:
        return self.mass.size

    def __getitem__(self, index):
        return self.mass[index]

    def __iter__(self):
        return iter(self.mass)


@dataclass(frozen=True)
class BoundDiagnostics:
    """Moments behind the tail lower bound.

    ``mu`` and ``sigma_sq`` are the mean and variance of the wrong count,
    ``gamma`` is the majority threshold divided by ``mu``.  ``bound`` is
    the Paley-Zygmund tail bound (1-g)^2 mu^2 / ((1-g)^2 mu^2 + s^2) and
    is only present when gamma lies in (0, 1); outside that window the
    inequality says nothing and callers must evaluate the tail directly.
    """

    mu: float
    sigma_sq: float
    gamma: float
    bound: float | None = None


def jer_naive(jury: JuryLike) -> float:
    """Group error rate by enumerating every majority-sized wrong subset.

    Sums prod(eps_i, i in A) * prod(1 - eps_j, j not in A) over all subsets
    A with |A| >= (n+1)/2.  Exponential; refuses n > 25.  This is the
    ground truth the two fast algorithms are validated against.
    """
    eps = _epsilons(jury)
    n = int(eps.size)
    if n > NAIVE_SIZE_MAX:
        raise SizeLimitExceeded(f"naive enumeration capped at n = {NAIVE_SIZE_MAX}, got {n}")
    threshold = (n + 1) // 2
    shifts = np.arange(n, dtype=np.int64)
    total = 0.0
    chunk = 1 << 16
    for lo in range(0, 1 << n, chunk):
        masks = np.arange(lo, min(lo + chunk, 1 << n), dtype=np.int64)
        wrong = (masks[:, None] >> shifts) & 1
        keep = wrong.sum(axis=1) >= threshold
        if not keep.any():
            continue
        picked = wrong[keep].astype(bool)
        total += float(np.where(picked, eps, 1.0 - eps).prod(axis=1).sum())
    return min(max(total, 0.0), 1.0)


def _tail_recurrence(eps: np.ndarray) -> float:
    # All-positive updates, so tiny tails keep their relative accuracy.
    threshold = (eps.size + 1) // 2
    row = np.zeros(threshold + 1)
    row[0] = 1.0
    for e in eps:
        row[1:] = row[1:] * (1.0 - e) + row[:-1] * e
    return float(min(max(row[threshold], 0.0), 1.0))


def jer_dp(jury: JuryLike) -> float:
    """Group error rate via the tail recurrence, one juror at a time.

    Maintains row[l] = Pr(wrong count >= l | jurors seen so far) for l up
    to the majority threshold; absorbing juror m maps the row through

        row'[l] = row[l-1] * eps_m + row[l] * (1 - eps_m)

    with row[0] pinned at 1.  O(n^2) time, two rows of working space.
    """
    return _tail_recurrence(_epsilons(jury))


def _convolve_mass(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if min(a.size, b.size) <= DIRECT_CONVOLUTION_MAX:
        return np.convolve(a, b)
    out_len = a.size + b.size - 1
    size = 1 << (out_len - 1).bit_length()
    spectrum = np.fft.rfft(a, size) * np.fft.rfft(b, size)
    return np.fft.irfft(spectrum, size)[:out_len]


def convolve(
    a: WrongCountDistribution | Sequence[float],
    b: WrongCountDistribution | Sequence[float],
) -> WrongCountDistribution:
    """Distribution of the sum of two independent wrong counts.

    Direct product for small inputs, FFT multiplication for large ones;
    the two paths agree within 1e-9 and tiny negative FFT residue is
    clamped to zero by the result's constructor.
    """
    if not isinstance(a, WrongCountDistribution):
        a = WrongCountDistribution(np.asarray(a, dtype=float))
    if not isinstance(b, WrongCountDistribution):
        b = WrongCountDistribution(np.asarray(b, dtype=float))
    return WrongCountDistribution(_convolve_mass(a.mass, b.mass))


def _cba(eps: np.ndarray) -> np.ndarray:
    n = eps.size
    if n == 1:
        e = eps[0]
        return np.array([1.0 - e, e])
    half = n // 2
    return _convolve_mass(_cba(eps[:half]), _cba(eps[half:]))


def wrong_count_distribution(jury: JuryLike) -> WrongCountDistribution:
    """Full wrong-count mass by divide and conquer.

    Splits the group into halves of sizes floor(n/2) and ceil(n/2),
    recurses, and merges with :func:`convolve`; a single juror contributes
    [1 - eps, eps].  Even-sized groups are accepted (the recursion halves
    do not preserve oddness), so the result may not support a majority
    tail; see :func:`jer_from_distribution`.
    """
    eps = _epsilons(jury, require_odd=False)
    return WrongCountDistribution(_cba(eps))


def jer_from_distribution(dist: WrongCountDistribution) -> float:
    """Majority-failure probability: the mass at or above (n+1)/2 wrong voters."""
    n = dist.size
    if n % 2 == 0:
        raise EvenSize(f"majority threshold undefined for even group size {n}")
    tail = float(dist.mass[(n + 1) // 2 :].sum())
    return min(max(tail, 0.0), 1.0)


def jer_cba(jury: JuryLike) -> float:
    """Group error rate via the convolution route; equals jer_dp within round-off."""
    eps = _epsilons(jury)
    return jer_from_distribution(WrongCountDistribution(_cba(eps)))


def jer_lower_bound(jury: JuryLike) -> BoundDiagnostics:
    """O(n) tail lower bound from the first two moments of the wrong count.

    Returns the moments always; the bound itself only when
    gamma = ((n+1)/2) / mu falls in (0, 1), the window where the
    Paley-Zygmund inequality applies.
    """
    eps = _epsilons(jury)
    n = int(eps.size)
    mu = float(eps.sum())
    sigma_sq = float((eps * (1.0 - eps)).sum())
    gamma = ((n + 1) / 2) / mu
    bound = None
    if 0.0 < gamma < 1.0:
        lead = (1.0 - gamma) ** 2 * mu**2
        bound = lead / (lead + sigma_sq)
    return BoundDiagnostics(mu=mu, sigma_sq=sigma_sq, gamma=gamma, bound=bound)
