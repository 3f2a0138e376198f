"""Direction weights, their extremal bounds, and the decay exponent.

For a positive vector a and a direction x != 0 the k-th direction weight is
the ratio

    sum_i sigma_{k-1}(a less i) a_i^2 x_i^2
    -----------------------------------------  ,
    sigma_k(a) * sum_i a_i x_i^2

a number in (0, 1) for 1 <= k < n.  Over all directions it ranges between
two closed-form extremes, attained on the coordinate axes of the smallest
and largest entry:

    lower_k = a_min * sigma_{k-1}(a less min) / sigma_k(a)
    upper_k = a_max * sigma_{k-1}(a less max) / sigma_k(a).

Both chains are nondecreasing in k, start at 0, end at exactly 1, and
sandwich k/n; they pinch onto k/n at some interior k only for constant
vectors.

Given a phase target theta, the selected weight takes the upper value where
the level coefficient c_k(theta) is positive and the lower value otherwise.
The decay exponent of a level-set point a is then

    decay = sum_k k c_k sigma_k(a) / sum_k selected_k c_k sigma_k(a),

which lies in (0, n], equals n exactly for the isotropic point
tan(theta/n) * ones, and governs the tail rate r^(-decay) of the radial
profile built in the radial module.  Classification: eigenvalue data with a
definite sign on the level set is "admissible" when the exponent exceeds 2
(the tail integral converges) and "slow_decay" otherwise; anything else is
"outside".
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .phasepoly import LEVEL_TOL, PhaseSpec, phase, phase_coeffs
from .symfun import elem_sym_all


def _ascending_positive(a, n: Optional[int] = None) -> np.ndarray:
    arr = np.sort(np.asarray(a, dtype=float))
    if arr.ndim != 1 or arr.size == 0 or not np.all(arr > 0):
        raise ValueError("vector must have all entries positive")
    if n is not None and arr.size != n:
        raise ValueError("vector length does not match the phase dimension")
    return arr


def _excl_sigma(a: Sequence[float], k: int, i: int) -> float:
    # sigma_k of a with 0-based position i removed
    if k < 0:
        return 0.0
    reduced = list(a[:i]) + list(a[i + 1:])
    if k > len(reduced):
        return 0.0
    return elem_sym_all(reduced)[k]


def direction_weight(a: Sequence, x: Sequence, k: int) -> float:
    """Weight of direction x at index k; pairing of a and x is preserved."""
    a = np.asarray(a, dtype=float)
    x = np.asarray(x, dtype=float)
    if a.shape != x.shape:
        raise ValueError("a and x must have the same length")
    if not np.all(a > 0):
        raise ValueError("vector must have all entries positive")
    if not np.any(x != 0):
        raise ValueError("direction must be nonzero")
    n = a.size
    if not (0 <= k <= n):
        raise ValueError("need 0 <= k <= n")
    if k == 0:
        return 0.0
    al = a.tolist()
    num = math.fsum(_excl_sigma(al, k - 1, i) * a[i] ** 2 * x[i] ** 2
                    for i in range(n))
    den = elem_sym_all(al)[k] * math.fsum(a[i] * x[i] ** 2 for i in range(n))
    return num / den


def weight_bounds(a: Sequence, k: int) -> tuple:
    """(lower, upper) extremes of the k-th weight over all directions.

    k = 0 and k = n are structural: (0, 0) and (1, 1) exactly.
    """
    arr = _ascending_positive(a)
    n = arr.size
    if not (0 <= k <= n):
        raise ValueError("need 0 <= k <= n")
    if k == 0:
        return (0.0, 0.0)
    if k == n:
        return (1.0, 1.0)
    al = arr.tolist()
    sk = elem_sym_all(al)[k]
    lower = arr[0] * _excl_sigma(al, k - 1, 0) / sk
    upper = arr[-1] * _excl_sigma(al, k - 1, n - 1) / sk
    return (float(lower), float(upper))


@dataclass(frozen=True, eq=False)
class WeightProfile:
    """Extremal weight chains, the theta-selected chain, and the exponent.

    lower/upper/selected have length n+1 (index k = 0..n).  The exponent m
    is present only when the input vector lies on the phase level set.
    """
    lower: np.ndarray
    upper: np.ndarray
    selected: np.ndarray
    m: Optional[float]


def weight_profile(spec: PhaseSpec, a: Sequence) -> WeightProfile:
    """Both weight chains plus the c_k-sign selection for this phase.

    The input is sorted internally; selected_k is upper_k where
    c_k(theta) > 0 and lower_k otherwise (the choice is value-irrelevant
    where c_k = 0).
    """
    arr = _ascending_positive(a, spec.n)
    n = spec.n
    lower = np.empty(n + 1)
    upper = np.empty(n + 1)
    for k in range(n + 1):
        lower[k], upper[k] = weight_bounds(arr, k)
    c = phase_coeffs(spec)
    selected = np.where(np.asarray(c) > 0, upper, lower)
    m = None
    if abs(phase(arr) - spec.theta) <= LEVEL_TOL:
        m = _exponent_from_profile(spec, arr, selected)
    return WeightProfile(lower=lower, upper=upper, selected=selected, m=m)


def _exponent_from_profile(spec: PhaseSpec, arr: np.ndarray,
                           selected: np.ndarray) -> float:
    sig = elem_sym_all(arr.tolist())
    c = phase_coeffs(spec)
    num = math.fsum(k * c[k] * sig[k] for k in range(1, spec.n + 1))
    den = math.fsum(selected[k] * c[k] * sig[k] for k in range(1, spec.n + 1))
    return num / den


def decay_exponent(spec: PhaseSpec, a: Sequence,
                   tol: float = LEVEL_TOL) -> float:
    """Decay exponent of a level-set point a; lies in (0, n].

    Requires 0 < theta < n*pi/2 and |H(a) - theta| <= tol.
    """
    if not (0.0 < spec.theta < spec.n * math.pi / 2):
        raise ValueError("phase out of supported range")
    arr = _ascending_positive(a, spec.n)
    if abs(phase(arr) - spec.theta) > tol:
        raise ValueError("a not on the phase level set")
    profile = weight_profile(spec, arr)
    if profile.m is not None:
        return profile.m
    # caller passed a looser tolerance than the profile's default
    return _exponent_from_profile(spec, arr, profile.selected)


@dataclass(frozen=True)
class Admissibility:
    """Classification of eigenvalue data against a phase target.

    klass is "admissible" (definite sign, on the level set, exponent > 2),
    "slow_decay" (same but exponent <= 2), or "outside".  near_boundary
    flags an exponent within 1e-12 of the strict threshold 2.
    """
    klass: str
    m: Optional[float]
    near_boundary: bool = False


def classify(spec: PhaseSpec, lam: Sequence,
             tol: float = LEVEL_TOL) -> Admissibility:
    """Classify eigenvalue data lam (any order, either sign orientation).

    All-negative data is handled through the sign reflection: negating the
    unknown flips both the eigenvalues and the phase target, so lam < 0 is
    classified via the exponent of (-theta, -lam).
    """
    arr = np.asarray(lam, dtype=float)
    if arr.ndim != 1 or arr.size != spec.n:
        raise ValueError("vector length does not match the phase dimension")
    if np.all(arr > 0):
        work_spec, work = spec, arr
    elif np.all(arr < 0):
        work_spec, work = PhaseSpec(spec.n, -spec.theta), -arr
    else:
        return Admissibility(klass="outside", m=None)
    if not (0.0 < work_spec.theta < spec.n * math.pi / 2):
        return Admissibility(klass="outside", m=None)
    if abs(phase(work) - work_spec.theta) > tol:
        return Admissibility(klass="outside", m=None)
    m = decay_exponent(work_spec, work, tol)
    klass = "admissible" if m > 2.0 else "slow_decay"
    return Admissibility(klass=klass, m=m, near_boundary=abs(m - 2.0) <= 1e-12)


def complete_to_phase(prefix: Sequence, spec: PhaseSpec) -> np.ndarray:
    """Extend n-1 positive entries to a sorted level-set point.

    The remainder theta - sum(arctan(prefix)) must lie strictly inside
    (0, pi/2); the returned vector has phase equal to theta to within
    1e-12 by construction.
    """
    pre = np.asarray(prefix, dtype=float)
    if pre.ndim != 1 or pre.size != spec.n - 1 or not np.all(pre > 0):
        raise ValueError("prefix must be n-1 positive entries")
    rem = spec.theta - math.fsum(math.atan(v) for v in pre)
    if not (0.0 < rem < math.pi / 2):
        raise ValueError("no positive completion")
    return np.sort(np.append(pre, math.tan(rem)))


def epsilon_family(eps: float) -> np.ndarray:
    """The five-point level family tan(pi/3 + k*eps), k = -2..2.

    Defined for 0 <= eps <= pi/12; the phase is identically 5*pi/3 (the
    arctans telescope).  At the endpoint the largest entry is the tangent
    of an angle one float rounding below pi/2, which is huge but finite
    and positive.
    """
    if not (0.0 <= eps <= math.pi / 12):
        raise ValueError("eps must lie in [0, pi/12]")
    base = math.pi / 3
    return np.array([math.tan(base + k * eps) for k in (-2, -1, 0, 1, 2)])


def iso_point(spec: PhaseSpec) -> np.ndarray:
    """The isotropic level-set point tan(theta/n) * ones(n)."""
    if not (0.0 < spec.theta < spec.n * math.pi / 2):
        raise ValueError("phase out of supported range")
    return np.full(spec.n, math.tan(spec.theta / spec.n))
