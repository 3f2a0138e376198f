"""Exact and floating-point kernels for elementary symmetric polynomials.

Conventions used throughout (and by every module built on top of this one):

    sigma_{-1}(a) == 0,   sigma_0(a) == 1,   sigma_k(a) == 0 for k > n,

where n = len(a).  All kernels are generic over the scalar type: handing in
``fractions.Fraction`` (or int) entries keeps every computation exact, while
float entries give the ordinary fast path.  Evaluation always goes through
the coefficient recurrence for prod_i (1 + t*a_i), never through explicit
subset enumeration; enumeration appears only in test oracles.

Exclusion indices (``elem_sym_excl``) are 1-based, matching the classical
subscript notation for "sigma_k with the i-th variable removed".
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np


def elem_sym_all(a: Sequence) -> list:
    """All values sigma_0(a) .. sigma_n(a) via the product recurrence."""
    n = len(a)
    e = [0] * (n + 1)
    e[0] = 1
    for x in a:
        for j in range(n, 0, -1):
            e[j] = e[j] + x * e[j - 1]
    return e


def elem_sym(a: Sequence, k: int):
    """sigma_k(a); k < 0 and k > n fall back to the zero convention."""
    n = len(a)
    if k < 0 or k > n:
        return 0
    return elem_sym_all(a)[k]


def elem_sym_excl(a: Sequence, k: int, excl: Sequence[int] = ()):
    """sigma_k of a with the (1-based) indices in excl removed.

    At most two indices may be excluded; they must be distinct and in range.
    An empty exclusion set reduces to plain sigma_k.
    """
    n = len(a)
    idx = list(excl)
    if len(idx) > 2:
        raise ValueError("at most two indices may be excluded")
    if len(set(idx)) != len(idx):
        raise ValueError("exclusion index out of range or repeated")
    for i in idx:
        if not (1 <= i <= n):
            raise ValueError("exclusion index out of range or repeated")
    drop = {i - 1 for i in idx}
    reduced = [x for pos, x in enumerate(a) if pos not in drop]
    return elem_sym(reduced, k)


def gen_sym_table(a: Sequence) -> list:
    """Table T with T[k][j] = gen_sym(a, k, j) for all 0 <= j <= k <= n.

    T[k][j] is the coefficient of x^k y^j in prod_i (1 + a_i x + a_i^2 x y),
    built by one pass of the bivariate product recurrence.
    """
    n = len(a)
    table = [[0] * (k + 1) for k in range(n + 1)]
    table[0][0] = 1
    for x in a:
        x2 = x * x
        for k in range(n, 0, -1):
            row = table[k]
            prev = table[k - 1]
            for j in range(k, -1, -1):
                acc = row[j]
                if j <= k - 1:
                    acc = acc + x * prev[j]
                if j >= 1:
                    acc = acc + x2 * prev[j - 1]
                row[j] = acc
    return table


def gen_sym(a: Sequence, k: int, j: int):
    """Generalized symmetric value: k distinct indices, j of them squared.

    Sums, over every unordered choice of k distinct indices together with a
    designated j-subset, the product of the chosen entries with the
    designated ones squared.  The term count is C(n,k)*C(k,j), so for the
    all-ones vector the value equals that product of binomials.  j = 0
    recovers sigma_k.
    """
    n = len(a)
    if not (0 <= j <= k <= n):
        raise ValueError("need 0 <= j <= k <= n")
    return gen_sym_table(a)[k][j]


def sigma_rank_one(p: Sequence, q: Sequence, s, k: int):
    """sigma_k of the eigenvalues of diag(p) + s * q q^T, in closed form.

    The update is linear in s: sigma_k(p) plus s times the sum over i of
    sigma_{k-1}(p with entry i removed) * q_i^2.  No eigenvalue computation
    is performed.
    """
    n = len(p)
    if len(q) != n:
        raise ValueError("p and q must have the same length")
    if not (1 <= k <= n):
        raise ValueError("need 1 <= k <= n")
    base = elem_sym(p, k)
    corr = 0
    for i in range(n):
        reduced = list(p[:i]) + list(p[i + 1:])
        corr = corr + elem_sym(reduced, k - 1) * q[i] * q[i]
    return base + s * corr


def signed_odd_binomial_sum(Q: int) -> int:
    """Exact value of sum_{q=0}^{Q} (-1)^q (2q+1) C(2Q+1, Q-q).

    Evaluates to 1 at Q = 0 and vanishes for every Q >= 1.
    """
    if Q < 0:
        raise ValueError("Q must be nonnegative")
    return sum((-1) ** q * (2 * q + 1) * math.comb(2 * Q + 1, Q - q)
               for q in range(Q + 1))


def product_decomposition(j: int, k: int, n: int) -> list:
    """Expansion of sigma_j * sigma_k over gen_sym terms, for n variables.

    Returns a list of (coeff, (K, J)) pairs such that, for every length-n
    vector a,

        elem_sym(a, j) * elem_sym(a, k) == sum coeff * gen_sym(a, K, J).

    Two regimes share the boundary j + k == n, where they agree term by
    term:  for j + k <= n the h-th term (h = 0..j) is
    C(j+k-2h, j-h) * gen_sym(a, j+k-h, h); for j + k >= n it is
    C(2n-j-k-2h, n-j-h) * gen_sym(a, n-h, j+k-n+h) with h = 0..n-k.
    """
    if not (0 <= j <= k <= n):
        raise ValueError("need 0 <= j <= k <= n")
    terms = []
    if j + k <= n:
        for h in range(j + 1):
            terms.append((math.comb(j + k - 2 * h, j - h), (j + k - h, h)))
    else:
        for h in range(n - k + 1):
            terms.append((math.comb(2 * n - j - k - 2 * h, n - j - h),
                          (n - h, j + k - n + h)))
    return terms


@dataclass(frozen=True)
class NewtonReport:
    """Per-index margins of Newton's inequality and an overall pass flag."""
    margins: dict
    passed: bool


def newton_check(a: Sequence) -> NewtonReport:
    """Margins sigma_k^2 - sigma_{k-1} sigma_{k+1} for k = 1 .. n-1.

    Newton's inequality makes every margin nonnegative for real entries;
    n = 1 passes vacuously.
    """
    n = len(a)
    sig = elem_sym_all(a)
    margins = {}
    for k in range(1, n):
        margins[k] = sig[k] * sig[k] - sig[k - 1] * sig[k + 1]
    passed = all(v >= 0 for v in margins.values())
    return NewtonReport(margins=margins, passed=passed)


def elem_sym_stack(lam: np.ndarray) -> np.ndarray:
    """Row-wise sigma table for a stack of float vectors.

    lam has shape (P, n); the result has shape (P, n+1) with column k
    holding sigma_k of each row.  Same recurrence as elem_sym_all, run on
    whole columns at once.
    """
    lam = np.asarray(lam, dtype=float)
    p, n = lam.shape
    e = np.zeros((p, n + 1))
    e[:, 0] = 1.0
    for i in range(n):
        col = lam[:, i]
        for j in range(n, 0, -1):
            e[:, j] += col * e[:, j - 1]
    return e
