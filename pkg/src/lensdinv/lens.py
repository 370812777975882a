"""d-invariants of lens spaces.

L(p,q) is the lens space obtained by p/q-surgery on the unknot, and its
Spin^c structures are labelled by Z_p.  The d-invariant satisfies the
recursion

    d(L(p,q), i) = -1/4 + (2i + 1 - p - q)^2 / (4pq) - d(L(q, r), j)

with r = p mod q and j = i mod q, grounded at d(L(1,*)) = 0 since L(1,q)
is the 3-sphere.  The recursion terminates because q strictly decreases,
with depth bounded by the length of the continued fraction of p/q.

Specialising to q = 1 gives the closed form

    d(L(n,1), i) = -1/4 + (2i - n)^2 / (4n).

All values are exact rationals.  d-invariants switch sign under
orientation reversal, and L(p, p-q) is L(p,q) with reversed orientation;
lens_d_multiset exists mostly to express that symmetry in tests.
"""

from fractions import Fraction
from functools import lru_cache
from math import gcd


class LensSpace:
    """L(p,q) with q normalised into (0, p) and gcd(p,q) = 1.

    p = 1 is allowed and denotes the 3-sphere (stored with q = 0).
    """

    __slots__ = ("p", "q")

    def __init__(self, p, q):
        p, q = int(p), int(q)
        if p < 1:
            raise ValueError("p must be a positive integer")
        q %= p
        if p > 1 and q == 0:
            raise ValueError("q must be nonzero mod p")
        if gcd(p, q) != 1:
            raise ValueError(f"gcd({p},{q}) != 1: L({p},{q}) is not a lens space")
        self.p = p
        self.q = q

    def d(self, label) -> Fraction:
        return lens_d(self.p, self.q, label)

    def __eq__(self, other):
        return isinstance(other, LensSpace) and (self.p, self.q) == (other.p, other.q)

    def __hash__(self):
        return hash((self.p, self.q))

    def __repr__(self):
        return f"LensSpace({self.p}, {self.q})"


@lru_cache(maxsize=None)
def _lens_d(p, q, i) -> Fraction:
    # Arguments already normalised: 0 <= q < p, gcd = 1, 0 <= i < p.
    if p == 1:
        return Fraction(0)
    num = 2 * i + 1 - p - q
    term = Fraction(-1, 4) + Fraction(num * num, 4 * p * q)
    return term - _lens_d(q, p % q, i % q)


def lens_d(p, q, i) -> Fraction:
    """d(L(p,q), i) for the Spin^c structure labelled i in Z_p.

    q is reduced mod p first and i mod p, so callers may pass raw labels
    such as (nk - n - k^2 + k - 2)/2 without normalising.
    """
    space = LensSpace(p, q)
    return _lens_d(space.p, space.q, int(i) % space.p)


def lens_d_q1(n, i) -> Fraction:
    """d(L(n,1), i) by the closed form -1/4 + (2i - n)^2/(4n)."""
    n = int(n)
    if n < 1:
        raise ValueError("n must be a positive integer")
    i = int(i) % n
    return Fraction(-1, 4) + Fraction((2 * i - n) ** 2, 4 * n)


def self_conjugate_labels(p, q):
    """Labels of the self-conjugate Spin^c structures on L(p,q).

    These are the integer members of {(p+q-1)/2, (q-1)/2}, reduced mod p:
    one label when p is odd, two when p is even.  For L(n,1) with n odd
    the unique label is 0.
    """
    space = LensSpace(p, q)
    labels = set()
    for c in (space.p + space.q - 1, space.q - 1):
        if c % 2 == 0:
            labels.add((c // 2) % space.p)
    return labels


def lens_d_multiset(p, q):
    """All p values d(L(p,q), i), as a sorted tuple (a multiset)."""
    space = LensSpace(p, q)
    return tuple(sorted(_lens_d(space.p, space.q, i) for i in range(space.p)))
