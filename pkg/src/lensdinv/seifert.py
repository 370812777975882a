"""The Seifert fibered spaces occurring in the surgery formula.

M(0,0; (m-k,1), (n-k,1), (k,1)) is the result of (m mu + lambda)-surgery
on a simple knot of winding number k in L(n,1).  For m <= k-3 it bounds
a negative-definite plumbing with n vertices: a chain of k-1 spheres of
weight -2, a chain of n-k-1 spheres of weight -2, a sphere of weight
m-k, and a central sphere of weight -2 joined to the last vertex of each
chain and to the (m-k)-sphere.  The central vertex is the single bad
vertex, so the push-down algorithm applies.

This module fixes the vertex order as block 1 (indices 0..k-2), block 2
(k-1..n-3), the (m-k)-vertex (n-2), then the central vertex (n-1), and
transcribes in that order:

  * the k^2 - nm characteristic vectors supporting a maximising path
    (maximiser_families), in four families w1(i,j), w2(i,j), w3(j),
    w4(j) distinguished by where an entry 2 sits;
  * a representative of the self-conjugate Spin^c class, which is the
    class of vectors in the image of Q (tM_representative); and
  * closed forms for the d-invariant at that class and at its shift by
    the dual of the surgery meridian, which adds 2 to the (m-k)-entry
    (dinv_closed_tM, dinv_closed_tM_mu).

|H_1(M)| = k^2 - nm = |det Q|, which is odd exactly when k and m have
opposite parities; only then is the self-conjugate class unique.
"""

from dataclasses import dataclass
from fractions import Fraction

from .exactlin import CharVector
from .lens import LensSpace
from .plumbing import PlumbingGraph, intersection_form


class OutOfModeledRangeError(ValueError):
    """The slope lies outside the plumbing description implemented here."""


class NotCoveredError(ValueError):
    """No closed form covers this parameter combination."""


@dataclass(frozen=True)
class SeifertParams:
    """(n, k, m) with n >= 5 odd and 1 < k <= (n-1)/2; m is the slope."""

    n: int
    k: int
    m: int

    def __post_init__(self):
        if self.n < 5 or self.n % 2 == 0:
            raise ValueError("n must be an odd integer >= 5")
        if not 1 < self.k <= (self.n - 1) // 2:
            raise ValueError("k must satisfy 1 < k <= (n-1)/2")

    @property
    def homology_order(self):
        return self.k * self.k - self.n * self.m


@dataclass(frozen=True)
class MuShift:
    """Shift of a Spin^c class by the dual of the surgery meridian.

    Acts on characteristic vectors by adding 2*direction to the entry of
    the (m-k)-weighted vertex and nothing else.  The two directions give
    conjugate classes, which carry equal d-invariants.
    """

    direction: int
    vertex: int

    def __post_init__(self):
        if self.direction not in (1, -1):
            raise ValueError("direction must be +1 or -1")

    def apply(self, w, form=None):
        shifted = list(w)
        shifted[self.vertex] += 2 * self.direction
        return CharVector(shifted, form)


def mu_shift(params: SeifertParams, direction=1) -> MuShift:
    return MuShift(direction, params.n - 2)


def seifert_plumbing(params: SeifertParams) -> PlumbingGraph:
    """The n-vertex plumbing graph bounding M, valid for m <= k-3."""
    n, k, m = params.n, params.k, params.m
    if m > k - 3:
        raise OutOfModeledRangeError(
            f"m = {m} > k - 3 = {k - 3}: only the m <= k-3 plumbing is modeled")
    weights = [-2] * (k - 1) + [-2] * (n - k - 1) + [m - k, -2]
    edges = [(i, i + 1) for i in range(k - 2)]
    edges += [(i, i + 1) for i in range(k - 1, n - 3)]
    edges += [(k - 2, n - 1), (n - 3, n - 1), (n - 2, n - 1)]
    return PlumbingGraph(weights, edges)


def is_lspace_M(params: SeifertParams) -> bool:
    """Whether M is an L-space, for n >= 9 and m <= k-3.

    The three exceptional fibers have orders k-m >= 3 and n-k > k >= 2,
    and the general Seifert L-space criterion reduces to: m <= 0, or
    m = 1 and 3k >= n+1.
    """
    n, k, m = params.n, params.k, params.m
    if n < 9:
        raise ValueError("criterion stated for n >= 9")
    if m > k - 3:
        raise OutOfModeledRangeError("criterion applies to m <= k-3")
    return m <= 0 or (m == 1 and 3 * k >= n + 1)


def _require_family_range(params: SeifertParams):
    if params.n < 9:
        raise ValueError("n must be >= 9")
    if params.m > 0:
        raise ValueError("m must be <= 0")


def maximiser_families(params: SeifertParams):
    """The k^2 - nm characteristic vectors supporting a maximising path.

    Valid for n >= 9 odd, m <= 0, 1 < k <= (n-1)/2.  Vectors are zero
    except for the listed entries; j always denotes the (m-k)-entry and
    runs over integers of the same parity as m - k.

      w1(i, j): entry 2 at position i of block 1 (1 <= i <= k-1),
                m-k+2 <= j <= -m+k-2i.
      w2(i, j): entry 2 at position i of block 2; for m < 0 the position
                runs over 1 <= i <= n-k-1 with j <= -m+k-2i when
                i <= k-1 and j <= -m-k when i >= k; for m = 0 only
                1 <= i <= k-1 occur, with j <= -m+k-2i.
      w3(j):    entry 2 at the central vertex, m-k+2 <= j <= -m-k;
                exists only when m < 0.
      w4(j):    no entry 2, m-k+2 <= j <= -m+k.
    """
    _require_family_range(params)
    n, k, m = params.n, params.k, params.m
    form = intersection_form(seifert_plumbing(params))
    lo = m - k + 2
    vectors = []

    def emit(j, two_at=None):
        vec = [0] * n
        vec[n - 2] = j
        if two_at is not None:
            vec[two_at] = 2
        vectors.append(CharVector(vec, form))

    for i in range(1, k):
        for j in range(lo, -m + k - 2 * i + 1, 2):
            emit(j, two_at=i - 1)
    block2_top = n - k - 1 if m < 0 else k - 1
    for i in range(1, block2_top + 1):
        hi = (-m + k - 2 * i) if i <= k - 1 else (-m - k)
        for j in range(lo, hi + 1, 2):
            emit(j, two_at=(k - 1) + (i - 1))
    if m < 0:
        for j in range(lo, -m - k + 1, 2):
            vec = [0] * n
            vec[n - 2] = j
            vec[n - 1] = 2
            vectors.append(CharVector(vec, form))
    for j in range(lo, -m + k + 1, 2):
        emit(j)
    return vectors


def tM_representative(params: SeifertParams) -> CharVector:
    """A characteristic vector in the self-conjugate Spin^c class.

    The self-conjugate class is the class of vectors in Im(Q), since a
    self-conjugate Spin^c structure has vanishing first Chern class.
    The vector has a -2 in the middle of block 1 (k even) or block 2
    (k odd) and -m+k at the (m-k)-vertex; membership in Im(Q) is
    asserted by exhibiting the integer preimage, a ramp 1, 2, ..., up to
    the middle of the block and back down, with -1 at the (m-k)-vertex.
    """
    _require_family_range(params)
    n, k, m = params.n, params.k, params.m
    graph = seifert_plumbing(params)
    form = intersection_form(graph)

    rep = [0] * n
    preimage = [0] * n
    if k % 2 == 0:
        rep[k // 2 - 1] = -2
        half = k // 2
        ramp = list(range(1, half + 1)) + list(range(half - 1, 0, -1))
        preimage[: k - 1] = ramp
    else:
        rep[(k - 1) + (n - k) // 2 - 1] = -2
        half = (n - k) // 2
        ramp = list(range(1, half + 1)) + list(range(half - 1, 0, -1))
        preimage[k - 1: n - 2] = ramp
    rep[n - 2] = -m + k
    preimage[n - 2] = -1
    assert form.apply(preimage) == tuple(rep), \
        "representative is not the image of its stated preimage"
    return CharVector(rep, form)


def dinv_closed_tM(params: SeifertParams) -> Fraction:
    """d(M) at the self-conjugate Spin^c structure.

    m/4 for k odd, (m - 2k + n)/4 for k even; requires k and m of
    opposite parity so that the self-conjugate structure is unique.
    """
    _require_family_range(params)
    n, k, m = params.n, params.k, params.m
    if (k - m) % 2 == 0:
        raise ValueError("k and m must have opposite parities")
    if k % 2 == 1:
        return Fraction(m, 4)
    return Fraction(m - 2 * k + n, 4)


def dinv_closed_tM_mu(params: SeifertParams) -> Fraction:
    """d(M) at the meridian-shifted self-conjugate Spin^c structure.

    Three branches:

      k even (m odd, m <= -1):
        (nm^2 + (4n + n^2 - 2kn - k^2)m + 2k^3 - 4k^2 + 4n - nk^2)
            / (4(nm - k^2))
      k odd, m <= -2:
        (nm^2 + (4n - k^2)m + 4n - 4k^2) / (4(nm - k^2))
      k odd, m = 0:
        (2ki + n - kn) / (-k^2)  with i the residue of (n-k)/2 mod k
        in [0, k-1]; the shifted class is determined here only up to
        conjugation, which does not change the value.

    k odd with m = -1 falls in no branch (it would make |H_1| even) and
    raises NotCoveredError.
    """
    _require_family_range(params)
    n, k, m = params.n, params.k, params.m
    if k % 2 == 0:
        if m % 2 == 0:
            raise ValueError("k and m must have opposite parities")
        num = (n * m * m + (4 * n + n * n - 2 * k * n - k * k) * m
               + 2 * k ** 3 - 4 * k * k + 4 * n - n * k * k)
        return Fraction(num, 4 * (n * m - k * k))
    if m == 0:
        i = ((n - k) // 2) % k
        return Fraction(2 * k * i + n - k * n, -k * k)
    if m <= -2 and m % 2 == 0:
        num = n * m * m + (4 * n - k * k) * m + 4 * n - 4 * k * k
        return Fraction(num, 4 * (n * m - k * k))
    raise NotCoveredError(f"no closed form for k odd, m = {m}")


def lens_case_labels(n, k, m):
    """For m = k-1 or k+1, M is a lens space; return it with two labels.

    Returns (space, tm_label, mu_label): the label of the unique
    self-conjugate Spin^c structure and, up to conjugation, the label of
    its meridian shift.

      m = k-1: L(nk-n-k^2, k-1); labels (k-2)/2 and (3k-2)/2 for k
               even, (p+k-2)/2 and (p-k-2)/2 for k odd, p the order.
      m = k+1: L(nk+n-k^2, k+1); labels k/2 and 3k/2 for k even,
               (p+k)/2 and (p-k)/2 for k odd.
    """
    params = SeifertParams(n, k, m)
    n, k, m = params.n, params.k, params.m
    if n < 9:
        raise ValueError("labels derived for n >= 9")
    if m == k - 1:
        p = n * k - n - k * k
        q = k - 1
        if k % 2 == 0:
            tm, mu = (k - 2) // 2, (3 * k - 2) // 2
        else:
            tm, mu = (p + k - 2) // 2, (p - k - 2) // 2
    elif m == k + 1:
        p = n * k + n - k * k
        q = k + 1
        if k % 2 == 0:
            tm, mu = k // 2, (3 * k) // 2
        else:
            tm, mu = (p + k) // 2, (p - k) // 2
    else:
        raise ValueError("m must be k-1 or k+1")
    return LensSpace(p, q), tm % p, mu % p
