"""Exact integer and rational linear algebra for intersection forms.

Everything here is computed over arbitrary-precision integers and
fractions.Fraction; no floating point is used anywhere.  The central
objects are symmetric integer matrices (intersection forms of plumbings),
their characteristic vectors, and the partition of characteristic vectors
into Spin^c classes: w and w' lie in the same class exactly when
Q^{-1}(w - w') has all entries in 2Z, i.e. when w - w' lies in the image
of 2Q.  With that convention the number of classes equals |det Q|.
"""

from fractions import Fraction

Rational = Fraction


class SingularFormError(ValueError):
    """Raised when a matrix that must be invertible is singular."""


class IntersectionForm:
    """A symmetric square integer matrix, stored as nested tuples.

    The diagonal entries are the vertex weights of a plumbing and the
    off-diagonal entries are 1 on edges and 0 otherwise, but nothing in
    this class depends on that interpretation.
    """

    __slots__ = ("rows", "_inverse", "_det")

    def __init__(self, rows):
        rows = tuple(tuple(int(x) for x in row) for row in rows)
        n = len(rows)
        if any(len(row) != n for row in rows):
            raise ValueError("matrix must be square")
        for i in range(n):
            for j in range(i + 1, n):
                if rows[i][j] != rows[j][i]:
                    raise ValueError("matrix must be symmetric")
        self.rows = rows
        self._inverse = None
        self._det = None

    @property
    def size(self):
        return len(self.rows)

    @property
    def diagonal(self):
        return tuple(self.rows[i][i] for i in range(self.size))

    def det(self):
        if self._det is None:
            self._det = _exact_det(self.rows)
        return self._det

    def inverse(self):
        """Exact inverse as nested tuples of Fraction; cached."""
        if self._inverse is None:
            self._inverse = invert_exact(self)
        return self._inverse

    def apply(self, vec):
        """Matrix-vector product Q . vec over the integers."""
        if len(vec) != self.size:
            raise ValueError("dimension mismatch")
        return tuple(sum(r * v for r, v in zip(row, vec)) for row in self.rows)

    def solve(self, vec):
        """Exact Q^{-1} . vec as a tuple of Fraction."""
        if len(vec) != self.size:
            raise ValueError("dimension mismatch")
        inv = self.inverse()
        return tuple(sum(r * v for r, v in zip(row, vec)) for row in inv)

    def quadratic_form(self, vec) -> Fraction:
        """Exact value of vec^T Q^{-1} vec."""
        x = self.solve(vec)
        return sum((Fraction(v) * y for v, y in zip(vec, x)), Fraction(0))

    def __eq__(self, other):
        return isinstance(other, IntersectionForm) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return f"IntersectionForm({list(map(list, self.rows))})"


def _exact_det(rows) -> int:
    """Determinant of an integer matrix via fraction-free elimination."""
    n = len(rows)
    a = [list(row) for row in rows]
    sign = 1
    prev = 1
    for c in range(n):
        pivot_row = next((r for r in range(c, n) if a[r][c] != 0), None)
        if pivot_row is None:
            return 0
        if pivot_row != c:
            a[c], a[pivot_row] = a[pivot_row], a[c]
            sign = -sign
        for r in range(c + 1, n):
            for j in range(c + 1, n):
                a[r][j] = (a[r][j] * a[c][c] - a[r][c] * a[c][j]) // prev
            a[r][c] = 0
        prev = a[c][c]
    return sign * a[n - 1][n - 1]


def leading_principal_minors(form: IntersectionForm):
    """The determinants of the upper-left k x k submatrices, k = 1..n."""
    return [_exact_det([row[: k] for row in form.rows[: k]])
            for k in range(1, form.size + 1)]


def invert_exact(form: IntersectionForm):
    """Exact inverse of an integer matrix, as nested tuples of Fraction.

    Gauss-Jordan elimination over Fraction with row pivoting.  Raises
    SingularFormError when det = 0.
    """
    n = form.size
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(form.rows)]
    for c in range(n):
        pivot_row = next((r for r in range(c, n) if aug[r][c] != 0), None)
        if pivot_row is None:
            raise SingularFormError("intersection form is singular")
        aug[c], aug[pivot_row] = aug[pivot_row], aug[c]
        pivot = aug[c][c]
        aug[c] = [x / pivot for x in aug[c]]
        for r in range(n):
            if r != c and aug[r][c]:
                factor = aug[r][c]
                aug[r] = [x - factor * y for x, y in zip(aug[r], aug[c])]
    return tuple(tuple(row[n:]) for row in aug)


def is_negative_definite(form: IntersectionForm) -> bool:
    """Sylvester's criterion with exact integer minors.

    True exactly when the leading principal minors alternate in sign
    starting negative: sign(minor_k) = (-1)^k for every k.
    """
    for k, minor in enumerate(leading_principal_minors(form), start=1):
        if minor == 0 or (minor > 0) != (k % 2 == 0):
            return False
    return True


class CharVector(tuple):
    """An integer vector w with w_i congruent to Q_ii mod 2 for all i.

    Subclasses tuple, so instances behave as plain coordinate tuples.
    Passing the form at construction checks the parity invariant.
    """

    def __new__(cls, entries, form=None):
        vec = super().__new__(cls, (int(x) for x in entries))
        if form is not None:
            if len(vec) != form.size:
                raise ValueError("vector length does not match form size")
            for x, e in zip(vec, form.diagonal):
                if (x - e) % 2 != 0:
                    raise ValueError(f"{tuple(vec)} is not characteristic "
                                     f"for diagonal {form.diagonal}")
        return vec

    def __repr__(self):
        return f"CharVector({tuple(self)})"


def initial_char_vectors(form: IntersectionForm):
    """Characteristic vectors in the starting box, in lexicographic order.

    For a negative-definite form the box constrains entry i to
    [e_i + 2, -e_i] with entries of the same parity as e_i, so it is
    finite and nonempty.  Yields each vector exactly once.
    """
    import itertools

    ranges = [range(e + 2, -e + 1, 2) for e in form.diagonal]
    for entries in itertools.product(*ranges):
        yield CharVector(entries, form)


def class_key(form: IntersectionForm, w):
    """Canonical label of the Spin^c class of w: Q^{-1} w reduced mod 2.

    Two characteristic vectors have equal keys exactly when their
    difference lies in 2 Im(Q).
    """
    return tuple(x % 2 for x in form.solve(w))


def same_spinc_class(w, w2, form: IntersectionForm) -> bool:
    """Whether w - w2 lies in the image of 2Q.

    Computed directly from the definition: every entry of Q^{-1}(w - w2)
    must be an even integer.  This induces an equivalence relation with
    exactly |det Q| classes.
    """
    if len(w) != len(w2):
        raise ValueError("vectors have different lengths")
    diff = tuple(a - b for a, b in zip(w, w2))
    return all(x.denominator == 1 and x.numerator % 2 == 0
               for x in form.solve(diff))


class SpincClass:
    """The class of a characteristic vector modulo 2 Im(Q).

    Equality and hashing go through the canonical key, so classes built
    from different representatives of the same class compare equal and
    can index dictionaries.
    """

    __slots__ = ("representative", "form", "key")

    def __init__(self, representative, form: IntersectionForm):
        self.representative = CharVector(representative, form)
        self.form = form
        self.key = class_key(form, self.representative)

    def __eq__(self, other):
        return (isinstance(other, SpincClass)
                and self.form == other.form and self.key == other.key)

    def __hash__(self):
        return hash((self.form, self.key))

    def __repr__(self):
        return f"SpincClass({tuple(self.representative)})"
