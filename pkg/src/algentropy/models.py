"""Infinite ambients where nonzero entropy lives.

Finitely generated groups force algebraic entropy to vanish, so the
interesting dynamics happen on three computable infinite models:

* :class:`ShiftGroup`, the direct sum of countably many copies of a finite
  abelian cell, carrying the right shift.  Elements are finitely supported,
  subgroups are materialized by saturation under a hard element cap.
* :class:`LinearShiftSpace`, finitely supported sequences over GF(p) or
  the rationals, where the subadditive invariant is a dimension.
* :class:`CylinderFamily`, the chain of cylinder subgroups of the full
  (uncountable) product, kept entirely symbolic: every answer is a closed
  form in the cell order, no product element is ever materialized.
"""

from fractions import Fraction

from .abelian import FgAbGroup
from .errors import AmbientMismatchError, BudgetExceededError, DomainError

__all__ = [
    "ShiftElement",
    "ShiftGroup",
    "shift_trajectory_order",
    "LinearShiftSpace",
    "CylinderFamily",
    "cylinder_cotrajectory_index",
    "two_sided_shift_inert_index",
]

DEFAULT_ELEMENT_CAP = 10**6


class ShiftElement:
    """A finitely supported map position -> cell element.

    Canonical form: ``support`` is a tuple of (position, coords) pairs
    sorted by position, with every coords tuple reduced and nonzero.
    """

    __slots__ = ("group", "support")

    def __init__(self, group, support):
        object.__setattr__(self, "group", group)
        object.__setattr__(self, "support", support)

    def __setattr__(self, name, value):
        raise AttributeError("ShiftElement is immutable")

    def is_zero(self):
        return not self.support

    def __add__(self, other):
        if not isinstance(other, ShiftElement) or other.group != self.group:
            raise AmbientMismatchError("elements of different shift groups")
        return self.group._combine(self, other, 1)

    def __neg__(self):
        zero = self.group.zero()
        return self.group._combine(zero, self, -1)

    def __sub__(self, other):
        if not isinstance(other, ShiftElement) or other.group != self.group:
            raise AmbientMismatchError("elements of different shift groups")
        return self.group._combine(self, other, -1)

    def shifted(self, steps=1):
        """Image under the right shift iterated ``steps`` times."""
        if steps < 0:
            raise DomainError("right shift has no negative powers")
        if steps == 0 or not self.support:
            return self
        support = tuple((pos + steps, c) for pos, c in self.support)
        return ShiftElement(self.group, support)

    def __eq__(self, other):
        return (
            isinstance(other, ShiftElement)
            and other.group == self.group
            and other.support == self.support
        )

    def __hash__(self):
        return hash((self.group, self.support))

    def __repr__(self):
        if not self.support:
            return "ShiftElement(0)"
        parts = ", ".join(f"{pos}:{list(c)}" for pos, c in self.support)
        return f"ShiftElement({parts})"


class ShiftGroup:
    """Direct sum of copies of a finite abelian cell, indexed by 0,1,2,...

    The canonical endomorphism is the right shift, which sends the copy
    at position n identically onto the copy at position n+1.

    >>> B = ShiftGroup(FgAbGroup([2]))
    >>> x = B.element({0: [1]})
    >>> (x + x).is_zero()
    True
    >>> x.shifted().support
    ((1, (1,)),)
    """

    __slots__ = ("cell",)

    def __init__(self, cell):
        if not isinstance(cell, FgAbGroup):
            raise TypeError("cell must be an FgAbGroup")
        if cell.free_rank != 0:
            raise DomainError("shift cell must be finite")
        object.__setattr__(self, "cell", cell)

    def __setattr__(self, name, value):
        raise AttributeError("ShiftGroup is immutable")

    def zero(self):
        return ShiftElement(self, ())

    def element(self, support):
        """Build an element from a mapping position -> coordinate sequence."""
        items = []
        for pos, coords in dict(support).items():
            if pos < 0:
                raise DomainError("positions are indexed from 0")
            reduced = self.cell.element(coords).coords
            if any(reduced):
                items.append((pos, reduced))
        items.sort()
        return ShiftElement(self, tuple(items))

    def _combine(self, a, b, sign):
        # merge two sorted supports, adding coords in the cell
        cell = self.cell
        merged = dict(a.support)
        for pos, coords in b.support:
            if pos in merged:
                summed = tuple(
                    x + sign * y for x, y in zip(merged[pos], coords)
                )
            else:
                summed = tuple(sign * y for y in coords)
            reduced = cell.element(summed).coords
            if any(reduced):
                merged[pos] = reduced
            else:
                merged.pop(pos, None)
        return ShiftElement(self, tuple(sorted(merged.items())))

    def first_coordinate_copy(self):
        """Generators of the copy of the cell sitting at position 0."""
        gens = []
        for i in range(self.cell.dim):
            coords = [0] * self.cell.dim
            coords[i] = 1
            gens.append(self.element({0: coords}))
        return tuple(gens)

    def closure(self, generators, cap=DEFAULT_ELEMENT_CAP):
        """The subgroup generated, as a frozenset of elements.

        Saturates breadth-first; every element has finite order, so
        closing under addition of the generators and their negatives
        reaches the whole subgroup.  Raises when the element count
        exceeds ``cap``.
        """
        steps = []
        for g in generators:
            if not isinstance(g, ShiftElement) or g.group != self:
                raise AmbientMismatchError("generator from a different group")
            for h in (g, -g):
                if not h.is_zero() and h not in steps:
                    steps.append(h)
        zero = self.zero()
        seen = {zero}
        frontier = [zero]
        while frontier:
            fresh = []
            for x in frontier:
                for g in steps:
                    y = x + g
                    if y not in seen:
                        if len(seen) >= cap:
                            raise BudgetExceededError(
                                f"subgroup closure exceeded cap {cap}"
                            )
                        seen.add(y)
                        fresh.append(y)
            frontier = fresh
        return frozenset(seen)

    def __eq__(self, other):
        return isinstance(other, ShiftGroup) and other.cell == self.cell

    def __hash__(self):
        return hash(("ShiftGroup", self.cell))

    def __repr__(self):
        return f"ShiftGroup({self.cell!r})"


def shift_trajectory_order(group, generators, n, cap=DEFAULT_ELEMENT_CAP):
    """Exact order of T_n = F + beta(F) + ... + beta^{n-1}(F).

    ``generators`` generate the finite subgroup F.

    >>> B = ShiftGroup(FgAbGroup([2]))
    >>> [shift_trajectory_order(B, B.first_coordinate_copy(), n)
    ...  for n in (1, 2, 3, 4)]
    [2, 4, 8, 16]
    """
    if n <= 0:
        raise DomainError("step count must be positive")
    shifted = [g.shifted(i) for i in range(n) for g in generators]
    return len(group.closure(shifted, cap=cap))


def _is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


class LinearShiftSpace:
    """Finitely supported sequences over GF(p), or over Q when p = 0.

    Vectors are tuples indexed from position 0 with trailing zeros
    stripped; subspaces are canonical reduced-echelon bases.

    >>> V = LinearShiftSpace(2)
    >>> V.dim([(1, 1), (0, 1), (1, 0)])
    2
    >>> W = LinearShiftSpace(0)
    >>> W.reduce([(2, 4), (1, 2)])
    ((Fraction(1, 1), Fraction(2, 1)),)
    """

    __slots__ = ("p",)

    def __init__(self, p=0):
        if p != 0 and not _is_prime(p):
            raise DomainError("field descriptor must be 0 or a prime")
        object.__setattr__(self, "p", p)

    def __setattr__(self, name, value):
        raise AttributeError("LinearShiftSpace is immutable")

    def _scalar(self, x):
        if self.p:
            return int(x) % self.p
        return Fraction(x)

    def vector(self, coords):
        vec = [self._scalar(x) for x in coords]
        while vec and not vec[-1]:
            vec.pop()
        return tuple(vec)

    def shift(self, vec):
        """Right shift: prepend a zero coordinate."""
        if not vec:
            return ()
        return (self._scalar(0),) + tuple(vec)

    def reduce(self, vectors):
        """Canonical reduced echelon basis of the span."""
        rows = [list(self.vector(v)) for v in vectors]
        width = max((len(r) for r in rows), default=0)
        rows = [r + [self._scalar(0)] * (width - len(r)) for r in rows if r]
        basis = []
        for col in range(width):
            pivot_row = None
            for i, r in enumerate(rows):
                if r[col]:
                    pivot_row = rows.pop(i)
                    break
            if pivot_row is None:
                continue
            inv = (
                pow(pivot_row[col], -1, self.p)
                if self.p
                else 1 / pivot_row[col]
            )
            pivot_row = [self._scalar(x * inv) for x in pivot_row]
            for r in rows:
                if r[col]:
                    c = r[col]
                    for j in range(width):
                        r[j] = self._scalar(r[j] - c * pivot_row[j])
            for r in basis:
                if r[col]:
                    c = r[col]
                    for j in range(width):
                        r[j] = self._scalar(r[j] - c * pivot_row[j])
            basis.append(pivot_row)
        return tuple(self.vector(r) for r in basis)

    def dim(self, vectors):
        return len(self.reduce(vectors))

    def __eq__(self, other):
        return isinstance(other, LinearShiftSpace) and other.p == self.p

    def __hash__(self):
        return hash(("LinearShiftSpace", self.p))

    def __repr__(self):
        field = f"GF({self.p})" if self.p else "Q"
        return f"LinearShiftSpace({field})"


class CylinderFamily:
    """Symbolic chain U_0 > U_1 > ... of cylinder subgroups.

    U_k is the subgroup of the full product of copies of the finite cell
    consisting of elements vanishing on the first k coordinates (or on
    the window [-k, k] in the two-sided case).  Only the cell order ever
    enters a computation.

    >>> fam = CylinderFamily(FgAbGroup([3]))
    >>> fam.index_between(1, 4)
    27
    """

    __slots__ = ("cell", "two_sided")

    def __init__(self, cell, two_sided=False):
        if not isinstance(cell, FgAbGroup):
            raise TypeError("cell must be an FgAbGroup")
        if cell.free_rank != 0:
            raise DomainError("cylinder cell must be finite")
        object.__setattr__(self, "cell", cell)
        object.__setattr__(self, "two_sided", bool(two_sided))

    def __setattr__(self, name, value):
        raise AttributeError("CylinderFamily is immutable")

    @property
    def cell_order(self):
        return self.cell.order()

    def index_between(self, j, k):
        """[U_j : U_k] for k >= j >= 0."""
        if j < 0 or k < j:
            raise DomainError("need 0 <= j <= k")
        steps = k - j
        if self.two_sided:
            steps *= 2
        return self.cell_order**steps

    def __eq__(self, other):
        return (
            isinstance(other, CylinderFamily)
            and other.cell == self.cell
            and other.two_sided == self.two_sided
        )

    def __hash__(self):
        return hash(("CylinderFamily", self.cell, self.two_sided))

    def __repr__(self):
        side = "two-sided" if self.two_sided else "one-sided"
        return f"CylinderFamily({self.cell!r}, {side})"


def cylinder_cotrajectory_index(fam, k, n):
    """[U_k : C_n(psi, U_k)] for the left shift psi on a one-sided family.

    The cotrajectory C_n = U_k ∩ psi^{-1}(U_k) ∩ ... ∩ psi^{-n+1}(U_k)
    is the cylinder U_{k+n-1}, so the index is |F|^{n-1}.

    >>> cylinder_cotrajectory_index(CylinderFamily(FgAbGroup([3])), 1, 4)
    27
    >>> cylinder_cotrajectory_index(CylinderFamily(FgAbGroup([2])), 2, 2)
    2
    """
    if fam.two_sided:
        raise DomainError("cotrajectory index needs a one-sided family")
    if k < 0:
        raise DomainError("cylinder index must be >= 0")
    if n < 1:
        raise DomainError("step count must be positive")
    return fam.cell_order ** (n - 1)


def two_sided_shift_inert_index(fam, k):
    """s(sigma, U_k) = [sigma(U_k) : sigma(U_k) ∩ U_k] for the shift sigma.

    Shifting the window [-k, k] by one displaces exactly one coordinate,
    so the index is |F| independently of k.

    >>> two_sided_shift_inert_index(
    ...     CylinderFamily(FgAbGroup([5]), two_sided=True), 3)
    5
    """
    if not fam.two_sided:
        raise DomainError("shift inert index needs a two-sided family")
    if k < 0:
        raise DomainError("cylinder index must be >= 0")
    return fam.cell_order
