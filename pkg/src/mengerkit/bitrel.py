"""Binary relations on {0..m-1} stored as bitset rows.

Row ``a`` is an int whose bit ``b`` is set iff the pair (a, b) is in the
relation, i.e. rows are indexed by the first coordinate.  All operations
return new relations; instances are immutable.

Two composition orders exist side by side: :meth:`BinRelation.then` chains
left to right ((a,b) in r and (b,c) in s), while the free function
:func:`compose` follows the convention where the right operand acts first,
so ``compose(s, r) == r.then(s)``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InputError


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class BinRelation:
    size: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if len(self.rows) != self.size:
            raise InputError(f"relation has {len(self.rows)} rows, expected {self.size}")
        full = (1 << self.size) - 1
        for a, row in enumerate(self.rows):
            if row & ~full:
                raise InputError(f"relation row {a} references elements >= {self.size}")

    # -- construction ------------------------------------------------

    @staticmethod
    def empty(size: int) -> BinRelation:
        return BinRelation(size, (0,) * size)

    @staticmethod
    def diagonal(size: int) -> BinRelation:
        return BinRelation(size, tuple(1 << a for a in range(size)))

    @staticmethod
    def full(size: int) -> BinRelation:
        row = (1 << size) - 1
        return BinRelation(size, (row,) * size)

    @staticmethod
    def from_pairs(size: int, pairs) -> BinRelation:
        rows = [0] * size
        for a, b in pairs:
            if not (0 <= a < size and 0 <= b < size):
                raise InputError(f"pair ({a}, {b}) out of range for size {size}")
            rows[a] |= 1 << b
        return BinRelation(size, tuple(rows))

    @staticmethod
    def from_matrix(matrix) -> BinRelation:
        size = len(matrix)
        rows = []
        for a, line in enumerate(matrix):
            if len(line) != size:
                raise InputError(f"matrix row {a} has length {len(line)}, expected {size}")
            row = 0
            for b, cell in enumerate(line):
                if cell not in (0, 1, True, False):
                    raise InputError(f"matrix[{a}][{b}] must be 0 or 1")
                if cell:
                    row |= 1 << b
            rows.append(row)
        return BinRelation(size, tuple(rows))

    # -- queries -----------------------------------------------------

    def contains(self, a: int, b: int) -> bool:
        return bool(self.rows[a] >> b & 1)

    def pairs(self):
        for a, row in enumerate(self.rows):
            for b in _bits(row):
                yield (a, b)

    def count(self) -> int:
        return sum(row.bit_count() for row in self.rows)

    def row(self, a: int) -> int:
        return self.rows[a]

    def pr1(self) -> int:
        """Bitmask of elements occurring as a first coordinate."""
        mask = 0
        for a, r in enumerate(self.rows):
            if r:
                mask |= 1 << a
        return mask

    def to_matrix(self) -> list[list[int]]:
        return [[(row >> b) & 1 for b in range(self.size)] for row in self.rows]

    # -- boolean algebra ----------------------------------------------

    def _check_size(self, other: BinRelation):
        if self.size != other.size:
            raise InputError(f"relation size mismatch: {self.size} vs {other.size}")

    def __and__(self, other: BinRelation) -> BinRelation:
        self._check_size(other)
        return BinRelation(self.size, tuple(a & b for a, b in zip(self.rows, other.rows)))

    def __or__(self, other: BinRelation) -> BinRelation:
        self._check_size(other)
        return BinRelation(self.size, tuple(a | b for a, b in zip(self.rows, other.rows)))

    def issubset(self, other: BinRelation) -> bool:
        self._check_size(other)
        return all(a & ~b == 0 for a, b in zip(self.rows, other.rows))

    def transpose(self) -> BinRelation:
        rows = [0] * self.size
        for a, row in enumerate(self.rows):
            for b in _bits(row):
                rows[b] |= 1 << a
        return BinRelation(self.size, tuple(rows))

    # -- composition and closures --------------------------------------

    def then(self, other: BinRelation) -> BinRelation:
        """Left-to-right chaining: (a,c) iff (a,b) in self and (b,c) in other."""
        self._check_size(other)
        rows = []
        for row in self.rows:
            acc = 0
            for b in _bits(row):
                acc |= other.rows[b]
            rows.append(acc)
        return BinRelation(self.size, tuple(rows))

    def power(self, k: int) -> BinRelation:
        """k-fold chaining; power(0) is the diagonal."""
        result = BinRelation.diagonal(self.size)
        for _ in range(k):
            result = result.then(self)
        return result

    def reflexive_closure(self) -> BinRelation:
        return self | BinRelation.diagonal(self.size)

    def transitive_closure(self) -> BinRelation:
        # Warshall on bitset rows.
        rows = list(self.rows)
        for k in range(self.size):
            bit = 1 << k
            row_k = rows[k]
            for a in range(self.size):
                if rows[a] & bit:
                    rows[a] |= row_k
        return BinRelation(self.size, tuple(rows))

    # -- properties ----------------------------------------------------

    def is_reflexive(self) -> bool:
        return all(row >> a & 1 for a, row in enumerate(self.rows))

    def is_symmetric(self) -> bool:
        return self == self.transpose()

    def is_transitive(self) -> bool:
        for a, row in enumerate(self.rows):
            for b in _bits(row):
                if self.rows[b] & ~row:
                    return False
        return True

    def is_quasi_order(self) -> bool:
        return self.is_reflexive() and self.is_transitive()

    def is_equivalence(self) -> bool:
        return self.is_quasi_order() and self.is_symmetric()


def relation_flags(r: BinRelation) -> dict[str, bool]:
    """Standard property flags of a relation."""
    reflexive = r.is_reflexive()
    symmetric = r.is_symmetric()
    transitive = r.is_transitive()
    return {
        "reflexive": reflexive,
        "symmetric": symmetric,
        "transitive": transitive,
        "quasi_order": reflexive and transitive,
        "equivalence": reflexive and transitive and symmetric,
    }


def compose(sigma: BinRelation, rho: BinRelation) -> BinRelation:
    """Composition where rho acts first: (a,c) iff (a,b) in rho, (b,c) in sigma."""
    return rho.then(sigma)


def intersect_all(size: int, relations) -> BinRelation:
    """Intersection of a family; the empty family gives the full relation."""
    result = BinRelation.full(size)
    for r in relations:
        result = result & r
    return result


def union_all(size: int, relations) -> BinRelation:
    result = BinRelation.empty(size)
    for r in relations:
        result = result | r
    return result
