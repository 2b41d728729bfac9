"""The six discrete metric spaces: city block, projective, phase-rotation,
block, cyclic b-burst, Varshamov.

Every space exposes the same surface: `elements()` enumerates the ambient
set in lexicographic order with the all-zeros element at index 0,
`distance(x, y)` is the exact metric, and `neighbors(x)` generates the
unit sphere around x (used to build distance graphs without the O(V^2)
pairwise scan; the equivalence is property-tested).

City block elements are plain integer tuples, Varshamov elements are 0/1
tuples, the field metrics use :class:`~eigenbounds.algebra.FieldVector`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

from .algebra import (
    FieldVector,
    FiniteField,
    ones_vector,
    row_reduce,
    span_contains,
    unit_vector,
    zero_vector,
)
from .errors import AmbientTooLarge, DimensionMismatch, InternalError, InvalidElement

MAX_AMBIENT = 2**20

CITY_BLOCK = "city_block"
PROJECTIVE = "projective"
PHASE_ROTATION = "phase_rotation"
BLOCK = "block"
CYCLIC_BURST = "cyclic_burst"
VARSHAMOV = "varshamov"


# ----------------------------------------------------------------------
# Parameter records
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class CityBlockParams:
    m: int  # alphabet size, entries 0..m-1
    n: int

    def __post_init__(self):
        if self.m < 3:
            raise InvalidElement("city block requires m >= 3 (m=2 is the Hamming metric)")
        if self.n < 1:
            raise InvalidElement("n >= 1 required")


@dataclass(frozen=True)
class ProjectiveParams:
    """A set F of one-dimensional subspaces given by spanning vectors."""

    field: FiniteField
    n: int
    spanning_vectors: tuple[FieldVector, ...]

    def __post_init__(self):
        vs = self.spanning_vectors
        if any(v.is_zero() or len(v) != self.n or v.field != self.field for v in vs):
            raise InvalidElement("spanning vectors must be nonzero, length n, over the field")
        rank, _ = row_reduce(list(vs))
        if rank != self.n:
            raise InvalidElement("subspaces must span the full space")
        # no subspace listed twice: spanning vectors pairwise non-proportional
        for i in range(len(vs)):
            for j in range(i + 1, len(vs)):
                if span_contains([vs[i]], vs[j]):
                    raise InvalidElement("duplicate one-dimensional subspace")

    @property
    def m(self) -> int:
        return len(self.spanning_vectors)


@dataclass(frozen=True)
class PhaseRotationParams:
    field: FiniteField
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise InvalidElement("n >= 1 required")

    def as_projective(self) -> ProjectiveParams:
        """The defining set {span(e_1),...,span(e_n),span(1)} (n >= 2)."""
        f, n = self.field, self.n
        vs = [unit_vector(f, n, i) for i in range(n)]
        if n >= 2:
            vs.append(ones_vector(f, n))
        return ProjectiveParams(f, n, tuple(vs))


@dataclass(frozen=True)
class BlockParams:
    """Partition of {1..n}; blocks stored sorted by descending size."""

    field: FiniteField
    n: int
    partition: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        blocks = [tuple(sorted(b)) for b in self.partition]
        if any(not b for b in blocks):
            raise InvalidElement("empty block")
        flat = sorted(itertools.chain.from_iterable(blocks))
        if flat != list(range(1, self.n + 1)):
            raise InvalidElement("blocks must partition {1..n}")
        blocks.sort(key=lambda b: (-len(b), b))
        object.__setattr__(self, "partition", tuple(blocks))

    @property
    def m(self) -> int:
        return len(self.partition)


@dataclass(frozen=True)
class CyclicBurstParams:
    field: FiniteField
    n: int
    b: int
    windows: tuple[frozenset, ...] = dc_field(init=False)

    def __post_init__(self):
        if not (2 <= self.b <= self.n - 1):
            raise InvalidElement("cyclic burst requires 2 <= b <= n-1")
        # A_i = {i+j mod n : j=1..b}, residue 0 written as n (1-indexed support)
        wins = []
        for i in range(self.n):
            win = frozenset(((i + j - 1) % self.n) + 1 for j in range(1, self.b + 1))
            wins.append(win)
        object.__setattr__(self, "windows", tuple(wins))


@dataclass(frozen=True)
class VarshamovParams:
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise InvalidElement("n >= 1 required")


# ----------------------------------------------------------------------
# Distance functions (module-level operations)
# ----------------------------------------------------------------------

def city_block_distance(x: Sequence[int], y: Sequence[int], m: int) -> int:
    """Sum of coordinate-wise absolute differences on [[m-1]]^n."""
    if len(x) != len(y):
        raise DimensionMismatch("length mismatch")
    if any(not (0 <= v < m) for v in x) or any(not (0 <= v < m) for v in y):
        raise InvalidElement("entry outside 0..m-1")
    return sum(abs(a - b) for a, b in zip(x, y))


def projective_weight(x: FieldVector, params: ProjectiveParams) -> int:
    """Minimal number of subspaces of F whose joint span contains x.

    Increasing-cardinality subset search; exact but exponential in the
    answer, which is fine at desk scale (m <= ~12).
    """
    if x.is_zero():
        return 0
    vs = params.spanning_vectors
    for size in range(1, params.m + 1):
        for subset in itertools.combinations(vs, size):
            if span_contains(list(subset), x):
                return size
    raise InternalError("full-span invariant violated")  # pragma: no cover


def projective_distance(x: FieldVector, y: FieldVector, params: ProjectiveParams) -> int:
    return projective_weight(x - y, params)


def phase_rotation_weight(v: FieldVector, params: PhaseRotationParams) -> int:
    """min(wt(v), 1 + min_{c != 0} wt(v - c*1)): cover by e_i's, optionally 1."""
    f = params.field
    best = v.hamming_weight()
    if params.n >= 2:
        for c in f.nonzero():
            w = 1 + sum(1 for a in v.coords if a != c)
            if w < best:
                best = w
    else:
        best = min(best, 1)
    return best


def phase_rotation_distance(x: FieldVector, y: FieldVector,
                            params: PhaseRotationParams) -> int:
    if x.field != y.field or len(x) != len(y):
        raise DimensionMismatch("vector mismatch")
    return phase_rotation_weight(x - y, params)


def block_weight(v: FieldVector, params: BlockParams) -> int:
    supp = set(v.support())
    return sum(1 for blk in params.partition if supp.intersection(blk))


def block_distance(x: FieldVector, y: FieldVector, params: BlockParams) -> int:
    if x.field != y.field or len(x) != len(y):
        raise DimensionMismatch("vector mismatch")
    return block_weight(x - y, params)


def cyclic_burst_weight(v: FieldVector, params: CyclicBurstParams) -> int:
    """Minimal number of width-b cyclic windows covering supp(v)."""
    supp = frozenset(v.support())
    if not supp:
        return 0
    wins = params.windows
    useful = [w for w in wins if w & supp]
    for size in range(1, len(supp) + 1):  # each window covers >= 1 support point
        for combo in itertools.combinations(useful, size):
            if supp <= frozenset().union(*combo):
                return size
    raise InternalError("windows cover [n], so a cover always exists")  # pragma: no cover


def cyclic_burst_distance(x: FieldVector, y: FieldVector,
                          params: CyclicBurstParams) -> int:
    if x.field != y.field or len(x) != len(y):
        raise DimensionMismatch("vector mismatch")
    return cyclic_burst_weight(x - y, params)


def varshamov_distance(x: Sequence[int], y: Sequence[int]) -> int:
    """max(N01, N10); cross-checked against the Hamming-weight form."""
    if len(x) != len(y):
        raise DimensionMismatch("length mismatch")
    if any(v not in (0, 1) for v in x) or any(v not in (0, 1) for v in y):
        raise InvalidElement("binary vectors required")
    n01 = sum(1 for a, b in zip(x, y) if a == 0 and b == 1)
    n10 = sum(1 for a, b in zip(x, y) if a == 1 and b == 0)
    by_max = max(n01, n10)
    wx, wy = sum(x), sum(y)
    doubled = (n01 + n10) + abs(wx - wy)
    if doubled != 2 * by_max:
        raise InternalError("the two Varshamov definitions disagree")
    return by_max


# ----------------------------------------------------------------------
# Space objects
# ----------------------------------------------------------------------

class MetricSpace:
    """Common surface: name, params, ambient_size, elements, distance."""

    name: str
    ambient_size: int

    def elements(self) -> list:
        raise NotImplementedError

    def distance(self, x, y) -> int:
        raise NotImplementedError

    def neighbors(self, x) -> Iterator:
        """Exact unit sphere around x (the d(x, .) = 1 set)."""
        raise NotImplementedError

    def diameter_hint(self) -> int | None:
        return None


def _field_tuples(field: FiniteField, n: int) -> Iterator[FieldVector]:
    for coords in itertools.product(range(field.q), repeat=n):
        yield FieldVector(field, coords)


class _FieldMetricSpace(MetricSpace):
    """Translation-invariant metric on F_q^n given by a weight function."""

    def __init__(self, field: FiniteField, n: int):
        self.field = field
        self.n = n
        self.ambient_size = field.q**n

    def weight(self, v: FieldVector) -> int:
        raise NotImplementedError

    def distance(self, x: FieldVector, y: FieldVector) -> int:
        return self.weight(x - y)

    def elements(self) -> list[FieldVector]:
        return list(_field_tuples(self.field, self.n))

    def unit_sphere(self) -> list[FieldVector]:
        """All weight-1 difference vectors; subclasses generate directly."""
        raise NotImplementedError

    def neighbors(self, x: FieldVector) -> Iterator[FieldVector]:
        for s in self.unit_sphere():
            yield x + s


class CityBlockSpace(MetricSpace):
    name = CITY_BLOCK

    def __init__(self, m: int, n: int):
        self.params = CityBlockParams(m, n)
        self.m, self.n = m, n
        self.ambient_size = m**n

    def elements(self) -> list[tuple[int, ...]]:
        return list(itertools.product(range(self.m), repeat=self.n))

    def distance(self, x, y) -> int:
        return city_block_distance(x, y, self.m)

    def neighbors(self, x) -> Iterator[tuple[int, ...]]:
        for i, v in enumerate(x):
            if v > 0:
                yield x[:i] + (v - 1,) + x[i + 1:]
            if v < self.m - 1:
                yield x[:i] + (v + 1,) + x[i + 1:]

    def diameter_hint(self) -> int:
        return self.n * (self.m - 1)


class ProjectiveSpace(_FieldMetricSpace):
    name = PROJECTIVE

    def __init__(self, params: ProjectiveParams):
        super().__init__(params.field, params.n)
        self.params = params

    def weight(self, v: FieldVector) -> int:
        return projective_weight(v, self.params)

    @lru_cache(maxsize=None)
    def unit_sphere(self) -> tuple[FieldVector, ...]:
        seen = {}
        for f in self.params.spanning_vectors:
            for c in self.field.nonzero():
                s = f.scale(c)
                seen[s.coords] = s
        return tuple(seen.values())


class PhaseRotationSpace(_FieldMetricSpace):
    name = PHASE_ROTATION

    def __init__(self, field: FiniteField, n: int):
        super().__init__(field, n)
        self.params = PhaseRotationParams(field, n)

    def weight(self, v: FieldVector) -> int:
        return phase_rotation_weight(v, self.params)

    @lru_cache(maxsize=None)
    def unit_sphere(self) -> tuple[FieldVector, ...]:
        seen = {}
        gens = [unit_vector(self.field, self.n, i) for i in range(self.n)]
        gens.append(ones_vector(self.field, self.n))
        for g in gens:
            for c in self.field.nonzero():
                s = g.scale(c)
                seen[s.coords] = s
        return tuple(seen.values())


class BlockSpace(_FieldMetricSpace):
    name = BLOCK

    def __init__(self, params: BlockParams):
        super().__init__(params.field, params.n)
        self.params = params

    def weight(self, v: FieldVector) -> int:
        return block_weight(v, self.params)

    @lru_cache(maxsize=None)
    def unit_sphere(self) -> tuple[FieldVector, ...]:
        out = []
        for blk in self.params.partition:
            positions = [p - 1 for p in blk]
            for values in itertools.product(range(self.field.q), repeat=len(positions)):
                if all(v == 0 for v in values):
                    continue
                coords = [0] * self.n
                for pos, val in zip(positions, values):
                    coords[pos] = val
                out.append(FieldVector(self.field, tuple(coords)))
        return tuple(out)


class CyclicBurstSpace(_FieldMetricSpace):
    name = CYCLIC_BURST

    def __init__(self, params: CyclicBurstParams):
        super().__init__(params.field, params.n)
        self.params = params

    def weight(self, v: FieldVector) -> int:
        return cyclic_burst_weight(v, self.params)

    @lru_cache(maxsize=None)
    def unit_sphere(self) -> tuple[FieldVector, ...]:
        seen = {}
        for win in self.params.windows:
            positions = [p - 1 for p in sorted(win)]
            for values in itertools.product(range(self.field.q), repeat=len(positions)):
                if all(v == 0 for v in values):
                    continue
                coords = [0] * self.n
                for pos, val in zip(positions, values):
                    coords[pos] = val
                seen[tuple(coords)] = FieldVector(self.field, tuple(coords))
        return tuple(seen.values())


class VarshamovSpace(MetricSpace):
    name = VARSHAMOV

    def __init__(self, n: int):
        self.params = VarshamovParams(n)
        self.n = n
        self.ambient_size = 2**n

    def elements(self) -> list[tuple[int, ...]]:
        return list(itertools.product((0, 1), repeat=self.n))

    def distance(self, x, y) -> int:
        return varshamov_distance(x, y)

    def neighbors(self, x) -> Iterator[tuple[int, ...]]:
        ones = [i for i, v in enumerate(x) if v == 1]
        zeros = [i for i, v in enumerate(x) if v == 0]
        for i in zeros:  # one 0 -> 1
            yield x[:i] + (1,) + x[i + 1:]
        for i in ones:  # one 1 -> 0
            yield x[:i] + (0,) + x[i + 1:]
        for i in ones:  # swap a 1 and a 0
            for j in zeros:
                y = list(x)
                y[i], y[j] = 0, 1
                yield tuple(y)


def enumerate_ambient(space: MetricSpace) -> list:
    """Canonical (lexicographic) enumeration; index 0 is the zero element."""
    if space.ambient_size > MAX_AMBIENT:
        raise AmbientTooLarge(f"ambient size {space.ambient_size} > {MAX_AMBIENT}")
    return space.elements()
