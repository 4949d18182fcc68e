"""Exact rational linear maps between tensor products of labeled spaces.

Every structure map in the library (products, coproducts, braidings,
actions, coactions, pairings) is a :class:`LinMap`.  Coefficients are
``fractions.Fraction`` values, stored sparsely by column.  A basis tensor
``e_{i_1} (x) ... (x) e_{i_n}`` has the row-major linear index with the
leftmost factor most significant.

Besides the materialized :class:`LinMap` there are two lazy operators,
:class:`Kron` and :class:`Chain`.  The checkers use them to evaluate long
composites one basis column at a time without ever building the full
matrix of, say, ``id (x) Psi (x) id`` on a fourfold tensor power.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Dict, Iterable, Iterator, Mapping, Sequence, Tuple, Union

from .errors import ShapeMismatch, Singular

Scalar = Fraction
Vector = Dict[int, Fraction]

ZERO = Fraction(0)
ONE = Fraction(1)


def scalar(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot use {value!r} as an exact scalar")


@dataclass(frozen=True)
class Space:
    """A finite-dimensional vector space with a labeled basis.

    ``degrees`` and ``cutoff`` are set for degree-truncated spaces coming
    from the graded catalog.  ``dualized`` marks the dual space; taking the
    dual twice gives back the original space, which is the canonical
    identification of a finite-dimensional space with its double dual.
    """

    name: str
    dim: int
    labels: Tuple[str, ...]
    degrees: Tuple[int, ...] | None = None
    cutoff: int | None = None
    dualized: bool = False

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(self.labels))
        if self.degrees is not None:
            object.__setattr__(self, "degrees", tuple(self.degrees))
        if self.dim < 1:
            raise ValueError(f"space {self.name} must have positive dimension")
        if len(self.labels) != self.dim:
            raise ValueError(f"space {self.name}: {len(self.labels)} labels for dim {self.dim}")
        if len(set(self.labels)) != self.dim:
            raise ValueError(f"space {self.name}: basis labels must be distinct")
        if self.degrees is not None:
            if len(self.degrees) != self.dim:
                raise ValueError(f"space {self.name}: degree list has wrong length")
            if self.cutoff is None:
                object.__setattr__(self, "cutoff", max(self.degrees))

    @classmethod
    def standard(cls, name: str, dim: int) -> "Space":
        return cls(name, dim, tuple(f"e{i}" for i in range(dim)))

    @property
    def graded(self) -> bool:
        return self.degrees is not None

    @property
    def display_name(self) -> str:
        return self.name + "'" if self.dualized else self.name

    def label(self, i: int) -> str:
        return self.labels[i] + "*" if self.dualized else self.labels[i]

    def dual(self) -> "Space":
        return replace(self, dualized=not self.dualized)

    def renamed(self, name: str) -> "Space":
        return replace(self, name=name)

    def degree(self, i: int) -> int:
        return 0 if self.degrees is None else self.degrees[i]


K = Space("K", 1, ("1",))


class TensorShape:
    """An ordered list of factor spaces with row-major indexing."""

    __slots__ = ("factors", "dims", "size", "_strides", "_hash")

    def __init__(self, factors: Iterable[Space]):
        factors = tuple(factors)
        if not factors:
            raise ValueError("a tensor shape needs at least one factor (use K)")
        self.factors = factors
        self.dims = tuple(s.dim for s in factors)
        strides = []
        acc = 1
        for d in reversed(self.dims):
            strides.append(acc)
            acc *= d
        self._strides = tuple(reversed(strides))
        self.size = acc
        self._hash = hash(factors)

    def __eq__(self, other):
        return isinstance(other, TensorShape) and self.factors == other.factors

    def __hash__(self):
        return self._hash

    def __len__(self):
        return len(self.factors)

    def __iter__(self):
        return iter(self.factors)

    def __add__(self, other: "TensorShape") -> "TensorShape":
        return TensorShape(self.factors + as_shape(other).factors)

    def __repr__(self):
        return " (x) ".join(s.display_name for s in self.factors)

    def split(self, index: int) -> Tuple[int, ...]:
        return tuple((index // st) % d for st, d in zip(self._strides, self.dims))

    def join(self, parts: Sequence[int]) -> int:
        return sum(p * st for p, st in zip(parts, self._strides))

    def labels(self, index: int) -> Tuple[str, ...]:
        return tuple(s.label(i) for s, i in zip(self.factors, self.split(index)))

    def squeezed(self) -> "TensorShape":
        """Drop one-dimensional scalar factors (keeping at least one)."""
        kept = [s for s in self.factors if s != K]
        return TensorShape(kept) if kept else TensorShape((K,))

    @property
    def graded(self) -> bool:
        return any(s.graded for s in self.factors)

    @property
    def cutoff(self) -> int | None:
        cuts = [s.cutoff for s in self.factors if s.graded]
        return min(cuts) if cuts else None

    def polar_degrees(self, index: int) -> Tuple[int, int]:
        """Summed degrees of the primal factors and of the dual factors."""
        primal = dual = 0
        for s, i in zip(self.factors, self.split(index)):
            if s.degrees is None:
                continue
            if s.dualized:
                dual += s.degrees[i]
            else:
                primal += s.degrees[i]
        return primal, dual


ShapeLike = Union[Space, TensorShape, Sequence[Space]]


def as_shape(x: ShapeLike) -> TensorShape:
    if isinstance(x, TensorShape):
        return x
    if isinstance(x, Space):
        return TensorShape((x,))
    return TensorShape(x)


def add_into(target: Vector, vec: Mapping[int, Fraction], factor: Fraction = ONE) -> None:
    for i, c in vec.items():
        v = target.get(i, ZERO) + factor * c
        if v:
            target[i] = v
        else:
            target.pop(i, None)


class LinearOp:
    """Anything with a domain, a codomain and computable columns."""

    domain: TensorShape
    codomain: TensorShape

    def column(self, j: int) -> Mapping[int, Fraction]:
        raise NotImplementedError

    def apply(self, vec: Mapping[int, Fraction]) -> Vector:
        out: Vector = {}
        for j, c in vec.items():
            add_into(out, self.column(j), c)
        return out

    def materialize(self) -> "LinMap":
        cols = {}
        for j in range(self.domain.size):
            col = self.column(j)
            if col:
                cols[j] = dict(col)
        return LinMap._trusted(self.domain, self.codomain, cols)


class LinMap(LinearOp):
    """A sparse exact matrix between two tensor shapes.

    ``coeffs`` is the table ``(codomain_index, domain_index) -> Fraction``;
    absent entries are zero and zero entries are never stored.
    """

    __slots__ = ("domain", "codomain", "_cols", "_hash")

    def __init__(self, domain: ShapeLike, codomain: ShapeLike,
                 coeffs: Mapping[Tuple[int, int], object] | None = None):
        self.domain = as_shape(domain)
        self.codomain = as_shape(codomain)
        self._hash = None
        cols: Dict[int, Vector] = {}
        for (i, j), c in (coeffs or {}).items():
            if not (0 <= i < self.codomain.size and 0 <= j < self.domain.size):
                raise IndexError(f"entry ({i}, {j}) out of bounds for "
                                 f"{self.domain!r} -> {self.codomain!r}")
            c = scalar(c)
            if c:
                col = cols.setdefault(j, {})
                v = col.get(i, ZERO) + c
                if v:
                    col[i] = v
                else:
                    del col[i]
        self._cols = {j: col for j, col in cols.items() if col}

    @classmethod
    def _trusted(cls, domain, codomain, cols):
        self = cls.__new__(cls)
        self.domain = as_shape(domain)
        self.codomain = as_shape(codomain)
        self._cols = {j: col for j, col in cols.items() if col}
        self._hash = None
        return self

    @classmethod
    def from_columns(cls, domain: ShapeLike, codomain: ShapeLike,
                     columns: Mapping[int, Mapping[int, object]]) -> "LinMap":
        return cls(domain, codomain,
                   {(i, j): c for j, col in columns.items() for i, c in col.items()})

    @classmethod
    def from_dense(cls, domain: ShapeLike, codomain: ShapeLike, rows) -> "LinMap":
        return cls(domain, codomain,
                   {(i, j): c for i, row in enumerate(rows) for j, c in enumerate(row)})

    @classmethod
    def zero(cls, domain: ShapeLike, codomain: ShapeLike) -> "LinMap":
        return cls._trusted(domain, codomain, {})

    @property
    def coeffs(self) -> Dict[Tuple[int, int], Fraction]:
        return {(i, j): c for j, col in self._cols.items() for i, c in col.items()}

    def entries(self) -> Iterator[Tuple[int, int, Fraction]]:
        """All stored entries as ``(out, in, value)``, sorted."""
        for (i, j), c in sorted(self.coeffs.items()):
            yield i, j, c

    def __len__(self):
        return sum(len(c) for c in self._cols.values())

    def column(self, j: int) -> Mapping[int, Fraction]:
        return self._cols.get(j, {})

    def materialize(self) -> "LinMap":
        return self

    def to_dense(self):
        rows = [[ZERO] * self.domain.size for _ in range(self.codomain.size)]
        for j, col in self._cols.items():
            for i, c in col.items():
                rows[i][j] = c
        return rows

    def __eq__(self, other):
        if not isinstance(other, LinMap):
            return NotImplemented
        return (self.domain == other.domain and self.codomain == other.codomain
                and self._cols == other._cols)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.domain, self.codomain,
                               frozenset(self.coeffs.items())))
        return self._hash

    def __repr__(self):
        return f"LinMap({self.domain!r} -> {self.codomain!r}, {len(self)} entries)"

    def same_shape(self, other: "LinMap") -> bool:
        return self.domain == other.domain and self.codomain == other.codomain

    def _check_same(self, other):
        if not self.same_shape(other):
            raise ShapeMismatch(f"{self!r} vs {other!r}")

    def __add__(self, other: "LinMap") -> "LinMap":
        self._check_same(other)
        cols = {j: dict(c) for j, c in self._cols.items()}
        for j, col in other._cols.items():
            target = cols.setdefault(j, {})
            add_into(target, col)
        return LinMap._trusted(self.domain, self.codomain, cols)

    def __neg__(self) -> "LinMap":
        return self.scale(-1)

    def __sub__(self, other: "LinMap") -> "LinMap":
        return self + (-other)

    def scale(self, c) -> "LinMap":
        c = scalar(c)
        if not c:
            return LinMap.zero(self.domain, self.codomain)
        return LinMap._trusted(self.domain, self.codomain,
                               {j: {i: c * v for i, v in col.items()}
                                for j, col in self._cols.items()})

    def __rmul__(self, c) -> "LinMap":
        return self.scale(c)

    def __matmul__(self, other: "LinMap") -> "LinMap":
        return lin_compose(self, other)

    def relabel(self, domain: ShapeLike, codomain: ShapeLike) -> "LinMap":
        """Reinterpret the same matrix between shapes of equal total size."""
        domain, codomain = as_shape(domain), as_shape(codomain)
        if domain.size != self.domain.size or codomain.size != self.codomain.size:
            raise ShapeMismatch(f"cannot relabel {self!r} as {domain!r} -> {codomain!r}")
        return LinMap._trusted(domain, codomain, self._cols)

    def squeezed(self) -> "LinMap":
        return self.relabel(self.domain.squeezed(), self.codomain.squeezed())

    def is_zero(self) -> bool:
        return not self._cols


class Identity(LinearOp):
    def __init__(self, shape: ShapeLike):
        self.domain = self.codomain = as_shape(shape)

    def column(self, j):
        return {j: ONE}

    def apply(self, vec):
        return dict(vec)


class Kron(LinearOp):
    """Lazy tensor product of operators; columns are cached on demand."""

    def __init__(self, *ops: LinearOp):
        if not ops:
            raise ValueError("Kron needs at least one factor")
        self.ops = tuple(Identity(o) if isinstance(o, (Space, TensorShape)) else o
                         for o in ops)
        self.domain = TensorShape(f for o in self.ops for f in o.domain.factors)
        self.codomain = TensorShape(f for o in self.ops for f in o.codomain.factors)
        self._dsizes = [o.domain.size for o in self.ops]
        self._csizes = [o.codomain.size for o in self.ops]
        self._cache: Dict[int, Vector] = {}

    def column(self, j):
        hit = self._cache.get(j)
        if hit is not None:
            return hit
        parts = []
        rest = j
        for size in reversed(self._dsizes):
            parts.append(rest % size)
            rest //= size
        parts.reverse()
        acc: Vector = {0: ONE}
        for op, part, csize in zip(self.ops, parts, self._csizes):
            col = op.column(part)
            nxt: Vector = {}
            for a, ca in acc.items():
                base = a * csize
                for b, cb in col.items():
                    nxt[base + b] = ca * cb
            acc = nxt
            if not acc:
                break
        self._cache[j] = acc
        return acc


class Chain(LinearOp):
    """Lazy composite ``ops[0] o ops[1] o ... o ops[-1]``."""

    def __init__(self, *ops: LinearOp):
        if not ops:
            raise ValueError("Chain needs at least one operator")
        for outer, inner in zip(ops, ops[1:]):
            if outer.domain != inner.codomain:
                raise ShapeMismatch(
                    f"cannot compose {outer.domain!r} <- {inner.codomain!r}")
        self.ops = ops
        self.domain = ops[-1].domain
        self.codomain = ops[0].codomain

    def column(self, j):
        vec = dict(self.ops[-1].column(j))
        for op in reversed(self.ops[:-1]):
            vec = op.apply(vec)
            if not vec:
                break
        return vec


def identity(shape: ShapeLike) -> LinMap:
    shape = as_shape(shape)
    return LinMap._trusted(shape, shape, {j: {j: ONE} for j in range(shape.size)})


def permutation(shape: ShapeLike, order: Sequence[int]) -> LinMap:
    """The map sending factor ``order[k]`` of ``shape`` to output position ``k``.

    ``permutation(V (x) W, (1, 0))`` is the flip ``V (x) W -> W (x) V``.
    """
    shape = as_shape(shape)
    if sorted(order) != list(range(len(shape))):
        raise ValueError(f"{order} is not a permutation of {len(shape)} factors")
    out = TensorShape(shape.factors[k] for k in order)
    cols = {}
    for j in range(shape.size):
        parts = shape.split(j)
        cols[j] = {out.join([parts[k] for k in order]): ONE}
    return LinMap._trusted(shape, out, cols)


def flip(v: Space, w: Space | None = None) -> LinMap:
    w = v if w is None else w
    return permutation((v, w), (1, 0))


def lin_compose(g: LinearOp, f: LinearOp) -> LinMap:
    """``g o f`` with exact coefficients."""
    if f.codomain != g.domain:
        raise ShapeMismatch(f"cannot compose {g.domain!r} <- {f.codomain!r}")
    f = f.materialize()
    cols = {}
    for j, col in f._cols.items():
        out = g.apply(col)
        if out:
            cols[j] = out
    return LinMap._trusted(f.domain, g.codomain, cols)


def compose(*maps: LinearOp) -> LinMap:
    """Materialized ``maps[0] o maps[1] o ...``."""
    return Chain(*maps).materialize()


def lin_tensor(f: LinearOp, g: LinearOp) -> LinMap:
    return Kron(f, g).materialize()


def tensor(*maps) -> LinMap:
    return Kron(*maps).materialize()


def lin_transpose(f: LinMap) -> LinMap:
    """The dual map, with every factor replaced by its dual space."""
    f = f.materialize()
    dom = TensorShape(s.dual() for s in f.codomain.factors)
    cod = TensorShape(s.dual() for s in f.domain.factors)
    cols: Dict[int, Vector] = {}
    for j, col in f._cols.items():
        for i, c in col.items():
            cols.setdefault(i, {})[j] = c
    return LinMap._trusted(dom, cod, cols)


def _eliminate(rows: Sequence[Mapping[int, Fraction]], nvars: int):
    """Gauss-Jordan elimination on sparse rows.

    Columns ``< nvars`` are unknowns; larger columns are right-hand sides.
    Returns ``(pivots, inconsistent)`` where ``pivots`` maps a pivot column
    to its fully reduced row (pivot entry 1).
    """
    pivots: Dict[int, Vector] = {}
    inconsistent = []
    for raw in rows:
        row = {k: scalar(v) for k, v in raw.items() if v}
        for col in [k for k in row if k in pivots]:
            c = row.get(col)
            if c:
                add_into(row, pivots[col], -c)
        lead = [k for k in row if k < nvars]
        if not lead:
            if row:
                inconsistent.append(row)
            continue
        p = min(lead)
        inv = 1 / row[p]
        row = {k: v * inv for k, v in row.items()}
        for prow in pivots.values():
            c = prow.get(p)
            if c:
                add_into(prow, row, -c)
        pivots[p] = row
    return pivots, inconsistent


def lin_invert(f: LinMap) -> LinMap:
    """Exact inverse by rational Gauss-Jordan elimination."""
    f = f.materialize()
    n = f.domain.size
    if n != f.codomain.size:
        raise ShapeMismatch(f"{f!r} is not square")
    rows: list[Vector] = [{} for _ in range(n)]
    for j, col in f._cols.items():
        for i, c in col.items():
            rows[i][j] = c
    for i in range(n):
        rows[i][n + i] = ONE
    pivots, _ = _eliminate(rows, n)
    if len(pivots) < n:
        raise Singular(f"{f!r} has rank {len(pivots)} < {n}")
    # pivot row p reads x_p = sum_k row[n+k] * y_k, so inverse[p, k] = row[n+k]
    cols: Dict[int, Vector] = {}
    for p, row in pivots.items():
        for k, c in row.items():
            if k >= n:
                cols.setdefault(k - n, {})[p] = c
    return LinMap._trusted(f.codomain, f.domain, cols)


def rank(f: LinMap) -> int:
    rows: list[Vector] = [{} for _ in range(f.codomain.size)]
    for j, col in f.materialize()._cols.items():
        for i, c in col.items():
            rows[i][j] = c
    pivots, _ = _eliminate(rows, f.domain.size)
    return len(pivots)


def solve_linear(rows: Sequence[Mapping[int, object]], rhs: Sequence[object],
                 nvars: int) -> Tuple[list[Fraction] | None, bool]:
    """Solve ``rows . x = rhs`` exactly.

    Returns ``(solution, unique)``; ``solution`` is ``None`` when the system
    is inconsistent.  When it is underdetermined, free variables are zero.
    """
    aug = []
    for row, b in zip(rows, rhs):
        r = dict(row)
        b = scalar(b)
        if b:
            r[nvars] = b
        aug.append(r)
    pivots, bad = _eliminate(aug, nvars)
    if bad:
        return None, False
    x = [ZERO] * nvars
    for p, row in pivots.items():
        x[p] = row.get(nvars, ZERO)
    return x, len(pivots) == nvars


def basis_vector(index: int) -> Vector:
    return {index: ONE}


def vector_from(values: Mapping[int, object]) -> Vector:
    return {i: scalar(c) for i, c in values.items() if scalar(c)}


def fuse(shape: ShapeLike, name: str | None = None, sep: str = ".") -> Space:
    """A single space whose basis is the product basis of ``shape``.

    Indices agree with the row-major index of ``shape``, so maps can be
    moved between the two with :meth:`LinMap.relabel`.
    """
    shape = as_shape(shape)
    if len(shape) == 1:
        return shape.factors[0]
    labels = tuple(sep.join(shape.labels(i)) for i in range(shape.size))
    degrees = None
    cutoff = None
    if shape.graded:
        degrees = tuple(sum(shape.polar_degrees(i)) for i in range(shape.size))
        cutoff = shape.cutoff
    name = name or "(x)".join(s.display_name for s in shape.factors)
    return Space(name, shape.size, labels, degrees, cutoff)
