"""Dense matrices over F_p with exact elimination.

Entries are held in an int64 numpy array, always reduced to ``[0, p)``.
Matrices are immutable: every operation returns a new matrix.
"""

from __future__ import annotations

from typing import Iterable, Optional, Sequence

import numpy as np

from .gfp import FieldScalar, ModulusError, Prime, check_modulus, inv_mod


class ShapeError(ValueError):
    pass


class ExactMatrix:
    __slots__ = ("_a", "p")

    def __init__(self, entries, p: int, shape: Optional[tuple[int, int]] = None):
        self.p = check_modulus(p)
        if isinstance(entries, ExactMatrix):
            entries = entries.array
        if isinstance(entries, np.ndarray) and entries.dtype != object:
            a = np.mod(entries.astype(np.int64), self.p)
        else:
            a = np.array(entries, dtype=object)
            if a.size:
                a = np.vectorize(lambda x: int(x) % self.p, otypes=[np.int64])(a)
            else:
                a = np.zeros(a.shape, dtype=np.int64)
        if a.size == 0 and shape is not None:
            a = np.zeros(shape, dtype=np.int64)
        if a.ndim != 2:
            raise ShapeError(f"expected a 2-d array, got shape {a.shape}")
        if shape is not None and tuple(shape) != a.shape:
            raise ShapeError(f"shape {shape} does not match entries {a.shape}")
        a.setflags(write=False)
        self._a = a

    @classmethod
    def _wrap(cls, a: np.ndarray, p: int) -> "ExactMatrix":
        # Trusted constructor: a is already reduced int64.
        m = cls.__new__(cls)
        m.p = p
        a = np.ascontiguousarray(a, dtype=np.int64)
        a.setflags(write=False)
        m._a = a
        return m

    @classmethod
    def zeros(cls, rows: int, cols: int, p: int) -> "ExactMatrix":
        return cls._wrap(np.zeros((rows, cols), dtype=np.int64), check_modulus(p))

    @classmethod
    def identity(cls, n: int, p: int) -> "ExactMatrix":
        return cls._wrap(np.eye(n, dtype=np.int64), check_modulus(p))

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], p: int, cols: Optional[int] = None) -> "ExactMatrix":
        rows = [list(r) for r in rows]
        if not rows:
            return cls.zeros(0, cols or 0, p)
        return cls(rows, p)

    @property
    def rows(self) -> int:
        return self._a.shape[0]

    @property
    def cols(self) -> int:
        return self._a.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self._a.shape

    @property
    def modulus(self) -> Prime:
        return Prime(self.p)

    @property
    def array(self) -> np.ndarray:
        """Read-only view of the reduced entries."""
        return self._a

    def tolist(self) -> list[list[int]]:
        return self._a.tolist()

    def __getitem__(self, idx):
        if isinstance(idx, tuple) and all(isinstance(i, (int, np.integer)) for i in idx):
            return FieldScalar(int(self._a[idx]), Prime(self.p))
        sub = self._a[idx]
        if sub.ndim == 1:
            sub = sub.reshape(1, -1) if isinstance(idx, (int, np.integer)) else sub.reshape(-1, 1)
        return ExactMatrix._wrap(sub, self.p)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.p == other.p and self.shape == other.shape and bool(np.array_equal(self._a, other._a))

    def __hash__(self) -> int:
        return hash((self.p, self.shape, self._a.tobytes()))

    def __repr__(self) -> str:
        return f"ExactMatrix({self.tolist()}, p={self.p})"

    def _check(self, other: "ExactMatrix"):
        if other.p != self.p:
            raise ModulusError(f"modulus mismatch: {self.p} vs {other.p}")

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        self._check(other)
        if self.shape != other.shape:
            raise ShapeError(f"cannot add {self.shape} and {other.shape}")
        return ExactMatrix._wrap((self._a + other._a) % self.p, self.p)

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        self._check(other)
        if self.shape != other.shape:
            raise ShapeError(f"cannot subtract {self.shape} and {other.shape}")
        return ExactMatrix._wrap((self._a - other._a) % self.p, self.p)

    def __neg__(self) -> "ExactMatrix":
        return ExactMatrix._wrap((-self._a) % self.p, self.p)

    def scale(self, c: int) -> "ExactMatrix":
        return ExactMatrix._wrap((self._a * (int(c) % self.p)) % self.p, self.p)

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        return matmul(self, other)

    @property
    def T(self) -> "ExactMatrix":
        return transpose(self)

    def is_zero(self) -> bool:
        return not self._a.any()

    # method spellings of the module-level operations
    def rref(self):
        return rref(self)

    def rank(self) -> int:
        return rank(self)

    def kernel_basis(self) -> "ExactMatrix":
        return kernel_basis(self)

    def permute_cols(self, sigma: "Permutation") -> "ExactMatrix":
        return permute_cols(self, sigma)


class Permutation:
    """A bijection on ``{0..N-1}``.

    As a matrix, ``P[k, images[k]] = 1``, so right-multiplying by it sends
    column ``k`` to position ``images[k]``.
    """

    __slots__ = ("images",)

    def __init__(self, images: Iterable[int]):
        images = tuple(int(i) for i in images)
        if sorted(images) != list(range(len(images))):
            raise ValueError(f"not a permutation: {images}")
        self.images = images

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(range(n))

    def __len__(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i]

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self) -> int:
        return hash(self.images)

    def __repr__(self) -> str:
        return f"Permutation({list(self.images)})"

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.images)
        for k, i in enumerate(self.images):
            inv[i] = k
        return Permutation(inv)

    def then(self, other: "Permutation") -> "Permutation":
        """Apply ``self`` first, then ``other``."""
        return Permutation(other.images[i] for i in self.images)

    def matrix(self, p: int) -> ExactMatrix:
        n = len(self.images)
        a = np.zeros((n, n), dtype=np.int64)
        a[np.arange(n), list(self.images)] = 1
        return ExactMatrix._wrap(a, check_modulus(p))


def _mod_matmul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    inner = a.shape[1]
    if inner * (p - 1) ** 2 < 2**62:
        return (a @ b) % p
    return np.array((a.astype(object) @ b.astype(object)) % p, dtype=np.int64)


def matmul(A: ExactMatrix, B: ExactMatrix) -> ExactMatrix:
    A._check(B)
    if A.cols != B.rows:
        raise ShapeError(f"cannot multiply {A.shape} by {B.shape}")
    return ExactMatrix._wrap(_mod_matmul(A.array, B.array, A.p), A.p)


def matvec(A: ExactMatrix, v: Sequence[int]) -> tuple[int, ...]:
    v = np.asarray([int(x) % A.p for x in v], dtype=np.int64).reshape(-1, 1)
    if A.cols != v.shape[0]:
        raise ShapeError(f"cannot apply {A.shape} matrix to length-{v.shape[0]} vector")
    return tuple(int(x) for x in _mod_matmul(A.array, v, A.p).ravel())


def transpose(M: ExactMatrix) -> ExactMatrix:
    return ExactMatrix._wrap(M.array.T, M.p)


def _rref_array(a: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    a = a.copy()
    rows, cols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            a[[r, k]] = a[[k, r]]
        a[r] = (a[r] * inv_mod(int(a[r, c]), p)) % p
        col = a[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            a[hit] = (a[hit] - np.outer(col[hit], a[r])) % p
        pivots.append(c)
        r += 1
    return a, pivots


def rref(M: ExactMatrix) -> tuple[ExactMatrix, tuple[int, ...]]:
    """Reduced row echelon form and pivot columns.

    Pivots are taken as the first nonzero entry scanning columns left to
    right and rows top down, so the result is reproducible.
    """
    a, piv = _rref_array(M.array, M.p)
    return ExactMatrix._wrap(a, M.p), tuple(piv)


def rank(M: ExactMatrix) -> int:
    return len(rref(M)[1])


def row_basis(M: ExactMatrix) -> ExactMatrix:
    """RREF with the zero rows dropped."""
    R, piv = rref(M)
    return ExactMatrix._wrap(R.array[: len(piv)], M.p)


def kernel_basis(M: ExactMatrix) -> ExactMatrix:
    """Rows spanning the right null space ``{x : M x = 0}``."""
    R, piv = rref(M)
    n = M.cols
    free = [j for j in range(n) if j not in set(piv)]
    K = np.zeros((len(free), n), dtype=np.int64)
    for t, f in enumerate(free):
        K[t, f] = 1
        for i, c in enumerate(piv):
            K[t, c] = (-R.array[i, f]) % M.p
    return ExactMatrix._wrap(K, M.p)


def solve(M: ExactMatrix, b: Sequence[int]) -> Optional[tuple[tuple[int, ...], ExactMatrix]]:
    """Solve ``M x = b``.

    Returns ``(particular, kernel)`` with free variables set to zero in the
    particular solution, or ``None`` when the system is inconsistent.
    """
    b = [int(x) % M.p for x in b]
    if len(b) != M.rows:
        raise ShapeError(f"rhs has length {len(b)}, matrix has {M.rows} rows")
    aug = np.hstack([M.array, np.asarray(b, dtype=np.int64).reshape(-1, 1)])
    R, piv = _rref_array(aug, M.p)
    n = M.cols
    if piv and piv[-1] == n:
        return None
    x = [0] * n
    for i, c in enumerate(piv):
        x[c] = int(R[i, n])
    return tuple(x), kernel_basis(M)


def permute_cols(M: ExactMatrix, sigma: Permutation) -> ExactMatrix:
    """``M @ sigma``: column ``k`` of M lands at position ``sigma(k)``."""
    if len(sigma) != M.cols:
        raise ShapeError(f"permutation on {len(sigma)} points, matrix has {M.cols} columns")
    out = np.empty_like(M.array)
    out[:, list(sigma.images)] = M.array
    return ExactMatrix._wrap(out, M.p)


def select_cols(M: ExactMatrix, cols: Sequence[int]) -> ExactMatrix:
    return ExactMatrix._wrap(M.array[:, list(cols)].reshape(M.rows, len(cols)), M.p)


def block(M: ExactMatrix, row_range: tuple[int, int], col_range: tuple[int, int]) -> ExactMatrix:
    r0, r1 = row_range
    c0, c1 = col_range
    if not (0 <= r0 <= r1 <= M.rows and 0 <= c0 <= c1 <= M.cols):
        raise ShapeError(f"block {row_range}x{col_range} outside {M.shape}")
    return ExactMatrix._wrap(M.array[r0:r1, c0:c1], M.p)


def hstack(mats: Sequence[ExactMatrix]) -> ExactMatrix:
    p = _common_modulus(mats)
    if len({m.rows for m in mats}) > 1:
        raise ShapeError("hstack needs equal row counts")
    return ExactMatrix._wrap(np.hstack([m.array for m in mats]), p)


def vstack(mats: Sequence[ExactMatrix]) -> ExactMatrix:
    p = _common_modulus(mats)
    if len({m.cols for m in mats}) > 1:
        raise ShapeError("vstack needs equal column counts")
    return ExactMatrix._wrap(np.vstack([m.array for m in mats]), p)


def block_matrix(blocks: Sequence[Sequence[ExactMatrix]]) -> ExactMatrix:
    return vstack([hstack(row) for row in blocks])


def _common_modulus(mats: Sequence[ExactMatrix]) -> int:
    if not mats:
        raise ValueError("need at least one matrix")
    ps = {m.p for m in mats}
    if len(ps) > 1:
        raise ModulusError(f"modulus mismatch: {sorted(ps)}")
    return ps.pop()


def row_space_equal(A: ExactMatrix, B: ExactMatrix) -> bool:
    A._check(B)
    if A.cols != B.cols:
        raise ShapeError(f"column counts differ: {A.cols} vs {B.cols}")
    return row_basis(A) == row_basis(B)


def inverse(M: ExactMatrix) -> ExactMatrix:
    if M.rows != M.cols:
        raise ShapeError("inverse of a non-square matrix")
    n = M.rows
    R, piv = _rref_array(np.hstack([M.array, np.eye(n, dtype=np.int64)]), M.p)
    if tuple(piv[:n]) != tuple(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return ExactMatrix._wrap(R[:, n:], M.p)


def format_matrix(M: ExactMatrix) -> str:
    lines = [f"p {M.p} {M.rows} {M.cols}"]
    lines += [" ".join(str(int(x)) for x in row) for row in M.array]
    return "\n".join(lines) + "\n"


def parse_matrix(lines: Sequence[str], p: Optional[int] = None) -> ExactMatrix:
    """Parse the ``p <modulus> <rows> <cols>`` block; ``p`` overrides the header modulus."""
    lines = [ln for ln in (l.strip() for l in lines) if ln and not ln.startswith("#")]
    if not lines:
        raise ValueError("empty matrix block")
    head = lines[0].split()
    if len(head) != 4 or head[0] != "p":
        raise ValueError(f"bad matrix header: {lines[0]!r}")
    mod, rows, cols = (int(x) for x in head[1:])
    mod = p if p is not None else mod
    body = lines[1:]
    if len(body) != rows:
        raise ValueError(f"expected {rows} rows, found {len(body)}")
    entries = [[int(x) for x in ln.split()] for ln in body]
    if any(len(r) != cols for r in entries):
        raise ValueError(f"expected {cols} entries per row")
    return ExactMatrix.from_rows(entries, mod, cols=cols) if rows else ExactMatrix.zeros(0, cols, mod)
