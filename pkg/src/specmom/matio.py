"""Matrix operators, Matrix Market coordinate I/O, and test-problem generators.

Operators are plain numpy 2-D arrays (dense) or scipy CSR matrices; both
support the same matvec.  Only the Matrix Market *coordinate* format is
handled, with 1-based indices, optional `symmetric` expansion, and
`pattern` entries valued 1.  Duplicate entries are summed with a warning,
following the de facto convention.
"""

from __future__ import annotations

import io
import warnings

import numpy as np
import scipy.sparse as sp

from .errors import (
    BadHeader,
    DimensionMismatch,
    DuplicateEntryWarning,
    IndexOutOfRange,
    NonSquare,
)

_FIELDS = {"real", "complex", "integer", "pattern"}
_SYMMETRIES = {"general", "symmetric"}


def matvec(A, x: np.ndarray) -> np.ndarray:
    """Matrix-vector product with an explicit dimension check."""
    x = np.asarray(x)
    if A.shape[0] != A.shape[1]:
        raise NonSquare(f"operator has shape {A.shape}")
    if A.shape[1] != x.shape[0]:
        raise DimensionMismatch(f"operator {A.shape} vs vector {x.shape}")
    return A @ x


def diagonal_operator(values) -> sp.csr_array:
    """Diagonal operator stored as CSR."""
    return sp.diags_array(np.asarray(values), format="csr")


def parse_matrix_market(source) -> sp.csr_array:
    """Parse a Matrix Market coordinate file into a square CSR matrix.

    `source` may be a path, text, or a file-like object.  Raises BadHeader
    for anything but `matrix coordinate real|complex|integer|pattern
    general|symmetric`, IndexOutOfRange for bad triplets, NonSquare for
    rectangular sizes.
    """
    if hasattr(source, "read"):
        text = source.read()
    elif isinstance(source, bytes):
        text = source.decode("ascii")
    elif not source.strip() or "\n" in source or source.lstrip().startswith("%%"):
        text = source
    else:
        with open(source, "r") as fh:
            text = fh.read()

    lines = iter(text.splitlines())
    try:
        header = next(lines)
    except StopIteration:
        raise BadHeader("empty input") from None
    parts = header.strip().split()
    if (
        len(parts) != 5
        or parts[0] != "%%MatrixMarket"
        or parts[1].lower() != "matrix"
        or parts[2].lower() != "coordinate"
        or parts[3].lower() not in _FIELDS
        or parts[4].lower() not in _SYMMETRIES
    ):
        raise BadHeader(f"unsupported Matrix Market header: {header.strip()!r}")
    field = parts[3].lower()
    symmetric = parts[4].lower() == "symmetric"

    size_line = None
    for line in lines:
        stripped = line.strip()
        if not stripped or stripped.startswith("%"):
            continue
        size_line = stripped
        break
    if size_line is None:
        raise BadHeader("missing size line")
    try:
        nrows, ncols, nnz = (int(tok) for tok in size_line.split())
    except ValueError:
        raise BadHeader(f"bad size line: {size_line!r}") from None
    if nrows != ncols:
        raise NonSquare(f"matrix is {nrows}x{ncols}")

    dtype = complex if field == "complex" else float
    rows, cols, vals = [], [], []
    count = 0
    for line in lines:
        stripped = line.strip()
        if not stripped or stripped.startswith("%"):
            continue
        toks = stripped.split()
        i, j = int(toks[0]), int(toks[1])
        if not (1 <= i <= nrows and 1 <= j <= ncols):
            raise IndexOutOfRange(f"entry ({i}, {j}) outside {nrows}x{ncols}")
        if field == "pattern":
            v = 1.0
        elif field == "complex":
            v = float(toks[2]) + 1j * float(toks[3])
        else:
            v = float(toks[2])
        rows.append(i - 1)
        cols.append(j - 1)
        vals.append(v)
        if symmetric and i != j:
            rows.append(j - 1)
            cols.append(i - 1)
            vals.append(v)
        count += 1
    if count != nnz:
        raise BadHeader(f"expected {nnz} entries, found {count}")

    coo = sp.coo_array(
        (np.asarray(vals, dtype=dtype), (np.asarray(rows), np.asarray(cols))),
        shape=(nrows, ncols),
    )
    stated = len({(r, c) for r, c in zip(rows, cols)})
    if stated < len(rows):
        warnings.warn(
            f"{len(rows) - stated} duplicate entries summed",
            DuplicateEntryWarning,
        )
    return coo.tocsr()


def write_matrix_market(A, path=None) -> str:
    """Serialize a square matrix to coordinate-format text (general symmetry)."""
    coo = sp.coo_array(A)
    if coo.shape[0] != coo.shape[1]:
        raise NonSquare(f"matrix is {coo.shape[0]}x{coo.shape[1]}")
    complex_field = np.iscomplexobj(coo.data)
    field = "complex" if complex_field else "real"
    buf = io.StringIO()
    buf.write(f"%%MatrixMarket matrix coordinate {field} general\n")
    buf.write(f"{coo.shape[0]} {coo.shape[1]} {coo.nnz}\n")
    order = np.lexsort((coo.col, coo.row))
    for k in order:
        i, j, v = coo.row[k] + 1, coo.col[k] + 1, coo.data[k]
        if complex_field:
            buf.write(f"{i} {j} {v.real:.17g} {v.imag:.17g}\n")
        else:
            buf.write(f"{i} {j} {v:.17g}\n")
    text = buf.getvalue()
    if path is not None:
        with open(path, "w") as fh:
            fh.write(text)
    return text


def toy_matrix() -> np.ndarray:
    """4x4 block matrix with eigenvalues {1.01, 1, i/2, -i/2}; gap 0.01."""
    A = np.zeros((4, 4))
    A[0, 0] = 1.01
    A[1, 1] = 1.0
    A[2, 3] = -0.5
    A[3, 2] = 0.5
    return A


def barbell(N: int, p: float, seed: int) -> sp.csr_array:
    """Random directed barbell adjacency matrix of size 2N x 2N.

    Each ordered pair (u, v), u != v, within a half gets an edge with
    probability p (no self-loops), plus a single directed bridge edge from
    vertex 0 to vertex N.  Deterministic per seed.
    """
    if N < 2:
        raise ValueError(f"N must be >= 2, got {N}")
    if not 0 <= p <= 1:
        raise ValueError(f"p must be in [0, 1], got {p}")
    rng = np.random.default_rng(seed)
    rows, cols = [], []
    for offset in (0, N):
        block = rng.random((N, N)) < p
        np.fill_diagonal(block, False)
        r, c = np.nonzero(block)
        rows.append(r + offset)
        cols.append(c + offset)
    rows.append(np.array([0]))
    cols.append(np.array([N]))
    r = np.concatenate(rows)
    c = np.concatenate(cols)
    A = sp.coo_array((np.ones(r.size), (r, c)), shape=(2 * N, 2 * N))
    return A.tocsr()
