"""Built-in test matrices and file ingestion for user-supplied block matrices.

The generators a1..a5 reproduce a fixed family of benchmark matrices:

* a1(k): four k x k tridiagonal blocks, A = tridiag(i, 2, i),
  B = C = tridiag(3+i, 1, 3+i), D = tridiag(i, -2, i); complex symmetric.
* a2: fixed 8x8 with B the identity and tridiagonal C, D couplings.
* a3: fixed 4x4 with a one-component quadratic numerical range.
* a4: fixed 5x5 with the asymmetric split n1 = 3, n2 = 2.
* a5(k): diagonal A = diag(2,...,-2,...) and D = diag(1+i,...,1-i,...) with
  single unit couplings B[0, 0] and C[k-1, k-1]; its spectral norm is
  sqrt((7 + sqrt(17)) / 2) ~ 2.3583 at every size, which anchors the tests.

Files are read either from a JSON document {"n", "split", "entries"} with
row-major [re, im] entries, or from Matrix Market array/coordinate files
(real, integer or complex field, general symmetry).
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .linalg import BlockMatrix, assemble, disassemble


class ParseError(ValueError):
    """A matrix file could not be parsed; carries path and line context."""

    def __init__(self, message: str, *, path=None, line: int | None = None):
        self.path = str(path) if path is not None else None
        self.line = line
        where = ""
        if self.path is not None:
            where = f"{self.path}: "
        if line is not None:
            where += f"line {line}: "
        super().__init__(where + message)


class SplitOutOfRange(ValueError):
    """The requested block split does not leave two nonempty subspaces."""


def _tridiagonal(dim: int, diag: complex, off: complex) -> np.ndarray:
    m = np.diag(np.full(dim, diag, dtype=complex))
    band = np.full(dim - 1, off, dtype=complex)
    m += np.diag(band, 1) + np.diag(band, -1)
    return m


def gen_a1(half_block_dim: int) -> BlockMatrix:
    """Tridiagonal-block benchmark of total dimension 2 * half_block_dim."""
    if half_block_dim < 2:
        raise ValueError("half_block_dim must be at least 2")
    k = half_block_dim
    b = _tridiagonal(k, 1.0, 3.0 + 1.0j)
    return BlockMatrix(
        A=_tridiagonal(k, 2.0, 1.0j),
        B=b,
        C=b.copy(),
        D=_tridiagonal(k, -2.0, 1.0j),
    )


def gen_a2() -> BlockMatrix:
    """Fixed 8x8 benchmark with identity coupling B."""
    return BlockMatrix(
        A=np.zeros((4, 4), dtype=complex),
        B=np.eye(4, dtype=complex),
        C=np.array(
            [[-2, -1, 0, 0], [-1, -2, -1, 0], [0, -1, -2, -1], [0, 0, -1, -2]],
            dtype=complex,
        ),
        D=np.array(
            [[1j, 5j, 0, 0], [-5j, 1j, 5j, 0], [0, -5j, 1j, 5j], [0, 0, -5j, 1j]],
            dtype=complex,
        ),
    )


def gen_a3() -> BlockMatrix:
    """Fixed 4x4 benchmark whose quadratic range has a single component."""
    return BlockMatrix(
        A=np.array([[0, 0], [0, 1]], dtype=complex),
        B=np.array([[0, 1], [2, 3]], dtype=complex),
        C=np.array([[0, -2], [-1, -3]], dtype=complex),
        D=np.array([[-1, 0], [0, 0]], dtype=complex),
    )


def gen_a4() -> BlockMatrix:
    """Fixed 5x5 benchmark with the asymmetric split n1 = 3, n2 = 2."""
    return BlockMatrix(
        A=np.array([[0, 0, 0], [0, 0, 1 + 1j], [0, 2j, 0]], dtype=complex),
        B=np.zeros((3, 2), dtype=complex),
        C=np.array([[0, 0, 0], [-1, 2, -2]], dtype=complex),
        D=np.array([[0, 0], [1j, 0]], dtype=complex),
    )


def gen_a5(half_block_dim: int) -> BlockMatrix:
    """Concentration benchmark with dimension-independent norm ~ 2.3583."""
    if half_block_dim < 2:
        raise ValueError("half_block_dim must be at least 2")
    if half_block_dim % 2 != 0:
        raise ValueError("half_block_dim must be even (the diagonals split in half)")
    k, h = half_block_dim, half_block_dim // 2
    B = np.zeros((k, k), dtype=complex)
    B[0, 0] = 1.0
    C = np.zeros((k, k), dtype=complex)
    C[k - 1, k - 1] = 1.0
    return BlockMatrix(
        A=np.diag(np.array([2.0] * h + [-2.0] * h, dtype=complex)),
        B=B,
        C=C,
        D=np.diag(np.array([1.0 + 1.0j] * h + [1.0 - 1.0j] * h)),
    )


GENERATORS = {"a1": gen_a1, "a2": gen_a2, "a3": gen_a3, "a4": gen_a4, "a5": gen_a5}
PARAMETRIC = {"a1", "a5"}  # take a half-block dimension
FIXED_DIMS = {"a2": 8, "a3": 4, "a4": 5}


def make_generator(name: str):
    """Generator callable mapping a *total* dimension to a BlockMatrix."""
    if name not in GENERATORS:
        raise ValueError(f"unknown generator {name!r}; choose from {sorted(GENERATORS)}")
    if name in PARAMETRIC:
        gen = GENERATORS[name]

        def build(dim: int) -> BlockMatrix:
            if dim % 2 != 0:
                raise ValueError(f"{name} needs an even total dimension, got {dim}")
            return gen(dim // 2)

        return build
    fixed = GENERATORS[name]()

    def build_fixed(dim: int) -> BlockMatrix:
        if dim != fixed.n:
            raise ValueError(f"{name} is fixed at dimension {fixed.n}, got {dim}")
        return fixed

    return build_fixed


def _check_split(split: int, n: int) -> int:
    if not 1 <= split <= n - 1:
        raise SplitOutOfRange(f"split {split} must be in [1, {n - 1}] for size {n}")
    return int(split)


def _load_json(path: Path) -> BlockMatrix:
    try:
        doc = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", path=path, line=exc.lineno) from exc
    for key in ("n", "split", "entries"):
        if key not in doc:
            raise ParseError(f"missing key {key!r}", path=path)
    n = int(doc["n"])
    entries = doc["entries"]
    if len(entries) != n * n:
        raise ParseError(
            f"expected {n * n} entries for n={n}, got {len(entries)}", path=path
        )
    flat = np.empty(n * n, dtype=complex)
    for i, item in enumerate(entries):
        try:
            re, im = item
            flat[i] = complex(float(re), float(im))
        except (TypeError, ValueError) as exc:
            raise ParseError(f"entry {i} is not a [re, im] pair: {item!r}", path=path) from exc
    return disassemble(flat.reshape(n, n), _check_split(int(doc["split"]), n))


def _mm_value(fields: list[str], field_kind: str, path: Path, lineno: int) -> complex:
    try:
        if field_kind == "complex":
            if len(fields) != 2:
                raise ValueError
            return complex(float(fields[0]), float(fields[1]))
        if len(fields) != 1:
            raise ValueError
        return complex(float(fields[0]), 0.0)
    except ValueError:
        raise ParseError(
            f"bad {field_kind} value {' '.join(fields)!r}", path=path, line=lineno
        ) from None


def _load_matrix_market(path: Path) -> np.ndarray:
    lines = path.read_text().splitlines()
    if not lines:
        raise ParseError("empty file", path=path, line=1)
    header = lines[0].split()
    if len(header) != 5 or header[0].lower() != "%%matrixmarket" or header[1] != "matrix":
        raise ParseError(f"not a Matrix Market header: {lines[0]!r}", path=path, line=1)
    layout, field_kind, symmetry = header[2], header[3], header[4]
    if layout not in ("array", "coordinate"):
        raise ParseError(f"unsupported layout {layout!r}", path=path, line=1)
    if field_kind not in ("real", "integer", "complex"):
        raise ParseError(f"unsupported field {field_kind!r}", path=path, line=1)
    if symmetry != "general":
        raise ParseError(f"unsupported symmetry {symmetry!r}", path=path, line=1)

    body = [
        (i + 1, line.strip())
        for i, line in enumerate(lines)
        if i > 0 and line.strip() and not line.lstrip().startswith("%")
    ]
    if not body:
        raise ParseError("missing size line", path=path, line=len(lines))
    lineno, size_line = body[0]
    sizes = size_line.split()
    want = 3 if layout == "coordinate" else 2
    if len(sizes) != want:
        raise ParseError(f"bad size line {size_line!r}", path=path, line=lineno)
    try:
        dims = [int(s) for s in sizes]
    except ValueError:
        raise ParseError(f"bad size line {size_line!r}", path=path, line=lineno) from None
    rows, cols = dims[0], dims[1]
    matrix = np.zeros((rows, cols), dtype=complex)

    if layout == "array":
        # column-major dense listing
        if len(body) - 1 != rows * cols:
            raise ParseError(
                f"expected {rows * cols} entries, found {len(body) - 1}", path=path, line=lineno
            )
        for offset, (ln, text) in enumerate(body[1:]):
            r, q = offset % rows, offset // rows
            matrix[r, q] = _mm_value(text.split(), field_kind, path, ln)
    else:
        nnz = dims[2]
        if len(body) - 1 != nnz:
            raise ParseError(
                f"expected {nnz} coordinate entries, found {len(body) - 1}",
                path=path,
                line=lineno,
            )
        for ln, text in body[1:]:
            fields = text.split()
            if len(fields) < 3:
                raise ParseError(f"bad coordinate entry {text!r}", path=path, line=ln)
            try:
                r, q = int(fields[0]), int(fields[1])
            except ValueError:
                raise ParseError(f"bad coordinate entry {text!r}", path=path, line=ln) from None
            if not (1 <= r <= rows and 1 <= q <= cols):
                raise ParseError(f"index ({r}, {q}) out of range", path=path, line=ln)
            matrix[r - 1, q - 1] = _mm_value(fields[2:], field_kind, path, ln)
    return matrix


def load_block_matrix(path, split_index: int | None = None) -> BlockMatrix:
    """Read a dense complex matrix from JSON or Matrix Market and split it.

    JSON files carry their own split; Matrix Market files require
    ``split_index``.  Raises :class:`ParseError` with file/line context on
    malformed input and :class:`SplitOutOfRange` for an unusable split.
    """
    p = Path(path)
    if not p.exists():
        raise ParseError("file does not exist", path=p)
    if p.suffix.lower() == ".json":
        return _load_json(p)
    matrix = _load_matrix_market(p)
    if matrix.shape[0] != matrix.shape[1]:
        raise ParseError(
            f"matrix must be square to be split, got {matrix.shape[0]}x{matrix.shape[1]}",
            path=p,
        )
    if split_index is None:
        raise ValueError("Matrix Market input needs an explicit split_index")
    return disassemble(matrix, _check_split(split_index, matrix.shape[0]))


def save_block_matrix(block: BlockMatrix, path) -> None:
    """Write the assembled matrix as the canonical JSON interchange document."""
    m = assemble(block)
    doc = {
        "n": block.n,
        "split": block.n1,
        "entries": [[float(z.real), float(z.imag)] for z in m.reshape(-1)],
    }
    Path(path).write_text(json.dumps(doc))
