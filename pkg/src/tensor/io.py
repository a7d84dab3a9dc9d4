"""
Tensor file formats.

Dense binary layout (all little-endian):
    b"DTEN" | version u32 | order u32 | dims u64 * order | kind u32 | payload

`kind` is 0 for float64 and 1 for complex128; the payload is the entries in
little-endian linearized order.

Sparse text layout:
    order I_1 ... I_N nnz
    i_1 ... i_N value        (one line per entry, 1-based)
"""

import struct
from pathlib import Path
from typing import BinaryIO, Union

import numpy as np

from src.errors import FormatError
from src.tensor.dense import DenseTensor
from src.tensor.sparse import SparseTensor
from src.utils import get_logger

logger = get_logger(__name__)

DENSE_MAGIC = b"DTEN"
DENSE_VERSION = 1
SCALAR_KINDS = {0: np.dtype("<f8"), 1: np.dtype("<c16")}


def write_dense_stream(stream: BinaryIO, tensor: DenseTensor) -> None:
    """Write one dense tensor block to an open binary stream."""
    kind = 1 if tensor.is_complex else 0
    stream.write(DENSE_MAGIC)
    stream.write(struct.pack("<II", DENSE_VERSION, tensor.order))
    stream.write(struct.pack(f"<{tensor.order}Q", *tensor.shape))
    stream.write(struct.pack("<I", kind))
    stream.write(tensor.flat().astype(SCALAR_KINDS[kind]).tobytes())


def _read_exact(stream: BinaryIO, size: int) -> bytes:
    chunk = stream.read(size)
    if len(chunk) != size:
        raise FormatError(f"unexpected end of file: wanted {size} bytes, got {len(chunk)}")
    return chunk


def read_dense_stream(stream: BinaryIO) -> DenseTensor:
    """Read one dense tensor block from an open binary stream."""
    magic = _read_exact(stream, 4)
    if magic != DENSE_MAGIC:
        raise FormatError(f"bad magic {magic!r}, expected {DENSE_MAGIC!r}")
    version, order = struct.unpack("<II", _read_exact(stream, 8))
    if version != DENSE_VERSION:
        raise FormatError(f"unsupported dense tensor version {version}")
    if order < 1:
        raise FormatError("tensor order must be >= 1")
    dims = struct.unpack(f"<{order}Q", _read_exact(stream, 8 * order))
    (kind,) = struct.unpack("<I", _read_exact(stream, 4))
    if kind not in SCALAR_KINDS:
        raise FormatError(f"unknown scalar kind tag {kind}")
    dtype = SCALAR_KINDS[kind]
    count = int(np.prod(dims))
    payload = np.frombuffer(_read_exact(stream, count * dtype.itemsize), dtype=dtype)
    return DenseTensor.from_flat(payload, dims)


def save_dense(tensor: DenseTensor, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("wb") as stream:
        write_dense_stream(stream, tensor)
    logger.debug("Saved dense tensor", path=str(path), shape=tensor.shape)
    return path


def load_dense(path: Union[str, Path]) -> DenseTensor:
    with Path(path).open("rb") as stream:
        tensor = read_dense_stream(stream)
        if stream.read(1):
            raise FormatError(f"trailing bytes after tensor payload in {path}")
    return tensor


def _format_value(value: complex) -> str:
    if isinstance(value, complex) or np.iscomplexobj(value):
        return repr(complex(value))
    return repr(float(value))


def save_sparse(tensor: SparseTensor, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    lines = [" ".join(str(v) for v in (tensor.order, *tensor.shape, tensor.nnz))]
    for sub, value in zip(tensor.subs, tensor.vals):
        lines.append(" ".join([*(str(int(i) + 1) for i in sub), _format_value(value)]))
    path.write_text("\n".join(lines) + "\n")
    logger.debug("Saved sparse tensor", path=str(path), nnz=tensor.nnz)
    return path


def _parse_value(token: str) -> complex:
    return complex(token) if "j" in token else float(token)


def load_sparse(path: Union[str, Path]) -> SparseTensor:
    rows = [line.split() for line in Path(path).read_text().splitlines() if line.strip()]
    if not rows:
        raise FormatError(f"empty sparse tensor file {path}")
    try:
        header = [int(v) for v in rows[0]]
    except ValueError as exc:
        raise FormatError(f"bad sparse header in {path}: {rows[0]}") from exc
    order = header[0]
    if len(header) != order + 2:
        raise FormatError(f"header must list order, {order} dims and nnz")
    dims, nnz = header[1:-1], header[-1]
    if len(rows) - 1 != nnz:
        raise FormatError(f"header announces {nnz} entries, found {len(rows) - 1}")

    entries = []
    for row in rows[1:]:
        if len(row) != order + 1:
            raise FormatError(f"entry line {row} does not have {order} indices and a value")
        try:
            entries.append(([int(i) for i in row[:order]], _parse_value(row[order])))
        except ValueError as exc:
            raise FormatError(f"cannot parse entry line {row}") from exc
    return SparseTensor.from_entries(dims, entries)


def load_tensor(path: Union[str, Path]) -> Union[DenseTensor, SparseTensor]:
    """Load either format, deciding by the dense magic bytes."""
    path = Path(path)
    with path.open("rb") as stream:
        head = stream.read(4)
    if head == DENSE_MAGIC:
        return load_dense(path)
    return load_sparse(path)


def save_tensor(tensor: Union[DenseTensor, SparseTensor], path: Union[str, Path]) -> Path:
    if isinstance(tensor, SparseTensor):
        return save_sparse(tensor, path)
    return save_dense(tensor, path)
