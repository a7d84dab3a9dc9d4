"""
Cores archive: b"TRCR" | version u32 | N u32 | N dense tensor blocks.
"""

import struct
from pathlib import Path
from typing import Union

from src.errors import FormatError
from src.ring.cores import TRCores
from src.tensor import DenseTensor
from src.tensor.io import read_dense_stream, write_dense_stream
from src.utils import get_logger

logger = get_logger(__name__)

CORES_MAGIC = b"TRCR"
CORES_VERSION = 1


def save_cores(cores: TRCores, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("wb") as stream:
        stream.write(CORES_MAGIC)
        stream.write(struct.pack("<II", CORES_VERSION, cores.order))
        for core in cores.cores:
            write_dense_stream(stream, DenseTensor(core))
    logger.info("Saved cores archive", path=str(path), ranks=cores.ranks, dims=cores.dims)
    return path


def load_cores(path: Union[str, Path]) -> TRCores:
    with Path(path).open("rb") as stream:
        header = stream.read(12)
        if len(header) != 12 or header[:4] != CORES_MAGIC:
            raise FormatError(f"{path} is not a cores archive")
        version, order = struct.unpack("<II", header[4:])
        if version != CORES_VERSION:
            raise FormatError(f"unsupported cores archive version {version}")
        cores = tuple(read_dense_stream(stream).data for _ in range(order))
        if stream.read(1):
            raise FormatError(f"trailing bytes after {order} cores in {path}")
    return TRCores(cores)


def is_cores_archive(path: Union[str, Path]) -> bool:
    with Path(path).open("rb") as stream:
        return stream.read(4) == CORES_MAGIC
