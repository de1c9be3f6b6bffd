"""
Format binaire des instantanés.

En-tête de 24 octets little-endian: "MKDV", version u32, points u32, 4 octets
de bourrage, longueur f64. Puis, par instantané, ``points + 1`` float64:
l'instant suivi des valeurs.
"""

import logging
import os
import struct
from typing import List

import numpy as np

from ..exceptions import ConfigurationError
from ..spectral import Field, Grid

logger = logging.getLogger(__name__)

MAGIC = b"MKDV"
VERSION = 1
HEADER = struct.Struct("<4sII4xd")


def write_snapshots(path: str, snapshots) -> int:
    """
    Écrit les instantanés (une même grille) dans ``path``.

    Returns:
        Nombre d'instantanés écrits
    """
    snapshots = list(snapshots)
    if not snapshots:
        raise ConfigurationError("No snapshots to write")
    grid = snapshots[0].grid
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    with open(path, "wb") as f:
        f.write(HEADER.pack(MAGIC, VERSION, grid.points, grid.length))
        for snap in snapshots:
            if snap.grid != grid:
                raise ConfigurationError("All snapshots must share one grid")
            record = np.empty(grid.points + 1, dtype="<f8")
            record[0] = snap.time
            record[1:] = snap.values
            f.write(record.tobytes())
    logger.info(f"Wrote {len(snapshots)} snapshots to {path}")
    return len(snapshots)


def read_snapshots(path: str) -> List[Field]:
    """
    Relit un fichier écrit par ``write_snapshots``.

    Raises:
        ConfigurationError: Si l'en-tête ou la taille du fichier sont invalides
    """
    with open(path, "rb") as f:
        raw = f.read()
    if len(raw) < HEADER.size:
        raise ConfigurationError(f"{path} is too short for a snapshot header")
    magic, version, points, length = HEADER.unpack_from(raw, 0)
    if magic != MAGIC:
        raise ConfigurationError(f"{path} is not a snapshot file (magic {magic!r})")
    if version != VERSION:
        raise ConfigurationError(f"Unsupported snapshot version {version}")
    body = np.frombuffer(raw, dtype="<f8", offset=HEADER.size)
    if body.size % (points + 1) != 0:
        raise ConfigurationError(f"{path} has a truncated snapshot record")
    grid = Grid(length=length, points=points)
    records = body.reshape(-1, points + 1)
    return [Field(grid, rec[1:], float(rec[0])) for rec in records]
