"""Mesh export: triangulated parameter grid in ASCII OBJ records.

The writer emits ``v x y z`` vertex lines and 1-indexed ``f i j k``
triangle lines; a singular-curve polyline can be written alongside as
CSV for plotting.
"""

from __future__ import annotations

import io
from typing import Tuple

import numpy as np

from .errors import FrontlabError
from .frontal import FrontalSurface


def mesh_obj(F: FrontalSurface, grid: Tuple[int, int]) -> str:
    nu, nv = grid
    if nu < 2 or nv < 2:
        raise FrontlabError(f"mesh grid must be at least 2x2, got {nu}x{nv}")
    (ulo, uhi), (vlo, vhi) = F.spec.domain
    us = np.linspace(ulo, uhi, nu)
    vs = np.linspace(vlo, vhi, nv)
    buf = io.StringIO()
    buf.write(f"# frontlab mesh {nu}x{nv}\n")
    for i, u in enumerate(us):
        for j, v in enumerate(vs):
            fj = F.f_jets((float(u), float(v)), 0)
            x, y, z = (c.value for c in fj)
            buf.write(f"v {x:.12g} {y:.12g} {z:.12g}\n")

    def vid(i, j):
        return i * nv + j + 1

    for i in range(nu - 1):
        for j in range(nv - 1):
            a, b, c, d = vid(i, j), vid(i + 1, j), vid(i + 1, j + 1), vid(i, j + 1)
            buf.write(f"f {a} {b} {c}\n")
            buf.write(f"f {a} {c} {d}\n")
    return buf.getvalue()


def write_mesh(F: FrontalSurface, grid: Tuple[int, int], path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(mesh_obj(F, grid))
