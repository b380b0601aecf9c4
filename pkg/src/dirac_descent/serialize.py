"""JSON interchange for gamma sets (schema version ``"1"``).

Two encodings:

``exact-quarter-phase``
    each matrix is a list of ``[row, col, phase]`` triples, one per nonzero
    entry, the entry being ``i**phase``.  Only admissible when every entry
    lies in ``{0, +-1, +-i}``; round trips are lossless.
``complex-float``
    each matrix is a dense grid of ``[re, im]`` pairs.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .clifford import GammaSet, NumericGammaSet
from .exact import ExactMatrix

__all__ = ["SCHEMA_VERSION", "EXACT", "FLOAT", "DocumentError", "GammaSetDocument", "dumps", "loads", "load", "dump"]

SCHEMA_VERSION = "1"
EXACT = "exact-quarter-phase"
FLOAT = "complex-float"

_PHASE_PARTS = {0: (1, 0), 1: (0, 1), 2: (-1, 0), 3: (0, -1)}


class DocumentError(ValueError):
    """Malformed or inadmissible gamma-set document."""


def _exact_triples(m: ExactMatrix) -> list[list[int]]:
    if not m.entries_are_quarter_phases():
        raise DocumentError("exact encoding needs entries in {0, +-1, +-i}")
    out = []
    for i, row in enumerate(m.rows()):
        for j, x in enumerate(row):
            if x:
                out.append([i, j, x.quarter_phase()])
    return out


def _from_triples(order: int, triples) -> ExactMatrix:
    re = np.zeros((order, order), dtype=np.int64)
    im = np.zeros((order, order), dtype=np.int64)
    seen = set()
    for t in triples:
        if not (isinstance(t, (list, tuple)) and len(t) == 3 and all(isinstance(v, int) and not isinstance(v, bool) for v in t)):
            raise DocumentError(f"bad entry triple {t!r}")
        i, j, ph = t
        if not (0 <= i < order and 0 <= j < order):
            raise DocumentError(f"entry ({i}, {j}) outside a {order}x{order} matrix")
        if ph not in _PHASE_PARTS:
            raise DocumentError(f"phase {ph} not in 0..3")
        if (i, j) in seen:
            raise DocumentError(f"duplicate entry ({i}, {j})")
        seen.add((i, j))
        re[i, j], im[i, j] = _PHASE_PARTS[ph]
    return ExactMatrix(re, im)


@dataclass
class GammaSetDocument:
    dim: int
    order: int
    encoding: str
    matrices: list
    metadata: dict = field(default_factory=dict)
    schema_version: str = SCHEMA_VERSION

    @classmethod
    def from_gamma_set(cls, s: GammaSet | NumericGammaSet, construction: str = "", encoding: str | None = None):
        if encoding is None:
            exact_ok = isinstance(s, GammaSet) and all(m.entries_are_quarter_phases() for m in s)
            encoding = EXACT if exact_ok else FLOAT
        if encoding == EXACT:
            if not isinstance(s, GammaSet):
                raise DocumentError("numeric sets cannot use the exact encoding")
            mats = [_exact_triples(m) for m in s]
        elif encoding == FLOAT:
            arrs = s.matrices if isinstance(s, NumericGammaSet) else [m.to_complex() for m in s]
            mats = [[[[float(z.real), float(z.imag)] for z in row] for row in np.asarray(a)] for a in arrs]
        else:
            raise DocumentError(f"unknown encoding {encoding!r}")
        meta = {"label": s.label, "construction": construction}
        return cls(s.dim, s.order, encoding, mats, meta)

    def to_gamma_set(self) -> GammaSet | NumericGammaSet:
        label = self.metadata.get("label", "")
        if self.encoding == EXACT:
            return GammaSet(self.dim, tuple(_from_triples(self.order, t) for t in self.matrices), label)
        arr = np.array(self.matrices, dtype=np.float64)
        if arr.shape != (self.dim, self.order, self.order, 2):
            raise DocumentError(f"float matrices have shape {arr.shape}")
        return NumericGammaSet(self.dim, arr[..., 0] + 1j * arr[..., 1], label)

    def to_dict(self) -> dict:
        mats = self.matrices
        if self.encoding == EXACT:
            mats = [sorted(map(list, m)) for m in mats]
        return {
            "schema_version": self.schema_version,
            "dim": self.dim,
            "order": self.order,
            "encoding": self.encoding,
            "matrices": mats,
            "metadata": dict(self.metadata),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "GammaSetDocument":
        if not isinstance(data, dict):
            raise DocumentError("document must be a JSON object")
        missing = {"schema_version", "dim", "order", "encoding", "matrices"} - data.keys()
        if missing:
            raise DocumentError(f"missing fields: {sorted(missing)}")
        if data["schema_version"] != SCHEMA_VERSION:
            raise DocumentError(f"unsupported schema version {data['schema_version']!r}")
        dim, order = data["dim"], data["order"]
        if not (isinstance(dim, int) and isinstance(order, int)) or dim < 2:
            raise DocumentError("dim and order must be integers, dim >= 2")
        if order != 2 ** (dim // 2):
            raise DocumentError(f"order {order} does not match 2^floor({dim}/2)")
        if data["encoding"] not in (EXACT, FLOAT):
            raise DocumentError(f"unknown encoding {data['encoding']!r}")
        if not isinstance(data["matrices"], list) or len(data["matrices"]) != dim:
            raise DocumentError(f"expected {dim} matrices")
        return cls(dim, order, data["encoding"], data["matrices"], dict(data.get("metadata", {})))


def dumps(s: GammaSet | NumericGammaSet, construction: str = "", encoding: str | None = None) -> str:
    doc = GammaSetDocument.from_gamma_set(s, construction, encoding)
    return json.dumps(doc.to_dict(), indent=1, sort_keys=True)


def loads(text: str) -> GammaSet | NumericGammaSet:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"invalid JSON: {exc}") from exc
    return GammaSetDocument.from_dict(data).to_gamma_set()


def dump(s, path, construction: str = "", encoding: str | None = None) -> None:
    Path(path).write_text(dumps(s, construction, encoding) + "\n", encoding="utf-8")


def load(path) -> GammaSet | NumericGammaSet:
    return loads(Path(path).read_text(encoding="utf-8"))
