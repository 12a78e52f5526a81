"""TSPLIB reading, writing and integer cost matrices.

Only the symmetric subset used by the benchmark suite is supported:
``EUC_2D``, ``CEIL_2D`` and ``EXPLICIT`` weights given as a ``FULL_MATRIX``.
Every other edge weight type is rejected instead of being approximated.

City indices are 1-based in files and 0-based everywhere else in the
package; this module (and the CLI) are the only places that convert.
"""

from __future__ import annotations

import enum
import re
import warnings
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

import numpy as np

__all__ = [
    "BUNDLED_INSTANCES",
    "EdgeWeightKind",
    "TsplibError",
    "TsplibWarning",
    "TspInstance",
    "build_cost_matrix",
    "format_tsplib",
    "load_instance",
    "parse_tsplib",
]

#: Benchmarks shipped with the package, in the order of the experiments.
BUNDLED_INSTANCES = (
    "eil51", "berlin52", "st70", "eil76", "rat99",
    "kroB100", "kroA100", "rd100", "eil101", "lin105",
    "ch130", "ch150", "d198", "kroA200",
)


class EdgeWeightKind(str, enum.Enum):
    EUC_2D = "EUC_2D"
    CEIL_2D = "CEIL_2D"
    EXPLICIT_FULL_MATRIX = "EXPLICIT_FULL_MATRIX"

    @property
    def has_coords(self) -> bool:
        return self is not EdgeWeightKind.EXPLICIT_FULL_MATRIX


class TsplibError(ValueError):
    """Malformed or unsupported TSPLIB input."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(message if line is None else f"line {line}: {message}")


class TsplibWarning(UserWarning):
    pass


@dataclass(frozen=True, eq=False)
class TspInstance:
    """A parsed problem: either coordinates or an explicit weight table."""

    name: str
    dimension: int
    edge_weight_kind: EdgeWeightKind
    coords: np.ndarray | None = None
    explicit_weights: np.ndarray | None = None
    comment: str = ""

    def __post_init__(self) -> None:
        if self.dimension < 3:
            raise TsplibError(f"dimension must be at least 3, got {self.dimension}")
        if self.edge_weight_kind.has_coords:
            if self.coords is None or self.explicit_weights is not None:
                raise TsplibError(f"{self.edge_weight_kind.value} needs coordinates only")
            if self.coords.shape != (self.dimension, 2):
                raise TsplibError(
                    f"expected {self.dimension} coordinate rows, got {self.coords.shape[0]}")
        else:
            if self.explicit_weights is None or self.coords is not None:
                raise TsplibError("EXPLICIT_FULL_MATRIX needs a weight table only")
            if self.explicit_weights.shape != (self.dimension, self.dimension):
                raise TsplibError(
                    f"expected a {self.dimension}x{self.dimension} weight table, "
                    f"got {self.explicit_weights.shape}")

    @property
    def n(self) -> int:
        return self.dimension


_KEYWORD = re.compile(r"^\s*([A-Z_][A-Z0-9_]*)\s*(?::\s*(.*?))?\s*$")
_HEADER_KEYS = {"NAME", "TYPE", "COMMENT", "DIMENSION", "EDGE_WEIGHT_TYPE",
                "EDGE_WEIGHT_FORMAT", "NODE_COORD_TYPE"}
_SECTIONS = {"NODE_COORD_SECTION", "EDGE_WEIGHT_SECTION"}


def parse_tsplib(text: str) -> TspInstance:
    """Parse the text of a ``.tsp`` file.

    Unknown keywords (and the data of unknown sections) are skipped with a
    :class:`TsplibWarning`. Errors carry the offending 1-based line number.
    """
    header: dict[str, str] = {}
    header_line: dict[str, int] = {}
    coord_rows: list[tuple[int, list[str]]] = []
    weight_tokens: list[tuple[int, str]] = []
    section: str | None = None
    section_line = 0
    last_line = 0

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        last_line = lineno
        if not line:
            continue
        if line == "EOF":
            break
        match = _KEYWORD.match(line)
        if match and not line[0].isdigit():
            key, value = match.group(1), match.group(2)
            if key in _SECTIONS:
                section, section_line = key, lineno
                continue
            if key.endswith("_SECTION"):
                warnings.warn(f"line {lineno}: skipping unsupported section {key}",
                              TsplibWarning, stacklevel=2)
                section, section_line = "SKIP", lineno
                continue
            if value is None:
                raise TsplibError(f"malformed header line {line!r}", lineno)
            section = None
            if key in _HEADER_KEYS:
                header[key] = value
                header_line[key] = lineno
            else:
                warnings.warn(f"line {lineno}: ignoring unknown keyword {key}",
                              TsplibWarning, stacklevel=2)
            continue
        if section == "NODE_COORD_SECTION":
            coord_rows.append((lineno, line.split()))
        elif section == "EDGE_WEIGHT_SECTION":
            weight_tokens.extend((lineno, tok) for tok in line.split())
        elif section == "SKIP":
            continue
        else:
            raise TsplibError(f"unexpected data outside a section: {line!r}", lineno)

    for key in ("DIMENSION", "EDGE_WEIGHT_TYPE"):
        if key not in header:
            raise TsplibError(f"missing {key} header")
    if header.get("TYPE", "TSP").split()[0] != "TSP":
        raise TsplibError(f"unsupported problem TYPE {header['TYPE']}", header_line["TYPE"])
    try:
        dimension = int(header["DIMENSION"])
    except ValueError:
        raise TsplibError(f"DIMENSION is not an integer: {header['DIMENSION']!r}",
                          header_line["DIMENSION"]) from None
    name = header.get("NAME", "unnamed")

    weight_type = header["EDGE_WEIGHT_TYPE"]
    if weight_type in ("EUC_2D", "CEIL_2D"):
        kind = EdgeWeightKind(weight_type)
        coords = _read_coords(coord_rows, dimension, section_line or last_line)
        return TspInstance(name, dimension, kind, coords=coords,
                           comment=header.get("COMMENT", ""))
    if weight_type == "EXPLICIT":
        fmt = header.get("EDGE_WEIGHT_FORMAT")
        if fmt != "FULL_MATRIX":
            raise TsplibError(f"unsupported EDGE_WEIGHT_FORMAT {fmt}",
                              header_line.get("EDGE_WEIGHT_FORMAT"))
        weights = _read_full_matrix(weight_tokens, dimension, last_line)
        return TspInstance(name, dimension, EdgeWeightKind.EXPLICIT_FULL_MATRIX,
                           explicit_weights=weights, comment=header.get("COMMENT", ""))
    raise TsplibError(f"unsupported EDGE_WEIGHT_TYPE {weight_type}",
                      header_line["EDGE_WEIGHT_TYPE"])


def _read_coords(rows: list[tuple[int, list[str]]], dimension: int,
                 end_line: int) -> np.ndarray:
    coords = np.full((dimension, 2), np.nan)
    seen = np.zeros(dimension, dtype=bool)
    for lineno, parts in rows:
        if len(parts) != 3:
            raise TsplibError("coordinate rows need exactly 'id x y'", lineno)
        try:
            node = int(parts[0])
            x, y = float(parts[1]), float(parts[2])
        except ValueError:
            raise TsplibError(f"bad coordinate row {' '.join(parts)!r}", lineno) from None
        if not 1 <= node <= dimension:
            raise TsplibError(f"node {node} outside 1..{dimension}", lineno)
        if seen[node - 1]:
            raise TsplibError(f"node {node} listed twice", lineno)
        seen[node - 1] = True
        coords[node - 1] = (x, y)
    if len(rows) != dimension:
        line = rows[-1][0] if rows else end_line
        raise TsplibError(f"DIMENSION is {dimension} but {len(rows)} coordinate rows found",
                          line)
    return coords


def _read_full_matrix(tokens: list[tuple[int, str]], dimension: int,
                      end_line: int) -> np.ndarray:
    if len(tokens) != dimension * dimension:
        line = tokens[-1][0] if tokens else end_line
        raise TsplibError(
            f"FULL_MATRIX of order {dimension} needs {dimension * dimension} "
            f"weights, found {len(tokens)}", line)
    values = []
    for lineno, tok in tokens:
        try:
            values.append(int(tok))
        except ValueError:
            raise TsplibError(f"weight {tok!r} is not an integer", lineno) from None
    return np.array(values, dtype=np.int64).reshape(dimension, dimension)


def format_tsplib(instance: TspInstance) -> str:
    """Serialize an instance back to TSPLIB text (inverse of :func:`parse_tsplib`)."""
    lines = [f"NAME : {instance.name}", "TYPE : TSP"]
    if instance.comment:
        lines.append(f"COMMENT : {instance.comment}")
    lines.append(f"DIMENSION : {instance.dimension}")
    if instance.edge_weight_kind.has_coords:
        lines.append(f"EDGE_WEIGHT_TYPE : {instance.edge_weight_kind.value}")
        lines.append("NODE_COORD_SECTION")
        for i, (x, y) in enumerate(instance.coords, start=1):
            lines.append(f"{i} {float(x)!r} {float(y)!r}")
    else:
        lines += ["EDGE_WEIGHT_TYPE : EXPLICIT", "EDGE_WEIGHT_FORMAT : FULL_MATRIX",
                  "EDGE_WEIGHT_SECTION"]
        lines += [" ".join(str(int(w)) for w in row) for row in instance.explicit_weights]
    lines.append("EOF")
    return "\n".join(lines) + "\n"


def build_cost_matrix(instance: TspInstance) -> np.ndarray:
    """Dense symmetric ``int64`` cost matrix with a zero diagonal.

    ``EUC_2D`` uses TSPLIB's nint, ``floor(d + 0.5)``; ``CEIL_2D`` rounds up.
    """
    kind = instance.edge_weight_kind
    if kind.has_coords:
        diff = instance.coords[:, None, :] - instance.coords[None, :, :]
        dist = np.sqrt((diff ** 2).sum(axis=-1))
        if kind is EdgeWeightKind.EUC_2D:
            costs = np.floor(dist + 0.5)
        else:
            costs = np.ceil(dist)
        return costs.astype(np.int64)

    costs = np.array(instance.explicit_weights, dtype=np.int64)
    if (costs < 0).any():
        i, j = map(int, np.argwhere(costs < 0)[0])
        raise ValueError(f"negative weight {costs[i, j]} between cities {i + 1} and {j + 1}")
    if not np.array_equal(costs, costs.T):
        i, j = map(int, np.argwhere(costs != costs.T)[0])
        raise ValueError(f"weights are not symmetric between cities {i + 1} and {j + 1}")
    if np.diagonal(costs).any():
        raise ValueError("weight table must have a zero diagonal")
    return costs


def load_instance(source: str | Path) -> TspInstance:
    """Load a ``.tsp`` file, or one of :data:`BUNDLED_INSTANCES` by name."""
    path = Path(source)
    if path.suffix != ".tsp" and not path.exists():
        wanted = str(source).lower()
        for name in BUNDLED_INSTANCES:
            if name.lower() == wanted:
                ref = resources.files("nodeshift") / "data" / "tsplib" / f"{name}.tsp"
                return parse_tsplib(ref.read_text(encoding="ascii"))
        raise FileNotFoundError(f"{source}: no such file or bundled instance")
    return parse_tsplib(path.read_text(encoding="utf-8"))
