"""JSON encoding of sequences, functionals, projections and measures.

Rationals travel as canonical strings ``"p/q"`` (``"p"`` for integers).
Decoders accept strings or JSON integers and reject floats and decimal
literals, so every value read back is exact.
"""

import json
import re
from fractions import Fraction
from pathlib import Path
from typing import Any

from cplanes.core_seq import ConvergentSeq, L1Functional, L1Vector, normalize
from cplanes.errors import MalformedInputError
from cplanes.hyperplane import HyperplaneClass, ProjectionSpec
from cplanes.ordinal_quotient import COmegaNFunc, FinMeasure, OrdinalPoint

RATIONAL_RE = re.compile(r"^-?\d+(?:/[1-9]\d*)?$")


def format_rational(value: Fraction) -> str:
    """Render a rational as ``"p/q"``, or ``"p"`` when it is an integer."""
    return str(value)


def parse_rational(raw: Any) -> Fraction:
    """Parse ``"p/q"``, ``"p"`` or a JSON integer.

    Raises:
        MalformedInputError: For floats, decimals and anything else.
    """
    if isinstance(raw, bool):
        raise MalformedInputError(f"Expected a rational, got boolean {raw!r}")
    if isinstance(raw, int):
        return Fraction(raw)
    if not isinstance(raw, str) or not RATIONAL_RE.match(raw.strip()):
        raise MalformedInputError(f"Expected a rational string 'p/q', got {raw!r}")
    return Fraction(raw.strip())


def _field(data: Any, name: str) -> Any:
    if not isinstance(data, dict):
        raise MalformedInputError(f"Expected a JSON object, got {type(data).__name__}")
    if name not in data:
        raise MalformedInputError(f"Missing required field: {name}")
    return data[name]


def _list(data: Any, name: str) -> list[Any]:
    value = _field(data, name)
    if not isinstance(value, list):
        raise MalformedInputError(f"Field '{name}' must be a list")
    return value


def _int(raw: Any, name: str) -> int:
    if isinstance(raw, bool) or not isinstance(raw, int):
        raise MalformedInputError(f"Field '{name}' must be an integer, got {raw!r}")
    return raw


def vector_to_dict(y: L1Vector | L1Functional) -> dict[str, Any]:
    """Encode the stored coefficients as ``{"coeffs": [...]}``."""
    return {"coeffs": [format_rational(c) for c in y.coeffs]}


def vector_from_dict(data: Any) -> L1Vector:
    """Decode ``{"coeffs": [...]}``; trailing zeros are dropped.

    Raises:
        MalformedInputError: If ``coeffs`` is missing or holds a non-rational.
    """
    return L1Vector(tuple(parse_rational(c) for c in _list(data, "coeffs")))


def functional_from_dict(data: Any, normalize_input: bool = False) -> L1Functional:
    """Decode f, optionally dividing by its l1 norm first.

    Raises:
        MalformedInputError: If the document is not a vector.
        NotNormalizedError: If the norm is not 1 and normalization is off.
        ZeroVectorError: If normalization is requested for the zero vector.
    """
    vector = vector_from_dict(data)
    if normalize_input:
        return normalize(vector)
    return L1Functional(vector)


def seq_to_dict(x: ConvergentSeq) -> dict[str, Any]:
    """Encode x as its canonical prefix and tail.

    Args:
        x: Eventually constant sequence.

    Returns:
        ``{"prefix": [...], "tail": "p/q"}`` with rationals as strings.
    """
    return {
        "prefix": [format_rational(v) for v in x.prefix],
        "tail": format_rational(x.tail),
    }


def seq_from_dict(data: Any) -> ConvergentSeq:
    """Decode ``{"prefix": [...], "tail": ...}``.

    Raises:
        MalformedInputError: If a field is missing or not exact.
    """
    prefix = tuple(parse_rational(v) for v in _list(data, "prefix"))
    return ConvergentSeq(prefix, parse_rational(_field(data, "tail")))


def projection_to_dict(spec: ProjectionSpec) -> dict[str, Any]:
    """Encode z and the norm; ``unique`` only when it is known."""
    data: dict[str, Any] = {
        "z": seq_to_dict(spec.z),
        "norm": format_rational(spec.norm),
    }
    if spec.unique is not None:
        data["unique"] = spec.unique
    return data


def class_to_str(hyperplane_class: HyperplaneClass) -> str:
    """Return the wire name, e.g. ``"dual_l1_only"``."""
    return hyperplane_class.value


def class_from_str(raw: Any) -> HyperplaneClass:
    """Parse a wire name back into a class.

    Raises:
        MalformedInputError: For unknown names.
    """
    try:
        return HyperplaneClass(raw)
    except ValueError as e:
        raise MalformedInputError(f"Unknown hyperplane class: {raw!r}") from e


def point_to_dict(point: OrdinalPoint) -> dict[str, int]:
    """Encode omega*k + j as ``{"block": k, "offset": j}``."""
    return {"block": point.block, "offset": point.offset}


def point_from_dict(data: Any) -> OrdinalPoint:
    """Decode an ordinal point.

    Raises:
        MalformedInputError: If block or offset is missing, not an integer
            or negative.
    """
    try:
        return OrdinalPoint(
            _int(_field(data, "block"), "block"),
            _int(_field(data, "offset"), "offset"),
        )
    except ValueError as e:
        if isinstance(e, MalformedInputError):
            raise
        raise MalformedInputError(str(e)) from e


def measure_to_dict(mu: FinMeasure) -> dict[str, Any]:
    """Encode mu as a list of ``[point, weight]`` atoms in point order."""
    return {
        "atoms": [[point_to_dict(p), format_rational(w)] for p, w in mu.atoms],
    }


def measure_from_dict(data: Any) -> FinMeasure:
    """Decode ``{"atoms": [[point, weight], ...]}``.

    Atoms at the same point are merged and zero weights dropped.

    Raises:
        MalformedInputError: If an atom is not a ``[point, weight]`` pair.
    """
    atoms = []
    for atom in _list(data, "atoms"):
        if not isinstance(atom, list) or len(atom) != 2:
            raise MalformedInputError(f"Atoms are [point, weight] pairs, got {atom!r}")
        atoms.append((point_from_dict(atom[0]), parse_rational(atom[1])))
    return FinMeasure.from_atoms(atoms)


def func_to_dict(g: COmegaNFunc) -> dict[str, Any]:
    """Encode g by its n blocks and the n + 1 anchor values."""
    return {
        "n": g.n,
        "blocks": [seq_to_dict(b) for b in g.blocks],
        "anchors": [format_rational(a) for a in g.anchors],
    }


def func_from_dict(data: Any) -> COmegaNFunc:
    """Decode a continuous function on [0, omega*n].

    ``anchors`` may be omitted, in which case the limit anchors follow from
    the blocks and the value at 0 is taken as ``first`` (default 0).
    """
    n = _int(_field(data, "n"), "n")
    blocks = [seq_from_dict(b) for b in _list(data, "blocks")]
    try:
        if len(blocks) != n:
            raise MalformedInputError(f"Expected {n} blocks, got {len(blocks)}")
        if "anchors" not in data:
            return COmegaNFunc.from_blocks(blocks, parse_rational(data.get("first", 0)))
        anchors = tuple(parse_rational(a) for a in _list(data, "anchors"))
        return COmegaNFunc(n=n, blocks=tuple(blocks), anchors=anchors)
    except ValueError as e:
        if isinstance(e, MalformedInputError):
            raise
        raise MalformedInputError(str(e)) from e


def load_json(path: Path) -> Any:
    """Read a JSON document.

    Raises:
        MalformedInputError: If the file is missing or not valid JSON.
    """
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except FileNotFoundError as e:
        raise MalformedInputError(f"Input file not found: {path}") from e
    except json.JSONDecodeError as e:
        raise MalformedInputError(f"Invalid JSON in {path}: {e}") from e


def dumps(document: Any) -> str:
    """Serialize a result deterministically."""
    return json.dumps(document, sort_keys=True, separators=(",", ":"))

