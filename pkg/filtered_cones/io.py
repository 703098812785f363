"""
JSON documents for complexes, maps and reassociation inputs, and JSON
rendering of reports.

Documents are validated by the pydantic models in ``config``; the algebraic
axioms (d∘d = 0, chain map, shift) are left to ``validate_complex`` and
``validate_map`` so invalid complexes can still be loaded and reported on.
Serialization is canonical: generators in declared order, boundary and
matrix keys sorted, infinities rendered as ``"inf"`` / ``"-inf"``.
"""

import dataclasses
import json
import logging
import math
from enum import Enum
from pathlib import Path
from typing import Any, Dict, Optional, Tuple, Union

import numpy as np
from pydantic import ValidationError as PydanticValidationError

from .config import ComplexDocument, ComplexRef, MapDocument, MapPart, ReassocDocument
from .exceptions import ParseError
from .models import (
    Barcode,
    CampaignReport,
    ConeInput,
    FilteredComplex,
    FilteredLinearMap,
    FilteredMap,
    InvariantProfile,
)

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


def _describe(error: PydanticValidationError) -> str:
    parts = []
    for item in error.errors():
        where = ".".join(str(p) for p in item["loc"])
        parts.append(f"{where}: {item['msg']}" if where else item["msg"])
    return "; ".join(parts)


def load_document(path: PathLike) -> Dict[str, Any]:
    """Read a JSON document; decode errors name the line and column."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ParseError(f"{path}: cannot read file: {e.strerror or e}") from e
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"{path}: line {e.lineno} column {e.colno}: {e.msg}") from e
    if not isinstance(data, dict):
        raise ParseError(f"{path}: expected a JSON object at the top level")
    return data


def _validated(model, data: Any, origin: str):
    try:
        return model.model_validate(data)
    except PydanticValidationError as e:
        raise ParseError(f"{origin}: {_describe(e)}") from e


def _resolve(ref: ComplexRef, base_dir: Optional[Path], origin: str) -> FilteredComplex:
    if isinstance(ref, str):
        path = Path(ref)
        if base_dir is not None and not path.is_absolute():
            path = base_dir / path
        return parse_complex(path)
    return complex_from_document(ref)


def complex_from_document(doc: ComplexDocument) -> FilteredComplex:
    return FilteredComplex.build(
        doc.name, [(g.id, g.filtration) for g in doc.generators], doc.boundary
    )


def parse_complex(source: Union[PathLike, Dict[str, Any]]) -> FilteredComplex:
    """Parse a complex from a path or an already-decoded document."""
    if isinstance(source, dict):
        return complex_from_document(_validated(ComplexDocument, source, "complex"))
    data = load_document(source)
    return complex_from_document(_validated(ComplexDocument, data, str(source)))


def _map_from_part(part: MapPart, source: FilteredComplex, target: FilteredComplex, origin: str) -> FilteredMap:
    for source_id, support in part.matrix.items():
        if source_id not in source.index:
            raise ParseError(f"{origin}: matrix given for unknown source generator '{source_id}'")
        for target_id in support:
            if target_id not in target.index:
                raise ParseError(f"{origin}: unknown target generator '{target_id}' in image of '{source_id}'")
    return FilteredMap.build(source, target, part.shift, part.matrix)


def parse_map(source: Union[PathLike, Dict[str, Any]], base_dir: Optional[PathLike] = None) -> FilteredMap:
    """
    Parse a map document. Source and target may be inline documents or paths,
    resolved relative to the map file.
    """
    if isinstance(source, dict):
        data, origin = source, "map"
        base = Path(base_dir) if base_dir is not None else None
    else:
        data, origin = load_document(source), str(source)
        base = Path(base_dir) if base_dir is not None else Path(source).parent
    doc = _validated(MapDocument, data, origin)
    A = _resolve(doc.source, base, origin)
    B = _resolve(doc.target, base, origin)
    return _map_from_part(doc, A, B, origin)


def parse_reassoc(
    source: Union[PathLike, Dict[str, Any]], base_dir: Optional[PathLike] = None
) -> Tuple[FilteredComplex, ConeInput, FilteredMap, float]:
    """
    Parse a reassociation document into (E, inner cone input, g, s_g). The
    ids of g's target are those of the inner cone: ``a/<F id>`` and G's ids.
    """
    from .cones import mapping_cone

    if isinstance(source, dict):
        data, origin = source, "reassoc"
        base = Path(base_dir) if base_dir is not None else None
    else:
        data, origin = load_document(source), str(source)
        base = Path(base_dir) if base_dir is not None else Path(source).parent
    doc = _validated(ReassocDocument, data, origin)
    E = _resolve(doc.E, base, origin)
    F = _resolve(doc.F, base, origin)
    G = _resolve(doc.G, base, origin)
    inner = ConeInput(_map_from_part(doc.f, F, G, f"{origin}: f"), doc.f.shift)
    K = mapping_cone(inner)
    g = _map_from_part(doc.g, E, K, f"{origin}: g")
    return E, inner, g, doc.g.shift


def _number(value: float) -> Union[int, float, str]:
    """Integral values print as ints; other finite values keep the shortest repr that parses back exactly."""
    value = float(value)
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    if math.isnan(value):
        return "nan"
    return int(value) if value.is_integer() else value


def serialize_complex(C: FilteredComplex) -> Dict[str, Any]:
    return {
        "name": C.name,
        "generators": [{"id": g.id, "filtration": _number(g.filtration)} for g in C.generators],
        "boundary": {k: sorted(v) for k, v in sorted(C.boundary.items())},
    }


def serialize_map(f: FilteredLinearMap) -> Dict[str, Any]:
    return {
        "source": serialize_complex(f.source),
        "target": serialize_complex(f.target),
        "shift": _number(f.shift),
        "matrix": {k: sorted(v) for k, v in sorted(f.matrix.items())},
    }


def serialize_barcode(bars: Barcode) -> list:
    return [[_number(b.birth), _number(b.death)] for b in bars.bars]


def serialize_profile(p: InvariantProfile) -> Dict[str, Any]:
    return {
        "sigma_plus": _number(p.sigma_plus),
        "sigma_minus": _number(p.sigma_minus),
        "rho": _number(p.rho),
        "beta": _number(p.beta),
    }


def to_jsonable(obj: Any) -> Any:
    """Recursively convert models and reports into JSON-ready values."""
    if isinstance(obj, Enum):
        return obj.value
    if isinstance(obj, (bool, str)) or obj is None:
        return obj
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return _number(obj)
    if isinstance(obj, int):
        return obj
    if isinstance(obj, FilteredComplex):
        return serialize_complex(obj)
    if isinstance(obj, FilteredLinearMap):
        return serialize_map(obj)
    if isinstance(obj, Barcode):
        return serialize_barcode(obj)
    if isinstance(obj, CampaignReport):
        return campaign_to_dict(obj)
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return {f.name: to_jsonable(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        items = sorted(obj) if isinstance(obj, (set, frozenset)) else obj
        return [to_jsonable(v) for v in items]
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    raise TypeError(f"cannot render {type(obj).__name__} as JSON")


def campaign_to_dict(report: CampaignReport) -> Dict[str, Any]:
    """Campaign report with its summary counts; child reports nest under ``children``."""
    return {
        "suite": report.suite,
        "seed": report.seed,
        "count": report.count,
        "tolerance": _number(report.tolerance),
        "status": report.status.value,
        "summary": {
            "instances": report.total_instances,
            "passed": report.passed,
            "failed": report.failed,
            "vacuous": report.vacuous,
            "errors": report.errors,
            "vacuous_checks": report.vacuous_checks,
            "success_rate": _number(report.success_rate),
            "worst_slack": None if report.worst_slack is None else _number(report.worst_slack),
        },
        "metrics": to_jsonable(report.metrics),
        "records": [to_jsonable(r) for r in report.records],
        "children": [campaign_to_dict(c) for c in report.children],
    }


def dumps(obj: Any) -> str:
    """Canonical JSON text: two-space indent, keys in construction order, trailing newline."""
    return json.dumps(to_jsonable(obj), indent=2, ensure_ascii=False) + "\n"


def write_json(obj: Any, destination: PathLike) -> None:
    """Write canonical JSON to a file, or to standard output for ``-``."""
    text = dumps(obj)
    if str(destination) == "-":
        import sys

        sys.stdout.write(text)
        return
    Path(destination).write_text(text, encoding="utf-8")
    logger.info(f"Wrote {destination}")
