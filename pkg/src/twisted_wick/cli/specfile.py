"""Versioned JSON spec files for twist systems.

Format (twisted-wick-spec/1):

    {
      "format": "twisted-wick-spec/1",
      "dim": 2,
      "parameter": "q",            # or null when no entry mentions q
      "preset": "qdeform",         # optional label / shortcut
      "max_degree": 4,             # optional default n_max
      "B":      [[i, j, k, l, "coefficient"], ...],
      "Btilde": [[i, j, k, l, "coefficient"], ...],
      "C":      [[i, j, k, l, "coefficient"], ...]
    }

Coefficients are strings in the scalar grammar (integers are accepted too).
When "preset" is given and all three tensor lists are missing, the preset is
built at "dim"; otherwise the lists define the system and "preset" is a label.
"""

import hashlib
import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, NoReturn, TypeGuard

from twisted_wick.exceptions import (
    CoefficientSyntaxError,
    SpecFileError,
    TwistDefinitionError,
    UnknownPresetError,
)
from twisted_wick.scalar import Scalar, format_scalar, parse_scalar
from twisted_wick.twist import (
    PRESETS,
    TENSOR_NAMES,
    TwistSystem,
    builtin_preset,
    make_twist_system,
)

logger = logging.getLogger(__name__)

SPEC_FORMAT = "twisted-wick-spec/1"
ALLOWED_KEYS = frozenset(
    {"format", "dim", "parameter", "preset", "max_degree", *TENSOR_NAMES}
)

Entry = tuple[int, int, int, int, Scalar]


@dataclass
class SpecFile:
    """Parsed spec file.

    Attributes:
        dim: 차원 d
        parameter: "q" (기호 파라미터 사용) 또는 None
        entries: 텐서 이름 → (i, j, k, l, 계수) 목록
        preset: 프리셋 이름 (선택)
        max_degree: 기본 n_max (선택)
    """

    dim: int
    parameter: str | None = None
    entries: dict[str, list[Entry]] = field(default_factory=dict)
    preset: str | None = None
    max_degree: int | None = None

    def to_twist_system(self) -> TwistSystem:
        return make_twist_system(
            self.dim,
            self.entries.get("B", []),
            self.entries.get("Btilde", []),
            self.entries.get("C", []),
            name=self.preset or "",
        )

    @classmethod
    def from_twist_system(
        cls,
        ts: TwistSystem,
        preset: str | None = None,
        max_degree: int | None = None,
    ) -> "SpecFile":
        entries = {label: list(ts.tensor(label).entries()) for label in TENSOR_NAMES}
        return cls(
            dim=ts.dim,
            parameter="q" if ts.uses_parameter else None,
            entries=entries,
            preset=preset,
            max_degree=max_degree,
        )


def _locate(text: str, needle: str) -> tuple[int, int, int]:
    """(position, line, column) of the first occurrence of needle, else 1:1."""
    position = text.find(needle)
    if position < 0:
        return 0, 1, 1
    line = text.count("\n", 0, position) + 1
    column = position - (text.rfind("\n", 0, position) + 1) + 1
    return position, line, column


def _error(text: str, message: str, needle: str, entry: str | None = None) -> NoReturn:
    position, line, column = _locate(text, needle)
    raise SpecFileError(
        f"{message} (line {line}, column {column})",
        text=text,
        position=position,
        line=line,
        column=column,
        entry=entry,
    )


def _is_int(value: Any) -> TypeGuard[int]:
    return isinstance(value, int) and not isinstance(value, bool)


def _parse_coefficient(raw: Any, entry: str) -> Scalar:
    if _is_int(raw):
        return Scalar(raw)
    if not isinstance(raw, str):
        raise SpecFileError(
            f"{entry}: coefficient must be a string, got {raw!r}", entry=entry
        )
    try:
        return parse_scalar(raw)
    except CoefficientSyntaxError as e:
        raise SpecFileError(
            f"{entry}: {e}",
            text=raw,
            position=e.position,
            line=e.line,
            column=e.column,
            entry=entry,
        ) from e


def _parse_entries(label: str, raw: Any, dim: int) -> list[Entry]:
    if not isinstance(raw, list):
        raise SpecFileError(f"{label} must be a list of entries", entry=label)
    entries: list[Entry] = []
    for position, item in enumerate(raw):
        entry = f"{label}[{position}]"
        if not isinstance(item, list) or len(item) != 5:
            raise SpecFileError(
                f"{entry}: expected [i, j, k, l, coefficient], got {item!r}",
                entry=entry,
            )
        indices = item[:4]
        if not all(_is_int(x) and 1 <= x <= dim for x in indices):
            raise SpecFileError(
                f"{entry}: indices {indices} must be integers in 1..{dim}",
                entry=entry,
            )
        i, j, k, l = indices
        entries.append((i, j, k, l, _parse_coefficient(item[4], entry)))
    return entries


def parse_spec(text: str) -> SpecFile:
    """Parse and validate spec-file text.

    Args:
        text: JSON 문서

    Returns:
        SpecFile whose to_twist_system() succeeds

    Raises:
        SpecFileError: JSON 구문 오류 (line/column), 알 수 없는 키,
            잘못된 엔트리 (entry 식별자 포함)
    """
    try:
        document = json.loads(text)
    except json.JSONDecodeError as e:
        raise SpecFileError(
            f"invalid JSON: {e.msg} (line {e.lineno}, column {e.colno})",
            text=text,
            position=e.pos,
            line=e.lineno,
            column=e.colno,
        ) from e
    if not isinstance(document, dict):
        raise SpecFileError("spec file must be a JSON object", text=text)

    for key in sorted(document):
        if key not in ALLOWED_KEYS:
            _error(text, f"unknown key {key!r}", f'"{key}"', entry=key)
    if document.get("format") != SPEC_FORMAT:
        _error(
            text,
            f"format must be {SPEC_FORMAT!r}, got {document.get('format')!r}",
            '"format"',
            entry="format",
        )
    dim = document.get("dim")
    if not _is_int(dim) or dim < 1:
        _error(text, f"dim must be a positive integer, got {dim!r}", '"dim"', "dim")
    parameter = document.get("parameter")
    if parameter not in (None, "q"):
        _error(
            text, f'parameter must be "q" or null, got {parameter!r}', '"parameter"'
        )
    max_degree = document.get("max_degree")
    if max_degree is not None and (not _is_int(max_degree) or max_degree < 0):
        _error(text, f"max_degree must be >= 0, got {max_degree!r}", '"max_degree"')
    preset = document.get("preset")
    if preset is not None and not isinstance(preset, str):
        _error(text, f"preset must be a string, got {preset!r}", '"preset"')

    spec = SpecFile(dim=dim, parameter=parameter, preset=preset, max_degree=max_degree)
    if preset is not None and not any(label in document for label in TENSOR_NAMES):
        try:
            ts = builtin_preset(preset, dim)
        except UnknownPresetError as e:
            _error(text, str(e), '"preset"', entry="preset")
        spec.entries = SpecFile.from_twist_system(ts).entries
    else:
        for label in TENSOR_NAMES:
            spec.entries[label] = _parse_entries(label, document.get(label, []), dim)

    if parameter is None:
        for label, entries in spec.entries.items():
            for position, (*_, value) in enumerate(entries):
                if value.uses_parameter:
                    raise SpecFileError(
                        f"{label}[{position}] uses q but parameter is null",
                        entry=f"{label}[{position}]",
                    )
    try:
        spec.to_twist_system()
    except TwistDefinitionError as e:
        entry = getattr(e, "entry", None)
        label = f"{e.tensor}{list(entry)}" if entry else e.tensor
        raise SpecFileError(str(e), text=text, entry=label) from e
    return spec


def load_spec(path: str | Path) -> SpecFile:
    """Read and parse a spec file.

    Raises:
        SpecFileError: 파일을 읽을 수 없거나 형식 오류
    """
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise SpecFileError(f"cannot read spec file {path}: {e}") from e
    spec = parse_spec(text)
    logger.debug(f"loaded spec {path}: d={spec.dim}, preset={spec.preset}")
    return spec


def _coefficient_text(value: Scalar, entry: str) -> str:
    if not value.is_laurent:
        raise SpecFileError(
            f"{entry}: coefficient {value} is not a Laurent polynomial", entry=entry
        )
    return format_scalar(value)


def spec_document(spec: SpecFile) -> dict[str, Any]:
    """JSON-ready dict; key order is the documented one."""
    document: dict[str, Any] = {
        "format": SPEC_FORMAT,
        "dim": spec.dim,
        "parameter": spec.parameter,
    }
    if spec.preset is not None:
        document["preset"] = spec.preset
    if spec.max_degree is not None:
        document["max_degree"] = spec.max_degree
    for label in TENSOR_NAMES:
        document[label] = [
            [i, j, k, l, _coefficient_text(value, f"{label}[{position}]")]
            for position, (i, j, k, l, value) in enumerate(spec.entries.get(label, []))
        ]
    return document


def _entry_lines(rows: list[list[Any]]) -> str:
    if not rows:
        return "[]"
    body = ",\n".join(f"    {json.dumps(row, ensure_ascii=False)}" for row in rows)
    return f"[\n{body}\n  ]"


def dump_spec(spec: SpecFile) -> str:
    """Serialize with one entry per line; parse_spec(dump_spec(s)) rebuilds s."""
    document = spec_document(spec)
    lines = []
    for key, value in document.items():
        if key in TENSOR_NAMES:
            rendered = _entry_lines(value)
        else:
            rendered = json.dumps(value, ensure_ascii=False)
        lines.append(f"  {json.dumps(key)}: {rendered}")
    return "{\n" + ",\n".join(lines) + "\n}\n"


def preset_spec(name: str, d: int, max_degree: int | None = None) -> SpecFile:
    """Spec file for a builtin preset with its entries written out."""
    ts = builtin_preset(name, d)
    return SpecFile.from_twist_system(ts, preset=name, max_degree=max_degree)


def canonical_json(ts: TwistSystem) -> str:
    """Compact sorted-key JSON of the parsed system (no labels)."""
    spec = SpecFile.from_twist_system(ts)
    payload = {
        "dim": spec.dim,
        "parameter": spec.parameter,
        **{
            label: [[i, j, k, l, str(v)] for i, j, k, l, v in spec.entries[label]]
            for label in TENSOR_NAMES
        },
    }
    return json.dumps(payload, sort_keys=True, separators=(",", ":"))


def input_digest(ts: TwistSystem) -> str:
    """SHA-256 of canonical_json(ts)."""
    return hashlib.sha256(canonical_json(ts).encode("utf-8")).hexdigest()


def known_presets() -> list[str]:
    return list(PRESETS)
