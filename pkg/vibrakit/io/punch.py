# vibrakit/io/punch.py
"""
Punch-format elemental force output.

Layout of a data line (1-based columns):

    1-18   element id (integer), or ``-CONT-`` in 1-6 on continuation lines
    19-36  real 1
    37-54  real 2
    55-72  real 3
    73-80  sequence number, ignored on read

Header lines start with ``$``. A header appearing after data records opens a
new block (one block per subcase). Field names per line come from a
FormatDescriptor.
"""

import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Tuple

from ..errors import ConfigError, InputError, MissingRecordError, PunchFormatError
from ..utils.logging import get_logger

logger = get_logger('io.punch')

FIELD_WIDTH = 18
VALUES_PER_LINE = 3
DATA_COLUMNS = 72
LINE_COLUMNS = 80
CONT = "-CONT-"

DEFAULT_SHEAR_NAMES = ("shear-1", "shear-2")


@dataclass(frozen=True)
class FormatDescriptor:
    kind: str
    lines: Tuple[Tuple[str, ...], ...]  # first line, then each continuation line
    shear_names: Optional[Tuple[str, str]] = None
    axial_name: Optional[str] = None

    def __post_init__(self):
        if not self.lines:
            raise ConfigError("descriptor needs a [first] section")
        seen = set()
        for i, names in enumerate(self.lines):
            if not names:
                raise ConfigError(f"descriptor line {i + 1} has no value names")
            if len(names) > VALUES_PER_LINE:
                raise ConfigError(
                    f"descriptor line {i + 1} has {len(names)} names; at most {VALUES_PER_LINE} fit"
                )
            for name in names:
                if name in seen:
                    raise ConfigError(f"duplicate value name '{name}' in descriptor")
                seen.add(name)

    @property
    def names(self) -> Tuple[str, ...]:
        return tuple(n for names in self.lines for n in names)

    def shears(self) -> Tuple[str, str]:
        """The two shear value names; a descriptor without them cannot feed bolt analysis"""
        names = self.shear_names
        if names is None and all(n in self.names for n in DEFAULT_SHEAR_NAMES):
            names = DEFAULT_SHEAR_NAMES
        if names is None:
            raise ConfigError(f"descriptor '{self.kind}' does not name two shear fields")
        missing = [n for n in names if n not in self.names]
        if missing:
            raise ConfigError(f"shear field(s) {', '.join(missing)} are not descriptor values")
        return names

    def axial(self) -> Optional[str]:
        if self.axial_name is not None:
            return self.axial_name
        return "axial" if "axial" in self.names else None


def parse_descriptor(text: str) -> FormatDescriptor:
    """Descriptor text: ``kind = ...``, then ``[first]``, ``[cont]`` (repeatable), ``[shear]``"""
    kind = "ELEMENT FORCES"
    lines: List[List[str]] = []
    shear: List[str] = []
    axial: Optional[str] = None
    section: Optional[str] = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        content = raw.split("#", 1)[0].strip()
        if not content:
            continue
        if content.startswith("[") and content.endswith("]"):
            section = content[1:-1].strip().lower()
            if section == "first":
                if lines:
                    raise ConfigError(f"line {lineno}: [first] must come before [cont]")
                lines.append([])
            elif section == "cont":
                if not lines:
                    raise ConfigError(f"line {lineno}: [cont] before [first]")
                lines.append([])
            elif section not in ("shear", "axial"):
                raise ConfigError(f"line {lineno}: unknown descriptor section [{section}]")
            continue
        if section is None:
            key, sep, value = content.partition("=")
            if not sep or key.strip().lower() != "kind":
                raise ConfigError(f"line {lineno}: expected 'kind = ...' before the first section")
            kind = value.strip()
        elif section == "shear":
            shear.append(content)
        elif section == "axial":
            axial = content
        else:
            lines[-1].append(content)
    if len(shear) not in (0, 2):
        raise ConfigError("[shear] must list exactly two value names")
    return FormatDescriptor(
        kind=kind,
        lines=tuple(tuple(names) for names in lines),
        shear_names=(shear[0], shear[1]) if shear else None,
        axial_name=axial,
    )


def load_descriptor(path: Path) -> FormatDescriptor:
    try:
        text = Path(path).read_text(encoding="ascii")
    except (OSError, UnicodeDecodeError) as e:
        raise ConfigError(f"cannot read descriptor {path}: {e}") from e
    return parse_descriptor(text)


@dataclass(frozen=True)
class PunchRecord:
    element_id: int
    values: Tuple[Tuple[str, float], ...]  # (name, value) in descriptor order

    def value(self, name: str) -> float:
        for key, v in self.values:
            if key == name:
                return v
        raise MissingRecordError(f"element {self.element_id} has no value '{name}'")

    def as_dict(self) -> Dict[str, float]:
        return dict(self.values)


@dataclass(frozen=True)
class PunchBlock:
    title: Optional[str] = None
    subtitle: Optional[str] = None
    label: Optional[str] = None
    kind: Optional[str] = None
    subcase: Optional[int] = None
    extra_headers: Tuple[str, ...] = ()
    records: Tuple[PunchRecord, ...] = ()


@dataclass(frozen=True)
class PunchDocument:
    blocks: Tuple[PunchBlock, ...] = ()

    def block(self, subcase: int) -> PunchBlock:
        for block in self.blocks:
            if block.subcase == subcase:
                return block
        known = ", ".join(str(b.subcase) for b in self.blocks) or "none"
        raise MissingRecordError(f"subcase {subcase} not found in punch data (present: {known})")

    @property
    def records(self) -> Tuple[PunchRecord, ...]:
        return tuple(r for b in self.blocks for r in b.records)


@dataclass
class _BlockBuilder:
    headers: Dict[str, object] = field(default_factory=dict)
    extra: List[str] = field(default_factory=list)
    records: List[PunchRecord] = field(default_factory=list)

    def build(self) -> PunchBlock:
        return PunchBlock(
            title=self.headers.get("title"),  # type: ignore[arg-type]
            subtitle=self.headers.get("subtitle"),  # type: ignore[arg-type]
            label=self.headers.get("label"),  # type: ignore[arg-type]
            kind=self.headers.get("kind"),  # type: ignore[arg-type]
            subcase=self.headers.get("subcase"),  # type: ignore[arg-type]
            extra_headers=tuple(self.extra),
            records=tuple(self.records),
        )

    @property
    def empty(self) -> bool:
        return not self.headers and not self.extra and not self.records


_NAMED_HEADERS = (("$TITLE", "title"), ("$SUBTITLE", "subtitle"), ("$LABEL", "label"))


def _header(builder: _BlockBuilder, line: str, lineno: int):
    text = line.rstrip()
    upper = text.upper()
    if upper.startswith("$SUBCASE ID"):
        _, sep, value = text.partition("=")
        try:
            builder.headers["subcase"] = int(value.strip())
        except ValueError:
            raise PunchFormatError(f"invalid subcase id '{value.strip()}'", lineno) from None
        if not sep:
            raise PunchFormatError("subcase header without '='", lineno)
        return
    for prefix, key in _NAMED_HEADERS:
        rest = text[len(prefix):]
        if upper.startswith(prefix) and "=" in rest and rest.split("=", 1)[0].strip() == "":
            builder.headers[key] = text.split("=", 1)[1].strip()
            return
    body = text[1:].strip()
    if "kind" not in builder.headers:
        builder.headers["kind"] = body
    else:
        builder.extra.append(body)


def _real(line: str, start: int, lineno: int) -> Optional[float]:
    text = line[start : start + FIELD_WIDTH].strip()
    if not text:
        return None
    try:
        value = float(text.replace("D", "E").replace("d", "e"))
    except ValueError:
        raise PunchFormatError(f"unparseable real '{text}'", lineno, start + 1) from None
    if not math.isfinite(value):
        raise PunchFormatError(f"non-finite real '{text}'", lineno, start + 1)
    return value


def _line_values(line: str, expected: int, lineno: int) -> List[float]:
    values = []
    for slot in range(VALUES_PER_LINE):
        start = FIELD_WIDTH * (slot + 1)
        value = _real(line, start, lineno)
        if slot < expected:
            if value is None:
                raise PunchFormatError(
                    f"expected {expected} value(s), field {slot + 1} is blank", lineno, start + 1
                )
            values.append(value)
        elif value is not None:
            raise PunchFormatError(
                f"expected {expected} value(s), found extra data in field {slot + 1}",
                lineno,
                start + 1,
            )
    return values


def parse_punch(text: str, descriptor: FormatDescriptor) -> PunchDocument:
    """Parse punch text into blocks of named records; only columns 1-72 carry data"""
    blocks: List[PunchBlock] = []
    builder = _BlockBuilder()
    pending: Optional[Tuple[int, int, List[float]]] = None  # (element id, line, values)
    layout = descriptor.lines

    def close_record():
        nonlocal pending
        if pending is None:
            return
        eid, start_line, values = pending
        if len(values) != len(descriptor.names):
            raise PunchFormatError(
                f"element {eid}: {len(values)} value(s) read, descriptor expects "
                f"{len(descriptor.names)}",
                start_line,
            )
        builder.records.append(PunchRecord(eid, tuple(zip(descriptor.names, values))))
        pending = None

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.rstrip("\r")[:LINE_COLUMNS]
        data = line[:DATA_COLUMNS]
        if not data.strip():
            continue
        if data.startswith("$"):
            close_record()
            repeated_subcase = (
                data.upper().startswith("$SUBCASE ID") and "subcase" in builder.headers
            )
            if builder.records or repeated_subcase:
                blocks.append(builder.build())
                builder = _BlockBuilder()
            _header(builder, data, lineno)
            continue
        if data.startswith(CONT):
            if pending is None:
                raise PunchFormatError("orphan continuation line", lineno, 1)
            eid, start_line, values = pending
            total = sum(len(names) for names in layout)
            if len(values) >= total:
                raise PunchFormatError(f"element {eid}: unexpected continuation line", lineno, 1)
            if data[len(CONT) : FIELD_WIDTH].strip():
                raise PunchFormatError("unexpected text after -CONT-", lineno, len(CONT) + 1)
            line_index = next(
                i for i in range(len(layout)) if sum(len(n) for n in layout[: i + 1]) > len(values)
            )
            values.extend(_line_values(data, len(layout[line_index]), lineno))
            continue

        close_record()
        id_text = data[:FIELD_WIDTH].strip()
        try:
            eid = int(id_text)
        except ValueError:
            raise PunchFormatError(f"invalid element id '{id_text}'", lineno, 1) from None
        if eid <= 0:
            raise PunchFormatError(f"element id must be positive, got {eid}", lineno, 1)
        pending = (eid, lineno, _line_values(data, len(layout[0]), lineno))

    close_record()
    if not builder.empty:
        blocks.append(builder.build())
    return PunchDocument(blocks=tuple(blocks))


def _format_real(value: float) -> str:
    text = f"{value:<{FIELD_WIDTH}.10E}"
    if len(text) > FIELD_WIDTH:
        raise InputError(f"value {value!r} does not fit an {FIELD_WIDTH}-character field")
    return text


def write_punch(doc: PunchDocument, descriptor: FormatDescriptor) -> str:
    """Canonical fixed-width punch text; sequence numbers fill columns 73-80"""
    out: List[str] = []

    def emit(body: str):
        if len(body) > DATA_COLUMNS:
            raise InputError(f"punch line exceeds {DATA_COLUMNS} columns: {body!r}")
        out.append(f"{body:<{DATA_COLUMNS}}{len(out) + 1:>8d}")

    names = descriptor.names
    for position, block in enumerate(doc.blocks):
        if not block.records and position < len(doc.blocks) - 1:
            raise InputError("only the last punch block may be empty")
        if block.kind is None and block.extra_headers:
            raise InputError("extra headers require an output kind header")
        for prefix, key in _NAMED_HEADERS:
            value = getattr(block, key)
            if value is not None:
                emit(f"{prefix:<9}= {value}")
        if block.kind is not None:
            emit(f"${block.kind}")
        for extra in block.extra_headers:
            emit(f"${extra}")
        if block.subcase is not None:
            emit(f"$SUBCASE ID = {block.subcase:>11d}")
        for record in block.records:
            values = record.as_dict()
            unknown = [k for k in values if k not in names]
            if unknown:
                raise InputError(
                    f"element {record.element_id}: value(s) {', '.join(unknown)} "
                    "are not in the descriptor"
                )
            missing = [n for n in names if n not in values]
            if missing:
                raise InputError(
                    f"element {record.element_id}: value(s) {', '.join(missing)} are missing"
                )
            for i, line_names in enumerate(descriptor.lines):
                lead = f"{record.element_id:>10d}{'':8}" if i == 0 else f"{CONT:<{FIELD_WIDTH}}"
                fields = "".join(_format_real(values[n]) for n in line_names)
                emit((lead + fields).rstrip())
    return "\n".join(out) + ("\n" if out else "")


@dataclass(frozen=True)
class BeamForceRow:
    element_id: int
    v1: float
    v2: float
    axial: float = 0.0


@dataclass(frozen=True)
class ExtractionResult:
    forces: Tuple[BeamForceRow, ...]
    warnings: Tuple[str, ...] = ()


def extract_beam_forces(
    doc: PunchDocument, subcase: int, descriptor: FormatDescriptor
) -> ExtractionResult:
    """(element id, V1, V2) per record of one subcase, named by the descriptor"""
    v1_name, v2_name = descriptor.shears()
    axial_name = descriptor.axial()
    block = doc.block(subcase)
    if block.kind and descriptor.kind and block.kind.upper() != descriptor.kind.upper():
        raise InputError(
            f"subcase {subcase} holds '{block.kind}' output, descriptor expects '{descriptor.kind}'"
        )
    if not block.records:
        message = f"subcase {subcase} has no element records"
        logger.warning(message)
        return ExtractionResult(forces=(), warnings=(message,))
    rows = []
    for record in block.records:
        values = record.as_dict()
        rows.append(
            BeamForceRow(
                element_id=record.element_id,
                v1=values[v1_name],
                v2=values[v2_name],
                axial=values.get(axial_name, 0.0) if axial_name else 0.0,
            )
        )
    return ExtractionResult(forces=tuple(rows))


def read_punch_file(path: Path, descriptor: FormatDescriptor) -> PunchDocument:
    try:
        raw = Path(path).read_bytes()
    except OSError as e:
        raise InputError(f"cannot read punch file {path}: {e}") from e
    try:
        text = raw.decode("ascii")
    except UnicodeDecodeError as e:
        raise PunchFormatError(f"{path}: punch files must be 7-bit text ({e.reason})") from e
    return parse_punch(text, descriptor)

