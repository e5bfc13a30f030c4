# tests/test_punch.py
import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from vibrakit.errors import ConfigError, InputError, MissingRecordError, PunchFormatError
from vibrakit.io.punch import (
    FormatDescriptor,
    PunchBlock,
    PunchDocument,
    PunchRecord,
    extract_beam_forces,
    parse_descriptor,
    parse_punch,
    read_punch_file,
    write_punch,
)

SIMPLE = FormatDescriptor(
    kind="ELEMENT FORCES",
    lines=(("axial", "shear-1", "shear-2"), ("torque",)),
)


def _line(eid, *values):
    return f"{eid:>10d}{'':8}" + "".join(f"{v:<18.10E}" for v in values)


FIRST = _line(1, 1.0, 2.0, 3.0) + "\n"
CONT = "-CONT-            "


def test_descriptor_file(data_dir):
    text = (data_dir / "descriptors" / "beam_force.desc").read_text()
    descriptor = parse_descriptor(text)
    assert descriptor.kind == "ELEMENT FORCES"
    assert [len(line) for line in descriptor.lines] == [3, 3, 2]
    assert descriptor.shears() == ("shear-1", "shear-2")
    assert descriptor.axial() == "axial"


@pytest.mark.parametrize(
    "text, message",
    [
        ("[first]\na\n[cont]\nb\n[first]\nc\n", "before"),
        ("[cont]\na\n", "before"),
        ("[first]\na\nb\nc\nd\n", "at most"),
        ("[first]\na\n[cont]\na\n", "duplicate"),
        ("[first]\na\n[shear]\na\n", "exactly two"),
        ("[weird]\n", "unknown"),
        ("size = 3\n[first]\na\n", "kind"),
        ("kind = X\n", r"\[first\]"),
    ],
)
def test_bad_descriptors(text, message):
    with pytest.raises(ConfigError, match=message):
        parse_descriptor(text)


def test_descriptor_without_shears():
    descriptor = parse_descriptor("[first]\na\nb\n")
    with pytest.raises(ConfigError):
        descriptor.shears()
    with pytest.raises(ConfigError, match="not descriptor values"):
        FormatDescriptor("K", (("a", "b"),), shear_names=("a", "c")).shears()


def test_fixture_blocks(data_dir):
    descriptor = parse_descriptor((data_dir / "descriptors" / "beam_force.desc").read_text())
    doc = read_punch_file(data_dir / "punch" / "frame_fixture.pch", descriptor)
    assert [b.subcase for b in doc.blocks] == [1, 2]
    first = doc.block(1)
    assert first.title == "FRAME 12-BOLT FIXTURE"
    assert first.label == "X"
    assert first.kind == "ELEMENT FORCES"
    assert first.extra_headers == ("REAL OUTPUT",)
    assert len(first.records) == 12
    assert first.records[0].value("shear-1") == 3.0
    assert len(doc.records) == 24

    forces = extract_beam_forces(doc, 2, descriptor).forces
    assert (forces[0].element_id, forces[0].v1, forces[0].v2) == (3000, 30.0, 40.0)
    with pytest.raises(MissingRecordError, match="present: 1, 2"):
        doc.block(3)


def test_parse_simple_record():
    text = "$ELEMENT FORCES\n$SUBCASE ID = 7\n" + _line(11, 1.0, -2.5, 3.0) + "\n"
    text += "-CONT-            " + "4.0D+00" + "\n"
    doc = parse_punch(text, SIMPLE)
    record = doc.block(7).records[0]
    assert record.as_dict() == {"axial": 1.0, "shear-1": -2.5, "shear-2": 3.0, "torque": 4.0}
    with pytest.raises(MissingRecordError):
        record.value("moment")


def test_columns_past_72_are_ignored():
    line = f"{_line(5, 1.0, 2.0, 3.0):<72}99999999"
    doc = parse_punch(line + "\n-CONT-            1.0\n", SIMPLE)
    assert doc.records[0].element_id == 5


@pytest.mark.parametrize(
    "text, message",
    [
        ("-CONT-            1.0\n", "orphan"),
        (_line(1, 1.0, 2.0) + "\n", "blank"),
        ("       abc" + "1.0\n", "invalid element id"),
        ("         0        1.0               2.0               3.0\n", "positive"),
        (FIRST, "descriptor expects"),
        (FIRST + CONT + "1.0\n" + CONT + "2.0\n", "unexpected"),
        (FIRST + "-CONT- x          1.0\n", "after -CONT-"),
        (FIRST + CONT + "1.0               2.0\n", "extra data"),
        ("         1        1.0               inf               3.0\n", "non-finite"),
        ("         1        1.0               1.x               3.0\n", "unparseable"),
        ("$SUBCASE ID = one\n", "subcase"),
    ],
)
def test_punch_format_errors(text, message):
    with pytest.raises(PunchFormatError, match=message):
        parse_punch(text, SIMPLE)


def test_error_location_attributes():
    with pytest.raises(PunchFormatError) as excinfo:
        parse_punch("$X\n" + _line(1, 1.0, 2.0) + "\n", SIMPLE)
    assert excinfo.value.line == 2
    assert excinfo.value.column == 55


def test_repeated_subcase_header_opens_a_block():
    text = "$SUBCASE ID = 1\n$SUBCASE ID = 2\n" + FIRST + CONT + "4.0\n"
    doc = parse_punch(text, SIMPLE)
    assert [b.subcase for b in doc.blocks] == [1, 2]
    assert not doc.block(1).records


def test_empty_subcase_is_a_warning():
    doc = parse_punch("$ELEMENT FORCES\n$SUBCASE ID = 4\n", SIMPLE)
    result = extract_beam_forces(doc, 4, SIMPLE)
    assert result.forces == ()
    assert "no element records" in result.warnings[0]


def test_kind_mismatch():
    text = "$STRESSES\n$SUBCASE ID = 1\n" + _line(1, 1.0, 2.0, 3.0) + "\n-CONT-            0.0\n"
    doc = parse_punch(text, SIMPLE)
    with pytest.raises(InputError, match="STRESSES"):
        extract_beam_forces(doc, 1, SIMPLE)


def test_non_ascii_file(tmp_path):
    path = tmp_path / "bad.pch"
    path.write_bytes("$TITLE = café\n".encode("utf-8"))
    with pytest.raises(PunchFormatError, match="7-bit"):
        read_punch_file(path, SIMPLE)
    with pytest.raises(InputError):
        read_punch_file(tmp_path / "missing.pch", SIMPLE)


def test_writer_layout():
    doc = PunchDocument(
        blocks=(
            PunchBlock(
                title="T",
                kind="ELEMENT FORCES",
                subcase=1,
                records=(
                    PunchRecord(
                        12, (("axial", 1.5), ("shear-1", -2.0), ("shear-2", 0.5), ("torque", 0.0))
                    ),
                ),
            ),
        )
    )
    lines = write_punch(doc, SIMPLE).splitlines()
    assert lines[0].startswith("$TITLE   = T")
    assert all(len(line) == 80 for line in lines)
    assert [line[72:].strip() for line in lines] == [str(i) for i in range(1, len(lines) + 1)]
    assert lines[3][:18] == "        12        "
    assert lines[4].startswith("-CONT-            0.0000000000E+00")
    with pytest.raises(InputError, match="not in the descriptor"):
        write_punch(
            PunchDocument(blocks=(PunchBlock(records=(PunchRecord(1, (("x", 1.0),)),)),)), SIMPLE
        )


names = st.lists(
    st.text(alphabet="abcdefgh-", min_size=1, max_size=6), min_size=1, max_size=7, unique=True
)
reals = st.floats(
    min_value=-1e300, max_value=1e300, allow_nan=False, allow_infinity=False, allow_subnormal=False
)


@settings(
    suppress_health_check=[HealthCheck.function_scoped_fixture], max_examples=500, deadline=None
)
@given(names, st.data())
def test_write_then_parse_preserves_records(value_names, data):
    lines = tuple(tuple(value_names[i : i + 3]) for i in range(0, len(value_names), 3))
    descriptor = FormatDescriptor(kind="ELEMENT FORCES", lines=lines)
    ids = data.draw(st.lists(st.integers(1, 10**9), min_size=1, max_size=5, unique=True))
    blocks = []
    for subcase in (1, 2):
        records = tuple(
            PunchRecord(eid, tuple((n, data.draw(reals)) for n in value_names)) for eid in ids
        )
        blocks.append(
            PunchBlock(title="RUN", kind="ELEMENT FORCES", subcase=subcase, records=records)
        )
    doc = PunchDocument(blocks=tuple(blocks))
    parsed = parse_punch(write_punch(doc, descriptor), descriptor)

    assert len(parsed.blocks) == len(doc.blocks)
    for got, sent in zip(parsed.blocks, doc.blocks):
        assert (got.title, got.kind, got.subcase) == (sent.title, sent.kind, sent.subcase)
        assert [r.element_id for r in got.records] == [r.element_id for r in sent.records]
        for got_record, sent_record in zip(got.records, sent.records):
            assert [n for n, _ in got_record.values] == list(value_names)
            for (_, value), (_, expected) in zip(got_record.values, sent_record.values):
                assert value == pytest.approx(expected, rel=1e-10, abs=0.0)


def test_writer_requires_every_descriptor_value():
    partial = PunchRecord(7, (("axial", 1.0), ("shear-1", 2.0), ("shear-2", 3.0)))
    doc = PunchDocument(blocks=(PunchBlock(kind="ELEMENT FORCES", records=(partial,)),))
    with pytest.raises(InputError, match="element 7: value\\(s\\) torque are missing"):
        write_punch(doc, SIMPLE)
