# vibrakit/core/model/deck.py
"""
Model deck reader/writer.

One card per line, comma-separated fields, '#' starts a comment. Numbers
are read in the units declared by the UNITS card and converted to SI once.
"""

import math
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

from ...errors import DanglingReferenceError, DeckSyntaxError, DuplicateIdError, InputError
from ...utils.logging import get_logger
from .types import (
    BEAM_TAGS,
    BeamElement,
    BeamSection,
    BoltGroupDef,
    ConstraintSet,
    LoadCase,
    Material,
    Model,
    Node,
    PointMass,
    Preload,
    RigidLink,
    ShellElement,
    SpcEntry,
    Units,
    format_dof_mask,
    parse_dof_mask,
)

logger = get_logger('core.deck')

# Field kinds: i = integer id, f = real, s = name, m = DOF mask, t = beam tag, u = unit
CARD_SCHEMAS: Dict[str, Tuple[str, str]] = {
    # card: (required kinds, optional kinds); '*' repeats the last kind
    "UNITS": ("uuu", ""),
    "MAT": ("ifffff", ""),
    "NODE": ("ifff", ""),
    "BEAM": ("iiiifffffff", "t"),
    "SHELL": ("iiiiiif", ""),
    "MASS": ("iif", "fff"),
    "RIGID": ("iimi", "i*"),
    "SPCSET": ("s", "s"),
    "SPC": ("sim", ""),
    "RELEASE": ("sim", ""),
    "PRELOAD": ("sifff", ""),
    "ACCEL": ("sfff", "s"),
    "GROUP": ("si", "i*"),
}

# Cards emitted in id order, in this sequence, ahead of the named blocks
ID_SORTED_CARDS = ("MAT", "NODE", "BEAM", "SHELL", "MASS", "RIGID")


@dataclass
class RawCard:
    line: int
    name: str
    fields: List[str]


def _num(value: float) -> str:
    text = format(value, ".12g")
    return "0" if text == "-0" else text


def _tokenize(text: str) -> List[RawCard]:
    cards = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        content = raw.split("#", 1)[0].strip()
        if not content:
            continue
        parts = [p.strip() for p in content.split(",")]
        name = parts[0].upper()
        if name not in CARD_SCHEMAS:
            raise DeckSyntaxError("unknown card", line=lineno, card=parts[0])
        _check_arity(name, parts[1:], lineno)
        cards.append(RawCard(lineno, name, parts[1:]))
    return cards


def _kinds_for(name: str, count: int) -> str:
    required, optional = CARD_SCHEMAS[name]
    if optional.endswith("*"):
        repeated = optional[0]
        return required + repeated * (count - len(required))
    return (required + optional)[:count]


def _check_arity(name: str, fields: List[str], lineno: int):
    required, optional = CARD_SCHEMAS[name]
    n = len(fields)
    if optional.endswith("*"):
        ok = n >= len(required)
    elif name == "MASS":
        ok = n in (len(required), len(required) + len(optional))
    else:
        ok = len(required) <= n <= len(required) + len(optional)
    if not ok:
        expected = f"{len(required)}" + (f"-{len(required) + len(optional)}" if optional else "")
        if optional.endswith("*"):
            expected = f"at least {len(required)}"
        elif name == "MASS":
            expected = f"{len(required)} or {len(required) + len(optional)}"
        raise DeckSyntaxError(f"expected {expected} fields, got {n}", line=lineno, card=name)
    for i, value in enumerate(fields):
        if value == "":
            raise DeckSyntaxError(f"field {i + 1} is empty", line=lineno, card=name)


def _convert(kind: str, value: str, card: RawCard):
    try:
        if kind == "i":
            number = int(value)
            if number <= 0:
                raise ValueError("ids must be positive")
            return number
        if kind == "f":
            number = float(value)
            if not math.isfinite(number):
                raise ValueError("non-finite value")
            return number
        if kind == "m":
            return parse_dof_mask(value)
        if kind == "t":
            tag = value.lower()
            if tag not in BEAM_TAGS:
                raise ValueError(f"tag must be one of {', '.join(BEAM_TAGS)}")
            return tag
        if kind == "u":
            return value.lower() if value.lower() != "n" else "N"
        return value
    except (ValueError, InputError) as e:
        raise DeckSyntaxError(f"bad value '{value}': {e}", line=card.line, card=card.name) from e


def _typed(card: RawCard) -> list:
    kinds = _kinds_for(card.name, len(card.fields))
    return [_convert(k, v, card) for k, v in zip(kinds, card.fields)]


def _render(kind: str, value) -> str:
    if kind == "f":
        return _num(value)
    if kind == "m":
        return format_dof_mask(value)
    return str(value)


def _line(name: str, kinds: str, values: Sequence) -> str:
    return ",".join([name] + [_render(k, v) for k, v in zip(kinds, values)])


def _canonical_values(card: RawCard) -> Tuple[str, list]:
    """Typed values with optional fields normalized the way serialize_deck emits them"""
    values = _typed(card)
    kinds = _kinds_for(card.name, len(values))
    if card.name == "BEAM" and len(values) == 11:
        values.append("generic")
        kinds += "t"
    if card.name == "MASS" and len(values) == 6 and all(v == 0 for v in values[3:]):
        values = values[:3]
        kinds = kinds[:3]
    return kinds, values


def canonical_deck(text: str) -> str:
    """Textual normal form of a deck, independent of model linking"""
    cards = _tokenize(text)
    by_name: Dict[str, List[RawCard]] = {}
    for card in cards:
        by_name.setdefault(card.name, []).append(card)

    lines: List[str] = []
    units = by_name.get("UNITS")
    if units:
        lines.append(_line("UNITS", "uuu", _typed(units[0])))
    else:
        lines.append("UNITS,mm,kg,N")

    for name in ID_SORTED_CARDS:
        entries = [_canonical_values(c) for c in by_name.get(name, [])]
        for kinds, values in sorted(entries, key=lambda kv: kv[1][0]):
            lines.append(_line(name, kinds, values))

    for card in by_name.get("SPCSET", []):
        set_name = card.fields[0]
        lines.append(_line("SPCSET", _kinds_for("SPCSET", len(card.fields)), _typed(card)))
        for sub in ("SPC", "RELEASE", "PRELOAD"):
            for entry in by_name.get(sub, []):
                if entry.fields[0] == set_name:
                    kinds, values = _canonical_values(entry)
                    lines.append(_line(sub, kinds, values))

    for name in ("ACCEL", "GROUP"):
        for card in by_name.get(name, []):
            kinds, values = _canonical_values(card)
            lines.append(_line(name, kinds, values))
    return "\n".join(lines) + "\n"


class _Linker:
    """Turns typed cards into a linked Model, checking ids and references"""

    def __init__(self, cards: List[RawCard]):
        self.cards = cards
        self.units = Units()

    def _unique(self, seen: Dict, key, card: RawCard, what: str):
        if key in seen:
            raise DuplicateIdError(
                f"duplicate {what} {key} (first defined on line {seen[key]})",
                line=card.line,
                card=card.name,
            )
        seen[key] = card.line

    def _require(self, known, key, card: RawCard, what: str):
        if key not in known:
            raise DanglingReferenceError(f"dangling {what} {key}", line=card.line, card=card.name)

    def link(self) -> Model:
        units_cards = [c for c in self.cards if c.name == "UNITS"]
        if len(units_cards) > 1:
            raise DuplicateIdError(
                "more than one UNITS card", line=units_cards[1].line, card="UNITS"
            )
        if units_cards:
            length, mass, force = _typed(units_cards[0])
            try:
                self.units = Units(length, mass, force)
            except InputError as e:
                raise DeckSyntaxError(str(e), line=units_cards[0].line, card="UNITS") from e

        L = self.units.length_scale
        Mu = self.units.mass_scale

        materials: Dict[int, Material] = {}
        nodes: Dict[int, Node] = {}
        beams: Dict[int, BeamElement] = {}
        shells: Dict[int, ShellElement] = {}
        masses: Dict[int, PointMass] = {}
        links: Dict[int, RigidLink] = {}
        element_lines: Dict[int, int] = {}
        seen: Dict[str, Dict] = {k: {} for k in CARD_SCHEMAS}

        # Definitions first so references can point forward
        for card in self.cards:
            v = _typed(card)
            if card.name == "MAT":
                self._unique(seen["MAT"], v[0], card, "material")
                materials[v[0]] = Material(
                    id=v[0], E=v[1] * 1e9, nu=v[2], rho=v[3] * 1e3, F_ty=v[4] * 1e6, F_tu=v[5] * 1e6
                )
            elif card.name == "NODE":
                self._unique(seen["NODE"], v[0], card, "node")
                nodes[v[0]] = Node(v[0], (v[1] * L, v[2] * L, v[3] * L))

        for card in self.cards:
            v = _typed(card)
            if card.name == "BEAM":
                self._unique(element_lines, v[0], card, "element")
                self._require(materials, v[1], card, "material")
                self._require(nodes, v[2], card, "node")
                self._require(nodes, v[3], card, "node")
                section = BeamSection(A=v[4] * L**2, Iy=v[5] * L**4, Iz=v[6] * L**4, J=v[7] * L**4)
                beams[v[0]] = BeamElement(
                    id=v[0],
                    material=v[1],
                    n1=v[2],
                    n2=v[3],
                    section=section,
                    orientation=(v[8], v[9], v[10]),
                    tag=v[11] if len(v) > 11 else "generic",
                )
            elif card.name == "SHELL":
                self._unique(element_lines, v[0], card, "element")
                self._require(materials, v[1], card, "material")
                for nid in v[2:6]:
                    self._require(nodes, nid, card, "node")
                shells[v[0]] = ShellElement(
                    id=v[0],
                    material=v[1],
                    nodes=tuple(v[2:6]),  # type: ignore[arg-type]
                    thickness=v[6] * L,
                )
            elif card.name == "MASS":
                self._unique(seen["MASS"], v[0], card, "mass")
                self._require(nodes, v[1], card, "node")
                inertia = tuple(x * Mu * L**2 for x in v[3:6]) if len(v) == 6 else (0.0, 0.0, 0.0)
                masses[v[0]] = PointMass(v[0], v[1], v[2] * Mu, inertia)  # type: ignore[arg-type]
            elif card.name == "RIGID":
                self._unique(seen["RIGID"], v[0], card, "rigid link")
                for nid in [v[1]] + v[3:]:
                    self._require(nodes, nid, card, "node")
                links[v[0]] = RigidLink(v[0], v[1], v[2], tuple(v[3:]))

        constraints = self._constraints(nodes)
        cases = self._load_cases(constraints)
        groups = self._groups(beams)

        return Model(
            units=self.units,
            materials=tuple(materials[k] for k in sorted(materials)),
            nodes=tuple(nodes[k] for k in sorted(nodes)),
            beams=tuple(beams[k] for k in sorted(beams)),
            shells=tuple(shells[k] for k in sorted(shells)),
            masses=tuple(masses[k] for k in sorted(masses)),
            rigid_links=tuple(links[k] for k in sorted(links)),
            constraints=tuple(constraints.values()),
            load_cases=tuple(cases),
            groups=tuple(groups),
        )

    def _constraints(self, nodes: Dict[int, Node]) -> Dict[str, ConstraintSet]:
        declared: Dict[str, Tuple[RawCard, Optional[str]]] = {}
        seen: Dict[str, int] = {}
        for card in self.cards:
            if card.name == "SPCSET":
                v = _typed(card)
                self._unique(seen, v[0], card, "constraint set")
                declared[v[0]] = (card, v[1] if len(v) > 1 else None)

        entries: Dict[str, Dict[str, list]] = {
            name: {"SPC": [], "RELEASE": [], "PRELOAD": []} for name in declared
        }
        for card in self.cards:
            if card.name in ("SPC", "RELEASE", "PRELOAD"):
                v = _typed(card)
                self._require(declared, v[0], card, "constraint set")
                self._require(nodes, v[1], card, "node")
                if card.name == "PRELOAD":
                    entries[v[0]]["PRELOAD"].append(Preload(v[1], (v[2], v[3], v[4])))
                else:
                    entries[v[0]][card.name].append(SpcEntry(v[1], v[2]))

        for name, (card, base) in declared.items():
            if base is not None:
                self._require(declared, base, card, "base constraint set")
            if entries[name]["RELEASE"] and base is None:
                raise DeckSyntaxError(
                    f"set '{name}' has RELEASE entries but no base set",
                    line=card.line,
                    card="SPCSET",
                )
            # Cycle check over the base chain
            chain, current = [], name
            while current is not None:
                if current in chain:
                    raise DeckSyntaxError(
                        f"cyclic base chain: {' -> '.join(chain + [current])}",
                        line=card.line,
                        card="SPCSET",
                    )
                chain.append(current)
                current = declared[current][1]

        return {
            name: ConstraintSet(
                name=name,
                spcs=tuple(entries[name]["SPC"]),
                releases=tuple(entries[name]["RELEASE"]),
                preloads=tuple(entries[name]["PRELOAD"]),
                base=base,
            )
            for name, (_, base) in declared.items()
        }

    def _load_cases(self, constraints: Dict[str, ConstraintSet]) -> List[LoadCase]:
        cases: List[LoadCase] = []
        seen: Dict[str, int] = {}
        for card in self.cards:
            if card.name != "ACCEL":
                continue
            v = _typed(card)
            self._unique(seen, v[0], card, "load case")
            preload_set = v[4] if len(v) > 4 else None
            if preload_set is not None:
                self._require(constraints, preload_set, card, "constraint set")
            cases.append(LoadCase(v[0], (v[1], v[2], v[3]), preload_set))
        return cases

    def _groups(self, beams: Dict[int, BeamElement]) -> List[BoltGroupDef]:
        groups: List[BoltGroupDef] = []
        seen: Dict[str, int] = {}
        for card in self.cards:
            if card.name != "GROUP":
                continue
            v = _typed(card)
            self._unique(seen, v[0], card, "group")
            for eid in v[1:]:
                self._require(beams, eid, card, "beam element")
            groups.append(BoltGroupDef(v[0], tuple(v[1:])))
        return groups


def parse_deck(text: str) -> Model:
    """Parse a model deck into a linked Model (SI units)"""
    cards = _tokenize(text)
    model = _Linker(cards).link()
    logger.debug(
        f"Parsed deck: {len(model.nodes)} nodes, {len(model.beams)} beams, "
        f"{len(model.shells)} shells, {len(model.constraints)} constraint sets"
    )
    return model


def load_deck(path: Path) -> Model:
    path = Path(path)
    if not path.exists():
        raise InputError(f"deck not found: {path}")
    logger.info(f"Loading deck {path}")
    return parse_deck(path.read_text(encoding="ascii", errors="strict"))


def serialize_deck(model: Model) -> str:
    """Canonical deck text for a model, in the model's declared units"""
    L = model.units.length_scale
    Mu = model.units.mass_scale
    u = model.units
    lines = [f"UNITS,{u.length},{u.mass},{u.force}"]

    def emit(name: str, values: Sequence):
        lines.append(_line(name, _kinds_for(name, len(values)), values))

    for m in sorted(model.materials, key=lambda m: m.id):
        emit("MAT", [m.id, m.E / 1e9, m.nu, m.rho / 1e3, m.F_ty / 1e6, m.F_tu / 1e6])
    for n in sorted(model.nodes, key=lambda n: n.id):
        emit("NODE", [n.id] + [c / L for c in n.position])
    for b in sorted(model.beams, key=lambda b: b.id):
        s = b.section
        emit(
            "BEAM",
            [b.id, b.material, b.n1, b.n2, s.A / L**2, s.Iy / L**4, s.Iz / L**4, s.J / L**4]
            + list(b.orientation)
            + [b.tag],
        )
    for sh in sorted(model.shells, key=lambda s: s.id):
        emit("SHELL", [sh.id, sh.material] + list(sh.nodes) + [sh.thickness / L])
    for pm in sorted(model.masses, key=lambda p: p.id):
        values = [pm.id, pm.node, pm.mass / Mu]
        if any(i != 0 for i in pm.inertia):
            values += [i / (Mu * L**2) for i in pm.inertia]
        emit("MASS", values)
    for link in sorted(model.rigid_links, key=lambda r: r.id):
        emit("RIGID", [link.id, link.master, link.dofs] + list(link.slaves))
    for cs in model.constraints:
        emit("SPCSET", [cs.name] + ([cs.base] if cs.base else []))
        for spc in cs.spcs:
            emit("SPC", [cs.name, spc.node, spc.dofs])
        for rel in cs.releases:
            emit("RELEASE", [cs.name, rel.node, rel.dofs])
        for pre in cs.preloads:
            emit("PRELOAD", [cs.name, pre.node] + list(pre.force))
    for case in model.load_cases:
        preload = [case.preload_set] if case.preload_set else []
        emit("ACCEL", [case.name] + list(case.accel_g) + preload)
    for group in model.groups:
        emit("GROUP", [group.label] + list(group.members))
    return "\n".join(lines) + "\n"


def read_group_cards(text: str, model: Optional[Model] = None) -> List[BoltGroupDef]:
    """Standalone groups file: GROUP cards only, members checked against the model if given"""
    groups: List[BoltGroupDef] = []
    labels = set()
    for card in _tokenize(text):
        if card.name != "GROUP":
            raise DeckSyntaxError(
                "only GROUP cards are allowed in a groups file", card.line, card.name
            )
        v = _typed(card)
        if v[0] in labels:
            raise DuplicateIdError(f"duplicate group {v[0]}", line=card.line, card=card.name)
        labels.add(v[0])
        for eid in v[1:]:
            if model is not None and eid not in model.beam_map:
                raise DanglingReferenceError(f"dangling beam element {eid}", card.line, card.name)
        groups.append(BoltGroupDef(v[0], tuple(v[1:])))
    return groups


