"""Lexicon container, file formats, validation, and the bundled word lists.

Two on-disk encodings are supported and round-trip losslessly:

* a JSON document with one array per inventory (the bundled format), and
* a line-oriented TSV with a ``class  lemma  form2  form3  attrs...`` header,
  ``#`` comments, and ``-`` for empty cells.

``load_lexicon`` only parses; count and structure checks live in
``validate_lexicon`` so that deliberately broken toy lexicons can be
constructed and reported on.
"""

from __future__ import annotations

import enum
import functools
import importlib.resources
import json
import os
from dataclasses import dataclass
from pathlib import Path

from .core import (
    Gender,
    Government,
    NounEntry,
    NounKind,
    Number,
    SemanticCategory,
    ThingNounEntry,
    VerbEntry,
)
from .errors import LexiconError
from .morphology import Case, inflect_noun


class ValidationProfile(enum.Enum):
    FULL = "full"
    TOY = "toy"


@dataclass(frozen=True)
class Lexicon:
    verbs_acc: tuple[VerbEntry, ...]
    verbs_dat: tuple[VerbEntry, ...]
    verbs_ditrans: tuple[VerbEntry, ...]
    masc_common: tuple[NounEntry, ...]
    fem_common: tuple[NounEntry, ...]
    masc_proper: tuple[NounEntry, ...]
    fem_proper: tuple[NounEntry, ...]
    thing_nouns: tuple[ThingNounEntry, ...]

    def verbs(self, government: Government) -> tuple[VerbEntry, ...]:
        return {
            Government.ACCUSATIVE: self.verbs_acc,
            Government.DATIVE: self.verbs_dat,
            Government.DITRANSITIVE: self.verbs_ditrans,
        }[government]

    def common_nouns(self, gender: Gender) -> tuple[NounEntry, ...]:
        return self.masc_common if gender is Gender.MASC else self.fem_common

    def proper_nouns(self, gender: Gender) -> tuple[NounEntry, ...]:
        return self.masc_proper if gender is Gender.MASC else self.fem_proper


_VERB_INVENTORIES = {
    "verbs_accusative": Government.ACCUSATIVE,
    "verbs_dative": Government.DATIVE,
    "verbs_ditransitive": Government.DITRANSITIVE,
}
_GOVERNMENT_ALIASES = {
    "acc": Government.ACCUSATIVE,
    "accusative": Government.ACCUSATIVE,
    "dat": Government.DATIVE,
    "dative": Government.DATIVE,
    "ditrans": Government.DITRANSITIVE,
    "ditransitive": Government.DITRANSITIVE,
}
_TSV_HEADER = "class\tlemma\tform2\tform3\tattrs"


def load_lexicon(source) -> Lexicon:
    """Parse a lexicon document from a path or an open text file."""
    if hasattr(source, "read"):
        text = source.read()
        name = getattr(source, "name", "<stream>")
    else:
        path = Path(source)
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as exc:
            raise LexiconError(f"cannot read lexicon {path}: {exc}") from exc
        name = str(path)
    return lexicon_from_text(text, name=name)


def lexicon_from_text(text: str, name: str = "<string>") -> Lexicon:
    if text.lstrip()[:1] == "{":
        return _parse_json(text, name)
    return _parse_tsv(text, name)


def _bool(value, where: str) -> bool:
    if isinstance(value, bool):
        return value
    if isinstance(value, str) and value.lower() in ("true", "false"):
        return value.lower() == "true"
    raise LexiconError(f"{where}: expected true/false, got {value!r}")


def _category(value, where: str) -> SemanticCategory:
    try:
        return SemanticCategory(value)
    except ValueError:
        raise LexiconError(f"{where}: unknown semantic category {value!r}") from None


def _check_category(government: Government, category, where: str):
    if government is Government.DITRANSITIVE and category is None:
        raise LexiconError(f"{where}: ditransitive verb needs a semantic category")
    if government is not Government.DITRANSITIVE and category is not None:
        raise LexiconError(f"{where}: only ditransitive verbs carry a semantic category")


def _no_duplicates(entries, inventory: str, name: str):
    seen = set()
    for entry in entries:
        if entry.lemma in seen:
            raise LexiconError(f"{name}: duplicate lemma {entry.lemma!r} in {inventory}")
        seen.add(entry.lemma)


def _parse_json(text: str, name: str) -> Lexicon:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise LexiconError(f"{name}: invalid JSON at line {exc.lineno}: {exc.msg}") from exc
    if not isinstance(doc, dict):
        raise LexiconError(f"{name}: expected a JSON object at top level")
    known = set(_VERB_INVENTORIES) | {
        "masc_common",
        "fem_common",
        "masc_proper",
        "fem_proper",
        "thing_nouns",
    }
    for key in doc:
        if key not in known:
            raise LexiconError(f"{name}: unknown inventory {key!r}")

    def verb(entry, government, where):
        if not isinstance(entry, dict):
            raise LexiconError(f"{where}: expected an object")
        try:
            lemma = entry["lemma"]
            form_3sg = entry["form_3sg"]
            form_3pl = entry["form_3pl"]
        except KeyError as exc:
            raise LexiconError(f"{where}: missing field {exc.args[0]!r}") from None
        category = entry.get("category")
        if category is not None:
            category = _category(category, where)
        _check_category(government, category, where)
        return VerbEntry(
            lemma=lemma,
            form_3sg=form_3sg,
            form_3pl=form_3pl,
            government=government,
            semantic_category=category,
            symmetric=_bool(entry.get("symmetric", False), where),
        )

    def common(entry, gender, where):
        if not isinstance(entry, dict):
            raise LexiconError(f"{where}: expected an object")
        try:
            lemma = entry["lemma"]
            plural = entry["plural_nom"]
        except KeyError as exc:
            raise LexiconError(f"{where}: missing field {exc.args[0]!r}") from None
        return NounEntry(
            lemma=lemma,
            gender=gender,
            plural_nom=plural,
            weak_declension=_bool(entry.get("weak", False), where),
            kind=NounKind.COMMON,
        )

    def proper(entry, gender, where):
        if not isinstance(entry, str):
            raise LexiconError(f"{where}: proper names are plain strings")
        return NounEntry(
            lemma=entry, gender=gender, plural_nom=None, weak_declension=False, kind=NounKind.PROPER
        )

    def thing(entry, where):
        if not isinstance(entry, dict):
            raise LexiconError(f"{where}: expected an object")
        try:
            lemma = entry["lemma"]
            gender = entry["gender"]
            number = entry["number"]
            categories = entry["categories"]
        except KeyError as exc:
            raise LexiconError(f"{where}: missing field {exc.args[0]!r}") from None
        try:
            gender = Gender(gender)
            number = Number(number)
        except ValueError as exc:
            raise LexiconError(f"{where}: {exc}") from None
        return ThingNounEntry(
            lemma=lemma,
            gender=gender,
            number=number,
            compatible_categories=frozenset(_category(c, where) for c in categories),
        )

    inventories = {}
    for key, government in _VERB_INVENTORIES.items():
        inventories[key] = tuple(
            verb(e, government, f"{name}: {key}[{i}]") for i, e in enumerate(doc.get(key, []))
        )
    for key, gender in (("masc_common", Gender.MASC), ("fem_common", Gender.FEM)):
        inventories[key] = tuple(
            common(e, gender, f"{name}: {key}[{i}]") for i, e in enumerate(doc.get(key, []))
        )
    for key, gender in (("masc_proper", Gender.MASC), ("fem_proper", Gender.FEM)):
        inventories[key] = tuple(
            proper(e, gender, f"{name}: {key}[{i}]") for i, e in enumerate(doc.get(key, []))
        )
    inventories["thing_nouns"] = tuple(
        thing(e, f"{name}: thing_nouns[{i}]") for i, e in enumerate(doc.get("thing_nouns", []))
    )

    lex = Lexicon(
        verbs_acc=inventories["verbs_accusative"],
        verbs_dat=inventories["verbs_dative"],
        verbs_ditrans=inventories["verbs_ditransitive"],
        masc_common=inventories["masc_common"],
        fem_common=inventories["fem_common"],
        masc_proper=inventories["masc_proper"],
        fem_proper=inventories["fem_proper"],
        thing_nouns=inventories["thing_nouns"],
    )
    for inventory, entries in inventories.items():
        _no_duplicates(entries, inventory, name)
    return lex


def _parse_tsv(text: str, name: str) -> Lexicon:
    buckets = {
        "verb": {Government.ACCUSATIVE: [], Government.DATIVE: [], Government.DITRANSITIVE: []},
        "noun": {Gender.MASC: [], Gender.FEM: []},
        "pnoun": {Gender.MASC: [], Gender.FEM: []},
        "thing": [],
    }
    header_seen = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.rstrip("\n")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        where = f"{name}:{lineno}"
        if not header_seen:
            if line.split("\t")[0] != "class":
                raise LexiconError(f"{where}: expected header line {_TSV_HEADER!r}")
            header_seen = True
            continue
        fields = line.split("\t")
        if len(fields) < 4:
            raise LexiconError(f"{where}: expected at least 4 tab-separated fields")
        cls, lemma, form2, form3, *attrs = fields
        if cls == "verb":
            if len(attrs) != 3:
                raise LexiconError(f"{where}: verb rows take government, category, symmetric")
            gov_text, cat_text, sym_text = attrs
            government = _GOVERNMENT_ALIASES.get(gov_text.lower())
            if government is None:
                raise LexiconError(f"{where}: unknown government {gov_text!r}")
            category = None if cat_text == "-" else _category(cat_text, where)
            _check_category(government, category, where)
            buckets["verb"][government].append(
                VerbEntry(lemma, form2, form3, government, category, _bool(sym_text, where))
            )
        elif cls == "noun":
            if len(attrs) != 2 or attrs[0] not in ("masc", "fem"):
                raise LexiconError(f"{where}: noun rows take gender, weak|strong")
            if attrs[1] not in ("weak", "strong"):
                raise LexiconError(f"{where}: noun declension must be weak or strong")
            gender = Gender(attrs[0])
            buckets["noun"][gender].append(
                NounEntry(lemma, gender, form2, attrs[1] == "weak", NounKind.COMMON)
            )
        elif cls == "pnoun":
            if len(attrs) != 1 or attrs[0] not in ("masc", "fem"):
                raise LexiconError(f"{where}: pnoun rows take a gender attribute")
            gender = Gender(attrs[0])
            buckets["pnoun"][gender].append(NounEntry(lemma, gender, None, False, NounKind.PROPER))
        elif cls == "thing":
            if len(attrs) != 3:
                raise LexiconError(f"{where}: thing rows take gender, number, categories")
            try:
                gender = Gender(attrs[0])
                number = Number(attrs[1])
            except ValueError as exc:
                raise LexiconError(f"{where}: {exc}") from None
            categories = frozenset(_category(c, where) for c in attrs[2].split(",") if c)
            buckets["thing"].append(ThingNounEntry(lemma, gender, number, categories))
        else:
            raise LexiconError(f"{where}: unknown class {cls!r}")

    if not header_seen:
        raise LexiconError(f"{name}: empty document, expected header line {_TSV_HEADER!r}")
    lex = Lexicon(
        verbs_acc=tuple(buckets["verb"][Government.ACCUSATIVE]),
        verbs_dat=tuple(buckets["verb"][Government.DATIVE]),
        verbs_ditrans=tuple(buckets["verb"][Government.DITRANSITIVE]),
        masc_common=tuple(buckets["noun"][Gender.MASC]),
        fem_common=tuple(buckets["noun"][Gender.FEM]),
        masc_proper=tuple(buckets["pnoun"][Gender.MASC]),
        fem_proper=tuple(buckets["pnoun"][Gender.FEM]),
        thing_nouns=tuple(buckets["thing"]),
    )
    for inventory in (
        "verbs_acc",
        "verbs_dat",
        "verbs_ditrans",
        "masc_common",
        "fem_common",
        "masc_proper",
        "fem_proper",
        "thing_nouns",
    ):
        _no_duplicates(getattr(lex, inventory), inventory, name)
    return lex


def serialize_lexicon(lex: Lexicon, fmt: str = "json") -> str:
    """Render a lexicon back to text; load_lexicon(serialize_lexicon(x)) == x."""
    if fmt == "json":
        doc = {
            key: [
                {
                    "lemma": v.lemma,
                    "form_3sg": v.form_3sg,
                    "form_3pl": v.form_3pl,
                    **({"category": v.semantic_category.value} if v.semantic_category else {}),
                    "symmetric": v.symmetric,
                }
                for v in lex.verbs(government)
            ]
            for key, government in _VERB_INVENTORIES.items()
        }
        doc["masc_common"] = [
            {"lemma": n.lemma, "plural_nom": n.plural_nom, "weak": n.weak_declension}
            for n in lex.masc_common
        ]
        doc["fem_common"] = [
            {"lemma": n.lemma, "plural_nom": n.plural_nom, "weak": n.weak_declension}
            for n in lex.fem_common
        ]
        doc["masc_proper"] = [n.lemma for n in lex.masc_proper]
        doc["fem_proper"] = [n.lemma for n in lex.fem_proper]
        doc["thing_nouns"] = [
            {
                "lemma": t.lemma,
                "gender": t.gender.value,
                "number": t.number.value,
                "categories": sorted(c.value for c in t.compatible_categories),
            }
            for t in lex.thing_nouns
        ]
        return json.dumps(doc, ensure_ascii=False, indent=2) + "\n"
    if fmt == "tsv":
        gov_tags = {
            Government.ACCUSATIVE: "ACC",
            Government.DATIVE: "DAT",
            Government.DITRANSITIVE: "DITRANS",
        }
        lines = [_TSV_HEADER]
        for verbs in (lex.verbs_acc, lex.verbs_dat, lex.verbs_ditrans):
            for v in verbs:
                category = v.semantic_category.value if v.semantic_category else "-"
                lines.append(
                    "\t".join(
                        [
                            "verb",
                            v.lemma,
                            v.form_3sg,
                            v.form_3pl,
                            gov_tags[v.government],
                            category,
                            str(v.symmetric).lower(),
                        ]
                    )
                )
        for nouns in (lex.masc_common, lex.fem_common):
            for n in nouns:
                declension = "weak" if n.weak_declension else "strong"
                lines.append(
                    "\t".join(["noun", n.lemma, n.plural_nom or "-", "-", n.gender.value, declension])
                )
        for nouns in (lex.masc_proper, lex.fem_proper):
            for n in nouns:
                lines.append("\t".join(["pnoun", n.lemma, "-", "-", n.gender.value]))
        for t in lex.thing_nouns:
            categories = ",".join(sorted(c.value for c in t.compatible_categories))
            lines.append(
                "\t".join(["thing", t.lemma, "-", "-", t.gender.value, t.number.value, categories])
            )
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown lexicon format {fmt!r}")


def surface_forms(lex: Lexicon) -> set[str]:
    """Distinct noun surfaces: common nouns over sg/pl x nom/acc, plus names."""
    forms = set()
    for noun in lex.masc_common + lex.fem_common:
        for number in (Number.SG, Number.PL):
            for case in (Case.NOM, Case.ACC):
                forms.add(inflect_noun(noun, number, case))
    for name in lex.masc_proper + lex.fem_proper:
        forms.add(name.lemma)
    return forms


def surface_form_count(lex: Lexicon) -> int:
    return len(surface_forms(lex))


_FULL_COUNTS = (
    ("verbs_acc", "accusative verbs", 50),
    ("verbs_dat", "dative verbs", 22),
    ("verbs_ditrans", "ditransitive verbs", 21),
    ("masc_common", "masculine common nouns", 38),
    ("fem_common", "feminine common nouns", 24),
    ("masc_proper", "masculine proper names", 41),
    ("fem_proper", "feminine proper names", 41),
    ("thing_nouns", "direct-object nouns", 54),
)


def validate_lexicon(lex: Lexicon, profile: ValidationProfile = ValidationProfile.FULL) -> list[str]:
    """Return human-readable violation messages; an empty list means valid.

    TOY checks structure only; FULL additionally pins the inventory sizes
    and the 181-surface-form budget of the shipped word lists.
    """
    report = []

    for verbs in (lex.verbs_acc, lex.verbs_dat, lex.verbs_ditrans):
        for v in verbs:
            if v.symmetric:
                report.append(f"verb {v.lemma!r}: symmetric predicates are excluded")
            if v.form_3sg == v.form_3pl:
                report.append(f"verb {v.lemma!r}: 3sg and 3pl forms must differ")
            if (v.semantic_category is None) == (v.government is Government.DITRANSITIVE):
                report.append(
                    f"verb {v.lemma!r}: semantic category is required exactly for ditransitives"
                )
    by_gov = {
        "accusative": {v.lemma for v in lex.verbs_acc},
        "dative": {v.lemma for v in lex.verbs_dat},
        "ditransitive": {v.lemma for v in lex.verbs_ditrans},
    }
    names = sorted(by_gov)
    for i, a in enumerate(names):
        for b in names[i + 1 :]:
            for lemma in sorted(by_gov[a] & by_gov[b]):
                report.append(f"verb {lemma!r}: appears in both {a} and {b} inventories")

    for inventory, nouns, gender in (
        ("masc_common", lex.masc_common, Gender.MASC),
        ("fem_common", lex.fem_common, Gender.FEM),
    ):
        for n in nouns:
            if n.kind is not NounKind.COMMON:
                report.append(f"{inventory}: {n.lemma!r} must be a common noun")
            if n.gender is not gender:
                report.append(f"{inventory}: {n.lemma!r} has the wrong gender")
            if not n.plural_nom:
                report.append(f"{inventory}: {n.lemma!r} lacks a plural form")
            if n.weak_declension and n.gender is not Gender.MASC:
                report.append(
                    f"{inventory}: {n.lemma!r} weak declension is restricted to masculine nouns"
                )
            if not n.human:
                report.append(f"{inventory}: {n.lemma!r} must denote a person")
    for inventory, nouns, gender in (
        ("masc_proper", lex.masc_proper, Gender.MASC),
        ("fem_proper", lex.fem_proper, Gender.FEM),
    ):
        for n in nouns:
            if n.kind is not NounKind.PROPER:
                report.append(f"{inventory}: {n.lemma!r} must be a proper name")
            if n.gender is not gender:
                report.append(f"{inventory}: {n.lemma!r} has the wrong gender")
            if n.plural_nom is not None:
                report.append(f"{inventory}: {n.lemma!r} proper names take no plural")
            if n.weak_declension:
                report.append(f"{inventory}: {n.lemma!r} proper names are not weak")

    for inventory in ("verbs_acc", "verbs_dat", "verbs_ditrans", "masc_common", "fem_common",
                      "masc_proper", "fem_proper", "thing_nouns"):
        entries = getattr(lex, inventory)
        seen = set()
        for entry in entries:
            if entry.lemma in seen:
                report.append(f"{inventory}: duplicate lemma {entry.lemma!r}")
            seen.add(entry.lemma)

    for t in lex.thing_nouns:
        if not t.compatible_categories:
            report.append(f"thing noun {t.lemma!r}: needs at least one compatible category")
    if lex.verbs_ditrans:
        for v in lex.verbs_ditrans:
            if v.semantic_category is None:
                continue
            if not any(v.semantic_category in t.compatible_categories for t in lex.thing_nouns):
                report.append(f"verb {v.lemma!r}: no direct-object noun matches its category")

    if profile is ValidationProfile.FULL:
        for attr, label, want in _FULL_COUNTS:
            got = len(getattr(lex, attr))
            if got != want:
                report.append(f"expected {want} {label}, found {got}")
        weak = sum(1 for n in lex.masc_common if n.weak_declension)
        if weak != 6:
            report.append(f"expected 6 weak masculine nouns, found {weak}")
        forms = surface_form_count(lex)
        if forms != 181:
            report.append(f"expected 181 distinct noun surface forms, found {forms}")
    return report


def bundled_lexicon_path() -> Path:
    return Path(str(importlib.resources.files("wogli").joinpath("data/lexicon.json")))


@functools.cache
def bundled_lexicon() -> Lexicon:
    return load_lexicon(bundled_lexicon_path())


def default_lexicon_path() -> Path:
    """Resolve the lexicon to use: WOGLI_LEXICON if set, else the bundled file."""
    override = os.environ.get("WOGLI_LEXICON")
    return Path(override) if override else bundled_lexicon_path()
