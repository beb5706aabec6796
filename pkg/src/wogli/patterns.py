"""Argument-class patterns and the morphological-ambiguity oracle.

A pattern names the subject and object argument classes of a premise
(`sing_masc_v_plural_fem` etc.). The generator inventories are fixed: 17
accusative patterns survive the ambiguity filter, 8 are excluded because
German marks neither argument distinctly in them, and the dative and
ditransitive sets share one 24-pattern inventory.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass

from .core import ArticleKind, Case, Gender, Government, NounKind, Number
from .lexicon import Lexicon
from .morphology import NPSpec, agree_verb, render_np


class NPClass(enum.Enum):
    """Argument slot classes. PNOUN leaves the name's gender open (it is
    sampled at generation time); PNOUN_M/PNOUN_F pin it."""

    PNOUN = "pnoun"
    PNOUN_M = "pnoun_m"
    PNOUN_F = "pnoun_f"
    SING_MASC = "sing_masc"
    SING_FEM = "sing_fem"
    PLURAL_MASC = "plural_masc"
    PLURAL_FEM = "plural_fem"

    @property
    def is_proper(self) -> bool:
        return self in (NPClass.PNOUN, NPClass.PNOUN_M, NPClass.PNOUN_F)

    @property
    def number(self) -> Number:
        return Number.PL if self in (NPClass.PLURAL_MASC, NPClass.PLURAL_FEM) else Number.SG

    @property
    def gender(self) -> Gender | None:
        """Pinned gender, or None for the open proper-name class."""
        if self in (NPClass.PNOUN_M, NPClass.SING_MASC, NPClass.PLURAL_MASC):
            return Gender.MASC
        if self in (NPClass.PNOUN_F, NPClass.SING_FEM, NPClass.PLURAL_FEM):
            return Gender.FEM
        return None

    @property
    def name_fragment(self) -> str:
        return "pnoun" if self.is_proper else self.value


class NumberClass(enum.Enum):
    ALL_SINGULAR = "all_singular"
    SINGULAR_PLURAL = "singular_plural"


@dataclass(frozen=True)
class Pattern:
    subject: NPClass
    object: NPClass
    government: Government

    @property
    def name(self) -> str:
        return f"{self.subject.name_fragment}_v_{self.object.name_fragment}"


_FRAGMENTS = {
    "pnoun": NPClass.PNOUN,
    "sing_masc": NPClass.SING_MASC,
    "sing_fem": NPClass.SING_FEM,
    "plural_masc": NPClass.PLURAL_MASC,
    "plural_fem": NPClass.PLURAL_FEM,
}


def parse_pattern_name(name: str, government: Government) -> Pattern:
    """Inverse of Pattern.name for canonical names (pnoun stays gender-open)."""
    subject_name, sep, object_name = name.partition("_v_")
    if not sep or subject_name not in _FRAGMENTS or object_name not in _FRAGMENTS:
        raise ValueError(f"not a canonical pattern name: {name!r}")
    return Pattern(_FRAGMENTS[subject_name], _FRAGMENTS[object_name], government)


_WOGLI_NAMES = (
    "pnoun_v_sing_masc",
    "pnoun_v_plural_masc",
    "pnoun_v_plural_fem",
    "plural_masc_v_pnoun",
    "plural_masc_v_sing_masc",
    "plural_masc_v_sing_fem",
    "plural_fem_v_sing_masc",
    "plural_fem_v_sing_fem",
    "plural_fem_v_pnoun",
    "sing_masc_v_sing_masc",
    "sing_masc_v_plural_masc",
    "sing_masc_v_plural_fem",
    "sing_masc_v_sing_fem",
    "sing_masc_v_pnoun",
    "sing_fem_v_sing_masc",
    "sing_fem_v_plural_fem",
    "sing_fem_v_plural_masc",
)

_EXTENDED_NAMES = (
    "pnoun_v_sing_masc",
    "pnoun_v_plural_masc",
    "pnoun_v_plural_fem",
    "pnoun_v_sing_fem",
    "plural_masc_v_pnoun",
    "plural_masc_v_sing_masc",
    "plural_masc_v_sing_fem",
    "plural_masc_v_plural_fem",
    "plural_masc_v_plural_masc",
    "plural_fem_v_sing_masc",
    "plural_fem_v_sing_fem",
    "plural_fem_v_pnoun",
    "plural_fem_v_plural_fem",
    "plural_fem_v_plural_masc",
    "sing_masc_v_sing_masc",
    "sing_masc_v_plural_masc",
    "sing_masc_v_plural_fem",
    "sing_masc_v_sing_fem",
    "sing_masc_v_pnoun",
    "sing_fem_v_sing_masc",
    "sing_fem_v_plural_fem",
    "sing_fem_v_plural_masc",
    "sing_fem_v_pnoun",
    "sing_fem_v_sing_fem",
)

_EXCLUDED_NAMES = (
    "sing_fem_v_pnoun",
    "pnoun_v_sing_fem",
    "pnoun_v_pnoun",
    "sing_fem_v_sing_fem",
    "plural_fem_v_plural_fem",
    "plural_masc_v_plural_masc",
    "plural_masc_v_plural_fem",
    "plural_fem_v_plural_masc",
)


def wogli_patterns() -> list[Pattern]:
    """The 17 unambiguous accusative patterns, in inventory order."""
    return [parse_pattern_name(n, Government.ACCUSATIVE) for n in _WOGLI_NAMES]


def extended_patterns(government: Government) -> list[Pattern]:
    """The 24 patterns available once dative marking disambiguates."""
    if government is Government.ACCUSATIVE:
        raise ValueError("the extended inventory exists for dative and ditransitive verbs")
    return [parse_pattern_name(n, government) for n in _EXTENDED_NAMES]


def excluded_patterns() -> list[Pattern]:
    """The 8 accusative patterns dropped for argument-marking ambiguity."""
    return [parse_pattern_name(n, Government.ACCUSATIVE) for n in _EXCLUDED_NAMES]


def classify_number(pattern: Pattern) -> NumberClass:
    if pattern.subject.number is Number.SG and pattern.object.number is Number.SG:
        return NumberClass.ALL_SINGULAR
    return NumberClass.SINGULAR_PLURAL


def pattern_inventory_text(patterns: list[Pattern]) -> str:
    """One canonical name plus government per line, for export."""
    return "".join(f"{p.name}\t{p.government.value}\n" for p in patterns)


def _representative_specs(cls: NPClass, lex: Lexicon, skip_lemmas: set[str]) -> list[NPSpec]:
    """A small lexicalization cover for one slot: every admissible article kind
    crossed with nouns of every declension behavior present in the class."""
    specs = []
    if cls.is_proper:
        genders = [cls.gender] if cls.gender else [Gender.MASC, Gender.FEM]
        for gender in genders:
            for noun in lex.proper_nouns(gender):
                if noun.lemma not in skip_lemmas:
                    specs.append(NPSpec(noun, gender, Number.SG, ArticleKind.NONE))
                    break
        return specs
    nouns = []
    pool = [n for n in lex.common_nouns(cls.gender) if n.lemma not in skip_lemmas]
    for weak in (True, False):
        for plural_is_lemma in (True, False):
            for n in pool:
                if n.weak_declension == weak and (n.plural_nom == n.lemma) == plural_is_lemma:
                    nouns.append(n)
                    break
    kinds = [ArticleKind.DEF, ArticleKind.INDEF, ArticleKind.DEM]
    if cls.number is Number.PL:
        kinds = [ArticleKind.DEF, ArticleKind.DEM]
    for noun in nouns:
        for kind in kinds:
            specs.append(NPSpec(noun, cls.gender, cls.number, kind))
    return specs


def is_ambiguous(pattern: Pattern, lex: Lexicon) -> bool:
    """True iff the argument-swapped SO hypothesis and the reordered OS
    hypothesis coincide as strings for every lexicalization of the pattern.

    Checked by enumerating article kinds crossed with representative nouns of
    each declension behavior and two verbs. The surfaces either collide for
    all lexicalizations or for none, so the cover is decision-equivalent to
    full enumeration; a shared ditransitive direct object could never break a
    tie and is left out.
    """
    object_case = pattern.government.object_case
    verbs = list(lex.verbs(pattern.government))[:2]
    subjects = _representative_specs(pattern.subject, lex, set())
    if not subjects or not verbs:
        raise ValueError(f"lexicon cannot realize pattern {pattern.name}")
    subject_lemmas = {s.head.lemma for s in subjects}
    same_class = pattern.subject.name_fragment == pattern.object.name_fragment
    objects = _representative_specs(
        pattern.object, lex, subject_lemmas if same_class else set()
    )
    if not objects:
        raise ValueError(f"lexicon cannot realize pattern {pattern.name}")

    outcomes = set()
    for subj, verb, obj in itertools.product(subjects, verbs, objects):
        if subj.head.lemma == obj.head.lemma:
            continue
        # H1 swaps the arguments; H2 reorders the premise surface
        h1 = (*render_np(obj, Case.NOM), agree_verb(verb, obj.number), *render_np(subj, object_case))
        h2 = (*render_np(obj, object_case), agree_verb(verb, subj.number), *render_np(subj, Case.NOM))
        outcomes.add(h1 == h2)
    return outcomes == {True}


def ambiguity_rule(pattern: Pattern) -> bool:
    """Closed form of the accusative ambiguity decision: the surfaces collide
    iff both arguments share a number and neither is a masculine singular
    common noun (the only class with distinct nominative/accusative marking)."""
    if pattern.government is not Government.ACCUSATIVE:
        raise ValueError("the closed form covers accusative patterns only")
    numbers_equal = pattern.subject.number is pattern.object.number
    masc_sg_common = NPClass.SING_MASC in (pattern.subject, pattern.object)
    return numbers_equal and not masc_sg_common
