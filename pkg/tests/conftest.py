import json

import pytest

from wogli import bundled_lexicon, lexicon_from_text

TOY_LEXICON = {
    "verbs_accusative": [
        {"lemma": "sehen", "form_3sg": "sieht", "form_3pl": "sehen"},
        {"lemma": "hören", "form_3sg": "hört", "form_3pl": "hören"},
    ],
    "verbs_dative": [
        {"lemma": "helfen", "form_3sg": "hilft", "form_3pl": "helfen"},
    ],
    "verbs_ditransitive": [
        {"lemma": "geben", "form_3sg": "gibt", "form_3pl": "geben", "category": "giving"},
    ],
    "masc_common": [
        {"lemma": "Arzt", "plural_nom": "Ärzte"},
        {"lemma": "Kunde", "plural_nom": "Kunden", "weak": True},
    ],
    "fem_common": [
        {"lemma": "Autorin", "plural_nom": "Autorinnen"},
        {"lemma": "Lehrerin", "plural_nom": "Lehrerinnen"},
    ],
    "masc_proper": ["Peter", "Paul"],
    "fem_proper": ["Anna", "Maria"],
    "thing_nouns": [
        {"lemma": "Kuchen", "gender": "masc", "number": "sg", "categories": ["giving"]},
    ],
}


@pytest.fixture(scope="session")
def lex():
    return bundled_lexicon()


@pytest.fixture
def toy_lex():
    return lexicon_from_text(json.dumps(TOY_LEXICON), "toy")


@pytest.fixture(scope="module")
def toy_lex_module():
    return lexicon_from_text(json.dumps(TOY_LEXICON), "toy")


def make_toy(**overrides):
    """A copy of the toy lexicon with some inventories replaced."""
    data = {k: list(v) for k, v in TOY_LEXICON.items()}
    data.update(overrides)
    return lexicon_from_text(json.dumps(data), "toy-variant")
