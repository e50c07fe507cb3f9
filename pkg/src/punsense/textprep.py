"""Tokenization, tagging, lemmatization and collocation extraction.

Everything here is deterministic: a closed-class lexicon plus a shipped
open-class lexicon and suffix heuristics, no statistical models.  Word
positions are 1-indexed over non-punctuation tokens; punctuation tokens
carry no position.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from importlib import resources

from .errors import EmptyInput

COARSE_TAGS = frozenset(
    {
        "noun",
        "verb",
        "adjective",
        "adverb",
        "participle",
        "determiner",
        "pronoun",
        "conjunction",
        "preposition",
        "particle",
        "punctuation",
        "other",
    }
)

_WORD_RE = re.compile(r"[A-Za-z]+(?:['’][A-Za-z]+)*|\d+|[^\sA-Za-z\d]")
_PUNCT_RE = re.compile(r"^[^\w]+$")

POSSESSIVE_PRONOUNS = frozenset(
    {"my", "your", "his", "her", "its", "our", "their", "one's"}
)

_CLOSED_CLASS = {
    "a": "determiner",
    "an": "determiner",
    "the": "determiner",
    "this": "determiner",
    "that": "determiner",
    "these": "determiner",
    "those": "determiner",
    "some": "determiner",
    "any": "determiner",
    "no": "determiner",
    "every": "determiner",
    "each": "determiner",
    "i": "pronoun",
    "you": "pronoun",
    "he": "pronoun",
    "she": "pronoun",
    "it": "pronoun",
    "we": "pronoun",
    "they": "pronoun",
    "me": "pronoun",
    "him": "pronoun",
    "us": "pronoun",
    "them": "pronoun",
    "my": "pronoun",
    "your": "pronoun",
    "his": "pronoun",
    "her": "pronoun",
    "its": "pronoun",
    "our": "pronoun",
    "their": "pronoun",
    "who": "pronoun",
    "what": "pronoun",
    "one's": "pronoun",
    "and": "conjunction",
    "but": "conjunction",
    "or": "conjunction",
    "nor": "conjunction",
    "yet": "conjunction",
    "so": "conjunction",
    "because": "conjunction",
    "although": "conjunction",
    "when": "conjunction",
    "while": "conjunction",
    "if": "conjunction",
    "of": "preposition",
    "in": "preposition",
    "on": "preposition",
    "at": "preposition",
    "for": "preposition",
    "from": "preposition",
    "with": "preposition",
    "without": "preposition",
    "by": "preposition",
    "into": "preposition",
    "onto": "preposition",
    "over": "preposition",
    "under": "preposition",
    "about": "preposition",
    "after": "preposition",
    "before": "preposition",
    "between": "preposition",
    "through": "preposition",
    "during": "preposition",
    "against": "preposition",
    "up": "particle",
    "down": "particle",
    "out": "particle",
    "off": "particle",
    "n't": "particle",
    "not": "adverb",
    "never": "adverb",
    "always": "adverb",
    "very": "adverb",
    "too": "adverb",
}

# Irregular inflections; extended at load time by data/lemmas.tsv.
_BUILTIN_LEMMAS = {
    "used": "use",
    "lost": "lose",
    "went": "go",
    "gone": "go",
    "bought": "buy",
    "proceeds": "proceeds",
    "was": "be",
    "were": "be",
    "is": "be",
    "are": "be",
    "am": "be",
    "been": "be",
    "being": "be",
    "has": "have",
    "had": "have",
    "having": "have",
    "did": "do",
    "does": "do",
    "done": "do",
    "said": "say",
    "made": "make",
    "got": "get",
    "gave": "give",
    "given": "give",
    "took": "take",
    "taken": "take",
    "came": "come",
    "saw": "see",
    "seen": "see",
    "told": "tell",
    "found": "find",
    "kept": "keep",
    "left": "leave",
    "put": "put",
    "paid": "pay",
    "met": "meet",
    "held": "hold",
    "ran": "run",
    "wrote": "write",
    "written": "write",
    "broke": "break",
    "broken": "break",
    "fell": "fall",
    "felt": "feel",
    "knew": "know",
    "known": "know",
    "grew": "grow",
    "grown": "grow",
    "drew": "draw",
    "drawn": "draw",
    "threw": "throw",
    "thrown": "throw",
    "caught": "catch",
    "taught": "teach",
    "thought": "think",
    "brought": "bring",
    "stole": "steal",
    "stolen": "steal",
    "spoke": "speak",
    "spoken": "speak",
    "wore": "wear",
    "worn": "wear",
    "sold": "sell",
    "slept": "sleep",
    "stood": "stand",
    "sat": "sit",
    "woke": "wake",
    "won": "win",
    "began": "begin",
    "begun": "begin",
    "sang": "sing",
    "flew": "fly",
    "ate": "eat",
    "eaten": "eat",
    "drank": "drink",
    "heard": "hear",
    "read": "read",
    "led": "lead",
    "fed": "feed",
    "shot": "shoot",
    "cut": "cut",
    "hit": "hit",
    "let": "let",
    "set": "set",
    "quit": "quit",
    "spent": "spend",
    "sent": "send",
    "built": "build",
    "meant": "mean",
    "lit": "light",
    "struck": "strike",
    "hung": "hang",
    "rang": "ring",
    "rose": "rise",
    "children": "child",
    "men": "man",
    "women": "woman",
    "people": "people",
    "feet": "foot",
    "teeth": "tooth",
    "mice": "mouse",
    "lives": "life",
    "wives": "wife",
    "knives": "knife",
    "leaves": "leaf",
    "loaves": "loaf",
    "thieves": "thief",
    "shelves": "shelf",
    "glasses": "glass",
    "scissors": "scissors",
    "news": "news",
    "ca": "can",
    "wo": "will",
    "echoes": "echo",
    "heroes": "hero",
    "potatoes": "potato",
    "tomatoes": "tomato",
    "fishermen": "fisherman",
    "policemen": "policeman",
    "geese": "goose",
    "horses": "horse",
}

# Collocation patterns over coarse POS classes.  Inner lists are the
# slot alternatives; optional slots are expanded in _PATTERN_VARIANTS.
PATTERN_NAMES = (
    "verb+particle",
    "verb+det/pron+noun+conj/prep+noun",
    "verb+adverb",
    "adverb+participle",
    "adjective+noun",
    "noun+conj/prep+noun",
)

_DET_PRON = ("determiner", "pronoun")
_CONJ_PREP = ("conjunction", "preposition")


def _pattern_variants():
    variants = []
    variants.append(("verb+particle", [("verb",), ("particle",)]))
    # verb + [det/pron] + noun + [conj/prep + noun]; longest variants first
    core = ("verb+det/pron+noun+conj/prep+noun",)
    variants.append((core[0], [("verb",), _DET_PRON, ("noun",), _CONJ_PREP, ("noun",)]))
    variants.append((core[0], [("verb",), ("noun",), _CONJ_PREP, ("noun",)]))
    variants.append((core[0], [("verb",), _DET_PRON, ("noun",)]))
    variants.append((core[0], [("verb",), ("noun",)]))
    variants.append(("verb+adverb", [("verb",), ("adverb",)]))
    variants.append(("adverb+participle", [("adverb",), ("participle",)]))
    variants.append(("adjective+noun", [("adjective",), ("noun",)]))
    variants.append(("noun+conj/prep+noun", [("noun",), _CONJ_PREP, ("noun",)]))
    return variants


_PATTERN_VARIANTS = _pattern_variants()


@dataclass
class Token:
    surface: str
    lemma: str = ""
    pos: str = "other"
    position: int | None = None
    is_stopword: bool = False


@dataclass
class Collocation:
    start: int
    end: int  # inclusive token index
    pattern: str
    surface_lemma: str


def _read_data_file(name):
    return resources.files("punsense.data").joinpath(name).read_text(encoding="utf-8")


def load_stopwords(path=None):
    if path is None:
        text = _read_data_file("stopwords.txt")
    else:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    words = set()
    for line in text.splitlines():
        line = line.strip().lower()
        if line and not line.startswith("#"):
            words.add(line)
    return frozenset(words)


def _load_tsv(text):
    table = {}
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        word, value = line.split("\t")
        table[word.strip().lower()] = value.strip()
    return table


def load_lexicon(path=None):
    """word -> coarse tag table for open-class words."""
    if path is None:
        text = _read_data_file("lexicon.tsv")
    else:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    lexicon = _load_tsv(text)
    for word, tag in lexicon.items():
        if tag not in COARSE_TAGS:
            raise ValueError(f"lexicon entry {word!r} has unknown tag {tag!r}")
    return lexicon


def load_lemma_exceptions(path=None):
    if path is None:
        try:
            text = _read_data_file("lemmas.tsv")
        except FileNotFoundError:
            text = ""
    else:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    table = dict(_BUILTIN_LEMMAS)
    table.update(_load_tsv(text))
    return table


def tokenize(text):
    """Split a sentence into tokens and assign positions.

    Contractions split conservatively ("wasn't" -> "was" + "n't");
    non-punctuation tokens are numbered 1..n left to right.
    """
    if not text or not text.strip():
        raise EmptyInput("empty or whitespace-only sentence")
    tokens = []
    for match in _WORD_RE.finditer(text):
        surface = match.group(0).replace("’", "'")
        if surface.lower().endswith("n't") and len(surface) > 3:
            stem = surface[:-3]
            tokens.append(Token(surface=stem))
            tokens.append(Token(surface="n't"))
        else:
            tokens.append(Token(surface=surface))
    position = 0
    for token in tokens:
        if _PUNCT_RE.match(token.surface):
            token.pos = "punctuation"
            token.position = None
        else:
            position += 1
            token.position = position
    return tokens


def lemmatize_word(surface, pos, exceptions=None):
    """Map an inflected form to its base form.

    Exception table first, then conservative suffix rules; unknown
    forms pass through unchanged.
    """
    word = surface.lower().replace("’", "'")
    table = exceptions if exceptions is not None else _BUILTIN_LEMMAS
    if word in table:
        return table[word]
    if pos in ("verb", "participle"):
        if word.endswith("ying") and len(word) > 5:
            return word[:-4] + "y" if word[-5] not in "aeiou" else word[:-3]
        if word.endswith("ing") and len(word) > 5:
            stem = word[:-3]
            if len(stem) > 2 and stem[-1] == stem[-2] and stem[-1] not in "aeiouls":
                return stem[:-1]
            if stem[-1] in "vzcgur" and stem[-2] not in "aeiou" or stem.endswith("at"):
                return stem + "e"
            return stem
        if word.endswith("ied") and len(word) > 4:
            return word[:-3] + "y"
        if word.endswith("ed") and len(word) > 3:
            stem = word[:-2]
            if stem.endswith("e"):
                return stem
            if len(stem) > 2 and stem[-1] == stem[-2] and stem[-1] not in "aeiouls":
                return stem[:-1]
            if stem[-1] in "vzcgu" or stem.endswith("at") or stem.endswith("as"):
                return stem + "e"
            return stem
        if word.endswith("ies") and len(word) > 4:
            return word[:-3] + "y"
        if word.endswith("es") and len(word) > 3 and word[-3] in "sxzho":
            return word[:-2]
        if word.endswith("s") and len(word) > 3 and not word.endswith("ss"):
            return word[:-1]
        return word
    if pos == "noun":
        if word.endswith("ies") and len(word) > 4:
            return word[:-3] + "y"
        if word.endswith(("sses", "xes", "zes", "ches", "shes")) and len(word) > 4:
            return word[:-2]
        if word.endswith("s") and len(word) > 3 and not word.endswith(("ss", "us", "is")):
            return word[:-1]
    return word


def lemmatize(token, exceptions=None):
    return lemmatize_word(token.surface, token.pos, exceptions)


def pos_tag(tokens, lexicon=None):
    """Assign one coarse tag per token, in place, and return the list.

    Closed classes win, then the shipped open-class lexicon, then
    suffix heuristics; ambiguous open-class words default to noun.
    A context pass turns -ed participles after a subject into verbs and
    "to" before a verb into a particle.
    """
    if lexicon is None:
        lexicon = load_lexicon()
    for token in tokens:
        if token.pos == "punctuation":
            continue
        word = token.surface.lower().replace("’", "'")
        if word == "to":
            token.pos = "preposition"  # fixed up in the context pass
        elif word in _CLOSED_CLASS:
            token.pos = _CLOSED_CLASS[word]
        elif word in lexicon:
            token.pos = lexicon[word]
        elif word.endswith("ly") and len(word) > 4:
            token.pos = "adverb"
        elif word.endswith("ing") and len(word) > 4:
            token.pos = "participle"
        elif word.endswith("ed") and len(word) > 3:
            token.pos = "participle"
        elif word in _BUILTIN_LEMMAS and word not in ("proceeds", "news", "people"):
            token.pos = "verb"
        else:
            token.pos = "noun"

    # context pass
    words = [t for t in tokens if t.pos != "punctuation"]
    for i, token in enumerate(words):
        prev = words[i - 1] if i > 0 else None
        nxt = words[i + 1] if i + 1 < len(words) else None
        if token.pos == "participle" and prev is not None and prev.pos in ("pronoun", "noun"):
            if prev.surface.lower() not in POSSESSIVE_PRONOUNS:
                token.pos = "verb"
        if token.pos == "participle" and prev is not None and prev.pos == "determiner":
            token.pos = "adjective"
        if token.surface.lower() == "to":
            base = nxt.surface.lower() if nxt is not None else ""
            if nxt is not None and (
                nxt.pos == "verb" or base in _BUILTIN_LEMMAS or (lexicon.get(base) == "verb")
            ):
                token.pos = "particle"
    return tokens


def flag_stopwords(tokens, stopwords=None):
    if stopwords is None:
        stopwords = load_stopwords()
    for token in tokens:
        if token.pos == "punctuation":
            token.is_stopword = False
            continue
        word = token.surface.lower().replace("’", "'")
        token.is_stopword = word in stopwords or token.lemma in stopwords
    return tokens


def _canonical_slot(token):
    """Lemma to use for a token inside a collocation's canonical form."""
    word = token.surface.lower().replace("’", "'")
    if token.pos == "pronoun" and word in POSSESSIVE_PRONOUNS:
        return "one's"
    return token.lemma or word


def extract_collocations(tokens, index):
    """Emit maximal matches of the six POS patterns present in the index.

    Stopwords stay eligible here; only punctuation breaks a span.  For
    each (pattern, start) only the longest variant is kept, and a
    candidate survives only if its canonical phrase is a thesaurus
    entry.
    """
    non_punct = [i for i, t in enumerate(tokens) if t.pos != "punctuation"]
    found = []
    for start_pos, _ in enumerate(non_punct):
        matched_patterns = set()
        for name, slots in _PATTERN_VARIANTS:
            if name in matched_patterns:
                continue
            if start_pos + len(slots) > len(non_punct):
                continue
            span = non_punct[start_pos : start_pos + len(slots)]
            if span[-1] - span[0] != len(slots) - 1:
                continue  # punctuation inside the span
            if all(tokens[idx].pos in alt for idx, alt in zip(span, slots)):
                matched_patterns.add(name)
                lemma = " ".join(_canonical_slot(tokens[idx]) for idx in span)
                if lemma in index:
                    found.append(
                        Collocation(
                            start=span[0], end=span[-1], pattern=name, surface_lemma=lemma
                        )
                    )
    return found


@dataclass
class AnalyzedSentence:
    text: str
    tokens: list = field(default_factory=list)
    collocations: list = field(default_factory=list)


def analyze(text, index, stopwords=None, lexicon=None, lemma_exceptions=None):
    """Full preprocessing: tokenize, tag, lemmatize, flag, collocations."""
    tokens = tokenize(text)
    pos_tag(tokens, lexicon)
    if lemma_exceptions is None:
        lemma_exceptions = load_lemma_exceptions()
    for token in tokens:
        if token.pos != "punctuation":
            token.lemma = lemmatize(token, lemma_exceptions)
    flag_stopwords(tokens, stopwords)
    collocations = extract_collocations(tokens, index)
    return AnalyzedSentence(text=text, tokens=tokens, collocations=collocations)
