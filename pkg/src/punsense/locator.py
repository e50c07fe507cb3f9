"""Target-word location from semantic-field groups.

The A-group is the Section attracting the most distinct content words;
B-groups are all Sections at the second-largest count.  Homographic
puns score candidates by dual-group membership times frequency in the
B-union; heterographic puns fall back on sentence position only.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .errors import NoSemanticContent, WordAbsent

METHODS = ("sense_based", "last_word", "random", "most_polysemous")


@dataclass
class FieldGroups:
    a_section: int
    a_members: list
    a_size: int
    b_size: int
    b_groups: list  # list of (section_id, member list)

    @property
    def b_sections(self):
        return [section for section, _ in self.b_groups]


@dataclass
class CandidateScore:
    word: str
    v_alpha: int = 0
    v_beta: int = 0
    v_gamma: float = 0.0
    z: float = 0.0

    def as_dict(self):
        return {
            "word": self.word,
            "v_alpha": self.v_alpha,
            "v_beta": self.v_beta,
            "v_gamma": self.v_gamma,
            "z": self.z,
        }


def content_words(tokens):
    """Distinct (lemma, first-occurrence order) content words."""
    seen = []
    for token in tokens:
        if token.pos == "punctuation" or token.is_stopword:
            continue
        lemma = token.lemma or token.surface.lower()
        if lemma not in seen:
            seen.append(lemma)
    return seen


def word_section_pairs(tokens, index):
    pairs = []
    for lemma in content_words(tokens):
        pairs.append((lemma, index.lookup_sections(lemma)))
    return pairs


def compute_groups(pairs):
    """Build the A-group and B-groups from (lemma, Section set) pairs.

    Membership counts distinct lemmas.  Ties for the A-Section break to
    the lowest Section id; the losers stay available as B candidates.
    """
    members = {}  # section -> ordered lemma list
    for lemma, sections in pairs:
        for section in sections:
            members.setdefault(section, [])
            if lemma not in members[section]:
                members[section].append(lemma)
    if not members:
        raise NoSemanticContent("no word maps to any Section")
    a_section = min(members, key=lambda s: (-len(members[s]), s))
    a_size = len(members[a_section])
    rest = {s: m for s, m in members.items() if s != a_section}
    b_size = max((len(m) for m in rest.values()), default=0)
    b_groups = [
        (section, list(rest[section]))
        for section in sorted(rest)
        if len(rest[section]) == b_size and b_size > 0
    ]
    return FieldGroups(
        a_section=a_section,
        a_members=list(members[a_section]),
        a_size=a_size,
        b_size=b_size,
        b_groups=b_groups,
    )


def merge_wb(groups):
    """Union of all B-group member lists, duplicates removed, first
    occurrence order preserved."""
    merged = []
    for _, members in groups.b_groups:
        for lemma in members:
            if lemma not in merged:
                merged.append(lemma)
    return merged


def score_homographic(groups):
    """Dual-membership and B-union frequency scores for every merged
    B-group candidate (z = v_alpha * v_beta)."""
    merged = merge_wb(groups)
    union_with_duplicates = [lemma for _, members in groups.b_groups for lemma in members]
    a_set = set(groups.a_members)
    scores = []
    for word in merged:
        v_alpha = 2 if word in a_set else 1
        v_beta = union_with_duplicates.count(word)
        scores.append(
            CandidateScore(word=word, v_alpha=v_alpha, v_beta=v_beta, z=v_alpha * v_beta)
        )
    return scores


def position_value(word, tokens):
    """Mean 1-indexed position of the word's occurrences (lemma match,
    punctuation excluded from numbering)."""
    positions = [
        t.position
        for t in tokens
        if t.position is not None and (t.lemma or t.surface.lower()) == word
    ]
    if not positions:
        raise WordAbsent(f"{word!r} does not occur in the sentence")
    return sum(positions) / len(positions)


def _last_position(word, tokens):
    positions = [
        t.position
        for t in tokens
        if t.position is not None and (t.lemma or t.surface.lower()) == word
    ]
    return max(positions) if positions else 0


@dataclass
class LocationResult:
    target: str
    method: str
    scores: list = field(default_factory=list)
    groups: FieldGroups | None = None

    def as_dict(self):
        data = {
            "target": self.target,
            "method": self.method,
            "scores": [s.as_dict() for s in self.scores],
        }
        if self.groups is not None:
            data["groups"] = {
                "a_section": self.groups.a_section,
                "a_members": self.groups.a_members,
                "a_size": self.groups.a_size,
                "b_size": self.groups.b_size,
                "b_groups": [
                    {"section": s, "members": m} for s, m in self.groups.b_groups
                ],
            }
        return data


def locate_homographic(sentence, index, method="sense_based", seed=0):
    """Pick the target word of a homographic pun.

    sense_based: argmax v_alpha*v_beta over the merged B-union, ties
    drawn uniformly with the given seed.  last_word: max position.
    random: uniform over non-stopword tokens.  most_polysemous: argmax
    thesaurus entry count, ties to the later position.
    """
    tokens = sentence.tokens
    if method == "sense_based":
        pairs = word_section_pairs(tokens, index)
        groups = compute_groups(pairs)
        scores = score_homographic(groups)
        for score in scores:
            try:
                score.v_gamma = position_value(score.word, tokens)
            except WordAbsent:
                score.v_gamma = 0.0
        best = max(s.z for s in scores)
        tied = [s.word for s in scores if s.z == best]
        rng = random.Random(seed)
        target = tied[0] if len(tied) == 1 else rng.choice(tied)
        return LocationResult(target=target, method=method, scores=scores, groups=groups)
    if method == "last_word":
        positioned = [t for t in tokens if t.position is not None]
        if not positioned:
            raise NoSemanticContent("no positioned tokens")
        last = max(positioned, key=lambda t: t.position)
        return LocationResult(target=last.lemma or last.surface.lower(), method=method)
    if method == "random":
        candidates = [
            t.lemma or t.surface.lower()
            for t in tokens
            if t.position is not None and not t.is_stopword
        ]
        if not candidates:
            raise NoSemanticContent("no non-stopword tokens")
        rng = random.Random(seed)
        return LocationResult(target=rng.choice(candidates), method=method)
    if method == "most_polysemous":
        candidates = content_words(tokens)
        if not candidates:
            raise NoSemanticContent("no content words")
        target = max(
            candidates,
            key=lambda w: (index.polysemy_count(w), _last_position(w, tokens)),
        )
        return LocationResult(target=target, method=method)
    raise ValueError(f"unknown method {method!r}")


def heterographic_candidates(groups):
    """Candidate pool W_A plus the members of every B-group whose
    inclusion keeps |W_A union W_B| maximal.

    Any B-group can join a maximizing subset, so the pool is W_A plus
    the union of all B-groups; groups fully inside W_A add nothing.
    """
    pool = list(groups.a_members)
    for _, members in groups.b_groups:
        for lemma in members:
            if lemma not in pool:
                pool.append(lemma)
    return pool


def locate_heterographic(sentence, index):
    """Position-only target choice over W_A and the relevant B-groups;
    ties break to the latest occurrence."""
    tokens = sentence.tokens
    pairs = word_section_pairs(tokens, index)
    groups = compute_groups(pairs)
    candidates = heterographic_candidates(groups)
    scores = []
    for word in candidates:
        try:
            v_gamma = position_value(word, tokens)
        except WordAbsent:
            v_gamma = 0.0
        scores.append(CandidateScore(word=word, v_gamma=v_gamma, z=v_gamma))
    target = max(scores, key=lambda s: (s.z, _last_position(s.word, tokens))).word
    return LocationResult(target=target, method="heterographic", scores=scores, groups=groups)
