"""Parse a Roget-style thesaurus into a flat Section index.

The source is a plain-text edition structured as CLASS / DIVISION /
SECTION / numbered headings.  Only the Section level is kept as the
classification grain; Divisions are recorded and ignored.  A manifest
file fixes the Section numbering (dense ids 0..n-1, default n=34) and
the parser refuses sources whose Section sequence disagrees with it.

Source format, line oriented:

    CLASS I ABSTRACT RELATIONS
    SECTION I EXISTENCE
    #1 Existence. N. existence, being, entity. V. exist, be, subsist.
         Adj. existing, extant.

Heading lines start with ``#<number> <Head name>.``; the remainder (plus
any indented continuation lines) holds entries grouped under part-of-
speech markers (N. V. Adj. Adv. Phr.).  Entries are separated by commas
or semicolons; multi-word entries are stored whole.
"""

from __future__ import annotations

import hashlib
import re
from dataclasses import dataclass, field

from .errors import ChecksumMismatch, MalformedSource, ManifestMismatch

INDEX_MAGIC = "PUNSENSE-ROGET-INDEX"
INDEX_VERSION = 1

_CLASS_RE = re.compile(r"^CLASS\s+([IVXLC]+)\.?\s+(.+?)\s*$")
_DIVISION_RE = re.compile(r"^DIVISION\s+([IVXLC]+)\.?\s+(.+?)\s*$")
_SECTION_RE = re.compile(r"^SECTION\s+([IVXLC]+)\.?\s+(.+?)\s*$")
_HEADING_RE = re.compile(r"^#(\d+)\s+([^.]+)\.\s*(.*)$")
_POS_MARKER_RE = re.compile(r"\b(?:N|V|Adj|Adv|Phr)\.")


def _normalize_surface(surface):
    surface = surface.strip().strip(".").strip()
    surface = surface.replace("’", "'").replace("‘", "'")
    surface = re.sub(r"\s+", " ", surface)
    return surface.lower()


@dataclass(frozen=True)
class Section:
    id: int
    name: str
    class_label: str


@dataclass
class Manifest:
    """Ordered Section partition: id, name and owning Class label."""

    sections: list[Section] = field(default_factory=list)

    @classmethod
    def from_lines(cls, lines):
        sections = []
        for lineno, line in enumerate(lines, start=1):
            line = line.rstrip("\n")
            if not line.strip() or line.startswith("#"):
                continue
            parts = line.split("\t")
            if len(parts) != 3:
                raise ManifestMismatch(
                    f"manifest line {lineno}: expected id<TAB>name<TAB>class, got {line!r}"
                )
            sections.append(Section(int(parts[0]), parts[1].strip(), parts[2].strip()))
        ids = [s.id for s in sections]
        if ids != list(range(len(sections))):
            raise ManifestMismatch("manifest ids must be dense 0..n-1 in order")
        return cls(sections)

    @classmethod
    def from_file(cls, path):
        with open(path, encoding="utf-8") as fh:
            return cls.from_lines(fh)

    def __len__(self):
        return len(self.sections)

    def name_of(self, section_id):
        return self.sections[section_id].name


@dataclass(frozen=True)
class ThesaurusEntry:
    surface: str
    sections: frozenset
    entry_count: int


class ThesaurusIndex:
    """Immutable word/phrase -> Section-set index.

    Lookups are case-insensitive; possessive-pronoun slots in phrases
    are stored with the literal placeholder ``one's`` (callers
    canonicalize before lookup).
    """

    def __init__(self, entries, manifest, source_checksum):
        self._entries = dict(entries)
        self.manifest = manifest
        self.source_checksum = source_checksum

    @property
    def n_sections(self):
        return len(self.manifest)

    def __len__(self):
        return len(self._entries)

    def __contains__(self, surface):
        return _normalize_surface(surface) in self._entries

    def entry(self, surface):
        return self._entries.get(_normalize_surface(surface))

    def surfaces(self):
        return iter(self._entries)

    def lookup_sections(self, surface):
        """Duplicate-free Section ids for a word or phrase; {} if unknown."""
        entry = self._entries.get(_normalize_surface(surface))
        if entry is None:
            return set()
        return set(entry.sections)

    def polysemy_count(self, surface):
        """Number of distinct thesaurus positions the surface occupies."""
        entry = self._entries.get(_normalize_surface(surface))
        return entry.entry_count if entry is not None else 0

    # --- serialization -------------------------------------------------

    def dumps(self):
        lines = [f"{INDEX_MAGIC} {INDEX_VERSION}"]
        lines.append(f"checksum\t{self.source_checksum}")
        lines.append(f"sections\t{len(self.manifest)}")
        for s in self.manifest.sections:
            lines.append(f"{s.id}\t{s.name}\t{s.class_label}")
        lines.append(f"entries\t{len(self._entries)}")
        for surface in sorted(self._entries):
            e = self._entries[surface]
            ids = ",".join(str(i) for i in sorted(e.sections))
            lines.append(f"{surface}\t{e.entry_count}\t{ids}")
        return "\n".join(lines) + "\n"

    def save(self, path):
        import os
        import tempfile

        data = self.dumps().encode("utf-8")
        directory = os.path.dirname(os.path.abspath(path))
        fd, tmp = tempfile.mkstemp(dir=directory, prefix=".idx-")
        try:
            with os.fdopen(fd, "wb") as fh:
                fh.write(data)
            os.replace(tmp, path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise

    @classmethod
    def loads(cls, text):
        lines = text.splitlines()
        if not lines or not lines[0].startswith(INDEX_MAGIC):
            raise MalformedSource("not a punsense index file")
        version = int(lines[0].split()[-1])
        if version != INDEX_VERSION:
            raise MalformedSource(f"unsupported index version {version}")
        checksum = lines[1].split("\t")[1]
        n_sections = int(lines[2].split("\t")[1])
        sections = []
        for line in lines[3 : 3 + n_sections]:
            sid, name, class_label = line.split("\t")
            sections.append(Section(int(sid), name, class_label))
        manifest = Manifest(sections)
        pos = 3 + n_sections
        n_entries = int(lines[pos].split("\t")[1])
        entries = {}
        for line in lines[pos + 1 : pos + 1 + n_entries]:
            surface, count, ids = line.split("\t")
            section_ids = frozenset(int(i) for i in ids.split(",")) if ids else frozenset()
            entries[surface] = ThesaurusEntry(surface, section_ids, int(count))
        return cls(entries, manifest, checksum)

    @classmethod
    def load(cls, path):
        with open(path, encoding="utf-8") as fh:
            return cls.loads(fh.read())


def source_checksum(raw):
    if isinstance(raw, str):
        raw = raw.encode("utf-8")
    return hashlib.sha256(raw).hexdigest()


def _split_entries(text):
    text = _POS_MARKER_RE.sub(";", text)
    for chunk in re.split(r"[,;]", text):
        surface = _normalize_surface(chunk)
        if surface:
            yield surface


def parse_thesaurus(raw, manifest, expected_checksum=None, force=False):
    """Parse raw thesaurus text into a ThesaurusIndex.

    ``expected_checksum`` pins the edition; a differing source is
    rejected unless ``force`` is set.
    """
    if isinstance(raw, bytes):
        raw = raw.decode("utf-8")
    checksum = source_checksum(raw)
    if expected_checksum is not None and checksum != expected_checksum and not force:
        raise ChecksumMismatch(
            f"source checksum {checksum} does not match pinned {expected_checksum}"
        )

    sections_seen = []  # names in order of appearance
    current_section = None  # dense id
    saw_class = False
    heading_open = False
    heading_entries = []  # list of (section_id, set-of-surfaces) per heading
    current_heading_words = None

    def close_heading():
        nonlocal current_heading_words
        if current_heading_words is not None:
            heading_entries.append((current_section, current_heading_words))
            current_heading_words = None

    for lineno, line in enumerate(raw.splitlines(), start=1):
        stripped = line.strip()
        if not stripped:
            continue
        m = _CLASS_RE.match(stripped)
        if m:
            close_heading()
            saw_class = True
            heading_open = False
            continue
        m = _DIVISION_RE.match(stripped)
        if m:
            close_heading()
            heading_open = False
            continue  # Divisions recorded nowhere: Sections are the grain
        m = _SECTION_RE.match(stripped)
        if m:
            close_heading()
            if not saw_class:
                raise MalformedSource(f"line {lineno}: SECTION before any CLASS")
            name = m.group(2).strip()
            section_id = len(sections_seen)
            if section_id >= len(manifest):
                raise ManifestMismatch(
                    f"line {lineno}: section {name!r} beyond manifest ({len(manifest)} rows)"
                )
            expected = manifest.sections[section_id].name
            if name.casefold() != expected.casefold():
                raise ManifestMismatch(
                    f"line {lineno}: section {name!r} where manifest expects {expected!r}"
                )
            sections_seen.append(name)
            current_section = section_id
            heading_open = False
            continue
        m = _HEADING_RE.match(stripped)
        if m:
            close_heading()
            if current_section is None:
                raise MalformedSource(f"line {lineno}: heading before any SECTION")
            current_heading_words = set(_split_entries(m.group(3)))
            heading_open = True
            continue
        if heading_open:
            current_heading_words.update(_split_entries(stripped))
            continue
        raise MalformedSource(f"line {lineno}: unexpected content outside a heading: {stripped!r}")

    close_heading()
    if not saw_class:
        raise MalformedSource("no CLASS marker found")
    if len(sections_seen) != len(manifest):
        raise ManifestMismatch(
            f"source has {len(sections_seen)} sections, manifest declares {len(manifest)}"
        )

    sections_by_surface = {}
    counts = {}
    for section_id, words in heading_entries:
        for surface in words:
            sections_by_surface.setdefault(surface, set()).add(section_id)
            counts[surface] = counts.get(surface, 0) + 1

    entries = {
        surface: ThesaurusEntry(surface, frozenset(ids), counts[surface])
        for surface, ids in sections_by_surface.items()
    }
    return ThesaurusIndex(entries, manifest, checksum)
