import pytest

from conftest import MINI_MANIFEST, MINI_SOURCE
from punsense.errors import ChecksumMismatch, MalformedSource, ManifestMismatch
from punsense.thesaurus import (
    Manifest,
    ThesaurusIndex,
    parse_thesaurus,
    source_checksum,
)

# Banker-joke rows: lemma -> Section set
TABLE1 = {
    "i": set(),
    "use": {24, 30},
    "to": set(),
    "be": {0, 19},
    "a": set(),
    "banker": {30, 31},
    "but": set(),
    "lose": {19, 21, 26, 30},
    "interest": {1, 7, 16, 24, 25, 30, 31},
}


def small_manifest():
    return Manifest.from_lines(MINI_MANIFEST)


class TestParsing:
    def test_single_section_fixture(self):
        idx = parse_thesaurus(MINI_SOURCE, small_manifest())
        assert idx.lookup_sections("be") == {0}
        assert idx.lookup_sections("existence") == {0}

    def test_unknown_word_is_empty_set(self):
        idx = parse_thesaurus(MINI_SOURCE, small_manifest())
        assert idx.lookup_sections("zzxq") == set()
        assert idx.polysemy_count("zzxq") == 0

    def test_section_missing_from_manifest(self):
        extra = MINI_SOURCE + "\nSECTION II RELATION\n#2 Relation. N. bearing.\n"
        with pytest.raises(ManifestMismatch):
            parse_thesaurus(extra, small_manifest())

    def test_manifest_section_missing_from_source(self):
        manifest = Manifest.from_lines(
            ["0\tExistence\tAbstract Relations", "1\tRelation\tAbstract Relations"]
        )
        with pytest.raises(ManifestMismatch):
            parse_thesaurus(MINI_SOURCE, manifest)

    def test_wrong_section_name(self):
        bad = MINI_SOURCE.replace("SECTION I EXISTENCE", "SECTION I NONSENSE")
        with pytest.raises(ManifestMismatch):
            parse_thesaurus(bad, small_manifest())

    def test_heading_before_section_is_malformed(self):
        with pytest.raises(MalformedSource):
            parse_thesaurus("CLASS I X\n#1 Orphan. N. word.\n", small_manifest())

    def test_no_class_marker_is_malformed(self):
        with pytest.raises(MalformedSource):
            parse_thesaurus("SECTION I EXISTENCE\n", small_manifest())

    def test_checksum_pinning(self):
        good = source_checksum(MINI_SOURCE)
        parse_thesaurus(MINI_SOURCE, small_manifest(), expected_checksum=good)
        with pytest.raises(ChecksumMismatch):
            parse_thesaurus(MINI_SOURCE, small_manifest(), expected_checksum="0" * 64)
        # --force accepts an unpinned source
        parse_thesaurus(MINI_SOURCE, small_manifest(), expected_checksum="0" * 64, force=True)


class TestFrozenIndex:
    def test_manifest_is_dense_34(self, index):
        assert index.n_sections == 34
        assert [s.id for s in index.manifest.sections] == list(range(34))

    @pytest.mark.parametrize("word,sections", sorted(TABLE1.items()))
    def test_banker_joke_rows(self, index, word, sections):
        assert index.lookup_sections(word) == sections

    def test_lookup_is_case_insensitive(self, index):
        assert index.lookup_sections("Interest") == index.lookup_sections("interest")

    def test_polysemy_of_interest_exceeds_section_count(self, index):
        n = index.polysemy_count("interest")
        assert n >= len(index.lookup_sections("interest"))
        assert n >= 7

    def test_single_heading_word_has_count_one(self):
        idx = parse_thesaurus(MINI_SOURCE, small_manifest())
        assert idx.polysemy_count("subsist") == 1

    def test_entry_invariants(self, index):
        for surface in index.surfaces():
            entry = index.entry(surface)
            assert entry.sections, surface
            assert entry.entry_count >= len(entry.sections)
            assert all(0 <= s <= 33 for s in entry.sections)

    def test_phrase_stored_whole(self, index):
        phrase = index.lookup_sections("change one's mind")
        assert phrase
        # independent of the component words
        assert phrase != index.lookup_sections("change") | index.lookup_sections("mind")


class TestSerialization:
    def test_round_trip_preserves_lookups(self, index):
        clone = ThesaurusIndex.loads(index.dumps())
        assert len(clone) == len(index)
        for surface in index.surfaces():
            assert clone.lookup_sections(surface) == index.lookup_sections(surface)
            assert clone.polysemy_count(surface) == index.polysemy_count(surface)

    def test_serialization_is_stable(self, index):
        assert index.dumps() == ThesaurusIndex.loads(index.dumps()).dumps()

    def test_save_load(self, index, tmp_path):
        path = tmp_path / "idx.txt"
        index.save(path)
        clone = ThesaurusIndex.load(path)
        assert clone.lookup_sections("banker") == {30, 31}
        assert clone.source_checksum == index.source_checksum

    def test_rebuild_is_byte_identical(self, manifest):
        from punsense import defaults

        raw = defaults.default_source_text()
        a = parse_thesaurus(raw, manifest).dumps()
        b = parse_thesaurus(raw, manifest).dumps()
        assert a == b
