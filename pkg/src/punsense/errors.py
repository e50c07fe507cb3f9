"""Exception hierarchy for the punsense package."""


class PunsenseError(Exception):
    """Base class for all domain errors."""


class MalformedSource(PunsenseError):
    """Thesaurus source text lacks the expected structure markers."""


class ManifestMismatch(PunsenseError):
    """Section structure in the source disagrees with the manifest."""


class ChecksumMismatch(PunsenseError):
    """Source text does not match the pinned checksum."""


class EmptyInput(PunsenseError):
    """Whitespace-only or empty input where text was required."""


class BadPartition(PunsenseError):
    """Partition sizes do not sum to the vector length."""


class SingleClassData(PunsenseError):
    """Training data does not contain both classes."""


class NonConvergence(PunsenseError):
    """Optimizer hit its iteration cap; carries the partial model."""

    def __init__(self, message, model=None):
        super().__init__(message)
        self.model = model


class DimensionMismatch(PunsenseError):
    """Vector length does not match the model's feature count."""


class LengthMismatch(PunsenseError):
    """Prediction and gold label lists differ in length."""


class NoSemanticContent(PunsenseError):
    """No word in the sentence maps to any thesaurus Section."""


class WordAbsent(PunsenseError):
    """Requested word does not occur in the token sequence."""


class CorpusError(PunsenseError):
    """Corpus file problem; carries the 1-based row number."""

    def __init__(self, message, row=None):
        super().__init__(message)
        self.row = row


class CorpusParseError(CorpusError):
    pass


class DuplicateId(CorpusError):
    pass


class EmptyText(CorpusError):
    pass


class MissingGold(CorpusError):
    pass
