"""Exception hierarchy shared by all engine modules.

Every error carries a stable machine-readable ``code`` so that the CLI can
print single-line parsable errors and the HTTP layer can map each failure
to exactly one documented API error code.
"""


class MufahrisError(Exception):
    """Base class for all domain errors."""

    code = "error"

    def __init__(self, message: str = "", **detail):
        super().__init__(message or self.__doc__)
        self.detail = detail


class InvalidEncoding(MufahrisError):
    """Input bytes are not valid UTF-8."""

    code = "invalid-encoding"


class UnknownToken(MufahrisError):
    """No segmentation candidate exists for the token."""

    code = "unknown-token"


class NoMatch(MufahrisError):
    """No verb template fits the stem."""

    code = "no-match"


class InvalidRecord(MufahrisError):
    """LOM record failed validation before serialization."""

    code = "invalid-record"


class InvalidProfile(MufahrisError):
    """Grammatical profile violates its count invariants."""

    code = "invalid-profile"


class MalformedXml(MufahrisError):
    """Document is not well-formed XML."""

    code = "malformed-xml"


class SchemaViolation(MufahrisError):
    """XML document does not have the expected LOM root."""

    code = "schema-violation"


class InvalidContext(MufahrisError):
    """Pedagogical context is inconsistent (feature/level mismatch or bad vocabulary)."""

    code = "invalid-context"


class ZeroLines(MufahrisError):
    """A ranked result has lineCount 0; verb density is undefined."""

    code = "zero-lines"


class NoTargetTokens(MufahrisError):
    """Text contains no token matching the requested feature."""

    code = "no-target-tokens"


class InsufficientDistractors(MufahrisError):
    """Lexicon lacks enough same-class distractors."""

    code = "insufficient-distractors"

    def __init__(self, message: str = "", word_class: str = "", subclass: str = "", **detail):
        super().__init__(message, word_class=word_class, subclass=subclass, **detail)
        self.word_class = word_class
        self.subclass = subclass


class SubclassAbsent(MufahrisError):
    """Requested subclass does not occur in any candidate sentence."""

    code = "subclass-absent"

    def __init__(self, message: str = "", subclass: str = "", **detail):
        super().__init__(message, subclass=subclass, **detail)
        self.subclass = subclass


class InvalidRequest(MufahrisError):
    """Degenerate or malformed generation request."""

    code = "invalid-request"


class UnknownItemId(MufahrisError):
    """A response references an item id the exercise does not contain."""

    code = "unknown-item"


class CollectionExhausted(MufahrisError):
    """Every exercise of the session collection has been used."""

    code = "collection-exhausted"


class NotFound(MufahrisError):
    """Requested text id is not in the store."""

    code = "not-found"


class EmptyText(MufahrisError):
    """Ingested body is empty after trimming."""

    code = "empty-text"


class CorruptStore(MufahrisError):
    """Stored content does not match its manifest digest."""

    code = "corrupt-store"


class StorageFailure(MufahrisError):
    """Filesystem operation failed during ingestion."""

    code = "storage-failure"


class UnknownSession(MufahrisError):
    """Session id is unknown or expired."""

    code = "unknown-session"
