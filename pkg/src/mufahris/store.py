"""On-disk corpus store: texts, LOM sidecars, manifest.

Layout under the store directory::

    manifest                  # tab-separated rows, one per stored text
    <textId>/text.txt         # body, byte-exact as ingested
    <textId>/lom.xml          # LOM record with the embedded profile

Every write goes through a temp file and an atomic rename; the manifest is
written last, so a crash never leaves a manifest row pointing at missing
files.  Text ids are zero-padded sequence numbers and are never reused.
"""

import datetime
import hashlib
import os
import tempfile
import threading
from dataclasses import dataclass, replace as dc_replace
from pathlib import Path

from .analyzer import Lexicon, analyze_text, bundled_lexicon, decode_utf8, dump_profile
from .config import EngineConfig
from .errors import CorruptStore, EmptyText, InvalidRequest, NotFound, StorageFailure
from .index import DocumentModel, build_model
from .lom import (
    EducationalCategory,
    GeneralInfo,
    LomRecord,
    embed_profile,
    infer_difficulty,
    parse_xml,
    serialize_xml,
)

MANIFEST_NAME = "manifest"
MANIFEST_HEADER = "# mufahris corpus manifest v1"


@dataclass(frozen=True)
class TextEntry:
    text_id: str
    title: str
    body: str
    created_at: str


@dataclass(frozen=True)
class ManifestRow:
    text_id: str
    title: str
    text_path: str
    lom_path: str
    profile_digest: str
    created_at: str


@dataclass(frozen=True)
class CorpusManifest:
    rows: tuple = ()

    def ids(self):
        return [row.text_id for row in self.rows]


def profile_digest(profile) -> str:
    return hashlib.sha256(dump_profile(profile).encode("utf-8")).hexdigest()


def _atomic_write(path: Path, data: bytes):
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=".tmp-")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except OSError as exc:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise StorageFailure(f"writing {path}: {exc}") from exc


class CorpusStore:
    """Single-writer, multi-reader store over one directory."""

    def __init__(self, root, lexicon: Lexicon = None, config: EngineConfig = None):
        self.root = Path(root)
        self.lexicon = lexicon or bundled_lexicon()
        self.config = config or EngineConfig()
        self._write_lock = threading.Lock()
        self.root.mkdir(parents=True, exist_ok=True)

    # -- manifest ----------------------------------------------------------

    def _manifest_path(self) -> Path:
        return self.root / MANIFEST_NAME

    def list_texts(self) -> CorpusManifest:
        path = self._manifest_path()
        if not path.exists():
            return CorpusManifest()
        rows = []
        for line in path.read_text(encoding="utf-8").splitlines():
            if not line.strip() or line.startswith("#"):
                continue
            cols = line.split("\t")
            if len(cols) != 6:
                raise CorruptStore(f"manifest row has {len(cols)} columns")
            rows.append(ManifestRow(*cols))
        rows.sort(key=lambda r: r.text_id)
        return CorpusManifest(tuple(rows))

    def _write_manifest(self, rows):
        lines = [MANIFEST_HEADER]
        lines.append("# textId\ttitle\ttextPath\tlomPath\tprofileDigest\tcreatedAt")
        for row in sorted(rows, key=lambda r: r.text_id):
            lines.append(
                "\t".join(
                    (row.text_id, row.title, row.text_path, row.lom_path, row.profile_digest, row.created_at)
                )
            )
        _atomic_write(self._manifest_path(), ("\n".join(lines) + "\n").encode("utf-8"))

    def _row(self, text_id: str) -> ManifestRow:
        for row in self.list_texts().rows:
            if row.text_id == text_id:
                return row
        raise NotFound(f"no text {text_id!r}")

    def _next_id(self) -> str:
        rows = self.list_texts().rows
        highest = max((int(r.text_id) for r in rows), default=0)
        return f"{highest + 1:04d}"

    # -- ingestion ---------------------------------------------------------

    def add_text(self, title: str, body, manual_fields: LomRecord = None) -> str:
        """Ingest a text: analyze, build its LOM record, persist atomically.

        Manual fields (title, difficulty, context, ...) merge over the
        computed record; the grammatical profile always comes from analysis.
        """
        text = decode_utf8(body)
        if not text.strip():
            raise EmptyText("body is empty after trimming")
        if "\t" in title or "\n" in title:
            raise InvalidRequest("title must not contain tabs or newlines")
        with self._write_lock:
            text_id = self._next_id()
            annotated = analyze_text(text_id, text, self.lexicon)
            record = self._compose_record(text_id, title, annotated.profile, manual_fields)
            created = datetime.datetime.now(datetime.timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")
            text_rel = f"{text_id}/text.txt"
            lom_rel = f"{text_id}/lom.xml"
            _atomic_write(self.root / text_rel, text.encode("utf-8"))
            _atomic_write(self.root / lom_rel, serialize_xml(record))
            rows = list(self.list_texts().rows)
            rows.append(
                ManifestRow(
                    text_id=text_id,
                    title=title,
                    text_path=text_rel,
                    lom_path=lom_rel,
                    profile_digest=profile_digest(annotated.profile),
                    created_at=created,
                )
            )
            self._write_manifest(rows)
            return text_id

    def _compose_record(self, text_id, title, profile, manual_fields):
        base = manual_fields or LomRecord()
        general = GeneralInfo(
            identifier=text_id,
            title=base.general.title or title,
            language=base.general.language or "ar",
        )
        educational = base.educational
        if educational.difficulty is None:
            educational = dc_replace(
                educational, difficulty=infer_difficulty(profile, self.config)
            )
        if educational.language is None:
            educational = dc_replace(educational, language="ar")
        record = LomRecord(
            general=general,
            educational=educational,
            other_categories=base.other_categories,
        )
        return embed_profile(record, profile)

    # -- reads -------------------------------------------------------------

    def get_text(self, text_id: str) -> TextEntry:
        row = self._row(text_id)
        path = self.root / row.text_path
        if not path.exists():
            raise CorruptStore(f"manifest points at missing {row.text_path}")
        body = path.read_text(encoding="utf-8")
        annotated = analyze_text(text_id, body, self.lexicon)
        if profile_digest(annotated.profile) != row.profile_digest:
            raise CorruptStore(f"text {text_id} does not match its profile digest")
        return TextEntry(text_id=text_id, title=row.title, body=body, created_at=row.created_at)

    def load_lom(self, text_id: str) -> LomRecord:
        row = self._row(text_id)
        path = self.root / row.lom_path
        if not path.exists():
            raise CorruptStore(f"manifest points at missing {row.lom_path}")
        record = parse_xml(path.read_bytes())
        profile = record.educational.description
        if profile is None or profile_digest(profile) != row.profile_digest:
            raise CorruptStore(f"LOM profile of {text_id} does not match its digest")
        return record

    def annotated(self, text_id: str):
        entry = self.get_text(text_id)
        return analyze_text(text_id, entry.body, self.lexicon)

    def models(self) -> list:
        """Document models for retrieval, ordered by text id."""
        out = []
        for row in self.list_texts().rows:
            annotated = self.annotated(row.text_id)
            record = self.load_lom(row.text_id)
            out.append(build_model(annotated, record, self.config))
        return out

    # -- maintenance -------------------------------------------------------

    def rebuild_index(self) -> int:
        """Re-analyze everything and refresh profiles, digests, manifest.

        Idempotent: a second run rewrites identical content.
        """
        with self._write_lock:
            rows = []
            count = 0
            for row in self.list_texts().rows:
                path = self.root / row.text_path
                if not path.exists():
                    raise CorruptStore(f"manifest points at missing {row.text_path}")
                body = path.read_text(encoding="utf-8")
                annotated = analyze_text(row.text_id, body, self.lexicon)
                record = parse_xml((self.root / row.lom_path).read_bytes())
                record = embed_profile(record, annotated.profile)
                _atomic_write(self.root / row.lom_path, serialize_xml(record))
                rows.append(dc_replace(row, profile_digest=profile_digest(annotated.profile)))
                count += 1
            self._write_manifest(rows)
            return count
