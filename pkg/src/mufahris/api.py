"""HTTP+JSON service: ingestion, teacher search, exercises, student sessions.

Answer keys never appear in any response before grading; exercises are
stored server-side (keyed by exercise id) and graded by comparing posted
responses against the stored keys.  Teacher ingestion requires the shared
bearer token from the configuration; student session endpoints are open.
Error bodies follow ``{"error": {"code": ..., "message": ...}}`` with the
documented code for every engine failure.
"""

import secrets
import time
import threading
from typing import Optional

from fastapi import FastAPI, Header, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from .config import EngineConfig
from .errors import (
    CollectionExhausted,
    CorruptStore,
    EmptyText,
    InsufficientDistractors,
    InvalidContext,
    InvalidEncoding,
    InvalidProfile,
    InvalidRecord,
    InvalidRequest,
    MalformedXml,
    MufahrisError,
    NoTargetTokens,
    NotFound,
    SchemaViolation,
    StorageFailure,
    SubclassAbsent,
    UnknownItemId,
    UnknownSession,
)
from .exercises import (
    CLOZE_BANK,
    CLOZE_SELECT,
    EXERCISE_TYPES,
    MULTIPLE_CHOICE,
    QUESTION_ANSWER,
    Session,
    build_collection,
    exercise_to_json,
    generate_cloze_bank,
    generate_cloze_select,
    generate_mcq,
    generate_qa,
    grade,
    report_to_json,
)
from .index import FeatureSelector, PedagogicalContext, search
from .lom import EducationalCategory, GeneralInfo, LomRecord
from .store import CorpusStore

_STATUS_BY_ERROR = (
    (InvalidEncoding, 400),
    (EmptyText, 400),
    (InvalidContext, 400),
    (InvalidRequest, 400),
    (UnknownItemId, 400),
    (InvalidRecord, 400),
    (InvalidProfile, 400),
    (MalformedXml, 400),
    (SchemaViolation, 400),
    (NotFound, 404),
    (UnknownSession, 404),
    (CollectionExhausted, 410),
    (NoTargetTokens, 422),
    (InsufficientDistractors, 422),
    (SubclassAbsent, 422),
    (CorruptStore, 500),
    (StorageFailure, 500),
)


def _status_for(exc: MufahrisError) -> int:
    for cls, status in _STATUS_BY_ERROR:
        if isinstance(exc, cls):
            return status
    return 500


def _error_response(status: int, code: str, message: str, detail=None):
    body = {"error": {"code": code, "message": message}}
    if detail:
        body["error"]["detail"] = detail
    return JSONResponse(status_code=status, content=body)


class TextIn(BaseModel):
    title: str
    body: str
    lomFields: Optional[dict] = None


class FeatureIn(BaseModel):
    kind: str
    value: str


class ContextIn(BaseModel):
    level: int
    category: str
    targetFeature: FeatureIn
    role: str = "teacher"
    difficultyMax: Optional[str] = None
    ageRange: Optional[str] = None


class GenerateIn(BaseModel):
    type: str
    feature: Optional[FeatureIn] = None
    params: Optional[dict] = None


class AnswersIn(BaseModel):
    responses: dict


class SessionIn(BaseModel):
    pedagogicalContext: ContextIn
    seed: int = 0


_LOM_FIELD_MAP = {
    "interactivityType": "interactivity_type",
    "learningResourceType": "learning_resource_type",
    "interactivityLevel": "interactivity_level",
    "semanticDensity": "semantic_density",
    "intendedEndUserRole": "intended_end_user_role",
    "context": "context",
    "typicalAgeRange": "typical_age_range",
    "difficulty": "difficulty",
    "typicalLearningTime": "typical_learning_time",
    "language": "language",
}


def lom_fields_to_record(fields: Optional[dict]) -> LomRecord:
    if not fields:
        return LomRecord()
    general = {}
    educational = {}
    for key, value in fields.items():
        if key == "title":
            general["title"] = str(value)
        elif key in _LOM_FIELD_MAP:
            attr = _LOM_FIELD_MAP[key]
            educational[attr] = int(value) if attr == "typical_learning_time" else str(value)
        else:
            raise InvalidRequest(f"unknown LOM field {key!r}")
    return LomRecord(
        general=GeneralInfo(**general), educational=EducationalCategory(**educational)
    )


def context_from_json(data: ContextIn) -> PedagogicalContext:
    return PedagogicalContext(
        level=data.level,
        category=data.category,
        target_feature=FeatureSelector(((data.targetFeature.kind, data.targetFeature.value),)),
        role=data.role,
        difficulty_max=data.difficultyMax,
        age_range=data.ageRange,
    )


def profile_json(profile) -> dict:
    out = dict(profile.as_dict())
    # printed unreduced, as the counts read (the value is the exact rational)
    out["verbsPerLine"] = (
        None if profile.line_count == 0 else f"{profile.verb_count}/{profile.line_count}"
    )
    return out


def result_json(result) -> dict:
    return {
        "rank": result.rank,
        "textId": result.text_id,
        "title": result.title,
        "lineCount": result.line_count,
        "verbCount": result.verb_count,
        "verbsPerLine": f"{result.verb_count}/{result.line_count}",
        "score": f"{result.score.numerator}/{result.score.denominator}",
    }


class _SessionState:
    def __init__(self, session: Session):
        self.session = session
        self.current = None          # exercise currently in front of the student
        self.touched = time.monotonic()
        self.lock = threading.Lock()


class SessionRegistry:
    """Live sessions keyed by unguessable ids, with idle expiry."""

    def __init__(self, idle_seconds: int):
        self.idle_seconds = idle_seconds
        self._sessions = {}
        self._lock = threading.Lock()

    def create(self, session: Session) -> str:
        session_id = secrets.token_urlsafe(16)   # 128 bits
        session.session_id = session_id
        with self._lock:
            self._sessions[session_id] = _SessionState(session)
        return session_id

    def get(self, session_id: str) -> _SessionState:
        with self._lock:
            state = self._sessions.get(session_id)
            now = time.monotonic()
            if state is not None and now - state.touched > self.idle_seconds:
                del self._sessions[session_id]
                state = None
            if state is None:
                raise UnknownSession(f"no live session {session_id!r}")
            state.touched = now
            return state


def create_app(store: CorpusStore, config: EngineConfig = None) -> FastAPI:
    config = config or store.config
    app = FastAPI(title="mufahris", version="0.1.0")
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )
    sessions = SessionRegistry(config.session_idle_seconds)
    issued_exercises = {}        # exercise_id -> Exercise (keys server-side)

    @app.exception_handler(MufahrisError)
    async def engine_error_handler(request: Request, exc: MufahrisError):
        return _error_response(_status_for(exc), exc.code, str(exc), exc.detail or None)

    @app.exception_handler(RequestValidationError)
    async def validation_error_handler(request: Request, exc: RequestValidationError):
        return _error_response(400, "invalid-request", "malformed request body", str(exc.errors()))

    def require_teacher(authorization: Optional[str]):
        expected = f"Bearer {config.teacher_token}"
        if authorization != expected:
            return _error_response(401, "unauthenticated", "teacher token required")
        return None

    @app.get("/health")
    def health():
        return {"status": "ok", "texts": len(store.list_texts().rows)}

    @app.get("/texts")
    def list_texts():
        rows = store.list_texts().rows
        return {
            "texts": [
                {"textId": r.text_id, "title": r.title, "createdAt": r.created_at}
                for r in rows
            ]
        }

    @app.post("/texts", status_code=201)
    def ingest(payload: TextIn, authorization: Optional[str] = Header(default=None)):
        denied = require_teacher(authorization)
        if denied is not None:
            return denied
        manual = lom_fields_to_record(payload.lomFields)
        text_id = store.add_text(payload.title, payload.body, manual_fields=manual)
        record = store.load_lom(text_id)
        return {"textId": text_id, "profile": profile_json(record.educational.description)}

    @app.post("/search")
    def run_search(payload: ContextIn):
        cp = context_from_json(payload)
        results = search(cp, store.models(), config)
        return {"results": [result_json(r) for r in results]}

    def _generate(annotated, kind: str, selector, params: dict):
        params = params or {}
        seed = int(params.get("seed", 0))
        if kind == CLOZE_BANK:
            return generate_cloze_bank(
                annotated,
                store.lexicon,
                selector,
                max_blanks=int(params.get("maxBlanks", 5)),
                bank_extras=int(params.get("bankExtras", 2)),
                seed=seed,
            )
        if kind == CLOZE_SELECT:
            return generate_cloze_select(
                annotated,
                store.lexicon,
                selector,
                options_per_blank=int(params.get("optionsPerBlank", 4)),
                max_blanks=int(params.get("maxBlanks", 5)),
                seed=seed,
            )
        if kind == MULTIPLE_CHOICE:
            return generate_mcq(annotated, max_items=int(params.get("maxItems", 4)), seed=seed)
        if kind == QUESTION_ANSWER:
            targets = params.get("targets") or ["pronoun", "adverbial", "demonstrative"]
            return generate_qa(annotated, targets, seed=seed)
        raise InvalidRequest(f"unknown exercise type {kind!r}; expected one of {EXERCISE_TYPES}")

    @app.post("/texts/{text_id}/exercises")
    def generate_for_text(text_id: str, payload: GenerateIn):
        annotated = store.annotated(text_id)
        if payload.feature is not None:
            selector = FeatureSelector(((payload.feature.kind, payload.feature.value),))
        else:
            selector = FeatureSelector((("token-class", "verb"),))
        exercise = _generate(annotated, payload.type, selector, payload.params)
        issued_exercises[exercise.exercise_id] = exercise
        return exercise_to_json(exercise, with_keys=False)

    @app.post("/exercises/{exercise_id}/answers")
    def grade_exercise(exercise_id: str, payload: AnswersIn):
        exercise = issued_exercises.get(exercise_id)
        if exercise is None:
            raise NotFound(f"no issued exercise {exercise_id!r}")
        report = grade(exercise, dict(payload.responses))
        return report_to_json(report)

    @app.post("/sessions", status_code=201)
    def open_session(payload: SessionIn):
        cp = context_from_json(payload.pedagogicalContext)
        models = store.models()
        ranked = [r.text_id for r in search(cp, models, config)]
        annotated_by_id = {tid: store.annotated(tid) for tid in ranked}
        collection = build_collection(
            cp, ranked, annotated_by_id, store.lexicon, config, seed=payload.seed
        )
        session = Session("pending", cp, collection, seed=payload.seed)
        session_id = sessions.create(session)
        state = sessions.get(session_id)
        exercise = state.session.next_exercise()
        state.current = exercise
        return {
            "sessionId": session_id,
            "collectionSize": len(collection),
            "exercise": exercise_to_json(exercise, with_keys=False),
        }

    @app.post("/sessions/{session_id}/answers")
    def grade_session(session_id: str, payload: AnswersIn):
        state = sessions.get(session_id)
        with state.lock:
            if state.current is None:
                raise InvalidRequest("no exercise issued for this session")
            report = grade(state.current, dict(payload.responses))
            return report_to_json(report)

    @app.post("/sessions/{session_id}/next")
    def next_exercise(session_id: str):
        state = sessions.get(session_id)
        with state.lock:
            exercise = state.session.next_exercise()
            state.current = exercise
            return {"exercise": exercise_to_json(exercise, with_keys=False)}

    return app


def serve(store: CorpusStore, config: EngineConfig):
    import uvicorn

    uvicorn.run(create_app(store, config), host=config.host, port=config.port)
