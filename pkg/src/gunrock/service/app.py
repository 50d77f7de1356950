"""HTTP JSON API over the conversation engine."""

from __future__ import annotations

from fastapi import FastAPI
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from gunrock.errors import InvalidInputError, SessionBusyError, SessionNotFoundError
from gunrock.phonetics.correct import TimedToken
from gunrock.service.engine import ConversationEngine


class OpenSessionRequest(BaseModel):
    user_ref: str = Field(min_length=1)


class TokenModel(BaseModel):
    word: str
    start_ms: int
    end_ms: int


class TurnRequest(BaseModel):
    tokens: list[TokenModel] | None = None
    text: str | None = None


class RatingRequest(BaseModel):
    stars: int


def create_app(engine: ConversationEngine) -> FastAPI:
    app = FastAPI(title="gunrock", version="0.1.0")
    app.state.engine = engine

    @app.exception_handler(SessionNotFoundError)
    async def _not_found(_request, exc):
        return JSONResponse(status_code=404, content={"error": str(exc)})

    @app.exception_handler(InvalidInputError)
    async def _bad_input(_request, exc):
        return JSONResponse(status_code=400, content={"error": str(exc)})

    @app.exception_handler(SessionBusyError)
    async def _busy(_request, exc):
        return JSONResponse(status_code=409, content={"error": str(exc)})

    @app.get("/healthz")
    def healthz():
        return {"ok": engine.log.healthy}

    @app.post("/sessions")
    def open_session(req: OpenSessionRequest):
        session_id, greeting = engine.open_session(req.user_ref)
        return {"session_id": session_id, "greeting": greeting}

    @app.post("/sessions/{session_id}/turns")
    def handle_turn(session_id: str, req: TurnRequest):
        tokens = None
        if req.tokens is not None:
            tokens = [TimedToken(t.word.lower(), t.start_ms, t.end_ms) for t in req.tokens]
        response, ssml, debug = engine.handle_turn(session_id, tokens=tokens, text=req.text)
        return {"response": response, "ssml": ssml, "debug": debug}

    @app.post("/sessions/{session_id}/rating")
    def submit_rating(session_id: str, req: RatingRequest):
        record = engine.close_session(session_id, rating=req.stars)
        return {
            "session_id": record.session_id,
            "rating": record.rating,
            "turns": len(record.turns),
        }

    @app.get("/sessions/{session_id}/log")
    def session_log(session_id: str):
        return {"lines": engine.session_log(session_id)}

    return app
