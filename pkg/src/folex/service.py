"""Stateless HTTP JSON facade over the two checkers.

Every graded outcome, including a rejected submission, is an HTTP 200:
a wrong answer is not a transport error. 400 is reserved for malformed
request bodies and 404 for unknown exercise ids. Exercise listings never
carry accepted formalizations; grid listings expose the yellow problem
squares (they are the question shown to the student, not the answer).
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from .dictation import DictationExercise, check_dictation
from .grid import GRID_SIZE, GridExercise, check_grid
from .packs import ExercisePack, builtin_packs


class CheckRequest(BaseModel):
    model_config = {"extra": "forbid"}

    formula: str = Field(min_length=1)


def _coords(squares) -> list[list[int]]:
    return [[c.col, c.row] for c in sorted(squares)]


def _exercise_entry(ex: DictationExercise | GridExercise) -> dict:
    if isinstance(ex, DictationExercise):
        return {"id": ex.id, "type": "dictation", "prompt": ex.prompt}
    return {
        "id": ex.id,
        "type": "grid",
        "description": ex.description,
        "constants": {name: [c.col, c.row] for name, c in sorted(ex.constants.items())},
        "grid_size": GRID_SIZE,
        "yellow": _coords(ex.target),
    }


def check_response(ex: DictationExercise | GridExercise, formula: str) -> dict:
    if isinstance(ex, DictationExercise):
        verdict = check_dictation(ex, formula)
        body = {"category": verdict.category.value, "message": verdict.message}
        if verdict.rejection is not None:
            reason = {"kind": verdict.rejection.kind, "detail": verdict.rejection.detail}
            if verdict.rejection.offset is not None:
                reason["offset"] = verdict.rejection.offset
            body["reason"] = reason
        return body
    verdict = check_grid(ex, formula)
    body = {"category": verdict.category.value, "message": verdict.message}
    if verdict.rejection is not None:
        reason = {"kind": verdict.rejection.kind, "detail": verdict.rejection.detail}
        if verdict.rejection.offset is not None:
            reason["offset"] = verdict.rejection.offset
        body["reason"] = reason
    if verdict.coloring is not None:
        body["coloring"] = {
            "green": _coords(verdict.coloring.green),
            "red": _coords(verdict.coloring.red),
            "yellow": _coords(verdict.coloring.yellow),
        }
    return body


def create_app(
    packs: list[ExercisePack] | None = None, cors_origin: str | None = None
) -> FastAPI:
    """Build the service over the given packs (builtins by default)."""
    if packs is None:
        packs = builtin_packs()
    exercises: dict[str, DictationExercise | GridExercise] = {}
    for pack in packs:
        for ex in pack.exercises:
            if ex.id in exercises:
                raise ValueError(f"duplicate exercise id across packs: {ex.id!r}")
            exercises[ex.id] = ex

    app = FastAPI(title="folex", version="0.1.0")
    if cors_origin:
        app.add_middleware(
            CORSMiddleware,
            allow_origins=[cors_origin],
            allow_methods=["*"],
            allow_headers=["*"],
        )

    @app.exception_handler(RequestValidationError)
    async def bad_request(request: Request, exc: RequestValidationError):
        return JSONResponse(
            status_code=400,
            content={"error": "bad_request", "detail": str(exc.errors())},
        )

    @app.get("/api/exercises")
    def list_exercises() -> list[dict]:
        return [_exercise_entry(ex) for ex in exercises.values()]

    @app.get("/api/exercises/{exercise_id}")
    def get_exercise(exercise_id: str):
        ex = exercises.get(exercise_id)
        if ex is None:
            return JSONResponse(status_code=404, content={"error": "unknown_exercise"})
        return _exercise_entry(ex)

    @app.post("/api/exercises/{exercise_id}/check")
    def check(exercise_id: str, request: CheckRequest):
        ex = exercises.get(exercise_id)
        if ex is None:
            return JSONResponse(status_code=404, content={"error": "unknown_exercise"})
        return check_response(ex, request.formula)

    return app
