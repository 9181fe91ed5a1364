"""HTTP service exposing every job command.

POST /jobs/{command} with a JobRequest body runs the command and returns a
Report.  Errors map to status codes: 400 for parse errors, 422 for
precondition violations, 500 for internal invariant failures.
"""
from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from ..jobs import InternalInvariantError, PreconditionError, run_job
from ..poly import ParseError
from .models import ErrorBody, JobRequest, Report

COMMANDS = [
    "gb",
    "support",
    "rankvar",
    "ext",
    "carlson",
    "benson",
    "localcoh",
    "triangle",
    "mv-check",
    "decompose",
    "axioms",
]


def create_app() -> FastAPI:
    app = FastAPI(title="suppvar", version="1.0.0")

    @app.exception_handler(ParseError)
    async def _parse_error(request: Request, exc: ParseError):
        return JSONResponse(
            status_code=400, content=ErrorBody(error=str(exc), code=1).model_dump()
        )

    @app.exception_handler(PreconditionError)
    async def _precondition(request: Request, exc: PreconditionError):
        return JSONResponse(
            status_code=422, content=ErrorBody(error=str(exc), code=2).model_dump()
        )

    @app.exception_handler(InternalInvariantError)
    async def _invariant(request: Request, exc: InternalInvariantError):
        return JSONResponse(
            status_code=500, content=ErrorBody(error=str(exc), code=3).model_dump()
        )

    @app.get("/health")
    async def health():
        return {"status": "ok", "commands": COMMANDS}

    @app.post("/jobs/{command}", response_model=Report)
    async def run(command: str, req: JobRequest):
        if command not in COMMANDS:
            raise ParseError(f"unknown command {command!r}")
        if command != "axioms" and req.input is None:
            raise ParseError(f"command {command!r} requires an input document")
        return run_job(command, req.input or {}, req.options)

    return app


app = create_app()
