"""JSON-over-HTTP API for assessment, what-if sweeps, config, and applicants.

Single-operator tool: no authentication, binds to loopback unless told
otherwise.  All mutations (applicant CRUD, config replace) are serialized
through one lock and hit disk before the response goes out; assessments read
whatever config snapshot was current when they started.
"""

from __future__ import annotations

import hashlib
import json
import threading
import uuid
from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel, ConfigDict
from starlette.exceptions import HTTPException as StarletteHTTPException

from .errors import (
    ApplicantValidationError,
    ConfigFormatError,
    DefinitionError,
    DuplicateApplicantError,
    InputDomainError,
    NoRuleFiredError,
    UnknownApplicantError,
)
from .loan import Applicant, FisConfig, assess, default_config, what_if
from .store import (
    ApplicantStore,
    applicant_to_document,
    assessment_to_document,
    config_from_document,
    config_to_document,
    save_config,
)

DEFAULT_ADDR = "127.0.0.1:8080"
MAX_WHATIF_STEPS = 1001

# the closed set of machine-readable error codes this API emits
ERROR_CODES = frozenset(
    {
        "validation_failed",
        "no_rule_fired",
        "not_found",
        "duplicate_id",
        "too_many_steps",
        "method_not_allowed",
        "internal_error",
    }
)


class ApiException(Exception):
    def __init__(self, status: int, code: str, detail: str, field_errors=None):
        assert code in ERROR_CODES
        self.status = status
        self.code = code
        self.detail = detail
        self.field_errors = field_errors
        super().__init__(detail)


def _error_response(status: int, code: str, detail: str, field_errors=None) -> JSONResponse:
    body = {"status": status, "code": code, "detail": detail}
    if field_errors:
        body["field_errors"] = [{"field": f, "message": m} for f, m in field_errors]
    return JSONResponse(status_code=status, content=body)


class ApplicantBody(BaseModel):
    model_config = ConfigDict(extra="forbid")

    id: str | None = None
    name: str = ""
    income: float
    loan_amount: float
    collateral_value: float


class WhatIfBody(BaseModel):
    model_config = ConfigDict(extra="forbid")

    applicant: ApplicantBody
    vary: str
    steps: int = 101


def _content_id(body: ApplicantBody) -> str:
    """Deterministic id for ad-hoc scoring: same fields, same id."""
    payload = json.dumps(
        [body.name, body.income, body.loan_amount, body.collateral_value],
        separators=(",", ":"),
    )
    return "adhoc-" + hashlib.sha256(payload.encode()).hexdigest()[:12]


def _to_applicant(body: ApplicantBody, generated_id: str | None = None) -> Applicant:
    return Applicant(
        id=body.id or generated_id or _content_id(body),
        name=body.name,
        income=body.income,
        loan_amount=body.loan_amount,
        collateral_value=body.collateral_value,
    )


def create_app(
    data_dir, config: FisConfig | None = None, ui_dir: Path | None = None
) -> FastAPI:
    """Build the application around a data directory.

    ``data_dir`` holds ``config.json`` (created on first start, replaced by
    PUT /config) and ``applicants.json`` (the CRUD store).
    """
    data_dir = Path(data_dir)
    data_dir.mkdir(parents=True, exist_ok=True)
    config_path = data_dir / "config.json"
    if config_path.exists():
        from .store import load_config

        active_config = load_config(config_path)
    else:
        active_config = config or default_config()
        save_config(active_config, config_path)

    app = FastAPI(title="loan eligibility service", docs_url=None, redoc_url=None)
    app.state.config = active_config
    app.state.store = ApplicantStore(data_dir / "applicants.json")
    app.state.write_lock = threading.Lock()

    @app.exception_handler(ApiException)
    async def on_api_exception(request: Request, exc: ApiException):
        return _error_response(exc.status, exc.code, exc.detail, exc.field_errors)

    @app.exception_handler(RequestValidationError)
    async def on_request_validation(request: Request, exc: RequestValidationError):
        field_errors = []
        for err in exc.errors():
            loc = [str(part) for part in err["loc"] if part != "body"]
            field_errors.append((".".join(loc) or "body", err["msg"]))
        return _error_response(422, "validation_failed", "request body invalid", field_errors)

    @app.exception_handler(StarletteHTTPException)
    async def on_http_exception(request: Request, exc: StarletteHTTPException):
        code = {404: "not_found", 405: "method_not_allowed"}.get(exc.status_code, "internal_error")
        return _error_response(exc.status_code, code, str(exc.detail))

    @app.exception_handler(Exception)
    async def on_unexpected(request: Request, exc: Exception):
        return _error_response(500, "internal_error", f"{type(exc).__name__}: {exc}")

    def run_assess(body: ApplicantBody) -> dict:
        applicant = _to_applicant(body)
        try:
            assessment = assess(applicant, app.state.config)
        except ApplicantValidationError as exc:
            raise ApiException(422, "validation_failed", str(exc), exc.field_errors) from None
        except NoRuleFiredError as exc:
            raise ApiException(422, "no_rule_fired", str(exc)) from None
        return assessment_to_document(assessment)

    @app.post("/api/v1/assess")
    def assess_endpoint(body: ApplicantBody):
        return run_assess(body)

    @app.get("/api/v1/config")
    def get_config():
        return config_to_document(app.state.config)

    @app.put("/api/v1/config")
    def put_config(document: dict):
        try:
            new_config = config_from_document(document)
        except ConfigFormatError as exc:
            raise ApiException(
                422, "validation_failed", str(exc), [(exc.field_path, str(exc))]
            ) from None
        with app.state.write_lock:
            save_config(new_config, config_path)
            app.state.config = new_config
        return config_to_document(new_config)

    @app.post("/api/v1/whatif")
    def whatif_endpoint(body: WhatIfBody):
        if body.steps > MAX_WHATIF_STEPS:
            raise ApiException(
                413, "too_many_steps",
                f"steps={body.steps} exceeds the cap of {MAX_WHATIF_STEPS}",
            )
        applicant = _to_applicant(body.applicant)
        try:
            points = what_if(applicant, app.state.config, body.vary, body.steps)
        except ApplicantValidationError as exc:
            raise ApiException(422, "validation_failed", str(exc), exc.field_errors) from None
        except (DefinitionError, InputDomainError) as exc:
            raise ApiException(422, "validation_failed", str(exc), [("vary", str(exc))]) from None
        return [
            {"value": p.value, "score": p.score, "decision": p.decision.value} for p in points
        ]

    @app.post("/api/v1/applicants", status_code=201)
    def create_applicant(body: ApplicantBody):
        applicant = _to_applicant(body, generated_id=uuid.uuid4().hex)
        try:
            applicant.validate()
        except ApplicantValidationError as exc:
            raise ApiException(422, "validation_failed", str(exc), exc.field_errors) from None
        with app.state.write_lock:
            try:
                app.state.store.add(applicant)
            except DuplicateApplicantError as exc:
                raise ApiException(409, "duplicate_id", str(exc)) from None
        return applicant_to_document(applicant)

    @app.get("/api/v1/applicants")
    def list_applicants(limit: int | None = None):
        records = app.state.store.list()
        if limit is not None:
            records = records[: max(limit, 0)]
        return [applicant_to_document(a) for a in records]

    @app.get("/api/v1/applicants/{applicant_id}")
    def get_applicant(applicant_id: str):
        try:
            return applicant_to_document(app.state.store.get(applicant_id))
        except UnknownApplicantError as exc:
            raise ApiException(404, "not_found", str(exc)) from None

    @app.put("/api/v1/applicants/{applicant_id}")
    def update_applicant(applicant_id: str, body: ApplicantBody):
        if body.id is not None and body.id != applicant_id:
            raise ApiException(
                422, "validation_failed", "body id does not match the path id",
                [("id", f"body says {body.id!r}, path says {applicant_id!r}")],
            )
        applicant = _to_applicant(body, generated_id=applicant_id)
        try:
            applicant.validate()
        except ApplicantValidationError as exc:
            raise ApiException(422, "validation_failed", str(exc), exc.field_errors) from None
        with app.state.write_lock:
            try:
                app.state.store.update(applicant)
            except UnknownApplicantError as exc:
                raise ApiException(404, "not_found", str(exc)) from None
        return applicant_to_document(applicant)

    @app.delete("/api/v1/applicants/{applicant_id}", status_code=204)
    def delete_applicant(applicant_id: str):
        with app.state.write_lock:
            try:
                app.state.store.delete(applicant_id)
            except UnknownApplicantError as exc:
                raise ApiException(404, "not_found", str(exc)) from None

    if ui_dir is not None and Path(ui_dir).is_dir():
        app.mount("/", StaticFiles(directory=ui_dir, html=True), name="ui")

    return app


def serve(addr: str = DEFAULT_ADDR, data_dir="tsuka-data", config=None, ui_dir=None) -> None:
    import uvicorn

    host, _, port = addr.partition(":")
    app = create_app(data_dir, config=config, ui_dir=ui_dir)
    uvicorn.run(app, host=host or "127.0.0.1", port=int(port or 8080), log_level="warning")
