"""Application entry point defining the HTTP API."""
from __future__ import annotations

import logging
import os
from typing import Any, Callable, TypeVar

from fastapi import APIRouter, Body, FastAPI, HTTPException, Request, Response, status
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from ontoqubit.application.process_reports import (
    DeleteReportUseCase,
    RetrieveReportUseCase,
    RunSuiteUseCase,
    UnknownSuiteError,
    suite_names,
)
from ontoqubit.config.settings import Settings, get_settings
from ontoqubit.domain.repositories.report_repository import ReportRepository
from ontoqubit.infrastructure.repositories.json_report_repository import JsonReportRepository

_MUTATING_METHODS = frozenset({"POST", "PUT", "PATCH", "DELETE"})

_ResultT = TypeVar("_ResultT")


def create_app(
    report_repo: ReportRepository | None = None,
    settings: Settings | None = None,
) -> FastAPI:
    """Create and configure the FastAPI application instance."""

    settings = settings or get_settings()
    report_repository = (
        report_repo
        if report_repo is not None
        else JsonReportRepository(settings.reports_directory)
    )

    suite_runner = RunSuiteUseCase(report_repository, settings)
    report_retriever = RetrieveReportUseCase(report_repository)
    report_deleter = DeleteReportUseCase(report_repository)

    app = FastAPI(title="Ontoqubit Verification API", version=settings.app_version)

    @app.get("/", status_code=status.HTTP_200_OK)
    async def get_root() -> dict[str, str]:
        """Return a simple heartbeat response for uptime monitoring."""

        return {"message": "RUNNING ONTOQUBIT"}

    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_credentials=False,
        allow_methods=["*"],
        allow_headers=["*"],
    )
    _install_api_key_guard(app, prefix=settings.api_prefix)

    api_router = APIRouter(prefix=settings.api_prefix)

    @api_router.get("/status", status_code=status.HTTP_200_OK)
    async def get_status() -> dict:
        """Return the operational status and version of the service."""

        return {"status": "ok", "version": settings.app_version}

    @api_router.get("/suites", status_code=status.HTTP_200_OK)
    async def list_suites() -> dict:
        """Return the names of the runnable suites."""

        return {"suites": suite_names()}

    @api_router.post("/suites/{suite}", status_code=status.HTTP_201_CREATED)
    def run_suite(
        suite: str, response: Response, payload: dict[str, Any] | None = Body(default=None)
    ) -> dict:
        """Run ``suite`` with the JSON overrides, store the report and return it."""

        report = _execute_processor(lambda: suite_runner.execute(suite, payload))
        response.headers["Location"] = f"{settings.api_prefix}/reports/{suite}/last"
        return report.to_dict()

    @api_router.get("/reports/{suite}/last", status_code=status.HTTP_200_OK)
    async def get_last_report(suite: str) -> dict:
        """Retrieve the last stored report of ``suite``."""

        report = _execute_processor(lambda: report_retriever.execute(suite))
        if report is None:
            raise HTTPException(
                status_code=status.HTTP_404_NOT_FOUND,
                detail=f"No stored report for suite {suite!r}.",
            )
        return report.to_dict()

    @api_router.delete("/reports/{suite}/last", status_code=status.HTTP_204_NO_CONTENT)
    async def delete_last_report(suite: str) -> Response:
        """Remove the last stored report of ``suite``."""

        deleted = _execute_processor(lambda: report_deleter.execute(suite))
        if not deleted:
            raise HTTPException(
                status_code=status.HTTP_404_NOT_FOUND,
                detail=f"No stored report for suite {suite!r}.",
            )
        return Response(status_code=status.HTTP_204_NO_CONTENT)

    app.include_router(api_router)
    return app


def _install_api_key_guard(app: FastAPI, *, prefix: str) -> None:
    """Reject mutating requests under ``prefix`` without a valid ``X-API-Key`` header.

    The guard is disabled when ``ONTOQUBIT_API_KEY`` is empty, which keeps local
    runs free of extra setup.
    """

    expected = os.getenv("ONTOQUBIT_API_KEY", "").strip()
    if not expected:
        logging.getLogger("uvicorn.error").warning(
            "ONTOQUBIT_API_KEY is not set; suite runs and deletions are unprotected"
        )
        return

    @app.middleware("http")
    async def _api_key_middleware(request: Request, call_next):
        if request.method in _MUTATING_METHODS and request.url.path.startswith(prefix):
            provided = request.headers.get("X-API-Key", "")
            if provided != expected:
                return JSONResponse(
                    {"detail": "Invalid or missing API key"},
                    status_code=status.HTTP_401_UNAUTHORIZED,
                )
        return await call_next(request)


def _execute_processor(processor: Callable[[], _ResultT]) -> _ResultT:
    """Run a use case converting unknown suites to 404 and domain ``ValueError`` to 422."""

    try:
        return processor()
    except UnknownSuiteError as lookup_error:
        raise HTTPException(
            status_code=status.HTTP_404_NOT_FOUND,
            detail=str(lookup_error),
        ) from lookup_error
    except ValueError as processing_error:
        raise HTTPException(
            status_code=status.HTTP_422_UNPROCESSABLE_ENTITY,
            detail=str(processing_error),
        ) from processing_error
