"""FastAPI surface over the service handlers.

Every endpoint accepts file contents in the request body and returns the
same report structure the CLI prints with --json.  Run with:
    uvicorn mcprod.api:app
"""

from __future__ import annotations

from typing import Optional

from fastapi import FastAPI
from pydantic import BaseModel, Field

from mcprod import service

app = FastAPI(
    title="mcprod",
    description=(
        "Exact Maurer-Cartan higher products, Massey products, and "
        "odd spherical fibrations over truncated free CDGAs."
    ),
)


class ReportModel(BaseModel):
    command: str
    ok: bool
    exit_code: int
    results: dict = Field(default_factory=dict)
    error: Optional[str] = None


class ValidateRequest(BaseModel):
    model_text: str


class CohomologyRequest(BaseModel):
    model_text: str
    degree: int


class MasseyRequest(BaseModel):
    model_text: str
    expressions: list[str]


class McProductRequest(BaseModel):
    model_text: str
    dgla_text: str
    system_text: str


class AnnihilateRequest(BaseModel):
    model_text: str
    cocycle: str
    max_degree: int


class DescendRequest(BaseModel):
    model_text: str
    euler: str
    x_degree: int
    dgla_text: str
    system_text: str
    target_class: str
    x_name: str = "x"


def _wrap(report) -> ReportModel:
    return ReportModel(**report.to_dict())


@app.get("/healthz")
def healthz() -> dict:
    return {"status": "ok"}


@app.post("/validate", response_model=ReportModel)
def validate(req: ValidateRequest) -> ReportModel:
    return _wrap(service.run_validate(req.model_text))


@app.post("/cohomology", response_model=ReportModel)
def cohomology(req: CohomologyRequest) -> ReportModel:
    return _wrap(service.run_cohomology(req.model_text, req.degree))


@app.post("/massey", response_model=ReportModel)
def massey(req: MasseyRequest) -> ReportModel:
    return _wrap(service.run_massey(req.model_text, req.expressions))


@app.post("/mc-product", response_model=ReportModel)
def mc_product(req: McProductRequest) -> ReportModel:
    return _wrap(service.run_mc_product(req.model_text, req.dgla_text, req.system_text))


@app.post("/annihilate", response_model=ReportModel)
def annihilate(req: AnnihilateRequest) -> ReportModel:
    return _wrap(service.run_annihilate(req.model_text, req.cocycle, req.max_degree))


@app.post("/descend", response_model=ReportModel)
def descend(req: DescendRequest) -> ReportModel:
    return _wrap(
        service.run_descend(
            req.model_text,
            req.euler,
            req.x_degree,
            req.dgla_text,
            req.system_text,
            req.target_class,
            req.x_name,
        )
    )


@app.get("/selftest", response_model=ReportModel)
def selftest() -> ReportModel:
    return _wrap(service.run_selftest())
