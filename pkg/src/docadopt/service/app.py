"""Read-only HTTP service over pre-built corpus and model artifacts.

All predictions are computed once at startup from immutable artifacts, so
identical requests get identical responses across restarts (with stub
providers). Only /augment touches an LLM, and provider failures surface as
degraded 200 responses, never 5xx.
"""
from __future__ import annotations

import threading
import time
from typing import Optional

from fastapi import FastAPI, HTTPException, Query, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from .. import __version__
from ..adoptmap import LABELS, load_merged, predict_corpus_sections, predict_section
from ..corpus import load_corpus, load_index
from ..embed import provider_from_model_id
from ..mentor import HttpChatLlmProvider, StubLlmProvider, augment
from .config import ServiceConfig


class PredictRequest(BaseModel):
    text: str = Field(min_length=1, description="Ad-hoc section text to label.")


class AugmentRequest(BaseModel):
    paragraph: str = Field(min_length=1)
    domain: str = Field(min_length=1, description="OSS domain of the paragraph.")


class _RateGate:
    """Minimum-interval gate for /augment; excess requests get 429."""

    def __init__(self, per_second: float):
        self._interval = 1.0 / per_second
        self._lock = threading.Lock()
        self._next_ok = 0.0

    def allow(self) -> bool:
        with self._lock:
            now = time.monotonic()
            if now < self._next_ok:
                return False
            self._next_ok = now + self._interval
            return True


def _margin(sums: dict[str, float], label: str) -> float:
    others = [v for k, v in sums.items() if k != label]
    return float(sums[label] - max(others)) if others else float(sums[label])


def create_app(config: ServiceConfig) -> FastAPI:
    config.check_paths()
    store = load_corpus(config.corpus_dir)
    merged = load_merged(config.model_dir)
    index = load_index(config.index_file)
    provider = provider_from_model_id(merged.base.model_id)
    if config.llm == "stub":
        llm = StubLlmProvider(seed=config.stub_seed)
    else:
        if not config.llm_base_url or not config.llm_model:
            raise ValueError("llm 'http' requires llm_base_url and llm_model")
        llm = HttpChatLlmProvider(config.llm_base_url, config.llm_model)

    pages = {p.page_id: p for p in store.pages}
    projects: dict[str, dict] = {}
    for p in store.pages:
        pid = p.repo_id.replace("/", "__")
        entry = projects.setdefault(
            pid,
            {
                "id": pid,
                "repo_id": p.repo_id,
                "oss_domain": p.oss_domain,
                "docs_url": p.docs_url,
                "stars": p.stars,
                "n_pages": 0,
                "n_sections": 0,
            },
        )
        entry["n_pages"] += 1

    predictions = {
        pred.section_id: pred
        for pred in predict_corpus_sections(list(store.sections), merged, provider)
    }
    sections_by_project: dict[str, list[dict]] = {pid: [] for pid in projects}
    for section in store.sections:
        page = pages[section.page_id]
        pid = page.repo_id.replace("/", "__")
        pred = predictions[section.section_id]
        projects[pid]["n_sections"] += 1
        sections_by_project[pid].append(
            {
                "section_id": section.section_id,
                "heading_path": list(section.heading_path),
                "text": section.text,
                "page_path": page.path,
                "page_title": page.title,
                "label": pred.label,
                "sums": {k: float(v) for k, v in pred.sums.items()},
                "tie": pred.tie,
                "margin": _margin(pred.sums, pred.label),
            }
        )

    gate = _RateGate(config.augment_rate_limit)
    app = FastAPI(title="docadopt service", version=__version__)
    app.state.config = config

    if config.cors_origins:
        from fastapi.middleware.cors import CORSMiddleware

        app.add_middleware(
            CORSMiddleware,
            allow_origins=list(config.cors_origins),
            allow_methods=["GET", "POST"],
            allow_headers=["*"],
        )

    @app.exception_handler(RequestValidationError)
    async def _validation_handler(request: Request, exc: RequestValidationError):
        detail = [
            {"loc": [str(part) for part in err["loc"]], "msg": err["msg"]}
            for err in exc.errors()
        ]
        return JSONResponse(status_code=400, content={"detail": detail})

    @app.get("/health")
    def health():
        return {
            "status": "ok",
            "model_id": merged.base.model_id,
            "corpus_counts": {
                "pages": len(store.pages),
                "sections": len(store.sections),
                "sentences": len(store.sentences),
            },
        }

    @app.get("/projects")
    def list_projects():
        ordered = sorted(projects.values(), key=lambda p: (-p["stars"], p["id"]))
        return {"projects": ordered}

    @app.get("/projects/{project_id}/sections")
    def project_sections(project_id: str, label: Optional[str] = Query(default=None)):
        if project_id not in projects:
            raise HTTPException(status_code=404, detail=f"unknown project: {project_id}")
        if label is not None and label not in LABELS:
            raise HTTPException(
                status_code=400,
                detail=[{"loc": ["query", "label"], "msg": f"label must be one of {list(LABELS)}"}],
            )
        rows = sections_by_project[project_id]
        if label is not None:
            rows = [r for r in rows if r["label"] == label]
        return {"project_id": project_id, "label": label, "sections": rows}

    @app.post("/predict")
    def predict(body: PredictRequest):
        try:
            pred = predict_section(body.text, merged, provider)
        except ValueError as exc:
            raise HTTPException(
                status_code=400, detail=[{"loc": ["body", "text"], "msg": str(exc)}]
            ) from exc
        return pred.to_json()

    @app.post("/augment")
    def augment_endpoint(body: AugmentRequest):
        if not gate.allow():
            raise HTTPException(status_code=429, detail="augmentation rate limit exceeded")
        try:
            result = augment(body.paragraph, body.domain, index, llm, k=config.detect_k)
        except KeyError:
            raise HTTPException(
                status_code=400,
                detail=[{"loc": ["body", "domain"], "msg": f"unknown OSS domain: {body.domain!r}"}],
            ) from None
        except ValueError as exc:
            raise HTTPException(
                status_code=400, detail=[{"loc": ["body", "paragraph"], "msg": str(exc)}]
            ) from exc
        return result.to_dict()

    return app
