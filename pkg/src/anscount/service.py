"""HTTP facade for interactive navigation.

Sessions hold a compiled artifact plus the current assumption trail;
counts and facets are read-only over the shared immutable graph, while
assume/undo serialize per session.  All counts travel as decimal
strings, never as JSON numbers.
"""

from __future__ import annotations

import hashlib
import os
import secrets
import threading
from dataclasses import dataclass, field

from fastapi import FastAPI, HTTPException
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from .artifact import CompiledArtifact, compile_program, load_artifact, save_artifact
from .depgraph import CycleBudgetError
from .inclexcl import RefinementBudgetError
from .navigation import count_query, facet_report, trace_json
from .nnf import ResourceBudgetError
from .program import AssumptionSet, ParseError


def service_settings() -> dict:
    return {
        "host": os.environ.get("ANSCOUNT_HOST", "127.0.0.1"),
        "port": int(os.environ.get("ANSCOUNT_PORT", "8752")),
        "cors_origins": os.environ.get("ANSCOUNT_CORS", "*").split(","),
        "cache_dir": os.environ.get("ANSCOUNT_CACHE_DIR") or None,
        # program source length above which compilation goes async (202 + poll)
        "sync_limit": int(os.environ.get("ANSCOUNT_SYNC_LIMIT", "100000")),
        "cycle_mode": os.environ.get("ANSCOUNT_CYCLES", "exhaustive"),
    }


class ProgramRequest(BaseModel):
    text: str
    depth: int | None = None
    cycles: str | None = None


class AssumeRequest(BaseModel):
    literal: str


@dataclass
class Session:
    id: str
    status: str  # "compiling" | "ready" | "error"
    default_depth: int | None = None
    artifact: CompiledArtifact | None = None
    error: str | None = None
    trail: list[tuple[int, bool]] = field(default_factory=list)
    lock: threading.RLock = field(default_factory=threading.RLock)

    def assumptions(self) -> AssumptionSet:
        return AssumptionSet.of(
            (a for a, sign in self.trail if sign),
            (a for a, sign in self.trail if not sign))

    def state_digest(self) -> str:
        payload = ";".join(f"{a}:{int(s)}" for a, s in sorted(self.trail))
        return hashlib.sha256(payload.encode()).hexdigest()[:16]


def _stats(artifact: CompiledArtifact) -> dict:
    return {
        "atoms": artifact.original_atom_count,
        "rules": artifact.original_rule_count,
        "tight": artifact.tight,
        "cycles": len(artifact.catalog),
        "cycle_mode": artifact.catalog.mode,
        "supported_count": str(artifact.supported_count),
        "nnf_nodes": artifact.nnf_size.node_count,
        "ccg_nodes": artifact.compressed_size.node_count,
        "atom_names": artifact.atom_names(),
        "digest": artifact.digest,
    }


def create_app(settings: dict | None = None) -> FastAPI:
    settings = {**service_settings(), **(settings or {})}
    app = FastAPI(title="anscount navigation service")
    app.add_middleware(
        CORSMiddleware, allow_origins=settings["cors_origins"],
        allow_methods=["*"], allow_headers=["*"])
    sessions: dict[str, Session] = {}
    registry_lock = threading.Lock()

    def get_session(session_id: str) -> Session:
        with registry_lock:
            session = sessions.get(session_id)
        if session is None:
            raise HTTPException(404, "unknown session")
        return session

    def ready_session(session_id: str) -> Session:
        session = get_session(session_id)
        if session.status == "compiling":
            raise HTTPException(409, "compilation still in progress")
        if session.status == "error":
            raise HTTPException(422, session.error or "compilation failed")
        return session

    def compile_cached(text: str, cycle_mode: str) -> CompiledArtifact:
        cache_dir = settings["cache_dir"]
        if cache_dir:
            from .artifact import program_digest

            os.makedirs(cache_dir, exist_ok=True)
            path = os.path.join(cache_dir,
                                f"{program_digest(text)}.{cycle_mode}.ccg")
            if os.path.exists(path):
                return load_artifact(path, expect_program_text=text)
            artifact = compile_program(text, cycle_mode=cycle_mode)
            save_artifact(artifact, path)
            return artifact
        return compile_program(text, cycle_mode=cycle_mode)

    @app.post("/programs")
    def post_program(request: ProgramRequest):
        session = Session(id=secrets.token_hex(8), status="compiling",
                          default_depth=request.depth)
        with registry_lock:
            sessions[session.id] = session
        cycle_mode = request.cycles or settings["cycle_mode"]

        def run() -> None:
            try:
                session.artifact = compile_cached(request.text, cycle_mode)
                session.status = "ready"
            except ParseError as exc:
                session.status, session.error = "error", f"parse error: {exc}"
            except (CycleBudgetError, ResourceBudgetError) as exc:
                session.status, session.error = "error", f"budget: {exc}"
            except Exception as exc:  # noqa: BLE001
                session.status, session.error = "error", str(exc)

        if len(request.text) > settings["sync_limit"]:
            threading.Thread(target=run, daemon=True).start()
            return JSONResponse(
                {"session_id": session.id,
                 "status_url": f"/programs/{session.id}"},
                status_code=202)
        run()
        if session.status == "error":
            code = 400 if session.error.startswith("parse error") else 422
            with registry_lock:
                sessions.pop(session.id, None)
            raise HTTPException(code, session.error)
        return {"session_id": session.id, "stats": _stats(session.artifact)}

    @app.get("/programs/{session_id}")
    def get_program(session_id: str):
        session = get_session(session_id)
        if session.status == "ready":
            return {"status": "ready", "stats": _stats(session.artifact)}
        if session.status == "error":
            return {"status": "error", "detail": session.error}
        return {"status": "compiling"}

    def parse_extra(session: Session, spec: str) -> AssumptionSet:
        try:
            return session.artifact.parse_assumptions(spec)
        except KeyError as exc:
            raise HTTPException(400, str(exc.args[0])) from None

    def run_count(session: Session, assumptions: AssumptionSet,
                  depth: int | None):
        try:
            return count_query(session.artifact, assumptions, depth)
        except RefinementBudgetError as exc:
            raise HTTPException(422, str(exc)) from None

    @app.get("/programs/{session_id}/count")
    def get_count(session_id: str, assume: str = "",
                  depth: int | None = None):
        session = ready_session(session_id)
        assumptions = session.assumptions().union(parse_extra(session, assume))
        trace = run_count(session, assumptions,
                          depth if depth is not None else session.default_depth)
        payload = trace_json(trace)
        if not assumptions.is_consistent():
            payload["warning"] = "inconsistent"
        return payload

    @app.get("/programs/{session_id}/facets")
    def get_facets(session_id: str, assume: str = "",
                   depth: int | None = None):
        session = ready_session(session_id)
        assumptions = session.assumptions().union(parse_extra(session, assume))
        if not assumptions.is_consistent():
            raise HTTPException(409, "inconsistent assumptions")
        report = facet_report(
            session.artifact, assumptions,
            depth if depth is not None else session.default_depth)
        return {
            "depth": report.depth,
            "assumptions": _render_trail(session),
            "facets": [{
                "atom": e.atom,
                "count_true": str(e.count_true),
                "count_false": str(e.count_false),
                "bound_true": e.bound_true,
                "bound_false": e.bound_false,
                "ratio_true": e.ratio_true,
            } for e in report.entries],
        }

    def _render_trail(session: Session) -> list[str]:
        names = session.artifact.program.name_of
        return [(names(a) if sign else f"-{names(a)}")
                for a, sign in session.trail]

    def _state_payload(session: Session) -> dict:
        trace = run_count(session, session.assumptions(), session.default_depth)
        return {
            "count": str(trace.count),
            "bound": trace.bound_kind,
            "assumptions": _render_trail(session),
            "state_digest": session.state_digest(),
        }

    @app.post("/programs/{session_id}/assume")
    def post_assume(session_id: str, request: AssumeRequest):
        session = ready_session(session_id)
        with session.lock:
            extra = parse_extra(session, request.literal)
            combined = session.assumptions().union(extra)
            if not combined.is_consistent():
                raise HTTPException(409, "assumption conflicts with the "
                                         "current trail")
            for atom in sorted(extra.true_atoms):
                session.trail.append((atom, True))
            for atom in sorted(extra.false_atoms):
                session.trail.append((atom, False))
            return _state_payload(session)

    @app.post("/programs/{session_id}/undo")
    def post_undo(session_id: str):
        session = ready_session(session_id)
        with session.lock:
            if not session.trail:
                raise HTTPException(400, "nothing to undo")
            session.trail.pop()
            return _state_payload(session)

    return app
