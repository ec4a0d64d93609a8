"""Local HTTP session service for live stroke capture.

The browser pad (or any client) opens a session, reports pose events,
and streams (x, y, t) points while writing. The service runs the
velocity termination check after every point; when a stroke settles it
smooths, rasterizes, and classifies it, and the session flips to
`terminated`. A non-writing pose clears the trajectory — the manual
path to the stopping criterion.

Per-session handling is serialized with a lock; sessions are isolated.
"""

import threading
import uuid
from dataclasses import dataclass, field
from pathlib import Path

from fastapi import FastAPI, HTTPException, Response
from fastapi.middleware.cors import CORSMiddleware
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel

from .config import load_config
from .errors import DegenerateTrajectoryError, NonMonotonicTimeError, TooShortError
from .recognition import classify, default_templates
from .trajectory import Trajectory, check_termination, rasterize, smooth

IDLE = "idle"
WRITING = "writing"
TERMINATED = "terminated"


class PosePayload(BaseModel):
    raised_fingers: int


class PointPayload(BaseModel):
    x: float
    y: float
    t: float


@dataclass
class Session:
    id: str
    phase: str = IDLE
    trajectory: Trajectory = field(default_factory=Trajectory)
    smoothed: Trajectory = None
    result: dict = None
    lock: threading.Lock = field(default_factory=threading.Lock)


def _traj_points(traj):
    return [{"x": x, "y": y, "t": t} for x, y, t in traj.points]


def create_app(config=None, templates=None, static_dir=None):
    cfg = config or load_config()
    template_set = templates or default_templates()
    app = FastAPI(title="airwrite session service")
    app.add_middleware(
        CORSMiddleware,
        allow_origin_regex=r"https?://(localhost|127\.0\.0\.1)(:\d+)?",
        allow_methods=["*"],
        allow_headers=["*"],
    )
    sessions = {}
    store_lock = threading.Lock()

    def _get(session_id):
        with store_lock:
            session = sessions.get(session_id)
        if session is None:
            raise HTTPException(status_code=404, detail="unknown session")
        return session

    @app.post("/sessions", status_code=201)
    def create_session():
        session = Session(id=uuid.uuid4().hex)
        with store_lock:
            sessions[session.id] = session
        return {"id": session.id}

    @app.post("/sessions/{session_id}/pose")
    def post_pose(session_id: str, payload: PosePayload):
        session = _get(session_id)
        with session.lock:
            if payload.raised_fingers == 1:
                if session.phase != WRITING:
                    # entering writing always starts from a clean slate
                    session.trajectory = Trajectory()
                    session.smoothed = None
                    session.result = None
                    session.phase = WRITING
            else:
                session.trajectory = Trajectory()
                session.smoothed = None
                session.result = None
                session.phase = IDLE
            return {"phase": session.phase}

    @app.post("/sessions/{session_id}/points")
    def post_point(session_id: str, payload: PointPayload):
        session = _get(session_id)
        with session.lock:
            if session.phase != WRITING:
                raise HTTPException(
                    status_code=409,
                    detail=f"points not accepted while {session.phase}",
                )
            try:
                session.trajectory.append(payload.x, payload.y, payload.t)
            except NonMonotonicTimeError as exc:
                raise HTTPException(status_code=422, detail=str(exc)) from exc
            n = len(session.trajectory.points)
            vel = None
            if n >= 2:
                from .trajectory import velocity

                vel = velocity(session.trajectory, n - 1)
            if check_termination(session.trajectory, cfg.termination_config()):
                session.trajectory.terminate()
                try:
                    session.smoothed = smooth(
                        session.trajectory, cfg.smoothing_config()
                    )
                    raster = rasterize(session.smoothed)
                    res = classify(raster, template_set, cfg.recognizer_config())
                    session.result = {
                        "rejected": res.rejected,
                        "ranked": [
                            {"label": label, "score": score}
                            for label, score in res.ranked[:5]
                        ],
                    }
                except (TooShortError, DegenerateTrajectoryError) as exc:
                    session.result = {"rejected": True, "ranked": [], "error": str(exc)}
                session.phase = TERMINATED
            return {
                "phase": session.phase,
                "velocity": vel,
                "point_count": n,
            }

    @app.get("/sessions/{session_id}")
    def get_session(session_id: str):
        session = _get(session_id)
        with session.lock:
            out = {
                "id": session.id,
                "phase": session.phase,
                "raw_trajectory": _traj_points(session.trajectory),
            }
            if session.smoothed is not None:
                out["smoothed_trajectory"] = _traj_points(session.smoothed)
            if session.result is not None:
                out["result"] = session.result
            return out

    @app.delete("/sessions/{session_id}", status_code=204)
    def delete_session(session_id: str):
        _get(session_id)
        with store_lock:
            sessions.pop(session_id, None)
        return Response(status_code=204)

    if static_dir is None:
        candidate = Path(__file__).resolve().parents[2] / "frontend"
        static_dir = candidate if candidate.is_dir() else None
    if static_dir is not None:
        app.mount("/ui", StaticFiles(directory=str(static_dir), html=True), name="ui")

    return app


def serve(port=8790, host="127.0.0.1", config=None):
    import uvicorn

    uvicorn.run(create_app(config=config), host=host, port=port, log_level="warning")
