"""
Polylink API
============
FastAPI surface over the polylink commands. Polygons travel in the plain-text
polygon format; coordinates are Scalar strings ("3", "-1/2", "0.25").
"""

from typing import Literal, Optional
from datetime import datetime
from contextlib import asynccontextmanager

from fastapi import FastAPI, HTTPException, Query
from fastapi.middleware.cors import CORSMiddleware
from pydantic import BaseModel, Field, field_validator

from app.config import API_HOST, API_PORT, CORS_ORIGINS, DEFAULT_SEED, ORACLE_MAX_N, SPIRAL_MAX_N
from app.errors import PolylinkError
from app.geometry.exact import Point, scalar
from app.tools.commands import (
    CommandResult,
    classify_point,
    generate_spiral,
    get_polygon_cache,
    link_distance_between,
    path_between,
    validate_polygon,
    visible_from,
)
from app.tools.svg import emit_svg


@asynccontextmanager
async def lifespan(app: FastAPI):
    """Initialize resources on startup."""
    print("🚀 Starting Polylink API...")
    print(f"📐 Oracle limit n <= {ORACLE_MAX_N}, default seed {DEFAULT_SEED}")
    yield
    get_polygon_cache().clear()
    print("👋 Shutting down...")


app = FastAPI(
    title="Polylink",
    description="Exact polygonal paths inside and outside simple polygons",
    version="1.0.0",
    lifespan=lifespan,
)

app.add_middleware(
    CORSMiddleware,
    allow_origins=CORS_ORIGINS,
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)


# Request/Response Models
class Coordinate(BaseModel):
    x: str
    y: str

    @field_validator("x", "y")
    @classmethod
    def exact(cls, value: str) -> str:
        scalar(value)
        return value

    def point(self) -> Point:
        return Point(scalar(self.x), scalar(self.y))


class PolygonRequest(BaseModel):
    polygon: str = Field(..., min_length=1, max_length=200_000)
    svg: bool = False


class PointRequest(PolygonRequest):
    point: Coordinate
    seed: int = DEFAULT_SEED


class PathRequest(PolygonRequest):
    a: Coordinate
    b: Coordinate
    naive: bool = False
    seed: int = DEFAULT_SEED


class LinkDistanceRequest(PolygonRequest):
    a: Coordinate
    b: Coordinate
    domain: Optional[Literal["int", "ext"]] = None
    max_n: Optional[int] = Field(None, ge=3)


class CommandResponse(BaseModel):
    lines: list[str]
    svg: Optional[str] = None
    timestamp: datetime = Field(default_factory=datetime.now)


class HealthResponse(BaseModel):
    status: str
    oracle_max_n: int
    spiral_max_n: int
    timestamp: datetime


def _respond(run, svg: bool = False) -> CommandResponse:
    try:
        result: CommandResult = run()
    except PolylinkError as e:
        raise HTTPException(status_code=422, detail=str(e))
    except Exception as e:
        raise HTTPException(status_code=500, detail=f"Error: {str(e)}")
    drawing = emit_svg(result.scene) if svg and result.scene is not None else None
    return CommandResponse(lines=result.lines, svg=drawing, timestamp=datetime.now())


# Endpoints
@app.get("/health", response_model=HealthResponse)
async def health_check():
    """Health check endpoint."""
    return HealthResponse(status="healthy", oracle_max_n=ORACLE_MAX_N, spiral_max_n=SPIRAL_MAX_N,
                          timestamp=datetime.now())


@app.post("/validate", response_model=CommandResponse)
def validate(request: PolygonRequest):
    """Validate a polygon file."""
    return _respond(lambda: validate_polygon(request.polygon), request.svg)


@app.post("/classify", response_model=CommandResponse)
def classify(request: PointRequest):
    """Classify a point against the polygon."""
    return _respond(lambda: classify_point(request.polygon, request.point.point()), request.svg)


@app.post("/visible", response_model=CommandResponse)
def visible(request: PointRequest):
    """Vertices visible from a point."""
    return _respond(lambda: visible_from(request.polygon, request.point.point(), request.seed), request.svg)


@app.post("/path", response_model=CommandResponse)
def path(request: PathRequest):
    """Certified polygonal path between two points."""
    return _respond(
        lambda: path_between(request.polygon, request.a.point(), request.b.point(),
                             naive=request.naive, seed=request.seed),
        request.svg,
    )


@app.post("/linkdist", response_model=CommandResponse)
def linkdist(request: LinkDistanceRequest):
    """Oracle link distance between two points."""
    return _respond(
        lambda: link_distance_between(request.polygon, request.a.point(), request.b.point(),
                                      request.domain, request.max_n),
        request.svg,
    )


@app.get("/gen/spiral/{n}", response_model=CommandResponse)
def gen_spiral(n: int, verify: bool = False, svg: bool = False,
               budget: Optional[int] = Query(None, ge=0)):
    """Extremal spiral polygon file, optionally verified by the oracle."""
    if not 3 <= n <= SPIRAL_MAX_N:
        raise HTTPException(status_code=422, detail=f"spiral needs 3 <= n <= {SPIRAL_MAX_N}, got {n}")
    return _respond(lambda: generate_spiral(n, check=verify, budget=budget), svg)


if __name__ == "__main__":
    import uvicorn
    uvicorn.run("main:app", host=API_HOST, port=API_PORT, reload=True)
