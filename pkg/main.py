import logging
from contextlib import asynccontextmanager
from typing import Optional

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse, PlainTextResponse
from pydantic import BaseModel

from app.config import DEFAULT_SEED, LOG_LEVEL
from app.errors import CrystalError
from app.services.b_infinity import B_INFINITY_FAMILIES, BInfinity
from app.services.cartan import cartan_data, type_label
from app.services.crystal_core import graph_dot
from app.services.harness import run_check
from app.services.posrat import parse
from app.services.tropic import to_infix, tropicalize
from app.services.ud_tables import UDCrystal

logging.basicConfig(level=LOG_LEVEL)
logger = logging.getLogger(__name__)


@asynccontextmanager
async def lifespan(app: FastAPI):
    yield


app = FastAPI(title="Affine Geometric Crystals", lifespan=lifespan)


class TropRequest(BaseModel):
    expression: str


class VerifyRequest(BaseModel):
    check: str
    type: str
    rank: int
    mode: str = "sampled"
    trials: Optional[int] = None
    box: Optional[int] = None
    seed: int = DEFAULT_SEED


@app.exception_handler(CrystalError)
async def crystal_error_handler(request: Request, exc: CrystalError):
    return JSONResponse(status_code=400, content={"detail": str(exc)})


@app.get("/")
async def root():
    return {"status": "ok", "service": "Affine Geometric Crystals"}


@app.get("/health")
async def health():
    return {"status": "healthy"}


@app.get("/cartan/{family}/{rank}")
async def cartan(family: str, rank: int):
    return cartan_data(type_label(family, rank)).to_dict()


@app.post("/trop")
async def trop(req: TropRequest):
    return {"trop": to_infix(tropicalize(parse(req.expression)))}


@app.post("/verify")
def verify(req: VerifyRequest):
    report = run_check(req.check, req.type, req.rank, mode=req.mode, trials=req.trials, box=req.box, seed=req.seed)
    logger.info(report.summary())
    return report.to_dict()


@app.get("/graph/{family}/{rank}", response_class=PlainTextResponse)
async def graph(family: str, rank: int, radius: int = 2, crystal: str = "binf"):
    t = type_label(family, rank)
    if crystal == "ud":
        ops = UDCrystal(t)
        seed = tuple(0 for _ in ops.names)
    else:
        if t.family not in B_INFINITY_FAMILIES:
            raise CrystalError(f"no limit crystal for {t.family}")
        ops = BInfinity(t)
        seed = ops.zero()
    if not 0 <= radius <= 6:
        raise CrystalError("radius must be between 0 and 6")
    return graph_dot(ops, [seed], radius)
