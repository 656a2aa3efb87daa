"""Analysis reports: everything computed for one matrix, serialised as
byte-stable JSON or as readable text."""

from __future__ import annotations

import json
import time
from dataclasses import asdict, dataclass, fields

from . import __version__
from .commutants import relative_commutant_dim, second_commutant
from .dita import divisor_shapes, verify_bisch_membership
from .hadamard import DEFAULT_TOL, HadamardMatrix, equivalence_fingerprint, fingerprint_digest
from .tower import verify_commuting_square


def _short(x: float) -> float:
    """Round to 4 significant digits so reports do not carry rounding noise."""
    return float(f"{x:.3e}")


@dataclass
class AnalysisReport:
    n: int
    source: dict
    tol: float
    is_hadamard: bool
    commuting_square: dict | None = None
    fingerprint_hash: str | None = None
    second: dict | None = None
    higher: dict | None = None
    dita: list | None = None
    tool_version: str = __version__
    timings: dict | None = None

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> "AnalysisReport":
        known = {f.name for f in fields(cls)}
        return cls(**{k: v for k, v in data.items() if k in known})

    @property
    def ambiguous(self) -> bool:
        return any(v.get("ambiguous") for v in (self.higher or {}).values())


def analyze(H: HadamardMatrix, source: dict, order: int = 2, tol: float = DEFAULT_TOL,
            force: bool = False, timings: bool = False) -> AnalysisReport:
    """Run every check up to the requested relative-commutant order.

    ``timings`` is off by default so that reports stay byte-identical
    across runs.
    """
    clock: dict[str, float] = {}

    def timed(name, fn, *args, **kw):
        t0 = time.perf_counter()
        out = fn(*args, **kw)
        clock[name] = round(time.perf_counter() - t0, 4)
        return out

    cs = timed("commuting_square", verify_commuting_square, H)
    fp = timed("fingerprint", equivalence_fingerprint, H, tol)
    second = timed("second", second_commutant, H, tol)
    report = AnalysisReport(
        n=H.n,
        source=source,
        tol=tol,
        is_hadamard=True,
        commuting_square={
            "passed": cs.passed,
            "worst_defect": _short(cs.worst_defect),
            "irreducible": cs.irreducible,
        },
        fingerprint_hash=fingerprint_digest(fp, tol),
        second={
            "dim": second.dim,
            "partition": second.partition.as_lists(),
            "traces": [round(t, 12) for t in second.partition.traces()],
        },
    )
    if order > 2:
        report.higher = {}
        for o in range(3, order + 1):
            res = timed(f"order_{o}", relative_commutant_dim, H, o, tol, force=force)
            report.higher[str(o)] = {
                "dim": res.dim,
                "gap": None if res.gap == float("inf") else _short(res.gap),
                "ambiguous": res.ambiguous,
            }
    shapes = divisor_shapes(H.n)
    if shapes:
        report.dita = []
        for shape in shapes:
            mb = verify_bisch_membership(H, shape, tol)
            report.dita.append({
                "shape": [shape.n, shape.m, shape.k],
                "membership": mb.member,
                "intermediate_ok": None,
            })
    if timings:
        report.timings = clock
    return report


def _set(block) -> str:
    return "{" + ",".join(map(str, block)) + "}"


def render_text(report: AnalysisReport) -> str:
    src = report.source
    label = src.get("label") or src.get("file") or "?"
    lines = [
        f"source       {label}",
        f"n            {report.n}",
        f"tolerance    {report.tol:g}",
        f"hadamard     {'yes' if report.is_hadamard else 'no'}",
    ]
    cs = report.commuting_square
    if cs:
        lines.append(
            f"commuting    {'passed' if cs['passed'] else 'FAILED'} "
            f"(worst defect {cs['worst_defect']:.3e}), "
            f"{'irreducible' if cs['irreducible'] else 'reducible'}")
    if report.fingerprint_hash:
        lines.append(f"fingerprint  {report.fingerprint_hash}")
    if report.second:
        lines.append(f"second relative commutant: dim {report.second['dim']}")
        lines += ["  " + _set(b) for b in report.second["partition"]]
    for order, res in (report.higher or {}).items():
        gap = "exact" if res["gap"] is None else f"{res['gap']:.2e}"
        flag = "  AMBIGUOUS RANK" if res["ambiguous"] else ""
        lines.append(f"order {order} relative commutant: dim {res['dim']} (spectral gap {gap}){flag}")
    for entry in report.dita or []:
        n, m, k = entry["shape"]
        state = "contains" if entry["membership"] else "does not contain"
        lines.append(f"dita m={m}, k={k}: second commutant {state} the Bisch projection")
    for name, secs in (report.timings or {}).items():
        lines.append(f"time {name}: {secs:.4f} s")
    return "\n".join(lines) + "\n"


def write_report(report: AnalysisReport, fmt: str = "json") -> bytes:
    if fmt == "json":
        return (json.dumps(report.to_dict(), indent=2) + "\n").encode()
    if fmt == "text":
        return render_text(report).encode()
    raise ValueError(f"unknown format {fmt!r}")


def read_report(data: bytes | str) -> AnalysisReport:
    return AnalysisReport.from_dict(json.loads(data))
