"""Regenerate the reference small-order results through the CLI.

Every check goes through :func:`hadsub.cli.run_command`, so this doubles as
an end-to-end test of the command surface. Exit status is 0 when every
claim reproduces.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import time

import numpy as np

from .cli import run_command

F4_GENERIC = [[1, 6, 11, 16], [2, 4, 5, 7, 10, 12, 13, 15], [3, 8, 9, 14]]
F4_TENSOR = [[1, 6, 11, 16], [2, 5, 12, 15], [3, 8, 9, 14], [4, 7, 10, 13]]
F4_FOURIER = [[1, 6, 11, 16], [2, 7, 12, 13], [3, 8, 9, 14], [4, 5, 10, 15]]
F6_GENERIC = [
    [1, 8, 15, 22, 29, 36],
    [2, 4, 6, 7, 9, 11, 14, 16, 18, 19, 21, 23, 26, 28, 30, 31, 33, 35],
    [3, 10, 17, 24, 25, 32],
    [5, 12, 13, 20, 27, 34],
]
F8_GENERIC = [
    [1, 10, 19, 28, 37, 46, 55, 64],
    [2, 4, 6, 8, 9, 11, 13, 15, 18, 20, 22, 24, 25, 27, 29, 31, 34, 36,
     38, 40, 41, 43, 45, 47, 50, 52, 54, 56, 57, 59, 61, 63],
    [3, 7, 12, 16, 17, 21, 26, 30, 35, 39, 44, 48, 49, 53, 58, 62],
    [5, 14, 23, 32, 33, 42, 51, 60],
]


def jones_partition(n: int) -> list[list[int]]:
    diag = [i * n + i + 1 for i in range(n)]
    rest = [v for v in range(1, n * n + 1) if v not in diag]
    return [diag, rest]


def fourier_partition(n: int) -> list[list[int]]:
    # vertex (a, c) -> (a - 1) n + c, grouped by a - c mod n
    blocks: dict[int, list[int]] = {}
    for a in range(n):
        for c in range(n):
            blocks.setdefault((a - c) % n, []).append(a * n + c + 1)
    return sorted(blocks.values())


def _analyze(family: str, params: str, order: int = 2) -> dict:
    code, out = run_command(["analyze", "--family", family, f"--params={params}",
                             "--order", str(order), "--json"])
    if code != 0:
        raise RuntimeError(f"analyze {family} {params} exited {code}: {out.strip()}")
    return json.loads(out)


def _angles(rng, count: int) -> str:
    return ",".join(f"{x:.6f}tau" for x in rng.random(count))


def claims(seed: int = 0, slow: bool = True):
    """Yield (name, expected, observed) for every reproduced result."""
    rng = np.random.default_rng(seed)

    rep = _analyze("f4", "0.113tau")
    yield "F_4 generic second commutant", F4_GENERIC, rep["second"]["partition"]
    yield "F_4(1) second commutant", F4_TENSOR, _analyze("f4", "0tau")["second"]["partition"]
    yield "F_4(i) second commutant", F4_FOURIER, _analyze("f4", "0.25tau")["second"]["partition"]

    rep = _analyze("f4", "0.7071rad", order=4 if slow else 3)
    yield "F_4 generic order 3", 10, rep["higher"]["3"]["dim"]
    if slow:
        yield "F_4 generic order 4", 35, rep["higher"]["4"]["dim"]
        rep = _analyze("f4", "0.125tau", order=4)
        yield "F_4(e^{i pi/4}) order 4", 36, rep["higher"]["4"]["dim"]

    code, out = run_command(["sweep", "--family", "f4", "--grid", "360", "--json"])
    sweep = json.loads(out)
    yield "F_4 exceptional angles", [0.0, 0.25, 0.5, 0.75], [
        round(p["params"][0] / (2 * math.pi), 6) for p in sweep["exceptional"]]

    for _ in range(5):
        params = _angles(rng, 2)
        yield f"F_6({params}) second commutant", F6_GENERIC, _analyze("f6", params)["second"]["partition"]
    if slow:
        code, out = run_command(["sweep", "--family", "f6", "--grid", "72,72", "--json"])
        sweep = json.loads(out)
        yield "F_6 exceptional pairs", 12, len(sweep["exceptional"])
        yield "F_6 exceptional dims", [6] * 12, [p["dim"] for p in sweep["exceptional"]]

    for theta in (1.95, 2.5, -3.1):
        rep = _analyze("bn6", f"{theta:.6f}rad")
        yield f"BN_6({theta:.3f}) second commutant", jones_partition(6), rep["second"]["partition"]
    for name in ("tao", "haagerup"):
        yield f"{name} second commutant dim", 2, _analyze(name, "")["second"]["dim"]

    for t in (0.0, 0.3, 0.77):
        yield f"P_7({t}tau) second commutant", jones_partition(7), _analyze("p7", f"{t}tau")["second"]["partition"]
    if slow:
        yield "P_7(1) order 3", 5, _analyze("p7", "0tau", order=3)["higher"]["3"]["dim"]

    for _ in range(3):
        params = _angles(rng, 5)
        yield f"F_8({params}) second commutant", F8_GENERIC, _analyze("f8", params)["second"]["partition"]

    for n in range(2, 9):
        yield f"F_{n} second commutant", fourier_partition(n), _analyze("fourier", str(n))["second"]["partition"]


def main(argv: list[str] | None = None) -> int:
    ap = argparse.ArgumentParser(prog="hadsub-repro", description=__doc__.splitlines()[0])
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--quick", action="store_true", help="skip order 4, the F_6 grid sweep and P_7 order 3")
    args = ap.parse_args(argv)
    failures = 0
    t0 = time.perf_counter()
    for name, expected, observed in claims(args.seed, slow=not args.quick):
        ok = expected == observed
        failures += not ok
        print(f"{'ok  ' if ok else 'FAIL'} {name}" + ("" if ok else f": expected {expected}, got {observed}"))
    print(f"{'all claims reproduced' if not failures else f'{failures} claim(s) differ'} "
          f"in {time.perf_counter() - t0:.1f} s")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
