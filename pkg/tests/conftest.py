from __future__ import annotations

import functools
import re

from hypothesis import HealthCheck, settings

from ccczagreb.families import build_aux, build_family, parse_aux, parse_family

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

# every group the package can build with order <= 100, by selector string
FAMILY_CORPUS = (
    [f"dihedral:{m}" for m in range(3, 51)]
    + [f"dicyclic:{m}" for m in range(2, 26)]
    + [f"semidihedral:{m}" for m in range(2, 13)]
    + [f"v8m:{m}" for m in range(1, 13)]
    + [f"unm:{n},{m}" for n in range(2, 8) for m in range(3, 26) if 2 * n * m <= 100]
    + ["gpmn:2,1,1", "gpmn:2,1,2", "gpmn:2,2,1", "gpmn:3,1,1", "gpmn:2,1,3", "gpmn:2,2,2", "gpmn:2,3,1"]
)
AUX_CORPUS = [
    "heisenberg:2", "heisenberg:3", "extraspecial:2", "extraspecial:3", "a4", "gendihedral:3", "gendihedral:5",
    "frobenius:3,2", "frobenius:5,2", "frobenius:7,2", "frobenius:7,3", "frobenius:13,3", "frobenius:19,3",
    "frobenius:11,5", "frobenius:31,3", "frobenius:43,7", "frobenius:29,7", "f20style:5,4", "f20style:13,4",
    "f20style:17,4", "modular:2,4", "modular:2,5", "modular:3,3", "modular:2,6",
    "product:a4;2", "product:a4;3", "product:a4;4", "product:a4;5", "product:a4;6", "product:a4;8",
    "product:dihedral:4;2", "product:dicyclic:2;2", "product:dihedral:4;4", "product:frobenius:7,3;2",
    "product:frobenius:7,3;4", "product:gendihedral:3;2", "product:gendihedral:3;3", "product:heisenberg:3;2",
    "product:heisenberg:3;3", "product:dihedral:3;5", "product:semidihedral:2;3", "product:dihedral:5;5",
]


@functools.lru_cache(maxsize=None)
def group(selector: str):
    head = selector.split(":")[0]
    if head in ("dihedral", "dicyclic", "semidihedral", "v8m", "unm", "gpmn"):
        return build_family(parse_family(selector))
    return build_aux(parse_aux(selector))


def small_corpus(max_order: int = 100) -> list[str]:
    out = []
    for sel in FAMILY_CORPUS + AUX_CORPUS:
        if group(sel).order <= max_order:
            out.append(sel)
    return out


_results: dict[int, tuple[str, str]] = {}
_CRIT = re.compile(r"test_criterion_(\d+)")


def pytest_runtest_logreport(report):
    m = _CRIT.search(report.nodeid)
    if not m or "test_acceptance" not in report.nodeid:
        return
    n = int(m.group(1))
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _results[n] = ("PASS" if report.passed else "FAIL", report.nodeid.split("::")[-1])


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_results):
        status, name = _results[n]
        terminalreporter.write_line(f"criterion {n:2d}: {status}  {name}")
