from hypothesis import HealthCheck, settings

from moddiv.linalg import RingMatrix
from moddiv.modules import FPModule, ModuleHom
from moddiv.rings import parse_ring

settings.register_profile(
    "default",
    max_examples=60,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split("criterion ")[1].split(":")[0])):
            terminalreporter.write_line(line)


def ring(desc):
    return parse_ring(desc)


def mat(R, rows):
    """Matrix from a list of rows of JSON element encodings."""
    rows = [[R.from_json(a) for a in r] for r in rows]
    cols = len(rows[0]) if rows else 0
    return RingMatrix.from_rows(R, rows, cols)


def module(R, gens, rel_cols):
    """Cokernel of the relation columns (each a list of JSON encodings)."""
    cols = [[R.from_json(a) for a in c] for c in rel_cols]
    if not cols:
        return FPModule.free(R, gens)
    return FPModule(R, gens, RingMatrix.from_columns(R, cols, gens))


def hom(M, N, rows):
    return ModuleHom(M, N, mat(M.ring, rows) if rows else RingMatrix.zeros(M.ring, N.gens, M.gens))
