import sys
from pathlib import Path

import numpy as np
import pytest

from nodeshift import kernels
from nodeshift.tsplib import build_cost_matrix, load_instance

sys.path.insert(0, str(Path(__file__).parent))

DATA = Path(__file__).parent / "data"


def random_symmetric(rng, n, high=100):
    upper = np.triu(rng.integers(1, high, size=(n, n)), 1)
    return (upper + upper.T).astype(np.int64)


def random_euclidean(rng, n, scale=1000):
    from nodeshift.tsplib import EdgeWeightKind, TspInstance
    coords = rng.uniform(0, scale, size=(n, 2)).round(1)
    return build_cost_matrix(TspInstance("rand", n, EdgeWeightKind.EUC_2D, coords=coords))


def read_opt_tour(path):
    """0-based tour from a TSPLIB ``.opt.tour`` file (test fixture only)."""
    cities, inside = [], False
    for line in Path(path).read_text().splitlines():
        line = line.strip()
        if line == "TOUR_SECTION":
            inside = True
        elif inside:
            for tok in line.split():
                if tok == "-1":
                    return np.array(cities, dtype=np.int64)
                cities.append(int(tok) - 1)
    return np.array(cities, dtype=np.int64)


@pytest.fixture(scope="session")
def berlin52():
    return build_cost_matrix(load_instance("berlin52"))


@pytest.fixture(scope="session")
def eil51():
    return build_cost_matrix(load_instance("eil51"))


@pytest.fixture(scope="session")
def berlin52_opt():
    return read_opt_tour(DATA / "berlin52.opt.tour")


@pytest.fixture
def triangle():
    # 3-4-5 right triangle: cities at (0,0), (3,0), (0,4)
    return np.array([[0, 3, 4], [3, 0, 5], [4, 5, 0]], dtype=np.int64)


@pytest.fixture(params=sorted(kernels.available_backends()))
def backend(request):
    return kernels.available_backends()[request.param]


def solve_lp_file(path):
    """Objective and column values from HiGHS; skips when it is absent."""
    highspy = pytest.importorskip("highspy")
    h = highspy.Highs()
    h.setOptionValue("output_flag", False)
    h.readModel(str(path))
    h.run()
    assert h.getModelStatus() == highspy.HighsModelStatus.kOptimal
    lp = h.getLp()
    names = [h.getColName(i)[1] for i in range(lp.num_col_)]
    values = dict(zip(names, h.getSolution().col_value))
    return h.getInfo().objective_function_value, values, lp.num_col_, lp.num_row_


# One PASS/FAIL/SKIP line per acceptance criterion, printed after the run.
_criteria: dict[int, tuple[str, str]] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    number = getattr(getattr(item, "function", None), "criterion", None)
    if number is None:
        return
    if report.when == "call" or (report.when == "setup" and not report.passed):
        status = "PASS" if report.passed else "SKIP" if report.skipped else "FAIL"
        _criteria[number] = (status, item.function.criterion_label)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        status, label = _criteria[number]
        terminalreporter.write_line(f"criterion {number:2d}: {status}  {label}")
