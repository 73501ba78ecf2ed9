import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from qtd.corpus import cyclic_corpus  # noqa: E402
from qtd.io import bundled, load_group, load_problem  # noqa: E402

CORPUS_SEED = 20141
CORPUS_CASES = [(4, 2), (5, 2), (6, 2), (4, 3)]
CORPUS_SIZE = 24


@pytest.fixture(scope="session")
def order3_group():
    return load_group(bundled("order3_v4_q2.grp"))


@pytest.fixture(scope="session")
def singer_group():
    return load_group(bundled("singer_normalizer_v8_q2.grp"))


@pytest.fixture(scope="session")
def order3_problem():
    return load_problem(bundled("problem_3_4_3_1_q2.json"))


@pytest.fixture(scope="session")
def corpus():
    return {vq: cyclic_corpus(*vq, CORPUS_SIZE, CORPUS_SEED) for vq in CORPUS_CASES}


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for n in sorted(results):
            terminalreporter.write_line(results[n])
