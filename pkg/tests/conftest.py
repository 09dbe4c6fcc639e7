import random

import pytest
from hypothesis import settings
from hypothesis import strategies as st

from irrthompson.presentation import GeneratorSymbol, GeneratorWord, random_word, relator_instances

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")

# criterion number -> (passed, detail); filled in by test_acceptance
ACCEPTANCE: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}")


def word_corpus(count=1000, seed=20240611, max_len=30, max_index=4):
    """Half uniform random words, half conjugated relators (trivial elements)."""
    rng = random.Random(seed)
    rels = relator_instances(max_index)
    words = []
    for n in range(count):
        if n % 2 == 0:
            words.append(random_word(rng.randint(0, max_len), max_index, rng))
        else:
            r = rng.choice(rels)
            core = r.lhs + r.rhs.inverse()
            room = max(0, (max_len - core.length()) // 2)
            u = random_word(rng.randint(0, room), max_index, rng)
            words.append(u + core + u.inverse())
    return words


@pytest.fixture(scope="session")
def corpus():
    return word_corpus()


def symbols(kinds="xycp", max_index=4):
    def build(kind, index, exponent):
        if kind == "c":
            index = max(index, 1)
        return GeneratorSymbol(kind, index, exponent)

    return st.builds(
        build,
        st.sampled_from(kinds),
        st.integers(0, max_index),
        st.sampled_from([1, -1]),
    )


def words(kinds="xycp", max_index=4, max_size=12):
    return st.lists(symbols(kinds, max_index), max_size=max_size).map(GeneratorWord)
