import pytest

from citecast import stats, suite, synth


@pytest.fixture(scope="session")
def default_corpus():
    """The documented seed-42 default: 50,000 records, 248 SCs."""
    return synth.generate(synth.GeneratorConfig())


@pytest.fixture(scope="session")
def default_measures(default_corpus):
    baselines = stats.compute_baselines(default_corpus)
    return stats.compute_measures(default_corpus, baselines)


@pytest.fixture(scope="session")
def default_suite_result(default_corpus, default_measures):
    return suite.run_suite(
        default_corpus, default_measures,
        baseline_sc=default_corpus.sc_universe[0],
    )
