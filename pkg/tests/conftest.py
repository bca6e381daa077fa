import pytest

from kron22 import oracle


@pytest.fixture(scope="session", autouse=True)
def isolated_table_store(tmp_path_factory):
    """Character tables go to a per-session directory instead of the user cache."""
    store = oracle.TableStore(tmp_path_factory.mktemp("chartables"))
    previous = oracle.default_store()
    oracle.set_default_store(store)
    yield store
    oracle.set_default_store(previous)
