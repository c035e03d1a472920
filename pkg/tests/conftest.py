import pytest

from cardshare import demo, validate_suitable


@pytest.fixture(scope="session")
def worked_params():
    return demo.worked_example_params()


@pytest.fixture(scope="session")
def worked_assignment():
    return demo.worked_example_assignment()


@pytest.fixture(scope="session")
def worked_deal():
    return demo.worked_example_deal()


@pytest.fixture(scope="session")
def worked_plane():
    return demo.worked_example_plane()


@pytest.fixture(scope="session")
def worked_run():
    return demo.worked_example_run()


@pytest.fixture(scope="session")
def small_params():
    return validate_suitable(2, 3, 2, (18, 4, 5))
