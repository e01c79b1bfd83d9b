import pytest

import divcorr as dc


@pytest.fixture(scope="session")
def spf250k():
    return dc.build_spf(250_000)


@pytest.fixture(scope="session")
def zc():
    return dc.compute_zeta_constants()
