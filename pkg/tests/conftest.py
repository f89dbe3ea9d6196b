import warnings

import pytest

from qchaos import action_angle as aa
from qchaos.errors import RegimeWarning, ResolutionWarning
from qchaos.potential import SystemParams

FIG_Z = 0.15
FIG_LAM = 0.4


@pytest.fixture(autouse=True)
def _quiet_regime_warnings():
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RegimeWarning)
        warnings.simplefilter("ignore", ResolutionWarning)
        yield


@pytest.fixture(scope="session")
def quark_params():
    return SystemParams(Z=FIG_Z, lam=FIG_LAM)


@pytest.fixture(scope="session")
def hydrogen_params():
    return SystemParams(Z=FIG_Z, lam=0.0)


@pytest.fixture(scope="session")
def quark_chart(quark_params):
    return aa.ActionAngleChart.build(quark_params, n_min=0.02, n_max=60.0)


@pytest.fixture(scope="session")
def hydrogen_chart(hydrogen_params):
    return aa.ActionAngleChart.build(hydrogen_params, n_min=0.02, n_max=60.0, nodes=1024)
