import numpy as np
import pytest

from hgalloc.radio import LinkGains


@pytest.fixture
def rng():
    return np.random.default_rng(20260824)


def flat_gains(n, m, wanted=1.0, cross=1e-12):
    """LinkGains with strong wanted links and negligible cross links.

    The baseline produces no conflict edges at the default thresholds; tests
    raise individual cross gains to switch specific rules on.
    """
    return LinkGains(
        g_cellular_to_enb=np.full(n, float(wanted)),
        g_d2d_pair=np.full(m, float(wanted)),
        g_d2dtx_to_enb=np.full(m, float(cross)),
        g_cellular_to_d2drx=np.full((n, m), float(cross)),
        g_d2dtx_to_d2drx=np.full((m, m), float(cross)),
    )
