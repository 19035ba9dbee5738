import numpy as np
import pytest

from frontflux.errors import ParameterError
from frontflux.profiles import Profile, ProfileSource, sample_profile
from frontflux.similarity import exact_profile_m1


def linear(samples=11):
    return sample_profile(exact_profile_m1(1, 1.0), 1.0, samples, ProfileSource.EXACT)


@pytest.mark.parametrize(
    "thetas, f, df",
    [
        ([0.0, 0.0, 1.0], [1.0, 0.5, 0.0], [0.0, 0.0, 0.0]),
        ([0.0, 1.0], [-1.0, 0.0], [0.0, 0.0]),
        ([0.0, 1.0], [1.0, 0.1], [0.0, 0.0]),
        ([0.0, 1.0], [1.0, 0.0], [0.0]),
        ([0.0], [0.0], [0.0]),
    ],
)
def test_rejects_malformed(thetas, f, df):
    with pytest.raises(ParameterError):
        Profile(thetas, f, df, "series", 1.0)


def test_evaluator_hermite_exact_for_linear():
    ev = linear().evaluator()
    theta = np.linspace(0, 1, 37)
    assert np.allclose(ev(theta), 1 - theta, atol=1e-15)
    assert ev(1.5) == 0.0 and ev(-0.1) == 0.0
    assert isinstance(ev(0.3), float)


def test_csv_and_record():
    prof = linear(5)
    lines = prof.to_csv().splitlines()
    assert lines[0] == "theta,f,df,source"
    assert lines[1].split(",") == ["0.0", "1.0", "-1.0", "exact"]
    rec = prof.to_record()
    assert rec["source"] == "exact" and len(rec["theta"]) == 5 and len(prof) == 5


def test_sample_profile_needs_two_points():
    with pytest.raises(ParameterError):
        sample_profile(exact_profile_m1(1, 1.0), 1.0, 1)
