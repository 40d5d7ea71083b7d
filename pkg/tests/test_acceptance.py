"""Every acceptance criterion at full scale, one pass/fail line each.

The plane censuses (up to 7.6e9 forms at q = 5, d = 4) are shared between
criteria 1 to 5 through a module-scoped cache. Lines are printed in the
terminal summary under "acceptance criteria".
"""
import pytest

from prmweights import verify

LEVEL = "long"


@pytest.fixture(scope="module")
def census_cache():
    verify.warm_up()
    return verify._CensusCache()


@pytest.mark.slow
@pytest.mark.parametrize("number", [n for n, _, _ in verify.CRITERIA])
def test_criterion(number, census_cache, record_acceptance):
    res = verify.run_criterion(number, LEVEL, census_cache)
    record_acceptance(res.line())
    print(res.line())
    assert res.ok, res.detail
