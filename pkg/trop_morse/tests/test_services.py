import pytest

from trop_morse.core.exceptions import InputError, PermissibilityError
from trop_morse.geometry.torus import TorusQuadraticDivisor
from trop_morse.services import fixtures
from trop_morse.services.curve_service import CurveService
from trop_morse.services.torus_service import TorusService


class TestCurveService:
    def test_check_star(self):
        report = CurveService.check(*fixtures.star(1, 2))
        assert report.name == "star[1,2]"
        assert report.euler == 1 - 2 + 1
        assert report.chips == {"x0": 1, "x1": -1, "x2": -1}
        assert report.ok

    def test_check_raises_on_bad_divisor(self):
        with pytest.raises(PermissibilityError):
            CurveService.check(*fixtures.trivalent_bad())

    def test_split_report(self):
        report = CurveService.split(*fixtures.elliptic(5), seed=3)
        assert report.ok
        assert len(report.euler_parts) == report.parts

    def test_random_run_with_splits(self):
        report = CurveService.random_run(genus=3, leaves=2, seed=1, count=40, split=True)
        assert report.ok
        assert report.passed == 40
        assert [r.index for r in report.instances] == list(range(40))
        assert all(r.split is not None for r in report.instances)

    @pytest.mark.parametrize("genus, leaves, count", [(-1, 0, 5), (1, -2, 5), (1, 0, 0)])
    def test_random_run_rejects_bad_arguments(self, genus, leaves, count):
        with pytest.raises(InputError):
            CurveService.random_run(genus, leaves, seed=0, count=count)


class TestTorusService:
    def test_check(self):
        report = TorusService.check(TorusQuadraticDivisor.diagonal(-2, 3))
        assert (report.count, report.index, report.euler, report.det) == (6, 1, -6, -6)
        assert report.brute_force_count == 6
        assert report.points[0].lmd == [(1, 1)]
        assert report.ok

    def test_bohr_sommerfeld(self):
        report = TorusService.bohr_sommerfeld([[2, 1], [0, 3]])
        assert report.count == 6
        assert report.ok
