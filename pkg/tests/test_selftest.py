"""The selftest harness itself: reporting shape and mutation sensitivity."""

from signrank import selftest


def test_registry_has_twelve_named_checks():
    assert len(selftest.CHECKS) == 12
    names = [name for name, _ in selftest.CHECKS]
    assert len(set(names)) == 12


def test_run_check_returns_structured_result():
    result = selftest.run_check(3)  # the cheapest check
    assert result.index == 3
    assert result.passed and result.detail


def test_corrupted_duality_is_detected(monkeypatch):
    # a broken complement would flip check 1 to FAIL, not crash it
    from signrank import covectors
    from signrank.covectors import DualityCheck

    def broken(subspace):
        return DualityCheck(ok=False, complement_only=(), perp_only=())

    monkeypatch.setattr(selftest, "verify_duality", broken)
    passed, detail = selftest.check_duality_random_subspaces()
    assert not passed
    assert "failed" in detail


def test_run_all_logs_one_line_per_check(monkeypatch):
    # stub every check so run_all's reporting can be exercised instantly
    monkeypatch.setattr(
        selftest,
        "CHECKS",
        [(f"stub {i}", lambda i=i: (True, f"detail {i}")) for i in range(12)],
    )
    lines = []
    results = selftest.run_all(log=lines.append)
    assert len(results) == 12 and all(r.passed for r in results)
    assert len(lines) == 12
    assert all("PASS" in line for line in lines)
