def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """Print the one-line acceptance verdicts collected during the run."""
    try:
        import test_acceptance
    except ImportError:
        return
    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in test_acceptance.RESULTS:
            terminalreporter.write_line(line)
