def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS, line

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(RESULTS):
            terminalreporter.write_line(line(n, RESULTS[n]))
