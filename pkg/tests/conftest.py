def pytest_terminal_summary(terminalreporter):
    import test_acceptance

    if test_acceptance.SUMMARY:
        terminalreporter.section("acceptance criteria")
        for line in sorted(test_acceptance.SUMMARY, key=lambda l: int(l.split()[1].rstrip("]"))):
            terminalreporter.write_line(line)
