def pytest_terminal_summary(terminalreporter):
    """One PASS/FAIL line per acceptance criterion, in criterion order."""
    lines = []
    for outcome in ("passed", "failed"):
        for rep in terminalreporter.stats.get(outcome, []):
            props = dict(rep.user_properties)
            if rep.when == "call" and "criterion" in props:
                lines.append((props["criterion"], outcome.upper()[:4], props.get("detail", "")))
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for crit, verdict, detail in sorted(lines, key=lambda x: _order(x[0])):
        terminalreporter.write_line(f"[{verdict}] {crit}  {detail}")


def _order(label):
    head = label.split()[0]
    return (int("".join(ch for ch in head if ch.isdigit()) or 0), head)
