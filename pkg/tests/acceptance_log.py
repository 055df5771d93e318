"""Collects the one-line verdicts printed by the acceptance tests."""

LINES: list[str] = []


def record(criterion: str, ok: bool, message: str) -> bool:
    line = f"{'PASS' if ok else 'FAIL'} [{criterion}] {message}"
    LINES.append(line)
    print(line)
    return ok
