"""Collects one pass/fail line per acceptance criterion."""

from contextlib import contextmanager

RESULTS: dict[int, tuple[bool, str, str]] = {}


@contextmanager
def criterion(n: int, title: str):
    note = {"detail": ""}
    try:
        yield note
    except BaseException:
        RESULTS[n] = (False, title, note["detail"])
        print(f"criterion {n}: FAIL  {title}")
        raise
    RESULTS[n] = (True, title, note["detail"])
    print(f"criterion {n}: PASS  {title}" + (f"  ({note['detail']})" if note["detail"] else ""))
