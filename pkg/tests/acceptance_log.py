"""Verdicts of the acceptance criteria, shared with the terminal summary hook."""

ACCEPTANCE: dict[int, tuple[str, bool, str]] = {}


def record_acceptance(number: int, title: str, ok: bool, detail: str = "") -> None:
    ACCEPTANCE[number] = (title, ok, detail)
    print(f"[acceptance {number}] {'PASS' if ok else 'FAIL'} {title} {detail}".rstrip())
