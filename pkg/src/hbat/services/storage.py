"""File-backed stores: append-only records, atomic rewrites for state flips.

The split of secrets across files is the point of the whole design and is
asserted in the tests: the auth side's password file holds sweetword
lists but never the real index; the honeyChecker's store holds indices
but never a sweetword.
"""
from __future__ import annotations

import json
import os
import tempfile
import threading
import time
from pathlib import Path


def append_line(path: Path, line: str) -> None:
    with open(path, "a", encoding="utf-8") as fh:
        fh.write(line + "\n")
        fh.flush()
        os.fsync(fh.fileno())


def atomic_rewrite(path: Path, lines: list[str]) -> None:
    fd, tmp = tempfile.mkstemp(dir=str(path.parent), prefix=path.name + ".")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write("".join(line + "\n" for line in lines))
            fh.flush()
            os.fsync(fh.fileno())
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


class PasswordFileStore:
    """One record per line: username<TAB>scheme<TAB>k<TAB>sw_1|...|sw_k.

    Sweetword encodings are scheme-specific strings (see each engine's
    encode_entry); none of them may contain a tab or a pipe.
    """

    def __init__(self, path: Path) -> None:
        self.path = Path(path)
        self._lock = threading.Lock()
        self._records: dict[str, tuple[str, list[str]]] = {}
        if self.path.exists():
            for line in self.path.read_text(encoding="utf-8").splitlines():
                if not line.strip():
                    continue
                username, scheme, k, words = line.split("\t")
                entries = words.split("|")
                if len(entries) != int(k):
                    raise ValueError(f"corrupt record for {username!r}")
                self._records[username] = (scheme, entries)
        else:
            self.path.parent.mkdir(parents=True, exist_ok=True)
            self.path.touch()

    def has(self, username: str) -> bool:
        with self._lock:
            return username in self._records

    def get(self, username: str) -> tuple[str, list[str]]:
        with self._lock:
            return self._records[username]

    def usernames(self) -> list[str]:
        with self._lock:
            return list(self._records)

    def add(self, username: str, scheme: str, encoded_entries: list[str]) -> None:
        if any("\t" in e or "|" in e or "\n" in e for e in encoded_entries):
            raise ValueError("encoded sweetwords must not contain tab, pipe or newline")
        with self._lock:
            if username in self._records:
                raise KeyError(f"duplicate user {username!r}")
            self._records[username] = (scheme, list(encoded_entries))
            append_line(self.path, "\t".join(
                [username, scheme, str(len(encoded_entries)), "|".join(encoded_entries)]))


class HoneyIndexFileStore:
    """username<TAB>t per line; re-registration appends and last wins."""

    def __init__(self, path: Path) -> None:
        self.path = Path(path)
        self._lock = threading.Lock()
        self._records: dict[str, int] = {}
        if self.path.exists():
            for line in self.path.read_text(encoding="utf-8").splitlines():
                if line.strip():
                    username, t = line.split("\t")
                    self._records[username] = int(t)
        else:
            self.path.parent.mkdir(parents=True, exist_ok=True)
            self.path.touch()

    def set(self, username: str, t: int) -> None:
        with self._lock:
            self._records[username] = t
            append_line(self.path, f"{username}\t{t}")

    def check(self, username: str, submitted: int) -> str:
        with self._lock:
            if username not in self._records:
                raise KeyError(username)
            return "OK" if self._records[username] == submitted else "ALARM"


class BlockStore:
    """Blocked usernames, one per line, atomically rewritten on change."""

    def __init__(self, path: Path) -> None:
        self.path = Path(path)
        self._lock = threading.Lock()
        self._blocked: set[str] = set()
        if self.path.exists():
            self._blocked = {l for l in self.path.read_text(encoding="utf-8").splitlines() if l}
        else:
            self.path.parent.mkdir(parents=True, exist_ok=True)
            self.path.touch()

    def is_blocked(self, username: str) -> bool:
        with self._lock:
            return username in self._blocked

    def block(self, usernames: set[str]) -> None:
        with self._lock:
            self._blocked |= usernames
            atomic_rewrite(self.path, sorted(self._blocked))


class AlarmLog:
    """JSON-lines alarm journal consumed by the admin endpoint."""

    def __init__(self, path: Path) -> None:
        self.path = Path(path)
        self._lock = threading.Lock()
        if not self.path.exists():
            self.path.parent.mkdir(parents=True, exist_ok=True)
            self.path.touch()

    def record(self, username: str, policy_applied: str) -> dict:
        entry = {"username": username, "time": time.time(), "policy_applied": policy_applied}
        with self._lock:
            append_line(self.path, json.dumps(entry))
        return entry

    def entries(self) -> list[dict]:
        with self._lock:
            return [json.loads(line)
                    for line in self.path.read_text(encoding="utf-8").splitlines() if line]
