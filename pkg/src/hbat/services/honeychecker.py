"""The honeyChecker: a separate process holding only (username, index).

Text-line protocol over TCP, UTF-8, one request per newline-terminated
line:

    SET <username> <t>    ->  OK
    CHECK <username> <j>  ->  OK | ALARM | ERR NOUSER
    anything else         ->  ERR BADREQ

It never sees a password or sweetword; the auth server only ever sends it
usernames and 1-based indices.
"""
from __future__ import annotations

import socket
import socketserver
from pathlib import Path

from .config import ServiceConfig
from .storage import HoneyIndexFileStore

_MAX_LINE = 1024


def handle_request(store: HoneyIndexFileStore, line: str) -> str:
    parts = line.strip().split(" ")
    if len(parts) != 3 or parts[0] not in ("SET", "CHECK"):
        return "ERR BADREQ"
    verb, username, number = parts
    if not username or not number.isdigit() or int(number) < 1:
        return "ERR BADREQ"
    index = int(number)
    if verb == "SET":
        store.set(username, index)
        return "OK"
    try:
        return store.check(username, index)
    except KeyError:
        return "ERR NOUSER"


class _Handler(socketserver.StreamRequestHandler):
    def handle(self) -> None:
        while True:
            raw = self.rfile.readline(_MAX_LINE)
            if not raw:
                return
            try:
                line = raw.decode("utf-8")
            except UnicodeDecodeError:
                self.wfile.write(b"ERR BADREQ\n")
                continue
            reply = handle_request(self.server.store, line)
            self.wfile.write(reply.encode("utf-8") + b"\n")


class HoneyCheckerServer(socketserver.ThreadingTCPServer):
    allow_reuse_address = True
    daemon_threads = True

    def __init__(self, host: str, port: int, store_path: Path) -> None:
        super().__init__((host, port), _Handler)
        self.store = HoneyIndexFileStore(store_path)


def serve(config: ServiceConfig) -> None:
    """Run the honeyChecker until interrupted."""
    config.data_dir.mkdir(parents=True, exist_ok=True)
    server = HoneyCheckerServer(config.honeychecker_host, config.honeychecker_port,
                                config.data_dir / "honeychecker.tsv")
    print(f"honeychecker listening on {config.honeychecker_host}:{config.honeychecker_port}",
          flush=True)
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.shutdown()


class HoneyCheckerClient:
    """Synchronous client used by the auth server; one request per
    connection, fail-closed on any transport problem."""

    def __init__(self, host: str, port: int, timeout: float = 2.0) -> None:
        self.host = host
        self.port = port
        self.timeout = timeout

    def _roundtrip(self, line: str) -> str:
        with socket.create_connection((self.host, self.port), timeout=self.timeout) as sock:
            sock.sendall(line.encode("utf-8") + b"\n")
            reply = b""
            while not reply.endswith(b"\n"):
                chunk = sock.recv(256)
                if not chunk:
                    break
                reply += chunk
        return reply.decode("utf-8").strip()

    def set(self, username: str, t: int) -> str:
        return self._roundtrip(f"SET {username} {t}")

    def check(self, username: str, j: int) -> str:
        return self._roundtrip(f"CHECK {username} {j}")
