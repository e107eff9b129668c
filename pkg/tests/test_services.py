"""Two-server behavior: wire protocol, session flow, secret separation."""
from __future__ import annotations

import json
import socket
import subprocess
import sys
import time
from concurrent.futures import ThreadPoolExecutor
import pytest
from fastapi.testclient import TestClient

from hbat.schemes import get_engine
from hbat.services.authserver import create_app
from hbat.services.config import ServiceConfig, load_config
from hbat.services.honeychecker import handle_request
from hbat.services.storage import HoneyIndexFileStore, PasswordFileStore


def free_port() -> int:
    with socket.socket() as s:
        s.bind(("127.0.0.1", 0))
        return s.getsockname()[1]


@pytest.fixture
def checker_process(tmp_path):
    """A real honeyChecker subprocess speaking the text protocol."""
    port = free_port()
    config = {"data_dir": str(tmp_path / "hc-data"), "honeychecker": {"port": port}}
    cfg_path = tmp_path / "hc.json"
    cfg_path.write_text(json.dumps(config))
    proc = subprocess.Popen(
        [sys.executable, "-m", "hbat.cli", "serve", "honeychecker", "--config", str(cfg_path)],
        stdout=subprocess.PIPE, stderr=subprocess.STDOUT)
    deadline = time.time() + 10
    while time.time() < deadline:
        try:
            with socket.create_connection(("127.0.0.1", port), timeout=0.2):
                break
        except OSError:
            time.sleep(0.05)
    else:
        proc.terminate()
        raise RuntimeError("honeychecker did not come up")
    yield port, tmp_path / "hc-data"
    proc.terminate()
    proc.wait(timeout=5)


def raw_request(port: int, line: str) -> str:
    with socket.create_connection(("127.0.0.1", port), timeout=2) as sock:
        sock.sendall(line.encode() + b"\n")
        data = b""
        while not data.endswith(b"\n"):
            chunk = sock.recv(256)
            if not chunk:
                break
            data += chunk
    return data.decode().strip()


class TestHoneyCheckerProtocol:
    def test_set_then_matching_check(self, checker_process):
        port, _ = checker_process
        assert raw_request(port, "SET alex 4") == "OK"
        assert raw_request(port, "CHECK alex 4") == "OK"

    def test_mismatch_alarms(self, checker_process):
        port, _ = checker_process
        assert raw_request(port, "SET alex 4") == "OK"
        assert raw_request(port, "CHECK alex 2") == "ALARM"

    def test_unknown_user(self, checker_process):
        port, _ = checker_process
        assert raw_request(port, "CHECK ghost 1") == "ERR NOUSER"

    def test_malformed_lines(self, checker_process):
        port, _ = checker_process
        assert raw_request(port, "FROB alex 1") == "ERR BADREQ"
        assert raw_request(port, "SET alex") == "ERR BADREQ"
        assert raw_request(port, "SET alex zero") == "ERR BADREQ"
        assert raw_request(port, "SET alex 0") == "ERR BADREQ"

    def test_handler_unit(self, tmp_path):
        store = HoneyIndexFileStore(tmp_path / "hc.tsv")
        assert handle_request(store, "SET u 3\n") == "OK"
        assert handle_request(store, "CHECK u 3\n") == "OK"
        assert handle_request(store, "CHECK u 1\n") == "ALARM"
        assert handle_request(store, "gibberish\n") == "ERR BADREQ"

    def test_reregistration_overwrites(self, checker_process):
        port, _ = checker_process
        raw_request(port, "SET alex 4")
        raw_request(port, "SET alex 2")
        assert raw_request(port, "CHECK alex 2") == "OK"
        assert raw_request(port, "CHECK alex 4") == "ALARM"


def make_app(tmp_path, checker_port, policy="light"):
    config = ServiceConfig(
        data_dir=tmp_path / "auth-data",
        policy=policy,
        admin_token="secret-token",
        honeychecker_port=checker_port,
    )
    import random
    return create_app(config, rng=random.Random(1234)), config


def cop_responses_for(client, payload, word):
    """Compute the digit walk from the public payload like the user would."""
    digits = {c["char"]: c["digit"] for c in payload["cells"]}
    order = sorted(payload["cells"], key=lambda c: (c["y"], c["x"]))
    alphabet = "".join(c["char"] for c in order)
    start = alphabet.index(word[0])
    pos = (start + 11 * digits[word[0]]) % 66
    pos = (pos + sum(digits[ch] for ch in word[1:])) % 66
    return digits[alphabet[pos]]


class TestAuthFlow:
    def test_register_login_accept(self, tmp_path, checker_process):
        port, _ = checker_process
        app, _cfg = make_app(tmp_path, port)
        client = TestClient(app)
        r = client.post("/register", json={"username": "alex", "password": "A1B3",
                                           "scheme": "cop"})
        assert r.status_code == 201 and r.json() == {"k": 5}

        r = client.post("/session", json={"username": "alex"})
        assert r.status_code == 200
        body = r.json()
        digit = cop_responses_for(client, body["challenge"], "A1B3")
        r = client.post(f"/session/{body['session_id']}/response",
                        json={"response": digit, "round": 1})
        assert r.json() == {"result": "accepted"}

    def test_duplicate_registration_conflicts(self, tmp_path, checker_process):
        port, _ = checker_process
        app, _cfg = make_app(tmp_path, port)
        client = TestClient(app)
        client.post("/register", json={"username": "alex", "password": "A1B3", "scheme": "cop"})
        r = client.post("/register", json={"username": "alex", "password": "C2D4",
                                           "scheme": "cop"})
        assert r.status_code == 409

    def test_unknown_user_404(self, tmp_path, checker_process):
        port, _ = checker_process
        app, _cfg = make_app(tmp_path, port)
        client = TestClient(app)
        assert client.post("/session", json={"username": "ghost"}).status_code == 404

    def test_honeyword_login_alarms_blocks_and_shows_in_admin(self, tmp_path, checker_process):
        port, hc_data = checker_process
        app, cfg = make_app(tmp_path, port)
        client = TestClient(app)
        client.post("/register", json={"username": "alex", "password": "A1B3", "scheme": "cop"})
        client.post("/register", json={"username": "mary", "password": "Q7xK", "scheme": "cop"})

        # the attacker reads the breached password file and picks a decoy
        store = PasswordFileStore(cfg.data_dir / "passwords.tsv")
        scheme, entries = store.get("alex")
        honeyword = next(w for w in entries if w != "A1B3")

        body = client.post("/session", json={"username": "alex"}).json()
        digit = cop_responses_for(client, body["challenge"], honeyword)
        r = client.post(f"/session/{body['session_id']}/response", json={"response": digit})
        assert r.json() == {"result": "denied"}

        alarms = client.get("/admin/alarms", headers={"X-Admin-Token": "secret-token"}).json()
        assert [a["username"] for a in alarms["alarms"]] == ["alex"]
        assert alarms["alarms"][0]["policy_applied"] == "light"

        # light policy: offender locked out, other accounts stay live
        assert client.post("/session", json={"username": "alex"}).status_code == 423
        assert client.post("/session", json={"username": "mary"}).status_code == 200

    def test_admin_endpoint_requires_token(self, tmp_path, checker_process):
        port, _ = checker_process
        app, _cfg = make_app(tmp_path, port)
        client = TestClient(app)
        assert client.get("/admin/alarms").status_code == 401

    def test_wrong_password_denied_indistinguishably(self, tmp_path, checker_process):
        port, _ = checker_process
        app, _cfg = make_app(tmp_path, port)
        client = TestClient(app)
        client.post("/register", json={"username": "alex", "password": "A1B3", "scheme": "cop"})
        body = client.post("/session", json={"username": "alex"}).json()
        r = client.post(f"/session/{body['session_id']}/response", json={"response": 11})
        assert r.json() == {"result": "denied"}

    def test_out_of_order_and_replayed_rounds_rejected(self, tmp_path, checker_process):
        port, _ = checker_process
        app, _cfg = make_app(tmp_path, port)
        client = TestClient(app)
        client.post("/register", json={"username": "alex", "password": "2KZW",
                                       "scheme": "s3pas"})
        body = client.post("/session", json={"username": "alex"}).json()
        sid = body["session_id"]
        assert client.post(f"/session/{sid}/response",
                           json={"response": "x", "round": 3}).status_code == 409
        r = client.post(f"/session/{sid}/response",
                        json={"response": "x", "round": 1, "nonce": "n1"})
        assert r.status_code == 200 and r.json()["round"] == 2
        # idempotent retry of the same round+nonce returns the same reply
        again = client.post(f"/session/{sid}/response",
                            json={"response": "x", "round": 1, "nonce": "n1"})
        assert again.json() == r.json()
        # but a fresh attempt to replay round 1 is rejected
        assert client.post(f"/session/{sid}/response",
                           json={"response": "y", "round": 1}).status_code == 409

    def test_storage_separation_of_secrets(self, tmp_path, checker_process):
        port, hc_data = checker_process
        app, cfg = make_app(tmp_path, port)
        client = TestClient(app)
        client.post("/register", json={"username": "alex", "password": "A1B3", "scheme": "cop"})

        auth_files = "".join(p.read_text() for p in sorted(cfg.data_dir.glob("*")))
        store = PasswordFileStore(cfg.data_dir / "passwords.tsv")
        _, entries = store.get("alex")
        t = entries.index("A1B3") + 1

        checker_file = (hc_data / "honeychecker.tsv").read_text()
        # honeyChecker knows the index but no sweetword
        assert f"alex\t{t}" in checker_file
        for word in entries:
            assert word not in checker_file
        # auth side never records the index as data beyond the list order
        for line in auth_files.splitlines():
            assert not line.startswith("alex\t" + str(t) + "\n")
        assert "honeychecker" not in auth_files

    def test_s3pas_full_session_roundtrip(self, tmp_path, checker_process):
        port, _ = checker_process
        app, cfg = make_app(tmp_path, port)
        client = TestClient(app)
        client.post("/register", json={"username": "zoe", "password": "2KZW",
                                       "scheme": "s3pas"})
        engine = get_engine("s3pas")
        body = client.post("/session", json={"username": "zoe"}).json()
        sid = body["session_id"]
        result = None
        for round_no in range(1, 5):
            grid = body["challenge"]["grid"]
            cells = "".join(grid)
            from hbat.schemes.s3pas import S3pasChallenge
            challenge = S3pasChallenge(tuple(cells), 1, 10, 8)
            response = sorted(engine.prs(challenge, round_no, "2KZW"))[0]
            body = client.post(f"/session/{sid}/response",
                               json={"response": response, "round": round_no}).json()
            if "result" in body:
                result = body["result"]
        assert result == "accepted"


class TestConcurrency:
    def test_one_alarm_per_offending_login_under_contention(self, tmp_path, checker_process):
        port, _ = checker_process
        app, cfg = make_app(tmp_path, port)
        client = TestClient(app)
        client.post("/register", json={"username": "alex", "password": "A1B3", "scheme": "cop"})
        store = PasswordFileStore(cfg.data_dir / "passwords.tsv")
        _, entries = store.get("alex")
        honeyword = next(w for w in entries if w != "A1B3")

        # open all sessions first (the account gets blocked by the first
        # completed honeyword login, which would 423 later openings)
        sessions = []
        for _ in range(100):
            body = client.post("/session", json={"username": "alex"}).json()
            sessions.append(body)

        def offend(body):
            digit = cop_responses_for(client, body["challenge"], honeyword)
            return client.post(f"/session/{body['session_id']}/response",
                               json={"response": digit}).json()

        with ThreadPoolExecutor(max_workers=16) as pool:
            results = list(pool.map(offend, sessions))
        assert all(r == {"result": "denied"} for r in results)
        alarms = client.get("/admin/alarms", headers={"X-Admin-Token": "secret-token"}).json()
        assert len(alarms["alarms"]) == 100  # exactly one alarm per login, none lost


class TestConfig:
    def test_load_config_with_overrides(self, tmp_path, monkeypatch):
        cfg_path = tmp_path / "cfg.json"
        cfg_path.write_text(json.dumps({
            "data_dir": str(tmp_path / "d"),
            "policy": "strict",
            "auth": {"port": 1234},
            "honeychecker": {"port": 5678},
            "schemes": {"s3pas": 4},
        }))
        monkeypatch.setenv("HBAT_AUTH_PORT", "4321")
        cfg = load_config(cfg_path)
        assert cfg.policy == "strict"
        assert cfg.auth_port == 4321          # env wins
        assert cfg.honeychecker_port == 5678
        assert cfg.scheme_ks["s3pas"] == 4

    def test_bad_policy_rejected(self):
        with pytest.raises(ValueError):
            ServiceConfig(policy="medium")
