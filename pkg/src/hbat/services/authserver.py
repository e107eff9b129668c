"""Auth server: registration, challenge sessions, verdicts, admin alarms.

Holds the password file (sweetword lists, real index nowhere) and talks
to the honeyChecker over its text protocol to decide OK vs ALARM. Every
denial looks the same to the client regardless of cause: wrong password,
inconsistent transcript, or an alarm.
"""
from __future__ import annotations

import random
import secrets
import threading
from dataclasses import dataclass, field
from typing import Any

from fastapi import FastAPI, Header, HTTPException
from fastapi.middleware.cors import CORSMiddleware
from pydantic import BaseModel

from ..core import SweetwordList, identify_sweetword, SessionTranscript
from ..errors import GenerationTimeout, PrincipleViolationError, SweetwordValidationError
from ..honeygen import generate_sweetwords
from ..schemes import SCHEME_TAGS, get_engine
from .config import ServiceConfig
from .honeychecker import HoneyCheckerClient
from .storage import AlarmLog, BlockStore, PasswordFileStore


class RegisterRequest(BaseModel):
    username: str
    password: Any
    scheme: str
    k: int | None = None


class SessionRequest(BaseModel):
    username: str


class ResponseRequest(BaseModel):
    response: Any
    round: int | None = None
    nonce: str | None = None


@dataclass
class LoginSession:
    session_id: str
    username: str
    scheme: str
    challenge: Any
    rounds: int
    responses: list = field(default_factory=list)
    done: bool = False
    result: str | None = None
    lock: threading.Lock = field(default_factory=threading.Lock)
    replay_cache: dict = field(default_factory=dict)  # (round, nonce) -> reply

    @property
    def next_round(self) -> int:
        return len(self.responses) + 1


def _decode_password(engine, password) -> Any:
    if engine.scheme == "chc" and isinstance(password, list):
        return frozenset(int(i) for i in password)
    if isinstance(password, str):
        return engine.decode_entry(password)
    raise ValueError("unsupported password payload")


def _coerce_response(engine, response) -> Any:
    if engine.scheme in ("chc", "cop"):
        if isinstance(response, bool) or not isinstance(response, (int, str)):
            raise ValueError("response must be an integer")
        return int(response)
    if not isinstance(response, str):
        raise ValueError("response must be a string")
    return response


def create_app(config: ServiceConfig, rng: random.Random | None = None) -> FastAPI:
    config.data_dir.mkdir(parents=True, exist_ok=True)
    passwords = PasswordFileStore(config.data_dir / "passwords.tsv")
    blocks = BlockStore(config.data_dir / "blocked.txt")
    alarms = AlarmLog(config.data_dir / "alarms.jsonl")
    checker = HoneyCheckerClient(config.honeychecker_host, config.honeychecker_port,
                                 config.honeychecker_timeout)
    rng = rng or random.Random()
    rng_lock = threading.Lock()
    engines = {tag: get_engine(tag) for tag in SCHEME_TAGS}
    sessions: dict[str, LoginSession] = {}
    sessions_lock = threading.Lock()

    app = FastAPI(title="hbat-auth")
    app.state.config = config
    app.state.passwords = passwords
    app.state.alarms = alarms
    # the browser client is served from its own origin
    app.add_middleware(
        CORSMiddleware,
        allow_origins=list(config.cors_origins),
        allow_methods=["*"],
        allow_headers=["*"],
    )

    def fresh_rng() -> random.Random:
        with rng_lock:
            return random.Random(rng.getrandbits(64))

    def apply_alarm(username: str) -> None:
        entry_policy = config.policy
        alarms.record(username, entry_policy)
        if entry_policy == "light":
            blocks.block({username})
        else:
            blocks.block(set(passwords.usernames()))

    @app.get("/healthz")
    def healthz():
        return {"status": "ok"}

    @app.post("/register", status_code=201)
    def register(req: RegisterRequest):
        if req.scheme not in SCHEME_TAGS:
            raise HTTPException(400, f"unknown scheme {req.scheme!r}")
        if not req.username or any(ch.isspace() for ch in req.username):
            raise HTTPException(400, "username must be non-empty without whitespace")
        if passwords.has(req.username):
            raise HTTPException(409, "user already registered")
        engine = engines[req.scheme]
        k = req.k or config.scheme_ks[req.scheme]
        try:
            password = _decode_password(engine, req.password)
            swl = generate_sweetwords(password, engine, k, fresh_rng())
        except (SweetwordValidationError, ValueError) as exc:
            raise HTTPException(400, f"cannot protect this password: {exc}")
        t = swl.index_of(password)
        reply = checker.set(req.username, t)
        if reply != "OK":
            raise HTTPException(503, "honeychecker unavailable")
        passwords.add(req.username, req.scheme,
                      [engine.encode_entry(e) for e in swl.entries])
        return {"k": k}

    @app.post("/session")
    def start_session(req: SessionRequest):
        if not passwords.has(req.username):
            raise HTTPException(404, "unknown user")
        if blocks.is_blocked(req.username):
            raise HTTPException(423, "account locked")
        scheme, encoded = passwords.get(req.username)
        engine = engines[scheme]
        swl = SweetwordList(scheme, tuple(engine.decode_entry(e) for e in encoded))
        try:
            challenge = engine.new_challenge(swl, fresh_rng())
        except GenerationTimeout:
            raise HTTPException(503, "challenge generation timed out")
        session = LoginSession(secrets.token_hex(16), req.username, scheme,
                               challenge, engine.rounds)
        with sessions_lock:
            sessions[session.session_id] = session
        return {"session_id": session.session_id, "round": 1,
                "challenge": engine.challenge_payload(challenge, 1, session.session_id)}

    def finish(session: LoginSession) -> str:
        scheme, encoded = passwords.get(session.username)
        engine = engines[scheme]
        swl = SweetwordList(scheme, tuple(engine.decode_entry(e) for e in encoded))
        transcript = SessionTranscript(scheme, session.challenge, tuple(session.responses))
        try:
            index = identify_sweetword(transcript, swl, engine)
        except PrincipleViolationError:
            # generator bug, not a user outcome; deny and leave a trace
            print(f"principle violation for {session.username}", flush=True)
            return "denied"
        if index is None:
            return "denied"
        try:
            verdict = checker.check(session.username, index)
        except OSError:
            return "denied"  # fail closed when the honeyChecker is unreachable
        if verdict == "OK":
            return "accepted"
        if verdict == "ALARM":
            apply_alarm(session.username)
        return "denied"

    @app.post("/session/{session_id}/response")
    def submit_response(session_id: str, req: ResponseRequest):
        with sessions_lock:
            session = sessions.get(session_id)
        if session is None:
            raise HTTPException(404, "unknown session")
        with session.lock:
            if req.nonce is not None and (req.round, req.nonce) in session.replay_cache:
                return session.replay_cache[(req.round, req.nonce)]
            if session.done:
                raise HTTPException(409, "session already completed")
            if req.round is not None and req.round != session.next_round:
                raise HTTPException(409, f"expected round {session.next_round}")
            scheme, _ = passwords.get(session.username)
            engine = engines[scheme]
            try:
                coerced = _coerce_response(engine, req.response)
            except ValueError as exc:
                raise HTTPException(400, str(exc))
            session.responses.append(coerced)
            if session.next_round <= session.rounds:
                reply = {
                    "session_id": session_id,
                    "round": session.next_round,
                    "challenge": engine.challenge_payload(
                        session.challenge, session.next_round, session_id),
                }
            else:
                session.done = True
                session.result = finish(session)
                reply = {"result": session.result}
            if req.nonce is not None:
                session.replay_cache[(req.round, req.nonce)] = reply
            return reply

    @app.get("/admin/alarms")
    def admin_alarms(x_admin_token: str = Header(default="")):
        if x_admin_token != config.admin_token:
            raise HTTPException(401, "admin token required")
        return {"alarms": alarms.entries()}

    return app


def serve(config: ServiceConfig) -> None:
    import uvicorn
    app = create_app(config)
    print(f"auth server listening on {config.auth_host}:{config.auth_port}", flush=True)
    uvicorn.run(app, host=config.auth_host, port=config.auth_port, log_level="warning")
