"""Service configuration: JSON file plus environment overrides."""
from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from pathlib import Path

DEFAULT_SCHEME_KS = {"s3pas": 6, "chc": 3, "pas": 4, "cop": 5}


@dataclass
class ServiceConfig:
    data_dir: Path = Path("./hbat-data")
    policy: str = "light"                  # reaction to an alarm: light | strict
    admin_token: str = "change-me"
    auth_host: str = "127.0.0.1"
    auth_port: int = 8000
    honeychecker_host: str = "127.0.0.1"
    honeychecker_port: int = 8100
    honeychecker_timeout: float = 2.0
    cors_origins: tuple = ("*",)
    scheme_ks: dict = field(default_factory=lambda: dict(DEFAULT_SCHEME_KS))

    def __post_init__(self) -> None:
        if self.policy not in ("light", "strict"):
            raise ValueError(f"policy must be light or strict, got {self.policy!r}")
        self.data_dir = Path(self.data_dir)


def load_config(path: str | Path | None = None) -> ServiceConfig:
    """Read a JSON config file; HBAT_AUTH_PORT / HBAT_HONEYCHECKER_PORT
    environment variables override the ports."""
    raw: dict = {}
    if path is not None:
        raw = json.loads(Path(path).read_text())
    auth = raw.get("auth", {})
    hc = raw.get("honeychecker", {})
    cfg = ServiceConfig(
        data_dir=Path(raw.get("data_dir", "./hbat-data")),
        policy=raw.get("policy", "light"),
        admin_token=raw.get("admin_token", "change-me"),
        auth_host=auth.get("host", "127.0.0.1"),
        auth_port=int(auth.get("port", 8000)),
        honeychecker_host=hc.get("host", "127.0.0.1"),
        honeychecker_port=int(hc.get("port", 8100)),
        honeychecker_timeout=float(hc.get("timeout", 2.0)),
        cors_origins=tuple(raw.get("cors_origins", ["*"])),
        scheme_ks={**DEFAULT_SCHEME_KS, **raw.get("schemes", {})},
    )
    if os.environ.get("HBAT_AUTH_PORT"):
        cfg.auth_port = int(os.environ["HBAT_AUTH_PORT"])
    if os.environ.get("HBAT_HONEYCHECKER_PORT"):
        cfg.honeychecker_port = int(os.environ["HBAT_HONEYCHECKER_PORT"])
    return cfg
