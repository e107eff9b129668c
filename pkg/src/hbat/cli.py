"""Command-line front door: sessions, benchmarks, attacks, formulas, servers.

Every randomized subcommand takes --seed and is bit-for-bit reproducible
for the random-derived fields; without one, a fresh seed is drawn and
printed so a run can be reproduced after the fact. Reports print as CSV
or JSON; with --out the same data is written to the file and a rendered
figure lands next to it.

Exit codes: 0 success, 1 usage error, 2 runtime failure.
"""
from __future__ import annotations

import itertools
import json
import math
import random
import secrets as _secrets
import sys
from pathlib import Path

import click

from . import attacks as atk
from . import reports
from .core import simulate_session
from .errors import HbatError
from .honeygen import random_account
from .schemes import SCHEME_TAGS, get_engine
from .schemes.chc import expected_appearances
from .schemes.cop import cop_bruteforce_complexity
from .schemes.pas import pas_bruteforce_complexity
from .schemes.s3pas import (
    BENCH_CSV_HEADERS,
    S3pasEngine,
    S3pasParams,
    brute_force_observation_complexity,
    challenge_gen_stats,
    expected_triangle_area,
    typo_false_alarm_prob,
)

SCHEME_CHOICE = click.Choice(SCHEME_TAGS)


def _seed_option(f):
    return click.option("--seed", type=int, default=None,
                        help="RNG seed; printed when omitted")(f)


def _resolve_seed(seed: int | None) -> int:
    if seed is None:
        seed = _secrets.randbits(32)
        click.echo(f"seed: {seed}", err=True)
    return seed


def _parse_k_range(text: str) -> list[int]:
    if ".." in text:
        lo, hi = text.split("..", 1)
        return list(range(int(lo), int(hi) + 1))
    return [int(part) for part in text.split(",")]


def _emit(payload: dict, out: Path | None) -> None:
    text = json.dumps(payload, indent=2, sort_keys=True)
    click.echo(text)
    if out is not None:
        reports.write_json(out, payload)


@click.group()
def cli() -> None:
    """Honeyword-enabled shoulder-surfing-resistant authentication lab."""


# -- session ----------------------------------------------------------------

@cli.group()
def session() -> None:
    """Interactive-scheme login simulation."""


@session.command("run")
@click.option("--scheme", type=SCHEME_CHOICE, required=True)
@click.option("--k", type=int, default=None, help="sweetwords per account")
@click.option("--simulate-user", "behavior", default="legit",
              help="legit | honeyword:J | random")
@_seed_option
def session_run(scheme: str, k: int | None, behavior: str, seed: int | None) -> None:
    """Simulate one full login and print the transcript plus verdict."""
    rng = random.Random(_resolve_seed(seed))
    engine = get_engine(scheme)
    k = k or engine.params.k
    swl, t = random_account(engine, k, rng)
    if behavior == "legit":
        play_as = t
        respond = None
    elif behavior.startswith("honeyword:"):
        j = int(behavior.split(":", 1)[1])
        if not (1 <= j <= k):
            raise click.UsageError(f"honeyword index must be in 1..{k}")
        if j == t:
            j = 1 + (t % k)  # J collided with the real password; pick a decoy
        play_as = j
        respond = None
    elif behavior == "random":
        play_as = t

        def respond(challenge, round_no, entry):
            return rng.choice(list(engine.response_space(challenge, round_no)))
    else:
        raise click.UsageError("--simulate-user must be legit, honeyword:J or random")

    transcript, identified = simulate_session(engine, swl, rng, play_as=play_as,
                                              respond=respond)
    alarm = identified is not None and identified != t
    verdict = "accepted" if identified == t else "denied"
    click.echo(f"scheme: {scheme}  k: {k}  real index: {t}  played: {play_as}")
    for round_no, response in enumerate(transcript.responses, start=1):
        click.echo(f"round {round_no}: response {response!r}")
    click.echo(f"identified index: {identified}")
    click.echo(f"verdict: {verdict}" + ("  (ALARM: honeyword submitted)" if alarm else ""))


# -- bench --------------------------------------------------------------------

@cli.group()
def bench() -> None:
    """Performance benchmarks."""


@bench.command("challenge-gen")
@click.option("--k", "k_range", default="4..8", help="single k, list 4,6,8 or range 4..8")
@click.option("--runs", type=int, default=20, show_default=True)
@_seed_option
@click.option("--out", type=click.Path(path_type=Path), default=None,
              help="write CSV here (a PNG lands alongside)")
@click.option("--figure/--no-figure", default=True, show_default=True)
def bench_challenge_gen(k_range: str, runs: int, seed: int | None,
                        out: Path | None, figure: bool) -> None:
    """Iterations and wall time of the disjoint-triangle generation loop."""
    rng = random.Random(_resolve_seed(seed))
    rows = challenge_gen_stats(_parse_k_range(k_range), runs, rng)
    text = reports.csv_text(BENCH_CSV_HEADERS, rows)
    click.echo(text, nl=False)
    if out is not None:
        reports.write_csv(out, BENCH_CSV_HEADERS, rows)
        if figure:
            target = reports.render_bench_figure(rows, out)
            click.echo(f"figure: {target}", err=True)


# -- attacks --------------------------------------------------------------------

@cli.group()
def attack() -> None:
    """Adversary simulations."""


_common_attack = [
    click.option("--scheme", type=SCHEME_CHOICE, required=True),
    click.option("--trials", type=int, default=10_000, show_default=True),
    click.option("--k", type=int, default=None),
    click.option("--workers", type=int, default=1, show_default=True),
    click.option("--out", type=click.Path(path_type=Path), default=None),
]


def _attack_options(f):
    for opt in reversed(_common_attack):
        f = opt(f)
    return _seed_option(f)


@attack.command("bruteforce")
@click.option("--scheme", type=click.Choice(["s3pas", "cop"]), required=True)
@click.option("--sessions", type=int, default=5, show_default=True)
@click.option("--alphabet-size", type=int, default=12, show_default=True,
              help="reduced candidate alphabet (enumeration stays desk-scale)")
@_seed_option
@click.option("--out", type=click.Path(path_type=Path), default=None)
def attack_bruteforce(scheme: str, sessions: int, alphabet_size: int,
                      seed: int | None, out: Path | None) -> None:
    """Observation brute force: candidate pruning across recorded logins."""
    rng = random.Random(_resolve_seed(seed))
    if scheme == "s3pas":
        if alphabet_size != 12:
            raise click.UsageError("the reduced grid is 4x3; --alphabet-size must be 12")
        engine = S3pasEngine(S3pasParams(cols=4, rows=3, alphabet="ABCDEFGHIJKL", k=2))
        swl, t = random_account(engine, 2, rng)
        candidates = ["".join(p) for p in
                      itertools.product(engine.params.alphabet, repeat=4)]
    else:
        engine = get_engine("cop")
        swl, t = random_account(engine, engine.params.k, rng)
        pool = "ABCDEFGHIJKL"[:alphabet_size]
        candidates = ["".join(p) for p in itertools.permutations(pool, 4)]
        secret = swl.entries[t - 1]
        if secret not in candidates:
            candidates.append(secret)
    trace = atk.bruteforce_observer(engine, swl, t, candidates, sessions, rng)
    payload = {"scheme": scheme, "sessions": sessions,
               "candidate_space": trace[0], "trace": trace}
    _emit(payload, out)
    if out is not None:
        reports.render_trace_figure(trace, out)


@attack.command("random-click")
@_attack_options
def attack_random_click(scheme, trials, k, workers, out, seed) -> None:
    """Per-round success probability of uniformly random responses."""
    engine = get_engine(scheme)
    report = atk.random_click_attack(engine, trials, _resolve_seed(seed), k=k,
                                     workers=workers)
    payload = {
        "scheme": scheme, "trials": trials,
        "per_round_password": [e.as_dict() for e in report.per_round_password],
        "per_round_any_sweetword": [e.as_dict() for e in report.per_round_any],
    }
    _emit(payload, out)
    if out is not None:
        ests = list(report.per_round_password)
        reports.render_rates_figure(
            [f"round {i+1}" for i in range(len(ests))],
            [e.rate for e in ests], [e.ci95 for e in ests], out,
            "random click: password-set hit rate")


@attack.command("dos")
@_attack_options
def attack_dos(scheme, trials, k, workers, out, seed) -> None:
    """Deliberate honeyword submission by someone who knows the password."""
    engine = get_engine(scheme)
    report = atk.dos_attack_sim(engine, trials, _resolve_seed(seed), k=k, workers=workers)
    payload = {
        "scheme": scheme, "trials": trials,
        "alarm": report.alarm.as_dict(),
        "designated_round_hit": report.designated_hit.as_dict(),
        "response_coverage": report.coverage,
    }
    _emit(payload, out)
    if out is not None:
        reports.render_rates_figure(
            ["alarm", "designated hit"],
            [report.alarm.rate, report.designated_hit.rate],
            [report.alarm.ci95, report.designated_hit.ci95], out,
            f"{scheme}: deliberate honeyword submission")


@attack.command("typo")
@_attack_options
def attack_typo(scheme, trials, k, workers, out, seed) -> None:
    """False-alarm rate of uniformly random wrong responses."""
    engine = get_engine(scheme)
    seed = _resolve_seed(seed)
    est = atk.typo_false_alarm_sim(engine, trials, seed, k=k, workers=workers)
    analytic = {
        "s3pas": typo_false_alarm_prob(3, 80, 4),
        "pas": 3 / 20,
        "cop": 4 / 9,
        "chc": None,
    }[scheme]
    payload = {"scheme": scheme, "trials": trials, "simulated": est.as_dict(),
               "analytic": analytic}
    if scheme == "s3pas":
        # the analytic figure assumes 3 cells per triangle; report what the
        # grid actually produces alongside
        measured = engine.measure_mean_triangle_cells(2000, random.Random(seed + 1))
        payload["measured_mean_cells"] = round(measured, 3)
        payload["analytic_at_measured"] = typo_false_alarm_prob(measured, 80, 4)
    _emit(payload, out)


@attack.command("msv")
@_attack_options
def attack_msv(scheme, trials, k, workers, out, seed) -> None:
    """Cross-system sweetword-list intersection exposing shared passwords."""
    engine = get_engine(scheme)
    est = atk.msv_attack_sim(engine, trials, _resolve_seed(seed), k=k, workers=workers)
    payload = {"scheme": scheme, "trials": trials,
               "password_exposed_exactly": est.as_dict()}
    _emit(payload, out)


@attack.command("flatness")
@click.option("--scheme", type=SCHEME_CHOICE, required=True)
@click.option("--accounts", type=int, default=400, show_default=True)
@click.option("--k", type=int, default=None)
@click.option("--wordlike/--uniform", default=False, show_default=True,
              help="draw name+digit style passwords instead of uniform ones")
@_seed_option
@click.option("--out", type=click.Path(path_type=Path), default=None)
def attack_flatness(scheme, accounts, k, wordlike, seed, out) -> None:
    """Heuristic advantage over the 1/k baseline at spotting the password."""
    engine = get_engine(scheme)
    seed = _resolve_seed(seed)
    pool = atk.generate_accounts(engine, accounts, seed, k=k, wordlike=wordlike)
    result = atk.flatness_estimate(pool, list(atk.HEURISTICS), seed + 1)
    payload = {"scheme": scheme, "accounts": accounts, "heuristics": result}
    _emit(payload, out)
    if out is not None:
        names = list(result)
        reports.render_rates_figure(
            names, [result[n]["rate"] for n in names],
            [(result[n]["ci95_low"], result[n]["ci95_high"]) for n in names],
            out, f"{scheme}: password-spotting heuristics")


# -- formulas ----------------------------------------------------------------

@cli.group()
def formula() -> None:
    """Closed-form quantities, evaluated exactly."""


@formula.command("es")
@click.option("--n", type=int, default=9, show_default=True)
def formula_es(n: int) -> None:
    """Mean triangle area over an n-by-n coordinate lattice."""
    click.echo(f"{expected_triangle_area(n):.9f}")


@formula.command("chc-expect")
@click.option("--total-icons", "-N", "total", type=int, default=112, show_default=True)
@click.option("--shown", "-M", type=int, default=70, show_default=True)
@click.option("--secret-size", "-K", type=int, default=5, show_default=True)
@click.option("--rounds", "-r", type=int, default=100, show_default=True)
def formula_chc(total: int, shown: int, secret_size: int, rounds: int) -> None:
    """Expected per-icon appearance counts over observed rounds."""
    passes = expected_appearances(total, shown, secret_size, rounds, is_pass=True)
    non = expected_appearances(total, shown, secret_size, rounds, is_pass=False)
    click.echo(f"pass {round(passes, 2)}, non-pass {round(non, 2)}")


@formula.command("complexity")
@click.option("--scheme", type=SCHEME_CHOICE, required=True)
def formula_complexity(scheme: str) -> None:
    """Observation brute-force candidate counts at default parameters."""
    if scheme == "s3pas":
        value = brute_force_observation_complexity(80, 3)
        click.echo(f"observation candidates C(80,3) = {value}")
    elif scheme == "chc":
        value = math.comb(112, 5)
        click.echo(f"observation candidates C(112,5) = {value}")
    elif scheme == "pas":
        value = pas_bruteforce_complexity(25, 26, 1, 2)
        click.echo(f"observation candidates C(650,1)^2 = {value}")
    else:
        value = cop_bruteforce_complexity(66, 4)
        click.echo(f"observation candidates 66*C(68,3) = {value}")
        click.echo(f"guessing probability = 1/{value}")


@formula.command("typo")
@click.option("--mean-cells", type=float, default=3.0, show_default=True)
@click.option("--alphabet", type=int, default=80, show_default=True)
@click.option("--rounds", type=int, default=4, show_default=True)
def formula_typo(mean_cells: float, alphabet: int, rounds: int) -> None:
    """Analytic false-alarm probability (mean-cells / alphabet)^rounds."""
    click.echo(f"{typo_false_alarm_prob(mean_cells, alphabet, rounds):.3e}")


# -- servers ------------------------------------------------------------------

@cli.group()
def serve() -> None:
    """Run the networked services."""


@serve.command("auth")
@click.option("--config", "config_path", type=click.Path(exists=True, path_type=Path),
              default=None)
def serve_auth(config_path: Path | None) -> None:
    """The auth server (HTTP/JSON)."""
    from .services import authserver, load_config
    authserver.serve(load_config(config_path))


@serve.command("honeychecker")
@click.option("--config", "config_path", type=click.Path(exists=True, path_type=Path),
              default=None)
def serve_honeychecker(config_path: Path | None) -> None:
    """The honeyChecker (text-line TCP)."""
    from .services import honeychecker, load_config
    honeychecker.serve(load_config(config_path))


def main(argv: list[str] | None = None) -> int:
    try:
        cli.main(args=argv, standalone_mode=False)
    except click.UsageError as exc:
        click.echo(f"usage error: {exc.format_message()}", err=True)
        if exc.ctx is not None:
            click.echo(exc.ctx.get_usage(), err=True)
        return 1
    except click.ClickException as exc:
        exc.show()
        return 1
    except click.exceptions.Abort:
        return 1
    except (HbatError, OSError, ValueError) as exc:
        click.echo(f"error: {exc}", err=True)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
