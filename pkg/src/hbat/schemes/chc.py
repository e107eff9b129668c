"""Honeyword-enabled Convex-Hull-Click: icon fields and pass-icon hulls.

A user's secret is a set of pass icons. Each round displays a subset of
all icons, always including some of the user's pass icons; the user
answers by clicking any icon inside the convex hull those displayed pass
icons span. With k sweet icon-sets stored, the designated round's
placement is resampled until no displayed icon falls inside two hulls,
so a consistent session pins down exactly one sweetword.
"""
from __future__ import annotations

from dataclasses import dataclass

from ..errors import GenerationTimeout
from ..geometry import GridPoint, convex_hull, point_in_hull
from ..core import SweetwordList, SessionTranscript, identify_sweetword


@dataclass(frozen=True)
class ChcParams:
    total_icons: int = 112       # icon universe
    shown_per_round: int = 70    # icons on screen each round
    secret_size: int = 5         # pass icons per sweetword
    min_shown_secret: int = 3    # lower bound of the per-round pass-icon count
    rounds: int = 4
    k: int = 3
    grid_cols: int = 14
    grid_rows: int = 8
    max_iters: int = 100_000

    def __post_init__(self) -> None:
        if not (3 <= self.min_shown_secret <= self.secret_size
                <= self.shown_per_round <= self.total_icons):
            raise ValueError("need 3 <= Kc <= K <= M <= N")
        if self.grid_cols * self.grid_rows < self.total_icons:
            raise ValueError("display grid too small for the icon universe")


@dataclass(frozen=True, eq=False)
class IconPlacement:
    """One round's view: displayed icon ids mapped to grid positions."""

    positions: dict[int, GridPoint]
    shown_secret_count: int = 0

    def displayed(self) -> set[int]:
        return set(self.positions)

    def shown_of(self, icon_set: frozenset[int]) -> list[int]:
        return sorted(i for i in icon_set if i in self.positions)


@dataclass(frozen=True)
class ChcChallenge:
    placements: tuple[IconPlacement, ...]
    designated_round: int


def _cross_t(o, a, b) -> int:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _hull_t(points: list[tuple[int, int]]) -> list[tuple[int, int]]:
    """Monotone-chain hull over coordinate tuples (hot-path twin of
    geometry.convex_hull, cross-checked against it in the tests)."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts
    lower: list = []
    for p in pts:
        while len(lower) >= 2 and _cross_t(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list = []
    for p in reversed(pts):
        while len(upper) >= 2 and _cross_t(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def _in_hull_t(p: tuple[int, int], hull: list[tuple[int, int]]) -> bool:
    if len(hull) == 1:
        return p == hull[0]
    if len(hull) == 2:
        a, b = hull
        return (_cross_t(a, b, p) == 0
                and min(a[0], b[0]) <= p[0] <= max(a[0], b[0])
                and min(a[1], b[1]) <= p[1] <= max(a[1], b[1]))
    n = len(hull)
    for i in range(n):
        if _cross_t(hull[i], hull[(i + 1) % n], p) < 0:
            return False
    return True


def _icon_disjoint(hulls: list[list[tuple[int, int]]], placed: list[tuple[int, int]]) -> bool:
    """No placed position may fall inside (or on) two hulls."""
    for pt in placed:
        owners = 0
        for hull in hulls:
            if _in_hull_t(pt, hull):
                owners += 1
                if owners > 1:
                    return False
    return True


class ChcEngine:
    scheme = "chc"

    def __init__(self, params: ChcParams | None = None) -> None:
        self.params = params or ChcParams()

    @property
    def rounds(self) -> int:
        return self.params.rounds

    @property
    def max_sweetwords(self) -> int:
        # A response is one of the displayed icons, and every sweetword's
        # full icon set must fit on screen.
        return min(self.params.shown_per_round,
                   self.params.shown_per_round // self.params.secret_size)

    # -- sweetwords ----------------------------------------------------------

    def random_password(self, rng) -> frozenset[int]:
        return frozenset(rng.sample(range(self.params.total_icons), self.params.secret_size))

    def perturb(self, password: frozenset[int], rng, existing=()) -> frozenset[int] | None:
        """A fresh icon set disjoint from every set already chosen."""
        used = set().union(*existing) if existing else set()
        pool = [i for i in range(self.params.total_icons) if i not in used]
        if len(pool) < self.params.secret_size:
            return None
        return frozenset(rng.sample(pool, self.params.secret_size))

    def entry_violations(self, entries) -> list[str]:
        p = self.params
        problems = []
        for i, s in enumerate(entries):
            if not isinstance(s, frozenset) or len(s) != p.secret_size:
                problems.append(f"entry {i + 1} is not a {p.secret_size}-icon set")
            elif any(not (0 <= icon < p.total_icons) for icon in s):
                problems.append(f"entry {i + 1} uses unknown icon ids")
        if problems:
            return problems
        if len(entries) * p.secret_size > p.shown_per_round:
            problems.append("icon sets cannot all be displayed in one round")
        for i in range(len(entries)):
            for j in range(i + 1, len(entries)):
                if entries[i] & entries[j]:
                    problems.append(
                        f"entries {i + 1} and {j + 1} share icons {sorted(entries[i] & entries[j])}")
        return problems

    def encode_entry(self, entry: frozenset[int]) -> str:
        return ",".join(str(i) for i in sorted(entry))

    def decode_entry(self, text: str) -> frozenset[int]:
        return frozenset(int(part) for part in text.split(","))

    # -- rounds ---------------------------------------------------------------

    def _hull_of(self, placement: IconPlacement, icon_set: frozenset[int]):
        return convex_hull(placement.positions[i] for i in placement.shown_of(icon_set))

    def generate_round(self, sweet_sets, designated: bool, rng,
                       max_iters: int | None = None) -> IconPlacement:
        """One round's placement; when designated, resample until no
        displayed icon sits inside two sweetword hulls."""
        p = self.params
        if len(sweet_sets) * p.secret_size > p.shown_per_round:
            raise ValueError("icon sets cannot all be displayed in one round")
        budget = max_iters if max_iters is not None else p.max_iters
        sweet_lists = [sorted(s) for s in sweet_sets]
        sweet_pool = set().union(*sweet_sets) if sweet_sets else set()
        decoys = [i for i in range(p.total_icons) if i not in sweet_pool]
        all_cells = range(p.grid_cols * p.grid_rows)
        cols = p.grid_cols

        for _ in range(budget):
            # Kc is redrawn with every proposal; in the designated round the
            # acceptance test then favours the smaller hull sizes that can
            # actually be made disjoint, keeping generation desk-scale.
            shown_secret_count = rng.randint(p.min_shown_secret, p.secret_size)
            shown: list[int] = []
            for icons in sweet_lists:
                shown.extend(rng.sample(icons, shown_secret_count))
            shown.extend(rng.sample(decoys, p.shown_per_round - len(shown)))
            cells = rng.sample(all_cells, p.shown_per_round)
            xy = [(c % cols, c // cols) for c in cells]
            if designated and sweet_sets:
                hulls = []
                for g in range(len(sweet_lists)):
                    pts = xy[g * shown_secret_count:(g + 1) * shown_secret_count]
                    hulls.append(_hull_t(pts))
                if not _icon_disjoint(hulls, xy):
                    continue
            positions = {icon: GridPoint(x, y) for icon, (x, y) in zip(shown, xy)}
            return IconPlacement(positions, shown_secret_count)
        raise GenerationTimeout(f"no disjoint-hull placement after {budget} tries")

    def new_challenge(self, sweetwords: SweetwordList, rng) -> ChcChallenge:
        designated = rng.randint(1, self.rounds)
        placements = tuple(
            self.generate_round(sweetwords.entries, r == designated, rng)
            for r in range(1, self.rounds + 1)
        )
        return ChcChallenge(placements, designated)

    # -- responses -------------------------------------------------------------

    def hull_response_valid(self, placement: IconPlacement, icon_set: frozenset[int],
                            response_icon: int) -> bool:
        """Boundary-inclusive membership of a displayed icon in the hull of
        the displayed pass icons."""
        if response_icon not in placement.positions:
            raise ValueError("response icon is not displayed")
        hull = self._hull_of(placement, icon_set)
        return point_in_hull(placement.positions[response_icon], hull)

    def prs(self, challenge: ChcChallenge, round_no: int, entry: frozenset[int]) -> set[int]:
        placement = challenge.placements[round_no - 1]
        hull = self._hull_of(placement, entry)
        return {icon for icon, pos in placement.positions.items() if point_in_hull(pos, hull)}

    def legit_response(self, challenge: ChcChallenge, round_no: int,
                       entry: frozenset[int], rng) -> int:
        return rng.choice(sorted(self.prs(challenge, round_no, entry)))

    def response_space(self, challenge: ChcChallenge, round_no: int) -> list[int]:
        return sorted(challenge.placements[round_no - 1].positions)

    def verify_session(self, challenge: ChcChallenge, responses, sweetwords: SweetwordList):
        transcript = SessionTranscript(self.scheme, challenge, tuple(responses))
        return identify_sweetword(transcript, sweetwords, self)

    def challenge_payload(self, challenge: ChcChallenge, round_no: int, session_id: str) -> dict:
        placement = challenge.placements[round_no - 1]
        return {
            "icons": [{"id": icon, "x": pos.col, "y": pos.row}
                      for icon, pos in sorted(placement.positions.items())],
            "session_id": session_id,
            "round": round_no,
        }


def expected_appearances(total_icons: int, shown_per_round: int, secret_size: int,
                         rounds: int, is_pass: bool) -> float:
    """Expected number of times one icon appears over `rounds` challenges
    of the basic scheme (single pass-icon set, 3..K of them shown per
    round, uniformly)."""
    n, m, k = total_icons, shown_per_round, secret_size
    if min(n, m, k) <= 0 or rounds < 0:
        raise ValueError("parameters must be positive")
    if k <= 2:
        raise ValueError("formula undefined for secret sizes <= 2")
    if is_pass:
        return rounds * (k * (k + 1) / 2 - 3) / (k * (k - 2))
    return rounds * (m * (k - 2) - k * (k + 1) / 2 + 3) / ((k - 2) * (n - k))


def probabilistic_attack_sim(params: ChcParams, sweet_sets, rounds: int, rng) -> dict[int, int]:
    """Observed per-icon appearance counts over simulated challenges.

    Models the frequency analysis an observing attacker runs: per round,
    a uniform 3..|pool| sized sample of the sweet-icon pool is shown
    (for a single set this is exactly the basic scheme), padded with
    uniformly chosen decoys. With several sweet sets the pool grows, the
    per-icon appearance rate drops, and pass icons stop standing out --
    which is why the attacker needs more rounds than against the basic
    scheme. The login path itself always shows >=3 icons of every
    sweetword; this simulation is about what frequencies reveal.
    """
    if rounds < 1:
        raise ValueError("rounds must be >= 1")
    pool = sorted(set().union(*[set(s) for s in sweet_sets]))
    if len(pool) < 3:
        raise ValueError("sweet pool must hold at least 3 icons")
    decoys = [i for i in range(params.total_icons) if i not in set(pool)]
    counts: dict[int, int] = {i: 0 for i in range(params.total_icons)}
    for _ in range(rounds):
        shown_sweet = rng.sample(pool, rng.randint(3, len(pool)))
        shown = shown_sweet + rng.sample(decoys, params.shown_per_round - len(shown_sweet))
        for icon in shown:
            counts[icon] += 1
    return counts
