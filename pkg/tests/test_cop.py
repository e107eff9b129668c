"""Digit-walk engine: path lengths, digit assignment, walk identity."""
from __future__ import annotations

import random

import pytest

from hbat import SweetwordList, simulate_session
from hbat.schemes.cop import (
    COP_ALPHABET,
    CopChallenge,
    CopEngine,
    circular_distance,
    confirm_response,
    cop_bruteforce_complexity,
)
from hbat.honeygen import random_account

REFERENCE_WORDS = ("A1B3", "QJw9", "2XTD", "YSRK", "icat")
REFERENCE_CELLS = ["Z", "C", "M", "H", "h"]
REFERENCE_DIGITS = [3, 1, 5, 6, 8]


class TestCircularDistance:
    @pytest.mark.parametrize("src,dst,expected", [
        ("A", "Z", 25), ("Q", "C", 52), ("2", "M", 24), ("Y", "H", 49), ("i", "h", 65),
    ])
    def test_reference_path_lengths(self, src, dst, expected):
        assert circular_distance(src, dst) == expected

    def test_self_distance_is_zero(self):
        for ch in "Az9&":
            assert circular_distance(ch, ch) == 0

    def test_forward_and_backward_sum_to_cycle(self):
        rng = random.Random(0)
        for _ in range(200):
            a, b = rng.sample(COP_ALPHABET, 2)
            assert (circular_distance(a, b) + circular_distance(b, a)) % 66 == 0
            assert 0 <= circular_distance(a, b) <= 65

    def test_unknown_character(self):
        with pytest.raises(ValueError):
            circular_distance("A", "é")


class TestGenerateChallenge:
    def engine_and_list(self):
        swl = SweetwordList("cop", REFERENCE_WORDS)
        return CopEngine(), swl

    def test_reference_example_reproduces(self):
        engine, swl = self.engine_and_list()
        challenge = engine.generate_challenge(
            swl, random.Random(1), response_cells=REFERENCE_CELLS,
            response_digits=REFERENCE_DIGITS)
        # quotient of 25/11 goes to the first character, remainder split
        # over the rest and summing to 3
        assert challenge.digits["A"] == 2
        assert challenge.digits["1"] + challenge.digits["B"] + challenge.digits["3"] == 3
        assert challenge.digits["Z"] == 3
        for word, cell, digit in zip(REFERENCE_WORDS, REFERENCE_CELLS, REFERENCE_DIGITS):
            assert challenge.response_cells[word] == cell
            assert challenge.response_digits[word] == digit
            assert engine.legit_response(challenge, 1, word) == digit

    def test_response_cells_avoid_sweetword_characters(self):
        engine, swl = self.engine_and_list()
        rng = random.Random(2)
        for _ in range(50):
            challenge = engine.generate_challenge(swl, rng)
            used = {ch for w in REFERENCE_WORDS for ch in w}
            assert not used & set(challenge.response_cells.values())
            digits = list(challenge.response_digits.values())
            assert len(set(digits)) == len(digits)

    def test_walk_identity_on_random_lists(self):
        engine = CopEngine()
        rng = random.Random(3)
        for _ in range(200):
            swl, _t = random_account(engine, 5, rng)
            challenge = engine.generate_challenge(swl, rng)
            for word in swl.entries:
                path = circular_distance(word[0], challenge.response_cells[word])
                vertical = challenge.digits[word[0]]
                horizontal = sum(challenge.digits[ch] for ch in word[1:])
                assert vertical * 11 + horizontal == path
                assert engine.legit_response(challenge, 1, word) == \
                    challenge.response_digits[word]

    def test_k_eleven_is_rejected(self):
        words = []
        pool = iter(COP_ALPHABET)
        for _ in range(11):
            words.append("".join(next(pool) for _ in range(4)))
        swl = SweetwordList("cop", tuple(words))
        with pytest.raises(ValueError, match="response digits"):
            CopEngine().generate_challenge(swl, random.Random(0))


class TestBasicWalk:
    def test_reference_walk_lands_on_M(self):
        # digits arranged as in the single-user walk-through: A=6 so six
        # steps down return to A, then 2+2+8=12 steps right reach M (digit 6)
        engine = CopEngine()
        digits = {ch: 0 for ch in COP_ALPHABET}
        digits.update({"A": 6, "1": 2, "B": 2, "3": 8, "M": 6})
        challenge = CopChallenge(digits, {}, {})
        assert engine.legit_response(challenge, 1, "A1B3") == 6

    def test_all_zero_digits_stay_put(self):
        engine = CopEngine()
        digits = {ch: 0 for ch in COP_ALPHABET}
        digits["A"] = 0
        challenge = CopChallenge(digits, {}, {})
        assert engine.legit_response(challenge, 1, "A1B3") == digits["A"]


class TestVerify:
    def test_digit_maps_to_owning_sweetword(self):
        engine, swl = CopEngine(), SweetwordList("cop", REFERENCE_WORDS)
        challenge = engine.generate_challenge(
            swl, random.Random(4), response_cells=REFERENCE_CELLS,
            response_digits=REFERENCE_DIGITS)
        assert engine.verify(3, challenge, swl) == 1  # A1B3 owns digit 3
        assert engine.verify(6, challenge, swl) == 4  # YSRK owns digit 6

    def test_uncovered_digit_rejects(self):
        engine, swl = CopEngine(), SweetwordList("cop", REFERENCE_WORDS)
        challenge = engine.generate_challenge(
            swl, random.Random(5), response_cells=REFERENCE_CELLS,
            response_digits=REFERENCE_DIGITS)
        covered = set(REFERENCE_DIGITS)
        for digit in range(10):
            if digit not in covered:
                assert engine.verify(digit, challenge, swl) is None

    def test_sessions_identify_players(self):
        engine = CopEngine()
        rng = random.Random(6)
        for i in range(60):
            swl, _t = random_account(engine, 5, rng)
            play = (i % 5) + 1
            _, idx = simulate_session(engine, swl, rng, play_as=play)
            assert idx == play

    def test_half_the_digits_are_covered_at_default_k(self):
        engine = CopEngine()
        rng = random.Random(7)
        swl, _t = random_account(engine, 5, rng)
        challenge = engine.generate_challenge(swl, rng)
        assert len(set(challenge.response_digits.values())) / 10 == 0.5

    def test_payload_exposes_all_cells(self):
        engine = CopEngine()
        rng = random.Random(8)
        swl, _t = random_account(engine, 5, rng)
        challenge = engine.generate_challenge(swl, rng)
        payload = engine.challenge_payload(challenge, 1, "sid")
        assert len(payload["cells"]) == 66
        assert set(payload["cells"][0]) == {"char", "digit", "x", "y"}
        assert "response" not in str(payload.keys())


class TestDoubleEntry:
    def test_matching_entries_pass_through(self):
        assert confirm_response(7, 7) == 7

    def test_mismatch_asks_again(self):
        assert confirm_response(7, 3) is None


class TestComplexity:
    def test_reference_value(self):
        assert cop_bruteforce_complexity(66, 4) == 66 * 50116 == 3307656

    def test_length_one_is_grid_size(self):
        assert cop_bruteforce_complexity(66, 1) == 66

    def test_guessing_probability_is_reciprocal(self):
        assert 1 / cop_bruteforce_complexity(66, 4) == pytest.approx(1 / 3307656)
