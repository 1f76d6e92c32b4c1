"""Decay law, matrix construction, and major author selection."""

import pytest
from hypothesis import given
from hypothesis import strategies as st

from busfactor.errors import ContractViolation
from busfactor.gitio import ContributionEvent, MiningResult
from busfactor.knowledge import (
    ACTIVE,
    INACTIVE,
    KnowledgeMatrix,
    build_matrix,
    decay_weight,
    major_authors,
    matrix_from_json,
    matrix_to_json,
)

REF = 1_704_067_200
DAY = 86400


def mining_result(events, files, ref=REF):
    return MiningResult(
        events=tuple(events),
        reference_time=ref,
        files=tuple(files),
        commit_count_scanned=len({e.commit_id for e in events}),
        commit_count_in_window=len({e.commit_id for e in events}),
    )


def event(author, path, ts, commit="c0"):
    return ContributionEvent(author_id=author, path=path, commit_id=commit, timestamp_utc=ts)


class TestDecayWeight:
    def test_zero_age_is_identity(self):
        assert decay_weight(0) == 1.0

    def test_half_life_halves(self):
        # One half-life of 152 days maps to exactly one halving.
        assert decay_weight(152) == pytest.approx(0.5, rel=1e-12)

    def test_three_half_lives(self):
        assert decay_weight(456) == pytest.approx(0.125, rel=1e-12)

    def test_negative_age_rejected(self):
        with pytest.raises(ContractViolation):
            decay_weight(-0.5)

    def test_strictly_decreasing(self):
        samples = [decay_weight(t) for t in (0, 1, 10, 152, 400, 3650)]
        assert all(a > b for a, b in zip(samples, samples[1:]))

    @given(st.floats(min_value=0, max_value=3650, allow_nan=False))
    def test_half_life_property(self, age):
        assert decay_weight(age + 152) == pytest.approx(0.5 * decay_weight(age), rel=1e-12)


class TestBuildMatrix:
    def test_single_event_at_reference_time(self):
        mining = mining_result([event("a", "f", REF)], [("f", 10)])
        matrix = build_matrix(mining)
        assert matrix.entries["f"] == {"a": 1.0}
        assert matrix.file_status["f"] == ACTIVE

    def test_two_events_sum_decay_weights(self):
        # Hand oracle: age 0 contributes 1.0 and age 152 days contributes 0.5.
        mining = mining_result(
            [event("a", "f", REF, "c1"), event("a", "f", REF - 152 * DAY, "c2")],
            [("f", 10)],
        )
        matrix = build_matrix(mining)
        assert matrix.entries["f"]["a"] == pytest.approx(1.5, rel=1e-12)

    def test_bot_only_file_is_inactive(self):
        mining = mining_result([event("bot", "f", REF)], [("f", 10)])
        matrix = build_matrix(mining, bots={"bot"})
        assert matrix.file_status["f"] == INACTIVE
        assert matrix.entries["f"] == {}

    def test_head_file_without_events_is_inactive(self):
        mining = mining_result([event("a", "f", REF)], [("f", 10), ("g", 5)])
        matrix = build_matrix(mining)
        assert matrix.file_status["g"] == INACTIVE

    def test_events_for_deleted_paths_are_dropped(self):
        mining = mining_result(
            [event("a", "f", REF, "c1"), event("a", "gone", REF, "c1")], [("f", 10)]
        )
        matrix = build_matrix(mining)
        assert set(matrix.entries) == {"f"}

    def test_empty_event_list_yields_all_inactive(self):
        mining = mining_result([], [("f", 10)])
        matrix = build_matrix(mining)
        assert matrix.file_status == {"f": INACTIVE}

    @given(
        st.lists(
            st.tuples(
                st.sampled_from(["a", "b", "c"]),
                st.sampled_from(["f", "g"]),
                st.integers(min_value=REF - 500 * DAY, max_value=REF),
            ),
            max_size=20,
        ),
        st.lists(
            st.tuples(
                st.sampled_from(["a", "b", "c"]),
                st.sampled_from(["f", "g"]),
                st.integers(min_value=REF - 500 * DAY, max_value=REF),
            ),
            max_size=20,
        ),
    )
    def test_additivity_over_event_concatenation(self, first, second):
        files = [("f", 1), ("g", 1)]
        to_events = lambda triples: [
            event(a, p, ts, f"c{i}") for i, (a, p, ts) in enumerate(triples)
        ]
        combined = build_matrix(mining_result(to_events(first) + to_events(second), files))
        left = build_matrix(mining_result(to_events(first), files))
        right = build_matrix(mining_result(to_events(second), files))
        for path in ("f", "g"):
            authors = set(left.entries[path]) | set(right.entries[path])
            for author in authors:
                expected = left.entries[path].get(author, 0.0) + right.entries[path].get(
                    author, 0.0
                )
                assert combined.entries[path][author] == pytest.approx(expected, rel=1e-12)

    @given(st.sets(st.sampled_from(["a", "b", "c"])))
    def test_bot_erasure(self, bots):
        mining = mining_result(
            [event(a, "f", REF - i * DAY, f"c{i}") for i, a in enumerate(["a", "b", "c"])],
            [("f", 1)],
        )
        matrix = build_matrix(mining, bots=bots)
        assert not (set(matrix.entries["f"]) & bots)


class TestMajorAuthors:
    def matrix(self, author_map, status=ACTIVE):
        return KnowledgeMatrix(REF, {"f": dict(author_map)}, {"f": status})

    def test_three_quarters_cutoff(self):
        # Brute-force check: 0.75 * 10 = 7.5, so a and b qualify, c does not.
        result = major_authors(self.matrix({"a": 10.0, "b": 8.0, "c": 1.0}), "f")
        assert result.majors == ("a", "b")

    def test_sole_author_is_major(self):
        assert major_authors(self.matrix({"a": 4.0}), "f").majors == ("a",)

    def test_boundary_is_inclusive(self):
        result = major_authors(self.matrix({"a": 10.0, "b": 7.5}), "f")
        assert result.majors == ("a", "b")

    def test_ordering_descending_then_lexicographic(self):
        result = major_authors(self.matrix({"b": 5.0, "a": 5.0, "c": 6.0}), "f")
        assert result.majors == ("c", "a", "b")

    def test_inactive_path_rejected(self):
        with pytest.raises(ContractViolation):
            major_authors(self.matrix({}, status=INACTIVE), "f")


class TestMatrixSerialization:
    def test_round_trip(self):
        mining = mining_result(
            [event("a", "f", REF, "c1"), event("b", "f", REF - 152 * DAY, "c2")],
            [("f", 10), ("g", 3)],
        )
        matrix = build_matrix(mining)
        again = matrix_from_json(matrix_to_json(matrix))
        assert again == matrix

    def test_bytes_deterministic(self):
        matrix = KnowledgeMatrix(REF, {"f": {"a": 1 / 3}}, {"f": ACTIVE})
        assert matrix_to_json(matrix) == matrix_to_json(matrix)
        assert b"0.3333333333333333" in matrix_to_json(matrix)

    def test_scale_invariance_of_majors(self):
        # Scaling every knowledge value by a constant keeps the major set.
        base = {"a": 3.0, "b": 2.4, "c": 0.4}
        scaled = {k: v * 17.5 for k, v in base.items()}
        m1 = KnowledgeMatrix(REF, {"f": base}, {"f": ACTIVE})
        m2 = KnowledgeMatrix(REF, {"f": scaled}, {"f": ACTIVE})
        assert major_authors(m1, "f").majors == major_authors(m2, "f").majors
