from __future__ import annotations

import random

import pytest

from reqsmell.ingest import split_story_text
from reqsmell.metrics import (
    ArtifactMetrics,
    StoryPartMetrics,
    UNASSIGNED,
    artifact_metrics,
    build_treemap,
    compute_density,
    count_words,
    metrics_report_csv,
    round_half_up,
    story_part_metrics,
)
from reqsmell.smells import Finding, SmellKind, Suppression


def make_finding(artifact="a", item="i", kind=SmellKind.LOOPHOLES, span=(0, 4), suppressed=None):
    return Finding(
        smell=kind,
        artifact_id=artifact,
        item_id=item,
        token_span=(0, 0),
        char_range=span,
        matched_text="x" * (span[1] - span[0]),
        message="m",
        improvement_hint="h",
        suppressed_by=suppressed,
    )


class TestCountWords:
    def test_empty(self, annotate):
        assert count_words([annotate("")]) == 0

    def test_hand_counted(self, annotate):
        assert count_words([annotate("must not sign off users due to timeouts.")]) == 8

    def test_decimal(self, annotate):
        assert count_words([annotate("1.5 seconds")]) == 2


class TestComputeDensity:
    @pytest.mark.parametrize(
        "findings,words,expected",
        [(45, 1896, 23.7), (5, 199, 25.1), (0, 1000, 0.0)],
    )
    def test_reported_values(self, findings, words, expected):
        assert round_half_up(compute_density(findings, words)) == expected

    def test_zero_words(self):
        assert compute_density(5, 0) == 0.0

    def test_scale_consistency(self):
        rng = random.Random(7)
        for _ in range(100):
            findings = rng.randint(0, 500)
            words = rng.randint(1, 50000)
            assert compute_density(findings, words) == pytest.approx(
                compute_density(findings * 2, words * 2)
            )

    def test_half_up_rounding(self):
        assert round_half_up(0.05, 1) == 0.1
        assert round_half_up(1.25, 1) == 1.3
        assert round_half_up(1.9525, 0) == 2.0


class TestStoryPartMetrics:
    def test_published_sum_row_densities(self):
        # Aggregate word/finding totals per part; densities print as whole numbers.
        rows = {
            "Role": StoryPartMetrics("Role", 3073, 6),
            "Feature": StoryPartMetrics("Feature", 15240, 533),
            "Reason": StoryPartMetrics("Reason", 9642, 615),
        }
        assert round_half_up(rows["Role"].density, 0) == 2
        assert round_half_up(rows["Feature"].density, 0) == 35
        assert round_half_up(rows["Reason"].density, 0) == 64

    def test_finding_assigned_by_span_start(self, annotate):
        text = "As a visitor, I want to browse, so that I can shop easily."
        parts = split_story_text(text)
        tokens = annotate(text)
        easily = next(t for t in tokens if t.surface == "easily")
        finding = make_finding(span=(easily.start, easily.end))
        result = story_part_metrics([(parts, tokens, [finding])])
        assert result["Reason"].findings == 1
        assert result["Role"].findings == 0
        assert result["Feature"].findings == 0

    def test_non_conformant_counts_as_unassigned(self, annotate):
        text = "The system must log events."
        parts = split_story_text(text)
        # Feature spans the whole non-conformant text, so force a finding
        # outside every span by using an empty parts object.
        from reqsmell.ingest import UserStoryParts

        result = story_part_metrics(
            [(UserStoryParts(conformant=False), annotate(text), [make_finding(span=(0, 3))])]
        )
        assert result[UNASSIGNED].findings == 1

    def test_suppressed_findings_not_counted(self, annotate):
        text = "As a user, I want speed, so that pages load."
        parts = split_story_text(text)
        tokens = annotate(text)
        suppressed = make_finding(span=(11, 12), suppressed=Suppression.CONDITION)
        result = story_part_metrics([(parts, tokens, [suppressed])])
        assert sum(r.findings for r in result.values()) == 0


class TestArtifactMetrics:
    def test_total_is_sum_of_per_smell(self):
        metric = ArtifactMetrics(
            artifact_id="a",
            folder_path=(),
            word_count=100,
            per_smell={SmellKind.LOOPHOLES: 2, SmellKind.COMPARATIVES: 3},
        )
        assert metric.findings_total == 5
        assert metric.density_total == pytest.approx(50.0)

    def test_suppressed_excluded_by_default(self, annotate):
        tokens = annotate("The parser should not fail.")
        findings = [
            make_finding(span=(11, 17)),
            make_finding(kind=SmellKind.NEGATIVE_STATEMENTS, span=(18, 21), suppressed=Suppression.CONDITION),
        ]
        default = artifact_metrics("a", (), [tokens], findings)
        included = artifact_metrics("a", (), [tokens], findings, include_suppressed=True)
        assert default.findings_total == 1
        assert included.findings_total == 2
        assert included.findings_total - default.findings_total == default.suppressed_total


def random_metrics(rng, n):
    metrics = []
    for i in range(n):
        depth = rng.randint(0, 3)
        folder = tuple(f"d{rng.randint(0, 2)}" for _ in range(depth))
        per_smell = {
            kind: rng.randint(0, 9)
            for kind in rng.sample(list(SmellKind), k=rng.randint(0, len(SmellKind)))
        }
        metrics.append(
            ArtifactMetrics(
                artifact_id="/".join((*folder, f"f{i}.txt")),
                folder_path=folder,
                word_count=rng.randint(0, 2000),
                per_smell=per_smell,
            )
        )
    return metrics


class TestTreemap:
    def test_two_artifacts_sum_at_parent(self):
        metrics = [
            ArtifactMetrics("docs/a.txt", ("docs",), 100, {SmellKind.LOOPHOLES: 10}),
            ArtifactMetrics("docs/b.txt", ("docs",), 200, {SmellKind.LOOPHOLES: 20}),
        ]
        root = build_treemap(metrics)
        assert root.findings_total == 30
        assert root.children[0].name == "docs"
        assert root.children[0].findings_total == 30

    def test_single_artifact_is_leaf_under_root(self):
        root = build_treemap([ArtifactMetrics("a.txt", (), 10, {})])
        assert len(root.children) == 1
        assert root.children[0].artifact_id == "a.txt"
        assert root.children[0].children == []

    def test_empty_input(self):
        root = build_treemap([])
        assert root.children == []
        assert root.word_count == 0
        assert root.findings_total == 0

    def test_sum_invariant_over_random_hierarchies(self):
        rng = random.Random(99)
        for _ in range(30):
            metrics = random_metrics(rng, rng.randint(0, 12))
            root = build_treemap(metrics)
            stack = [root]
            while stack:
                node = stack.pop()
                if not node.children:
                    continue
                for kind in SmellKind:
                    assert node.per_smell.get(kind, 0) == sum(
                        child.per_smell.get(kind, 0) for child in node.children
                    )
                assert node.word_count == sum(c.word_count for c in node.children)
                stack.extend(node.children)


class TestReports:
    def test_csv_has_artifact_and_sum_rows(self):
        metrics = [
            ArtifactMetrics("a.txt", (), 1896, {SmellKind.LOOPHOLES: 45}),
            ArtifactMetrics("b.txt", (), 199, {SmellKind.LOOPHOLES: 5}),
        ]
        report = metrics_report_csv(metrics)
        lines = report.strip().splitlines()
        assert lines[1].startswith("a.txt,1896,45,23.7")
        assert lines[2].startswith("b.txt,199,5,25.1")
        assert lines[3].startswith("Sum,2095,50,23.9")
