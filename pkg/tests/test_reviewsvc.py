from __future__ import annotations

import json
import socket
import threading
import time

import pytest
import requests
import uvicorn

from reqsmell.pipeline import AnalysisConfig, bundled_fixture_corpus
from reqsmell.reviewsvc import RunStore, create_app
from reqsmell.reviewsvc.store import InvalidReviewError, UnknownFindingError, normalize_status
from reqsmell.smells import SmellKind


@pytest.fixture
def corpus(tmp_path):
    src = bundled_fixture_corpus().read_text(encoding="utf-8")
    corpus_dir = tmp_path / "corpus"
    corpus_dir.mkdir()
    (corpus_dir / "examples.txt").write_text(src, encoding="utf-8")
    return corpus_dir


@pytest.fixture
def store(tmp_path, corpus):
    return RunStore(tmp_path / "runs")


class TestRunStore:
    def test_fixture_corpus_produces_findings(self, store, corpus):
        run_id = store.analyze_and_store([corpus])
        findings = store.findings(run_id)
        assert len(findings) >= 8
        assert {f.smell for f in findings} == set(SmellKind)

    def test_rerun_same_run_id_and_identical_bytes(self, store, corpus):
        first = store.analyze_and_store([corpus])
        first_bytes = (store.run_dir(first) / "findings.jsonl").read_bytes()
        second = store.analyze_and_store([corpus])
        assert first == second
        assert (store.run_dir(second) / "findings.jsonl").read_bytes() == first_bytes

    def test_reviews_survive_reanalysis(self, store, corpus):
        run_id = store.analyze_and_store([corpus])
        target = store.findings(run_id)[0].finding_id
        store.review(run_id, target, status="rejected", comment="noise")
        rerun = store.analyze_and_store([corpus])
        assert store.reviews(rerun)[target].rejected
        assert target in store.blacklist(rerun)

    def test_reviews_reattach_to_new_run_with_overlapping_findings(self, store, corpus, tmp_path):
        run_id = store.analyze_and_store([corpus])
        target = store.findings(run_id)[0].finding_id
        store.review(run_id, target, status="rejected")
        # Extend the corpus: a changed corpus means a new run id, but the
        # unchanged item keeps its finding ids.
        extra = corpus / "more.txt"
        extra.write_text("The parser should be fast.", encoding="utf-8")
        new_run = store.analyze_and_store([corpus])
        assert new_run != run_id
        assert target in store.blacklist(new_run)

    def test_empty_directory_run(self, store, tmp_path):
        empty = tmp_path / "empty"
        empty.mkdir()
        run_id = store.analyze_and_store([empty])
        assert store.findings(run_id) == []
        assert store.metrics(run_id) == []

    def test_unknown_finding_rejected(self, store, corpus):
        run_id = store.analyze_and_store([corpus])
        with pytest.raises(UnknownFindingError):
            store.review(run_id, "deadbeef", status="accepted")

    def test_review_log_keeps_history(self, store, corpus):
        run_id = store.analyze_and_store([corpus])
        target = store.findings(run_id)[0].finding_id
        store.review(run_id, target, status="accepted")
        store.review(run_id, target, status="rejected")
        log = (store.run_dir(run_id) / "reviews.jsonl").read_text(encoding="utf-8")
        assert len(log.strip().splitlines()) == 2
        assert store.reviews(run_id)[target].status == "rejected"

    def test_listed_findings_filters(self, store, corpus):
        run_id = store.analyze_and_store([corpus])
        only = store.listed_findings(run_id, smells={SmellKind.LOOPHOLES})
        assert only and all(f.smell is SmellKind.LOOPHOLES for f in only)


class TestNormalizeStatus:
    def test_canonical_states(self):
        assert normalize_status("accepted") == ("accepted", False)
        assert normalize_status("Rejected") == ("rejected", False)
        assert normalize_status("OPEN") == ("open", False)

    def test_custom_state_round_trips_verbatim(self):
        assert normalize_status("under review") == ("under review", True)

    def test_invalid_status(self):
        with pytest.raises(InvalidReviewError):
            normalize_status("")
        with pytest.raises(InvalidReviewError):
            normalize_status(None)


@pytest.fixture
def live_server(tmp_path, corpus):
    """A real uvicorn instance on an ephemeral port."""
    store = RunStore(tmp_path / "runs")
    run_id = store.analyze_and_store([corpus])
    app = create_app(store)
    sock = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
    sock.bind(("127.0.0.1", 0))
    port = sock.getsockname()[1]
    config = uvicorn.Config(app, log_level="error")
    server = uvicorn.Server(config)
    thread = threading.Thread(target=server.run, kwargs={"sockets": [sock]}, daemon=True)
    thread.start()
    deadline = time.time() + 10
    while not server.started:
        if time.time() > deadline:
            raise RuntimeError("server did not start")
        time.sleep(0.02)
    base = f"http://127.0.0.1:{port}/api/v1"
    yield base, run_id, store
    server.should_exit = True
    thread.join(timeout=5)


class TestHttpApi:
    def test_runs_and_artifacts_listing(self, live_server):
        base, run_id, _ = live_server
        runs = requests.get(f"{base}/runs").json()
        assert [r["run_id"] for r in runs] == [run_id]
        artifacts = requests.get(f"{base}/runs/{run_id}/artifacts").json()
        assert len(artifacts) == 1
        assert artifacts[0]["findings_total"] >= 8

    def test_review_round_trip_and_blacklist(self, live_server):
        base, run_id, store = live_server
        artifact_id = store.metrics(run_id)[0].artifact_id
        items_url = f"{base}/runs/{run_id}/artifacts/{artifact_id}/items"
        before = requests.get(items_url).json()
        first = before["items"][0]["findings"][0]
        fid = first["finding_id"]

        put = requests.put(
            f"{base}/runs/{run_id}/findings/{fid}/review",
            json={"status": "rejected", "comment": "false positive", "reviewer": "alex"},
        )
        assert put.status_code == 200
        assert put.json()["status"] == "rejected"

        after = requests.get(items_url).json()
        listed = {f["finding_id"] for item in after["items"] for f in item["findings"]}
        assert fid not in listed

        included = requests.get(items_url, params={"include_rejected": "true"}).json()
        listed = {f["finding_id"] for item in included["items"] for f in item["findings"]}
        assert fid in listed

    def test_finding_detail_carries_hint_and_review(self, live_server):
        base, run_id, store = live_server
        fid = store.findings(run_id)[0].finding_id
        requests.put(
            f"{base}/runs/{run_id}/findings/{fid}/review", json={"status": "under review"}
        )
        detail = requests.get(f"{base}/runs/{run_id}/findings/{fid}").json()
        assert detail["improvement_hint"]
        assert detail["review"]["status"] == "under review"
        assert detail["review"]["custom"] is True

    def test_smell_filter(self, live_server):
        base, run_id, store = live_server
        artifact_id = store.metrics(run_id)[0].artifact_id
        url = f"{base}/runs/{run_id}/artifacts/{artifact_id}/items"
        got = requests.get(url, params={"smells": "Loopholes"}).json()
        kinds = {f["smell"] for item in got["items"] for f in item["findings"]}
        assert kinds == {"Loopholes"}

    def test_treemap_overall_and_per_smell(self, live_server):
        base, run_id, _ = live_server
        overall = requests.get(f"{base}/runs/{run_id}/treemap").json()
        assert overall["findings_total"] >= 8
        per = requests.get(
            f"{base}/runs/{run_id}/treemap", params={"smell": "VaguePronouns"}
        ).json()
        assert per["word_count"] == overall["word_count"]
        assert per["density"] <= overall["density"]

    def test_error_shapes(self, live_server):
        base, run_id, _ = live_server
        missing_run = requests.get(f"{base}/runs/nope/artifacts")
        assert missing_run.status_code == 404
        assert missing_run.json()["code"] == "unknown_run"

        missing_finding = requests.put(
            f"{base}/runs/{run_id}/findings/ffffffffffffffff/review",
            json={"status": "accepted"},
        )
        assert missing_finding.status_code == 404
        assert missing_finding.json()["code"] == "unknown_finding"

        bad_body = requests.put(
            f"{base}/runs/{run_id}/findings/ffffffffffffffff/review",
            json={"status": 7},
        )
        assert bad_body.status_code == 422

        bad_query = requests.get(
            f"{base}/runs/{run_id}/treemap", params={"smell": "NoSuchSmell"}
        )
        assert bad_query.status_code == 400
        assert bad_query.json()["code"] == "unknown_smell"
