from __future__ import annotations

import pytest

from reqsmell.pipeline import (
    AnalysisConfig,
    analyze_paths,
    bundled_fixture_corpus,
    collect_input_files,
    findings_to_json,
)
from reqsmell.smells import SmellKind


@pytest.fixture
def nested_corpus(tmp_path):
    root = tmp_path / "corpus"
    (root / "sub" / "deep").mkdir(parents=True)
    (root / "a.txt").write_text(
        "The system should log events.\n\nUsers must not wait.", encoding="utf-8"
    )
    (root / "sub" / "b.txt").write_text(
        "As far as possible, keep it simple.", encoding="utf-8"
    )
    (root / "sub" / "deep" / "c.txt").write_text(
        "This provides a better overview, which is good.", encoding="utf-8"
    )
    return root


class TestAnalyzePaths:
    def test_artifact_ids_mirror_folder_structure(self, nested_corpus):
        result = analyze_paths([nested_corpus])
        ids = [m.artifact_id for m in result.metrics()]
        assert ids == ["a.txt", "sub/b.txt", "sub/deep/c.txt"]
        folders = {m.artifact_id: m.folder_path for m in result.metrics()}
        assert folders["sub/deep/c.txt"] == ("sub", "deep")

    def test_parallel_output_matches_serial(self, nested_corpus):
        serial = analyze_paths([nested_corpus], AnalysisConfig(jobs=1))
        parallel = analyze_paths([nested_corpus], AnalysisConfig(jobs=4))
        assert findings_to_json(serial.findings()) == findings_to_json(parallel.findings())
        assert [m.to_dict() for m in serial.metrics()] == [
            m.to_dict() for m in parallel.metrics()
        ]

    def test_bad_file_becomes_diagnostic_not_abort(self, nested_corpus):
        (nested_corpus / "broken.csv").write_text("a,b\n1,2\n", encoding="utf-8")
        result = analyze_paths([nested_corpus])
        assert len(result.diagnostics) == 1
        assert len(result.metrics()) == 3

    def test_fixture_corpus_covers_all_smell_kinds(self):
        result = analyze_paths([bundled_fixture_corpus()])
        assert {f.smell for f in result.findings()} == set(SmellKind)

    def test_collect_skips_unsupported_suffixes(self, tmp_path):
        (tmp_path / "x.txt").write_text("a", encoding="utf-8")
        (tmp_path / "x.bin").write_bytes(b"\x00")
        files = collect_input_files([tmp_path])
        assert [f.name for f in files] == ["x.txt"]


class TestNestedArtifactsOverHttp:
    def test_slashed_artifact_id_route(self, nested_corpus, tmp_path):
        # Artifact ids contain "/" for nested corpora; the items route must
        # still resolve them.
        import socket
        import threading
        import time

        import requests
        import uvicorn

        from reqsmell.reviewsvc import RunStore, create_app

        store = RunStore(tmp_path / "runs")
        run_id = store.analyze_and_store([nested_corpus])
        app = create_app(store)
        sock = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
        sock.bind(("127.0.0.1", 0))
        port = sock.getsockname()[1]
        server = uvicorn.Server(uvicorn.Config(app, log_level="error"))
        thread = threading.Thread(target=server.run, kwargs={"sockets": [sock]}, daemon=True)
        thread.start()
        deadline = time.time() + 10
        while not server.started:
            if time.time() > deadline:
                raise RuntimeError("server did not start")
            time.sleep(0.02)
        try:
            base = f"http://127.0.0.1:{port}/api/v1"
            payload = requests.get(
                f"{base}/runs/{run_id}/artifacts/sub/deep/c.txt/items"
            ).json()
            assert payload["artifact_id"] == "sub/deep/c.txt"
            kinds = {f["smell"] for item in payload["items"] for f in item["findings"]}
            assert "Comparatives" in kinds and "VaguePronouns" in kinds
        finally:
            server.should_exit = True
            thread.join(timeout=5)
