import json

import pytest

from semkit.corpus import Example
from semkit.errors import CacheMissError, SemkitError, TransportError
from semkit.evaluation import POLICIES, compare_outcomes
from semkit.execute import run_program
from semkit.llm import (BootstrapConfig, CompletionRequest, LlmClient, ReplayCache,
                        bootstrap_annotations, extract_program)
from semkit.prompts import load_dd_source
from semkit.resources import data_path, dd_path


def request(prompt="hello", model="m1"):
    return CompletionRequest(prompt=prompt, model=model)


def test_temperature_bounds():
    with pytest.raises(ValueError):
        CompletionRequest(prompt="p", model="m", temperature=3.0)
    assert CompletionRequest(prompt="p", model="m").temperature == 0.0


def test_replay_returns_stored_text(tmp_path):
    cache = ReplayCache(tmp_path / "c.jsonl")
    cache.put(request(), "stored text")
    client = LlmClient(mode="replay", cache=ReplayCache(tmp_path / "c.jsonl"))
    assert client.complete(request()) == "stored text"


def test_replay_miss_names_fingerprint(tmp_path):
    client = LlmClient(mode="replay", cache=ReplayCache(tmp_path / "c.jsonl"))
    with pytest.raises(CacheMissError) as err:
        client.complete(request())
    assert request().fingerprint() in str(err.value)


def test_record_then_replay_round_trip(tmp_path):
    sent = []

    def transport(req):
        sent.append(req)
        return "completion body"

    path = tmp_path / "c.jsonl"
    recorder = LlmClient(mode="record", cache=ReplayCache(path), transport=transport)
    recorded = recorder.complete(request())

    def exploding(req):  # replay must never touch the network
        raise AssertionError("transport used in replay mode")

    replayer = LlmClient(mode="replay", cache=ReplayCache(path), transport=exploding)
    assert replayer.complete(request()) == recorded == "completion body"
    assert len(sent) == 1


def test_cache_file_is_append_only_jsonl(tmp_path):
    path = tmp_path / "c.jsonl"
    cache = ReplayCache(path)
    cache.put(request("a"), "one")
    cache.put(request("b"), "two")
    lines = [json.loads(line) for line in path.read_text().splitlines()]
    assert len(lines) == 2
    assert {"fingerprint", "prompt_sha256", "model", "temperature", "completion",
            "meta"} <= set(lines[0])


def test_fingerprint_collision_detected(tmp_path):
    path = tmp_path / "c.jsonl"
    cache = ReplayCache(path)
    cache.put(request("a"), "one")
    entry = json.loads(path.read_text())
    entry["prompt_sha256"] = "0" * 64
    path.write_text(json.dumps(entry) + "\n")
    with pytest.raises(SemkitError, match="collision"):
        ReplayCache(path).get(request("a"))


def test_retries_with_backoff(tmp_path):
    attempts = []

    def flaky(req):
        attempts.append(1)
        if len(attempts) < 3:
            raise TransportError("try again")
        return "finally"

    client = LlmClient(mode="live", transport=flaky, retries=3, backoff_seconds=0.0)
    assert client.complete(request()) == "finally"
    assert len(attempts) == 3

    def always_down(req):
        raise TransportError("down")

    client = LlmClient(mode="live", transport=always_down, retries=2, backoff_seconds=0.0)
    with pytest.raises(TransportError):
        client.complete(request())


def test_extract_program_fenced():
    text = "Sure!\n```python\ndef answer():\n    return 1\n```\nHope that helps."
    assert extract_program(text) == "def answer():\n    return 1"


def test_extract_program_function_shaped():
    text = "Here you go:\ndef answer():\n    x = 1\n    return x\nThat's it."
    assert extract_program(text) == "def answer():\n    x = 1\n    return x"


def test_extract_program_plain():
    assert extract_program("  answer(count(state(all)))\n") == "answer(count(state(all)))"


def strip_pymr(example):
    return Example(id=example.id, utterance=example.utterance,
                   programs={d: p for d, p in example.programs.items() if d != "pymr"},
                   tags=example.tags)


@pytest.fixture()
def bootstrap_setup(geoquery):
    seed_ids = ["gq-01", "gq-02", "gq-03", "gq-04", "gq-06"]
    unlabeled_ids = ["gq-07", "gq-08", "gq-09", "gq-11", "gq-12"]
    seed_pool = [geoquery[i] for i in seed_ids]
    unlabeled = [strip_pymr(geoquery[i]) for i in unlabeled_ids]
    config = BootstrapConfig(
        environment="geo", dialect="pymr", gold_dialect="funql", model="desk-model-1",
        k=3, passes=3, seed=0, dd_declarations=load_dd_source(dd_path("geo", "pymr")))
    return seed_pool, unlabeled, config


def test_bootstrap_fixture_grows_pool_5_to_9(geo_model, bootstrap_setup):
    seed_pool, unlabeled, config = bootstrap_setup
    client = LlmClient(mode="replay", cache=ReplayCache(data_path("bootstrap_cache.jsonl")))
    pool = bootstrap_annotations(seed_pool, unlabeled, geo_model, client, config)
    assert len(pool) == 9
    added = {ex.id for ex in pool} - {ex.id for ex in seed_pool}
    assert added == {"gq-07", "gq-08", "gq-11", "gq-12"}  # gq-09's candidate was wrong


def test_bootstrap_added_programs_reverify_offline(geo_model, geoquery, bootstrap_setup):
    seed_pool, unlabeled, config = bootstrap_setup
    client = LlmClient(mode="replay", cache=ReplayCache(data_path("bootstrap_cache.jsonl")))
    pool = bootstrap_annotations(seed_pool, unlabeled, geo_model, client, config)
    policy = POLICIES["geo"]
    for example in pool:
        pred = run_program("pymr", example.programs["pymr"], "geo", geo_model)
        gold = run_program("funql", geoquery[example.id].programs["funql"], "geo", geo_model)
        assert pred.ok and gold.ok and compare_outcomes(pred, gold, policy), example.id


def test_bootstrap_client_error_aborts_pass_not_pool(geo_model, bootstrap_setup, tmp_path):
    seed_pool, unlabeled, config = bootstrap_setup
    client = LlmClient(mode="replay", cache=ReplayCache(tmp_path / "empty.jsonl"))
    pool = bootstrap_annotations(seed_pool, unlabeled, geo_model, client, config)
    assert [ex.id for ex in pool] == [ex.id for ex in seed_pool]


class _Endpoint:
    """One-process completion endpoint for transport tests."""

    def __init__(self, payload):
        import http.server
        import threading

        payload_bytes = json.dumps(payload).encode()

        class Handler(http.server.BaseHTTPRequestHandler):
            requests = []

            def do_POST(self):
                length = int(self.headers["Content-Length"])
                Handler.requests.append(json.loads(self.rfile.read(length)))
                self.send_response(200)
                self.send_header("Content-Length", str(len(payload_bytes)))
                self.end_headers()
                self.wfile.write(payload_bytes)

            def log_message(self, *args):
                pass

        self.handler = Handler
        self.server = http.server.HTTPServer(("127.0.0.1", 0), Handler)
        self.url = f"http://127.0.0.1:{self.server.server_address[1]}/"
        threading.Thread(target=self.server.serve_forever, daemon=True).start()

    def close(self):
        self.server.shutdown()


def test_http_transport_round_trip(monkeypatch):
    from semkit.llm import http_transport

    endpoint = _Endpoint({"completion": "from the endpoint"})
    monkeypatch.setenv("SEMKIT_API_KEY", "sekret")
    try:
        send = http_transport(endpoint.url)
        assert send(request("live prompt", "live-model")) == "from the endpoint"
        seen = endpoint.handler.requests[0]
        assert seen["model"] == "live-model" and seen["prompt"] == "live prompt"
    finally:
        endpoint.close()


def test_http_transport_malformed_response():
    from semkit.llm import http_transport

    endpoint = _Endpoint({"unexpected": 1})
    try:
        with pytest.raises(TransportError, match="malformed"):
            http_transport(endpoint.url)(request())
    finally:
        endpoint.close()
