"""HTTP session service tests."""

import time

from fastapi.testclient import TestClient

from tiltkit.server import create_app


def client(**kwargs) -> TestClient:
    return TestClient(create_app(**kwargs))


def make_session(c: TestClient, **backend) -> dict:
    r = c.post("/api/v1/sessions", json={"backend": backend})
    assert r.status_code == 201, r.text
    return r.json()


O_ZERO_222 = "O(0*x1+0*x2+0*x3+0*c)"


def test_health():
    c = client()
    r = c.get("/api/v1/health")
    assert r.status_code == 200
    assert r.json()["status"] == "ok"


def test_create_dynkin_session_state():
    c = client()
    doc = make_session(c, kind="dynkin", quiver="A3")
    assert doc["backend"] == {"kind": "dynkin", "quiver": "A3"}
    assert doc["rank"] == 3
    assert doc["elements"] == ["SP(1)", "SP(2)", "SP(3)"]
    assert doc["matrix"] == [[0, 1, 0], [-1, 0, 1], [0, -1, 0]]
    assert doc["history"] == []
    arrows = sum(1 for row in doc["matrix"] for v in row if v > 0)
    assert arrows == 2


def test_create_coh_session_matrix_is_star_quiver():
    c = client()
    doc = make_session(c, kind="coh", weights="(2,3)")
    assert doc["backend"] == {"kind": "coh", "weights": "(2,3)"}
    assert doc["rank"] == 5
    pos = {e: i for i, e in enumerate(doc["elements"])}
    m = doc["matrix"]
    expected_arrows = [
        ("O(0*x1+0*x2+0*c)", "O(1*x1+0*x2+0*c)"),
        ("O(1*x1+0*x2+0*c)", "O(0*x1+0*x2+1*c)"),
        ("O(0*x1+0*x2+0*c)", "O(0*x1+1*x2+0*c)"),
        ("O(0*x1+1*x2+0*c)", "O(0*x1+2*x2+0*c)"),
        ("O(0*x1+2*x2+0*c)", "O(0*x1+0*x2+1*c)"),
    ]
    for a, b in expected_arrows:
        assert m[pos[a]][pos[b]] == 1
        assert m[pos[b]][pos[a]] == -1
    assert sum(1 for row in m for v in row if v > 0) == len(expected_arrows)


def test_create_kronecker_session_matrix():
    c = client()
    doc = make_session(c, kind="coh", weights="(1,1)")
    assert doc["elements"] == ["O(0*x1+0*x2+0*c)", "O(0*x1+0*x2+1*c)"]
    assert doc["matrix"] == [[0, 2], [-2, 0]]


def test_three_arm_session_matrix_has_relation_arrow():
    c = client()
    doc = make_session(c, kind="coh", weights="(2,2,2)")
    pos = {e: i for i, e in enumerate(doc["elements"])}
    m = doc["matrix"]
    top = "O(0*x1+0*x2+0*x3+1*c)"
    assert m[pos[top]][pos[O_ZERO_222]] == 1
    # three two-arrow arms plus the single return arrow
    assert sum(1 for row in m for v in row if v > 0) == 7


def test_create_rejects_bad_backends():
    c = client()
    for body in [
        {"backend": {"kind": "coh"}},
        {"backend": {"kind": "coh", "weights": "(2,3)", "quiver": "A2"}},
        {"backend": {"kind": "dynkin", "weights": "(2,3)"}},
        {"backend": {"kind": "spectral", "weights": "(2,3)"}},
        {"backend": {"kind": "coh", "weights": "not a weight"}},
        {"backend": {"kind": "dynkin", "quiver": "A99"}},
    ]:
        r = c.post("/api/v1/sessions", json=body)
        assert r.status_code == 400, body
        assert r.json()["detail"]["error"] == "bad_request"


def test_malformed_body_is_400_not_422():
    c = client()
    r = c.post("/api/v1/sessions", json={"nonsense": 1})
    assert r.status_code == 400
    assert r.json()["detail"]["error"] == "bad_request"


def test_unknown_session_404():
    c = client()
    r = c.get("/api/v1/sessions/doesnotexist")
    assert r.status_code == 404
    assert r.json()["detail"]["error"] == "unknown_session"


def test_mutate_returns_new_state_and_exchange():
    c = client()
    doc = make_session(c, kind="dynkin", quiver="A3")
    r = c.post(f"/api/v1/sessions/{doc['id']}/mutate", json={"index": 0})
    assert r.status_code == 200
    out = r.json()
    assert out["exchanged"]["out"] == "SP(1)"
    assert out["exchanged"]["index"] == 0
    assert out["exchanged"]["into"] in out["elements"]
    assert "SP(1)" not in out["elements"]
    assert out["history"] == [
        {"index": 0, "out": "SP(1)", "into": out["exchanged"]["into"]}
    ]
    assert out["key"] != doc["key"]


def test_mutate_bad_index_400():
    c = client()
    doc = make_session(c, kind="dynkin", quiver="A2")
    r = c.post(f"/api/v1/sessions/{doc['id']}/mutate", json={"index": 5})
    assert r.status_code == 400
    assert r.json()["detail"]["error"] == "bad_index"
    r = c.post(f"/api/v1/sessions/{doc['id']}/mutate", json={"index": "x"})
    assert r.status_code == 400


def test_mutate_twice_at_new_summand_is_involution():
    c = client()
    doc = make_session(c, kind="dynkin", quiver="A3")
    r1 = c.post(f"/api/v1/sessions/{doc['id']}/mutate", json={"index": 1}).json()
    j = r1["elements"].index(r1["exchanged"]["into"])
    r2 = c.post(f"/api/v1/sessions/{doc['id']}/mutate", json={"index": j}).json()
    assert r2["key"] == doc["key"]
    assert r2["elements"] == doc["elements"]
    assert r2["matrix"] == doc["matrix"]
    assert len(r2["history"]) == 2


def test_undo_pops_one_step():
    c = client()
    doc = make_session(c, kind="dynkin", quiver="A3")
    c.post(f"/api/v1/sessions/{doc['id']}/mutate", json={"index": 2})
    r = c.post(f"/api/v1/sessions/{doc['id']}/undo")
    assert r.status_code == 200
    back = r.json()
    assert back["key"] == doc["key"]
    assert back["elements"] == doc["elements"]
    assert back["matrix"] == doc["matrix"]
    assert back["history"] == []


def test_undo_replays_history_exactly():
    c = client()
    doc = make_session(c, kind="coh", weights="(2,3)")
    sid = doc["id"]
    s1 = c.post(f"/api/v1/sessions/{sid}/mutate", json={"index": 0}).json()
    s1.pop("exchanged")
    c.post(f"/api/v1/sessions/{sid}/mutate", json={"index": 3})
    r = c.post(f"/api/v1/sessions/{sid}/undo")
    assert r.status_code == 200
    assert r.json() == s1


def test_undo_empty_history_400():
    c = client()
    doc = make_session(c, kind="dynkin", quiver="A2")
    r = c.post(f"/api/v1/sessions/{doc['id']}/undo")
    assert r.status_code == 400
    assert r.json()["detail"]["error"] == "empty_history"


def test_incomplete_fragment_mutation_409():
    c = client()
    doc = make_session(c, kind="coh", weights="(2,2,2)")
    k = doc["elements"].index(O_ZERO_222)
    r = c.post(f"/api/v1/sessions/{doc['id']}/mutate", json={"index": k})
    assert r.status_code == 409
    detail = r.json()["detail"]
    assert detail["error"] == "complement_not_in_window"
    assert detail["index"] == k
    assert detail["window"] == "-64:65"
    # the failed call must not corrupt the session
    after = c.get(f"/api/v1/sessions/{doc['id']}").json()
    assert after["key"] == doc["key"]
    assert after["history"] == []


def test_neighborhood_depth5_covers_pentagon():
    c = client()
    doc = make_session(c, kind="dynkin", quiver="A2")
    r = c.get(f"/api/v1/sessions/{doc['id']}/neighborhood", params={"depth": 5})
    assert r.status_code == 200
    g = r.json()
    assert g["center"] == doc["key"]
    assert len(g["nodes"]) == 5
    assert len(g["edges"]) == 5
    assert g["frontier"] == []
    for e in g["edges"]:
        assert set(e) == {"a", "b", "out", "in"}


def test_neighborhood_depth1_is_local_ball():
    c = client()
    doc = make_session(c, kind="dynkin", quiver="A3")
    g = c.get(f"/api/v1/sessions/{doc['id']}/neighborhood").json()
    assert len(g["nodes"]) == 4  # center plus one mutation per summand
    keys = {n["key"] for n in g["nodes"]}
    assert doc["key"] in keys


def test_neighborhood_bad_params_400():
    c = client()
    doc = make_session(c, kind="dynkin", quiver="A2")
    for params in [{"depth": -1}, {"depth": 7}, {"budget": 0}, {"budget": 99999}]:
        r = c.get(f"/api/v1/sessions/{doc['id']}/neighborhood", params=params)
        assert r.status_code == 400, params


def test_reach_certificate_has_zero_ext_links():
    c = client()
    doc = make_session(c, kind="dynkin", quiver="A2")
    r = c.post(
        f"/api/v1/sessions/{doc['id']}/reach", json={"m": "M(1,0)", "n": "M(0,1)"}
    )
    assert r.status_code == 200
    cert = r.json()
    assert cert["ok"] is True
    assert cert["chain"][0] == "M(1,0)"
    assert cert["chain"][-1] == "M(0,1)"
    assert len(cert["links"]) == len(cert["chain"]) - 1
    for link in cert["links"]:
        assert link["ext1"] == [0, 0]


def test_reach_bad_literal_400():
    c = client()
    doc = make_session(c, kind="dynkin", quiver="A2")
    r = c.post(
        f"/api/v1/sessions/{doc['id']}/reach", json={"m": "M(2,0)", "n": "M(0,1)"}
    )
    assert r.status_code == 400


def test_export_formats():
    c = client()
    doc = make_session(c, kind="dynkin", quiver="A2")
    r = c.get(f"/api/v1/sessions/{doc['id']}/export", params={"format": "json"})
    assert r.status_code == 200
    g = r.json()
    assert set(g) >= {"nodes", "edges", "frontier"}
    r = c.get(f"/api/v1/sessions/{doc['id']}/export", params={"format": "dot"})
    assert r.status_code == 200
    assert r.text.startswith("graph exchange {")
    r = c.get(f"/api/v1/sessions/{doc['id']}/export", params={"format": "yaml"})
    assert r.status_code == 400


def test_idle_sessions_are_evicted():
    c = client(session_ttl=0.05)
    doc = make_session(c, kind="dynkin", quiver="A2")
    assert c.get(f"/api/v1/sessions/{doc['id']}").status_code == 200
    time.sleep(0.12)
    r = c.get(f"/api/v1/sessions/{doc['id']}")
    assert r.status_code == 404


def test_pentagon_walk_returns_to_start_in_five_clicks():
    c = client()
    doc = make_session(c, kind="dynkin", quiver="A2")
    sid = doc["id"]
    keys = [doc["key"]]
    index = 0
    for _ in range(5):
        out = c.post(f"/api/v1/sessions/{sid}/mutate", json={"index": index}).json()
        keys.append(out["key"])
        # never backtrack: next click avoids the summand that just arrived
        index = 1 - out["elements"].index(out["exchanged"]["into"])
    assert keys[5] == keys[0]
    assert len(set(keys[:5])) == 5
