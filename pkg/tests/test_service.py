"""HTTP service endpoints: payloads, envelope shape, error mapping."""

import pytest
from starlette.testclient import TestClient

from conwaylink.service import create_app

TREFOIL_PD = "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)"


@pytest.fixture(scope="module")
def client():
    with TestClient(create_app()) as c:
        yield c


def test_health_reports_ok(client):
    body = client.get("/health").json()
    assert body["status"] == "ok"
    assert body["version"]


def test_catalog_lists_bundled_records(client):
    names = [r["name"] for r in client.get("/catalog").json()["records"]]
    for expected in ("unknot", "unlink2", "unlink3", "hopf+", "trefoil", "fig8"):
        assert expected in names


def test_compute_trefoil_from_pd(client):
    r = client.post("/compute", json={"pd": TREFOIL_PD, "algebra": "generic"})
    assert r.status_code == 200
    envelope = r.json()
    assert set(envelope) == {"command", "algebra", "payload", "elapsedMs", "seed"}
    assert envelope["command"] == "compute"
    assert envelope["algebra"] == "generic"
    assert envelope["payload"]["text"] == "2*p - p^2 + q*r"
    assert envelope["payload"]["latex"] == "2 p - p^{2} + q r"
    assert envelope["payload"]["components"] == 1
    assert envelope["payload"]["crossings"] == 3
    assert envelope["payload"]["writhe"] == 3


def test_compute_by_catalog_name(client):
    r = client.post("/compute", json={"name": "fig8", "algebra": "homflypt"})
    assert r.json()["payload"]["text"] == "v^-2 - 1 + v^2 - z^2"


def test_compute_unlink_records_render_the_units(client):
    for name, expected in [
        ("unknot", "1"),
        ("unlink2", "q^-1 - p*q^-1"),
        ("unlink3", "q^-2 - 2*p*q^-2 + p^2*q^-2"),
    ]:
        r = client.post("/compute", json={"name": name, "algebra": "generic"})
        assert r.json()["payload"]["text"] == expected


def test_compute_trace_payload(client):
    r = client.post(
        "/compute",
        json={"pd": TREFOIL_PD, "algebra": "generic", "traceDepth": 1},
    )
    trace = r.json()["payload"]["trace"]
    assert trace.startswith("crossing ")
    assert "rule circ" in trace


def test_compute_reverse_component(client):
    r = client.post(
        "/compute", json={"name": "hopf+", "algebra": "generic", "reverse": [1]}
    )
    assert r.json()["payload"]["text"] == "p^-1*q^-1 - q^-1 - p^-1*r"


def test_compute_mirror(client):
    r = client.post(
        "/compute", json={"name": "trefoil", "algebra": "generic", "mirror": True}
    )
    assert r.json()["payload"]["text"] == "-p^-2 + 2*p^-1 + p^-2*q*r"


def test_compute_free_loops_multiply_units(client):
    r = client.post(
        "/compute",
        json={"pd": TREFOIL_PD, "algebra": "generic", "freeLoops": 1},
    )
    # trefoil plus a split loop: value times (1-p)/q
    assert "q^-1" in r.json()["payload"]["text"]


def test_compute_deterministic_payloads(client):
    body = {"pd": TREFOIL_PD, "algebra": "generic", "memoize": True}
    first = client.post("/compute", json=body).json()["payload"]
    second = client.post("/compute", json=body).json()["payload"]
    assert first == second


def test_axioms_all_hold(client):
    for algebra in ("generic", "homflypt-style", "radical:k=2"):
        r = client.post("/axioms", json={"algebra": algebra, "nMax": 4})
        payload = r.json()["payload"]
        assert payload["allHold"], payload
        assert set(payload["axioms"]) == set("ABCDEFG")


def test_fuzz_envelope_echoes_seed(client):
    r = client.post("/fuzz", json={"name": "hopf+", "trials": 4, "seed": 7})
    envelope = r.json()
    assert envelope["seed"] == 7
    assert envelope["payload"]["allOk"]
    assert envelope["payload"]["trials"] == 4
    assert envelope["payload"]["mismatches"] == []


def test_verify_bundled_catalog(client):
    r = client.post("/verify", json={"algebra": "homflypt"})
    payload = r.json()["payload"]
    assert payload["allMatch"] is True
    row = payload["rows"][0]
    assert set(row) >= {"name", "algebra", "expected", "computed", "match"}


def test_series_report_is_stable(client):
    body = {"name": "trefoil", "crossing": 1, "cutoff": 3}
    first = client.post("/series", json=body).json()["payload"]
    second = client.post("/series", json=body).json()["payload"]
    assert first == second
    report = first["reports"][0]
    assert report["crossing"] == 1
    assert report["kind"] == "self"
    assert report["minXDegree"] == 0
    assert report["minYDegree"] == 0


def test_series_defaults_to_every_crossing(client):
    r = client.post("/series", json={"name": "hopf+", "cutoff": 3})
    payload = r.json()["payload"]
    assert [rep["crossing"] for rep in payload["reports"]] == [1, 2]


def test_homflypt_factorization_endpoint(client):
    payload = client.post("/homflypt", json={"name": "trefoil"}).json()["payload"]
    assert payload["factorizes"] is True
    assert payload["collapsed"] == payload["direct"] == "2*v^2 - v^4 + v^2*z^2"


def test_error_when_both_pd_and_name(client):
    r = client.post("/compute", json={"pd": TREFOIL_PD, "name": "trefoil"})
    assert r.status_code == 422
    assert "exactly one" in r.json()["error"]


def test_error_unknown_name_is_404(client):
    r = client.post("/compute", json={"name": "no-such-link"})
    assert r.status_code == 404
    assert "no-such-link" in r.json()["error"]


def test_error_bad_pd_is_400(client):
    r = client.post("/compute", json={"pd": "X(1,2)"})
    assert r.status_code == 400


def test_error_unknown_algebra_is_400(client):
    r = client.post("/compute", json={"pd": TREFOIL_PD, "algebra": "mystery"})
    assert r.status_code == 400
    assert "mystery" in r.json()["error"]


def test_error_reverse_out_of_range(client):
    r = client.post("/compute", json={"name": "trefoil", "reverse": [5]})
    assert r.status_code == 422


def test_error_missing_catalog_is_404(client):
    r = client.post("/verify", json={"catalog": "/nonexistent/links.catalog"})
    assert r.status_code == 404
