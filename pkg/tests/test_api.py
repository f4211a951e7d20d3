"""
Tests for the HTTP and WebSocket surface.
"""
import httpx
import pytest
from fastapi.testclient import TestClient

from src.api.server import app, uploaded_problems
from src.coefficients.fixtures import two_turning_point_problem
from src.data.problem_file import problem_to_json

CLASSICAL_WINDOW = {"lmin": 0.5, "lmax": 26.0, "re_min": -5.0, "re_max": 5.0, "im_min": 0.5, "im_max": 5.0}


def api_client() -> httpx.AsyncClient:
    return httpx.AsyncClient(transport=httpx.ASGITransport(app=app), base_url="http://test")


class TestEndpoints:
    """Tests for request handling and error mapping"""

    @pytest.mark.asyncio
    async def test_health(self):
        async with api_client() as client:
            response = await client.get("/")

        assert response.status_code == 200
        body = response.json()
        assert body["status"] == "online"
        assert body["fixtures"] == ["P0", "P1", "P2"]
        assert "qm22" in body["examples"]

    @pytest.mark.asyncio
    async def test_solve_classical(self):
        async with api_client() as client:
            response = await client.post("/solve", json={"fixture": "P0", **CLASSICAL_WINDOW})

        assert response.status_code == 200
        body = response.json()
        assert len(body["real"]) == 5
        assert body["complex"] == []
        assert body["certificate"]["match"] is True
        assert abs(body["real"][0]["lambda"]["re"] - 1.0) < 1e-8

    @pytest.mark.asyncio
    async def test_indices_classical(self):
        async with api_client() as client:
            response = await client.post("/indices", json={"fixture": "P0", **CLASSICAL_WINDOW})

        body = response.json()
        assert response.status_code == 200
        assert (body["n_R"], body["n_H"]) == (0, 0)
        assert body["window_too_small"] is True

    @pytest.mark.asyncio
    async def test_request_needs_one_source(self):
        async with api_client() as client:
            both = await client.post("/solve", json={"fixture": "P0", "problem_id": "abc"})
            missing_q = await client.post("/solve", json={"fixture": "P1"})

        assert both.status_code == 422
        assert missing_q.status_code == 422

    @pytest.mark.asyncio
    async def test_unknown_problem_id(self):
        async with api_client() as client:
            response = await client.post("/solve", json={"problem_id": "missing", **CLASSICAL_WINDOW})

        assert response.status_code == 404

    @pytest.mark.asyncio
    async def test_unknown_example(self):
        async with api_client() as client:
            response = await client.get("/reproduce/nope")

        assert response.status_code == 404


class TestUpload:
    """Tests for problem upload"""

    @pytest.mark.asyncio
    async def test_upload_and_list(self):
        text = problem_to_json(two_turning_point_problem())
        async with api_client() as client:
            response = await client.post("/problems/upload", files={"file": ("p2.json", text, "application/json")})
            listing = await client.get("/problems")

        assert response.status_code == 200
        body = response.json()
        assert body["interval"] == {"a": 0.0, "b": 4.0}
        assert body["problem_id"] in uploaded_problems
        assert body["problem_id"] in listing.json()

    @pytest.mark.asyncio
    async def test_invalid_upload(self):
        """Library errors keep their class name and exit code"""
        async with api_client() as client:
            response = await client.post("/problems/upload", files={"file": ("bad.json", "{not json", "application/json")})

        assert response.status_code == 422
        body = response.json()
        assert body["error"] == "ProblemDefinitionError"
        assert body["exit_code"] == 2


class TestSweepSocket:
    """Tests for the sweep WebSocket"""

    def test_invalid_range(self):
        client = TestClient(app)
        with client.websocket_connect("/ws/sweep") as websocket:
            websocket.send_json({"qmin": 1.0, "qmax": 0.0})
            message = websocket.receive_json()

        assert message["type"] == "error"
