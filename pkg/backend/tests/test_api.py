import pytest
from fastapi.testclient import TestClient

from app.main import app
from app.services.graph_io import gen_full, gen_path, serialize


class TestSolverApi:

    @pytest.fixture
    def client(self):
        return TestClient(app)

    def test_health(self, client):
        """Test the health endpoint"""
        response = client.get("/health")

        assert response.status_code == 200
        assert response.json()["status"] == "healthy"

    def test_solve(self, client):
        """Test solving MVC on K_3^3"""
        response = client.post("/solve", json={"graph": serialize(gen_full(3, 3)), "problem": "mvc"})

        body = response.json()
        assert response.status_code == 200
        assert (body["status"], body["value"], body["count"]) == ("optimum", 7, 9)
        assert body["witness"] is None

    def test_solve_with_witness(self, client):
        """Test that a witness is returned as per-layer masks"""
        response = client.post("/solve", json={"graph": serialize(gen_path(3)), "problem": "mds", "witness": True})

        assert response.json()["witness"] == [0, 1, 0]

    def test_solve_exact_mode(self, client):
        """Test the exact connectivity DP over HTTP"""
        response = client.post(
            "/solve", json={"graph": serialize(gen_full(2, 3)), "problem": "cds", "mode": "exact"}
        )

        assert (response.json()["value"], response.json()["count"]) == (1, 2)

    def test_unsupported_mode(self, client):
        """Test that exact MIS is rejected with 422"""
        response = client.post("/solve", json={"graph": serialize(gen_path(2)), "problem": "mis", "mode": "exact"})

        assert response.status_code == 422

    def test_bad_graph(self, client):
        """Test that a malformed instance is a 400"""
        response = client.post("/solve", json={"graph": "LGR v1\nk 0\n", "problem": "mis"})

        assert response.status_code == 400

    def test_oracle(self, client):
        """Test the brute-force endpoint"""
        response = client.post("/oracle", json={"graph": serialize(gen_path(6)), "problem": "mis"})

        assert (response.json()["value"], response.json()["count"]) == (3, 4)
        assert response.json()["witness"] is None

    def test_oracle_too_large(self, client):
        """Test that the oracle cap maps to 413"""
        response = client.post("/oracle", json={"graph": serialize(gen_full(5, 5)), "problem": "mis"})

        assert response.status_code == 413

    def test_validate(self, client):
        """Test the variant flags of a full graph"""
        response = client.post("/validate", json={"graph": serialize(gen_full(2, 2))})

        assert response.json() == {
            "k": 2, "q": 2, "n": 4, "llg": False, "slg": True, "clg": True, "full": True,
        }

    def test_generate(self, client):
        """Test that generate returns LGR text"""
        response = client.get("/generate", params={"kind": "path", "q": 3})

        assert response.status_code == 200
        assert response.text == serialize(gen_path(3))

    def test_generate_bad_density(self, client):
        """Test that an out-of-range density is a 400"""
        response = client.get("/generate", params={"kind": "random", "k": 2, "q": 2, "intra_density": 1.5})

        assert response.status_code == 400
