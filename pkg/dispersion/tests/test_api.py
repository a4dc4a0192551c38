import math

import pytest
from rest_framework import status

EVALUATION_URL = "/evaluations/"


# -------------------------------- api_client -------------------------------- #


@pytest.fixture
def api_client():
    from rest_framework.test import APIClient
    return APIClient()


# ----------------------------- test_evaluations ----------------------------- #


def test_evaluation(api_client):
    response = api_client.get(EVALUATION_URL, {"g": 1, "m": 1, "x": 1, "tau": 4})
    assert response.status_code == status.HTTP_200_OK
    assert response.data["success"] is True
    results = {result["quantity"]: result for result in response.data["data"]["results"]}
    assert results["velocity_dispersion"]["value"] == pytest.approx(math.log(9.0) / (4.0 * math.pi))
    assert results["subvacuum_class"]["value"] == "supervacuum"


def test_evaluation_ignores_format_parameter(api_client):
    response = api_client.get(EVALUATION_URL, {"tau": 1, "format": "json"})
    assert response.status_code == status.HTTP_200_OK


def test_evaluation_invalid(api_client):
    response = api_client.get(EVALUATION_URL, {"tau": 1, "m": 0})
    assert response.status_code == status.HTTP_400_BAD_REQUEST
    assert response.data["success"] is False
    assert "m" in response.data["errors"]


def test_evaluation_round_trip(api_client):
    response = api_client.get(EVALUATION_URL, {"tau": 2})
    assert response.status_code == status.HTTP_422_UNPROCESSABLE_ENTITY
    assert response.data["success"] is False

    response = api_client.get(EVALUATION_URL, {"tau": 2, "allow_singular": "true"})
    assert response.status_code == status.HTTP_200_OK
    results = {result["quantity"]: result for result in response.data["data"]["results"]}
    assert results["velocity_dispersion"]["value"] is None


def test_evaluation_is_read_only(api_client):
    response = api_client.post(EVALUATION_URL, {"tau": 1}, format="json")
    assert response.status_code == status.HTTP_405_METHOD_NOT_ALLOWED


# ------------------------------- test_figures ------------------------------- #


def test_figure_is_paginated(api_client):
    response = api_client.get("/figures/fig1/")
    assert response.status_code == status.HTTP_200_OK
    assert response.data["pagination"]["count"] == 80
    assert response.data["pagination"]["next"] is not None
    assert response.data["pagination"]["previous"] is None
    assert response.data["data"]["columns"] == ["tau_over_x", "value"]
    assert len(response.data["data"]["rows"]) == 20


def test_figure_page_size(api_client):
    response = api_client.get("/figures/fig1/", {"grid": "1:3:5", "page_size": 10})
    assert response.status_code == status.HTTP_200_OK
    rows = response.data["data"]["rows"]
    assert len(rows) == 5
    assert rows[2]["value"] is None
    assert rows[2]["regular"] is False


def test_figure_smeared_widths(api_client):
    response = api_client.get("/figures/fig3/", {"sigma": ["0.1", "0.05"], "grid": "1:3:3"})
    assert response.status_code == status.HTTP_200_OK
    assert [row["sigma_over_x"] for row in response.data["data"]["rows"]] == [0.1] * 3 + [0.05] * 3


@pytest.mark.parametrize("url", ["/figures/fig7/", "/figures/fig3/"])
def test_figure_invalid(api_client, url):
    response = api_client.get(url)
    assert response.status_code == status.HTTP_400_BAD_REQUEST
    assert response.data["success"] is False
