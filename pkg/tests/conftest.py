import pytest

from pertinex.corpus import Collection, ObjectRecord, QueryRecord, validate
from pertinex.scoring import build_index


@pytest.fixture
def toy_collection():
    # o1={g1:2, g2:1}, o2={g1:1}, o3={g3:1}
    return validate(Collection(
        vocabulary=("g1", "g2", "g3"),
        objects=[
            ObjectRecord(id="o1", occurrences={"g1": 2, "g2": 1}),
            ObjectRecord(id="o2", occurrences={"g1": 1}),
            ObjectRecord(id="o3", occurrences={"g3": 1}),
        ],
        queries=[QueryRecord(id="q1", goals=("g1", "g2"))],
        judgments={"q1": {"o1"}},
    ))


@pytest.fixture
def toy_index(toy_collection):
    return build_index(toy_collection)
