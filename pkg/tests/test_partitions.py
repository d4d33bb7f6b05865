import json
import math

import pytest

from parityperm.errors import BoundExceededError
from parityperm.partitions import (
    Partition,
    StandardTableau,
    diagonal_hooks,
    dim_sn,
    dim_sud,
    enumerate_ssyt,
    enumerate_syt,
    hook_lengths,
    partitions_of,
    tableaux_to_json,
    transpose,
)


def parts(ps):
    return [list(p.parts) for p in ps]


def test_partitions_of():
    assert parts(partitions_of(4)) == [[4], [3, 1], [2, 2], [2, 1, 1], [1, 1, 1, 1]]
    assert parts(partitions_of(4, max_length=2)) == [[4], [3, 1], [2, 2]]
    assert parts(partitions_of(1, 1)) == [[1]]


def test_partition_validation_and_text():
    with pytest.raises(ValueError):
        Partition([1, 2])
    with pytest.raises(ValueError):
        Partition([2, 0])
    lam = Partition.parse("3,1,1")
    assert lam.pretty() == "[3,1^2]"
    assert Partition.parse(lam.pretty()) == lam


def test_transpose():
    assert transpose(Partition([3, 1])) == Partition([2, 1, 1])
    assert transpose(Partition([2, 2])) == Partition([2, 2])
    assert transpose(Partition([5])) == Partition([1] * 5)
    for n in range(1, 9):
        for lam in partitions_of(n):
            assert transpose(transpose(lam)) == lam
            assert dim_sn(lam) == dim_sn(transpose(lam))


def test_hooks():
    assert hook_lengths(Partition([1])) == [[1]]
    assert sorted(h for row in hook_lengths(Partition([2, 2])) for h in row) == [1, 2, 2, 3]
    assert math.prod(h for row in hook_lengths(Partition([3, 1])) for h in row) == 8


def test_dimensions():
    assert dim_sn(Partition([3, 1])) == 3
    assert dim_sn(Partition([3, 1, 1])) == 6
    assert dim_sn(Partition([7])) == 1
    assert dim_sud(Partition([2, 2]), 2) == 1
    assert dim_sud(Partition([3, 1, 1]), 3) == 6
    assert dim_sud(Partition([1, 1, 1, 1]), 3) == 0


def test_schur_weyl_balance():
    for n in range(1, 7):
        for d in range(1, 5):
            assert sum(dim_sn(lam) * dim_sud(lam, d) for lam in partitions_of(n, d)) == d**n


def test_full_column_is_harmless():
    # removing a full column of height d changes only the U(1) charge, not the dimension
    for d in range(1, 5):
        for n in range(1, 6):
            for lam in partitions_of(n, d):
                widened = Partition([p + 1 for p in lam.parts] + [1] * (d - lam.length))
                assert dim_sud(widened, d) == dim_sud(lam, d)


def test_enumerate_syt():
    got = {t.to_text() if hasattr(t, "to_text") else str(t) for t in enumerate_syt(Partition([2, 1, 1]))}
    assert len(got) == 3
    rows = [t.rows for t in enumerate_syt(Partition([3, 1]))]
    assert rows == [StandardTableau.parse(x).rows for x in ["123/4", "124/3", "134/2"]]
    assert [t.rows for t in enumerate_syt(Partition([2, 1, 1]))] == [
        StandardTableau.parse(x).rows for x in ["12/3/4", "13/2/4", "14/2/3"]
    ]
    assert len(enumerate_syt(Partition([1]))) == 1
    for n in range(1, 7):
        for lam in partitions_of(n):
            tabs = enumerate_syt(lam)
            assert len(tabs) == dim_sn(lam)
            for t in tabs:
                assert all(a < b for row in t.rows for a, b in zip(row, row[1:]))
                assert all(a < b for col in t.columns() for a, b in zip(col, col[1:]))


def test_syt_bound(monkeypatch):
    monkeypatch.setenv("PARITYPERM_MAX_TABLEAUX", "10")
    with pytest.raises(BoundExceededError):
        enumerate_syt(Partition([3, 2, 1]))


def test_enumerate_ssyt():
    tabs = enumerate_ssyt(Partition([2, 1]), 2)
    assert sorted("".join(map(str, sorted(t.content()))) for t in tabs) == ["001", "011"]
    assert len(enumerate_ssyt(Partition([3, 1, 1]), 3, "00012")) == 1
    assert len(enumerate_ssyt(Partition([3, 1, 1]), 3, [0, 0, 0, 1, 2])) == 1
    assert enumerate_ssyt(Partition([1, 1, 1]), 2) == []
    for n in range(1, 7):
        for d in range(1, 5):
            for lam in partitions_of(n):
                assert len(enumerate_ssyt(lam, d)) == dim_sud(lam, d)


def test_diagonal_hooks():
    assert diagonal_hooks(Partition([2, 2])) == Partition([3, 1])
    assert diagonal_hooks(Partition([3, 1, 1])) == Partition([5])
    assert diagonal_hooks(Partition([1])) == Partition([1])
    with pytest.raises(ValueError):
        diagonal_hooks(Partition([3, 1]))


def test_tableau_text_and_json():
    t = StandardTableau.parse("124/3")
    assert t.shape == Partition([3, 1])
    assert t.content(3) == -1 and t.content(4) == 2
    assert t.pre().rows == ((1, 2), (3,))
    assert json.loads(tableaux_to_json([t])) == [[[1, 2, 4], [3]]]
    with pytest.raises(ValueError):
        StandardTableau.parse("21/3")
