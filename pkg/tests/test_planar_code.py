import pytest

from altan.catalog import hexagon, pentalene
from altan.errors import MalformedHeader, TruncatedRecord
from altan.lattice import to_patch
from altan.planar_code import IngestStats, read_planar_code, read_rotations, write_planar_code

HEXAGON_RECORD = b">>planar_code<<" + bytes([6, 2, 6, 0, 3, 1, 0, 4, 2, 0, 5, 3, 0, 6, 4, 0, 1, 5, 0])


def test_hand_built_hexagon():
    patches = list(read_planar_code(HEXAGON_RECORD))
    assert len(patches) == 1 and patches[0].graph.n == 6


def test_empty_after_header():
    assert list(read_planar_code(b">>planar_code<<")) == []


def test_bad_header():
    with pytest.raises(MalformedHeader):
        list(read_planar_code(b"planar_code"))


def test_truncated():
    with pytest.raises(TruncatedRecord):
        list(read_planar_code(HEXAGON_RECORD[:-3]))
    with pytest.raises(TruncatedRecord):
        list(read_planar_code(b">>planar_code<<\x00\x05"))


def test_round_trip_patches():
    src = [hexagon(), pentalene(), to_patch([(0, 0), (1, 0), (0, 1), (1, -1)])]
    data = write_planar_code(src)
    back = list(read_planar_code(data))
    assert [p.graph for p in back] == [p.graph for p in src]
    assert [p.rotation for p in back] == [p.rotation for p in src]


def test_sixteen_bit_records():
    n = 300
    rot = [[(i - 1) % n, (i + 1) % n] for i in range(n)]
    data = write_planar_code([rot])
    assert data[15] == 0
    assert next(read_rotations(data)) == rot
    assert next(read_planar_code(data)).graph.n == n


def test_big_endian_header():
    n = 256
    body = bytearray(b">>planar_code be<<\x00") + n.to_bytes(2, "big")
    for i in range(n):
        for u in ((i - 1) % n, (i + 1) % n):
            body += (u + 1).to_bytes(2, "big")
        body += b"\x00\x00"
    assert next(read_planar_code(bytes(body))).graph.n == n


def test_non_patch_records_are_skipped():
    path = [[1], [0, 2], [1]]
    data = write_planar_code([path, hexagon()])
    stats = IngestStats()
    got = list(read_planar_code(data, stats))
    assert len(got) == 1 and stats.read == 2 and len(stats.rejected) == 1
