"""On-disk layout: one shard file per array column plus a text manifest.

A shard is a fixed header, the column payload and a trailing CRC32 of the
payload. The payload is row-major over symbol rows: row ``i`` of every
stripe is stored contiguously, so a damaged region of the file maps onto a
few erased rows shared by all stripes, which the vertical code repairs
without touching other shards. The manifest records a CRC32 for each such
row region.
"""

from __future__ import annotations

import os
import struct
import zlib
from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from .errors import BadParameters, CodeError

MAGIC = b"EARC"
VERSION = 1
KINDS = {"EBR": 0, "EIP": 1, "PEBR": 2, "PEIP": 3}
KIND_NAMES = {v: k for k, v in KINDS.items()}
MANIFEST = "manifest.txt"


class ShardFormatError(CodeError):
    """A shard header or checksum does not validate."""


@dataclass(frozen=True)
class ShardHeader:
    kind: str
    b: int
    p: int
    r: int
    g: tuple
    column: int
    stripes: int
    payload_len: int

    @property
    def t(self) -> int:
        return len(self.g) - 1

    def pack(self) -> bytes:
        head = struct.pack("<4sBBBHBB", MAGIC, VERSION, KINDS[self.kind], self.b,
                           self.p, self.r, self.t)
        head += bytes(self.g)
        head += struct.pack("<HIQ", self.column, self.stripes, self.payload_len)
        return head + struct.pack("<I", zlib.crc32(head))

    @classmethod
    def unpack(cls, data: bytes) -> tuple["ShardHeader", int]:
        """Parse a header from the start of ``data``; returns it with its size."""
        fixed = struct.calcsize("<4sBBBHBB")
        if len(data) < fixed:
            raise ShardFormatError("truncated header")
        magic, version, kind, b, p, r, t = struct.unpack_from("<4sBBBHBB", data)
        if magic != MAGIC or version != VERSION or kind not in KIND_NAMES:
            raise ShardFormatError("not an EARC v1 shard")
        end = fixed + t + 1 + struct.calcsize("<HIQ")
        if len(data) < end + 4:
            raise ShardFormatError("truncated header")
        g = tuple(data[fixed:fixed + t + 1])
        column, stripes, payload_len = struct.unpack_from("<HIQ", data, fixed + t + 1)
        (crc,) = struct.unpack_from("<I", data, end)
        if crc != zlib.crc32(data[:end]):
            raise ShardFormatError("header checksum mismatch")
        return cls(KIND_NAMES[kind], b, p, r, g, column, stripes, payload_len), end + 4


def shard_bytes(header: ShardHeader, payload: bytes) -> bytes:
    return header.pack() + payload + struct.pack("<I", zlib.crc32(payload))


def row_crcs(payload: np.ndarray) -> list[int]:
    """CRC32 of each symbol row of a ``(rows, stripes)`` payload."""
    return [zlib.crc32(row.tobytes()) for row in payload]


@dataclass
class Manifest:
    """Key/value description of an encoded file."""

    values: dict = field(default_factory=dict)

    def __getitem__(self, key):
        return self.values[key]

    def __setitem__(self, key, value):
        self.values[key] = value

    def get(self, key, default=None):
        return self.values.get(key, default)

    def int(self, key) -> int:
        return int(self.values[key])

    def dumps(self) -> str:
        return "".join(f"{k} = {v}\n" for k, v in self.values.items())

    @classmethod
    def loads(cls, text: str) -> "Manifest":
        values = {}
        for line in text.splitlines():
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            key, sep, value = line.partition("=")
            if not sep:
                raise BadParameters(f"bad manifest line: {line!r}")
            values[key.strip()] = value.strip()
        return cls(values)

    def write(self, directory: str):
        with open(os.path.join(directory, MANIFEST), "w", encoding="utf-8") as fh:
            fh.write(self.dumps())

    @classmethod
    def read(cls, directory: str) -> "Manifest":
        with open(os.path.join(directory, MANIFEST), encoding="utf-8") as fh:
            return cls.loads(fh.read())

    def columns(self) -> list[int]:
        return [int(c) for c in self["columns"].split(",") if c]

    def shard_row_crcs(self, col: int) -> list[int]:
        return [int(x, 16) for x in self[f"shard.{col}.row_crc32"].split(",") if x]


def shard_name(col: int) -> str:
    return f"shard_{col:04d}.earc"


class ShardStore:
    """Directory of shard files with per-column read accounting."""

    def __init__(self, directory: str):
        self.directory = directory
        self.reads = Counter()

    def path(self, col: int) -> str:
        return os.path.join(self.directory, shard_name(col))

    def exists(self, col: int) -> bool:
        return os.path.exists(self.path(col))

    def read(self, col: int) -> bytes | None:
        try:
            with open(self.path(col), "rb") as fh:
                data = fh.read()
        except FileNotFoundError:
            return None
        self.reads[col] += 1
        return data

    def write(self, col: int, data: bytes):
        tmp = self.path(col) + ".tmp"
        with open(tmp, "wb") as fh:
            fh.write(data)
        os.replace(tmp, self.path(col))

    def reset_counters(self):
        self.reads.clear()


@dataclass
class ShardContents:
    """A parsed shard: its ``(rows, stripes)`` payload and the rows whose
    checksum failed (all rows when the shard is missing or unreadable)."""

    header: ShardHeader | None
    payload: np.ndarray
    bad_rows: np.ndarray
    problem: str = ""

    @property
    def missing(self) -> bool:
        return self.header is None


def load_shard(store: ShardStore, manifest: Manifest, col: int, rows: int,
               stripes: int, expected: ShardHeader) -> ShardContents:
    blank = np.zeros((rows, stripes), dtype=np.uint8)
    data = store.read(col)
    if data is None:
        return ShardContents(None, blank, np.ones(rows, bool), "missing")
    try:
        header, off = ShardHeader.unpack(data)
    except ShardFormatError as exc:
        return ShardContents(None, blank, np.ones(rows, bool), str(exc))
    if header != expected:
        return ShardContents(None, blank, np.ones(rows, bool), "header does not match manifest")
    body = data[off:off + header.payload_len]
    if len(body) != rows * stripes:
        return ShardContents(None, blank, np.ones(rows, bool), "truncated payload")
    payload = np.frombuffer(body, dtype=np.uint8).reshape(rows, stripes).copy()
    want = manifest.shard_row_crcs(col)
    bad = np.array([c != w for c, w in zip(row_crcs(payload), want)], dtype=bool)
    problem = f"{int(bad.sum())} damaged rows" if bad.any() else ""
    return ShardContents(header, payload, bad, problem)
