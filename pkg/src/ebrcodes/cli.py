"""Command-line front end: ``ebrcodes encode|decode|verify|analyze|demo-lines``.

The file-level helpers (:func:`encode_file`, :func:`decode_dir`,
:func:`verify_dir`, :func:`repair_column`) are importable so that scripts
and tests can drive the same code paths without a subprocess.
"""

from __future__ import annotations

import argparse
import os
import sys
import zlib
from dataclasses import dataclass

import numpy as np

from . import analysis
from .arrays import CodeArray, DecodeTrace
from .ebr import EBRCode
from .eip import EIPCode
from .errors import BadParameters, CodeError, TooManyErasures, UnsupportedRegime
from .geometry import INF, LineId, slope_to_column_map, recover_lines, slope_image
from .gf import FieldTable, poly_from_mask
from .punct import PuncturedCode
from .ring import format_ring
from .shards import (Manifest, ShardHeader, ShardStore, load_shard, row_crcs,
                     shard_bytes)

STRIPE_CHUNK = 8192


# -- parameters -------------------------------------------------------------

def parse_g(text: str) -> tuple:
    """``g(x)`` from a hex bitmask of binary coefficients (``b`` is
    ``1+x+x^3``) or a comma-separated coefficient list, lowest degree first."""
    text = text.strip()
    if "," in text:
        return tuple(int(x, 0) for x in text.split(","))
    return tuple(poly_from_mask(int(text, 16)))


def parse_int_list(text: str | None) -> list[int]:
    if not text:
        return []
    return [int(x) for x in text.split(",") if x.strip()]


@dataclass
class Layout:
    """A code plus the way file symbols are placed in its arrays."""

    kind: str
    code: object
    base: object
    real_cols: tuple      # data columns backed by file symbols
    stored_cols: tuple    # columns written as shards
    rows: int             # symbols per column per stripe

    @property
    def field(self) -> FieldTable:
        return self.base.field

    @property
    def stripe_symbols(self) -> int:
        return self.base.k_local * len(self.real_cols)

    @classmethod
    def build(cls, kind: str, p: int, r: int, b: int, g=(1,), prim_poly=None,
              shortened_k: int | None = None) -> "Layout":
        kind = kind.upper()
        field = FieldTable(b, prim_poly)
        if kind in ("EBR", "PEBR"):
            base = EBRCode(p, r, field, g)
        elif kind in ("EIP", "PEIP"):
            base = EIPCode(p, r, field, g)
        else:
            raise BadParameters(f"unknown code kind {kind!r}")
        code = PuncturedCode(base) if kind.startswith("P") else base
        data_cols = tuple(base.data_cols)
        k = len(data_cols) if shortened_k is None else shortened_k
        if not 1 <= k <= len(data_cols):
            raise BadParameters(f"shortened k must be in 1..{len(data_cols)}")
        real = data_cols[:k]
        stored = tuple(sorted(set(real) | set(base.parity_cols)))
        rows = base.k_local if kind.startswith("P") else base.p
        return cls(kind, code, base, real, stored, rows)

    @classmethod
    def from_manifest(cls, m: Manifest) -> "Layout":
        g = tuple(int(x) for x in m["g"].split(","))
        return cls.build(m["kind"], m.int("p"), m.int("r"), m.int("b"), g,
                         int(m["prim_poly"], 16), m.int("shortened_k"))

    def header(self, col: int, stripes: int) -> ShardHeader:
        return ShardHeader(self.kind, self.field.b, self.base.p, self.base.r,
                           tuple(self.base.g), col, stripes, self.rows * stripes)

    def shape(self):
        return (self.rows, self.base.cols)


# -- symbol packing ---------------------------------------------------------

def bytes_to_symbols(data: bytes, b: int) -> np.ndarray:
    raw = np.frombuffer(data, dtype=np.uint8)
    if b == 8:
        return raw.copy()
    bits = np.unpackbits(raw, bitorder="little")
    bits = np.concatenate([bits, np.zeros(-len(bits) % b, np.uint8)])
    weights = (1 << np.arange(b)).astype(np.uint8)
    return (bits.reshape(-1, b) * weights).sum(axis=1).astype(np.uint8)


def symbols_to_bytes(symbols: np.ndarray, b: int, length: int) -> bytes:
    if b == 8:
        return symbols[:length].tobytes()
    bits = ((symbols[:, None] >> np.arange(b)) & 1).astype(np.uint8).ravel()
    bits = bits[:length * 8]
    return np.packbits(bits, bitorder="little").tobytes()[:length]


# -- encode -----------------------------------------------------------------

def encode_file(in_path: str, out_dir: str, layout: Layout) -> Manifest:
    with open(in_path, "rb") as fh:
        data = fh.read()
    symbols = bytes_to_symbols(data, layout.field.b)
    per = layout.stripe_symbols
    stripes = -(-len(symbols) // per)
    symbols = np.concatenate([symbols, np.zeros(stripes * per - len(symbols), np.uint8)])
    base = layout.base
    k_local = base.k_local
    payloads = {c: np.zeros((layout.rows, stripes), np.uint8) for c in layout.stored_cols}
    real_pos = [base.data_cols.index(c) for c in layout.real_cols]
    for start in range(0, stripes, STRIPE_CHUNK):
        stop = min(stripes, start + STRIPE_CHUNK)
        chunk = symbols[start * per:stop * per].reshape(stop - start, k_local, len(real_pos))
        dat = np.zeros((stop - start,) + base.data_shape, np.uint8)
        dat[..., real_pos] = chunk
        arr = layout.code.encode(dat)
        for c in layout.stored_cols:
            payloads[c][:, start:stop] = arr[..., :, c].T
    os.makedirs(out_dir, exist_ok=True)
    store = ShardStore(out_dir)
    m = Manifest()
    m["format"] = "EARC-manifest/1"
    m["kind"] = layout.kind
    m["p"] = base.p
    m["r"] = base.r
    m["b"] = layout.field.b
    m["prim_poly"] = f"{layout.field.prim_poly:#x}"
    m["g"] = ",".join(str(x) for x in base.g)
    m["shortened_k"] = len(layout.real_cols)
    m["rows_per_column"] = layout.rows
    m["stripe_symbols"] = per
    m["stripe_count"] = stripes
    m["file_length"] = len(data)
    m["file_crc32"] = f"{zlib.crc32(data):08x}"
    m["columns"] = ",".join(str(c) for c in layout.stored_cols)
    for c in layout.stored_cols:
        blob = shard_bytes(layout.header(c, stripes), payloads[c].tobytes())
        store.write(c, blob)
        m[f"shard.{c}.crc32"] = f"{zlib.crc32(blob):08x}"
        m[f"shard.{c}.row_crc32"] = ",".join(f"{x:08x}" for x in row_crcs(payloads[c]))
    m.write(out_dir)
    return m


# -- decode -----------------------------------------------------------------

@dataclass
class LoadedArrays:
    symbols: np.ndarray      # (stripes, rows, cols)
    mask: np.ndarray         # (rows, cols)
    problems: dict


def load_arrays(store: ShardStore, m: Manifest, layout: Layout, erase=()) -> LoadedArrays:
    stripes = m.int("stripe_count")
    sym = np.zeros((stripes,) + layout.shape(), np.uint8)
    mask = np.zeros(layout.shape(), bool)
    problems = {}
    for c in layout.stored_cols:
        if c in erase:
            mask[:, c] = True
            problems[c] = "erased on request"
            continue
        sc = load_shard(store, m, c, layout.rows, stripes, layout.header(c, stripes))
        sym[:, :, c] = sc.payload.T
        mask[:, c] = sc.bad_rows
        if sc.problem:
            problems[c] = sc.problem
    sym[:, mask] = 0
    return LoadedArrays(sym, mask, problems)


def reconstruct(layout: Layout, loaded: LoadedArrays, trace: DecodeTrace | None = None) -> np.ndarray:
    """Complete every stripe; raises TooManyErasures if impossible."""
    if not loaded.mask.any():
        return loaded.symbols
    out = np.empty_like(loaded.symbols)
    code = layout.code
    for start in range(0, len(out), STRIPE_CHUNK):
        part = CodeArray(loaded.symbols[start:start + STRIPE_CHUNK], loaded.mask)
        out[start:start + STRIPE_CHUNK] = code.repair(part, trace=trace if start == 0 else None)
    if len(out) == 0:
        # no stripes to decode, but the erasure pattern must still be decodable
        code.repair(CodeArray(np.zeros((1,) + layout.shape(), np.uint8), loaded.mask))
    return out


def extract_file(layout: Layout, m: Manifest, arrays: np.ndarray) -> bytes:
    base = layout.base
    sel = arrays[:, :base.k_local, :][:, :, list(layout.real_cols)]
    return symbols_to_bytes(sel.reshape(-1), layout.field.b, m.int("file_length"))


def decode_dir(shard_dir: str, out_path: str, erase=(), trace: DecodeTrace | None = None):
    m = Manifest.read(shard_dir)
    layout = Layout.from_manifest(m)
    store = ShardStore(shard_dir)
    loaded = load_arrays(store, m, layout, set(erase))
    arrays = reconstruct(layout, loaded, trace)
    data = extract_file(layout, m, arrays)
    if f"{zlib.crc32(data):08x}" != m["file_crc32"]:
        raise CodeError("reconstructed file fails its checksum")
    with open(out_path, "wb") as fh:
        fh.write(data)
    return loaded.problems, store.reads


# -- verify / repair --------------------------------------------------------

def repair_column(shard_dir: str, col: int, store: ShardStore | None = None) -> list[int]:
    """Rewrite one damaged shard; returns the columns that had to be read.

    Damaged rows are repaired inside the column when the vertical code
    allows it, so only that shard is read. Otherwise the whole array is
    decoded from the other shards.
    """
    m = Manifest.read(shard_dir)
    layout = Layout.from_manifest(m)
    store = store or ShardStore(shard_dir)
    stripes = m.int("stripe_count")
    sc = load_shard(store, m, col, layout.rows, stripes, layout.header(col, stripes))
    vertical = layout.base.vertical
    if not sc.bad_rows.any() and not sc.missing:
        return sorted(store.reads)
    if not sc.missing and layout.rows == layout.base.p and vertical.can_repair(sc.bad_rows):
        payload = vertical.repair(sc.payload.T, sc.bad_rows).T
    else:
        loaded = load_arrays(store, m, layout)
        payload = reconstruct(layout, loaded)[:, :, col].T
    payload = np.ascontiguousarray(payload)
    store.write(col, shard_bytes(layout.header(col, stripes), payload.tobytes()))
    return sorted(store.reads)


def verify_dir(shard_dir: str, repair: bool = False, out=None) -> bool:
    out = out or sys.stdout
    m = Manifest.read(shard_dir)
    layout = Layout.from_manifest(m)
    store = ShardStore(shard_dir)
    loaded = load_arrays(store, m, layout)
    healthy = not loaded.problems
    for c in layout.stored_cols:
        print(f"shard {c}: {loaded.problems.get(c, 'ok')}", file=out)
    if healthy:
        full = loaded.symbols
        if not isinstance(layout.code, PuncturedCode):
            ok = bool(np.all(layout.code.is_codeword(full))) if len(full) else True
            print(f"codeword check: {'ok' if ok else 'FAILED'}", file=out)
            healthy = ok
        return healthy
    try:
        reconstruct(layout, loaded)
        print("status: recoverable", file=out)
    except TooManyErasures as exc:
        print(f"status: unrecoverable ({exc})", file=out)
        return False
    if not repair:
        return False
    for c in sorted(loaded.problems):
        reads = repair_column(shard_dir, c)
        print(f"repaired shard {c}: read shards {reads}", file=out)
    return True


# -- demo -------------------------------------------------------------------

def parse_slope(text: str):
    return INF if text.lower() in ("inf", "infinity", "oo") else int(text)


def demo_lines(p: int, r: int, slope, anchors, seed: int = 0, show_trace: bool = False,
               out=None) -> bool:
    out = out or sys.stdout
    code = EBRCode(p, r)
    rng = np.random.default_rng(seed)
    cw = code.encode(rng.integers(0, 2, code.data_shape, dtype=np.uint8))
    lines = [LineId(slope, a) for a in anchors]

    def show(title, arr, mask=None):
        print(title, file=out)
        for u in range(p):
            row = "".join("_" if mask is not None and mask[u, v] else str(int(arr[u, v]))
                          for v in range(p))
            print("  " + row, file=out)

    m = slope_to_column_map(p, r, slope)
    erased = CodeArray(cw)
    for line in lines:
        erased = erased.erase_cells(line.cells(p))
    show(f"EBR({p},{r},2,1) codeword", cw)
    show(f"lines of slope {slope} through {list(anchors)} erased", erased.symbols, erased.erased)
    if show_trace:
        print(f"index map (a,b,c,e) = ({m.a},{m.b},{m.c},{m.e})", file=out)
        table = ", ".join(f"{s}->{slope_image(m, s, p)}" for s in [INF, *range(p)])
        print(f"slope images: {table}", file=out)
    rec = recover_lines(cw * ~erased.erased, lines, code)
    show("recovered", rec)
    ok = bool((rec == cw).all())
    print("match: " + ("yes" if ok else "NO"), file=out)
    return ok


# -- argument parsing -------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="ebrcodes", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="verb", required=True)

    enc = sub.add_parser("encode", help="split a file into column shards")
    enc.add_argument("--in", dest="inp", required=True)
    enc.add_argument("--out", required=True)
    enc.add_argument("--kind", default="EIP", choices=["EBR", "EIP", "PEBR", "PEIP"],
                     type=str.upper)
    enc.add_argument("--p", type=int, required=True)
    enc.add_argument("--r", type=int, required=True)
    enc.add_argument("--b", type=int, default=8)
    enc.add_argument("--g", default="1", help="hex mask of binary g(x), or a comma list")
    enc.add_argument("--prim-poly", type=lambda s: int(s, 16), default=None)
    enc.add_argument("--shortened-k", type=int, default=None)

    dec = sub.add_parser("decode", help="rebuild a file from surviving shards")
    dec.add_argument("--in", dest="inp", required=True)
    dec.add_argument("--out", required=True)
    dec.add_argument("--erase", default="", help="columns to treat as lost")
    dec.add_argument("--trace", action="store_true")

    ver = sub.add_parser("verify", help="check shards and optionally repair them")
    ver.add_argument("--in", dest="inp", required=True)
    ver.add_argument("--repair", action="store_true")

    ana = sub.add_parser("analyze", help="run an analysis suite")
    ana.add_argument("suite", choices=sorted(analysis.SUITES))

    dl = sub.add_parser("demo-lines", help="erase and recover lines of one slope")
    dl.add_argument("--p", type=int, default=7)
    dl.add_argument("--r", type=int, default=3)
    dl.add_argument("--slope", type=parse_slope, default=1)
    dl.add_argument("--lines", default=None, help="anchors of the erased lines")
    dl.add_argument("--seed", type=int, default=0)
    dl.add_argument("--trace", action="store_true")
    return ap


def _print_trace(trace: DecodeTrace):
    if not trace.steps:
        print("trace: no global decoding step was needed")
        return
    first = lambda v: v.reshape(-1, v.shape[-1])[0]  # noqa: E731
    print(f"trace (first stripe): erased columns {list(trace.erased)}")
    for j, s in enumerate(trace.syndromes):
        print(f"  S_{j} = {format_ring(first(s))}")
    for step in trace.steps:
        g = ", ".join(str(x) for x in step.locator)
        print(f"  column {step.column}: G coefficients [{g}] -> e = {format_ring(first(step.value))}")


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.verb == "encode":
            layout = Layout.build(args.kind, args.p, args.r, args.b, parse_g(args.g),
                                  args.prim_poly, args.shortened_k)
            m = encode_file(args.inp, args.out, layout)
            print(f"wrote {len(layout.stored_cols)} shards, {m['stripe_count']} stripes, "
                  f"to {args.out}")
        elif args.verb == "decode":
            trace = DecodeTrace() if args.trace else None
            problems, reads = decode_dir(args.inp, args.out, parse_int_list(args.erase), trace)
            for c, why in sorted(problems.items()):
                print(f"shard {c}: {why}")
            if trace is not None:
                _print_trace(trace)
            print(f"wrote {args.out}")
        elif args.verb == "verify":
            return 0 if verify_dir(args.inp, args.repair) else 1
        elif args.verb == "analyze":
            claims = analysis.run_suite(args.suite)
            print(analysis.format_report(claims))
            return 0 if all(c.passed for c in claims) else 1
        elif args.verb == "demo-lines":
            anchors = parse_int_list(args.lines) or list(range(args.r))
            return 0 if demo_lines(args.p, args.r, args.slope, anchors, args.seed, args.trace) else 1
    except UnsupportedRegime as exc:
        print(f"unsupported: {exc}", file=sys.stderr)
        return 2
    except TooManyErasures as exc:
        cols = f" (columns {list(exc.columns)})" if getattr(exc, "columns", ()) else ""
        print(f"error: {exc}{cols}", file=sys.stderr)
        return 3
    except (CodeError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
