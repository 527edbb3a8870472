"""The ring R_p(q) of polynomials modulo ``1 + x^p`` over GF(2^b).

A ring element is a numpy array whose last axis has length ``p``;
``v[..., i]`` is the coefficient of ``alpha^i``. Leading axes are a batch
and every operation here broadcasts over them. Multiplying by ``alpha^s``
is a cyclic rotation, so no field multiplication ever happens unless a
sparse multiplier carries a coefficient other than 0 or 1.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np

from .errors import LengthMismatch, NotInCode
from .gf import FieldTable


def mod(i: int, p: int) -> int:
    """``<i>_p``: the representative of ``i`` in ``0 .. p-1``."""
    return i % p


class XorCounter:
    """Tally of field-element XORs (and touched symbols, where relevant)."""

    def __init__(self):
        self.xors = 0
        self.touched = 0

    def add(self, n: int = 1):
        self.xors += n

    def __repr__(self):
        return f"XorCounter(xors={self.xors}, touched={self.touched})"


@dataclass(frozen=True)
class SparsePoly:
    """``sum(coef * alpha^s)`` stored as ``{s: coef}`` with nonzero coefs."""

    p: int
    terms: dict = dc_field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for s, a in self.terms.items():
            s = mod(int(s), self.p)
            a = int(a)
            if a:
                clean[s] = a
        object.__setattr__(self, "terms", clean)

    @classmethod
    def from_exponents(cls, p: int, exponents) -> "SparsePoly":
        """Binary element with a 1 at every exponent (repeats cancel)."""
        terms = {}
        for s in exponents:
            s = mod(s, p)
            terms[s] = terms.get(s, 0) ^ 1
        return cls(p, terms)

    @classmethod
    def from_dense(cls, v: np.ndarray) -> "SparsePoly":
        v = np.asarray(v)
        return cls(v.shape[-1], {i: int(a) for i, a in enumerate(v) if a})

    def to_dense(self) -> np.ndarray:
        out = np.zeros(self.p, dtype=np.uint8)
        for s, a in self.terms.items():
            out[s] = a
        return out

    def __iter__(self):
        return iter(sorted(self.terms.items()))

    def __len__(self):
        return len(self.terms)

    def __str__(self):
        return format_ring(self.to_dense())


def ring_from_exponents(p: int, exponents) -> np.ndarray:
    """Dense binary ring element ``sum(alpha^s for s in exponents)``."""
    return SparsePoly.from_exponents(p, exponents).to_dense()


def format_ring(v, symbol: str = "α") -> str:
    """Human-readable form, e.g. ``1⊕α^3⊕α^5``; nonbinary coefficients are
    written as ``[c]α^s``."""
    parts = []
    for i, a in enumerate(np.asarray(v).tolist()):
        if not a:
            continue
        mono = "1" if i == 0 else (symbol if i == 1 else f"{symbol}^{i}")
        if a != 1:
            mono = f"[{a}]" + ("" if i == 0 else mono)
        parts.append(mono)
    return "⊕".join(parts) if parts else "0"


def rotate(v: np.ndarray, s: int) -> np.ndarray:
    """``alpha^s * v``: ``result[..., i] = v[..., <i - s>]``."""
    v = np.asarray(v)
    return np.roll(v, mod(s, v.shape[-1]), axis=-1)


def mul_sparse(g: SparsePoly, v: np.ndarray, field: FieldTable | None = None,
               counter: XorCounter | None = None) -> np.ndarray:
    """``g * v`` in R_p(q) as a XOR of scaled rotations of ``v``."""
    v = np.asarray(v, dtype=np.uint8)
    p = v.shape[-1]
    if g.p != p:
        raise LengthMismatch(f"multiplier has length {g.p}, operand {p}")
    out = np.zeros_like(v)
    first = True
    for s, a in g:
        term = rotate(v, s)
        if a != 1:
            if field is None:
                raise ValueError("non-binary coefficient needs a field")
            term = field.mul_table[a][term]
        if first:
            out = term.copy()
            first = False
        else:
            out ^= term
            if counter is not None:
                counter.add(p)
    return out


def _is_even(v: np.ndarray) -> bool:
    return not np.any(np.bitwise_xor.reduce(v, axis=-1))


def solve_recursion(j: int, v: np.ndarray, code=None, check: bool = False,
                    counter: XorCounter | None = None) -> np.ndarray:
    """Solve ``(1 + alpha^j) z = v`` for ``z`` in the vertical code.

    ``v`` must lie in the vertical code (at least its coefficients must sum
    to zero); pass ``check=True`` to have that verified, against ``code``
    when one is given. The half-sum seeding ``z_0`` costs ``(p-3)/2`` XORs
    and the chain ``z_<ij> = z_<(i-1)j> + v_<ij>`` another ``p-1``.
    """
    v = np.asarray(v, dtype=np.uint8)
    p = v.shape[-1]
    if not 1 <= j <= p - 1:
        raise ValueError(f"exponent must be in 1..{p - 1}, got {j}")
    if check:
        ok = code.is_codeword(v) if code is not None else _is_even(v)
        if not np.all(ok):
            raise NotInCode("right-hand side is not in the vertical code")
    z = np.zeros_like(v)
    z0 = v[..., mod(2 * j, p)].copy()
    for u in range(2, (p - 1) // 2 + 1):
        z0 ^= v[..., mod(2 * u * j, p)]
        if counter is not None:
            counter.add()
    z[..., 0] = z0
    prev = 0
    for i in range(1, p):
        cur = mod(i * j, p)
        z[..., cur] = z[..., prev] ^ v[..., cur]
        if counter is not None:
            counter.add()
        prev = cur
    return z


def solve_chain(exponents, v: np.ndarray, counter: XorCounter | None = None,
                steps: list | None = None) -> np.ndarray:
    """Solve ``prod(1 + alpha^j for j in exponents) z = v`` one factor at a
    time. Intermediate right-hand sides are appended to ``steps`` if given."""
    z = np.asarray(v, dtype=np.uint8)
    for j in exponents:
        z = solve_recursion(j, z, counter=counter)
        if steps is not None:
            steps.append(z.copy())
    return z.copy()
