"""Vector weights over dyadic scales: constructors, goodness tests, translation."""
from __future__ import annotations

import json
import math
import warnings
from dataclasses import dataclass, replace
from pathlib import Path
from typing import NamedTuple, Optional

import numpy as np


def conjugate_exponent(p: float) -> float:
    """Hölder conjugate ``p' = p / (p - 1)``; ``inf`` for p = 1."""
    if p < 1:
        raise ValueError(f"exponent must be >= 1, got {p}")
    if p == 1:
        return math.inf
    if math.isinf(p):
        return 1.0
    return p / (p - 1.0)


def _inv(p: float) -> float:
    return 0.0 if math.isinf(p) else 1.0 / p


@dataclass(frozen=True)
class VectorWeight:
    """A sequence ``{w_j}`` indexed by the dyadic scale j.

    ``kind="piecewise-power"``: ``w_j = c 2**(beta_plus m)`` for ``m >= 0`` and
    ``c 2**(beta_minus m)`` for ``m < 0``, where ``m = j + offset``.  The offset
    records translations so that shifting stays exact.

    ``kind="tabulated"``: ``values[i]`` is ``w_{j_lo + i}``; evaluation outside
    the table is an error.
    """

    kind: str = "piecewise-power"
    c: float = 1.0
    beta_plus: float = 0.0
    beta_minus: float = 0.0
    offset: int = 0
    j_lo: int = 0
    values: Optional[tuple] = None

    def __post_init__(self):
        if self.kind == "piecewise-power":
            if not self.c > 0:
                raise ValueError(f"weight constant must be positive, got {self.c}")
        elif self.kind == "tabulated":
            if self.values is None or len(self.values) == 0:
                raise ValueError("tabulated weight needs values")
            vals = tuple(float(v) for v in self.values)
            if any(v < 0 or not math.isfinite(v) for v in vals):
                raise ValueError("weight values must be finite and non-negative")
            object.__setattr__(self, "values", vals)
        else:
            raise ValueError(f"unknown weight kind {self.kind!r}")

    @property
    def j_hi(self) -> Optional[int]:
        if self.kind != "tabulated":
            return None
        return self.j_lo + len(self.values) - 1

    def __call__(self, j):
        scalar = np.isscalar(j)
        jj = np.asarray(j, dtype=np.int64)
        if self.kind == "piecewise-power":
            m = (jj + self.offset).astype(float)
            beta = np.where(m >= 0, self.beta_plus, self.beta_minus)
            out = self.c * np.exp2(beta * m)
        else:
            idx = jj - self.j_lo
            if np.any(idx < 0) or np.any(idx >= len(self.values)):
                raise IndexError(f"weight table covers j in [{self.j_lo}, {self.j_hi}], got {j}")
            out = np.asarray(self.values)[idx]
        return float(out) if scalar else out

    # serialization -----------------------------------------------------
    def to_dict(self) -> dict:
        if self.kind == "tabulated":
            return {"kind": "tabulated", "j_lo": self.j_lo, "values": list(self.values)}
        out = {"kind": "piecewise-power", "c": self.c,
               "beta_plus": self.beta_plus, "beta_minus": self.beta_minus}
        if self.offset:
            out["offset"] = self.offset
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, obj: dict) -> "VectorWeight":
        try:
            kind = obj["kind"]
            if kind == "tabulated":
                return cls("tabulated", j_lo=int(obj["j_lo"]), values=tuple(obj["values"]))
            if kind == "piecewise-power":
                return cls("piecewise-power", float(obj["c"]), float(obj["beta_plus"]),
                           float(obj["beta_minus"]), int(obj.get("offset", 0)))
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed weight object: {exc}") from None
        raise ValueError(f"unknown weight kind {obj.get('kind')!r}")

    @classmethod
    def from_json(cls, text: str) -> "VectorWeight":
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ValueError(f"weight is not valid JSON: {exc}") from None
        if not isinstance(obj, dict):
            raise ValueError("weight JSON must be an object")
        return cls.from_dict(obj)


def power_weight(c: float, beta_plus: float, beta_minus: float) -> VectorWeight:
    return VectorWeight("piecewise-power", float(c), float(beta_plus), float(beta_minus))


def tabulated(j_lo: int, values) -> VectorWeight:
    return VectorWeight("tabulated", j_lo=int(j_lo), values=tuple(values))


def weight_w_p(p: float, d: int = 1) -> VectorWeight:
    """``w_j = 2**(j d (p'-2) / (2p'))``, defined for p > 2."""
    if not p > 2:
        raise ValueError(f"w(p) needs p > 2, got {p}")
    pp = conjugate_exponent(p)
    beta = d * (pp - 2.0) / (2.0 * pp)
    return power_weight(1.0, beta, beta)


def fx_weight(p: float, d: int = 1) -> VectorWeight:
    """Same exponent formula as :func:`weight_w_p`, for any p > 1."""
    pp = conjugate_exponent(p)
    if math.isinf(pp):
        raise ValueError("p must exceed 1")
    beta = d * (pp - 2.0) / (2.0 * pp)
    return power_weight(1.0, beta, beta)


def weight_p_p0(p: float, p0: float, q: float, d: int = 1) -> VectorWeight:
    """``w_j = 2**(j d (1/p - 1/p0))``; requires ``p > p0 > q' > 1``."""
    qq = conjugate_exponent(q)
    if not (p > p0 > qq > 1):
        raise ValueError(f"need p > p0 > q' > 1, got p={p}, p0={p0}, q'={qq}")
    beta = d * (1.0 / p - 1.0 / p0)
    return power_weight(1.0, beta, beta)


def morrey_weights(p: float, q: float, d: int = 1):
    """The reciprocal pair ``2**(j d (1/q - 1/p))`` and ``2**(j d (1/p - 1/q))``."""
    if p < 1 or q < 1:
        raise ValueError("exponents must be >= 1")
    beta = d * (1.0 / q - 1.0 / p)
    return power_weight(1.0, beta, beta), power_weight(1.0, -beta, -beta)


def power_of_weight(w: VectorWeight, e: float) -> VectorWeight:
    """``{w_j**e}``, e.g. ``e = r - 1`` for the second duality pairing.

    Goodness is not implied and is left to :func:`is_good`.
    """
    if w.kind == "tabulated":
        return tabulated(w.j_lo, np.asarray(w.values) ** e)
    return replace(w, c=w.c ** e, beta_plus=w.beta_plus * e, beta_minus=w.beta_minus * e)


def shift(w: VectorWeight, n: int) -> VectorWeight:
    """Translation ``(tau^n w)_j = w_{j+n}``."""
    n = int(n)
    if n == 0:
        return w
    if w.kind == "tabulated":
        return replace(w, j_lo=w.j_lo - n)
    return replace(w, offset=w.offset + n)


def sigma_weight(w: VectorWeight, p: float, d: int = 1, j_range=(-64, 64)) -> VectorWeight:
    """``sigma_j = 2**(-j d |1 - 2/p|) w_j`` for j >= 0, ``w_j`` otherwise.

    Translated power weights have their kink away from j = 0, so they are
    tabulated on ``j_range``.
    """
    gamma = d * abs(1.0 - 2.0 / p)
    if w.kind == "piecewise-power" and w.offset == 0:
        return replace(w, beta_plus=w.beta_plus - gamma)
    if w.kind == "tabulated":
        lo, hi = w.j_lo, w.j_hi
    else:
        lo, hi = j_range
    js = np.arange(lo, hi + 1)
    vals = w(js) * np.where(js >= 0, np.exp2(-gamma * js.astype(float)), 1.0)
    return tabulated(lo, vals)


def is_multiplicative(w: VectorWeight, probe: int = 8, rtol: float = 1e-12) -> bool:
    """Checks ``w_{i+j} = w_i w_j`` for i, j in [-probe, probe]."""
    if w.kind == "tabulated" and (w.j_lo > -2 * probe or w.j_hi < 2 * probe):
        return False
    js = np.arange(-probe, probe + 1)
    wi = w(js)
    lhs = w(js[:, None] + js[None, :])
    rhs = wi[:, None] * wi[None, :]
    scale = np.maximum(np.abs(lhs), np.abs(rhs))
    return bool(np.all(np.abs(lhs - rhs) <= rtol * np.where(scale > 0, scale, 1.0)))


class Goodness(NamedTuple):
    good: bool
    margin: float


def _slopes(w: VectorWeight):
    if w.kind == "piecewise-power":
        return w.beta_plus, w.beta_minus
    warnings.warn("goodness of a tabulated weight is a least-squares slope heuristic", stacklevel=3)
    js = np.arange(w.j_lo, w.j_hi + 1)
    vals = np.asarray(w.values)
    if np.any(vals <= 0):
        return math.nan, math.nan

    def fit(sel):
        if np.count_nonzero(sel) < 2:
            return math.nan
        return float(np.polyfit(js[sel], np.log2(vals[sel]), 1)[0])

    return fit(js >= 0), fit(js < 0)


def _goodness(w, threshold) -> Goodness:
    bp, bm = _slopes(w)
    if math.isnan(bp) or math.isnan(bm):
        return Goodness(False, math.nan)
    margin = min(-bp, bm - threshold)
    return Goodness(bool(margin > 0), float(margin))


def is_good(w: VectorWeight, p: float, q: float, d: int = 1) -> Goodness:
    """Decay toward j -> +inf and the low-scale bound ``beta_- > d/q - d/p'``."""
    return _goodness(w, d * _inv(q) - d * _inv(conjugate_exponent(p)))


def is_good_amalgam(w: VectorWeight, p: float, q: float, d: int = 1) -> Goodness:
    """As :func:`is_good` with the threshold ``d/q - d/p``."""
    return _goodness(w, d * _inv(q) - d * _inv(p))


def parse_weight(text: str, d: int = 1) -> VectorWeight:
    """Weight from a JSON object, a JSON file, or a shorthand.

    Shorthands: ``one``, ``wp:P``, ``fx:P``, ``pp0:P,P0,Q``,
    ``power:C,BPLUS,BMINUS``, ``morrey:P,Q`` and ``morrey-dual:P,Q``.
    """
    text = text.strip()
    if text.startswith("{"):
        return VectorWeight.from_json(text)
    name, _, args = text.partition(":")
    try:
        nums = [float(v) for v in args.split(",")] if args else []
    except ValueError:
        nums = None
    if nums is not None:
        builders = {
            "one": (0, lambda: power_weight(1, 0, 0)),
            "wp": (1, lambda p: weight_w_p(p, d)),
            "fx": (1, lambda p: fx_weight(p, d)),
            "pp0": (3, lambda p, p0, q: weight_p_p0(p, p0, q, d)),
            "power": (3, power_weight),
            "morrey": (2, lambda p, q: morrey_weights(p, q, d)[0]),
            "morrey-dual": (2, lambda p, q: morrey_weights(p, q, d)[1]),
        }
        if name in builders:
            arity, build = builders[name]
            if len(nums) != arity:
                raise ValueError(f"weight shorthand {name!r} takes {arity} numbers")
            return build(*nums)
    path = Path(text)
    if path.is_file():
        return VectorWeight.from_json(path.read_text())
    raise ValueError(f"cannot parse weight {text!r}")
