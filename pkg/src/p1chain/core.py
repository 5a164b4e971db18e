"""Abstract integer specification of a P1-chain.

A chain of length ``ell`` is an iterated P1-bundle (a Bott tower) and is
determined, for every computation in this package, by three pieces of
integer data:

* the length ``ell``,
* strictly lower-triangular twist integers ``c[j, i]`` for 1 <= i < j <= ell
  (absent entries are zero; the all-zero case is the product (P1)^ell),
* a weight vector ``l`` of length ``ell``.

Indices are 1-based throughout the public interface: index 1 is the
innermost factor of the chain, and the linear forms L_j = sum_{i<j} c_ji J_i
sum over lower indices.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

__all__ = [
    "ChainSpec",
    "ChainSpecError",
    "Diagnostics",
    "parse_chain_spec",
    "serialize_chain_spec",
    "validate",
    "random_chain_spec",
]


class ChainSpecError(ValueError):
    """Malformed or structurally inconsistent chain specification."""


def _check_int(value, what):
    if isinstance(value, bool) or not isinstance(value, int):
        raise ChainSpecError(f"{what} must be an integer, got {value!r}")
    return value


@dataclass(frozen=True)
class ChainSpec:
    """Immutable P1-chain data (ell, twists c_ji, weights l_i).

    ``twists`` is a canonically sorted tuple of (j, i, c_ji) entries with
    j > i and c_ji != 0.  Use :meth:`twist` to read any entry; missing
    pairs are zero.
    """

    ell: int
    weights: tuple[int, ...]
    twists: tuple[tuple[int, int, int], ...] = ()
    _twist_map: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        _check_int(self.ell, "ell")
        if self.ell < 1:
            raise ChainSpecError(f"ell must be >= 1, got {self.ell}")
        if len(self.weights) != self.ell:
            raise ChainSpecError(
                f"weight vector has length {len(self.weights)}, expected {self.ell}"
            )
        for k, l in enumerate(self.weights, start=1):
            _check_int(l, f"weight l_{k}")
        seen = {}
        for entry in self.twists:
            if len(entry) != 3:
                raise ChainSpecError(f"twist entry must be (j, i, value): {entry!r}")
            j, i, v = entry
            _check_int(j, "twist index j")
            _check_int(i, "twist index i")
            _check_int(v, f"twist value c[{j},{i}]")
            if not (1 <= i < j <= self.ell):
                raise ChainSpecError(
                    f"upper-triangular twist: c[{j},{i}] requires 1 <= i < j <= ell"
                )
            if (j, i) in seen:
                raise ChainSpecError(f"duplicate twist entry c[{j},{i}]")
            seen[(j, i)] = v
        canonical = tuple(sorted((j, i, v) for (j, i), v in seen.items() if v != 0))
        object.__setattr__(self, "twists", canonical)
        object.__setattr__(self, "_twist_map", {(j, i): v for j, i, v in canonical})

    @classmethod
    def make(cls, ell, twists=None, weights=()):
        """Build a spec from a {(j, i): c_ji} mapping (or iterable of triples)."""
        if twists is None:
            entries = ()
        elif isinstance(twists, dict):
            entries = tuple((j, i, v) for (j, i), v in twists.items())
        else:
            entries = tuple(tuple(t) for t in twists)
        return cls(ell=ell, weights=tuple(weights), twists=entries)

    def twist(self, j, i):
        """Twist integer c_ji (zero when not set).  Requires 1 <= i < j <= ell."""
        if not (1 <= i < j <= self.ell):
            raise ChainSpecError(f"twist c[{j},{i}] out of range for ell={self.ell}")
        return self._twist_map.get((j, i), 0)


@dataclass
class Diagnostics:
    """Validation outcome: structural errors and positivity-related warnings."""

    errors: list[str] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.errors


def parse_chain_spec(text: str) -> ChainSpec:
    """Parse the JSON chain-spec format.

    Expected document: ``{"ell": N, "c": [{"j": j, "i": i, "v": v}, ...],
    "l": [l_1, ..., l_N]}``.  The ``c`` array may be absent or empty.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ChainSpecError(f"malformed spec document: {exc}") from exc
    if not isinstance(doc, dict):
        raise ChainSpecError("spec document must be a JSON object")
    for key in ("ell", "l"):
        if key not in doc:
            raise ChainSpecError(f"spec document missing field {key!r}")
    raw_c = doc.get("c", [])
    if not isinstance(raw_c, list):
        raise ChainSpecError("field 'c' must be an array of {j, i, v} objects")
    entries = []
    for item in raw_c:
        if not isinstance(item, dict) or not {"j", "i", "v"} <= set(item):
            raise ChainSpecError(f"twist entry must have fields j, i, v: {item!r}")
        entries.append((item["j"], item["i"], item["v"]))
    weights = doc["l"]
    if not isinstance(weights, list):
        raise ChainSpecError("field 'l' must be an array of integers")
    return ChainSpec(ell=doc["ell"], weights=tuple(weights), twists=tuple(entries))


def serialize_chain_spec(spec: ChainSpec) -> str:
    """Canonical serialization: twist entries sorted lexicographically by (j, i)."""
    doc = {
        "ell": spec.ell,
        "c": [{"j": j, "i": i, "v": v} for j, i, v in spec.twists],
        "l": list(spec.weights),
    }
    return json.dumps(doc, separators=(", ", ": "))


def validate(spec: ChainSpec) -> Diagnostics:
    """Diagnostics for a structurally valid spec.

    Structural problems are raised at construction time, so ``errors`` is
    empty here; warnings flag weights that void the positivity criterion's
    hypothesis (l_i = 0) or force it to fail outright (l_i < 0).
    """
    diag = Diagnostics()
    for k, l in enumerate(spec.weights, start=1):
        if l == 0:
            diag.warnings.append(f"l_{k} = 0: positivity criterion hypothesis fails")
        elif l < 0:
            diag.warnings.append(f"l_{k} = {l}: negative weight, positivity will fail")
    return diag


def random_chain_spec(rng, max_ell=4, max_twist=3, max_weight=6):
    """Random spec with ell <= max_ell, |c_ji| <= max_twist, 1 <= l_i <= max_weight."""
    ell = int(rng.integers(1, max_ell + 1))
    twists = {}
    for j in range(2, ell + 1):
        for i in range(1, j):
            c = int(rng.integers(-max_twist, max_twist + 1))
            if c:
                twists[(j, i)] = c
    weights = tuple(int(w) for w in rng.integers(1, max_weight + 1, size=ell))
    return ChainSpec.make(ell, twists, weights)
