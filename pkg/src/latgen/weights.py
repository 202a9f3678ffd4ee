"""Weight models for the weighted function spaces.

ProductWeights is the fast path used by every construction; GeneralWeights is
the explicit per-subset table used by the test oracles. The decay function
r_{alpha,gamma} lives here as well.
"""

import math
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Dict, FrozenSet, Sequence, Tuple, Union

__all__ = [
    "ProductWeights",
    "GeneralWeights",
    "WeightSpec",
    "weight_of",
    "r_alpha_gamma",
    "power_weights",
    "gamma_tilde",
]

#: Materializing a general-weight table enumerates 2^s subsets.
GENERAL_WEIGHTS_MAX_DIM = 20


@dataclass(frozen=True)
class ProductWeights:
    """gamma_u = prod_{j in u} gamma_j, with gamma_empty = 1."""

    gammas: Tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "gammas", tuple(float(g) for g in self.gammas))
        if any(g <= 0.0 for g in self.gammas):
            raise ValueError("all gamma_j must be positive")

    @property
    def s(self) -> int:
        return len(self.gammas)

    def gamma(self, j: int) -> float:
        """gamma_j, 1-based."""
        return self.gammas[j - 1]


@dataclass(frozen=True)
class GeneralWeights:
    """Explicit table of gamma_u for every subset u of {1..s}; gamma_empty = 1."""

    s: int
    table: Dict[FrozenSet[int], float]

    def __post_init__(self):
        if self.s > GENERAL_WEIGHTS_MAX_DIM:
            raise ValueError("general weights capped at s <= %d" % GENERAL_WEIGHTS_MAX_DIM)
        if self.table.get(frozenset(), 1.0) != 1.0:
            raise ValueError("gamma_empty must equal 1")
        for u, g in self.table.items():
            if u and g <= 0.0:
                raise ValueError("gamma_u must be positive, got %r for %r" % (g, set(u)))

    @classmethod
    def from_product(cls, w: ProductWeights, s: int = None) -> "GeneralWeights":
        s = w.s if s is None else s
        table = {}
        coords = range(1, s + 1)
        for size in range(s + 1):
            for u in combinations(coords, size):
                table[frozenset(u)] = math.prod(w.gamma(j) for j in u)
        return cls(s, table)

    def gamma(self, u) -> float:
        u = frozenset(u)
        if not u:
            return 1.0
        if not u <= frozenset(range(1, self.s + 1)):
            raise ValueError("subset %r out of range for s=%d" % (set(u), self.s))
        return self.table[u]


Weights = Union[ProductWeights, GeneralWeights]


def weight_of(u, w: Weights) -> float:
    """gamma_u for either weight model."""
    u = frozenset(u)
    if isinstance(w, GeneralWeights):
        return w.gamma(u)
    if not u:
        return 1.0
    if u and max(u) > w.s:
        raise ValueError("subset %r out of range for s=%d" % (set(u), w.s))
    return math.prod(w.gamma(j) for j in u)


def r_alpha_gamma(m: Sequence[int], alpha: float, w: Weights) -> float:
    """gamma_supp(m)^-1 * prod_{j in supp(m)} |m_j|^alpha; equals 1 at m = 0."""
    supp = frozenset(j for j, mj in enumerate(m, start=1) if mj != 0)
    if not supp:
        return 1.0
    prod = math.prod(abs(m[j - 1]) ** alpha for j in supp)
    return prod / weight_of(supp, w)


def power_weights(w: ProductWeights, alpha: float) -> ProductWeights:
    """Per-coordinate gamma_j^alpha (consistent with gamma_u^alpha for products)."""
    if alpha <= 0.0:
        raise ValueError("requires alpha > 0")
    return ProductWeights(tuple(g**alpha for g in w.gammas))


def gamma_tilde(w: Weights, j: int) -> float:
    """Diagnostic ratio max over v subset of {1..j-1} of gamma_{v u {j}} / gamma_v.

    Reduces to gamma_j for product weights. Purely informational; nothing in
    the constructions acts on it.
    """
    if isinstance(w, ProductWeights):
        return w.gamma(j)
    best = 0.0
    coords = range(1, j)
    for size in range(j):
        for v in combinations(coords, size):
            v = frozenset(v)
            best = max(best, w.gamma(v | {j}) / w.gamma(v))
    return best


@dataclass(frozen=True)
class WeightSpec:
    """A resolvable description of a weight family.

    kind is one of "product-list", "product-formula", "general-table". The
    CLI parses its weight grammar into one of these; the math core only ever
    sees resolved numbers.
    """

    kind: str
    formula: str = ""  # for product-formula: "1/j^2", "1/j^3", or "c^j"
    c: float = 0.0  # parameter for the "c^j" formula
    gammas: Tuple[float, ...] = ()  # for product-list
    table: Tuple[Tuple[FrozenSet[int], float], ...] = ()  # for general-table

    def resolve(self, s: int) -> Weights:
        if self.kind == "product-formula":
            if self.formula == "1/j^2":
                return ProductWeights(tuple(1.0 / j**2 for j in range(1, s + 1)))
            if self.formula == "1/j^3":
                return ProductWeights(tuple(1.0 / j**3 for j in range(1, s + 1)))
            if self.formula == "c^j":
                return ProductWeights(tuple(self.c**j for j in range(1, s + 1)))
            raise ValueError("unknown product formula %r" % self.formula)
        if self.kind == "product-list":
            if len(self.gammas) < s:
                raise ValueError(
                    "weight list has %d entries, need %d" % (len(self.gammas), s)
                )
            return ProductWeights(self.gammas[:s])
        if self.kind == "general-table":
            table = {u: g for u, g in self.table}
            table.setdefault(frozenset(), 1.0)
            return GeneralWeights(s, table)
        raise ValueError("unknown weight spec kind %r" % self.kind)
