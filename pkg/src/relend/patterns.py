"""Finite-support configurations over the coset space and the induced action.

A configuration assigns an alphabet symbol to every coset, with a default
symbol ``x0`` everywhere outside a finite support.  The subgroup K acts on
the alphabet through per-generator permutations (the built-in subgroups are
abelian, so an exponent vector determines the permutation); the whole group
then acts on configurations by moving the support and twisting values by the
K-valued coset correction.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping

from .coset_graph import CosetGraph
from .errors import ConfigError, InsufficientRadiusError
from .groups import CosetId, Group, GroupElement, coset_cocycle, coset_of


@dataclass(frozen=True)
class Alphabet:
    """Finite symbol set with a K-action given by generator permutations.

    ``perms`` maps primary K-generator names to permutations of symbol
    indices.  The default symbol x0 must be fixed by every generator, which
    makes it fixed by all of K and keeps finite supports finite under the
    action.
    """

    symbols: tuple[str, ...]
    x0: str
    perms: tuple[tuple[str, tuple[int, ...]], ...] = ()

    def __post_init__(self):
        if len(set(self.symbols)) != len(self.symbols):
            raise ConfigError(f"duplicate symbols: {self.symbols}")
        if self.x0 not in self.symbols:
            raise ConfigError(f"default symbol {self.x0!r} not in {self.symbols}")
        n = len(self.symbols)
        x0i = self.symbols.index(self.x0)
        for name, perm in self.perms:
            if sorted(perm) != list(range(n)):
                raise ConfigError(f"{name}: {perm} is not a permutation")
            if perm[x0i] != x0i:
                raise ConfigError(f"{name}: permutation moves the default symbol")

    def index(self, symbol: str) -> int:
        return self.symbols.index(symbol)

    @cached_property
    def _perm_map(self) -> dict[str, tuple[int, ...]]:
        return dict(self.perms)

    def permutation_of(self, group: Group, k: GroupElement) -> tuple[int, ...]:
        """The permutation alpha(k) for k in K, via its exponent vector."""
        n = len(self.symbols)
        result = list(range(n))
        exps = group.k_exponents(k)
        for idx, e in zip(group.k_primaries, exps):
            name = group.gen_names[idx - 1]
            perm = self._perm_map.get(name)
            if perm is None or e == 0:
                continue
            step = perm if e > 0 else _invert_perm(perm)
            for _ in range(abs(e)):
                result = [step[i] for i in result]
        return tuple(result)

    def apply(self, group: Group, k: GroupElement, symbol: str) -> str:
        return self.symbols[self.permutation_of(group, k)[self.index(symbol)]]


def _invert_perm(perm: tuple[int, ...]) -> tuple[int, ...]:
    out = [0] * len(perm)
    for i, p in enumerate(perm):
        out[p] = i
    return tuple(out)


def trivial_alphabet(symbols: Iterable[str], x0: str) -> Alphabet:
    return Alphabet(tuple(symbols), x0, ())


@dataclass(frozen=True)
class Pattern:
    """A finite-support configuration; entries never hold the default symbol."""

    alphabet: Alphabet
    entries: frozenset  # frozenset[tuple[CosetId, str]]

    @cached_property
    def _map(self) -> dict[CosetId, str]:
        return dict(self.entries)

    def value_at(self, c: CosetId) -> str:
        return self._map.get(c, self.alphabet.x0)

    def support(self) -> frozenset[CosetId]:
        return frozenset(self._map)

    def items(self):
        return self._map.items()

    def is_empty(self) -> bool:
        return not self.entries

    def __repr__(self) -> str:
        inner = ", ".join(
            f"{c!r}:{s}" for c, s in sorted(self._map.items(), key=lambda kv: repr(kv[0]))
        )
        return f"Pattern{{{inner}}}"


def empty_pattern(alphabet: Alphabet) -> Pattern:
    return Pattern(alphabet, frozenset())


def make_pattern(alphabet: Alphabet, assignment: Mapping[CosetId, str]) -> Pattern:
    """Build a pattern, dropping explicit default entries."""
    items = []
    for c, s in assignment.items():
        if s not in alphabet.symbols:
            raise ConfigError(f"symbol {s!r} not in alphabet {alphabet.symbols}")
        if s != alphabet.x0:
            items.append((c, s))
    return Pattern(alphabet, frozenset(items))


def act(g: GroupElement, y: Pattern) -> Pattern:
    """The induced action: support moves by g, values twist by alpha."""
    group = g.group
    out = {}
    for c, sym in y.items():
        moved = group.multiply(g, c.rep)
        target = coset_of(moved)
        correction = coset_cocycle(g, c)
        out[target] = y.alphabet.apply(group, correction, sym)
    return make_pattern(y.alphabet, out)


def pattern_norm(graph: CosetGraph, y: Pattern) -> int:
    """Largest coset norm in the support; the empty pattern has norm 0."""
    best = 0
    for c in y.support():
        if c not in graph.norms:
            raise InsufficientRadiusError(
                f"support coset {c!r} is outside the built radius {graph.radius}"
            )
        best = max(best, graph.norms[c])
    return best


def restrict(y: Pattern, region: frozenset[CosetId] | set[CosetId]) -> Pattern:
    """Keep entries inside the region, reset everything else to the default."""
    return Pattern(
        y.alphabet, frozenset((c, s) for c, s in y.entries if c in region)
    )


def verify_coinduced_fixed_point(
    group: Group, alphabet: Alphabet, symbol: str, radius: int = 3
) -> bool:
    """Bounded check that ``symbol`` spawns a fixed configuration.

    Scans the word ball: whenever two words land in the base coset's orbit
    position (sK = tK), their alphabet corrections must agree on the symbol.
    Always true for the default symbol.
    """
    from .groups import ball_elements

    base = coset_of(group.identity())
    seen: dict[CosetId, str] = {}
    for s in ball_elements(group, radius):
        image = alphabet.apply(group, coset_cocycle(s, base), symbol)
        v = coset_of(s)
        if v in seen:
            if seen[v] != image:
                return False
        else:
            seen[v] = image
    return True


def random_pattern(
    graph: CosetGraph,
    alphabet: Alphabet,
    max_norm: int,
    rng: random.Random,
    max_entries: int = 6,
) -> Pattern:
    """A random finite-support pattern with support norm at most ``max_norm``."""
    region = [v for v in graph.vertices_in_order() if graph.norms[v] <= max_norm]
    non_default = [s for s in alphabet.symbols if s != alphabet.x0]
    count = rng.randrange(0, min(max_entries, len(region)) + 1)
    chosen = rng.sample(region, count) if count else []
    return make_pattern(
        alphabet, {c: rng.choice(non_default) for c in chosen}
    )
