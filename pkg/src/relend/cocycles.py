"""Continuous cocycles as per-generator block codes with a finite window.

A cocycle into a target group H is stored as one lookup table per generator,
keyed by the restriction of the configuration to the ball of the window
radius around the base coset.  Evaluation on a general element walks its
canonical word; word-independence is exactly the cocycle identity and is
guarded by ``verify_relations``.  ``path_difference`` recomputes a
difference of cocycle values along an edge path from per-edge subgroup
witnesses, giving a second, independent route to the same group element.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable

from .coset_graph import CosetGraph, Path
from .errors import (
    ConfigError,
    InsufficientRadiusError,
    InternalError,
    NotFoundError,
)
from .groups import (
    CosetId,
    Group,
    GroupElement,
    Letter,
    k_ball,
)
from .patterns import Alphabet, Pattern, act, empty_pattern, restrict


def window_region(graph: CosetGraph, window: int) -> frozenset[CosetId]:
    """The ball of the window radius around the base coset."""
    if window > graph.radius:
        raise InsufficientRadiusError(
            f"window {window} exceeds built radius {graph.radius}"
        )
    return frozenset(v for v, n in graph.norms.items() if n <= window)


def pattern_key(p: Pattern) -> str:
    """Canonical string key for a window pattern: sorted word=symbol pairs."""
    items = []
    for c, s in p.items():
        g = c.rep
        items.append((g.group.word_key(g), f"{g.group.word_str(g) or 'e'}={s}"))
    return "|".join(text for _, text in sorted(items))


@dataclass(frozen=True)
class PlantedData:
    """Provenance of a planted coboundary-of-a-homomorphism cocycle."""

    seed: int
    b0_window: int
    b0: dict[str, GroupElement]
    hom_images: dict[Letter, GroupElement]
    def_key: str = "planted"


@dataclass(frozen=True)
class ObstructionData:
    set_name: str
    def_key: str = "obstruction"


@dataclass
class CocycleSpec:
    """A block-coded cocycle G x Y -> H of window radius ``window``.

    ``tables`` memoises generator values per window-pattern key; when a
    ``rule`` is present, missing entries are computed on demand, so tables
    over large windows never need to be materialised in full.
    """

    group: Group
    alphabet: Alphabet
    target: Group
    window: int
    tables: dict[Letter, dict[str, GroupElement]] = field(default_factory=dict)
    rule: Callable[[Letter, Pattern], GroupElement] | None = None
    derivation: object | None = None

    def factor(self, letter: Letter, window_pattern: Pattern) -> GroupElement:
        key = pattern_key(window_pattern)
        table = self.tables.setdefault(letter, {})
        hit = table.get(key)
        if hit is not None:
            return hit
        if self.rule is None:
            raise InternalError(
                f"table for letter {letter} has no entry for key {key!r}; "
                "an explicit cocycle table must be total"
            )
        value = self.rule(letter, window_pattern)
        table[key] = value
        return value

    def corrupted(self, letter: Letter, key: str, value: GroupElement) -> "CocycleSpec":
        """A copy with one table entry overwritten; for negative controls."""
        tables = {l: dict(t) for l, t in self.tables.items()}
        tables.setdefault(letter, {})[key] = value
        return CocycleSpec(
            self.group,
            self.alphabet,
            self.target,
            self.window,
            tables,
            None if self.rule is None else _shadow_rule(self.rule, letter, key, value),
            self.derivation,
        )


def _shadow_rule(rule, letter, key, value):
    def shadowed(l: Letter, p: Pattern) -> GroupElement:
        if l == letter and pattern_key(p) == key:
            return value
        return rule(l, p)

    return shadowed


def evaluate_word(
    c: CocycleSpec, word, y: Pattern, region: frozenset[CosetId]
) -> GroupElement:
    """Cocycle value along an explicit letter word (right-to-left expansion)."""
    group = c.group
    acc = c.target.identity()
    z = y
    for letter in reversed(tuple(word)):
        f = c.factor(letter, restrict(z, region))
        acc = c.target.multiply(f, acc)
        z = act(group.letter_element(letter), z)
    return acc


def evaluate(
    c: CocycleSpec, g: GroupElement, y: Pattern, graph: CosetGraph
) -> GroupElement:
    """c(g, y) along the canonical word of g."""
    return evaluate_word(c, g.word, y, window_region(graph, c.window))


@dataclass(frozen=True)
class RelationViolation:
    relator: tuple
    key: str
    value: GroupElement


@dataclass(frozen=True)
class RelationReport:
    checked: int
    violations: tuple[RelationViolation, ...]

    @property
    def ok(self) -> bool:
        return not self.violations


def verify_relations(
    c: CocycleSpec,
    graph: CosetGraph,
    samples: int = 20,
    rng: random.Random | None = None,
    max_norm: int = 3,
) -> RelationReport:
    """Evaluate every family relator on sampled patterns; all must vanish.

    The empty configuration is always included in the sample.  A violation
    means the tables do not define a cocycle (word-independence fails).
    """
    from .patterns import random_pattern

    rng = rng or random.Random(0)
    region = window_region(graph, c.window)
    pats = [empty_pattern(c.alphabet)] + [
        random_pattern(graph, c.alphabet, max_norm, rng) for _ in range(samples)
    ]
    identity = c.target.identity()
    violations = []
    checked = 0
    for rel in c.group.relator_words():
        for y in pats:
            checked += 1
            value = evaluate_word(c, rel, y, region)
            if value != identity:
                violations.append(
                    RelationViolation(rel, pattern_key(restrict(y, region)), value)
                )
    return RelationReport(checked, tuple(violations))


@dataclass(frozen=True)
class EdgeWitness:
    """Subgroup elements certifying one labeled edge: v * x^-1 = u * y * s."""

    y: GroupElement
    x: GroupElement
    letter: Letter


def edge_witness(
    u: CosetId, v: CosetId, letter: Letter, radius: int = 4
) -> EdgeWitness | None:
    """Find k-elements routing the edge u ->s v; None if the K-ball is too small."""
    group = u.rep.group
    s_elem = group.letter_element(letter)
    v_inv = group.invert(v.rep)
    for y in k_ball(group, radius):
        candidate = group.multiply(group.multiply(u.rep, y), s_elem)
        shifted = group.multiply(v_inv, candidate)
        if group.is_in_k(shifted):
            return EdgeWitness(y, group.invert(shifted), letter)
    return None


def path_difference(
    c: CocycleSpec,
    path: Path,
    y: Pattern,
    graph: CosetGraph,
    witness_radius: int = 4,
) -> GroupElement:
    """c(g_n^-1, y) * c(g_0^-1, y)^-1 computed through per-edge witnesses.

    Each edge contributes three factors (for x^-1, s^-1, y^-1 of its
    witness), with subgroup elements expanded as words in T.  The result
    must agree exactly with the direct evaluation; tests rely on the two
    routes being independent.
    """
    group = c.group
    region = window_region(graph, c.window)
    witnesses = []
    for i in range(len(path)):
        w = edge_witness(
            path.vertices[i], path.vertices[i + 1], path.labels[i], witness_radius
        )
        if w is None:
            raise NotFoundError(
                f"no edge witness within K-ball radius {witness_radius} for "
                f"edge {i} of the path"
            )
        witnesses.append(w)
    total = c.target.identity()
    z = act(group.invert(path.vertices[0].rep), y)
    for w in witnesses:
        eta3 = evaluate_word(c, group.invert(w.y).word, z, region)
        z = act(group.invert(w.y), z)
        eta2 = evaluate_word(c, (-w.letter,), z, region)
        z = act(group.letter_element(-w.letter), z)
        eta1 = evaluate_word(c, group.invert(w.x).word, z, region)
        z = act(group.invert(w.x), z)
        block = c.target.multiply(eta1, c.target.multiply(eta2, eta3))
        total = c.target.multiply(block, total)
    return total


def locality_check(
    c: CocycleSpec, path: Path, y: Pattern, z: Pattern, graph: CosetGraph
) -> bool:
    """Whether two configurations give the same path difference.

    Callers arrange for y and z to agree on the window neighbourhood of the
    path; genuine cocycles then always return True.
    """
    return path_difference(c, path, y, graph) == path_difference(c, path, z, graph)


# ---------------------------------------------------------------------------
# Constructors


def constant_cocycle(
    group: Group,
    alphabet: Alphabet,
    target: Group,
    images: dict[Letter, GroupElement],
    window: int = 1,
) -> CocycleSpec:
    """The cocycle ignoring the configuration: c(s, y) = images[s]."""
    for l in group.s_letters:
        if l not in images and -l in images:
            images[l] = target.invert(images[-l])
        images.setdefault(l, target.identity())

    def rule(letter: Letter, p: Pattern) -> GroupElement:
        return images[letter]

    return CocycleSpec(group, alphabet, target, window, {}, rule, None)


def _random_target_element(target: Group, rng: random.Random) -> GroupElement:
    family = target.family
    if family == "zmod":
        return GroupElement(
            target, tuple(rng.randrange(m) for m in target.mods)
        )
    if family == "zd":
        return GroupElement(
            target, tuple(rng.randrange(-2, 3) for _ in range(target.d))
        )
    word = [rng.choice(target.s_letters) for _ in range(rng.randrange(0, 3))]
    return target.element_from_word(word)


def _abelian(target: Group) -> bool:
    return target.family in ("zd", "zmod")


def plant_cocycle(
    group: Group,
    alphabet: Alphabet,
    target: Group,
    b0_window: int,
    seed: int,
    graph: CosetGraph,
) -> CocycleSpec:
    """A genuine cocycle built from a random transfer table and homomorphism.

    Draws a random map b0 on configurations of the b0_window ball and a
    random homomorphism, then codes c(s, y) = b0(s y)^-1 * hom(s) * b0(y).
    The value of c(s, .) is determined by the window b0_window + 1, which
    becomes the window of the returned code.  Relators are repaired and
    verified before returning.
    """
    import itertools

    if graph.group is not group:
        raise ConfigError("the supplied graph was built over a different group")
    rng = random.Random(seed)
    region0 = sorted(
        window_region(graph, b0_window),
        key=lambda v: group.word_key(v.rep),
    )
    if len(alphabet.symbols) ** len(region0) > 10**6:
        raise ConfigError(
            f"b0 table over {len(region0)} cells and "
            f"{len(alphabet.symbols)} symbols is too large to materialise"
        )
    b0: dict[str, GroupElement] = {}
    from .patterns import make_pattern

    for combo in itertools.product(alphabet.symbols, repeat=len(region0)):
        p = make_pattern(alphabet, dict(zip(region0, combo)))
        b0[pattern_key(p)] = _random_target_element(target, rng)

    images: dict[Letter, GroupElement] = {}
    if _abelian(target):
        for i in range(1, len(group.gen_names) + 1):
            images[i] = _random_target_element(target, rng)
    else:
        h = _random_target_element(target, rng)
        for i in range(1, len(group.gen_names) + 1):
            power = rng.randrange(-2, 3)
            img = target.identity()
            step = h if power >= 0 else target.invert(h)
            for _ in range(abs(power)):
                img = target.multiply(img, step)
            images[i] = img

    def hom_value(word) -> GroupElement:
        out = target.identity()
        for l in word:
            img = images[abs(l)]
            out = target.multiply(out, img if l > 0 else target.invert(img))
        return out

    # repair images until every relator maps to the identity
    for rel in group.relator_words():
        if not hom_value(rel).is_identity():
            for l in rel:
                if abs(l) in {abs(t) for t in group.t_letters}:
                    images[abs(l)] = target.identity()
            if not hom_value(rel).is_identity():
                for l in rel:
                    images[abs(l)] = target.identity()
        if not hom_value(rel).is_identity():
            raise InternalError(f"could not repair homomorphism on relator {rel}")

    small_region = frozenset(region0)
    letter_images = {
        l: hom_value((l,)) for l in group.s_letters
    }

    def b0_of(p: Pattern) -> GroupElement:
        return b0[pattern_key(restrict(p, small_region))]

    def rule(letter: Letter, p: Pattern) -> GroupElement:
        moved = act(group.letter_element(letter), p)
        lhs = target.invert(b0_of(moved))
        return target.multiply(
            lhs, target.multiply(letter_images[letter], b0_of(p))
        )

    spec = CocycleSpec(
        group,
        alphabet,
        target,
        b0_window + 1,
        {},
        rule,
        PlantedData(seed, b0_window, b0, dict(letter_images)),
    )
    return spec
