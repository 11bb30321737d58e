"""Exact arithmetic for the built-in group families.

Each family keeps every element in a unique normal form, exposes an ordered
symmetric generating list S (with the subgroup generators T as a sublist),
decides membership in the distinguished subgroup K, canonicalises left
cosets gK, and supplies finite witness sets F_s with K*s contained in F_s*K.

Families:
  * ``zd(d, k_coords)``      -- the lattice Z^d, K = span of the listed axes
  * ``free(rank)``           -- a free group, K trivial
  * ``bs(m, n)``             -- Baumslag-Solitar <x, t | t^-1 x^m t = x^n>, K = <x>
  * ``zmod(mods)``           -- a finite product of cyclic groups (target use)
  * ``direct_product(a, b)`` -- componentwise product, K = K_a x K_b

All values are immutable and every operation is a pure function, so elements
and cosets are safe to share across threads.
"""

from __future__ import annotations

import string
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import ConfigError, InternalError, UnsupportedFamilyError

# A letter is a signed 1-based generator index: +i is generator i, -i its inverse.
Letter = int
Word = tuple


@dataclass(frozen=True)
class GroupElement:
    """An element of a built-in group, held in family normal form."""

    group: "Group"
    payload: object

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        return self.group.multiply(self, other)

    def inverse(self) -> "GroupElement":
        return self.group.invert(self)

    @property
    def word(self) -> Word:
        return self.group.word_of(self)

    def is_identity(self) -> bool:
        return self.payload == self.group.identity().payload

    def __repr__(self) -> str:
        return f"<{self.group.word_str(self) or 'e'}>"


@dataclass(frozen=True)
class CosetId:
    """A left coset gK, identified by its canonical representative."""

    rep: GroupElement

    def __repr__(self) -> str:
        return f"[{self.rep.group.word_str(self.rep) or 'e'}]"


@dataclass(frozen=True)
class Witness:
    """A finite set F_s of elements with K*s contained in F_s*K."""

    letter: Letter
    elements: tuple


class Group:
    """Base class: generator bookkeeping plus family-specific arithmetic."""

    family = "abstract"

    def __init__(self, gen_names: Sequence[str], k_primaries: Sequence[int]):
        if len(set(n.lower() for n in gen_names)) != len(gen_names):
            raise ConfigError(f"generator names collide: {gen_names}")
        self.gen_names = tuple(gen_names)
        # 1-based indices of the primary generators that generate K.
        self.k_primaries = tuple(sorted(k_primaries))
        self.s_letters: tuple[Letter, ...] = tuple(
            s * i for i in range(1, len(gen_names) + 1) for s in (+1, -1)
        )
        kset = set(self.k_primaries)
        self.t_letters: tuple[Letter, ...] = tuple(
            l for l in self.s_letters if abs(l) in kset
        )
        self._identity = GroupElement(self, self._identity_payload())

    # -- family hooks -------------------------------------------------------

    def _identity_payload(self) -> object:
        raise NotImplementedError

    def _mul_payload(self, a: object, b: object) -> object:
        raise NotImplementedError

    def _inv_payload(self, a: object) -> object:
        raise NotImplementedError

    def word_of(self, a: GroupElement) -> Word:
        """Canonical word of ``a`` over the generating letters."""
        raise NotImplementedError

    def is_in_k(self, a: GroupElement) -> bool:
        raise NotImplementedError

    def coset_rep_element(self, a: GroupElement) -> GroupElement:
        """The canonical representative of the left coset aK."""
        raise NotImplementedError

    def k_exponents(self, a: GroupElement) -> tuple[int, ...]:
        """Exponent vector of a K-element over the primary K generators."""
        raise NotImplementedError

    def witness_elements(self, letter: Letter) -> tuple:
        raise NotImplementedError

    def relator_words(self) -> tuple[Word, ...]:
        raise NotImplementedError

    def quotient_by_k(self) -> "Group":
        """The quotient group G/K when K is normal, as a built-in family."""
        raise UnsupportedFamilyError(
            f"no quotient construction for family {self.family}"
        )

    # -- shared machinery ----------------------------------------------------

    def identity(self) -> GroupElement:
        return self._identity

    def multiply(self, a: GroupElement, b: GroupElement) -> GroupElement:
        if a.group is not self or b.group is not self:
            raise InternalError("mixing elements from different group instances")
        return GroupElement(self, self._mul_payload(a.payload, b.payload))

    def invert(self, a: GroupElement) -> GroupElement:
        return GroupElement(self, self._inv_payload(a.payload))

    def letter_element(self, letter: Letter) -> GroupElement:
        return GroupElement(self, self._letter_payload(letter))

    def _letter_payload(self, letter: Letter) -> object:
        base = self._mul_payload(
            self._identity_payload(), self._gen_payload(abs(letter))
        )
        if letter > 0:
            return base
        return self._inv_payload(base)

    def _gen_payload(self, index: int) -> object:
        raise NotImplementedError

    def element_from_word(self, word: Iterable[Letter]) -> GroupElement:
        out = self._identity_payload()
        for letter in word:
            out = self._mul_payload(out, self._letter_payload(letter))
        return GroupElement(self, out)

    def letter_name(self, letter: Letter) -> str:
        name = self.gen_names[abs(letter) - 1]
        if letter < 0:
            return name[0].upper() + name[1:]
        return name

    def word_str(self, a: GroupElement) -> str:
        return " ".join(self.letter_name(l) for l in self.word_of(a))

    def parse_token(self, token: str) -> Letter:
        sign = -1 if token[0].isupper() else +1
        name = token[0].lower() + token[1:]
        try:
            return sign * (self.gen_names.index(name) + 1)
        except ValueError:
            raise ConfigError(f"unknown generator token {token!r}") from None

    def parse_element(self, text: str) -> GroupElement:
        return self.element_from_word(self.parse_token(t) for t in text.split())

    def letter_rank(self, letter: Letter) -> int:
        return self.s_letters.index(letter)

    def word_key(self, a: GroupElement):
        """Shortlex sort key for deterministic element ordering."""
        w = self.word_of(a)
        return (len(w), tuple(self.letter_rank(l) for l in w))

    def __repr__(self) -> str:
        return f"{self.family}({', '.join(self.gen_names)})"


# ---------------------------------------------------------------------------
# Lattice groups Z^d with an axis subgroup


class ZdGroup(Group):
    family = "zd"

    def __init__(self, d: int, k_coords: Sequence[int] = ()):
        if d < 0 or d > 26:
            raise ConfigError(f"zd rank out of range: {d}")
        self.d = d
        self.k_coords = tuple(sorted(set(k_coords)))
        if any(c < 0 or c >= d for c in self.k_coords):
            raise ConfigError(f"k_coords {k_coords} out of range for zd({d})")
        names = tuple(string.ascii_lowercase[:d])
        super().__init__(names, tuple(c + 1 for c in self.k_coords))

    def _identity_payload(self):
        return (0,) * self.d

    def _gen_payload(self, index: int):
        return tuple(1 if i == index - 1 else 0 for i in range(self.d))

    def _mul_payload(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def _inv_payload(self, a):
        return tuple(-x for x in a)

    def word_of(self, a):
        out = []
        for i, c in enumerate(a.payload):
            letter = (i + 1) if c > 0 else -(i + 1)
            out.extend([letter] * abs(c))
        return tuple(out)

    def is_in_k(self, a):
        kset = set(self.k_coords)
        return all(c == 0 for i, c in enumerate(a.payload) if i not in kset)

    def coset_rep_element(self, a):
        kset = set(self.k_coords)
        return GroupElement(
            self, tuple(0 if i in kset else c for i, c in enumerate(a.payload))
        )

    def k_exponents(self, a):
        return tuple(a.payload[c] for c in self.k_coords)

    def witness_elements(self, letter):
        # K is normal, so Ks = sK; for s in T even F = {e} works.
        if letter in self.t_letters:
            return (self.identity(),)
        return (self.letter_element(letter),)

    def relator_words(self):
        rels = []
        for i in range(1, self.d + 1):
            for j in range(i + 1, self.d + 1):
                rels.append((i, j, -i, -j))
        return tuple(rels)

    def quotient_by_k(self):
        return ZdGroup(self.d - len(self.k_coords), ())


# ---------------------------------------------------------------------------
# Finite products of cyclic groups (used as cocycle targets, e.g. Z/2)


class ZmodGroup(Group):
    family = "zmod"

    def __init__(self, mods: Sequence[int]):
        self.mods = tuple(int(m) for m in mods)
        if any(m < 1 for m in self.mods) or len(self.mods) > 26:
            raise ConfigError(f"bad moduli {mods}")
        super().__init__(tuple(string.ascii_lowercase[: len(self.mods)]), ())

    def _identity_payload(self):
        return (0,) * len(self.mods)

    def _gen_payload(self, index: int):
        return tuple(
            1 % self.mods[i] if i == index - 1 else 0
            for i in range(len(self.mods))
        )

    def _mul_payload(self, a, b):
        return tuple((x + y) % m for x, y, m in zip(a, b, self.mods))

    def _inv_payload(self, a):
        return tuple((-x) % m for x, m in zip(a, self.mods))

    def word_of(self, a):
        out = []
        for i, c in enumerate(a.payload):
            out.extend([i + 1] * c)
        return tuple(out)

    def is_in_k(self, a):
        return a.is_identity()

    def coset_rep_element(self, a):
        return a

    def k_exponents(self, a):
        return ()

    def witness_elements(self, letter):
        return (self.letter_element(letter),)

    def relator_words(self):
        rels = [tuple([i + 1] * m) for i, m in enumerate(self.mods) if m > 1]
        for i in range(1, len(self.mods) + 1):
            for j in range(i + 1, len(self.mods) + 1):
                rels.append((i, j, -i, -j))
        return tuple(rels)

    def quotient_by_k(self):
        return self


# ---------------------------------------------------------------------------
# Free groups (trivial K)


class FreeGroup(Group):
    family = "free"

    def __init__(self, rank: int):
        if rank < 1 or rank > 26:
            raise ConfigError(f"free rank out of range: {rank}")
        self.rank = rank
        super().__init__(tuple(string.ascii_lowercase[:rank]), ())

    def _identity_payload(self):
        return ()

    def _gen_payload(self, index: int):
        return (index,)

    def _mul_payload(self, a, b):
        out = list(a)
        for letter in b:
            if out and out[-1] == -letter:
                out.pop()
            else:
                out.append(letter)
        return tuple(out)

    def _inv_payload(self, a):
        return tuple(-l for l in reversed(a))

    def word_of(self, a):
        return a.payload

    def is_in_k(self, a):
        return a.payload == ()

    def coset_rep_element(self, a):
        return a

    def k_exponents(self, a):
        return ()

    def witness_elements(self, letter):
        return (self.letter_element(letter),)

    def relator_words(self):
        return ()

    def quotient_by_k(self):
        return self


# ---------------------------------------------------------------------------
# Baumslag-Solitar groups BS(m, n) = <x, t | t^-1 x^m t = x^n>, K = <x>


class BsGroup(Group):
    """Britton normal form with excess x-powers pushed to the right.

    Payload: ``(pairs, tail)`` encoding x^p1 t^e1 x^p2 t^e2 ... x^pk t^ek x^tail
    where each pair is (p_i, e_i), p_i lies in [0, m) before t and [0, n)
    before t^-1, there is no subword t^e x^0 t^-e, and the trailing exponent
    is unconstrained.  Right multiplication by x only shifts the tail, so a
    coset gK is canonicalised by zeroing it.
    """

    family = "bs"

    def __init__(self, m: int, n: int):
        if m < 1 or n < 1:
            raise ConfigError(f"bs parameters must be positive, got ({m}, {n})")
        self.m = m
        self.n = n
        super().__init__(("x", "t"), (1,))

    def _identity_payload(self):
        return ((), 0)

    def _gen_payload(self, index: int):
        if index == 1:
            return ((), 1)
        return (((0, +1),), 0)

    def _append_t(self, pairs: list, tail: int, eps: int) -> int:
        """Append t^eps to x^tail, rewriting x-excess through the relation."""
        mod, carry = (self.m, self.n) if eps > 0 else (self.n, self.m)
        q, s = divmod(tail, mod)
        if s == 0 and pairs and pairs[-1][1] == -eps:
            pre, _ = pairs.pop()
            return pre + carry * q
        pairs.append((s, eps))
        return carry * q

    def _mul_payload(self, a, b):
        pairs = list(a[0])
        tail = a[1]
        for pre, eps in b[0]:
            tail += pre
            tail = self._append_t(pairs, tail, eps)
        return (tuple(pairs), tail + b[1])

    def _inv_payload(self, a):
        pairs: list = []
        tail = -a[1]
        for pre, eps in reversed(a[0]):
            tail = self._append_t(pairs, tail, -eps)
            tail += -pre
        return (tuple(pairs), tail)

    def word_of(self, a):
        out = []
        for pre, eps in a.payload[0]:
            out.extend([1] * pre)
            out.append(2 if eps > 0 else -2)
        tail = a.payload[1]
        out.extend([1 if tail > 0 else -1] * abs(tail))
        return tuple(out)

    def is_in_k(self, a):
        return a.payload[0] == ()

    def coset_rep_element(self, a):
        return GroupElement(self, (a.payload[0], 0))

    def k_exponents(self, a):
        if a.payload[0] != ():
            raise InternalError("k_exponents called on an element outside <x>")
        return (a.payload[1],)

    def witness_elements(self, letter):
        if abs(letter) == 1:
            return (self.identity(),)
        count = self.m if letter > 0 else self.n
        x = self.letter_element(1)
        t = self.letter_element(letter)
        out = []
        acc = self.identity()
        for _ in range(count):
            out.append(self.multiply(acc, t))
            acc = self.multiply(acc, x)
        return tuple(out)

    def relator_words(self):
        return ((-2,) + (1,) * self.m + (2,) + (-1,) * self.n,)


# ---------------------------------------------------------------------------
# Direct products


class ProductGroup(Group):
    family = "direct_product"

    def __init__(self, left: Group, right: Group):
        self.left = left
        self.right = right
        names = tuple(n + "1" for n in left.gen_names) + tuple(
            n + "2" for n in right.gen_names
        )
        offset = len(left.gen_names)
        k = tuple(left.k_primaries) + tuple(i + offset for i in right.k_primaries)
        self._offset = offset
        super().__init__(names, k)

    def _split(self, letter: Letter):
        idx = abs(letter)
        if idx <= self._offset:
            return (self.left, letter)
        return (self.right, (idx - self._offset) * (1 if letter > 0 else -1))

    def _identity_payload(self):
        return (self.left.identity(), self.right.identity())

    def _gen_payload(self, index: int):
        if index <= self._offset:
            return (self.left.letter_element(index), self.right.identity())
        return (self.left.identity(), self.right.letter_element(index - self._offset))

    def _mul_payload(self, a, b):
        return (self.left.multiply(a[0], b[0]), self.right.multiply(a[1], b[1]))

    def _inv_payload(self, a):
        return (self.left.invert(a[0]), self.right.invert(a[1]))

    def word_of(self, a):
        lw = a.payload[0].word
        rw = a.payload[1].word
        shift = self._offset
        return lw + tuple((abs(l) + shift) * (1 if l > 0 else -1) for l in rw)

    def is_in_k(self, a):
        return self.left.is_in_k(a.payload[0]) and self.right.is_in_k(a.payload[1])

    def coset_rep_element(self, a):
        return GroupElement(
            self,
            (
                self.left.coset_rep_element(a.payload[0]),
                self.right.coset_rep_element(a.payload[1]),
            ),
        )

    def k_exponents(self, a):
        return self.left.k_exponents(a.payload[0]) + self.right.k_exponents(
            a.payload[1]
        )

    def witness_elements(self, letter):
        side, inner = self._split(letter)
        if side is self.left:
            return tuple(
                GroupElement(self, (f, self.right.identity()))
                for f in self.left.witness_elements(inner)
            )
        return tuple(
            GroupElement(self, (self.left.identity(), f))
            for f in self.right.witness_elements(inner)
        )

    def relator_words(self):
        shift = self._offset
        rels = list(self.left.relator_words())
        for w in self.right.relator_words():
            rels.append(tuple((abs(l) + shift) * (1 if l > 0 else -1) for l in w))
        for i in range(1, shift + 1):
            for j in range(shift + 1, len(self.gen_names) + 1):
                rels.append((i, j, -i, -j))
        return tuple(rels)

    def quotient_by_k(self):
        return ProductGroup(self.left.quotient_by_k(), self.right.quotient_by_k())


# ---------------------------------------------------------------------------
# Module-level operations


def mul(a: GroupElement, b: GroupElement) -> GroupElement:
    return a.group.multiply(a, b)


def inv(a: GroupElement) -> GroupElement:
    return a.group.invert(a)


def in_subgroup(a: GroupElement) -> bool:
    return a.group.is_in_k(a)


def coset_of(a: GroupElement) -> CosetId:
    """Canonical coset aK; equal cosets yield equal CosetIds."""
    return CosetId(a.group.coset_rep_element(a))


def coset_cocycle(g: GroupElement, c: CosetId) -> GroupElement:
    """The K-valued correction rep(g c)^-1 * g * rep(c).

    Raises InternalError when the result escapes K, which signals a broken
    coset canonicalisation rather than bad input.
    """
    group = g.group
    moved = group.multiply(g, c.rep)
    target_rep = group.coset_rep_element(moved)
    out = group.multiply(group.invert(target_rep), moved)
    if not group.is_in_k(out):
        raise InternalError(
            f"coset correction {out!r} is outside K; coset_rep is inconsistent"
        )
    return out


def witness(group: Group, letter: Letter) -> Witness:
    if letter not in group.s_letters:
        raise ConfigError(f"letter {letter} is not a generator of {group!r}")
    return Witness(letter, group.witness_elements(letter))


def k_ball(group: Group, radius: int) -> list[GroupElement]:
    """Elements of K with T-word length at most ``radius``, shortlex order."""
    return ball_elements(group, radius, group.t_letters)


def ball_elements(
    group: Group, radius: int, letters: Sequence[Letter] | None = None
) -> list[GroupElement]:
    """Shortlex enumeration of the word ball of the given radius."""
    if letters is None:
        letters = group.s_letters
    gens = [group.letter_element(l) for l in letters]
    start = group.identity()
    out = [start]
    dist = {start: 0}
    head = 0
    while head < len(out):
        g = out[head]
        head += 1
        d = dist[g]
        if d == radius:
            continue
        for ge in gens:
            h = group.multiply(g, ge)
            if h not in dist:
                dist[h] = d + 1
                out.append(h)
    return out


def verify_witness(group: Group, w: Witness, radius: int) -> bool:
    """Check K*s <= F_s*K over the K-ball of the given radius."""
    s_elem = group.letter_element(w.letter)
    inverses = [group.invert(f) for f in w.elements]
    for k in k_ball(group, radius):
        ks = group.multiply(k, s_elem)
        if not any(group.is_in_k(group.multiply(fi, ks)) for fi in inverses):
            return False
    return True


def find_separated_element(
    group: Group,
    left: Sequence[GroupElement],
    right: Sequence[GroupElement],
    radius: int,
) -> GroupElement | None:
    """First nonidentity g in the word ball with g outside F * K * F'^-1.

    Returns None when the ball is exhausted; that signals the radius was too
    small, not that no such element exists.
    """
    left_inv = [group.invert(f) for f in left]
    for g in ball_elements(group, radius):
        if g.is_identity():
            continue
        hit = False
        for fi in left_inv:
            fig = group.multiply(fi, g)
            for f2 in right:
                if group.is_in_k(group.multiply(fig, f2)):
                    hit = True
                    break
            if hit:
                break
        if not hit:
            return g
    return None
