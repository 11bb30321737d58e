"""Independent brute-force oracles used to freeze expected test values.

Nothing here imports graph or group machinery from the package; the whole
point is that these computations share no code path with what they check.
"""

from fractions import Fraction
from itertools import product


# -- lattice model (grids Z^k under the l1 metric, unit-step edges) ----------


def lattice_ball(dim: int, radius: int) -> list[tuple]:
    pts = []
    for p in product(range(-radius, radius + 1), repeat=dim):
        if sum(abs(c) for c in p) <= radius:
            pts.append(p)
    return pts


def lattice_neighbors(p: tuple) -> list[tuple]:
    out = []
    for i in range(len(p)):
        for step in (1, -1):
            q = list(p)
            q[i] += step
            out.append(tuple(q))
    return out


def lattice_components(points: list[tuple]) -> list[set]:
    keep = set(points)
    seen: set = set()
    comps = []
    for start in points:
        if start in seen:
            continue
        comp = {start}
        seen.add(start)
        queue = [start]
        while queue:
            v = queue.pop()
            for w in lattice_neighbors(v):
                if w in keep and w not in seen:
                    seen.add(w)
                    comp.add(w)
                    queue.append(w)
        comps.append(comp)
    return comps


def lattice_shell_components(dim: int, inner: int, outer: int):
    """Components of {inner <= |v|_1 <= outer}, with sphere-touching flags."""
    shell = [
        p
        for p in lattice_ball(dim, outer)
        if inner <= sum(abs(c) for c in p) <= outer
    ]
    comps = lattice_components(shell)
    flagged = []
    for comp in comps:
        touches = any(sum(abs(c) for c in p) == outer for p in comp)
        flagged.append((comp, touches))
    return flagged


def lattice_capacity(dim: int, r: int, probe: int) -> int:
    """Flood-fill version of the capacity value at one probe radius."""
    comps = lattice_shell_components(dim, r + 1, probe)
    touching = [c for c, t in comps if t]
    assert len(touching) == 1, f"not one-ended at probe {probe}"
    unbounded = touching[0]
    return max(
        sum(abs(c) for c in p)
        for p in lattice_ball(dim, probe)
        if p not in unbounded
    )


# -- free group model (reduced words as strings over a, A, b, B, ...) --------

_LETTERS = "aAbBcCdD"


def _free_inverse(ch: str) -> str:
    return ch.lower() if ch.isupper() else ch.upper()


def free_words_of_length(rank: int, length: int) -> list[str]:
    alphabet = _LETTERS[: 2 * rank]
    words = [""]
    for _ in range(length):
        nxt = []
        for w in words:
            for ch in alphabet:
                if w and w[-1] == _free_inverse(ch):
                    continue
                nxt.append(w + ch)
        words = nxt
    return words


def free_sphere_size(rank: int, length: int) -> int:
    return len(free_words_of_length(rank, length))


# -- affine model of bs(1, n) -------------------------------------------------


def bs1n_affine(word, n: int) -> tuple:
    """x -> z+1, t -> z/n; the image determines the element for m = 1."""
    scale, shift = Fraction(1), Fraction(0)
    for letter in word:
        if abs(letter) == 1:
            gs, gb = Fraction(1), Fraction(1 if letter > 0 else -1)
        else:
            gs, gb = (Fraction(1, n), Fraction(0)) if letter > 0 else (
                Fraction(n),
                Fraction(0),
            )
        scale, shift = scale * gs, scale * gb + shift
    return (scale, shift)
