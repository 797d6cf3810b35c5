"""Exact word problem in the braid group of the marked disk.

Braid words act on a free group of rank n (one generator per marked
point) through the standard Artin automorphisms.  The action is faithful,
so two words are equal in the braid group exactly when they act the same
way on every free generator; that single fact powers every check in this
module.

Composition convention, used across the whole package: words act left to
right, i.e. the first letter acts first.  Acting by the concatenation
u + v therefore means acting by u and then by v.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Optional

Letter = tuple[int, int]  # (generator index, sign)

NOT_A_FULL_TWIST = None
NOT_A_POINT_PUSH = None


@dataclass(frozen=True)
class FreeWord:
    """Freely reduced word in a free group of the given rank.

    Letters are (generator index in 1..rank, sign +-1).
    """

    rank: int
    letters: tuple[Letter, ...] = ()

    def __post_init__(self):
        for idx, sign in self.letters:
            if not 1 <= idx <= self.rank:
                raise ValueError(f"free letter {idx} out of range 1..{self.rank}")
            if sign not in (1, -1):
                raise ValueError("sign must be +-1")
        for (i, s), (j, t) in zip(self.letters, self.letters[1:]):
            if i == j and s == -t:
                raise ValueError("word is not freely reduced")

    @staticmethod
    def reduced(rank: int, letters: Iterable[Letter]) -> "FreeWord":
        stack: list[Letter] = []
        for idx, sign in letters:
            if stack and stack[-1][0] == idx and stack[-1][1] == -sign:
                stack.pop()
            else:
                stack.append((idx, sign))
        return FreeWord(rank, tuple(stack))

    @staticmethod
    def generator(rank: int, idx: int, sign: int = 1) -> "FreeWord":
        return FreeWord(rank, ((idx, sign),))

    def inverse(self) -> "FreeWord":
        return FreeWord(self.rank, tuple((i, -s) for i, s in reversed(self.letters)))

    def __mul__(self, other: "FreeWord") -> "FreeWord":
        if self.rank != other.rank:
            raise ValueError("rank mismatch")
        return FreeWord.reduced(self.rank, self.letters + other.letters)

    def is_identity(self) -> bool:
        return not self.letters

    def support(self) -> set[int]:
        return {i for i, _ in self.letters}


@dataclass(frozen=True)
class BraidWord:
    """Word in the Artin generators of the braid group on n strands."""

    strand_count: int
    letters: tuple[Letter, ...] = ()

    def __post_init__(self):
        if self.strand_count < 1:
            raise ValueError("need at least one strand")
        for idx, sign in self.letters:
            if not 1 <= idx <= self.strand_count - 1:
                raise ValueError(
                    f"generator {idx} out of range for {self.strand_count} strands")
            if sign not in (1, -1):
                raise ValueError("sign must be +-1")

    def __mul__(self, other: "BraidWord") -> "BraidWord":
        if self.strand_count != other.strand_count:
            raise ValueError("strand count mismatch")
        return BraidWord(self.strand_count, self.letters + other.letters)

    def __pow__(self, k: int) -> "BraidWord":
        if k < 0:
            return self.inverse() ** (-k)
        return BraidWord(self.strand_count, self.letters * k)

    def inverse(self) -> "BraidWord":
        return BraidWord(self.strand_count, tuple((i, -s) for i, s in reversed(self.letters)))

    def exponent_sum(self) -> int:
        return sum(s for _, s in self.letters)

    def permutation(self) -> list[int]:
        """Induced permutation of strands, as the image list of 1..n (0-based)."""
        perm = list(range(self.strand_count))
        for idx, _ in self.letters:
            perm[idx - 1], perm[idx] = perm[idx], perm[idx - 1]
        return perm


def sigma(n: int, idx: int, sign: int = 1) -> BraidWord:
    return BraidWord(n, ((idx, sign),))


def identity_braid(n: int) -> BraidWord:
    return BraidWord(n, ())


def half_twist(n: int) -> BraidWord:
    """The Garside half twist: (s1)(s2 s1)(s3 s2 s1)...(s_{n-1} ... s1)."""
    letters: list[Letter] = []
    for k in range(1, n):
        letters.extend((j, 1) for j in range(k, 0, -1))
    return BraidWord(n, tuple(letters))


def full_twist(n: int) -> BraidWord:
    hw = half_twist(n)
    return hw * hw


def band_generator(n: int, p: int, q: int) -> BraidWord:
    """Positive half twist about an arc from marked point p to q (p < q).

    For q = p + 1 this is the Artin generator s_p; in general it is the
    standard band conjugate (s_{q-1} ... s_{p+1}) s_p (s_{p+1} ... s_{q-1})^-1.
    """
    if not 1 <= p < q <= n:
        raise ValueError("need 1 <= p < q <= n")
    pre = [(j, 1) for j in range(q - 1, p, -1)]
    post = [(j, -1) for j in range(p + 1, q)]
    return BraidWord(n, tuple(pre + [(p, 1)] + post))


def _apply_letter(idx: int, sign: int, word: list[Letter]) -> list[Letter]:
    """Image of a free word under one Artin generator, stack-reduced.

    sigma_i: x_i -> x_i x_{i+1} x_i^-1,  x_{i+1} -> x_i.
    sigma_i^-1: x_i -> x_{i+1},  x_{i+1} -> x_{i+1}^-1 x_i x_{i+1}.
    """
    out: list[Letter] = []

    def push(j: int, t: int) -> None:
        if out and out[-1][0] == j and out[-1][1] == -t:
            out.pop()
        else:
            out.append((j, t))

    a, b = idx, idx + 1
    for j, t in word:
        if sign == 1:
            if j == a:
                if t == 1:
                    push(a, 1); push(b, 1); push(a, -1)
                else:
                    push(a, 1); push(b, -1); push(a, -1)
            elif j == b:
                push(a, t)
            else:
                push(j, t)
        else:
            if j == a:
                push(b, t)
            elif j == b:
                if t == 1:
                    push(b, -1); push(a, 1); push(b, 1)
                else:
                    push(b, -1); push(a, -1); push(b, 1)
            else:
                push(j, t)
    return out


def artin_act(w: BraidWord, x: FreeWord) -> FreeWord:
    """Image of the free word x under the braid w (letters act left to right)."""
    if x.rank != w.strand_count:
        raise ValueError(
            f"free word rank {x.rank} does not match {w.strand_count} strands")
    cur = list(x.letters)
    for idx, sign in w.letters:
        cur = _apply_letter(idx, sign, cur)
    return FreeWord(w.strand_count, tuple(cur))


def acts_trivially(w: BraidWord) -> bool:
    n = w.strand_count
    return all(
        artin_act(w, FreeWord.generator(n, i)).letters == ((i, 1),)
        for i in range(1, n + 1)
    )


def braid_equal(u: BraidWord, v: BraidWord) -> bool:
    if u.strand_count != v.strand_count:
        raise ValueError("strand count mismatch")
    return acts_trivially(u * v.inverse())


def full_twist_power(w: BraidWord) -> Optional[int]:
    """Return k when w equals the k-th power of the full twist, else None.

    The exponent sum filters candidates in O(|w|); the faithful action
    settles the remainder.  Negative k is allowed.
    """
    n = w.strand_count
    denom = n * (n - 1)
    e = w.exponent_sum()
    if denom == 0:
        return 0 if not w.letters else NOT_A_FULL_TWIST
    if e % denom != 0:
        return NOT_A_FULL_TWIST
    k = e // denom
    if braid_equal(w, full_twist(n) ** k):
        return k
    return NOT_A_FULL_TWIST


def _split_conjugate(rank: int, y: FreeWord, idx: int) -> Optional[FreeWord]:
    """When y is reduced of the form c x_idx c^-1, return c, else None."""
    ls = y.letters
    if len(ls) % 2 == 0:
        return None
    mid = len(ls) // 2
    if ls[mid] != (idx, 1):
        return None
    c = FreeWord(rank, ls[:mid])
    if tuple((i, -s) for i, s in reversed(c.letters)) != ls[mid + 1:]:
        return None
    return c


def _conjugator_for(rank: int, gens: list[FreeWord], images: list[FreeWord]) -> Optional[FreeWord]:
    """Find g with g gens[k] g^-1 = images[k] for all k, in a free group."""
    for k, (xk, yk) in enumerate(zip(gens, images)):
        if len(xk.letters) != 1:
            continue
        idx = xk.letters[0][0]
        c = _split_conjugate(rank, yk, idx)
        if c is None:
            return None
        # candidates g = c * x_idx^m; pin m against the other generators
        for m in range(-2 * max(len(im.letters) for im in images) - 2,
                       2 * max(len(im.letters) for im in images) + 3):
            tail = FreeWord(rank, ((idx, 1 if m > 0 else -1),) * abs(m))
            g = c * tail
            if all(g * x * g.inverse() == y for x, y in zip(gens, images)):
                return g
        return None
    return None


def _eliminate_last(rank: int, letters: tuple[Letter, ...]) -> FreeWord:
    """Rewrite a word of F_rank in F_{rank-1} via x_rank = (x_1 ... x_{rank-1})^-1."""
    out: list[Letter] = []

    def push(j: int, t: int) -> None:
        if out and out[-1][0] == j and out[-1][1] == -t:
            out.pop()
        else:
            out.append((j, t))

    for j, s in letters:
        if j != rank:
            push(j, s)
        elif s == 1:
            for i in range(rank - 1, 0, -1):
                push(i, -1)
        else:
            for i in range(1, rank):
                push(i, 1)
    return FreeWord(rank - 1, tuple(out))


def point_push_check(w: BraidWord) -> Optional[FreeWord]:
    """Detect whether w acts as conjugation x -> g x g^-1 by a single loop g.

    Two stages.  First look for an exact conjugation in the free group (the
    full twist is one, by the boundary word x_1 ... x_n).  Failing that,
    look for a conjugation modulo the boundary relation x_1 ... x_n = 1:
    braids of that kind push the reference region of the sphere around the
    loop g while fixing all marked points.  Returns the loop, or None.
    """
    n = w.strand_count
    if n == 1:
        return FreeWord(1)
    if w.permutation() != list(range(n)):
        return NOT_A_POINT_PUSH
    images = [artin_act(w, FreeWord.generator(n, i)) for i in range(1, n + 1)]
    gens = [FreeWord.generator(n, i) for i in range(1, n + 1)]
    g = _conjugator_for(n, gens, images)
    if g is not None:
        return g
    # modulo the sphere relation: eliminate x_n and work freely in F_{n-1}
    gens_e = [_eliminate_last(n, x.letters) for x in gens]
    images_e = [_eliminate_last(n, y.letters) for y in images]
    return _conjugator_for(n - 1, gens_e, images_e)


_LETTER_RE = re.compile(r"^s(\d+)(\^-1)?$")


def parse_braid(n: int, text: str) -> BraidWord:
    """Parse the text serialization `s1 s2^-1 s3 ...`."""
    letters: list[Letter] = []
    for tok in text.split():
        m = _LETTER_RE.match(tok)
        if not m:
            raise ValueError(f"bad braid letter {tok!r}")
        letters.append((int(m.group(1)), -1 if m.group(2) else 1))
    return BraidWord(n, tuple(letters))


def format_braid(w: BraidWord) -> str:
    return " ".join(f"s{i}" if s == 1 else f"s{i}^-1" for i, s in w.letters)
