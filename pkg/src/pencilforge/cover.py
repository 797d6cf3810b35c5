"""Symbolic double-branched-cover calculus.

The base of each cover is a framed-link ledger (handles, framings, linking
matrix); the branch surface is tracked as a parametrized ribbon family
F(R, S, T) plus cap disks, together with its homology class in the base.
Handle slides and blow-downs act on the ledger by exact congruence
transformations; the ribbon rewrites conserve the Euler characteristic of
the branch surface and both cover invariants, which is asserted on every
application.

Move scripts are line oriented:

    SLIDE h over s +      # slide handle h over s (sign +-)
    BLOWDOWN h            # blow down a -1-framed meridional handle
    LEMMA41               # F(R,S,T) -> F(R-4, S+1, T+4), R >= 8
    DIVE                  # 2-handle band dive: S -> S+1
    ROUND n               # n disk-cancelling rounds: R-n, T+n, bands-n
    CANCEL n              # cancel n trivial bands against cap disks
    ASSERT key=value ...  # exact checks: e, sig, chi, R, S, T, caps,
                          #               framing:h, det
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Iterable, Optional

from .intmat import Matrix, determinant, symmetric_signature


@dataclass(frozen=True)
class BaseLedger:
    """Framed-link description of the base 4-manifold (no 1- or 3-handles)."""

    ids: tuple[str, ...]
    linking: tuple[tuple[int, ...], ...]  # symmetric; diagonal = framings
    meridians: frozenset[str] = frozenset()
    blown_up: int = 0

    def __post_init__(self):
        n = len(self.ids)
        if len(self.linking) != n or any(len(r) != n for r in self.linking):
            raise ValueError("linking matrix shape mismatch")
        for i in range(n):
            for j in range(n):
                if self.linking[i][j] != self.linking[j][i]:
                    raise ValueError("linking matrix must be symmetric")

    def index(self, h: str) -> int:
        try:
            return self.ids.index(h)
        except ValueError:
            raise KeyError(f"unknown handle {h!r}") from None

    def framing(self, h: str) -> int:
        i = self.index(h)
        return self.linking[i][i]

    def matrix(self) -> Matrix:
        return [list(r) for r in self.linking]

    def euler(self) -> int:
        # 0-handle + 2-handles + 4-handle
        return 2 + len(self.ids)

    def sig(self) -> int:
        if not self.ids:
            return 0
        m = [[Fraction(x) for x in row] for row in self.linking]
        return symmetric_signature(m)

    def det(self) -> int:
        if not self.ids:
            return 1
        return determinant(self.matrix())


def ledger(handles: Iterable[tuple[str, int]],
           links: Iterable[tuple[str, str, int]] = (),
           meridians: Iterable[str] = ()) -> BaseLedger:
    hs = list(handles)
    ids = tuple(h for h, _ in hs)
    n = len(ids)
    m = [[0] * n for _ in range(n)]
    for k, (_, fr) in enumerate(hs):
        m[k][k] = fr
    idx = {h: k for k, h in enumerate(ids)}
    for a, b, v in links:
        m[idx[a]][idx[b]] = v
        m[idx[b]][idx[a]] = v
    return BaseLedger(ids, tuple(tuple(r) for r in m), frozenset(meridians))


def handle_slide(L: BaseLedger, h: str, over: str, sign: int = 1) -> BaseLedger:
    """Slide h over `over` (class of h becomes h +- over).

    Congruence by an elementary matrix, so determinant and signature of the
    linking matrix are untouched.
    """
    if sign not in (1, -1):
        raise ValueError("sign must be +-1")
    i, j = L.index(h), L.index(over)
    if i == j:
        raise ValueError("cannot slide a handle over itself")
    m = L.matrix()
    n = len(m)
    # row/col operation: row_i += sign*row_j, col_i += sign*col_j
    for c in range(n):
        m[i][c] += sign * m[j][c]
    for r in range(n):
        m[r][i] += sign * m[r][j]
    return replace(L, linking=tuple(tuple(r) for r in m))


def blow_down(L: BaseLedger, h: str) -> BaseLedger:
    """Blow down a -1-framed meridional handle.

    Every other handle k picks up the full-twist correction
    framing(k) += linking(k, h)^2; the determinant changes by a factor -1
    and the signature by +1.
    """
    i = L.index(h)
    if L.linking[i][i] != -1:
        raise ValueError(f"handle {h} has framing {L.linking[i][i]}, not -1")
    if h not in L.meridians:
        raise ValueError(f"handle {h} is not flagged meridional/unknotted")
    m = L.matrix()
    n = len(m)
    keep = [k for k in range(n) if k != i]
    out = [[m[a][b] + m[a][i] * m[b][i] for b in keep] for a in keep]
    ids = tuple(L.ids[k] for k in keep)
    return BaseLedger(ids, tuple(tuple(r) for r in out),
                      L.meridians - {h}, L.blown_up + 1)


@dataclass(frozen=True)
class RibbonFamilyState:
    """The ribbon family F(R, S, T) with its cap disks.

    R horizontal disks; the framed attaching circle links the disks S times
    positively in the marked region; T trivial bands; band_count is the
    total number of bands; caps are the disks in the 4-handle that close
    the ribbon surface up.
    """

    R: int
    S: int
    T: int
    band_count: int
    caps: int

    def chi(self) -> int:
        return self.R + self.caps - self.band_count


def lemma_rewrite(state: RibbonFamilyState) -> RibbonFamilyState:
    """F(R, S, T) -> F(R-4, S+1, T+4) for R >= 8.

    Four disk-cancelling rounds: each retires one horizontal disk with its
    attached band and reclassifies a slid band as trivial, so chi(F) is
    conserved; the linking count S rises by one from the 2-handle dive.
    """
    if state.R < 8:
        raise ValueError("lemma rewrite needs R >= 8")
    out = replace(state, R=state.R - 4, S=state.S + 1, T=state.T + 4,
                  band_count=state.band_count - 4)
    if out.chi() != state.chi():
        raise AssertionError("chi(F) not conserved by lemma rewrite")
    return out


def dive(state: RibbonFamilyState) -> RibbonFamilyState:
    """A bare 2-handle band dive: raises the linking count, nothing else."""
    return replace(state, S=state.S + 1)


def rounds(state: RibbonFamilyState, n: int) -> RibbonFamilyState:
    """n disk-cancelling rounds outside the lemma packaging: R-n, T+n, one
    band retired per round."""
    if state.R - n < 0 or n < 0:
        raise ValueError("not enough disks")
    out = replace(state, R=state.R - n, T=state.T + n,
                  band_count=state.band_count - n)
    if out.chi() != state.chi():
        raise AssertionError("chi(F) not conserved by rounds")
    return out


def cancel_trivial_bands(state: RibbonFamilyState, count: int) -> RibbonFamilyState:
    """Cancel `count` trivial bands against cap disks; chi(F) is unchanged."""
    if count < 0 or count > min(state.T, state.caps):
        raise ValueError("insufficient trivial bands or caps")
    return replace(state, T=state.T - count, caps=state.caps - count,
                   band_count=state.band_count - count)


@dataclass(frozen=True)
class BranchClass:
    """Class of the closed branch surface in H2 of the base, written in the
    basis (section s with s^2 = n, fiber f)."""

    a: int
    b: int
    n: int

    def __post_init__(self):
        if self.a % 2 or self.b % 2:
            raise ValueError("branch class must be divisible by two")

    def square(self) -> int:
        return self.a * self.a * self.n + 2 * self.a * self.b


def cover_invariants(L: BaseLedger, state: RibbonFamilyState,
                     cls: BranchClass) -> tuple[int, int]:
    """(e, sigma) of the double cover of the ledger base branched over the
    closed surface: e = 2 e(B) - chi(F), sigma = 2 sigma(B) - [F]^2 / 2."""
    fsq = cls.square()
    if fsq % 2:
        raise ValueError("[F]^2 must be even")
    return 2 * L.euler() - state.chi(), 2 * L.sig() - fsq // 2


# --- move scripts -----------------------------------------------------------


@dataclass
class ReplayState:
    ledger: BaseLedger
    ribbon: RibbonFamilyState
    cls: Optional[BranchClass] = None
    log: list[str] = field(default_factory=list)


class ScriptError(ValueError):
    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


def replay(script: str, state: ReplayState) -> ReplayState:
    """Replay a move script against a starting state, checking every ASSERT."""
    for line_no, raw in enumerate(script.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        toks = line.split()
        op = toks[0].upper()
        try:
            if op == "SLIDE":
                # SLIDE h over s + | SLIDE h over s -
                if len(toks) != 5 or toks[2].lower() != "over":
                    raise ValueError("usage: SLIDE h over s +|-")
                sign = {"+": 1, "-": -1}[toks[4]]
                state.ledger = handle_slide(state.ledger, toks[1], toks[3], sign)
            elif op == "BLOWDOWN":
                state.ledger = blow_down(state.ledger, toks[1])
            elif op == "LEMMA41":
                state.ribbon = lemma_rewrite(state.ribbon)
            elif op == "DIVE":
                state.ribbon = dive(state.ribbon)
            elif op == "ROUND":
                state.ribbon = rounds(state.ribbon, int(toks[1]))
            elif op == "CANCEL":
                state.ribbon = cancel_trivial_bands(state.ribbon, int(toks[1]))
            elif op == "ASSERT":
                _run_asserts(state, toks[1:])
            else:
                raise ValueError(f"unknown op {op}")
        except ScriptError:
            raise
        except Exception as exc:
            raise ScriptError(line_no, str(exc)) from exc
        state.log.append(line)
    return state


def _run_asserts(state: ReplayState, clauses: list[str]) -> None:
    for clause in clauses:
        key, _, val = clause.partition("=")
        want = int(val)
        if key == "chi":
            got = state.ribbon.chi()
        elif key == "R":
            got = state.ribbon.R
        elif key == "S":
            got = state.ribbon.S
        elif key == "T":
            got = state.ribbon.T
        elif key == "caps":
            got = state.ribbon.caps
        elif key == "bands":
            got = state.ribbon.band_count
        elif key == "det":
            got = state.ledger.det()
        elif key in ("e", "sig"):
            if state.cls is None:
                raise ValueError("no branch class on this state")
            e, s = cover_invariants(state.ledger, state.ribbon, state.cls)
            got = e if key == "e" else s
        elif key.startswith("framing:"):
            got = state.ledger.framing(key.split(":", 1)[1])
        else:
            raise ValueError(f"unknown assert key {key}")
        if got != want:
            raise ValueError(f"ASSERT {key}={want} failed (got {got})")
