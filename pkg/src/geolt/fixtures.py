"""Bundled groups, with the pipeline budgets that are known to work.

Every automaton the package reproduces starts from one of these fixtures,
so the CLI and the test corpus drive exactly the same registry.  A fixture
couples a group constructor with a PipelineConfig whose TB seeds record
the (iterate, trust bound) pairs that produced a verified automaton; the
seeds are a fast path, not an assumption — the pipeline still verifies
every candidate from scratch on every run.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .alphabet import Word
from .errors import SpecError
from .geodesy import PipelineConfig
from .groups import (GroupSpec, coxeter, dihedral_artin, direct_product,
                     free_group, free_product, lattice, wreath_z_c2)

# Rank-4 Coxeter diagram: a square of order-3 edges with order-2 diagonals.
COXETER_MATRIX = ((1, 3, 2, 3),
                  (3, 1, 3, 2),
                  (2, 3, 1, 3),
                  (3, 2, 3, 1))

# Plane-with-swap letters: a, b translate, t flips the coordinates, and
# u = at, v = bt mix the two; the table is closed under inversion.
WREATH_LETTERS = (
    ("a", ((1, 0), 0)),
    ("A", ((-1, 0), 0)),
    ("b", ((0, 1), 0)),
    ("B", ((0, -1), 0)),
    ("t", ((0, 0), 1)),
    ("u", ((1, 0), 1)),
    ("U", ((0, -1), 1)),
    ("v", ((0, 1), 1)),
    ("V", ((-1, 0), 1)),
)


def _nine_letter_plane() -> GroupSpec:
    return direct_product(lattice(1, ("a", "A")), lattice(1, ("b", "B")))


def _plane_star_line() -> GroupSpec:
    return free_product(_nine_letter_plane(), lattice(1, ("c", "C")))


@dataclass(frozen=True)
class Fixture:
    """A named group plus the pipeline budgets tuned for it."""

    name: str
    title: str
    build: Callable[[], GroupSpec]
    config: PipelineConfig = field(default_factory=PipelineConfig)

    def group(self) -> GroupSpec:
        return self.build()


_ALL = (
    Fixture("free2", "free group of rank 2",
            lambda: free_group(("a", "A"), ("b", "B")),
            PipelineConfig(max_iter=2)),
    Fixture("z1", "infinite cyclic group, unit generators",
            lambda: lattice(1),
            PipelineConfig(max_iter=2)),
    Fixture("z2", "free abelian group of rank 2, unit generators",
            lambda: lattice(2),
            PipelineConfig(max_iter=2, tb_seeds=((2, 4),))),
    Fixture("z3", "free abelian group of rank 3, unit generators",
            lambda: lattice(3),
            PipelineConfig(max_iter=2, tb_seeds=((2, 4),))),
    Fixture("z2_nine", "rank-2 lattice over the nine pair letters",
            _nine_letter_plane,
            PipelineConfig(max_iter=2, tb_seeds=((2, 4),))),
    Fixture("artin3", "dihedral Artin group, aba = bab",
            lambda: dihedral_artin(3),
            PipelineConfig(max_iter=3, tb_seeds=((2, 7),),
                           crosscheck_len=12)),
    Fixture("artin4", "dihedral Artin group, abab = baba",
            lambda: dihedral_artin(4),
            PipelineConfig(max_iter=3, tb_seeds=((2, 10),),
                           crosscheck_len=12)),
    Fixture("artin5", "dihedral Artin group, ababa = babab",
            lambda: dihedral_artin(5),
            PipelineConfig(max_iter=3, tb_seeds=((3, 10),),
                           crosscheck_len=12)),
    Fixture("wreath", "plane extended by the coordinate swap, five generators",
            lambda: wreath_z_c2(WREATH_LETTERS),
            PipelineConfig(max_iter=3, tb_seeds=((3, 4),))),
    Fixture("coxeter4", "rank-4 Coxeter group of the square diagram",
            lambda: coxeter(COXETER_MATRIX, ("a", "b", "c", "d")),
            PipelineConfig(max_iter=3, tb_seeds=((3, 10),))),
    Fixture("plane_star_line", "free product of the nine-letter plane and a line",
            _plane_star_line),
)

FIXTURES: dict[str, Fixture] = {f.name: f for f in _ALL}


def fixture(name: str) -> Fixture:
    try:
        return FIXTURES[name]
    except KeyError:
        known = ", ".join(sorted(FIXTURES))
        raise SpecError(f"unknown fixture {name!r}; known: {known}") from None


def fixture_names() -> tuple[str, ...]:
    return tuple(f.name for f in _ALL)


def lookalike_pair(spec: GroupSpec, n: int) -> tuple[Word, Word]:
    """Words u, v over the plane_star_line fixture with u ~_n v where only
    u is geodesic.

    Both words spend the same letter multiset block by block; they differ
    only in where the c-run sits.  In u each maximal plane block is
    geodesic; in v the four plane powers fuse into one block that wastes n
    letters, yet every length-n window looks the same as one of u's.
    """
    if n < 1:
        raise SpecError("the block length n must be at least 1")
    a = spec.alphabet
    try:
        up_b, diag, anti, c = (a.index(s) for s in ("1|b", "a|b", "a|B", "c"))
    except (KeyError, ValueError):
        raise SpecError("lookalike words need the plane_star_line alphabet")
    u = ((up_b,) * n + (diag,) * n + (c,) * n
         + (diag,) * n + (anti,) * n + (diag,) * n)
    v = ((up_b,) * n + (diag,) * n + (anti,) * n
         + (diag,) * n + (c,) * n + (diag,) * n)
    return u, v
