"""State-merging inference over a depth-bounded equivalence (Trakhtenbrot–
Barzdin style).

Given a complete accessible DFA M' that is trusted on all words up to some
length k, two states are `k-equivalent` when they accept exactly the same
words of length at most k − d, where d is the larger of their depths
(shortest-word distances from the start).  Deeper states have seen more of
their budget spent reaching them, so they are compared over a shorter
window.  Merging the equivalence classes yields a candidate automaton that
agrees with M' on every word of length at most k − max-depth and is often
much smaller.

Merging only ever generalizes through missing information.  Were every
transition taken as hard evidence, a successful merge would be a DFA
congruence and the result could never accept a single word beyond L(M') —
useless for guessing the limit of a still-growing iteration.  Two kinds of
cell therefore carry no evidence:

  * transitions into dead states (nothing is accepted from them) are read
    as absent edges, the way trimmed word acceptors store them;
  * live states of depth >= k — the "frontier" — lie beyond the trusted
    sample, so they are never partitioned themselves.  An edge into the
    frontier is folded into whatever class the interior evidence for that
    (class, letter) cell establishes, after checking that the frontier
    state's acceptance sign matches.

The pairwise relation on interior states need not be an equivalence
relation, and even when it is, transitions need not respect it.  Rather
than guessing, `tb_merge` aborts with a typed reason the moment the
hypothesis k is unusable:

  IncomparablePair       a cell's only evidence is a frontier state, which
                          is too deep to compare (k <= d)
  NotTransitive          sigma ~ tau ~ rho but sigma !~ rho
  InconsistentTransitions equivalent states disagree about where a letter
                          leads, up to equivalence

Requiring a global equivalence is strict: mixed-depth comparisons use the
window of the deeper state, and two shallow states can agree through a
deep one's narrow window while differing through their own, which is a
NotTransitive abort at every usable k whenever the target language pairs
such residuals — no hypothesis fixes that.  `tb_restore` is the classical
alternative: it re-reads the sample as a prefix tree folded greedily in
shortlex order, identifying each node with the first compatible
representative, so no global relation is needed and a candidate always
comes out.  Both entry points reconstruct a minimal accessible automaton
exactly at k >= 2n−1; both are meant to run under an external verifier
that is the sole judge of their guesses.

Window equality is answered from Moore refinement levels: partition the
states by acceptance and refine w times, and two states land in the same
block exactly when no word of length <= w tells them apart.  The levels
cost O(n * |alphabet| * k) to build — no all-pairs table — so the merge
scales to iterates with tens of thousands of states.
"""

from __future__ import annotations

from array import array
from collections import deque
from dataclasses import dataclass
from functools import lru_cache

from .automata import Dfa, minimize
from .errors import GeoltError, SpecError


class TbAbort(GeoltError):
    """The merge cannot proceed at this k; try another hypothesis."""


class IncomparablePair(TbAbort):
    def __init__(self, sigma: int, tau: int):
        super().__init__(
            f"states {sigma} and {tau} are too deep to compare at this k")
        self.sigma = sigma
        self.tau = tau


class NotTransitive(TbAbort):
    def __init__(self, sigma: int, tau: int, rho: int):
        super().__init__(
            f"states {sigma} ~ {tau} and {tau} ~ {rho} but {sigma} !~ {rho}")
        self.sigma = sigma
        self.tau = tau
        self.rho = rho


class InconsistentTransitions(TbAbort):
    def __init__(self, sigma: int, tau: int, letter: int):
        super().__init__(
            f"equivalent states {sigma} and {tau} disagree on letter {letter}")
        self.sigma = sigma
        self.tau = tau
        self.letter = letter


def depths(m: Dfa) -> tuple[int, ...]:
    """Shortest-word distance from the start to every state."""
    n = len(m.transitions)
    dist = [-1] * n
    dist[m.start] = 0
    queue = deque([m.start])
    while queue:
        q = queue.popleft()
        for t in m.transitions[q]:
            if dist[t] < 0:
                dist[t] = dist[q] + 1
                queue.append(t)
    if min(dist) < 0:
        raise SpecError("state merging needs an accessible automaton")
    return tuple(dist)


@lru_cache(maxsize=3)
def _window_partitions(m: Dfa, kmax: int) -> tuple[array, ...]:
    """Moore levels 0..kmax: states share a block at level w exactly when
    they accept the same words of length <= w.

    Level 0 partitions by acceptance; each refinement splits blocks whose
    members step into different blocks.  Once a round stops splitting the
    partition is the Nerode congruence and all later levels repeat it.
    The small cache lets several hypotheses k reuse one ladder.
    """
    n = len(m.transitions)
    blocks = array("l", (1 if q in m.accepting else 0 for q in range(n)))
    levels = [blocks]
    count = len(set(blocks))
    for _ in range(kmax):
        prev = levels[-1]
        fresh: dict[tuple, int] = {}
        nxt = array("l", prev)
        for q in range(n):
            sig = (prev[q], *(prev[t] for t in m.transitions[q]))
            nxt[q] = fresh.setdefault(sig, len(fresh))
        if len(fresh) == count:
            levels.extend(prev for _ in range(kmax + 1 - len(levels)))
            break
        count = len(fresh)
        levels.append(nxt)
    return tuple(levels)


@dataclass(frozen=True)
class MergeInstance:
    """A DFA prepared for k-equivalence queries."""

    m: Dfa
    k: int
    depth: tuple[int, ...]
    levels: tuple[array, ...]

    @staticmethod
    def prepare(m: Dfa, k: int) -> "MergeInstance":
        if k < 1:
            raise SpecError("the trust bound k must be at least 1")
        return MergeInstance(m, k, depths(m), _window_partitions(m, k))

    def equivalent(self, sigma: int, tau: int) -> bool:
        """Do sigma and tau accept the same words of length <= k − d?"""
        d = max(self.depth[sigma], self.depth[tau])
        if self.k <= d:
            raise IncomparablePair(sigma, tau)
        level = self.levels[self.k - d]
        return level[sigma] == level[tau]


def k_equivalent(m: Dfa, sigma: int, tau: int, k: int) -> bool:
    return MergeInstance.prepare(m, k).equivalent(sigma, tau)


def _transitivity_witness(comp: list[int], edge, sigma: int,
                          rho: int) -> tuple[int, int, int]:
    """First three states of a shortest sigma→rho path in the relation graph.

    The path has length >= 2 (sigma and rho are related only through
    intermediaries), and on a shortest path the first and third states
    cannot be related directly — exactly the violating triple.
    """
    prev = {sigma: sigma}
    queue = deque([sigma])
    while queue:
        q = queue.popleft()
        if q == rho:
            path = [q]
            while path[-1] != sigma:
                path.append(prev[path[-1]])
            path.reverse()
            return path[0], path[1], path[2]
        for t in comp:
            if t not in prev and edge(q, t):
                prev[t] = q
                queue.append(t)
    raise SpecError("related states must be connected inside their class")


def tb_merge(m: Dfa, k: int) -> Dfa:
    """Merge k-equivalent interior states; the result agrees with L(M') on
    all words of length <= k − max-depth.

    Live states of depth < k (the interior) are partitioned by window
    equality.  Transitions into dead states are read as absent edges and
    never block a merge; transitions into live states of depth >= k (the
    frontier) are folded into whatever class the interior evidence for
    that cell establishes, provided the frontier state's acceptance sign
    agrees.  Both let the quotient accept words the input never exhibited.
    Raises a TbAbort subclass when k is unusable, SpecError when the input
    is not accessible."""
    inst = MergeInstance.prepare(m, k)
    live = m.coaccessible()
    if m.start not in live:
        return minimize(m)
    interior = sorted(q for q in live if inst.depth[q] < k)
    frontier = live.difference(interior)

    parent = {q: q for q in interior}

    def find(q: int) -> int:
        while parent[q] != q:
            parent[q] = parent[parent[q]]
            q = parent[q]
        return q

    for i, sigma in enumerate(interior):
        for tau in interior[i + 1:]:
            if inst.equivalent(sigma, tau):
                rs, rt = find(sigma), find(tau)
                if rs != rt:
                    parent[max(rs, rt)] = min(rs, rt)

    classes: dict[int, list[int]] = {}
    for q in interior:
        classes.setdefault(find(q), []).append(q)

    for comp in classes.values():
        for i, sigma in enumerate(comp):
            for rho in comp[i + 1:]:
                if not inst.equivalent(sigma, rho):
                    raise NotTransitive(
                        *_transitivity_witness(comp, inst.equivalent,
                                               sigma, rho))

    for comp in classes.values():
        marks = {q in m.accepting for q in comp}
        if len(marks) > 1:
            raise SpecError("equivalent states must agree about acceptance")

    inside = set(interior)
    index = {root: i for i, root in enumerate(sorted(classes))}
    dead = len(index)
    rows = []
    for root, comp in sorted(classes.items()):
        row = []
        for x in range(m.alphabet.size):
            evidence: dict[int, int] = {}
            folds: list[tuple[int, int]] = []
            for q in comp:
                t = m.transitions[q][x]
                if t in inside:
                    evidence.setdefault(find(t), q)
                elif t in frontier:
                    folds.append((q, t))
            if len(evidence) > 1:
                first, second = list(evidence.values())[:2]
                raise InconsistentTransitions(first, second, x)
            if evidence:
                target = next(iter(evidence))
                for q, t in folds:
                    if (t in m.accepting) != (target in m.accepting):
                        raise InconsistentTransitions(evidence[target], q, x)
                row.append(index[target])
            elif folds:
                raise IncomparablePair(*folds[0])
            else:
                row.append(dead)
        rows.append(tuple(row))
    rows.append(tuple(dead for _ in range(m.alphabet.size)))

    accepting = frozenset(index[root] for root, comp in classes.items()
                          if comp[0] in m.accepting)
    quotient = Dfa(m.alphabet, tuple(rows), index[find(m.start)], accepting)
    return minimize(quotient)


def tb_restore(m: Dfa, k: int) -> Dfa:
    """Fold the prefix tree of L(m) ∩ X^{<=k} into an automaton.

    Tree nodes are visited breadth-first in shortlex order; each is
    identified with the first earlier representative whose behavior agrees
    with it on their common window (the sample is deep enough to compare
    them on exactly k − depth letters), and opens a fresh representative
    when none does.  Transitions follow the identifications; anything the
    sample cannot see — children of depth-k representatives — goes to the
    dead state.  Unlike tb_merge this never aborts: greedy folding needs
    no global equivalence, at the price of committing to the first match.
    The caller owns the consequences: a candidate is only as good as the
    verifier that checks it."""
    if k < 1:
        raise SpecError("the trust bound k must be at least 1")
    levels = _window_partitions(m, k)
    size = m.alphabet.size
    reps: list[tuple[int, int]] = [(0, m.start)]  # (depth, carrier state)
    rows: list[list[int]] = [[-1] * size]
    queue = deque([0])
    while queue:
        ri = queue.popleft()
        depth, carrier = reps[ri]
        child_depth = depth + 1
        for x in range(size):
            target = m.transitions[carrier][x]
            found = -1
            if child_depth <= k:
                for j, (rd, rs) in enumerate(reps):
                    level = levels[k - max(child_depth, rd)]
                    if level[target] == level[rs]:
                        found = j
                        break
                if found < 0:
                    reps.append((child_depth, target))
                    rows.append([-1] * size)
                    found = len(reps) - 1
                    queue.append(found)
            rows[ri][x] = found
    dead = len(reps)
    table = tuple(tuple(dead if c < 0 else c for c in row) for row in rows)
    table += (tuple(dead for _ in range(size)),)
    accepting = frozenset(ri for ri, (_, rs) in enumerate(reps)
                          if rs in m.accepting)
    return minimize(Dfa(m.alphabet, table, 0, accepting))
