"""Finitely generated groups presented as multiplication oracles.

A GroupSpec packages the data every construction downstream needs: a
symmetric generating alphabet, hashable group elements, the identity, one
element per letter, and an associative mult.  Optional extras speed things
up when a backend knows them directly: the geodesic length function, the
shortlex-least geodesic word (snf), and a word-level geodesic predicate.
Everything else — balls, spheres, geodesic enumeration, normal forms — is
derived uniformly by GeodesicOracle via breadth-first search over the
Cayley graph, which serves as the reference semantics the specialised
backends are tested against.

Backends:

* free_group        reduced words; unique geodesics
* lattice           free abelian Z^n, one +/- letter pair per coordinate
* cyclic            Z/n
* dihedral_artin    two-generator Artin group <a, b | aba.. = bab..> (m
                    letters each side), Garside normal form (power of the
                    half-twist times a left-weighted sequence of proper
                    alternating factors)
* coxeter           arbitrary Coxeter matrix; canonical form is the
                    shortlex-least reduced word, computed by exhausting the
                    braid-move orbit (every reduced word of an element is
                    reachable by braid moves alone, and a non-reduced word
                    always exposes a square under them)
* wreath_z_c2       (Z x Z) x| C2 with the flip swapping coordinates,
                    letters given explicitly
* direct_product    pairwise product; letters are pairs over the factor
                    alphabets with an identity letter adjoined first
* free_product      syllable sequences; letters are the factor letters
* rewriting_group   elements are the irreducible words of a confluent
                    shortlex-reducing rewriting system
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Callable, Iterator, Sequence

from .alphabet import EPSILON, Alphabet, Word
from .errors import BudgetError, SpecError
from .rewriting import RewritingSystem

DEFAULT_BALL_BUDGET = 10**7
DEFAULT_ORBIT_BUDGET = 10**5


@dataclass(eq=False)
class GroupSpec:
    name: str
    alphabet: Alphabet
    identity: Any
    letters: tuple
    mult: Callable[[Any, Any], Any]
    length: Callable[[Any], int] | None = None
    snf: Callable[[Any], Word] | None = None
    geodesic: Callable[[Word], bool] | None = None

    def letter(self, x: int) -> Any:
        return self.letters[x]

    def eval_word(self, w: Word) -> Any:
        g = self.identity
        for x in w:
            g = self.mult(g, self.letters[x])
        return g


# -- free groups ----------------------------------------------------------------

def free_group(*pairs: tuple[str, str]) -> GroupSpec:
    """Free group on the given (generator, inverse) letter pairs."""
    alphabet = Alphabet.make(pairs=pairs)
    inv = alphabet.inverse

    def mult(g: tuple, h: tuple) -> tuple:
        g = list(g)
        i = 0
        while g and i < len(h) and g[-1] == inv[h[i]]:
            g.pop()
            i += 1
        return tuple(g) + tuple(h[i:])

    def geodesic(w: Word) -> bool:
        return all(w[i + 1] != inv[w[i]] for i in range(len(w) - 1))

    letters = tuple((x,) for x in range(alphabet.size))
    return GroupSpec("free", alphabet, (), letters, mult,
                     length=len, snf=lambda g: g, geodesic=geodesic)


# -- free abelian and cyclic groups ----------------------------------------------

def lattice(rank: int, names: Sequence[str] | None = None) -> GroupSpec:
    """Z^rank with letter pairs (+e_i, -e_i) in coordinate order."""
    if names is None:
        base = "abcdefgh"
        if rank > len(base):
            raise SpecError("provide names for rank > 8")
        names = tuple(c for i in range(rank)
                      for c in (base[i], base[i].upper()))
    names = tuple(names)
    if len(names) != 2 * rank:
        raise SpecError("lattice needs two letter names per coordinate")
    alphabet = Alphabet.make(pairs=tuple((names[2 * i], names[2 * i + 1])
                                         for i in range(rank)))
    identity = (0,) * rank

    def unit(x: int) -> tuple:
        v = [0] * rank
        v[x // 2] = 1 if x % 2 == 0 else -1
        return tuple(v)

    def mult(g, h):
        return tuple(a + b for a, b in zip(g, h))

    def length(g):
        return sum(abs(c) for c in g)

    def snf(g):
        out = []
        for i, c in enumerate(g):
            out.extend([2 * i if c > 0 else 2 * i + 1] * abs(c))
        return tuple(out)

    letters = tuple(unit(x) for x in range(alphabet.size))
    return GroupSpec(f"Z^{rank}", alphabet, identity, letters, mult,
                     length=length, snf=snf)


def cyclic(n: int, names: Sequence[str] | None = None) -> GroupSpec:
    """Z/n; a single self-inverse letter for n = 2, a +/- pair otherwise."""
    if n < 2:
        raise SpecError("cyclic group order must be >= 2")
    if n == 2:
        names = tuple(names) if names else ("x",)
        alphabet = Alphabet.make(self_inverse=names[:1])
        letters: tuple = (1,)
    else:
        names = tuple(names) if names else ("c", "C")
        alphabet = Alphabet.make(pairs=(names,))
        letters = (1, n - 1)

    def mult(g, h):
        return (g + h) % n

    def length(g):
        return min(g, n - g)

    def snf(g):
        if g == 0:
            return EPSILON
        if g <= n - g:
            return (0,) * g
        return (1,) * (n - g)

    return GroupSpec(f"Z/{n}", alphabet, 0, letters, mult,
                     length=length, snf=snf)


# -- dihedral Artin groups --------------------------------------------------------

def _alt(first: int, length: int) -> tuple[int, ...]:
    return tuple((first + i) % 2 for i in range(length))


def dihedral_artin(m: int,
                   order: Sequence[str] = ("a", "A", "b", "B")) -> GroupSpec:
    """<a, b | ab.. = ba..> with m letters on each side of the relation.

    Elements are Garside normal forms (p, factors): a power of the half
    twist D (the m-letter alternating word, central for even m, swapping
    the generators for odd m) followed by a left-weighted sequence of
    proper alternating factors.  A pair of adjacent factors is left
    weighted exactly when the last letter of the first equals the first
    letter of the second, so normalization is letter transfer to the left
    plus extraction of full twists.
    """
    if m < 2:
        raise SpecError("relation needs length >= 2")
    order = tuple(order)
    if sorted(order) != sorted(("a", "A", "b", "B")):
        raise SpecError("letters must be a, A, b, B in some order")
    alphabet = Alphabet.make(pairs=(("a", "A"), ("b", "B")), order=order)
    odd = m % 2 == 1

    def tau(f: tuple) -> tuple:
        return tuple(1 - c for c in f) if odd else f

    def normalize(p: int, factors) -> tuple:
        fs = [list(f) for f in factors if f]
        i = 0
        while i < len(fs) - 1:
            x, y = fs[i], fs[i + 1]
            while y and x[-1] != y[0] and len(x) < m:
                x.append(y.pop(0))
            if not y:
                del fs[i + 1]
            if len(x) == m:
                # x spells a full twist: move it out front
                del fs[i]
                if odd:
                    for j in range(i):
                        fs[j] = [1 - c for c in fs[j]]
                p += 1
                i = max(i - 1, 0)
            elif i + 1 < len(fs) and fs[i + 1] is y:
                i += 1
        return (p, tuple(tuple(f) for f in fs))

    def mult(g, h):
        pg, fg = g
        ph, fh = h
        if odd and ph % 2:
            fg = tuple(tau(f) for f in fg)
        return normalize(pg + ph, fg + fh)

    def complement(f: tuple) -> tuple:
        # the factor carrying f to a full twist: f . complement(f) = D
        return _alt(f[0], m)[len(f):]

    base = {"a": 0, "b": 1}
    letters = []
    for sym in order:
        c = base[sym.lower()]
        if sym.islower():
            letters.append((0, ((c,),)))
        else:
            letters.append((-1, (tau(complement((c,))),)))

    return GroupSpec(f"artin-I2({m})", alphabet, (0, ()), tuple(letters), mult)


# -- Coxeter groups ----------------------------------------------------------------

def coxeter(matrix: Sequence[Sequence[int]], names: Sequence[str],
            orbit_budget: int = DEFAULT_ORBIT_BUDGET) -> GroupSpec:
    """Coxeter group of the given matrix; entry 0 means infinite order.

    The canonical form of an element is the shortlex-least reduced word for
    it.  Words are canonicalized by walking the braid-move orbit: if any
    orbit member shows a square, delete it and start over; otherwise every
    reduced word of the element has been seen and the least one wins.
    """
    n = len(names)
    if any(len(row) != n for row in matrix):
        raise SpecError("Coxeter matrix must be square")
    for i in range(n):
        if matrix[i][i] != 1:
            raise SpecError("Coxeter matrix diagonal must be 1")
        for j in range(n):
            if matrix[i][j] != matrix[j][i]:
                raise SpecError("Coxeter matrix must be symmetric")
            if i != j and matrix[i][j] == 1:
                raise SpecError("off-diagonal entries must be 0 or >= 2")
    alphabet = Alphabet.make(self_inverse=tuple(names))

    moves: list[tuple[tuple, tuple]] = []
    for i in range(n):
        for j in range(n):
            if i != j and matrix[i][j] >= 2:
                moves.append((_alt_pair(i, j, matrix[i][j]),
                              _alt_pair(j, i, matrix[i][j])))

    cache: dict[tuple, tuple] = {(): ()}

    def canon(w: tuple) -> tuple:
        hit = cache.get(w)
        if hit is not None:
            return hit
        orbit = {w}
        queue = [w]
        shorter = None
        qi = 0
        while qi < len(queue) and shorter is None:
            u = queue[qi]
            qi += 1
            for i in range(len(u) - 1):
                if u[i] == u[i + 1]:
                    shorter = u[:i] + u[i + 2:]
                    break
            if shorter is not None:
                break
            for pat, rep in moves:
                L = len(pat)
                for i in range(len(u) - L + 1):
                    if u[i:i + L] == pat:
                        v = u[:i] + rep + u[i + L:]
                        if v not in orbit:
                            if len(orbit) >= orbit_budget:
                                raise BudgetError("braid orbit", orbit_budget)
                            orbit.add(v)
                            queue.append(v)
        word = canon(shorter) if shorter is not None else min(orbit)
        cache[w] = word
        return word

    edge: dict[tuple[tuple, int], tuple] = {}

    def mult(g, h):
        for x in h:
            key = (g, x)
            r = edge.get(key)
            if r is None:
                r = canon(g + (x,))
                edge[key] = r
            g = r
        return g

    letters = tuple((x,) for x in range(n))
    return GroupSpec("coxeter", alphabet, (), letters, mult,
                     length=len, snf=lambda g: g)


def _alt_pair(i: int, j: int, length: int) -> tuple[int, ...]:
    return tuple(i if t % 2 == 0 else j for t in range(length))


# -- wreath-type extension of the plane ---------------------------------------------

WreathElem = tuple[tuple[int, int], int]


def wreath_mult(g: WreathElem, h: WreathElem) -> WreathElem:
    (v, f), (w, e) = g, h
    moved = (w[1], w[0]) if f else w
    return ((v[0] + moved[0], v[1] + moved[1]), f ^ e)


def wreath_inverse(g: WreathElem) -> WreathElem:
    v, f = g
    moved = (v[1], v[0]) if f else v
    return ((-moved[0], -moved[1]), f)


def wreath_z_c2(letter_table: Sequence[tuple[str, WreathElem]]) -> GroupSpec:
    """(Z x Z) extended by the coordinate flip; letters given explicitly.

    Each named letter is an element ((x, y), flip); the table must be closed
    under inversion so the alphabet can pair every letter with its inverse.
    """
    names = tuple(name for name, _ in letter_table)
    elems = tuple(elem for _, elem in letter_table)
    by_elem = {e: i for i, e in enumerate(elems)}
    if len(by_elem) != len(elems):
        raise SpecError("duplicate letter elements")
    pairs = []
    self_inverse = []
    for i, e in enumerate(elems):
        j = by_elem.get(wreath_inverse(e))
        if j is None:
            raise SpecError(f"letter {names[i]} has no inverse letter")
        if j == i:
            self_inverse.append(names[i])
        elif i < j:
            pairs.append((names[i], names[j]))
    identity_name = None
    ident: WreathElem = ((0, 0), 0)
    if ident in by_elem:
        identity_name = names[by_elem[ident]]
    alphabet = Alphabet.make(pairs=tuple(pairs),
                             self_inverse=tuple(self_inverse),
                             identity=identity_name, order=names)
    return GroupSpec("wreath", alphabet, ident, elems, wreath_mult)


# -- products ------------------------------------------------------------------------

def direct_product(a: GroupSpec, b: GroupSpec,
                   identity_symbol: str = "1") -> GroupSpec:
    """a x b generated by pairs over the factor alphabets plus identity letters.

    The alphabet is (X_a + {1}) x (X_b + {1}) in lexicographic order with the
    identity letter first in each factor, so the pure identity pair "1|1" is
    letter zero and is flagged as the alphabet's identity letter.
    """
    ext_a = (identity_symbol,) + a.alphabet.symbols
    ext_b = (identity_symbol,) + b.alphabet.symbols

    def inv_name(alphabet: Alphabet, sym: str) -> str:
        if sym == identity_symbol:
            return identity_symbol
        return alphabet.symbols[alphabet.inverse[alphabet.index(sym)]]

    names = []
    mates = {}
    elems = []
    for sa in ext_a:
        for sb in ext_b:
            name = f"{sa}|{sb}"
            names.append(name)
            mates[name] = f"{inv_name(a.alphabet, sa)}|{inv_name(b.alphabet, sb)}"
            ga = a.identity if sa == identity_symbol \
                else a.letters[a.alphabet.index(sa)]
            gb = b.identity if sb == identity_symbol \
                else b.letters[b.alphabet.index(sb)]
            elems.append((ga, gb))
    pairs = []
    self_inverse = []
    for name in names:
        mate = mates[name]
        if mate == name:
            self_inverse.append(name)
        elif names.index(name) < names.index(mate):
            pairs.append((name, mate))
    identity_name = f"{identity_symbol}|{identity_symbol}"
    alphabet = Alphabet.make(pairs=tuple(pairs),
                             self_inverse=tuple(self_inverse),
                             identity=identity_name, order=tuple(names))

    def mult(g, h):
        return (a.mult(g[0], h[0]), b.mult(g[1], h[1]))

    length = None
    if a.length is not None and b.length is not None:
        def length(g):  # noqa: F811 - deliberate conditional definition
            return max(a.length(g[0]), b.length(g[1]))

    return GroupSpec(f"{a.name} x {b.name}", alphabet,
                     (a.identity, b.identity), tuple(elems), mult,
                     length=length)


def free_product(a: GroupSpec, b: GroupSpec) -> GroupSpec:
    """a * b generated by the union of the factor alphabets.

    Elements are alternating syllable sequences ((factor, element), ...).
    A word is geodesic exactly when each maximal one-factor block spells a
    geodesic of its factor with a non-identity value, so the predicate is
    available whenever both factors know their lengths.
    """
    factors = (a, b)
    for name in a.alphabet.symbols:
        if name in b.alphabet.symbols:
            raise SpecError(f"factor alphabets share the letter {name!r}")
    names = a.alphabet.symbols + b.alphabet.symbols
    size_a = a.alphabet.size

    def split(x: int) -> tuple[int, int]:
        return (0, x) if x < size_a else (1, x - size_a)

    pairs = []
    self_inverse = []
    identity_name = None
    for spec, offset in ((a, 0), (b, size_a)):
        for x in range(spec.alphabet.size):
            y = spec.alphabet.inverse[x]
            if y == x:
                self_inverse.append(spec.alphabet.symbols[x])
            elif x < y:
                pairs.append((spec.alphabet.symbols[x], spec.alphabet.symbols[y]))
        if spec.alphabet.identity is not None:
            identity_name = spec.alphabet.symbols[spec.alphabet.identity]
    alphabet = Alphabet.make(pairs=tuple(pairs),
                             self_inverse=tuple(self_inverse),
                             identity=identity_name, order=names)

    elems = []
    for x in range(alphabet.size):
        tag, local = split(x)
        g = factors[tag].letters[local]
        elems.append(() if g == factors[tag].identity else ((tag, g),))

    def mult(g, h):
        g = list(g)
        i = 0
        while g and i < len(h) and g[-1][0] == h[i][0]:
            tag = g[-1][0]
            prod = factors[tag].mult(g[-1][1], h[i][1])
            i += 1
            if prod == factors[tag].identity:
                g.pop()
            else:
                g[-1] = (tag, prod)
                break
        return tuple(g) + tuple(h[i:])

    length = None
    geodesic = None
    if a.length is not None and b.length is not None:
        def length(g):  # noqa: F811 - deliberate conditional definition
            return sum(factors[tag].length(e) for tag, e in g)

        def geodesic(w: Word) -> bool:  # noqa: F811
            i = 0
            while i < len(w):
                tag = split(w[i])[0]
                j = i
                block = factors[tag].identity
                while j < len(w) and split(w[j])[0] == tag:
                    block = factors[tag].mult(block,
                                              factors[tag].letters[split(w[j])[1]])
                    j += 1
                if block == factors[tag].identity:
                    return False
                if factors[tag].length(block) != j - i:
                    return False
                i = j
            return True

    return GroupSpec(f"{a.name} * {b.name}", alphabet, (), tuple(elems), mult,
                     length=length, geodesic=geodesic)


# -- groups given by a confluent rewriting system --------------------------------------

def rewriting_group(rs: RewritingSystem, name: str = "rewriting") -> GroupSpec:
    """Group of irreducible words of a confluent shortlex-reducing system.

    Confluence plus strict shortlex reduction make the irreducible word of
    an element its shortlex-least representative, so lengths and normal
    forms come for free.  Confluence is the caller's responsibility (see
    rewriting.complete_rs); without it, equality of elements is simply
    wrong.
    """
    alphabet = rs.alphabet

    def mult(g, h):
        return rs.normal_form(g + h)

    def geodesic(w: Word) -> bool:
        return len(rs.normal_form(w)) == len(w)

    letters = tuple(rs.normal_form((x,)) for x in range(alphabet.size))
    return GroupSpec(name, alphabet, EPSILON, letters, mult,
                     length=len, snf=lambda g: g, geodesic=geodesic)


# -- the ball oracle ---------------------------------------------------------------------

class GeodesicOracle:
    """Reference geodesic facts for a GroupSpec, by breadth-first search.

    Searching the Cayley graph with letters in alphabet order discovers
    every element first along its shortlex-least geodesic word, so the ball
    yields distances and shortlex normal forms at once.  Backends that know
    their length function directly skip the ball for geodesic tests but
    still share the memoized multiplication edges.
    """

    def __init__(self, spec: GroupSpec, ball_budget: int = DEFAULT_BALL_BUDGET):
        self.spec = spec
        self.ball_budget = ball_budget
        self.dist: dict = {spec.identity: 0}
        self.nf: dict = {spec.identity: EPSILON}
        self.radius = 0
        self._frontier: list = [spec.identity]
        self._edges: dict = {}

    def step(self, g, x: int):
        key = (g, x)
        r = self._edges.get(key)
        if r is None:
            r = self.spec.mult(g, self.spec.letters[x])
            self._edges[key] = r
        return r

    def eval_word(self, w: Word):
        g = self.spec.identity
        for x in w:
            g = self.step(g, x)
        return g

    def ensure_radius(self, r: int) -> None:
        while self.radius < r and self._frontier:
            nxt = []
            for g in self._frontier:
                base = self.nf[g]
                for x in range(self.spec.alphabet.size):
                    h = self.step(g, x)
                    if h not in self.dist:
                        if len(self.dist) >= self.ball_budget:
                            raise BudgetError("ball elements", self.ball_budget)
                        self.dist[h] = self.radius + 1
                        self.nf[h] = base + (x,)
                        nxt.append(h)
            self._frontier = nxt
            self.radius += 1
        if self.radius < r and not self._frontier:
            self.radius = r  # the whole group is already in the ball

    def distance(self, g, max_radius: int = 64) -> int:
        if self.spec.length is not None:
            return self.spec.length(g)
        while g not in self.dist:
            if not self._frontier:
                raise SpecError("element is outside the generated group")
            if self.radius >= max_radius:
                raise BudgetError("ball radius", max_radius)
            self.ensure_radius(self.radius + 1)
        return self.dist[g]

    def normal_form(self, g, max_radius: int = 64) -> Word:
        if self.spec.snf is not None:
            return self.spec.snf(g)
        if self.spec.length is not None:
            # grow the ball just far enough; nf is filled alongside dist
            r = self.spec.length(g)
            self.ensure_radius(min(r, max_radius))
        else:
            self.distance(g, max_radius)
        if g not in self.nf:
            raise BudgetError("ball radius", max_radius)
        return self.nf[g]

    def is_geodesic(self, w: Word) -> bool:
        if self.spec.geodesic is not None:
            return self.spec.geodesic(w)
        if self.spec.length is not None:
            return self.spec.length(self.eval_word(w)) == len(w)
        self.ensure_radius(len(w))
        return self.dist[self.eval_word(w)] == len(w)

    def _elem_length(self, g, at_depth: int) -> int:
        if self.spec.length is not None:
            return self.spec.length(g)
        self.ensure_radius(at_depth)
        return self.dist[g]

    def geodesic_words(self, max_len: int) -> Iterator[Word]:
        """All geodesic words of length <= max_len, in shortlex order."""
        yield EPSILON
        level = [(EPSILON, self.spec.identity)]
        for n in range(1, max_len + 1):
            nxt = []
            for w, g in level:
                for x in range(self.spec.alphabet.size):
                    h = self.step(g, x)
                    if self._elem_length(h, n) == n:
                        w2 = w + (x,)
                        yield w2
                        nxt.append((w2, h))
            level = nxt
            if not level:
                return

    def normal_forms_up_to(self, r: int) -> list[Word]:
        """Shortlex normal forms of all elements of the ball of radius r."""
        self.ensure_radius(r)
        out = [nf for g, nf in self.nf.items() if self.dist[g] <= r]
        out.sort(key=self.spec.alphabet.shortlex_key)
        return out

    def sphere_sizes(self, r: int) -> list[int]:
        self.ensure_radius(r)
        counts = [0] * (r + 1)
        for d in self.dist.values():
            if d <= r:
                counts[d] += 1
        return counts
