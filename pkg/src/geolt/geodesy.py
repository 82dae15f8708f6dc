"""Geodesic automata: iteration, verification, products, and the pipeline.

The goal is a DFA accepting every geodesic word of a group — not just one
normal form per element.  Starting from the shortlex acceptor W (one
geodesic per element) the iteration closes W under the word-difference
machine D: each round adds every word v that some already-accepted word w
of the same length reaches through D.  The chain L(W) = L(GW_0) ⊆ L(GW_1)
⊆ … is monotone, stays inside the geodesics whenever D is sound, and its
fixpoint — when the iteration converges — is the full geodesic language.

When the iteration does not converge within budget, state merging
(tbinfer.tb_merge) or sample restoration (tbinfer.tb_restore) turns an
intermediate iterate into a finite guess.  Either way a candidate is
never trusted as produced: `verify_gw` checks
the four conditions under which a candidate provably equals the geodesic
language —

  (i)   L(GW) is prefix-closed,
  (ii)  L(W) is contained in L(GW),
  (iii) equal-length D-related words are accepted or rejected together,
  (iv)  no D-reduction source (a word D relates to a strictly shorter
        one) is accepted,

and because D itself is only empirically complete, `pipeline` additionally
insists that the candidate's words agree exactly with oracle geodesics up
to a configured length before reporting the verdict "verified".

`product_geodesics` is the independent construction for direct products:
adjoin an identity letter to each factor, and accept a word over the
product alphabet iff one of its projections is accepted by its extended
factor automaton.
"""

from __future__ import annotations

import hashlib
import json
from collections import deque
from dataclasses import dataclass
from itertools import zip_longest
from typing import Iterator

from .alphabet import Alphabet, Word
from .automata import (Dfa, complement, determinize, difference, equivalent,
                       inverse_image, is_prefix_closed, minimize,
                       shortest_accepted, union)
from .errors import BudgetError, SpecError
from .groups import GeodesicOracle, GroupSpec
from .localtest import is_locally_testable, min_k
from .pairs import (PairAutomaton, pair_product, pair_project, pair_restrict,
                    shortest_accepted_pair, trim_pair)
from .semigroups import is_aperiodic
from .tbinfer import TbAbort, tb_merge, tb_restore
from .version import VERSION
from .wdiff import (WordDifferenceMachine, check_d, normal_form_words,
                    shortlex_acceptor, synthesize_d)


# -- iteration -----------------------------------------------------------------

def gw_iterate(d: WordDifferenceMachine, gw_prev: Dfa) -> Dfa:
    """Words v with a same-length D-partner w already in L(gw_prev)."""
    if d.alphabet != gw_prev.alphabet:
        raise SpecError("the machine and the automaton share one alphabet")
    partnered = pair_product(d.pair, gw_prev, side="second")
    equal = pair_restrict(partnered, "equal_length")
    return minimize(determinize(pair_project(equal, side="first")))


def gw_fixpoint(d: WordDifferenceMachine, w: Dfa,
                max_iter: int) -> tuple[list[Dfa], bool]:
    """Iterate gw_iterate from W until the language stops growing.

    Returns ([GW_0 .. GW_i], converged).  Each round is checked to contain
    the previous one; the start loops of D make that automatic, so a
    violation means the machine is broken.
    """
    gws = [w]
    for _ in range(max_iter):
        nxt = gw_iterate(d, gws[-1])
        lost = shortest_accepted(difference(gws[-1], nxt))
        if lost is not None:
            raise SpecError(f"iteration lost the word {lost}")
        converged = equivalent(nxt, gws[-1])
        gws.append(nxt)
        if converged:
            return gws, True
    return gws, False


# -- verification --------------------------------------------------------------

@dataclass(frozen=True)
class GwVerification:
    """Outcome of the four-condition correctness check for a candidate."""

    prefix_closed: bool
    prefix_witness: Word | None
    contains_w: bool
    missing_word: Word | None
    equal_length_consistent: bool
    equal_length_witness: tuple[Word, Word] | None
    reductions_rejected: bool
    reduction_witness: tuple[Word, Word] | None

    @property
    def ok(self) -> bool:
        return (self.prefix_closed and self.contains_w
                and self.equal_length_consistent and self.reductions_rejected)

    def summary(self) -> dict:
        return {
            "prefix_closed": self.prefix_closed,
            "contains_w": self.contains_w,
            "equal_length_consistent": self.equal_length_consistent,
            "reductions_rejected": self.reductions_rejected,
            "ok": self.ok,
        }


def verify_gw(gw: Dfa, w: Dfa, d: WordDifferenceMachine) -> GwVerification:
    """Check the four conditions that make L(gw) the geodesic language.

    All four are exact automaton computations; each failing condition
    carries a shortest witness.
    """
    if gw.alphabet != w.alphabet or gw.alphabet != d.alphabet:
        raise SpecError("gw, w and d must share one alphabet")

    ok1, wit1 = is_prefix_closed(gw)
    wit2 = shortest_accepted(difference(w, gw))

    eq = pair_restrict(d.pair, "equal_length")
    co_gw = complement(gw)
    in_out = trim_pair(pair_product(pair_product(eq, gw, side="first"),
                                    co_gw, side="second"))
    wit3 = shortest_accepted_pair(in_out)
    if wit3 is None:
        out_in = trim_pair(pair_product(pair_product(eq, co_gw, side="first"),
                                        gw, side="second"))
        flipped = shortest_accepted_pair(out_in)
        wit3 = None if flipped is None else (flipped[1], flipped[0])

    longer = pair_restrict(d.pair, "first_longer")
    wit4 = shortest_accepted_pair(
        trim_pair(pair_product(longer, gw, side="first")))

    return GwVerification(ok1, wit1, wit2 is None, wit2,
                          wit3 is None, wit3, wit4 is None, wit4)


# -- oracle cross-validation ---------------------------------------------------

def automaton_words(d: Dfa, max_len: int) -> Iterator[Word]:
    """Accepted words of length <= max_len in shortlex order, streamed."""
    n = len(d.transitions)
    horizon = [n] * n  # shortest distance to an accepting state
    queue = deque()
    for q in d.accepting:
        horizon[q] = 0
        queue.append(q)
    back: list[list[int]] = [[] for _ in range(n)]
    for q, row in enumerate(d.transitions):
        for t in row:
            back[t].append(q)
    while queue:
        q = queue.popleft()
        for p in back[q]:
            if horizon[p] > horizon[q] + 1:
                horizon[p] = horizon[q] + 1
                queue.append(p)

    size = d.alphabet.size
    word: list[int] = []

    def walk(q: int, remaining: int) -> Iterator[Word]:
        if remaining == 0:
            if q in d.accepting:
                yield tuple(word)
            return
        row = d.transitions[q]
        for x in range(size):
            if horizon[row[x]] < remaining:
                word.append(x)
                yield from walk(row[x], remaining - 1)
                word.pop()

    for length in range(max_len + 1):
        if horizon[d.start] <= length:
            yield from walk(d.start, length)


def geodesics_match(gw: Dfa, oracle: GeodesicOracle,
                    max_len: int) -> tuple[bool, int, tuple | None]:
    """Stream-compare L(gw) with the oracle's geodesics, both shortlex.

    Returns (exact, words compared, first mismatch as (automaton word,
    oracle word) with None for the exhausted side).
    """
    count = 0
    for a, b in zip_longest(automaton_words(gw, max_len),
                            oracle.geodesic_words(max_len)):
        if a != b:
            return False, count, (a, b)
        count += 1
    return True, count, None


# -- direct products -----------------------------------------------------------

def _inverse_pairs(alphabet: Alphabet) -> tuple[tuple, tuple]:
    pairs = []
    self_inverse = []
    for i, sym in enumerate(alphabet.symbols):
        j = alphabet.inverse[i]
        if j == i:
            self_inverse.append(sym)
        elif i < j:
            pairs.append((sym, alphabet.symbols[j]))
    return tuple(pairs), tuple(self_inverse)


def adjoin_identity_letter(geo: Dfa, identity_symbol: str = "1") -> Dfa:
    """Extend the alphabet with an identity letter that no geodesic uses.

    A word spending a step on the identity letter is never geodesic, so
    every word containing it is rejected.
    """
    base = geo.alphabet
    if identity_symbol in base.symbols:
        raise SpecError(f"symbol {identity_symbol!r} is already a generator")
    pairs, self_inverse = _inverse_pairs(base)
    ext = Alphabet.make(pairs=pairs,
                        self_inverse=self_inverse + (identity_symbol,),
                        identity=identity_symbol,
                        order=(identity_symbol,) + base.symbols)
    dead = len(geo.transitions)
    rows = tuple((dead,) + tuple(row) for row in geo.transitions)
    rows += ((dead,) * ext.size,)
    return Dfa(ext, rows, geo.start, geo.accepting)


def product_geodesics(geo_a: Dfa, geo_b: Dfa,
                      identity_symbol: str = "1") -> Dfa:
    """Geodesic automaton of a direct product from its factors' automata.

    The product alphabet is (X + {1}) x (Y + {1}) with the identity letter
    first in each factor; the language accepts a word iff at least one
    projection is accepted by its extended factor automaton, because a
    product word is geodesic exactly when its length is met by the longer
    of its two factor distances.
    """
    ext_a = adjoin_identity_letter(geo_a, identity_symbol)
    ext_b = adjoin_identity_letter(geo_b, identity_symbol)
    a, b = ext_a.alphabet, ext_b.alphabet

    names = [f"{sa}|{sb}" for sa in a.symbols for sb in b.symbols]
    mates = {}
    for i, sa in enumerate(a.symbols):
        for j, sb in enumerate(b.symbols):
            mate = (f"{a.symbols[a.inverse[i]]}|"
                    f"{b.symbols[b.inverse[j]]}")
            mates[f"{sa}|{sb}"] = mate
    pairs = []
    self_inverse = []
    for name in names:
        mate = mates[name]
        if mate == name:
            self_inverse.append(name)
        elif names.index(name) < names.index(mate):
            pairs.append((name, mate))
    combined = Alphabet.make(pairs=tuple(pairs),
                             self_inverse=tuple(self_inverse),
                             identity=names[0], order=tuple(names))

    image_a = [z // b.size for z in range(combined.size)]
    image_b = [z % b.size for z in range(combined.size)]
    return minimize(union(inverse_image(ext_a, combined, image_a),
                          inverse_image(ext_b, combined, image_b)))


# -- the pipeline --------------------------------------------------------------

@dataclass(frozen=True)
class PipelineConfig:
    synthesis_bounds: tuple[int, ...] = (8, 10, 12)
    max_iter: int = 8
    tb_seeds: tuple[tuple[int, int], ...] = ()
    tb_min_k: int = 4
    tb_max_k: int = 14
    crosscheck_len: int = 10
    lt_max_k: int = 8
    d_check_len: int = 6
    d1_budget: int = 10**5
    nf_check_len: int | None = None  # default: the synthesis bound

    def tb_schedule(self, iterations: int) -> list[tuple[int, int]]:
        """Merge attempts in cheapness order, seeds first."""
        out = [s for s in self.tb_seeds if s[0] <= iterations]
        rest = [(i, k)
                for i in range(2, iterations + 1)
                for k in range(self.tb_min_k, self.tb_max_k + 1)]
        rest.sort(key=lambda ik: (ik[0] + ik[1], ik[0]))
        out.extend(s for s in rest if s not in out)
        return out

    def to_dict(self) -> dict:
        return {
            "synthesis_bounds": list(self.synthesis_bounds),
            "max_iter": self.max_iter,
            "tb_seeds": [list(s) for s in self.tb_seeds],
            "tb_min_k": self.tb_min_k,
            "tb_max_k": self.tb_max_k,
            "crosscheck_len": self.crosscheck_len,
            "lt_max_k": self.lt_max_k,
            "d_check_len": self.d_check_len,
            "d1_budget": self.d1_budget,
            "nf_check_len": self.nf_check_len,
        }

    def digest(self) -> str:
        text = json.dumps(self.to_dict(), sort_keys=True)
        return hashlib.sha256(text.encode()).hexdigest()[:16]


VERDICT_VERIFIED = "verified"
VERDICT_NONE = "no verified GW found at these budgets"


@dataclass(frozen=True)
class GwReport:
    group_name: str
    config: PipelineConfig
    attempts: tuple[dict, ...]
    verdict: str
    gw: Dfa | None = None
    provenance: dict | None = None
    verification: dict | None = None
    crosscheck: dict | None = None
    lt: dict | None = None

    @property
    def verified(self) -> bool:
        return self.verdict == VERDICT_VERIFIED

    def state_counts(self) -> dict | None:
        if self.gw is None:
            return None
        return {"minimized": len(self.gw.transitions),
                "live": self.gw.live_state_count()}

    def to_json(self) -> dict:
        config = self.config.to_dict()
        config["digest"] = self.config.digest()
        return {
            "format": 1,
            "kind": "gw_report",
            "version": VERSION,
            "group": self.group_name,
            "config": config,
            "attempts": list(self.attempts),
            "verdict": self.verdict,
            "gw": None if self.gw is None else self.gw.to_json(),
            "state_counts": self.state_counts(),
            "provenance": self.provenance,
            "verification": self.verification,
            "crosscheck": self.crosscheck,
            "lt": self.lt,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True)


def _verification_json(v: GwVerification) -> dict:
    def word(w):
        return None if w is None else list(w)

    def pair(p):
        return None if p is None else [list(p[0]), list(p[1])]

    out = v.summary()
    out["witnesses"] = {
        "prefix": word(v.prefix_witness),
        "missing_word": word(v.missing_word),
        "equal_length": pair(v.equal_length_witness),
        "reduction": pair(v.reduction_witness),
    }
    return out


def _classify_lt(gw: Dfa, lt_max_k: int) -> dict:
    verdict, semigroup = is_locally_testable(gw)
    out: dict = {
        "is_locally_testable": verdict.value,
        "semigroup_size": None if semigroup is None else semigroup.size,
        "min_k": None,
        "is_aperiodic": None,
        "reason": verdict.reason,
    }
    if semigroup is not None:
        out["is_aperiodic"] = is_aperiodic(semigroup).ok
    if verdict.is_true:
        k, _ = min_k(gw, lt_max_k)
        out["min_k"] = k
    return out


def pipeline(group: GroupSpec, config: PipelineConfig = PipelineConfig(),
             oracle: GeodesicOracle | None = None) -> GwReport:
    """Synthesize D, derive W, iterate, merge, verify, cross-validate.

    The first candidate that passes all four verification conditions and
    matches oracle geodesics exactly up to config.crosscheck_len is
    reported; otherwise the report says so — a wrong automaton is never
    returned.
    """
    if oracle is None:
        oracle = GeodesicOracle(group)
    attempts: list[dict] = []

    for bound in config.synthesis_bounds:
        attempt: dict = {"bound": bound}
        attempts.append(attempt)
        try:
            result = _attempt(group, oracle, bound, config, attempt)
        except BudgetError as e:
            attempt["outcome"] = f"budget: {e}"
            continue
        if result is not None:
            return GwReport(group.name, config, tuple(attempts),
                            VERDICT_VERIFIED, **result)

    return GwReport(group.name, config, tuple(attempts), VERDICT_NONE)


def _attempt(group: GroupSpec, oracle: GeodesicOracle, bound: int,
             config: PipelineConfig, attempt: dict) -> dict | None:
    """One synthesis bound: returns report fields on success, else None."""
    d = synthesize_d(oracle, bound)
    check = check_d(oracle, d, sample_length=min(bound, config.d_check_len),
                    d1_budget=config.d1_budget)
    attempt["d_states"] = d.state_count
    attempt["d_check"] = check.summary()
    if not check.ok:
        attempt["outcome"] = "word-difference machine failed its checks"
        return None

    w = shortlex_acceptor(d)
    nf_len = config.nf_check_len if config.nf_check_len is not None else bound
    closed, _ = is_prefix_closed(w)
    nf_ok, nf_witness = normal_form_words(w, oracle, nf_len)
    attempt["w_states"] = len(w.transitions)
    attempt["w_prefix_closed"] = closed
    attempt["w_matches_normal_forms"] = nf_ok
    if not closed or not nf_ok:
        attempt["outcome"] = (
            f"acceptor disagrees with oracle normal forms near {nf_witness}")
        return None

    gws, converged = gw_fixpoint(d, w, config.max_iter)
    attempt["iteration_states"] = [len(g.transitions) for g in gws]
    attempt["converged"] = converged

    if converged:
        provenance = {"bound": bound, "candidate": "fixpoint",
                      "iterations": len(gws) - 1}
        result = _certify(gws[-1], provenance, w, d, oracle, config, attempt)
        if result is not None:
            attempt["outcome"] = "verified"
            return result
        attempt["outcome"] = "no candidate survived verification"
        return None

    trials: list[dict] = []
    attempt["tb_trials"] = trials
    seen: list[Dfa] = []
    for i, k in config.tb_schedule(len(gws) - 1):
        for entry, infer in (("merge", tb_merge), ("restore", tb_restore)):
            trial = {"i": i, "k": k, "entry": entry}
            trials.append(trial)
            try:
                candidate = infer(gws[i], k)
            except TbAbort as e:
                trial["outcome"] = f"abort: {type(e).__name__}"
                continue
            trial["states"] = len(candidate.transitions)
            if any(equivalent(candidate, s) for s in seen):
                trial["outcome"] = "duplicate candidate"
                continue
            seen.append(candidate)
            provenance = {"bound": bound, "candidate": entry, "i": i, "k": k}
            result = _certify(candidate, provenance, w, d, oracle, config,
                              attempt)
            if result is not None:
                trial["outcome"] = "verified"
                attempt["outcome"] = "verified"
                return result
            trial["outcome"] = "rejected"

    attempt["outcome"] = "no candidate survived verification"
    return None


def _certify(candidate: Dfa, provenance: dict, w: Dfa,
             d: WordDifferenceMachine, oracle: GeodesicOracle,
             config: PipelineConfig, attempt: dict) -> dict | None:
    """Verify one candidate and cross-check it against the oracle.

    Returns the report fields on success; on failure the rejection and its
    witnesses are recorded in the attempt and None comes back.
    """
    verification = verify_gw(candidate, w, d)
    if not verification.ok:
        attempt.setdefault("rejected", []).append({
            "provenance": provenance,
            "verification": _verification_json(verification),
        })
        return None
    exact, words, mismatch = geodesics_match(candidate, oracle,
                                             config.crosscheck_len)
    if not exact:
        attempt.setdefault("rejected", []).append({
            "provenance": provenance,
            "verification": _verification_json(verification),
            "crosscheck_mismatch": [
                None if side is None else list(side)
                for side in mismatch],
        })
        return None
    return {
        "gw": candidate,
        "provenance": provenance,
        "verification": _verification_json(verification),
        "crosscheck": {"length": config.crosscheck_len,
                       "words": words, "exact": True},
        "lt": _classify_lt(candidate, config.lt_max_k),
    }
