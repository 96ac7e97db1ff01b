"""Sequence generation and expansion.

Two independent generators produce the accelerated (odd-only) sequence:
``syr_seq_oracle`` iterates the step function directly, and
``syr_seq_model`` walks the incoming-term matrices instead (locate the
current term's column, emit its connection point 6q+a). They must agree
term for term; the test suite holds them to that.

``collatz_expand`` rebuilds the plain 3n+1 sequence from an odd-only one
by inserting the even intermediates, and ``col_seq`` handles arbitrary
seeds: even seeds are halved down to their odd part first, then continue
as the odd case.
"""

import csv
import io
import json
from dataclasses import dataclass
from typing import List, NamedTuple, Optional

from .arith import DEFAULT_MAX_STEPS, _require_odd, _require_positive
from .arith import syr as _syr
from .matrices import locate


@dataclass
class SyrSequence:
    """Odd-only sequence from seed to the first 1 (or a truncated prefix)."""

    seed: int
    terms: List[int]
    truncated: bool

    @property
    def steps(self) -> int:
        return len(self.terms) - 1


@dataclass
class ColSequence:
    """Plain 3n+1 sequence from seed to the first 1 (or a truncated prefix)."""

    seed: int
    terms: List[int]
    truncated: bool

    @property
    def steps(self) -> int:
        return len(self.terms) - 1


def syr_seq_oracle(n: int, max_steps: int = DEFAULT_MAX_STEPS) -> SyrSequence:
    """Reference generator: direct iteration of the accelerated step."""
    _require_odd(n)
    terms = [n]
    while terms[-1] != 1 and len(terms) - 1 < max_steps:
        terms.append(_syr(terms[-1]))
    return SyrSequence(n, terms, terms[-1] != 1)


def syr_seq_model(n: int, max_steps: int = DEFAULT_MAX_STEPS) -> SyrSequence:
    """Model-driven generator: next term is the column connection point.

    Never divides: each step locates the current term in the matrices and
    reads off 6q+a. Output equals syr_seq_oracle term for term.
    """
    _require_odd(n)
    terms = [n]
    while terms[-1] != 1 and len(terms) - 1 < max_steps:
        a, _p, q = locate(terms[-1])
        terms.append(6 * q + a)
    return SyrSequence(n, terms, terms[-1] != 1)


def _expand_terms(odd_terms: List[int]) -> List[int]:
    # between consecutive odd terms insert 3n+1 and its halvings
    out: List[int] = []
    for i in range(len(odd_terms) - 1):
        n, nxt = odd_terms[i], odd_terms[i + 1]
        out.append(n)
        m = 3 * n + 1
        while m != nxt:
            out.append(m)
            m >>= 1
    out.append(odd_terms[-1])
    return out


def collatz_expand(s: SyrSequence) -> ColSequence:
    """Expand an odd-only sequence into the full plain sequence.

    Between consecutive odd terms the even intermediates 3n+1, (3n+1)/2,
    ... are inserted; nothing follows the final 1 (the 1-4-2-1 cycle is
    not unrolled). Truncated input is rejected: the expansion of an open
    tail would be unspecified.
    """
    if s.truncated:
        raise ValueError("cannot expand a truncated sequence")
    return ColSequence(s.seed, _expand_terms(s.terms), False)


def col_seq(n: int, max_steps: int = DEFAULT_MAX_STEPS) -> ColSequence:
    """Plain 3n+1 sequence for any positive seed, via the model generator.

    Even seeds are halved down to their odd part (the even-input path),
    then the odd case continues; odd seeds expand syr_seq_model directly.
    Budget counts plain steps; exceeding it truncates, never raises.
    """
    _require_positive(n)
    prefix = [n]
    m = n
    while m & 1 == 0:
        if len(prefix) - 1 >= max_steps:
            return ColSequence(n, prefix, True)
        m >>= 1
        prefix.append(m)
    if m == 1:
        return ColSequence(n, prefix, False)
    remaining = max_steps - (len(prefix) - 1)
    if remaining <= 0:
        return ColSequence(n, prefix, True)
    s = syr_seq_model(m, remaining)
    terms = prefix[:-1] + _expand_terms(s.terms)
    truncated = s.truncated
    if len(terms) - 1 > max_steps:
        terms = terms[: max_steps + 1]
        truncated = True
    return ColSequence(n, terms, truncated)


class SeqStats(NamedTuple):
    """stopping_time is None when the sequence never reached 1 (undecided)."""

    stopping_time: Optional[int]
    max_term: int
    odd_steps: int


def stats(s) -> SeqStats:
    """Stopping time (index of the first 1), peak term, and odd-term count."""
    terms = s.terms
    stop = terms.index(1) if 1 in terms else None
    upto = stop if stop is not None else len(terms)
    odd = sum(1 for t in terms[:upto] if t & 1)
    return SeqStats(stop, max(terms), odd)


def to_json(s, include_terms: bool = True) -> str:
    """One JSON line per sequence; key order is fixed for golden files."""
    st = stats(s)
    doc = {
        "kind": "syr" if isinstance(s, SyrSequence) else "col",
        "seed": s.seed,
        "steps": s.steps,
        "truncated": s.truncated,
        "stats": {
            "stopping_time": st.stopping_time,
            "max_term": st.max_term,
            "odd_steps": st.odd_steps,
        },
    }
    if include_terms:
        doc["terms"] = s.terms
    return json.dumps(doc, sort_keys=True, separators=(",", ":"))


CSV_FIELDS = ["seed", "stopping_time", "max_term", "terms"]


def to_csv(seqs, include_terms: bool = True) -> str:
    """CSV with one row per sequence: seed, stopping_time, max_term[, terms]."""
    buf = io.StringIO()
    fields = CSV_FIELDS if include_terms else CSV_FIELDS[:-1]
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(fields)
    for s in seqs:
        st = stats(s)
        stop = "undecided" if st.stopping_time is None else st.stopping_time
        row = [s.seed, stop, st.max_term]
        if include_terms:
            row.append(" ".join(str(t) for t in s.terms))
        w.writerow(row)
    return buf.getvalue()
