"""Exhaustive verification of the package's combinatorial laws.

Each checker enumerates a complete desk-scale instance space, evaluates
one family of statements on every instance, and returns a report with
counts, violations, and witnesses.  The expensive enumerations (all
length-n multisets over Z_n) are run once per (n, options) and shared
by the checkers that read different statements off the same pass.

Instance spaces are cut into contiguous shards by first entry.  Workers
are pure; shard results merge by summing counts and concatenating
violation lists in shard order, so a report is byte-identical for every
shard count.  When a cyclic group is involved, enumeration is reduced
to one representative per unit orbit u*S (the checked statements are
all invariant under that action) and instances_checked still counts the
raw multisets covered, weighting each representative by its orbit size.
"""

from __future__ import annotations

import json
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import comb, gcd

from . import sums
from .errors import BudgetExceededError, UnsupportedSymmetryError
from .groups import AbelianGroup, element_add, groups_of_order, units

# raw enumeration cap; C(2n-1, n) <= 10^7 keeps runs at minutes
RAW_ENUMERATION_CAP = 10_000_000
DAVENPORT_TABLE_CAP = 16
VIOLATION_LIMIT = 100
WITNESS_LIMIT = 100


def _effective_budget(budget: int | None) -> int:
    if budget is not None:
        return budget
    raw = os.environ.get("ZEROSUM_BUDGET")
    return int(raw) if raw else RAW_ENUMERATION_CAP


@dataclass
class VerificationReport:
    """Outcome of one exhaustive check.

    violations holds at most VIOLATION_LIMIT entries (sorted); the full
    count survives in violations_total.  details carries per-statement
    extras such as witnesses and slice counts.
    """

    statement_id: str
    parameters: dict
    instances_checked: int
    orbit_reduced: bool
    violations: list[dict]
    violations_total: int
    details: dict = field(default_factory=dict)
    elapsed_ms: int = 0

    @property
    def passed(self) -> bool:
        return self.violations_total == 0

    def to_dict(self, include_elapsed: bool = True) -> dict:
        out = {
            "statement_id": self.statement_id,
            "parameters": self.parameters,
            "instances_checked": self.instances_checked,
            "orbit_reduced": self.orbit_reduced,
            "passed": self.passed,
            "violations": self.violations,
            "violations_total": self.violations_total,
            "details": self.details,
        }
        if include_elapsed:
            out["elapsed_ms"] = self.elapsed_ms
        return out

    def to_json(self, include_elapsed: bool = True) -> str:
        return json.dumps(self.to_dict(include_elapsed), sort_keys=True)


def reports_to_json(reports: list[VerificationReport], include_elapsed: bool = True) -> str:
    doc = {
        "passed": all(r.passed for r in reports),
        "reports": [r.to_dict(include_elapsed) for r in reports],
    }
    return json.dumps(doc, sort_keys=True)


# ---------------------------------------------------------------------------
# shared machinery


def _split_range(lo: int, hi: int, shards: int) -> list[tuple[int, int]]:
    """Contiguous chunks [lo, hi) for sharding; empty chunks dropped."""
    total = hi - lo
    if total <= 0:
        return []
    shards = max(1, min(shards, total))
    q, r = divmod(total, shards)
    out = []
    start = lo
    for i in range(shards):
        size = q + (1 if i < r else 0)
        out.append((start, start + size))
        start += size
    return out


def _run_workers(worker, arg_list: list, shards: int) -> list:
    if shards <= 1 or len(arg_list) <= 1:
        return [worker(a) for a in arg_list]
    max_workers = min(len(arg_list), shards, os.cpu_count() or 1)
    with ProcessPoolExecutor(max_workers=max_workers) as pool:
        return list(pool.map(worker, arg_list))


def _unit_perms(n: int) -> tuple[list[tuple[int, ...]], int]:
    """Count-vector permutations for each nontrivial unit, plus phi(n).

    Multiplying a multiset by the unit u sends the count vector c to
    c' with c'[i] = c[u^{-1} i mod n].
    """
    us = units(n)
    perms = []
    for u in us:
        if u % n == 1 % n:
            continue
        inv = pow(u, -1, n)
        perms.append(tuple((inv * i) % n for i in range(n)))
    return perms, len(us)


def _orbit_cover(counts: list[int], perms, phi: int) -> int | None:
    """Orbit size if counts is the canonical representative, else None.

    Sorted multisets compare lexicographically; on count vectors that
    means the first value with a differing count decides, and the larger
    count wins (more copies of the smaller value).
    """
    stab = 1
    for perm in perms:
        verdict = 0
        for i, p in enumerate(perm):
            a = counts[p]
            b = counts[i]
            if a != b:
                verdict = -1 if a > b else 1
                break
        if verdict < 0:
            return None
        if verdict == 0:
            stab += 1
    return phi // stab


def _leaf_min_zero_length(by_len: list[int], limit: int) -> int | None:
    # kept module-level so tests can fault-inject the scan path
    for length in range(1, limit + 1):
        if by_len[length] & 1:
            return length
    return None


def _add_violation(bucket: dict, law: str, sequence, observed, expected) -> None:
    bucket["totals"][law] = bucket["totals"].get(law, 0) + 1
    rows = bucket["rows"].setdefault(law, [])
    if len(rows) < VIOLATION_LIMIT:
        rows.append(
            {
                "law": law,
                "sequence": list(sequence),
                "observed": observed,
                "expected": expected,
            }
        )


def _new_violation_bucket() -> dict:
    return {"rows": {}, "totals": {}}


def _merge_violation_buckets(buckets: list[dict]) -> dict:
    out = _new_violation_bucket()
    for b in buckets:
        for law, total in b["totals"].items():
            out["totals"][law] = out["totals"].get(law, 0) + total
        for law, rows in b["rows"].items():
            dst = out["rows"].setdefault(law, [])
            for row in rows:
                if len(dst) < VIOLATION_LIMIT:
                    dst.append(row)
    return out


def _emit_violations(bucket: dict, laws: tuple[str, ...]) -> tuple[list[dict], int]:
    rows: list[dict] = []
    total = 0
    for law in laws:
        total += bucket["totals"].get(law, 0)
        rows.extend(bucket["rows"].get(law, []))
    rows.sort(key=lambda r: (r["law"], tuple(r["sequence"]), str(r["observed"])))
    return rows[:VIOLATION_LIMIT], total


# ---------------------------------------------------------------------------
# the length-n scan over Z_n: one pass feeds four checkers


def _scan_length_n(args: tuple) -> dict:
    """Verify every length-n multiset over Z_n with first entry in [lo, hi).

    For each instance the minimal zero-sum length m and the support size
    are computed (cardinality-resolved subset-sum bitmasks), and all the
    length-n statements are evaluated at once.
    """
    n, lo_hi, orbit = args
    lo, hi = lo_hi
    length = n
    full = (1 << n) - 1
    perms, phi = _unit_perms(n) if orbit else ([], 1)
    allowed_s = {0, 1, n - 2, n - 1}
    out = {
        "instances": 0,
        "canonical": 0,
        "slice_nm1": 0,
        "slice_nm2": 0,
        "full_instances": 0,
        "full_witnesses": [],
        "realized": {},
        "first_tight": {},
        "viol": _new_violation_bucket(),
    }
    viol = out["viol"]
    combo: list[int] = []

    def leaf(by_len: list[int]) -> None:
        counts = [0] * n
        for v in combo:
            counts[v] += 1
        if orbit:
            cover = _orbit_cover(counts, perms, phi)
            if cover is None:
                return
        else:
            cover = 1
        out["instances"] += cover
        out["canonical"] += 1
        supp = len(set(combo))
        m = _leaf_min_zero_length(by_len, length)
        if m is None:
            # no zero-sum subsequence at all; the short-bound law cannot hold
            _add_violation(viol, "short-zero-sum-bound", combo, "infinity", n - supp + 1)
            return
        s = n - m
        if supp > s + 1:
            _add_violation(viol, "support-bound", combo, supp, s + 1)
        if n >= 3:
            if m == n - 1:
                out["slice_nm1"] += cover
                if supp != 2:
                    _add_violation(viol, "min-length-n-minus-1-support", combo, supp, 2)
            elif m == n - 2:
                out["slice_nm2"] += cover
                if supp > 3:
                    _add_violation(viol, "min-length-n-minus-2-support", combo, supp, 3)
        if m == n:
            out["full_instances"] += cover
            if len(out["full_witnesses"]) < WITNESS_LIMIT:
                out["full_witnesses"].append(list(combo))
            if supp != 1 or gcd(combo[0], n) != 1:
                _add_violation(viol, "full-length-constant", combo, supp, 1)
        if m > n - supp + 1:
            _add_violation(viol, "short-zero-sum-bound", combo, m, n - supp + 1)
        if supp == s + 1:
            # the support bound is tight here; structure laws apply
            out["realized"][s] = out["realized"].get(s, 0) + cover
            if s not in out["first_tight"]:
                out["first_tight"][s] = list(combo)
            if s not in allowed_s:
                _add_violation(viol, "tight-support-range", combo, s, "{0,1,n-2,n-1}")
            if max(counts) < n - s:
                _add_violation(viol, "tight-support-multiplicity", combo, max(counts), n - s)
            if s == 1 and n >= 4:
                a = counts.index(n - 1) if n - 1 in counts else -1
                ok = False
                if a >= 0:
                    b = next(v for v in combo if v != a) if supp == 2 else a
                    ok = b == (2 * a) % n and gcd(a, n) == 1
                if not ok:
                    _add_violation(
                        viol, "tight-support-shape", combo, "other", "a^(n-1)+(2a), ord(a)=n"
                    )

    def rec(lo_v: int, depth: int, by_len: list[int]) -> None:
        if depth == length:
            leaf(by_len)
            return
        cap = min(depth + 1, length)
        for v in range(lo_v, n):
            nb = by_len[:]
            if v:
                shift_r = n - v
                for lng in range(cap, 1, -1):
                    p = nb[lng - 1]
                    if p:
                        nb[lng] |= ((p << v) | (p >> shift_r)) & full
            else:
                for lng in range(cap, 1, -1):
                    if nb[lng - 1]:
                        nb[lng] |= nb[lng - 1]
            nb[1] |= 1 << v
            combo.append(v)
            rec(v, depth + 1, nb)
            combo.pop()

    base = [0] * (length + 1)
    for first in range(lo, hi):
        nb = base[:]
        nb[1] = 1 << first
        combo.append(first)
        rec(first, 1, nb)
        combo.pop()
    return out


def _merge_length_n(bundles: list[dict]) -> dict:
    out = {
        "instances": 0,
        "canonical": 0,
        "slice_nm1": 0,
        "slice_nm2": 0,
        "full_instances": 0,
        "full_witnesses": [],
        "realized": {},
        "first_tight": {},
        "viol": _merge_violation_buckets([b["viol"] for b in bundles]),
    }
    for b in bundles:
        for key in ("instances", "canonical", "slice_nm1", "slice_nm2", "full_instances"):
            out[key] += b[key]
        for w in b["full_witnesses"]:
            if len(out["full_witnesses"]) < WITNESS_LIMIT:
                out["full_witnesses"].append(w)
        for s, cover in b["realized"].items():
            out["realized"][s] = out["realized"].get(s, 0) + cover
        for s, w in b["first_tight"].items():
            out["first_tight"].setdefault(s, w)
    return out


# scan cache: the four length-n checkers share one enumeration pass
_scan_cache: dict[tuple, dict] = {}


def clear_caches() -> None:
    """Drop memoized scan bundles (test isolation around fault injection)."""
    _scan_cache.clear()


def _length_n_bundle(n: int, orbit: bool, shards: int, budget: int | None) -> dict:
    key = ("length-n", n, orbit, shards)
    if key in _scan_cache:
        return _scan_cache[key]
    space = comb(2 * n - 1, n)
    cap = _effective_budget(budget)
    if space > cap:
        raise BudgetExceededError(f"raw space C({2*n-1},{n}) = {space} exceeds budget {cap}")
    chunks = _split_range(0, n, shards)
    bundles = _run_workers(_scan_length_n, [(n, c, orbit) for c in chunks], shards)
    merged = _merge_length_n(bundles)
    # orbit sizes must account for the raw space exactly
    if merged["instances"] != space:
        raise RuntimeError(f"enumeration covered {merged['instances']} of {space} multisets")
    _scan_cache[key] = merged
    return merged


def _resolve_orbit(orbit_reduced: bool | None, cyclic_ok: bool = True) -> bool:
    if orbit_reduced is None:
        return cyclic_ok
    if orbit_reduced and not cyclic_ok:
        raise UnsupportedSymmetryError("orbit reduction needs a single cyclic factor")
    return orbit_reduced


# ---------------------------------------------------------------------------
# the four length-n checkers


def verify_thm_main(
    n: int,
    *,
    orbit_reduced: bool | None = None,
    shards: int = 1,
    budget: int | None = None,
) -> VerificationReport:
    """Support bound: length-n S over Z_n with finite minimal zero-sum
    length n-s has at most s+1 distinct entries.  The s=1 slice must hit
    exactly 2 distinct entries and the s=2 slice at most 3 (both n >= 3).
    """
    if n < 2:
        raise ValueError("need n >= 2")
    orbit = _resolve_orbit(orbit_reduced)
    t0 = time.perf_counter()
    bundle = _length_n_bundle(n, orbit, shards, budget)
    rows, total = _emit_violations(
        bundle["viol"],
        ("support-bound", "min-length-n-minus-1-support", "min-length-n-minus-2-support"),
    )
    details = {
        "canonical_instances": bundle["canonical"],
        "slices": {
            "min-length-n-minus-1": {
                "instances": bundle["slice_nm1"],
                "violations": bundle["viol"]["totals"].get("min-length-n-minus-1-support", 0),
            },
            "min-length-n-minus-2": {
                "instances": bundle["slice_nm2"],
                "violations": bundle["viol"]["totals"].get("min-length-n-minus-2-support", 0),
            },
        },
    }
    return VerificationReport(
        statement_id="support-bound",
        parameters={"n": n},
        instances_checked=bundle["instances"],
        orbit_reduced=orbit,
        violations=rows,
        violations_total=total,
        details=details,
        elapsed_ms=int((time.perf_counter() - t0) * 1000),
    )


def verify_prop_all_equal(
    n: int,
    *,
    orbit_reduced: bool | None = None,
    shards: int = 1,
    budget: int | None = None,
) -> VerificationReport:
    """Full-length case: minimal zero-sum length exactly n forces a
    constant sequence g^n with g of order n."""
    if n < 1:
        raise ValueError("need n >= 1")
    orbit = _resolve_orbit(orbit_reduced)
    t0 = time.perf_counter()
    bundle = _length_n_bundle(n, orbit, shards, budget)
    rows, total = _emit_violations(bundle["viol"], ("full-length-constant",))
    details = {
        "canonical_instances": bundle["canonical"],
        "matching_instances": bundle["full_instances"],
        "witnesses": bundle["full_witnesses"],
    }
    return VerificationReport(
        statement_id="full-length-constant",
        parameters={"n": n},
        instances_checked=bundle["instances"],
        orbit_reduced=orbit,
        violations=rows,
        violations_total=total,
        details=details,
        elapsed_ms=int((time.perf_counter() - t0) * 1000),
    )


def verify_extremal_structure(
    n: int,
    *,
    orbit_reduced: bool | None = None,
    shards: int = 1,
    budget: int | None = None,
) -> VerificationReport:
    """Structure of instances where the support bound is tight.

    Over instances with minimal zero-sum length n-s and exactly s+1
    distinct entries: s is confined to {0, 1, n-2, n-1}; some entry has
    multiplicity at least n-s; and for s=1, n >= 4 the sequence is
    a^(n-1) together with 2a for a generator a.
    """
    if n < 2:
        raise ValueError("need n >= 2")
    orbit = _resolve_orbit(orbit_reduced)
    t0 = time.perf_counter()
    bundle = _length_n_bundle(n, orbit, shards, budget)
    rows, total = _emit_violations(
        bundle["viol"],
        ("tight-support-range", "tight-support-multiplicity", "tight-support-shape"),
    )
    details = {
        "canonical_instances": bundle["canonical"],
        "realized_s": {str(s): c for s, c in sorted(bundle["realized"].items())},
        "witnesses": {str(s): w for s, w in sorted(bundle["first_tight"].items())},
    }
    return VerificationReport(
        statement_id="extremal-structure",
        parameters={"n": n},
        instances_checked=bundle["instances"],
        orbit_reduced=orbit,
        violations=rows,
        violations_total=total,
        details=details,
        elapsed_ms=int((time.perf_counter() - t0) * 1000),
    )


def verify_corollary_short_zero_sum(
    n: int,
    *,
    orbit_reduced: bool | None = None,
    shards: int = 1,
    budget: int | None = None,
) -> VerificationReport:
    """Support forces short zero-sums: a length-n sequence over Z_n with
    s distinct entries has a zero-sum subsequence of length <= n-s+1."""
    if n < 1:
        raise ValueError("need n >= 1")
    orbit = _resolve_orbit(orbit_reduced)
    t0 = time.perf_counter()
    bundle = _length_n_bundle(n, orbit, shards, budget)
    rows, total = _emit_violations(bundle["viol"], ("short-zero-sum-bound",))
    details = {"canonical_instances": bundle["canonical"]}
    return VerificationReport(
        statement_id="short-zero-sum",
        parameters={"n": n},
        instances_checked=bundle["instances"],
        orbit_reduced=orbit,
        violations=rows,
        violations_total=total,
        details=details,
        elapsed_ms=int((time.perf_counter() - t0) * 1000),
    )


# ---------------------------------------------------------------------------
# zero-sum-free scan: sum-set growth laws


def _scan_zero_sum_free(args: tuple) -> dict:
    """Enumerate zero-sum-free multisets (length <= k_max) over a group.

    DFS over non-decreasing element indices, first index in [lo, hi);
    the running sum set kills any branch that acquires zero.  Each node
    is an instance: the growth laws are checked against every
    one-element-removed parent.
    """
    factors, k_max, lo_hi, orbit = args
    lo, hi = lo_hi
    group = AbelianGroup(factors)
    order = group.order
    elements = list(group.elements())
    add = [
        [group.index_of(element_add(group, a, b)) for b in elements] for a in elements
    ]
    perms, phi = _unit_perms(order) if orbit else ([], 1)
    out = {"instances": 0, "canonical": 0, "viol": _new_violation_bucket()}
    viol = out["viol"]
    seq: list[int] = []

    def sigma_of(values: list[int]) -> set[int]:
        acc: set[int] = set()
        for v in values:
            acc |= {add[w][v] for w in acc}
            acc.add(v)
        return acc

    def node(sigma: set[int]) -> None:
        if orbit:
            counts = [0] * order
            for v in seq:
                counts[v] += 1
            cover = _orbit_cover(counts, perms, phi)
            if cover is None:
                return
        else:
            cover = 1
        out["instances"] += cover
        out["canonical"] += 1
        k = len(seq)
        supp = len(set(seq))
        size = len(sigma)
        if size < k:
            _add_violation(viol, "sigma-size-at-least-k", seq, size, k)
        if size < k - 1 + supp:
            _add_violation(viol, "sigma-size-support-bound", seq, size, k - 1 + supp)
        if size == k and supp != 1:
            _add_violation(viol, "sigma-size-k-constant", seq, supp, 1)
        if k >= 2:
            for v in sorted(set(seq)):
                parent = list(seq)
                parent.remove(v)
                parent_size = len(sigma_of(parent))
                if size < parent_size + 1:
                    _add_violation(viol, "sigma-growth-step", seq, size, parent_size + 1)

    def rec(lo_i: int, sigma: set[int]) -> None:
        start = max(lo_i, 1)
        for gi in range(start, order):
            grown = {add[w][gi] for w in sigma}
            grown.add(gi)
            if 0 in grown:
                continue
            grown |= sigma
            seq.append(gi)
            node(grown)
            if len(seq) < k_max:
                rec(gi, grown)
            seq.pop()

    for first in range(max(lo, 1), hi):
        grown = {first}
        if 0 in grown:
            continue
        seq.append(first)
        node(grown)
        if k_max > 1:
            rec(first, grown)
        seq.pop()
    return out


def verify_sumset_lemmas(
    group: AbelianGroup,
    k_max: int = 6,
    *,
    orbit_reduced: bool | None = None,
    shards: int = 1,
    budget: int | None = None,
) -> VerificationReport:
    """Sum-set growth over zero-sum-free multisets of length k <= k_max:
    at least k sums, at least k-1+supp sums, one-step growth of at least
    one per appended entry, and exactly k sums only for constant input."""
    if k_max < 1:
        raise ValueError("need k_max >= 1")
    order = group.order
    if order < 2:
        raise ValueError("need a nontrivial group")
    orbit = _resolve_orbit(orbit_reduced, cyclic_ok=group.rank == 1)
    cap = _effective_budget(budget)
    space = sum(comb(order - 2 + k, k) for k in range(1, k_max + 1))
    if space > cap:
        raise BudgetExceededError(f"raw space {space} exceeds budget {cap}")
    t0 = time.perf_counter()
    key = ("zero-sum-free", group.factors, k_max, orbit, shards)
    if key in _scan_cache:
        bundle = _scan_cache[key]
    else:
        chunks = _split_range(1, order, shards)
        bundles = _run_workers(
            _scan_zero_sum_free,
            [(group.factors, k_max, c, orbit) for c in chunks],
            shards,
        )
        bundle = {"instances": 0, "canonical": 0, "viol": _merge_violation_buckets([b["viol"] for b in bundles])}
        for b in bundles:
            bundle["instances"] += b["instances"]
            bundle["canonical"] += b["canonical"]
        _scan_cache[key] = bundle
    rows, total = _emit_violations(
        bundle["viol"],
        (
            "sigma-size-at-least-k",
            "sigma-size-support-bound",
            "sigma-growth-step",
            "sigma-size-k-constant",
        ),
    )
    return VerificationReport(
        statement_id="sumset-growth",
        parameters={"group": str(group), "k_max": k_max},
        instances_checked=bundle["instances"],
        orbit_reduced=orbit,
        violations=rows,
        violations_total=total,
        details={"canonical_instances": bundle["canonical"]},
        elapsed_ms=int((time.perf_counter() - t0) * 1000),
    )


# ---------------------------------------------------------------------------
# exact-cardinality zero-sums in windows of length 2n-1


def _scan_egz(args: tuple) -> dict:
    n, lo_hi, orbit = args
    lo, hi = lo_hi
    length = 2 * n - 1
    full = (1 << n) - 1
    perms, phi = _unit_perms(n) if orbit else ([], 1)
    out = {"instances": 0, "canonical": 0, "viol": _new_violation_bucket()}
    combo: list[int] = []

    def leaf(by_len: list[int]) -> None:
        if orbit:
            counts = [0] * n
            for v in combo:
                counts[v] += 1
            cover = _orbit_cover(counts, perms, phi)
            if cover is None:
                return
        else:
            cover = 1
        out["instances"] += cover
        out["canonical"] += 1
        if not by_len[n] & 1:
            _add_violation(out["viol"], "exact-n-zero-sum", combo, False, True)

    def rec(lo_v: int, depth: int, by_len: list[int]) -> None:
        if depth == length:
            leaf(by_len)
            return
        cap = min(depth + 1, n)
        for v in range(lo_v, n):
            nb = by_len[:]
            if v:
                shift_r = n - v
                for lng in range(cap, 1, -1):
                    p = nb[lng - 1]
                    if p:
                        nb[lng] |= ((p << v) | (p >> shift_r)) & full
            else:
                for lng in range(cap, 1, -1):
                    if nb[lng - 1]:
                        nb[lng] |= nb[lng - 1]
            nb[1] |= 1 << v
            combo.append(v)
            rec(v, depth + 1, nb)
            combo.pop()

    base = [0] * (n + 1)
    for first in range(lo, hi):
        nb = base[:]
        nb[1] = 1 << first
        combo.append(first)
        rec(first, 1, nb)
        combo.pop()
    return out


def verify_egz(
    n: int,
    *,
    orbit_reduced: bool | None = None,
    shards: int = 1,
    budget: int | None = None,
) -> VerificationReport:
    """Every multiset of 2n-1 residues mod n contains n of them summing
    to zero; the bound is sharp, witnessed by n-1 zeros with n-1 ones."""
    if n < 2:
        raise ValueError("need n >= 2")
    orbit = _resolve_orbit(orbit_reduced)
    cap = _effective_budget(budget)
    space = comb(3 * n - 2, n - 1)
    if space > cap:
        raise BudgetExceededError(f"raw space {space} exceeds budget {cap}")
    t0 = time.perf_counter()
    key = ("egz", n, orbit, shards)
    if key in _scan_cache:
        bundle = _scan_cache[key]
    else:
        chunks = _split_range(0, n, shards)
        bundles = _run_workers(_scan_egz, [(n, c, orbit) for c in chunks], shards)
        bundle = {"instances": 0, "canonical": 0, "viol": _merge_violation_buckets([b["viol"] for b in bundles])}
        for b in bundles:
            bundle["instances"] += b["instances"]
            bundle["canonical"] += b["canonical"]
        if bundle["instances"] != space:
            raise RuntimeError(f"enumeration covered {bundle['instances']} of {space} multisets")
        _scan_cache[key] = bundle
    rows, total = _emit_violations(bundle["viol"], ("exact-n-zero-sum",))
    sharp = [0] * (n - 1) + [1] * (n - 1)
    sharp_ok = not sums.cyclic_zero_sum_of_size(n, sharp, n)
    if not sharp_ok:
        total += 1
        rows = rows + [
            {
                "law": "sharpness-witness",
                "sequence": sharp,
                "observed": "has exact-n zero-sum",
                "expected": "none",
            }
        ]
    details = {
        "canonical_instances": bundle["canonical"],
        "sharpness_witness": sharp,
        "sharpness_confirmed": sharp_ok,
    }
    return VerificationReport(
        statement_id="egz",
        parameters={"n": n, "length": 2 * n - 1},
        instances_checked=bundle["instances"],
        orbit_reduced=orbit,
        violations=rows,
        violations_total=total,
        details=details,
        elapsed_ms=int((time.perf_counter() - t0) * 1000),
    )


# ---------------------------------------------------------------------------
# Davenport constants across all small groups


def _davenport_rows(args: tuple) -> dict:
    lo_hi = args[0]
    lo, hi = lo_hi
    out = {"rows": [], "viol": _new_violation_bucket()}
    for m in range(lo, hi):
        for group in groups_of_order(m):
            result = sums.davenport(group)
            row = {
                "group": str(group),
                "order": m,
                "cyclic": group.is_cyclic,
                "davenport": result.value,
                "witness": str(result.witness),
            }
            out["rows"].append(row)
            if result.value > m:
                _add_violation(out["viol"], "davenport-order-bound", [str(group)], result.value, m)
            if (result.value == m) != group.is_cyclic:
                _add_violation(
                    out["viol"],
                    "davenport-cyclic-equality",
                    [str(group)],
                    result.value,
                    m if group.is_cyclic else f"< {m}",
                )
    return out


def verify_davenport_table(
    max_order: int = DAVENPORT_TABLE_CAP,
    *,
    shards: int = 1,
) -> VerificationReport:
    """Davenport constant never exceeds the group order, with equality
    exactly for cyclic groups; checked for every abelian group of order
    up to max_order."""
    if max_order < 1:
        raise ValueError("need max_order >= 1")
    if max_order > DAVENPORT_TABLE_CAP:
        raise BudgetExceededError(
            f"davenport table capped at order {DAVENPORT_TABLE_CAP}, got {max_order}"
        )
    t0 = time.perf_counter()
    key = ("davenport-table", max_order, shards)
    if key in _scan_cache:
        bundle = _scan_cache[key]
    else:
        chunks = _split_range(1, max_order + 1, shards)
        results = _run_workers(_davenport_rows, [(c,) for c in chunks], shards)
        bundle = {
            "rows": [row for r in results for row in r["rows"]],
            "viol": _merge_violation_buckets([r["viol"] for r in results]),
        }
        _scan_cache[key] = bundle
    rows, total = _emit_violations(
        bundle["viol"], ("davenport-order-bound", "davenport-cyclic-equality")
    )
    return VerificationReport(
        statement_id="davenport-table",
        parameters={"max_order": max_order},
        instances_checked=len(bundle["rows"]),
        orbit_reduced=False,
        violations=rows,
        violations_total=total,
        details={"table": bundle["rows"]},
        elapsed_ms=int((time.perf_counter() - t0) * 1000),
    )


# ---------------------------------------------------------------------------


def verify_all(
    n_max: int,
    *,
    orbit_reduced: bool | None = None,
    shards: int = 1,
    budget: int | None = None,
    k_max: int = 6,
    sumset_n_max: int = 10,
    egz_n_max: int = 6,
    davenport_max_order: int | None = None,
) -> list[VerificationReport]:
    """Run every checker across its full range up to n_max.

    The checker ranges follow each statement's own hypothesis floor; the
    heavyweight families (sum-set growth, exact-cardinality windows) are
    additionally clipped to their own defaults since their spaces grow
    on a different scale.
    """
    if n_max < 2:
        raise ValueError("need n_max >= 2")
    reports: list[VerificationReport] = []
    common = {"orbit_reduced": orbit_reduced, "shards": shards, "budget": budget}
    for n in range(2, n_max + 1):
        reports.append(verify_thm_main(n, **common))
    for n in range(1, n_max + 1):
        reports.append(verify_prop_all_equal(n, **common))
    for n in range(2, n_max + 1):
        reports.append(verify_extremal_structure(n, **common))
    for n in range(1, n_max + 1):
        reports.append(verify_corollary_short_zero_sum(n, **common))
    for n in range(2, min(sumset_n_max, n_max) + 1):
        reports.append(verify_sumset_lemmas(AbelianGroup((n,)), k_max, **common))
    for n in range(2, min(egz_n_max, n_max) + 1):
        reports.append(verify_egz(n, **common))
    dav = davenport_max_order if davenport_max_order is not None else min(n_max, DAVENPORT_TABLE_CAP)
    reports.append(verify_davenport_table(dav, shards=shards))
    return reports
