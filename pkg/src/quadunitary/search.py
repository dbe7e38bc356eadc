"""Search for n-powerfully unitarily t-perfect elements: i_star(z, n) = t.

Two complete strategies over the same hit set:

* Elements mode walks every sector element with 2 <= norm <= max_norm using
  an exact coordinate box per norm interval.  Unbiased and simple; the
  reference strategy.
* Signatures mode runs a depth-first search over factorization shapes
  (which rational primes occur, how their exponents sit on the primes above)
  with branch-and-bound pruning.  Partial index values grow strictly, so a
  partial product above t is dead; a count-capped envelope bound on the best
  possible remaining product detects branches that cannot reach t; and for
  rational t, shapes whose value is irrational by the parity criterion are
  skipped.  All pruning is conservative: bounds only ever overestimate.

Both modes stream records in (norm, coordinates) order, support worker pools
with a deterministic merge (output is byte-identical for any job count), and
persist completed work units to a JSON-lines checkpoint that can resume into
an identical run.  Every reported hit is re-verified through the literal
divisor-sum oracle before it is returned.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import isqrt

from .factoring import factor_element
from .primes import legendre, prime_above, primes_up_to
from .radicals import RadicalValue
from .rings import DomainError, QInt, Ring, canonical_associate, format_element, ring
from .udf import delta_star_oracle, i_star

CHECKPOINT_SCHEMA = 1


class CheckpointError(RuntimeError):
    """Checkpoint file is corrupt or belongs to a different search."""


@dataclass
class SearchConfig:
    """Parameters of one search run.

    t is the exact rational target (> 1); n the positive power; max_norm the
    inclusive norm ceiling.  jobs > 1 enables a process pool; identical output
    is produced for any job count.  verbose additionally emits non-hits
    (elements mode only).
    """

    ring: Ring
    n: int
    t: Fraction
    max_norm: int
    mode: str = "elements"
    jobs: int = 1
    checkpoint_path: str | None = None
    verbose: bool = False
    interval_size: int = 1 << 16

    def __post_init__(self) -> None:
        self.t = Fraction(self.t)
        if self.mode not in ("elements", "signatures"):
            raise DomainError(f"unknown search mode {self.mode!r}")
        if self.n < 1:
            raise DomainError("power n must be a positive integer")
        if self.t <= 1:
            raise DomainError("target t must exceed 1")
        if self.max_norm < 2:
            raise DomainError("max_norm must be at least 2")
        if self.jobs < 1:
            raise DomainError("jobs must be at least 1")


@dataclass(frozen=True)
class SearchRecord:
    z: QInt
    norm: int
    value: RadicalValue
    is_hit: bool

    def to_json_dict(self) -> dict:
        return {
            "z": format_element(self.z),
            "norm": self.norm,
            "istar": self.value.to_json_terms(),
            "hit": self.is_hit,
        }


@dataclass(frozen=True)
class SigEntry:
    """One rational prime's shape: exponents on the primes above it.

    alphas is (alpha,) for inert and ramified primes and (a1, a2) with
    a1 >= a2 >= 0, a1 >= 1 for split primes; (a1, a2) is unordered shape
    data, so an asymmetric pair materializes to two witness elements.
    """

    p: int
    kind: str
    alphas: tuple[int, ...]


@dataclass(frozen=True)
class Signature:
    ring_d: int
    n: int
    entries: tuple[SigEntry, ...]

    def norm(self) -> int:
        total = 1
        for e in self.entries:
            weight = 2 if e.kind == "inert" else 1
            total *= e.p ** (weight * sum(e.alphas))
        return total

    def value(self) -> Fraction:
        out = Fraction(1)
        for e in self.entries:
            for alpha in e.alphas:
                if alpha:
                    if e.kind == "inert":
                        q = e.p ** (alpha * self.n)
                    else:
                        q = e.p ** (alpha * self.n // 2)
                    out *= Fraction(q + 1, q)
        return out

    def witnesses(self, r: Ring) -> list[QInt]:
        """All canonical elements with this shape, sorted by coordinates."""
        options: list[list[QInt]] = []
        for e in self.entries:
            pc = prime_above(e.p, r)
            if e.kind == "inert":
                options.append([r.element(e.p) ** e.alphas[0]])
            elif e.kind == "ramified":
                options.append([pc.pi ** e.alphas[0]])
            else:
                a1, a2 = e.alphas
                assert pc.pi_bar is not None
                opts = [pc.pi**a1 * pc.pi_bar**a2]
                if a1 != a2:
                    opts.append(pc.pi**a2 * pc.pi_bar**a1)
                options.append(opts)
        outs = {_product(r, combo) for combo in _combinations(options)}
        return sorted(outs, key=lambda z: (z.norm(), z.a, z.b))

    def to_json_dict(self) -> dict:
        return {
            "entries": [[e.p, e.kind, list(e.alphas)] for e in self.entries],
            "norm": self.norm(),
            "value": str(self.value()),
        }


def _combinations(options: list[list[QInt]]):
    if not options:
        yield ()
        return
    for head in options[0]:
        for rest in _combinations(options[1:]):
            yield (head,) + rest


def _product(r: Ring, parts) -> QInt:
    z = r.one()
    for part in parts:
        z = z * part
    return canonical_associate(z)[0]


# ---------------------------------------------------------------------------
# element enumeration

def _interval_points(r: Ring, lo: int, hi: int) -> list[tuple[int, int, int]]:
    """All sector elements with lo <= norm <= hi as sorted (norm, a, b)."""
    d = r.d
    out: list[tuple[int, int, int]] = []
    if d == -1:
        # sector: a >= 1, b >= 0; norm a^2 + b^2
        for b in range(isqrt(hi) + 1):
            rem = hi - b * b
            if rem < 1:
                break
            need = lo - b * b
            amin = isqrt(need - 1) + 1 if need > 1 else 1
            for a in range(amin, isqrt(rem) + 1):
                out.append((a * a + b * b, a, b))
    elif d == -3:
        # sector: a >= 1, b >= 0; norm a^2 + ab + b^2 = ((2a+b)^2 + 3b^2)/4
        b = 0
        while 3 * b * b <= 4 * hi:
            u_hi = isqrt(4 * hi - 3 * b * b)
            a_max = (u_hi - b) // 2
            s_lo = 4 * lo - 3 * b * b
            if s_lo <= 0:
                a_min = 1
            else:
                u_min = isqrt(s_lo - 1) + 1
                a_min = max(1, (u_min - b + 1) // 2)
            for a in range(a_min, a_max + 1):
                out.append((a * a + a * b + b * b, a, b))
            b += 1
    elif not r.half_integral:
        # d = -2; sector: b > 0 any a, or b = 0 with a >= 1; norm a^2 + 2b^2
        a0min = isqrt(lo - 1) + 1 if lo > 1 else 1
        for a in range(a0min, isqrt(hi) + 1):
            out.append((a * a, a, 0))
        b = 1
        while -d * b * b <= hi:
            rem_hi = hi + d * b * b
            big = isqrt(rem_hi)
            rem_lo = lo + d * b * b
            excl = isqrt(rem_lo - 1) if rem_lo > 0 else -1
            for a in range(-big, big + 1):
                if abs(a) <= excl:
                    continue
                out.append((a * a - d * b * b, a, b))
            b += 1
    else:
        # half-integral, sector arg in [0, pi): b > 0 any a, or b = 0 with a >= 1
        # norm = (u^2 + |d| b^2)/4 with u = 2a + b (u and b share parity)
        a0min = isqrt(lo - 1) + 1 if lo > 1 else 1
        for a in range(a0min, isqrt(hi) + 1):
            out.append((a * a, a, 0))
        b = 1
        while -d * b * b <= 4 * hi:
            u_hi = isqrt(4 * hi + d * b * b)
            s_lo = 4 * lo + d * b * b
            excl = isqrt(s_lo - 1) if s_lo > 0 else -1
            u = -u_hi + ((-u_hi - b) % 2)
            while u <= u_hi:
                if abs(u) > excl:
                    out.append(((u * u - d * b * b) // 4, (u - b) // 2, b))
                u += 2
            b += 1
    out.sort()
    return out


def iter_sector_elements(r: Ring, lo: int, hi: int, chunk: int = 1 << 16):
    """Yield (norm, z) for every sector element with lo <= norm(z) <= hi, sorted."""
    if lo < 1:
        lo = 1
    start = lo
    while start <= hi:
        end = min(start + chunk - 1, hi)
        for norm, a, b in _interval_points(r, start, end):
            yield norm, QInt(r, a, b)
        start = end + 1


# ---------------------------------------------------------------------------
# shared caches (populated in the parent so forked workers inherit them)

@lru_cache(maxsize=8)
def _primes_cached(limit: int) -> tuple[int, ...]:
    return tuple(primes_up_to(limit))


@lru_cache(maxsize=32)
def _envelope_cached(n: int, limit: int) -> tuple[float, ...]:
    # Upper envelope of any single admissible factor at p, across all classes:
    # (1 + p^(-n/2))^2 for even n, (1 + p^(-n))^2 for odd n (parity forces
    # even exponents on primes with irrational absolute value).
    expo = n / 2 if n % 2 == 0 else float(n)
    return tuple((1.0 + p**-expo) ** 2 for p in _primes_cached(limit))


@lru_cache(maxsize=None)
def _kind_cached(d: int, p: int) -> str:
    r = ring(d)
    if p == 2:
        return r.two_behavior
    if d % p == 0:
        return "ramified"
    return "split" if legendre(d, p) == 1 else "inert"


# ---------------------------------------------------------------------------
# signature DFS

def _extension_bound(primes: tuple[int, ...], env: tuple[float, ...], j: int, budget: int) -> float:
    """Safe overestimate of the best remaining factor product from prime index j.

    Any feasible extension uses distinct primes >= primes[j] whose norm costs
    multiply into the budget, and every cost is at least the prime itself, so
    the cheapest m extension primes are the next m in order.  The envelope is
    decreasing, so the product of envelopes over that maximal cheap prefix
    dominates every feasible extension.  Nonincreasing in j.
    """
    total = 1.0
    cheap = 1
    n = len(primes)
    while j < n:
        q = primes[j]
        if cheap * q > budget:
            break
        cheap *= q
        total *= env[j]
        j += 1
    return total * 1.000001


def _configs(p: int, kind: str, n: int, budget: int):
    """Admissible exponent shapes for prime p within the norm budget.

    Yields (alphas, norm_cost, factor).  For rational targets, exponents on
    primes with irrational absolute value must keep alpha * n even, so odd n
    restricts those alphas to even values (the parity criterion).
    """
    if kind == "inert":
        unit_cost = p * p
        alpha, cost = 1, unit_cost
        while cost <= budget:
            q = p ** (alpha * n)
            yield (alpha,), cost, Fraction(q + 1, q)
            alpha += 1
            cost *= unit_cost
    elif kind == "ramified":
        step = 2 if n % 2 else 1
        alpha = step
        cost = p**alpha
        while cost <= budget:
            q = p ** (alpha * n // 2)
            yield (alpha,), cost, Fraction(q + 1, q)
            alpha += step
            cost = p**alpha
    else:
        step = 2 if n % 2 else 1
        a1 = step
        while p**a1 <= budget:
            a2 = 0
            while a2 <= a1 and p ** (a1 + a2) <= budget:
                q1 = p ** (a1 * n // 2)
                f = Fraction(q1 + 1, q1)
                if a2:
                    q2 = p ** (a2 * n // 2)
                    f *= Fraction(q2 + 1, q2)
                yield (a1, a2), p ** (a1 + a2), f
                a2 += step
            a1 += step


def _dfs_signatures(
    d: int,
    n: int,
    targets: tuple[Fraction, ...],
    max_norm: int,
    j_start: int,
    j_end: int,
) -> list[tuple[tuple, ...]]:
    """Hit signatures whose first prime index lies in [j_start, j_end), DFS order."""
    primes = _primes_cached(max_norm)
    env = _envelope_cached(n, max_norm)
    target_set = set(targets)
    max_t = max(targets)
    # Prune guard errs toward exploring: a branch survives unless its safe
    # overestimate falls clearly below the smallest target.
    guard = float(min(targets)) * (1.0 - 1e-9)
    out: list[tuple[tuple, ...]] = []

    def walk(j: int, j_cap: int, budget: int, value: Fraction, entries: tuple) -> None:
        fv = float(value)
        while j < j_cap:
            p = primes[j]
            if p > budget:
                break
            if fv * _extension_bound(primes, env, j, budget) < guard:
                break
            kind = _kind_cached(d, p)
            for alphas, cost, factor in _configs(p, kind, n, budget):
                child = value * factor
                if child > max_t:
                    continue
                ents = entries + ((p, kind, alphas),)
                if child in target_set:
                    out.append(ents)
                child_budget = budget // cost
                if child_budget >= 2 and j + 1 < len(primes):
                    if float(child) * _extension_bound(primes, env, j + 1, child_budget) >= guard:
                        walk(j + 1, len(primes), child_budget, child, ents)
            j += 1

    walk(j_start, min(j_end, len(primes)), max_norm, Fraction(1), ())
    return out


def _root_limit(n: int, targets: tuple[Fraction, ...], max_norm: int) -> int:
    """First prime index whose whole subtree is below every target; DFS stops there."""
    primes = _primes_cached(max_norm)
    env = _envelope_cached(n, max_norm)
    guard = float(min(targets)) * (1.0 - 1e-9)
    for j, p in enumerate(primes):
        if p > max_norm or _extension_bound(primes, env, j, max_norm) < guard:
            return j
    return len(primes)


# ---------------------------------------------------------------------------
# task plumbing (top level so worker processes can import them)

def _elements_task(payload: tuple) -> list[dict]:
    d, n, t_text, lo, hi, verbose = payload
    r = ring(d)
    t = Fraction(t_text)
    out = []
    for norm, z in iter_sector_elements(r, lo, hi):
        fac = factor_element(z)
        value = i_star(z, n, fac)
        hit = value == t
        if hit or verbose:
            out.append(
                {
                    "z": format_element(z),
                    "norm": norm,
                    "istar": value.to_json_terms(),
                    "hit": hit,
                }
            )
    return out


def _signatures_task(payload: tuple) -> list[dict]:
    d, n, target_texts, max_norm, j0, j1 = payload
    targets = tuple(Fraction(s) for s in target_texts)
    hits = _dfs_signatures(d, n, targets, max_norm, j0, j1)
    dicts = []
    for ents in hits:
        sig = Signature(d, n, tuple(SigEntry(p, kind, tuple(al)) for p, kind, al in ents))
        dicts.append(sig.to_json_dict())
    return dicts


def _run_task(args: tuple) -> list[dict]:
    kind, payload = args
    return _elements_task(payload) if kind == "elements" else _signatures_task(payload)


# ---------------------------------------------------------------------------
# checkpointing

def _config_echo(cfg: SearchConfig) -> dict:
    echo = {
        "d": cfg.ring.d,
        "n": cfg.n,
        "t": str(cfg.t),
        "max_norm": cfg.max_norm,
        "mode": cfg.mode,
        "verbose": cfg.verbose,
        "interval_size": cfg.interval_size,
    }
    targets = getattr(cfg, "targets", None)
    if targets is not None:
        echo["targets"] = [str(t) for t in targets]
    return echo


def _load_checkpoint(path: str, cfg: SearchConfig) -> dict[str, list]:
    if not os.path.exists(path):
        return {}
    done: dict[str, list] = {}
    with open(path, "r", encoding="utf-8") as fh:
        lines = fh.read().split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        return {}
    try:
        header = json.loads(lines[0])
    except json.JSONDecodeError as exc:
        raise CheckpointError(f"corrupt checkpoint header in {path}: {exc}") from exc
    if header.get("kind") != "quadunitary-checkpoint":
        raise CheckpointError(f"{path} is not a search checkpoint")
    if header.get("schema_version") != CHECKPOINT_SCHEMA:
        raise CheckpointError(
            f"checkpoint schema {header.get('schema_version')} unsupported "
            f"(expected {CHECKPOINT_SCHEMA})"
        )
    if header.get("config") != _config_echo(cfg):
        raise CheckpointError(f"{path} was written by a different search configuration")
    for i, line in enumerate(lines[1:], start=2):
        try:
            entry = json.loads(line)
            key = json.dumps(entry["task"])
            done[key] = entry["results"]
        except (json.JSONDecodeError, KeyError, TypeError) as exc:
            raise CheckpointError(f"corrupt checkpoint entry at {path}:{i}: {exc}") from exc
    return done


class _CheckpointWriter:
    def __init__(self, path: str | None, cfg: SearchConfig, fresh: bool):
        self.fh = None
        if path is None:
            return
        exists = os.path.exists(path) and not fresh
        self.fh = open(path, "a", encoding="utf-8")
        if not exists or os.path.getsize(path) == 0:
            header = {
                "schema_version": CHECKPOINT_SCHEMA,
                "kind": "quadunitary-checkpoint",
                "config": _config_echo(cfg),
            }
            self._write_line(header)

    def _write_line(self, obj: dict) -> None:
        assert self.fh is not None
        self.fh.write(json.dumps(obj, separators=(",", ":")) + "\n")
        self.fh.flush()
        os.fsync(self.fh.fileno())

    def record(self, task_key: list, results: list) -> None:
        if self.fh is not None:
            self._write_line({"task": task_key, "results": results})

    def close(self) -> None:
        if self.fh is not None:
            self.fh.close()
            self.fh = None


# ---------------------------------------------------------------------------
# orchestration

def _task_results(cfg: SearchConfig, tasks: list[tuple[list, tuple]]) -> list[list[dict]]:
    """Run (task_key, payload) units, honoring checkpoint and jobs; ordered results."""
    done = _load_checkpoint(cfg.checkpoint_path, cfg) if cfg.checkpoint_path else {}
    writer = _CheckpointWriter(cfg.checkpoint_path, cfg, fresh=not done)
    try:
        pending = [(key, payload) for key, payload in tasks if json.dumps(key) not in done]
        fresh_results: dict[str, list] = {}
        if pending:
            args = [(cfg.mode, payload) for _, payload in pending]
            if cfg.jobs > 1 and len(pending) > 1:
                import multiprocessing

                methods = multiprocessing.get_all_start_methods()
                ctx = multiprocessing.get_context("fork" if "fork" in methods else None)
                with ctx.Pool(cfg.jobs) as pool:
                    results = pool.map(_run_task, args, chunksize=1)
            else:
                results = [_run_task(a) for a in args]
            for (key, _), res in zip(pending, results):
                writer.record(key, res)
                fresh_results[json.dumps(key)] = res
        out = []
        for key, _ in tasks:
            k = json.dumps(key)
            out.append(done.get(k) if k in done else fresh_results[k])
        return out
    finally:
        writer.close()


def _element_tasks(cfg: SearchConfig) -> list[tuple[list, tuple]]:
    tasks = []
    lo = 2
    while lo <= cfg.max_norm:
        hi = min(lo + cfg.interval_size - 1, cfg.max_norm)
        payload = (cfg.ring.d, cfg.n, str(cfg.t), lo, hi, cfg.verbose)
        tasks.append(([lo, hi], payload))
        lo = hi + 1
    return tasks


def _signature_tasks(cfg: SearchConfig, targets: tuple[Fraction, ...]) -> list[tuple[list, tuple]]:
    _primes_cached(cfg.max_norm)
    _envelope_cached(cfg.n, cfg.max_norm)
    limit = _root_limit(cfg.n, targets, cfg.max_norm)
    chunk = 256
    target_texts = tuple(str(t) for t in sorted(targets))
    tasks = []
    j = 0
    while j < limit:
        j1 = min(j + chunk, limit)
        payload = (cfg.ring.d, cfg.n, target_texts, cfg.max_norm, j, j1)
        tasks.append(([j, j1], payload))
        j = j1
    return tasks


def _signature_from_dict(d: int, n: int, data: dict) -> Signature:
    entries = tuple(SigEntry(p, kind, tuple(al)) for p, kind, al in data["entries"])
    return Signature(d, n, entries)


def signature_hits_multi(
    r: Ring,
    n: int,
    targets: tuple[Fraction, ...],
    max_norm: int,
    jobs: int = 1,
    checkpoint_path: str | None = None,
) -> list[Signature]:
    """All hit signatures for any target in `targets`, in deterministic DFS order.

    Equivalent to the union over single-target searches; sharing one tree walk
    keeps theorem sweeps over target ranges affordable.
    """
    targets = tuple(sorted(set(Fraction(t) for t in targets)))
    if not targets or min(targets) <= 1:
        raise DomainError("targets must all exceed 1")
    cfg = SearchConfig(
        ring=r,
        n=n,
        t=targets[0],
        max_norm=max_norm,
        mode="signatures",
        jobs=jobs,
        checkpoint_path=checkpoint_path,
    )
    # the checkpoint echo must identify the whole target tuple, not min alone
    cfg.targets = targets
    tasks = _signature_tasks(cfg, targets)
    results = _task_results(cfg, tasks)
    sigs: list[Signature] = []
    for chunk_results in results:
        for data in chunk_results:
            sigs.append(_signature_from_dict(r.d, n, data))
    return sigs


def search_signatures(cfg: SearchConfig) -> list[Signature]:
    """Hit signatures for cfg.t, deterministic DFS order."""
    tasks = _signature_tasks(cfg, (cfg.t,))
    results = _task_results(cfg, tasks)
    return [
        _signature_from_dict(cfg.ring.d, cfg.n, data)
        for chunk in results
        for data in chunk
    ]


def search_elements(cfg: SearchConfig) -> list[SearchRecord]:
    """Element-by-element search; records in (norm, coordinates) order."""
    tasks = _element_tasks(cfg)
    results = _task_results(cfg, tasks)
    records = []
    for chunk in results:
        for data in chunk:
            records.append(_record_from_dict(cfg.ring, data))
    return records


def _record_from_dict(r: Ring, data: dict) -> SearchRecord:
    z = r.parse(data["z"])
    value = RadicalValue.from_json_terms(data["istar"])
    return SearchRecord(z, data["norm"], value, data["hit"])


def _verify_hit(record: SearchRecord, n: int, t: Fraction) -> None:
    # every reported hit goes back through the literal divisor-sum oracle
    z = record.z
    oracle = delta_star_oracle(z, n)
    expected = RadicalValue.from_rational(t) * RadicalValue.sqrt_power(z.norm(), n)
    if oracle != expected:
        raise AssertionError(
            f"hit {format_element(z)} failed oracle re-verification: "
            f"{oracle} != {expected}"
        )


def run_search(cfg: SearchConfig) -> list[SearchRecord]:
    """Dispatch on mode; always returns records ordered by (norm, a, b).

    Signature hits are materialized to every witness element and re-verified
    through the factor-based index and the divisor-sum oracle.
    """
    if cfg.mode == "elements":
        records = search_elements(cfg)
    else:
        records = []
        for sig in search_signatures(cfg):
            value = sig.value()
            for z in sig.witnesses(cfg.ring):
                rv = i_star(z, cfg.n)
                if rv != value:
                    raise AssertionError(
                        f"witness {format_element(z)} disagrees with signature value"
                    )
                records.append(SearchRecord(z, z.norm(), rv, True))
        records.sort(key=lambda rec: (rec.norm, rec.z.a, rec.z.b))
    for rec in records:
        if rec.is_hit:
            _verify_hit(rec, cfg.n, cfg.t)
    return records


def records_to_json_lines(records: list[SearchRecord]) -> list[str]:
    return [json.dumps(rec.to_json_dict(), separators=(",", ":")) for rec in records]
