"""Batch front end: parse JSON job files, dispatch to the pairing and
multiplicity engines, emit deterministic machine-readable reports, and run
the oracle self-test suites.

Exit codes:
  0  success (all requested routes agree / identity holds / oracles pass)
  1  invalid input or a hypothesis violation (diagnostic names the orbit)
  2  route disagreement or identity violation -- an alarm, never expected

Report JSON is deterministic: keys sorted, no timestamps, and integers with
magnitude above 2^53 serialized as decimal strings so lossy consumers cannot
silently corrupt them.
"""

from __future__ import annotations

import argparse
import itertools
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

from .eigenvalue_orbits import (
    Eigenvalue,
    check_prime_power,
    eig_pow,
    minus_one,
    normalize,
    one,
)
from .lusztig_decomposition import factorized_pairing
from .partitions import partition, partitions_of, sub_partitions
from .reeder_engine import (
    DualTorusPair,
    pair_family,
    reeder_closed_form,
    reeder_direct,
)
from .tori import (
    TorusDatum,
    d_class_count_oracle,
    m_count,
    m_count_oracle,
    make_element,
    p_set,
    restriction_classes,
    torus_factors,
)
from .unipotent_reps import (
    degree,
    ggp_multiplicity,
    make_series,
    unipotent_expansion,
    vc_inner,
)
from .weyl import (
    FClassLabel,
    GroupKind,
    enumerate_f_centralizer,
    f_centralizer_order,
    f_classes,
)

__all__ = ["main"]

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_DISAGREE = 2

_SAFE_INT = 2**53

ROUTES = ("direct", "closed", "factorized")


# ---------------------------------------------------------------------------
# deterministic JSON output


def _jsonable(obj):
    """Recursively convert a report value into plain JSON data with big
    integers as decimal strings."""
    if isinstance(obj, bool):
        return obj
    if isinstance(obj, int):
        return str(obj) if abs(obj) > _SAFE_INT else obj
    if isinstance(obj, Fraction):
        return _jsonable(int(obj)) if obj.denominator == 1 else str(obj)
    if isinstance(obj, Eigenvalue):
        return {"level": obj.level, "exponent": obj.exponent}
    if isinstance(obj, GroupKind):
        return str(obj)
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    return obj


def _emit(report: dict) -> None:
    print(json.dumps(_jsonable(report), sort_keys=True, separators=(",", ":")))


# ---------------------------------------------------------------------------
# job parsing


class JobError(ValueError):
    """Malformed or inconsistent job input."""


def _need(d: dict, key: str, where: str):
    if key not in d:
        raise JobError(f"missing field {key!r} in {where}")
    return d[key]


def _parse_eigenvalue(q: int, d, where: str) -> Eigenvalue:
    if not isinstance(d, dict):
        raise JobError(f"eigenvalue in {where} must be an object with level/exponent")
    level = _need(d, "level", where)
    exponent = _need(d, "exponent", where)
    if not isinstance(level, int) or not isinstance(exponent, int) or level < 1:
        raise JobError(f"bad eigenvalue {d} in {where}")
    return normalize(q, level, exponent)


def _parse_partition(d, where: str):
    if not isinstance(d, list) or not all(isinstance(p, int) for p in d):
        raise JobError(f"{where} must be a list of positive integers")
    try:
        return partition(d)
    except ValueError as exc:
        raise JobError(f"bad partition in {where}: {exc}") from exc


def _parse_torus_side(q: int, d: dict, name: str) -> DualTorusPair:
    family = _need(d, "family", name)
    n = _need(d, "n", name)
    if not isinstance(n, int):
        raise JobError(f"{name}.n must be an integer")
    try:
        kind = GroupKind(family, n, q)
        label = FClassLabel(
            kind,
            _parse_partition(d.get("mu", []), f"{name}.mu"),
            _parse_partition(d.get("lam", []), f"{name}.lam"),
            d.get("split"),
        )
    except ValueError as exc:
        raise JobError(f"invalid torus label for {name}: {exc}") from exc
    T = TorusDatum(label)
    coords_raw = _need(d, "element", name)
    if not isinstance(coords_raw, list):
        raise JobError(f"{name}.element must be a list of eigenvalues")
    coords = [
        _parse_eigenvalue(q, c, f"{name}.element[{i}]")
        for i, c in enumerate(coords_raw)
    ]
    try:
        elem = make_element(T, coords)
    except ValueError as exc:
        raise JobError(f"invalid element for {name}: {exc}") from exc
    return DualTorusPair(T, elem)


def _parse_series_side(q: int, d: dict, name: str):
    family = _need(d, "family", name)
    n = _need(d, "n", name)
    if not isinstance(n, int):
        raise JobError(f"{name}.n must be an integer")
    try:
        kind = GroupKind(family, n, q)
    except ValueError as exc:
        raise JobError(f"invalid group for {name}: {exc}") from exc
    blocks_raw = _need(d, "blocks", name)
    if not isinstance(blocks_raw, list):
        raise JobError(f"{name}.blocks must be a list")
    blocks = []
    for i, b in enumerate(blocks_raw):
        where = f"{name}.blocks[{i}]"
        seed = _parse_eigenvalue(q, _need(b, "seed", where), f"{where}.seed")
        lam = _parse_partition(_need(b, "lambda", where), f"{where}.lambda")
        blocks.append((seed, lam))
    try:
        return make_series(kind, blocks)
    except ValueError as exc:
        raise JobError(f"invalid series for {name}: {exc}") from exc


def _load_job(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            job = json.load(fh)
    except OSError as exc:
        raise JobError(f"cannot read job file: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise JobError(f"malformed JSON: {exc}") from exc
    if not isinstance(job, dict):
        raise JobError("job must be a JSON object")
    q = _need(job, "q", "job")
    if not isinstance(q, int):
        raise JobError("q must be an integer")
    try:
        check_prime_power(q)
    except ValueError as exc:
        raise JobError(str(exc)) from exc
    options = job.get("options", {})
    if not isinstance(options, dict):
        raise JobError("options must be an object")
    return job


# ---------------------------------------------------------------------------
# pair command


def _route_runner(route: str, fam: str, big, small, options: dict):
    if route == "direct":
        return reeder_direct(fam, big, small).value
    if route == "closed":
        return reeder_closed_form(fam, big, small).value
    if route == "factorized":
        padding = options.get("padding")
        if padding is not None:
            padding = _parse_partition(padding, "options.padding")
        theta_seed = options.get("theta_seed", 0)
        if not isinstance(theta_seed, int):
            raise JobError("options.theta_seed must be an integer")
        return factorized_pairing(fam, big, small, padding, theta_seed).value
    raise JobError(f"unknown route {route!r}")


def run_pair(job: dict, routes: list[str], jobs: int) -> tuple[dict, int]:
    q = job["q"]
    options = job.get("options", {})
    big = _parse_torus_side(q, _need(job, "big", "job"), "big")
    small = _parse_torus_side(q, _need(job, "small", "job"), "small")
    try:
        fam = pair_family(big.torus.kind, small.torus.kind)
    except ValueError as exc:
        raise JobError(str(exc)) from exc
    with ThreadPoolExecutor(max_workers=max(1, jobs)) as pool:
        futures = {
            r: pool.submit(_route_runner, r, fam, big, small, options)
            for r in routes
        }
        values = {r: f.result() for r, f in futures.items()}
    if options.get("fault_inject"):
        # test hook: corrupt one route so the disagreement alarm is reachable
        last = routes[-1]
        values[last] = values[last] + 1
    agree = len(set(values.values())) == 1
    report = {
        "command": "pair",
        "pair": fam,
        "routes": values,
        "routes_agree": agree,
        "value": values[routes[0]] if agree else None,
    }
    return report, EXIT_OK if agree else EXIT_DISAGREE


# ---------------------------------------------------------------------------
# multiplicity command


def run_multiplicity(job: dict) -> tuple[dict, int]:
    q = job["q"]
    options = job.get("options", {})
    seed = options.get("seed", 0)
    if not isinstance(seed, int):
        raise JobError("options.seed must be an integer")
    pi = _parse_series_side(q, _need(job, "big", "job"), "big")
    sigma = _parse_series_side(q, _need(job, "small", "job"), "small")
    try:
        rep = ggp_multiplicity(pi, sigma, seed)
    except ValueError as exc:
        raise JobError(str(exc)) from exc
    except AssertionError as exc:
        # the LHS = prod RHS identity failed: an alarm that should never fire
        return {
            "command": "multiplicity",
            "identity_holds": False,
            "error": str(exc),
        }, EXIT_DISAGREE
    fam, trace = rep.signs
    report = {
        "command": "multiplicity",
        "pair": fam,
        "value": rep.value,
        "lhs": rep.value,
        "factors": [{"orbit": key, "m": m} for key, m in rep.breakdown],
        "identity_holds": True,
        "reduction": (
            None
            if trace is None
            else {"corank": trace[0], "lifted_group": str(trace[1])}
        ),
    }
    return report, EXIT_OK


# ---------------------------------------------------------------------------
# oracle command


def _element_pool(T: TorusDatum, limit: int, exclude_pm1: bool):
    """A deterministic supply of torus elements over levels 1..4."""
    q = T.q
    bad = {one(), minus_one(q)}
    pools = []
    for f in torus_factors(T):
        pool = []
        for lev in (1, 2, 3, 4):
            for e in range(q**lev - 1):
                a = normalize(q, lev, e)
                if a in pool or (exclude_pm1 and a in bad):
                    continue
                if eig_pow(q, a, f.order) == one():
                    pool.append(a)
        pools.append(pool[:5])
    return [
        make_element(T, list(c))
        for c in itertools.islice(itertools.product(*pools), limit)
    ]


def _sub_shapes(label: FClassLabel):
    """All proper (mu', lam') shapes contained in the torus label."""
    return [
        (mu_p, lam_p)
        for mu_p in sub_partitions(label.mu)
        for lam_p in sub_partitions(label.lam)
        if sum(mu_p) + sum(lam_p) < label.kind.n
    ]


def _oracle_centralizers(bound: int):
    checks = 0
    for family, cap in (("GL", 6), ("U", 6), ("Sp", 4), ("SOodd", 4),
                        ("SOeven+", 4), ("SOeven-", 4)):
        lo = 1 if not family.startswith("SOeven") else 2
        for n in range(lo, min(bound, cap) + 1):
            for label in f_classes(GroupKind(family, n, 3)):
                if f_centralizer_order(label) != len(enumerate_f_centralizer(label)):
                    raise AssertionError(f"centralizer order mismatch at {label}")
                checks += 1
    return checks


def _small_kinds(bound: int):
    kinds = [GroupKind("GL", n, 3) for n in range(1, min(bound, 3) + 1)]
    kinds += [GroupKind("U", n, 3) for n in range(1, min(bound, 3) + 1)]
    kinds += [GroupKind("Sp", n, 3) for n in range(1, min(bound, 2) + 1)]
    kinds += [GroupKind("SOodd", n, 3) for n in range(1, min(bound, 2) + 1)]
    kinds += [GroupKind("SOeven+", n, 3) for n in range(2, min(bound, 3) + 1)]
    kinds += [GroupKind("SOeven-", n, 3) for n in range(2, min(bound, 3) + 1)]
    return kinds


def _oracle_m_counts(bound: int):
    checks = 0
    for kind in _small_kinds(bound):
        for label in f_classes(kind):
            T = TorusDatum(label)
            for t in _element_pool(T, 3, False):
                for mu_p, lam_p in _sub_shapes(label):
                    for tp, _ in restriction_classes(T, t, mu_p, lam_p):
                        got = m_count(T, t, mu_p, lam_p, tp)
                        want = m_count_oracle(T, t, mu_p, lam_p, tp)
                        if got != want:
                            raise AssertionError(
                                f"M-count mismatch at {label} {mu_p} {lam_p}"
                            )
                        checks += 1
    return checks


def _oracle_p_bijection(bound: int):
    checks = 0
    for kind in _small_kinds(bound):
        for label in f_classes(kind):
            T = TorusDatum(label)
            for t in _element_pool(T, 2, False):
                for mu_p, lam_p in _sub_shapes(label):
                    got = len(p_set(T, t, mu_p, lam_p))
                    want = d_class_count_oracle(T, t, mu_p, lam_p)
                    if got != want:
                        raise AssertionError(
                            f"|P| != #classes(D) at {label} {mu_p} {lam_p}"
                        )
                    checks += 1
    return checks


def _oracle_routes(bound: int):
    checks = 0
    pairs = [
        ("GL", GroupKind("GL", 2, 3), GroupKind("GL", 1, 3)),
        ("U", GroupKind("U", 2, 3), GroupKind("U", 1, 3)),
        ("SO", GroupKind("SOodd", 2, 3), GroupKind("SOeven+", 2, 3)),
        ("SO", GroupKind("SOodd", 2, 3), GroupKind("SOeven-", 2, 3)),
    ]
    limit = 2 if bound <= 2 else 3
    for fam, gk, hk in pairs:
        excl = fam == "SO"
        for lt in f_classes(gk):
            T = TorusDatum(lt)
            for ls in f_classes(hk):
                S = TorusDatum(ls)
                for t in _element_pool(T, limit, excl):
                    for s in _element_pool(S, limit, excl):
                        big, small = DualTorusPair(T, t), DualTorusPair(S, s)
                        d = reeder_direct(fam, big, small).value
                        c = reeder_closed_form(fam, big, small).value
                        f = factorized_pairing(fam, big, small).value
                        if not d == c == f:
                            raise AssertionError(
                                f"route disagreement {fam} {lt} {ls}: {d},{c},{f}"
                            )
                        checks += 1
    return checks


def _oracle_orthonormality(bound: int):
    checks = 0
    for family in ("GL", "U"):
        for n in range(1, min(bound, 3) + 1):
            kind = GroupKind(family, n, 3)
            lams = list(partitions_of(n))
            exps = {lam: unipotent_expansion(kind, lam) for lam in lams}
            for la in lams:
                for lb in lams:
                    want = 1 if la == lb else 0
                    if vc_inner(exps[la], exps[lb]) != want:
                        raise AssertionError(
                            f"orthonormality fails for {kind} {la} {lb}"
                        )
                    checks += 1
    return checks


def _oracle_degrees(bound: int):
    checks = 0
    st = degree(unipotent_expansion(GroupKind("GL", 2, 3), (1, 1)))
    if st != 3:
        raise AssertionError(f"GL_2(F_3) Steinberg degree {st} != 3")
    checks += 1
    for family in ("GL", "U"):
        for n in range(1, min(bound, 4) + 1):
            kind = GroupKind(family, n, 3)
            for lam in partitions_of(n):
                d = degree(unipotent_expansion(kind, lam))
                if d <= 0:
                    raise AssertionError(f"non-positive degree for {kind} {lam}")
                checks += 1
    return checks


ORACLES = (
    ("centralizer_orders", _oracle_centralizers),
    ("m_counts", _oracle_m_counts),
    ("p_bijection", _oracle_p_bijection),
    ("route_agreement", _oracle_routes),
    ("unipotent_orthonormality", _oracle_orthonormality),
    ("degree_positivity", _oracle_degrees),
)

MAX_ORACLE_BOUND = 6


def run_oracle(bound: int) -> tuple[dict, int]:
    if bound < 1 or bound > MAX_ORACLE_BOUND:
        raise JobError(
            f"--oracle-bound must be between 1 and {MAX_ORACLE_BOUND} "
            "(enumeration limits)"
        )
    families = {}
    failures = 0
    for name, fn in ORACLES:
        try:
            checks = fn(bound)
            families[name] = {"status": "pass", "checks": checks}
        except Exception as exc:  # any failure is an alarm, not a crash
            failures += 1
            families[name] = {"status": "fail", "detail": str(exc)}
    report = {
        "command": "oracle",
        "bound": bound,
        "families": families,
        "failures": failures,
    }
    return report, EXIT_OK if failures == 0 else EXIT_DISAGREE


# ---------------------------------------------------------------------------
# entry point


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ggp",
        description=(
            "Exact pairings of Deligne-Lusztig characters and branching "
            "multiplicities for classical group pairs."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_pair = sub.add_parser("pair", help="pair two Deligne-Lusztig characters")
    p_pair.add_argument("--input", required=True, help="JSON job file")
    p_pair.add_argument(
        "--routes",
        default=",".join(ROUTES),
        help=f"comma-separated subset of {{{','.join(ROUTES)}}}",
    )
    p_pair.add_argument(
        "--jobs", type=int, default=1, help="parallel route evaluations"
    )

    p_mult = sub.add_parser(
        "multiplicity", help="branching multiplicity of two series members"
    )
    p_mult.add_argument("--input", required=True, help="JSON job file")
    p_mult.add_argument("--jobs", type=int, default=1, help="accepted, unused")

    p_orc = sub.add_parser("oracle", help="run the self-test invariant suites")
    p_orc.add_argument(
        "--oracle-bound",
        type=int,
        default=2,
        help=f"rank bound for enumerations (1..{MAX_ORACLE_BOUND}, default 2)",
    )
    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "oracle":
            report, code = run_oracle(args.oracle_bound)
        else:
            job = _load_job(args.input)
            if args.command == "pair":
                routes = [r.strip() for r in args.routes.split(",") if r.strip()]
                if not routes or any(r not in ROUTES for r in routes):
                    raise JobError(
                        f"--routes must be a subset of {{{','.join(ROUTES)}}}"
                    )
                if args.jobs < 1:
                    raise JobError("--jobs must be >= 1")
                report, code = run_pair(job, routes, args.jobs)
            else:
                report, code = run_multiplicity(job)
    except (JobError, ValueError) as exc:
        _emit({"error": str(exc)})
        return EXIT_INVALID
    _emit(report)
    return code


if __name__ == "__main__":
    sys.exit(main())
