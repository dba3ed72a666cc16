"""Command line entry point.

Exit codes: 0 all checks pass, 1 a check failed (the report carries the
counterexample), 2 usage or input error, 3 a budgeted search ended without a
conclusion.  Reports are JSON with sorted keys and embed a hash of the
configuration, so identical configuration and seed give byte-identical output.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys

from .analysis import (
    SigmaPair,
    chevalley_matsumoto,
    in_normalizer,
    level_certificate,
    parse_sigma,
    sigma_generator_atoms,
    transporter_check,
)
from .checks import (
    SuiteResult,
    lemma_suites,
    selftest_suites,
    steinberg_suite,
)
from .errors import BudgetExhausted, DomainError, NonUnitError, UnsupportedCaseError
from .forms import bilinear_form_signs, build_pi_form
from .matrices import RMat
from .rep import get_representation, sample_word_rng
from .rings import RingElem, RingSpec, named_ring
from .rng import SplitMix64
from .roots import build_case
from .weights import build_weights


def _canonical_json(data) -> str:
    return json.dumps(data, sort_keys=True, separators=(",", ":"))


def _config_hash(config: dict) -> str:
    return hashlib.sha256(_canonical_json(config).encode()).hexdigest()[:16]


def _report(config: dict, suites: list[SuiteResult] | None = None, **extra) -> dict:
    body = {
        "config": config,
        "config_hash": _config_hash(config),
    }
    if suites is not None:
        body["suites"] = [s.to_json() for s in suites]
    body.update(extra)
    return body


def _emit(report: dict, out: str | None) -> None:
    text = json.dumps(report, sort_keys=True, indent=2)
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    print(text)


def _load_config_file(args: argparse.Namespace) -> None:
    """Fill unset argument values from a JSON config file; flags win."""
    if not getattr(args, "config", None):
        return
    with open(args.config) as fh:
        data = json.load(fh)
    for key, value in data.items():
        if getattr(args, key, None) in (None, False):
            setattr(args, key, value)


def _case_args(args) -> tuple[str, int | None]:
    tag = args.case
    if tag is None:
        raise DomainError("--case is required")
    l = getattr(args, "l", None)
    return tag, int(l) if l is not None else None


def _ring_arg(args) -> RingSpec:
    if getattr(args, "ring", None) is None:
        raise DomainError("--ring is required")
    return named_ring(args.ring) if isinstance(args.ring, str) else RingSpec.from_json(args.ring)


def _load_extra(rep, path: str | None):
    """Extra generators: single atoms or whole words."""
    if not path:
        return []
    with open(path) as fh:
        data = json.load(fh)
    out = []
    for item in data:
        if "word" in item:
            atoms = tuple(
                (k, tuple(r), RingElem.from_json(rep.ring, v)) for k, r, v in item["word"]
            )
            out.append(rep.element_from_word(atoms))
        else:
            atom = (
                item.get("kind", "x"),
                tuple(item["root"]),
                RingElem.from_json(rep.ring, item["value"]),
            )
            out.append(rep.element_from_word((atom,)))
    return out


def _suites_exit(suites: list[SuiteResult]) -> int:
    return 0 if all(s.passed for s in suites) else 1


# -- subcommands ------------------------------------------------------------------


def cmd_info(args) -> int:
    tag, l = _case_args(args)
    case = build_case(tag, l)
    wm = build_weights(case)
    config = {"command": "info", "case": tag, "l": case.l}
    body = {
        "description": case.describe(),
        "roots": len(case.phi),
        "subsystem_roots": len(case.delta),
        "orbit_sizes": [len(case.omega_plus), len(case.omega_minus)],
        "max_root": list(case.max_root),
        "weights": wm.dim,
        "component_sizes": list(wm.component_sizes()),
        "kind": wm.kind,
    }
    if args.weights:
        body["weight_list"] = [
            {"coords": list(w), "component": wm.component_of(w)} for w in wm.weights
        ]
    _emit(_report(config, **body), args.out)
    return 0


def cmd_lemmas(args) -> int:
    tag, l = _case_args(args)
    build_case(tag, l)  # validates the rank before running anything
    suites = lemma_suites(tag, l, seed=args.seed)
    config = {"command": "lemmas", "case": tag, "l": l, "seed": args.seed}
    _emit(_report(config, suites=suites), args.out)
    return _suites_exit(suites)


def cmd_relcheck(args) -> int:
    tag, l = _case_args(args)
    build_case(tag, l)
    suites = steinberg_suite(tag, l, seed=args.seed)
    config = {"command": "relcheck", "case": tag, "l": l, "seed": args.seed}
    _emit(_report(config, suites=suites), args.out)
    return _suites_exit(suites)


def cmd_forms(args) -> int:
    tag, l = _case_args(args)
    case = build_case(tag, l)
    wm = build_weights(case)
    config = {"command": "forms", "case": tag, "l": case.l}
    if wm.kind != "second":
        _emit(_report(config, applicable=False, reason="not applicable: first type"), args.out)
        return 0
    signs = bilinear_form_signs(wm)
    form = build_pi_form(wm)
    body = {
        "applicable": True,
        "bilinear_signs": {str(wm.idx(lam)): signs[lam] for lam in wm.weights},
        "quadratic_form": form.to_json(),
    }
    _emit(_report(config, **body), args.out)
    return 0


def cmd_decompose(args) -> int:
    with open(args.infile) as fh:
        data = json.load(fh)
    tag = data["case"]
    l = data.get("l")
    ring = RingSpec.from_json(data["ring"])
    rep = get_representation(build_weights(build_case(tag, l)), ring)
    mat = RMat.from_json(ring, data["rows"])
    g = rep.from_matrix(mat)
    v, g1, u = chevalley_matsumoto(g)
    config = {"command": "decompose", "case": tag, "l": l, "ring": ring.to_json()}
    body = {
        "lower": v.mat.to_json(),
        "levi": g1.mat.to_json(),
        "upper": u.mat.to_json(),
    }
    _emit(_report(config, **body), args.out)
    return 0


def cmd_level(args) -> int:
    tag, l = _case_args(args)
    ring = _ring_arg(args)
    rep = get_representation(build_weights(build_case(tag, l)), ring)
    target = parse_sigma(ring, args.target)
    extra = _load_extra(rep, args.extra)
    base_atoms = [
        ("x", alpha, v) for alpha in rep.case.delta for v in ring.elements() if not v.is_zero()
    ]
    cert = level_certificate(
        rep, base_atoms, extra, target, budget=args.budget, seed=args.seed
    )
    config = {
        "command": "level",
        "case": tag,
        "l": l,
        "ring": ring.to_json(),
        "target": args.target,
        "seed": args.seed,
        "budget": args.budget,
        "extra": args.extra,
    }
    _emit(
        _report(
            config,
            certificate=cert.to_json(),
            witnesses=[w.to_json() for w in cert.witnesses],
        ),
        args.out,
    )
    if not cert.complete:
        return 3
    return 0 if cert.matched else 1


def cmd_normcheck(args) -> int:
    tag, l = _case_args(args)
    ring = _ring_arg(args)
    rep = get_representation(build_weights(build_case(tag, l)), ring)
    sigma = parse_sigma(ring, args.sigma)
    atoms = sigma_generator_atoms(rep, sigma)
    units = list(ring.units())
    torus = [("h", a, u) for a in rep.case.simple_roots for u in units]
    delta_nz = [
        ("x", a, v) for a in rep.case.delta for v in ring.elements() if not v.is_zero()
    ]
    rng = SplitMix64(args.seed)
    failures = []
    checked_transporter = 0
    for i in range(args.samples):
        g = (
            sample_word_rng(rep, atoms, rng.randrange(5), rng)
            * sample_word_rng(rep, torus, rng.randrange(3), rng)
            * sample_word_rng(rep, delta_nz, rng.randrange(5), rng)
        )
        if not in_normalizer(g, sigma):
            failures.append(f"sample {i} violates the normalizer conditions")
            break
        if i < max(1, args.samples // 10):
            checked_transporter += 1
            if not transporter_check(g, sigma):
                failures.append(f"sample {i} fails the transporter check")
                break
    suites = [
        SuiteResult("normalizer-conditions", not failures, failures[0] if failures else None)
    ]
    config = {
        "command": "normcheck",
        "case": tag,
        "l": l,
        "ring": ring.to_json(),
        "sigma": args.sigma,
        "samples": args.samples,
        "seed": args.seed,
    }
    _emit(_report(config, suites=suites, transporter_checked=checked_transporter), args.out)
    return _suites_exit(suites)


def cmd_experiment(args) -> int:
    tag, l = _case_args(args)
    ring = _ring_arg(args)
    rep = get_representation(build_weights(build_case(tag, l)), ring)
    extra = _load_extra(rep, args.extra)
    base_atoms = [
        ("x", alpha, v) for alpha in rep.case.delta for v in ring.elements() if not v.is_zero()
    ]
    if args.target:
        target = parse_sigma(ring, args.target)
    else:
        probe = level_certificate(
            rep, base_atoms, extra, SigmaPair.full(ring), budget=args.budget, seed=args.seed
        )
        target = probe.lower
    cert = level_certificate(rep, base_atoms, extra, target, budget=args.budget, seed=args.seed)

    rng = SplitMix64(args.seed + 1)
    norm_fail = None
    for i in range(args.samples):
        g = sample_word_rng(rep, base_atoms, 1 + rng.randrange(6), rng)
        for e in extra:
            if rng.randrange(2):
                g = g * e
        if not in_normalizer(g, cert.lower):
            norm_fail = f"sample {i} escapes the normalizer conditions of the certified level"
            break
    suites = [
        SuiteResult("level-witnesses", cert.matched, None if cert.matched else "lower bound below target"),
        SuiteResult("sandwich-normalizer", norm_fail is None, norm_fail),
    ]
    config = {
        "command": "experiment",
        "case": tag,
        "l": l,
        "ring": ring.to_json(),
        "target": args.target,
        "samples": args.samples,
        "seed": args.seed,
        "budget": args.budget,
        "extra": args.extra,
    }
    _emit(
        _report(
            config,
            suites=suites,
            certificate=cert.to_json(),
            witnesses=[w.to_json() for w in cert.witnesses],
            sandwich={"level": cert.lower.describe(), "verdict": norm_fail is None},
        ),
        args.out,
    )
    if not cert.complete:
        return 3
    return _suites_exit(suites)


def cmd_selftest(args) -> int:
    suites = selftest_suites(seed=args.seed)
    config = {"command": "selftest", "seed": args.seed}
    _emit(_report(config, suites=suites), args.out)
    return _suites_exit(suites)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="chevalley",
        description="Exact computations around subsystem subgroups of Chevalley groups",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, ring=False, sigma=False, budget=False, samples=False):
        p.add_argument("--case", choices=["a", "b", "c"])
        p.add_argument("--l", type=int, default=None, help="rank for case a")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--out", default=None, help="also write the report to this file")
        p.add_argument("--config", default=None, help="JSON file with default argument values")
        if ring:
            p.add_argument("--ring", default=None, help="ring name like z4, z8, f2t2")
        if sigma:
            p.add_argument("--sigma", default=None, help="level like '(2),(0)'")
        if budget:
            p.add_argument("--budget", type=int, default=2000)
        if samples:
            p.add_argument("--samples", type=int, default=100)

    p = sub.add_parser("info", help="root and weight counts for a case")
    common(p)
    p.add_argument("--weights", action="store_true", help="list all weights with components")
    p.set_defaults(func=cmd_info)

    p = sub.add_parser("lemmas", help="combinatorial and relation suites")
    common(p)
    p.set_defaults(func=cmd_lemmas)

    p = sub.add_parser("relcheck", help="generator relation suite")
    common(p)
    p.set_defaults(func=cmd_relcheck)

    p = sub.add_parser("forms", help="invariant bilinear and quadratic forms")
    common(p)
    p.set_defaults(func=cmd_forms)

    p = sub.add_parser("decompose", help="corner decomposition of a matrix file")
    common(p)
    p.add_argument("--in", dest="infile", required=True)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("level", help="certify the level of a generated subgroup")
    common(p, ring=True, budget=True)
    p.add_argument("--target", required=True, help="level like '(2),(0)'")
    p.add_argument("--extra", default=None, help="JSON file with extra generators")
    p.set_defaults(func=cmd_level)

    p = sub.add_parser("normcheck", help="normalizer conditions on sampled words")
    common(p, ring=True, sigma=True, samples=True)
    p.set_defaults(func=cmd_normcheck)

    p = sub.add_parser("experiment", help="level certificate plus sandwich verdict")
    common(p, ring=True, budget=True, samples=True)
    p.add_argument("--target", default=None)
    p.add_argument("--extra", default=None)
    p.set_defaults(func=cmd_experiment)

    p = sub.add_parser("selftest", help="all suites at reduced sample counts")
    common(p)
    p.set_defaults(func=cmd_selftest)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        _load_config_file(args)
        return args.func(args)
    except BudgetExhausted as exc:
        print(f"incomplete: {exc}", file=sys.stderr)
        return 3
    except (DomainError, NonUnitError, UnsupportedCaseError, FileNotFoundError, KeyError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
