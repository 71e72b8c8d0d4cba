"""``hss`` command line: pipeline, attack, verify, equiv.

Reports go to stdout as JSON; a one-line summary goes to stderr.
Exit codes: 0 success, 1 negative verdict, 2 usage or configuration error.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Optional

from . import ctxhide, equiv, hss
from .errors import HSSError, ParamViolation
from .field import PrimeField
from .poly import Domain, Polynomial, multilinear_monomial, parse_polynomial

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_USAGE = 2


class ConfigError(HSSError, ValueError):
    pass


@dataclass
class ExperimentConfig:
    p: int
    n: int
    m: int
    t: int
    d: int
    f: Optional[str] = None
    domain: Any = "full"
    mode: str = "exact"
    trials: int = 100_000
    seed: Optional[int] = None
    budget: int = ctxhide.DEFAULT_BUDGET
    allow_wraparound: bool = False
    x: Optional[list[int]] = None
    transform: Optional[dict] = None
    transform2: Optional[dict] = None
    action: Optional[str] = None
    extra: dict = field(default_factory=dict)

    @classmethod
    def from_dict(cls, raw: dict) -> "ExperimentConfig":
        raw = dict(raw)
        missing = [k for k in ("p", "n", "m", "t") if k not in raw]
        if missing:
            raise ConfigError(f"config lacks required keys: {', '.join(missing)}")
        known = {k: raw.pop(k) for k in list(raw) if k in cls.__dataclass_fields__ and k != "extra"}
        known.setdefault("d", None)
        cfg = cls(**known, extra=raw)
        if cfg.d is None:
            cfg.d = cfg.polynomial().degree if cfg.f else cfg.n
        if cfg.mode in ("mc", "monte-carlo"):
            cfg.mode = "monte-carlo"
        elif cfg.mode != "exact":
            raise ConfigError(f"mode must be exact or mc, got {cfg.mode!r}")
        return cfg

    def params(self) -> hss.SchemeParams:
        return hss.SchemeParams(
            int(self.p), int(self.n), int(self.m), int(self.t), int(self.d),
            allow_wraparound=bool(self.allow_wraparound),
        )

    def polynomial(self) -> Polynomial:
        fld = PrimeField(int(self.p))
        if self.f is None:
            return multilinear_monomial(fld, int(self.n))
        return parse_polynomial(str(self.f), fld, int(self.n))

    def make_domain(self) -> Domain:
        fld = PrimeField(int(self.p))
        n = int(self.n)
        raw = self.domain
        if raw in ("full", None):
            return Domain.full(fld, n)
        if raw == "punctured":
            return Domain.punctured(fld, n)
        if isinstance(raw, dict) and "points" in raw:
            return Domain.explicit(fld, n, raw["points"])
        if isinstance(raw, list):
            return Domain.explicit(fld, n, raw)
        raise ConfigError(f"unrecognised domain {raw!r}")


def _jsonable(obj):
    if isinstance(obj, Fraction):
        return f"{obj.numerator}/{obj.denominator}"
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    return obj


def _base_report(command: str, cfg: ExperimentConfig, f: Polynomial) -> dict:
    return {
        "command": command,
        "p": cfg.p,
        "n": cfg.n,
        "m": cfg.m,
        "t": cfg.t,
        "d": cfg.d,
        "f": str(f),
    }


def cmd_pipeline(cfg: ExperimentConfig) -> tuple[dict, int, str]:
    params = cfg.params()
    f = cfg.polynomial()
    hss.check_function(params, f)
    if cfg.x is None:
        raise ConfigError("pipeline needs an input: pass --x or set 'x' in the config")
    x = tuple(params.field.reduce(v) for v in cfg.x)
    domain = cfg.make_domain()
    if x not in domain:
        raise ConfigError(f"input {x} is outside the configured domain")
    seed = 0 if cfg.seed is None else cfg.seed
    ss = hss.share(params, x, random.Random(seed))
    ys = hss.eval_all(params, f, ss)
    decoded = hss.dec(params, ys)
    expected = f.evaluate(x)
    ok = decoded == expected
    report = _base_report("pipeline", cfg, f)
    report.update(
        x=x,
        seed=seed,
        randomness=ss.randomness,
        shares=ss.shares,
        output_shares=ys,
        decoded=decoded,
        expected=expected,
        passed=ok,
    )
    summary = f"pipeline: decoded {decoded}, f(x) = {expected}: {'pass' if ok else 'FAIL'}"
    return report, EXIT_OK if ok else EXIT_NEGATIVE, summary


def _advantage(cfg, params, f, dist) -> ctxhide.AdvantageReport:
    if cfg.mode == "exact":
        return ctxhide.exact_advantage(params, f, dist, cfg.budget)
    if cfg.seed is None:
        raise ConfigError("monte-carlo mode requires an explicit seed")
    return ctxhide.estimate_advantage(params, f, dist, int(cfg.trials), int(cfg.seed))


def _attack_verdict(rep: ctxhide.AdvantageReport) -> str:
    if rep.mode == "exact":
        return ctxhide.NOT_HIDING if rep.estimate > 0 else "NoAdvantage"
    return ctxhide.NOT_HIDING if rep.estimate > rep.half_width else "Inconclusive"


def _attack_target(cfg: ExperimentConfig) -> tuple[hss.SchemeParams, Polynomial]:
    params = cfg.params()
    f = cfg.polynomial()
    if f != multilinear_monomial(params.field, params.n):
        raise ParamViolation(f"attack targets x1*...*x{params.n}; got f = {f}")
    return params, f


def cmd_attack(cfg: ExperimentConfig) -> tuple[dict, int, str]:
    params, f = _attack_target(cfg)
    dist = ctxhide.theorem2_distinguisher(params, params.n)
    rep = _advantage(cfg, params, f, dist)
    verdict = _attack_verdict(rep)
    report = _base_report("attack", cfg, f)
    report.update(rep.to_dict())
    report.update(
        x0=dist.x0,
        x1=dist.x1,
        coefficients=dist.info["coefficients"],
        closed_form=ctxhide.theorem2_advantage(params.p, params.n),
        verdict=verdict,
        witness=None,
    )
    summary = (
        f"attack: advantage {ctxhide.format_number(rep.estimate)} ({rep.mode}), "
        f"closed form {ctxhide.format_number(report['closed_form'])}: {verdict}"
    )
    return report, EXIT_NEGATIVE if verdict == ctxhide.NOT_HIDING else EXIT_OK, summary


def cmd_verify(cfg: ExperimentConfig) -> tuple[dict, int, str]:
    params = cfg.params()
    f = cfg.polynomial()
    domain = cfg.make_domain()
    res = ctxhide.verify_perfect_hiding(params, f, domain, cfg.budget)
    report = _base_report("verify", cfg, f)
    report.update(
        mode="exact",
        domain=domain.to_json(),
        budget=cfg.budget,
        pairs_checked=res.pairs_checked,
        verdict=res.verdict,
        witness=res.witness,
        x0=res.witness["x0"] if res.witness else None,
        x1=res.witness["x1"] if res.witness else None,
    )
    summary = f"verify: {res.verdict} over {res.pairs_checked} output-equal pairs"
    if res.witness:
        summary += f"; witness {res.witness['x0']} vs {res.witness['x1']}"
    return report, EXIT_OK if res.perfect else EXIT_NEGATIVE, summary


def _transform(cfg: ExperimentConfig, key: str = "transform") -> equiv.EquivalenceTransform:
    raw = getattr(cfg, key)
    if raw is None:
        raise ConfigError(f"config needs a '{key}' object")
    S = equiv.EquivalenceTransform.from_json(PrimeField(int(cfg.p)), raw)
    if S.n != int(cfg.n):
        raise ConfigError(f"{key} is {S.n}-dimensional but n = {cfg.n}")
    return S


def _acts_alike(S, T, f, budget) -> bool:
    """True when S and T agree on every point (or 2000 sampled ones) and on f."""
    fld = S.field
    if fld.p ** S.n <= budget:
        pts = Domain.full(fld, S.n)
    else:
        rng = random.Random(0)
        pts = [tuple(rng.randrange(fld.p) for _ in range(S.n)) for _ in range(2000)]
    for x in pts:
        if equiv.apply_to_point(S, x) != equiv.apply_to_point(T, x):
            return False
    return equiv.transform_polynomial(S, f) == equiv.transform_polynomial(T, f)


def cmd_equiv(cfg: ExperimentConfig) -> tuple[dict, int, str]:
    action = cfg.action
    if action not in ("apply", "invert", "compose", "transfer"):
        raise ConfigError("equiv needs --action apply|invert|compose|transfer")
    f = cfg.polynomial()
    fld = f.field
    report = {"command": "equiv", "action": action, "p": cfg.p, "n": cfg.n}
    code = EXIT_OK
    if action == "apply":
        S = _transform(cfg)
        g, dom = equiv.apply_to_polynomial(S, f, cfg.make_domain())
        report.update(transform=S.to_json(), f=str(f), g=str(g), domain_f=dom.to_json())
        summary = f"equiv apply: g = {g}"
    elif action == "invert":
        S = _transform(cfg)
        inv = equiv.invert(S)
        report.update(transform=S.to_json(), inverse=inv.to_json())
        summary = "equiv invert: done"
    elif action == "compose":
        S1 = _transform(cfg)
        S2 = _transform(cfg, "transform2")
        S3 = equiv.compose(S2, S1)
        ident = equiv.identity_transform(fld, S3.n)
        report.update(
            transform=S1.to_json(),
            transform2=S2.to_json(),
            composed=S3.to_json(),
            acts_as_identity=_acts_alike(S3, ident, f, cfg.budget),
        )
        summary = f"equiv compose: identity-acting = {report['acts_as_identity']}"
    else:
        params, mono = _attack_target(cfg)
        S = _transform(cfg)
        g = equiv.transform_polynomial(S, mono)
        if g.degree > params.d:
            raise ParamViolation(f"transformed polynomial has degree {g.degree} > d = {params.d}")
        dist_f = ctxhide.theorem2_distinguisher(params, params.n)
        dist_g = equiv.transfer_distinguisher(equiv.invert(S), dist_f, g)
        rep_f = _advantage(cfg, params, mono, dist_f)
        rep_g = _advantage(cfg, params, g, dist_g)
        verdict = _attack_verdict(rep_g)
        report.update(
            mode=rep_f.mode,
            transform=S.to_json(),
            f=str(mono),
            g=str(g),
            x0=dist_g.x0,
            x1=dist_g.x1,
            advantage_f=ctxhide.format_number(rep_f.estimate),
            advantage_g=ctxhide.format_number(rep_g.estimate),
            trials=rep_g.trials,
            half_width=rep_g.half_width,
            seed=rep_g.seed,
            verdict=verdict,
        )
        summary = (
            f"equiv transfer: advantage {report['advantage_f']} against f, "
            f"{report['advantage_g']} against g = {g}"
        )
        code = EXIT_NEGATIVE if verdict == ctxhide.NOT_HIDING else EXIT_OK
    return report, code, summary


COMMANDS = {
    "pipeline": cmd_pipeline,
    "attack": cmd_attack,
    "verify": cmd_verify,
    "equiv": cmd_equiv,
}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="hss", description=__doc__.splitlines()[0])
    ap.add_argument("command", choices=sorted(COMMANDS))
    ap.add_argument("--config", required=True, help="JSON experiment config")
    ap.add_argument("--x", help="comma-separated input residues")
    ap.add_argument("--trials", type=int)
    ap.add_argument("--seed", type=int)
    ap.add_argument("--budget", type=int)
    ap.add_argument("--mode", choices=("exact", "mc"))
    ap.add_argument("--action", choices=("apply", "invert", "compose", "transfer"))
    return ap


def load_config(args) -> ExperimentConfig:
    try:
        with open(args.config) as fh:
            raw = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config {args.config}: {exc}") from exc
    if not isinstance(raw, dict):
        raise ConfigError("config must be a JSON object")
    for key in ("trials", "seed", "budget", "mode", "action"):
        val = getattr(args, key)
        if val is not None:
            raw[key] = val
    if args.x is not None:
        try:
            raw["x"] = [int(v) for v in args.x.split(",")]
        except ValueError as exc:
            raise ConfigError(f"--x must be comma-separated integers: {args.x!r}") from exc
    return ExperimentConfig.from_dict(raw)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = load_config(args)
        report, code, summary = COMMANDS[args.command](cfg)
    except HSSError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (TypeError, ValueError) as exc:
        print(f"ConfigError: {exc}", file=sys.stderr)
        return EXIT_USAGE
    print(json.dumps(_jsonable(report), sort_keys=True, indent=2))
    print(summary, file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
