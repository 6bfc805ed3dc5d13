"""Command line entry point ``mct``.

Exit codes: 0 when every verdict passes, 1 when any fails, 2 on usage
errors (bad arguments, unreadable input, invalid parameters).
"""

import argparse
import json
import math
import sys

from . import constructions, harness
from .fourier import ft, morrey_norm_ft
from .functionals import d_functional, d_functional_weighted
from .grid import StepFunction
from .norms import (Weight, campanato_seminorm, gamma_norm, local_morrey_norm, lorentz_norm,
                    morrey_norm, truncated_norm)


class UsageError(Exception):
    pass


def _num(text):
    t = str(text).strip().lower()
    if t in ("inf", "infinity", "+inf"):
        return math.inf
    try:
        return float(t)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None


def _load(path):
    try:
        return StepFunction.load(path)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    except (ValueError, json.JSONDecodeError) as exc:
        raise UsageError(f"{path}: {exc}") from None


def _weight(spec):
    if spec is None:
        return None
    try:
        return Weight.parse(spec)
    except OSError as exc:
        raise UsageError(f"cannot read weight table: {exc}") from None


def _emit(obj):
    print(json.dumps(harness._clean(obj), indent=2, sort_keys=True))


def cmd_norm(a):
    f = _load(a.input)
    w = _weight(a.weight)
    prm = (a.p, a.q, a.lam)
    if a.space == "lorentz":
        val = lorentz_norm(f, a.p, a.q)
    elif a.space == "morrey":
        val = morrey_norm(f, prm, weight=w).value
    elif a.space == "local-morrey":
        val = local_morrey_norm(f, prm, weight=w).value
    elif a.space == "truncated":
        val = truncated_norm(f, a.lam, a.q, a.p)
    elif a.space == "campanato":
        val = campanato_seminorm(f, prm, weight=w).value
    else:
        if w is None:
            raise UsageError("the gamma space needs --weight for v")
        val = gamma_norm(f, w, a.q)
    _emit({"space": a.space, "p": a.p, "q": a.q, "lambda": a.lam, "weight": a.weight,
           "value": val})
    return 0


def cmd_fourier_norm(a):
    f = _load(a.input)
    m_range = None
    if a.m_lo is not None or a.m_hi is not None:
        if a.m_lo is None or a.m_hi is None or a.m_lo > a.m_hi:
            raise UsageError("give both --m-lo and --m-hi with m-lo <= m-hi")
        m_range = (a.m_lo, a.m_hi)
    res = morrey_norm_ft(ft(f), (a.p, a.q, a.lam), weight=_weight(a.weight), m_range=m_range,
                         resolution=a.resolution, max_resolution=max(a.max_resolution,
                                                                      2 * a.resolution))
    _emit({"space": "morrey", "value": res.value, "lower_bound": True,
           "m_range": res.m_range, "resolution": res.diagnostics["resolution"],
           "refinement_delta": res.diagnostics["refinement_delta"],
           "tail_estimate": res.tail_estimate})
    return 0


def cmd_d(a):
    f = _load(a.input)
    if a.weight is None:
        val, prof = d_functional(f, a.p, a.q, a.lam)
    else:
        val, prof = d_functional_weighted(f, a.p, a.q, _weight(a.weight))
    if a.profile:
        prof.to_csv(a.profile)
    _emit({"value": val, "p": a.p, "q": a.q, "lambda": a.lam, "weight": a.weight,
           "levels": [int(min(prof.levels)), int(max(prof.levels))] if len(prof.levels) else []})
    return 0


def cmd_family(a):
    params = {}
    for item in a.param:
        k, sep, v = item.partition("=")
        if not sep:
            raise UsageError(f"--param expects K=V, got {item!r}")
        params[k] = v
    try:
        obj = constructions.make_family(a.name, **params)
    except KeyError as exc:
        raise UsageError(exc.args[0]) from None
    if not isinstance(obj, StepFunction):
        raise UsageError(f"family {a.name!r} is only available on the Fourier side "
                         "and has no step-function file form")
    obj.save(a.out)
    _emit({"family": a.name, "params": params, "cells": obj.n_cells, "level": obj.level,
           "out": a.out})
    return 0


def cmd_suite(a):
    if a.config:
        try:
            cfg = harness.ExperimentConfig.load(a.config)
        except OSError as exc:
            raise UsageError(f"cannot read {a.config}: {exc.strerror}") from None
        except (ValueError, TypeError, json.JSONDecodeError) as exc:
            raise UsageError(f"{a.config}: {exc}") from None
        if a.name and a.name != cfg.suite:
            raise UsageError(f"--name {a.name!r} disagrees with the config suite {cfg.suite!r}")
    else:
        if not a.name:
            raise UsageError("give --name or --config")
        cfg = harness.ExperimentConfig(a.name)
    if a.seed is not None:
        cfg.seed = a.seed
    if a.out:
        cfg.output = a.out
    if cfg.suite not in harness.SUITES:
        raise UsageError(f"unknown suite {cfg.suite!r}; available: {', '.join(harness.SUITES)}")
    rep = harness.run_suite(cfg)
    print(rep.summary_json(with_timestamp=False))
    return 0 if rep.verdict in ("pass", "no cases") else 1


def build_parser():
    ap = argparse.ArgumentParser(prog="mct", description="Morrey and Campanato norm toolkit")
    sub = ap.add_subparsers(dest="cmd", required=True)

    def space_args(p, need_lambda=True):
        p.add_argument("--input", required=True, help="step function JSON file")
        p.add_argument("--p", type=_num, required=True)
        p.add_argument("--q", type=_num, default=math.inf)
        p.add_argument("--lambda", dest="lam", type=_num, default=0.0, required=need_lambda)
        p.add_argument("--weight", help="pow:E or table:FILE.csv")

    p = sub.add_parser("norm", help="norm of a step function")
    space_args(p, need_lambda=False)
    p.add_argument("--space", required=True,
                   choices=["lorentz", "morrey", "local-morrey", "truncated", "campanato",
                            "gamma"])
    p.set_defaults(fn=cmd_norm)

    p = sub.add_parser("fourier-norm", help="certified lower Morrey norm of the transform")
    space_args(p)
    p.add_argument("--space", default="morrey", choices=["morrey"])
    p.add_argument("--m-lo", type=int)
    p.add_argument("--m-hi", type=int)
    p.add_argument("--resolution", type=int, default=64)
    p.add_argument("--max-resolution", type=int, default=1024)
    p.set_defaults(fn=cmd_fourier_norm)

    p = sub.add_parser("d", help="the D functional")
    space_args(p)
    p.add_argument("--profile", help="write the per-level profile CSV here")
    p.set_defaults(fn=cmd_d)

    p = sub.add_parser("family", help="build a named example")
    p.add_argument("--name", required=True, choices=sorted(constructions.FAMILIES))
    p.add_argument("--param", action="append", default=[], metavar="K=V")
    p.add_argument("--out", required=True)
    p.set_defaults(fn=cmd_family)

    p = sub.add_parser("suite", help="run an experiment suite")
    p.add_argument("--name")
    p.add_argument("--config")
    p.add_argument("--seed", type=int)
    p.add_argument("--out", help="CSV path; the summary goes next to it as .json")
    p.set_defaults(fn=cmd_suite)
    return ap


def main(argv=None):
    ap = build_parser()
    a = ap.parse_args(argv)
    try:
        return a.fn(a)
    except UsageError as exc:
        print(f"mct: error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, KeyError) as exc:
        print(f"mct: error: {exc.args[0] if exc.args else exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
