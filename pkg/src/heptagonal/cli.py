"""Command line front end: ``heptagonal <command> [options]``.

Every command produces a list of assertions
{assertion_id, paper_ref, status, residual, tolerance}; the exit status
is 0 iff all of them pass.  ``paper_ref`` is a short label of the claim
being checked.  JSON output is versioned by ``SCHEMA_VERSION``.
"""

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np

SCHEMA_VERSION = 1
THREADS_ENV = "HEPTAGONAL_THREADS"
DEFAULT_SAMPLES = "0.1,0.37,0.5,0.9"

PROFILES = {
    "default": {"precision": 20, "tol": 1e-6, "theta_tol": 1e-12},
    "hi": {"precision": 30, "tol": 1e-9, "theta_tol": 1e-12},
}


@dataclass
class Assertion:
    assertion_id: str
    paper_ref: str
    status: str
    residual: float = 0.0
    tolerance: float = 0.0
    detail: str = ""


def _check(aid, ref, ok, residual=0.0, tolerance=0.0, detail=""):
    return Assertion(aid, ref, "PASS" if ok else "FAIL", float(residual), float(tolerance), detail)


def _residual_check(aid, ref, residual, tolerance, detail=""):
    residual = float(residual)
    return _check(aid, ref, residual < tolerance, residual, tolerance, detail)


@dataclass
class RunConfig:
    precision: int = 20
    tol: float = 1e-6
    theta_tol: float = 1e-12
    tol_zero: float = 1e-8
    tol_live: float = 1e-3
    samples: list = field(default_factory=list)
    format: str = "text"
    profile: str = "default"
    clearance: float = 1e-6
    fault: str = ""
    threads: int = 1

    def __post_init__(self):
        for name in ("tol", "theta_tol", "tol_zero", "tol_live", "clearance"):
            if getattr(self, name) <= 0:
                raise ValueError("%s must be positive" % name)


def parse_samples(text):
    out = []
    for item in text.split(","):
        item = item.strip().replace(" ", "")
        if item:
            out.append(complex(item.replace("i", "j")) if ("j" in item or "i" in item) else float(item))
    return out


def _sample_id(t):
    t = complex(t)
    return ("%g" % t.real) if t.imag == 0 else ("%g%+gi" % (t.real, t.imag))


def _pmap(cfg, fn, items):
    if cfg.threads > 1 and len(items) > 1:
        with ThreadPoolExecutor(max_workers=cfg.threads) as ex:
            return list(ex.map(fn, items))
    return [fn(x) for x in items]


def _clear(cfg, t):
    t = complex(t)
    return min(abs(t), abs(t - 1)) >= cfg.clearance and not (
        t.imag == 0 and (t.real < 0 or t.real > 1)
    )


def _clearance_failure(t, cfg):
    return Assertion(
        "sample[%s].clearance" % _sample_id(t),
        "parameter domain C - {0, 1}",
        "FAIL",
        float(min(abs(complex(t)), abs(complex(t) - 1))),
        cfg.clearance,
        "sample too close to a singular point or on a branch cut",
    )


# commands -----------------------------------------------------------------------


def cmd_group_check(cfg):
    from .cyclotomic import reduce_mod
    from .monodromy import (
        CycMatrix2,
        commutator,
        finite_quotient_structure,
        generators,
        hermitian_equiv_check,
        in_gamma,
        in_gamma_klein,
        is_unitary,
        nu,
    )

    g = generators(7)
    h0, h1 = g.h0, g.h1
    if cfg.fault == "h1":
        h1 = CycMatrix2(((h1[0, 0] + 1, h1[0, 1]), (h1[1, 0], h1[1, 1])))
    ref = "monodromy group and finite quotients"
    out = [
        _check("unitarity_h0", "h0 preserves H", is_unitary(h0, g.H)),
        _check("unitarity_h1", "h1 preserves H", is_unitary(h1, g.H)),
        _check("hermitian_equivalence", "S = conj(A)^T H A", hermitian_equiv_check()),
    ]
    q = finite_quotient_structure()
    out.append(_check("quotient_order_12", ref, q.order == 12, q.order, 12))
    out.append(_check("quotient_S3_x_pm1", ref, q.is_s3_times_pm1))
    out.append(_check("quotient_generated_by_h", ref, q.generated_by_h))
    out.append(
        _check(
            "listed_elements",
            ref,
            all(v["in_group"] and v["projective_order"] == v["expected"] for v in q.listed.values()),
        )
    )
    img = tuple(tuple(reduce_mod(x, 1).value for x in r) for r in g.h1.rows)
    out.append(_check("h1_mod_1-zeta", "h1 = [[4,2],[3,3]] mod 1 - zeta", img == ((4, 2), (3, 3))))
    out.append(_check("nu_g0", "nu(g0) = [[-1,0],[0,0]]", nu(g.g0) == ((6, 0), (0, 0))))
    out.append(_check("nu_g1", "nu(g1) = [[5,1],[5,1]]", nu(g.g1) == ((5, 1), (5, 1))))
    out.append(_check("g0_g1_in_gamma", "Mon inside Gamma(1 - zeta)", in_gamma(g.g0, 1) and in_gamma(g.g1, 1)))
    c = commutator(g.g0, g.g1)
    out.append(_check("commutator_level_2", "commutators lie in Gamma((1 - zeta)^2)", in_gamma(c, 2)))
    out.append(
        _check("g0g1^3_in_klein", "Gamma_Klein contains g0 g1^3", in_gamma_klein(g.g0 @ g.g1 ** 3))
    )
    return out


def cmd_homology_check(cfg):
    from .cyclotomic import CycNum
    from .homology import (
        INT1,
        INT3,
        J,
        M,
        SIGMA0,
        SIGMA1,
        phi,
        riemann_form_gram,
        symplectic_gram,
        symplectic_rep,
    )
    from .monodromy import CycMatrix2, generators

    rep = symplectic_rep()
    out = [_check("symplectic." + k, "symplectic representation", v) for k, v in rep.checks.items()]
    out.append(_check("det_Int1", "det Int_1 = 1", round(np.linalg.det(INT1)) == 1))
    out.append(_check("det_Int3", "det Int_3 = 1", round(np.linalg.det(INT3)) == 1))
    out.append(_check("gram_B.A=delta", "symplectic basis", np.array_equal(symplectic_gram(), J.T)))
    z4 = CycNum.zeta(7, 4)
    out.append(_check("phi_zeta4", "phi(zeta^4 I) = M", np.array_equal(phi(CycMatrix2.diag(z4, z4)), M)))
    g = generators(7)
    out.append(_check("phi_h0", "phi(h0) = sigma_0", np.array_equal(phi(g.h0), SIGMA0)))
    out.append(_check("phi_h1", "phi(h1) = sigma_1", np.array_equal(phi(g.h1), SIGMA1)))
    E = np.array(riemann_form_gram(), dtype=object)
    out.append(
        _check(
            "riemann_form_is_intersection",
            "Riemann form reproduces the intersection pairing",
            all(E[i, j] == symplectic_gram()[i, j] for i in range(12) for j in range(12)),
        )
    )
    return out


def cmd_periods(cfg):
    from .monodromy import generators
    from .periods import LoopSpec, cauchy_residuals, eval_periods, numeric_monodromy, projective_distance

    def one(t):
        if not _clear(cfg, t):
            return [_clearance_failure(t, cfg)]
        sid = _sample_id(t)
        p = eval_periods(t, cfg.precision)
        r = cauchy_residuals(t, cfg.precision)
        tol = 10.0 ** -(cfg.precision - 4)
        return [
            _check("periods[%s].ball" % sid, "Schwarz image in D_H^+", float(p.ball_norm()) < 0, float(p.ball_norm())),
            _residual_check("periods[%s].cauchy_1" % sid, "sum of the four periods vanishes", r[0], tol),
            _residual_check("periods[%s].cauchy_c" % sid, "c-twisted sum vanishes", r[1], tol),
            _residual_check("periods[%s].u2_formula" % sid, "u2 from u1, u3", r[2], tol),
        ]

    out = [a for chunk in _pmap(cfg, one, cfg.samples) for a in chunk]
    g = generators(7)
    # the matrices are compared in double precision
    tol = max(10.0 ** -(cfg.precision - 4), 1e-13)
    for target, mat in (("0", g.g0), ("1", g.g1)):
        G = numeric_monodromy(LoopSpec(base=0.5, target=target), cfg.precision)
        d, s = projective_distance(G, mat.to_numpy())
        out.append(
            _residual_check(
                "monodromy_loop_%s" % target,
                "monodromy generator g%s" % target,
                d,
                tol,
                "scalar %.6g%+.6gi" % (s.real, s.imag),
            )
        )
    return out


def cmd_tau(cfg):
    from .embedding import Phi, sp_action
    from .homology import M, SIGMA0, SIGMA1
    from .monodromy import generators
    from .periods import eval_periods

    g = generators(7)

    def one(t):
        if not _clear(cfg, t):
            return [_clearance_failure(t, cfg)]
        sid = _sample_id(t)
        p = eval_periods(t, cfg.precision)
        u = np.array(p.as_complex())
        tau = Phi(u)
        out = [
            _check("tau[%s].siegel" % sid, "Phi lands in H_6", True),
            _residual_check("tau[%s].M_fixed" % sid, "Phi(u) is fixed by M", sp_action(M, tau).distance(tau), 1e-10),
        ]
        for name, h, s in (("h0", g.h0, SIGMA0), ("h1", g.h1, SIGMA1)):
            res = Phi(h.to_numpy() @ u).distance(sp_action(s, tau))
            out.append(_residual_check("tau[%s].equivariance_%s" % (sid, name), "Phi(h u) = phi(h) Phi(u)", res, 1e-8))
        return out

    return [a for chunk in _pmap(cfg, one, cfg.samples) for a in chunk]


def cmd_theta_scan(cfg):
    from .theta import vanishing_scan
    from .uniformization import tau_of_t

    def one(t):
        if not _clear(cfg, t):
            return [_clearance_failure(t, cfg)]
        sid = _sample_id(t)
        sc = vanishing_scan(tau_of_t(t, cfg.precision), cfg.theta_tol, cfg.tol_zero, cfg.tol_live)
        detail = "nonzero=%s ambiguous=%s" % (sorted(sc.nonzero), sorted(sc.ambiguous))
        return [
            _check("theta_scan[%s].pattern" % sid, "exactly six non-vanishing torsion theta constants", sc.ok, 0.0, 0.0, detail),
            _check("theta_scan[%s].gap" % sid, "zero/nonzero separation", sc.gap >= 1e5, sc.gap, 1e5),
        ]

    return [a for chunk in _pmap(cfg, one, cfg.samples) for a in chunk]


def cmd_verify(cfg):
    from .uniformization import round_trip

    def one(t):
        if not _clear(cfg, t):
            return [_clearance_failure(t, cfg)]
        sid = _sample_id(t)
        tol = cfg.tol if complex(t).imag == 0 else max(cfg.tol, 1e-5)
        r = round_trip(t, cfg.precision, tol, cfg.theta_tol)
        ref = "theta quotient inverts the Schwarz map"
        return [
            _residual_check("verify[%s].t" % sid, ref, r.t_error, tol),
            _residual_check("verify[%s].one_minus_t" % sid, "1 - t as a theta quotient", r.one_minus_t_error, tol),
            _residual_check("verify[%s].fermat" % sid, "Th lands on the Fermat septic", r.fermat_residual, tol),
            _residual_check("verify[%s].klein" % sid, "quotient lands on the Klein quartic", r.klein_residual, tol),
            _residual_check("verify[%s].M_fixed" % sid, "tau fixed by M", r.m_fixed_residual, 1e-10),
            _check("verify[%s].vanishing" % sid, "vanishing pattern", r.vanishing_ok, 0.0, 0.0, "gap %.3g" % r.vanishing_gap),
        ]

    return [a for chunk in _pmap(cfg, one, cfg.samples) for a in chunk]


def cmd_k3(cfg):
    from . import k3

    samples = cfg.samples or [0.5]
    out = [
        _check("k3.discriminant_identity", "discriminant factorisation over Q(t)", k3.discriminant() is not None),
        _check("k3.depressed_cubic", "Weierstrass form", k3.depressed_cubic_residual() == 0),
    ]
    lat = k3.ns_lattice()
    out.append(_check("k3.ns_det", "discriminant of N is -49", lat.det == -49, lat.det, -49))
    out.append(_check("k3.ns_rank", "rank of N is 10", lat.rank == 10, lat.rank, 10))
    for t in samples:
        sid = _sample_id(t)
        tt = k3.sp.Rational(str(t)) if isinstance(t, float) else t
        try:
            fibers = k3.fiber_analysis(tt)
        except (k3.DegenerateFibrationError, ValueError) as exc:
            out.append(Assertion("k3[%s].fibers" % sid, "singular fibres", "FAIL", detail=str(exc)))
            continue
        kinds = [f.kodaira_type for f in fibers]
        ok = kinds[0] == "I0*" and kinds[1] == "IV" and kinds[2:] == ["I1"] * 14
        out.append(_check("k3[%s].fibers" % sid, "I0* at 0, IV at oo, 14 x I1", ok, detail=" ".join(kinds[:2]) + " + %d I1" % (len(kinds) - 2)))
        out.append(_check("k3[%s].euler" % sid, "Euler number 24", k3.euler_sum(fibers) == 24, k3.euler_sum(fibers), 24))
        st = k3.shioda_tate(fibers)
        out.append(_check("k3[%s].mw_rank" % sid, "Mordell-Weil rank 2", st.mw_rank == 2, st.mw_rank, 2))
    out.append(_check("k3.section_relation", "s0 + s1 + st = o", k3.section_relation_holds()))
    return out


COMMANDS = {
    "group-check": cmd_group_check,
    "homology-check": cmd_homology_check,
    "periods": cmd_periods,
    "tau": cmd_tau,
    "theta-scan": cmd_theta_scan,
    "verify": cmd_verify,
    "k3": cmd_k3,
}


def cmd_all(cfg):
    out = []
    for name in ("group-check", "homology-check", "periods", "tau", "verify"):
        out.extend(COMMANDS[name](cfg))
    # the round trip already includes the vanishing scan
    out.extend(cmd_k3(RunConfig(**{**asdict(cfg), "samples": [0.5]})))
    return out


COMMANDS["all"] = cmd_all


# rendering --------------------------------------------------------------------


def render(command, cfg, assertions):
    passed = all(a.status == "PASS" for a in assertions)
    if cfg.format == "json":
        doc = {
            "schema_version": SCHEMA_VERSION,
            "command": command,
            "config": {
                "precision": cfg.precision,
                "tol": cfg.tol,
                "theta_tol": cfg.theta_tol,
                "profile": cfg.profile,
                "samples": [_sample_id(t) for t in cfg.samples],
            },
            "assertions": [asdict(a) for a in assertions],
            "passed": passed,
        }
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"
    lines = []
    for a in assertions:
        line = "%-4s  %-40s residual=%-10.3g tol=%-8.3g %s" % (a.status, a.assertion_id, a.residual, a.tolerance, a.paper_ref)
        if a.detail:
            line += "  (" + a.detail + ")"
        lines.append(line)
    n_fail = sum(a.status != "PASS" for a in assertions)
    lines.append("%s: %d assertions, %d failed" % ("PASS" if passed else "FAIL", len(assertions), n_fail))
    return "\n".join(lines) + "\n"


def build_parser():
    p = argparse.ArgumentParser(prog="heptagonal", description=__doc__.splitlines()[0])
    p.add_argument("command", choices=sorted(COMMANDS))
    p.add_argument("--precision", type=int, default=None, help="working precision in digits")
    p.add_argument("--tol", type=float, default=None, help="round-trip tolerance")
    p.add_argument("--samples", default=DEFAULT_SAMPLES, help="comma separated t values, e.g. 0.5,0.5+0.2j")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--profile", choices=sorted(PROFILES), default="default")
    p.add_argument("--out", default=None, help="write the report to this file")
    p.add_argument("--inject-fault", choices=("h1",), default="", help="negative control: corrupt an input")
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    prof = PROFILES[args.profile]
    cfg = RunConfig(
        precision=args.precision or prof["precision"],
        tol=args.tol or prof["tol"],
        theta_tol=prof["theta_tol"],
        samples=parse_samples(args.samples),
        format=args.format,
        profile=args.profile,
        fault=args.inject_fault,
        threads=max(1, int(os.environ.get(THREADS_ENV, "1"))),
    )
    assertions = COMMANDS[args.command](cfg)
    text = render(args.command, cfg, assertions)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0 if all(a.status == "PASS" for a in assertions) else 1


if __name__ == "__main__":
    sys.exit(main())
