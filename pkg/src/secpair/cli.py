"""Command-line front end: ``secpair <command> [options]``.

Exit status is 0 when every check passes, 1 on a mathematical failure and 2
on malformed input.  ``--format json`` emits a single sorted JSON object.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction

import numpy as np

from . import jsonio as jio
from .coeff import KTheoryPair, k_coeff_qz
from .detpair import log_det_pairing, pairing_crosscheck_group, zeta_generator_check
from .fgab import (GroupHom, IntMatrix, cokernel, group_from_presentation, image, kernel,
                   smith_normal_form, torsion_subgroup)
from .functors import QZHom, QZValue, ext_z, tor_zn
from .lambda_families import (check_compatibility, compatible_family_space, delta_from_family,
                              family_from_delta, kk_table)
from .pairing import (ExtensionClass, NotInKernelError, QZPictureClass, delta_via_extension, delta_via_qz,
                      ext_to_qz_hom, rational_extensions)
from .spectral import FlatLineBundle, eta_circle, pairing_crosscheck, rho_relative

EXIT_OK, EXIT_MATH, EXIT_INPUT = 0, 1, 2


class Report:
    """Collects text lines, a JSON payload and named checks."""

    def __init__(self, command: str):
        self.command = command
        self.lines: list[str] = []
        self.data: dict = {}
        self.checks: list[tuple[str, bool, str]] = []

    def line(self, s: str = ""):
        self.lines.append(s)

    def check(self, label: str, ok: bool, detail: str = ""):
        self.checks.append((label, bool(ok), detail))

    @property
    def ok(self) -> bool:
        return all(ok for _, ok, _ in self.checks)

    def render(self, fmt: str) -> str:
        if fmt == "json":
            out = {"command": self.command, "result": self.data,
                   "checks": [{"label": l, "pass": ok, **({"detail": d} if d else {})}
                              for l, ok, d in self.checks],
                   "status": "PASS" if self.ok else "FAIL"}
            return json.dumps(out, indent=2, sort_keys=True)
        lines = list(self.lines)
        for label, ok, detail in self.checks:
            lines.append(f"{label}: {'PASS' if ok else 'FAIL'}" + (f" ({detail})" if detail else ""))
        return "\n".join(lines)


def _frac(s: str, path: str) -> Fraction:
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise jio.InputError(path, f"not a fraction: {s!r}") from exc


def _fmt_coords(coords) -> str:
    return "[" + ", ".join(str(c) for c in coords) + "]"


def _delta_lines(rep: Report, delta: QZHom, incl: GroupHom | None = None):
    gens = incl.images() if incl is not None else delta.source.gens()
    for g, v in zip(gens, delta.values):
        rep.line(f"{_fmt_coords(g.coords)} ↦ {v}")


# -- algebra ----------------------------------------------------------------


def cmd_snf(a, rep: Report):
    A = jio.matrix_from_json(jio.load(a.matrix, "$"), "$")
    U, D, V = smith_normal_form(A)
    rep.data = {"U": U.tolist(), "D": D.tolist(), "V": V.tolist(),
                "invariant_factors": [d for d in D.diagonal_entries() if d]}
    rep.line(f"D = {D.tolist()}")
    rep.line(f"U = {U.tolist()}")
    rep.line(f"V = {V.tolist()}")
    rep.check("U A V = D", U @ A @ V == D)
    rep.check("U, V unimodular", abs(U.det()) == 1 and abs(V.det()) == 1)


def cmd_group(a, rep: Report):
    rels = jio.matrix_from_json(jio.load(a.relations, "$"), "$", cols=a.generators) \
        if a.relations else IntMatrix.zeros(0, a.generators)
    G, q = group_from_presentation(a.generators, [rels.row(i) for i in range(rels.rows)])
    rep.data = {"group": jio.group_to_json(G), "projection": jio.hom_to_json(q)}
    rep.line(f"group = {G}")
    rep.line(f"generator images = {[list(g.coords) for g in q.images()]}")
    rep.check("relations map to zero", all(q(r).coords == G.zero().coords
                                           for r in (rels.row(i) for i in range(rels.rows))))


def cmd_hom(a, rep: Report):
    f = jio.hom_from_json(jio.load(a.hom, "$"), "$")
    K, k = kernel(f)
    I, _ = image(f)
    C, c = cokernel(f)
    rep.data = {"kernel": jio.group_to_json(K), "image": jio.group_to_json(I),
                "cokernel": jio.group_to_json(C), "kernel_inclusion": jio.hom_to_json(k),
                "injective": f.is_injective(), "surjective": f.is_surjective()}
    rep.line(f"kernel = {K}   generators {[list(g.coords) for g in k.images()]}")
    rep.line(f"image = {I}")
    rep.line(f"cokernel = {C}")
    rep.check("kernel maps to zero", f.compose(k).is_zero())
    rep.check("image is killed by the cokernel map", c.compose(f).is_zero())


def cmd_ext(a, rep: Report):
    G = jio.group_from_json(jio.load(a.group, "$"), "$")
    E = ext_z(G)
    rep.data = {"ext": jio.group_to_json(E)}
    rep.line(f"Ext(G, Z) = {E}")
    rep.check("Ext(G, Z) agrees with the torsion subgroup", E.invariant_factors == G.invariant_factors)


def cmd_tor(a, rep: Report):
    if a.n < 1:
        raise jio.InputError("--n", "must be >= 1")
    G = jio.group_from_json(jio.load(a.group, "$"), "$")
    T, incl = tor_zn(a.n, G)
    rep.data = {"tor": jio.group_to_json(T), "inclusion": jio.hom_to_json(incl)}
    rep.line(f"Tor(Z/{a.n}, G) = {T}   generators {[list(g.coords) for g in incl.images()]}")
    rep.check("generators are killed by n", all((a.n * g).coords == G.zero().coords
                                                for g in incl.images()))


# -- pairing ----------------------------------------------------------------


def cmd_pairing_ext(a, rep: Report):
    x = jio.extension_from_json(jio.load(a.extension, "$"), "$")
    delta = delta_via_extension(x)
    rep.data = {"k1": jio.group_to_json(x.k1), "delta": jio.qzhom_to_json(delta)}
    rep.line(f"k1 = {x.k1}   torsion = {delta.source}")
    _, incl = torsion_subgroup(x.k1)
    _delta_lines(rep, delta, incl)
    on_e = []
    for i, e in enumerate(x.e_group.gens()):
        pre = incl.preimage(x.pi(e))
        if pre is not None and not pre.is_zero():
            on_e.append({"generator": i, "value": str(delta(pre))})
            rep.line(f"pi(e_{i}) = {_fmt_coords(x.pi(e).coords)} ↦ {delta(pre)}")
    rep.data["on_E_generators"] = on_e
    rep.data["seed"] = a.seed
    rep.line(f"seed {a.seed}")
    phis = rational_extensions(x, a.solves, random.Random(a.seed))
    agree = all(delta_via_extension(x, phi) == delta for phi in phis)
    rep.check(f"independence of the rational extension ({a.solves} solves)", agree)
    rep.check("agreement with the Ext-class route", ext_to_qz_hom(x) == delta)


def _character(obj, path, G) -> QZHom:
    if isinstance(obj, dict):
        chi = jio.qzhom_from_json(obj, path)
    else:
        vals = jio._expect(obj, list, path)
        try:
            chi = QZHom(G, tuple(jio.qz_from_json(v, f"{path}[{i}]") for i, v in enumerate(vals)))
        except ValueError as exc:
            raise jio.InputError(path, str(exc)) from exc
    if chi.source != G:
        raise jio.InputError(path, f"character is defined on {chi.source}, expected {G}")
    return chi


def cmd_pairing_qz(a, rep: Report):
    K = jio.ktheory_from_json(jio.load(a.k, "$"), "$")
    coeff = k_coeff_qz(K, 0)
    chi = _character(jio.load(a.alpha, "$"), "$", coeff.torsion)
    mult = [int(c) for c in a.divisible.split(",")] if a.divisible else []
    if mult and len(mult) != coeff.group.qz_rank:
        raise jio.InputError("--divisible", f"need {coeff.group.qz_rank} multipliers")
    try:
        x = QZPictureClass.from_data(coeff, chi, mult)
    except NotInKernelError as exc:
        rep.line(str(exc))
        rep.check("class has vanishing index pairing", False)
        return
    delta = delta_via_qz(x)
    rep.data = {"coefficients": str(coeff.group), "delta": jio.qzhom_to_json(delta)}
    rep.line(f"K_0(Q/Z) = {coeff.group}")
    _delta_lines(rep, delta)
    rep.data["seed"] = a.seed
    rep.line(f"seed {a.seed}")
    rng = random.Random(a.seed)
    same = True
    for _ in range(a.resplits):
        shear = [[QZValue(rng.randrange(d), d) for _ in range(coeff.group.qz_rank)]
                 for d in coeff.torsion.invariant_factors]
        same &= delta_via_qz(x.resplit(shear)) == delta
    rep.check(f"independence of the splitting ({a.resplits} resplits)", same)


def cmd_lambda(a, rep: Report):
    if a.family:
        F = jio.family_from_json(jio.load(a.family, "$"), "$")
        report = check_compatibility(F)
        rep.data = {"compatible": report.ok}
        if not report.ok:
            rep.line(f"first failure: {report.failure}")
            rep.check("compatibility squares", False, f"pair {report.pair}, square {report.square}")
            return
        delta = delta_from_family(F)
        back = family_from_delta(delta, F.k1, F.bound)
        rep.data["delta"] = jio.qzhom_to_json(delta)
        _delta_lines(rep, delta)
        rep.check("compatibility squares", True)
        rep.check("family -> character -> family round trip", back == F)
        return
    if not (a.k1 and a.delta and a.bound):
        raise jio.InputError("$", "give --family, or --k1 with --delta and --bound")
    k1 = jio.group_from_json(jio.load(a.k1, "$"), "$")
    T = type(k1)(0, k1.invariant_factors)
    delta = _character(jio.load(a.delta, "$"), "$", T)
    F = family_from_delta(delta, k1, a.bound)
    rep.data = {"family": jio.family_to_json(F)}
    for m in sorted(F.psi):
        rep.line(f"psi_{m} on {F.tor_group(m)}: {list(F.psi[m])}")
    rep.check("compatibility squares", check_compatibility(F).ok)
    rep.check("character -> family -> character round trip", delta_from_family(F) == delta)
    if a.count:
        space = compatible_family_space(k1, a.bound)
        rep.data["family_count"] = space.order()
        rep.check("compatible families counted match characters",
                  space.order() == T.order(), f"{space.order()} families")


def cmd_kk_table(a, rep: Report):
    if a.max < 1:
        raise jio.InputError("--max", "must be >= 1")
    if a.degree not in (0, 1):
        raise jio.InputError("--degree", "must be 0 or 1")
    table = kk_table(a.max, a.degree)
    rep.data = {"degree": a.degree, "rows": [[{"n": d.n, "m": d.m, "group": str(d.group),
                                             "generator": d.generator} for d in row]
                                            for row in table]}
    width = max(len(str(d.group)) for row in table for d in row) + 1
    rep.line(f"KK^{a.degree}(I_n, I_m), rows n, columns m")
    rep.line("n\\m " + "".join(f"{m:>{width}}" for m in range(1, a.max + 1)))
    for n, row in enumerate(table, start=1):
        rep.line(f"{n:>3} " + "".join(f"{str(d.group):>{width}}" for d in row))
    rep.line("generators:")
    for row in table:
        for d in row:
            rep.line(f"  ({d.n},{d.m}) {d.group}: {d.generator}")
    ok = all(d.action_order() == d.group.order() for row in table for d in row)
    rep.check("generator action order equals group order", ok)


# -- analysis ---------------------------------------------------------------


def _certified(cert) -> str:
    return f"{cert} mod 1" if cert is not None else "not certified"


def cmd_eta(a, rep: Report):
    th = _frac(a.theta, "--theta")
    r = eta_circle(FlatLineBundle(th))
    rep.data = {"theta": str(th % 1), "eta": r.eta, "kernel_dim": r.kernel_dim,
                "closed_form": r.closed_form}
    rep.line(f"eta = {r.eta:.12f}   kernel dimension = {r.kernel_dim}")
    rep.check("eta matches 2 theta - 1", abs(r.eta - r.closed_form) < 1e-8,
              f"residual {abs(r.eta - r.closed_form):.1e}")


def cmd_rho(a, rep: Report):
    V = FlatLineBundle(_frac(a.theta1, "--theta1"))
    W = FlatLineBundle(_frac(a.theta2, "--theta2"))
    r = rho_relative(V, W)
    rep.data = {"rho": r.value, "certified": str(r.certified) if r.certified else None,
                "residual": r.residual}
    rep.line(f"rho = {r.value:.12f} = {_certified(r.certified)}")
    rep.check("rho certified", r.certified is not None, f"residual {r.residual:.1e}")
    if a.crosscheck:
        expected = QZValue.of(V.theta - W.theta)
        rep.check("rho equals theta1 - theta2", r.certified == expected, f"expected {expected}")
        d = (V.theta - W.theta).denominator if W.theta == 0 and V.theta.numerator == 1 else 0
        if d >= 2:
            rep.check("rho agrees with the extension pairing", pairing_crosscheck(d))


def cmd_zeta(a, rep: Report):
    if a.m < 2 or a.n < 1:
        raise jio.InputError("--m", "need m >= 2 and n >= 1")
    try:
        r = zeta_generator_check(a.m, a.n)
        ok = True
    except ArithmeticError as exc:
        rep.line(str(exc))
        rep.check(f"winding-one generator pairs to 1/{a.m}", False)
        return
    rep.data = {"value": str(r.value), "numeric": r.numeric, "residual": r.numeric_residual}
    rep.line(f"log det = {r.numeric:.12f} = {r.value} mod 1")
    rep.check(f"winding-one generator pairs to 1/{a.m}", ok, f"residual {r.numeric_residual:.1e}")


def cmd_detpair(a, rep: Report):
    P = jio.complex_matrix_from_json(jio.load(a.pi, "$"), "$")
    S = jio.complex_matrix_from_json(jio.load(a.sigma, "$"), "$")
    try:
        r = log_det_pairing(P, S)
    except ValueError as exc:
        raise jio.InputError("$", str(exc)) from exc
    rep.data = {"value": str(r.value) if r.value else None, "numeric": r.numeric,
                "residual": r.numeric_residual}
    rep.line(f"log det = {r.numeric:.12f} = {_certified(r.value)}")
    if r.branch_candidates:
        rep.line(f"determinant on the branch cut; candidates {list(r.branch_candidates)}")
    rep.check("log-det value certified", r.accepted, f"residual {r.numeric_residual:.1e}")


def cmd_crosscheck_all(a, rep: Report):
    if a.d_max < 2:
        raise jio.InputError("--d-max", "must be >= 2")
    rows = []
    for d in range(2, a.d_max + 1):
        ext = delta_via_extension(ExtensionClass.multiplication(d)).values[0]
        rho = rho_relative(FlatLineBundle(Fraction(1, d)), FlatLineBundle.trivial(),
                           max_denominator=4 * d).certified
        det = log_det_pairing(np.array([[np.exp(2j * np.pi / d)]]), np.eye(1),
                              max_denominator=4 * d).value
        ok = ext == rho == det == QZValue(1, d) and pairing_crosscheck(d) \
            and pairing_crosscheck_group(d)
        rows.append({"d": d, "extension": str(ext), "rho": str(rho), "logdet": str(det), "pass": ok})
        rep.line(f"d={d:>3}  extension {ext}  rho {rho}  log-det {det}")
        rep.check(f"three pipelines agree at d={d}", ok)
    rep.data = {"rows": rows}


# -- parser -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--seed", type=int, default=0)

    p = argparse.ArgumentParser(prog="secpair", description=__doc__.splitlines()[0],
                                parents=[common])
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        s = sub.add_parser(name, help=help_, parents=[common])
        s.set_defaults(func=fn)
        return s

    s = add("snf", cmd_snf, "Smith normal form of an integer matrix")
    s.add_argument("--matrix", required=True, help="JSON matrix or file")
    s = add("group", cmd_group, "group from generators and relations")
    s.add_argument("--generators", type=int, required=True)
    s.add_argument("--relations", help="JSON matrix, one relation per row")
    s = add("hom", cmd_hom, "kernel, image and cokernel of a hom")
    s.add_argument("--hom", required=True)
    s = add("ext", cmd_ext, "Ext(G, Z)")
    s.add_argument("--group", required=True)
    s = add("tor", cmd_tor, "Tor(Z/n, G)")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--group", required=True)
    s = add("pairing-ext", cmd_pairing_ext, "pairing from an extension of k1 by Z")
    s.add_argument("--extension", required=True)
    s.add_argument("--solves", type=int, default=16)
    s = add("pairing-qz", cmd_pairing_qz, "pairing from a map on K_0(Q/Z)")
    s.add_argument("--k", required=True, help='{"k0": group, "k1": group}')
    s.add_argument("--alpha", required=True, help="values on torsion generators of K_1")
    s.add_argument("--divisible", help="comma separated multipliers on (Q/Z)^rank")
    s.add_argument("--resplits", type=int, default=8)
    s = add("lambda-roundtrip", cmd_lambda, "character <-> compatible family")
    s.add_argument("--family")
    s.add_argument("--k1")
    s.add_argument("--delta")
    s.add_argument("--bound", type=int)
    s.add_argument("--count", action="store_true", help="also count compatible families")
    s = add("kk-table", cmd_kk_table, "table of KK groups of dimension drop algebras")
    s.add_argument("--max", type=int, required=True)
    s.add_argument("--degree", type=int, required=True)
    s = add("eta", cmd_eta, "eta invariant on the circle")
    s.add_argument("--theta", required=True)
    s = add("rho", cmd_rho, "relative eta invariant")
    s.add_argument("--theta1", required=True)
    s.add_argument("--theta2", required=True)
    s.add_argument("--crosscheck", action="store_true")
    s = add("zeta-check", cmd_zeta, "log-det of the winding-one generator")
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--n", type=int, default=1)
    s = add("detpair", cmd_detpair, "log-det pairing of two unitaries")
    s.add_argument("--pi", required=True)
    s.add_argument("--sigma", required=True)
    s = add("crosscheck-all", cmd_crosscheck_all, "extension, rho and log-det agreement")
    s.add_argument("--d-max", type=int, default=12)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        a = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    rep = Report(a.command)
    try:
        a.func(a, rep)
    except jio.InputError as exc:
        print(f"input error at {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ArithmeticError as exc:
        print(f"mathematical failure: {exc}", file=sys.stderr)
        return EXIT_MATH
    except ValueError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    print(rep.render(a.format))
    return EXIT_OK if rep.ok else EXIT_MATH


if __name__ == "__main__":
    sys.exit(main())
