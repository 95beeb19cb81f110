"""Batch front-end: read a JSON request, run one operation, print a verdict.

Exit codes: 0 the property holds or the construction succeeded, 1 it fails
(a witness is printed), 2 the request is malformed or violates a precondition.
"""
from __future__ import annotations

import argparse
import json
import sys
import time

from .algebra import (AlgebraError, AlgebraHom, Ideal, PowersetAlgebra, UnsupportedOperation,
                      boolean_law_failures, make_algebra)
from .contact import (AtomGraph, CRho, ExplicitRelation, LocalContactAlgebra, Overlap, Partition,
                      check_contact_axioms, check_lca, check_nca)
from .duality import check_morphism_conditions, psi_a_object, round_trip_algebra, round_trip_object
from .extensions import (LocalProximitySpace, beta_ncr, compare_ncr, enumerate_ka, is_admissible_ncr,
                         ka_hasse_dot, reconstruct_local_proximity, restrict_local_proximity, restricts_to,
                         sup_ncr, wallman_check)
from .frames import frame_of_delta_ideals, iota, open_set_dual, regular_closed_dual
from .report import ConditionReport, ConstructionError, PreconditionError
from .spaces import FiniteSpace, SpaceError, SpaceMap, dual_morphism, map_properties, rc_algebra


class RequestError(ValueError):
    pass


# ---------------------------------------------------------------------------
# descriptors
# ---------------------------------------------------------------------------

def _need(d, key, what="request"):
    if not isinstance(d, dict) or key not in d:
        raise RequestError(f"{what} needs '{key}'")
    return d[key]


def parse_element(A, obj):
    return A.check(A.decode(obj))


def _atom(A, obj):
    if isinstance(obj, (list, dict)):
        e = parse_element(A, obj)
    else:
        e = A.element([obj])
    if not A.is_atom(e):
        raise RequestError(f"{obj!r} is not an atom")
    return e


def parse_contact(A, d, lca: LocalContactAlgebra | None = None):
    kind = _need(d, "kind", "contact")
    if kind == "overlap":
        return Overlap(A)
    if kind == "atom_graph":
        return AtomGraph(A, [(_atom(A, p), _atom(A, q)) for p, q in d.get("edges", [])])
    if kind == "partition":
        return Partition(A, _need(d, "modulus", "partition"), _need(d, "blocks", "partition"))
    if kind == "explicit":
        return ExplicitRelation(A, [(parse_element(A, a), parse_element(A, b)) for a, b in d.get("pairs", [])])
    if kind in ("c_rho", "beta"):
        if lca is None:
            raise RequestError(f"contact kind {kind!r} needs an 'lca' in the request")
        return CRho(lca) if kind == "c_rho" else beta_ncr(lca)
    raise RequestError(f"unknown contact kind {kind!r}")


def parse_ideal(A, d) -> Ideal:
    kind = _need(d, "kind", "bounded")
    if kind == "all":
        return Ideal.all()
    if kind == "finite":
        return Ideal.all() if A.finite else Ideal.finite_elements()
    if kind == "principal":
        return Ideal.principal(parse_element(A, _need(d, "top", "principal ideal")))
    if kind == "list":
        return Ideal.generated(A, [parse_element(A, e) for e in _need(d, "elements", "list ideal")])
    raise RequestError(f"unknown bounded kind {kind!r}")


def parse_lca(d, algebra=None) -> LocalContactAlgebra:
    A = algebra or make_algebra(_need(d, "algebra", "lca"))
    contact = d.get("contact", {"kind": "overlap"})
    if contact.get("kind") in ("c_rho", "beta"):
        raise RequestError("an lca's base contact cannot be derived from itself")
    rho = parse_contact(A, contact)
    return LocalContactAlgebra(A, rho, parse_ideal(A, d.get("bounded", {"kind": "all"})))


def parse_space(d) -> FiniteSpace:
    return FiniteSpace.from_descriptor(d)


def parse_map(X, Y, d) -> SpaceMap:
    imgs = _need(d, "images", "map")
    lookup = {str(y): y for y in Y.points}
    try:
        return SpaceMap(X, Y, {x: lookup[str(imgs[str(x)])] for x in X.points})
    except KeyError as e:
        raise RequestError(f"map image missing or unknown: {e}") from None


def describe_lca(L: LocalContactAlgebra) -> dict:
    A = L.algebra
    return {"algebra": A.describe(), "contact": L.rho.describe(), "bounded": L.bounded.describe(A)}


def encoder(A):
    def enc(w):
        if A.contains(w):
            return A.encode(w)
        raise ValueError(w)
    return enc


# ---------------------------------------------------------------------------
# commands: each returns (holds, payload)
# ---------------------------------------------------------------------------

def _with_lca(req):
    L = parse_lca(req["lca"]) if "lca" in req else None
    A = L.algebra if L else make_algebra(_need(req, "algebra"))
    return A, L


def cmd_check_algebra(req, fmt):
    A, _ = _with_lca(req)
    bad, method = boolean_law_failures(A)
    rep = ConditionReport("Boolean algebra laws")
    rep.add("boolean-laws", not bad, bad[0] if bad else None, method)
    return rep.ok, {"algebra": A.describe(), "report": rep.to_dict(encoder(A))}


def _cmd_contact(req, checker):
    A, L = _with_lca(req)
    C = parse_contact(A, req.get("contact", {"kind": "overlap"}), L)
    rep = checker(A, C, req.get("samples", 30), req.get("seed", 0))
    return rep.ok, {"contact": C.describe(), "report": rep.to_dict(encoder(A))}


def cmd_check_contact(req, fmt):
    return _cmd_contact(req, check_contact_axioms)


def cmd_check_nca(req, fmt):
    return _cmd_contact(req, check_nca)


def cmd_check_lca(req, fmt):
    L = parse_lca(_need(req, "lca"))
    rep = check_lca(L, req.get("samples", 30), req.get("seed", 0))
    return rep.ok, {"lca": describe_lca(L), "report": rep.to_dict(encoder(L.algebra))}


def _space_payload(Y, label=repr):
    return {"points": [label(p) for p in Y.points],
            "opens": sorted(sorted(label(p) for p in U) for U in Y.opens)}


def cmd_dualize(req, fmt):
    if "space" in req:
        X = parse_space(req["space"])
        L = rc_algebra(X)
        if fmt == "dot":
            return True, X.to_dot("space")
        return True, {"lca": describe_lca(L)}
    L = parse_lca(_need(req, "lca"))
    Y = psi_a_object(L)
    if fmt == "dot":
        return True, Y.to_dot("dual", label=repr)
    A = L.algebra
    lam = {json.dumps(A.encode(p), sort_keys=True): sorted(repr(s) for s in Y.lambda_g(p)) for p in A.atoms()}
    return True, {"space": _space_payload(Y), "lambda_g_of_atoms": lam}


def cmd_dual_map(req, fmt):
    X, Y = parse_space(_need(req, "source")), parse_space(_need(req, "target"))
    f = parse_map(X, Y, _need(req, "map"))
    props = map_properties(f)
    try:
        phi = dual_morphism(f)
    except PreconditionError as e:
        return False, {"map_properties": props.to_dict(), "error": str(e)}
    B = phi.source
    table = [[B.encode(F), phi.target.encode(phi(F))] for F in B.elements()]
    conds = check_morphism_conditions(phi)
    return True, {"phi": table, "map_properties": props.to_dict(),
                  "conditions": conds.to_dict(encoder(B))}


def cmd_check_morphism(req, fmt):
    LA, LB = parse_lca(_need(req, "source")), parse_lca(_need(req, "target"))
    A, B = LA.algebra, LB.algebra
    images = {_atom(A, p): parse_element(B, q) for p, q in _need(req, "atom_images")}
    if set(images) != set(A.atoms()):
        raise RequestError("atom_images must list every source atom once")
    phi = AlgebraHom.from_atom_images(A, B, images, "phi")
    laws = phi.hom_law_failures()
    if laws:
        raise RequestError(f"atom images do not give a Boolean homomorphism ({laws[0][0]})")
    rep = check_morphism_conditions(phi, LA, LB)
    need = req.get("require", ["EL1", "L2"])
    unknown = [c for c in need if c not in rep]
    if unknown:
        raise RequestError(f"unknown conditions {unknown}")
    return rep.holds(*need), {"required": need, "report": rep.to_dict(encoder(B))}


def cmd_round_trip(req, fmt):
    if "space" in req:
        X = parse_space(req["space"])
        t, rep = round_trip_object(X)
        out = {"report": rep.to_dict()}
        if t is not None:
            out["t"] = {str(x): repr(t(x)) for x in X.points}
        return rep.ok, out
    L = parse_lca(_need(req, "lca"))
    lam, rep = round_trip_algebra(L)
    return rep.ok, {"report": rep.to_dict(encoder(L.algebra))}


def _ideal_members(L, d):
    A = L.algebra
    top = parse_element(A, _need(d, "top", "ideal"))
    return frozenset(e for e in A.elements() if A.leq(e, top))


def cmd_frame(req, fmt):
    L = parse_lca(_need(req, "lca"))
    F = frame_of_delta_ideals(L)
    A = L.algebra
    tops = [F.top_element(I) for I in F.ideals]
    if fmt == "dot":
        lines = ["digraph frame {"]
        name = lambda t: "{" + ",".join(map(str, A.encode(t)["atoms"])) + "}"
        lines += [f'  "{name(t)}";' for t in tops]
        for s in tops:
            for t in tops:
                if s != t and A.leq(s, t) and not any(u not in (s, t) and A.leq(s, u) and A.leq(u, t) for u in tops):
                    lines.append(f'  "{name(s)}" -> "{name(t)}";')
        lines.append("}")
        return True, "\n".join(lines)
    return True, {"delta_ideals": [{"top": A.encode(t)} for t in tops], "count": len(tops)}


def cmd_iota(req, fmt):
    L = parse_lca(_need(req, "lca"))
    U = iota(L, _ideal_members(L, _need(req, "ideal")))
    return True, {"open_set": sorted(repr(s) for s in U)}


def _construction_payload(con):
    B = con.lca.algebra
    out = {"lca": describe_lca(con.lca), "report": con.report.to_dict(encoder(B)),
           "image": sorted(repr(s) for s in con.image)}
    if con.observations:
        out["observations"] = con.observations
    return out


def cmd_open_dual(req, fmt):
    L = parse_lca(_need(req, "lca"))
    con = open_set_dual(L, _ideal_members(L, _need(req, "ideal")))
    return con.report.ok, _construction_payload(con)


def cmd_closed_dual(req, fmt):
    L = parse_lca(_need(req, "lca"))
    con = regular_closed_dual(L, parse_element(L.algebra, _need(req, "element")))
    return con.report.ok, _construction_payload(con)


def cmd_compactify(req, fmt, mode):
    L = parse_lca(_need(req, "lca"))
    A = L.algebra
    if mode == "alexandroff":
        C = CRho(L)
        ok, rep = is_admissible_ncr(L, C)
        return ok, {"relation": C.describe(), "report": rep.to_dict(encoder(A))}
    if mode == "beta":
        C = beta_ncr(L)
        return True, {"relation": C.describe()}
    rels = [parse_contact(A, d, L) for d in _need(req, "relations")]
    if mode == "sup":
        return True, {"relation": sup_ncr(L, rels).describe()}
    if mode == "compare":
        if len(rels) != 2:
            raise RequestError("compare needs exactly two relations")
        return True, compare_ncr(*rels).to_dict(encoder(A))
    if mode == "hasse":
        rels = rels or enumerate_ka(L)
        return True, ka_hasse_dot(rels)
    raise RequestError(f"unknown compactify mode {mode!r}")


def _proximity_from(req) -> LocalProximitySpace:
    points = _need(req, "points")
    A = PowersetAlgebra(points)
    rho = parse_contact(A, req.get("contact", {"kind": "overlap"}))
    b = req.get("bounded", {"kind": "all"})
    top = None if b.get("kind") == "all" else parse_ideal(A, b).top
    return LocalProximitySpace(points, rho, top)


def cmd_proximity(req, fmt, mode):
    if mode == "restrict":
        P = _proximity_from(req)
        X, L, rep = restrict_local_proximity(P, req.get("check_separated", True))
        return rep.ok, {"space": X.describe(), "lca": describe_lca(L), "report": rep.to_dict(encoder(L.algebra))}
    X = parse_space(_need(req, "space"))
    L = parse_lca(req, algebra=rc_algebra(X).algebra)
    P = reconstruct_local_proximity(X, L)
    A = P.algebra
    pairs = [[X.sort(M), X.sort(N)] for M in A.elements() for N in A.elements() if M and N and P.rho(M, N)]
    ok = restricts_to(P, X, L)
    return ok, {"points": list(P.points), "bounded_top": X.sort(P.bounded.top), "related": pairs,
                "restricts_back": ok}


def cmd_wallman(req, fmt):
    L = parse_lca(_need(req, "lca"))
    A = L.algebra
    C = parse_contact(A, req.get("contact", L.rho.describe()), L)
    fam = [parse_element(A, e) for e in _need(req, "family")]
    ok, rep = wallman_check(L, C, fam)
    return ok, {"report": rep.to_dict(encoder(A))}


def cmd_report(req, fmt):
    L = parse_lca(_need(req, "lca"))
    A = L.algebra
    rep = check_lca(L)
    out = {"lca": describe_lca(L), "report": rep.to_dict(encoder(A)),
           "c_rho": CRho(L).describe() if not A.finite else None}
    if rep.ok:
        try:
            out["c_beta_rho"] = beta_ncr(L).describe()
        except UnsupportedOperation:
            out["c_beta_rho"] = None
        if A.finite:
            Y = psi_a_object(L)
            out["dual_space"] = _space_payload(Y)
            out["delta_ideals"] = len(frame_of_delta_ideals(L))
            out["admissible_relations"] = len(enumerate_ka(L))
    return rep.ok, out


COMMANDS = {
    "check-algebra": cmd_check_algebra,
    "check-contact": cmd_check_contact,
    "check-nca": cmd_check_nca,
    "check-lca": cmd_check_lca,
    "dualize": cmd_dualize,
    "dual-map": cmd_dual_map,
    "check-morphism": cmd_check_morphism,
    "round-trip": cmd_round_trip,
    "frame": cmd_frame,
    "iota": cmd_iota,
    "open-dual": cmd_open_dual,
    "closed-dual": cmd_closed_dual,
    "compactify": cmd_compactify,
    "proximity": cmd_proximity,
    "wallman": cmd_wallman,
    "report": cmd_report,
}
MODES = {"compactify": ("alexandroff", "beta", "sup", "compare", "hasse"),
         "proximity": ("restrict", "reconstruct")}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="contact-duality", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", metavar="command")
    for name in COMMANDS:
        sp = sub.add_parser(name)
        if name in MODES:
            sp.add_argument("mode", choices=MODES[name])
        sp.add_argument("request", help="JSON request file, or - for stdin")
        sp.add_argument("--format", choices=("json", "dot", "text"), default="json")
        sp.add_argument("--timing", action="store_true", help="add wall-clock seconds to the output")
    return p


def _load(path):
    text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
    req = json.loads(text)
    if not isinstance(req, dict):
        raise RequestError("request must be a JSON object")
    return req


def _emit(payload, fmt, out):
    if isinstance(payload, str):
        out.write(payload + "\n")
    elif fmt == "text":
        for k, v in payload.items():
            out.write(f"{k}: {json.dumps(v, sort_keys=True)}\n")
    else:
        out.write(json.dumps(payload, sort_keys=True, indent=2, default=repr) + "\n")


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code else 0
    if not args.command:
        parser.print_usage(sys.stderr)
        return 2
    t0 = time.perf_counter()
    fn = COMMANDS[args.command]
    try:
        req = _load(args.request)
        extra = (args.mode,) if args.command in MODES else ()
        holds, payload = fn(req, args.format, *extra)
    except (OSError, json.JSONDecodeError, RequestError, AlgebraError, SpaceError, PreconditionError,
            UnsupportedOperation, KeyError, TypeError, ValueError) as e:
        _emit({"command": args.command, "status": "error", "error": f"{type(e).__name__}: {e}"}, "json", out)
        return 2
    except ConstructionError as e:
        holds, payload = False, {"error": str(e), "witness": str(e)}
    if isinstance(payload, str) and args.format == "dot":
        _emit(payload, args.format, out)
        return 0 if holds else 1
    if isinstance(payload, str):
        payload = {"dot": payload}
    verdict = {"command": args.command, "status": "holds" if holds else "fails", **payload}
    if args.timing:
        verdict["seconds"] = round(time.perf_counter() - t0, 6)
    _emit(verdict, args.format, out)
    return 0 if holds else 1


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
