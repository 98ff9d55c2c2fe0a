"""``moddiv``: batch front door to the kernel.

Every verb reads one JSON input (a file path or inline JSON via ``-i``),
computes, and prints ``{"verb", "inputDigest", "result"}``.  Exit status is 0
for any computed answer (a counterexample or ``notDivisible`` is an answer),
2 for bad input, 3 when an enumeration budget is exceeded, and 1 when
``suite`` has a failing criterion.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys

from . import __version__
from .acceptance import CRITERIA
from .decomposition import (
    check_certificate,
    invariant_factors,
    lift_module,
    split_lemma_dec,
)
from .divisibility import (
    divide,
    is_seemingly_divisible,
    oracle_divide,
    seeming_vs_divisible,
    verify_certificate,
)
from .errors import BudgetExceeded, ModdivError
from .gallery import (
    MODULE_BUDGET,
    RING_BUDGET,
    SizeBounds,
    classify_finite_ring,
    gallery_build,
    probe_ring,
    step2_counterexample,
)
from .homological import homology_maps, null_homotopy, obstruction_class
from .linalg import RingMatrix, hnf, snf, solve_linear
from .modules import FPModule, ModuleHom, compose, hom_validate, identity_hom
from .rings import PolyQuotient, _Residues, parse_ring
from . import polys

VERBS = (
    "snf", "hnf", "solve", "check-hom", "seeming", "divide", "oracle", "homology",
    "obstruction", "decompose", "invariants", "classify-ring", "step2", "probe",
    "gallery", "suite",
)


class InputError(ValueError):
    pass


def canonical(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def load_input(spec: str | None):
    if spec is None:
        return None
    text = spec
    stripped = spec.lstrip()
    if not stripped.startswith(("{", "[")):
        if not os.path.exists(spec):
            raise InputError(f"input {spec!r} is neither a file nor inline JSON")
        with open(spec, encoding="utf-8") as fh:
            text = fh.read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None


# -- input shapes -------------------------------------------------------------------

def _ring(args, data):
    if isinstance(data, dict) and "ring" in data:
        return parse_ring(data["ring"])
    if args.ring:
        return parse_ring(args.ring)
    raise InputError("no ring given (use -r or a \"ring\" field)")


def _matrix(args, data, key=None) -> RingMatrix:
    if not isinstance(data, dict):
        raise InputError("expected a JSON object")
    if key is not None:
        obj = data.get(key)
    else:
        obj = data.get("matrix", data)
    if not isinstance(obj, dict):
        raise InputError(f"expected a matrix object{' at ' + repr(key) if key else ''}")
    R = parse_ring(obj["ring"]) if "ring" in obj else _ring(args, data)
    return RingMatrix.from_json(obj, R)


def _module(args, data, key="module") -> FPModule:
    obj = data.get(key, data) if isinstance(data, dict) else None
    if not isinstance(obj, dict) or "gens" not in obj:
        raise InputError(f"expected a module object at {key!r}")
    R = parse_ring(obj["ring"]) if "ring" in obj else _ring(args, data)
    return FPModule.from_json(obj, R)


def _hom_and_r(args, data) -> tuple[ModuleHom, object]:
    """Accepts ``{"hom"|"f": hom, "r": r}`` or a gallery scenario bundle."""
    if not isinstance(data, dict):
        raise InputError("expected a JSON object")
    ring = None
    if "ring" in data or args.ring:
        ring = _ring(args, data)
    if "homs" in data:
        homs = data["homs"]
        obj = homs.get("f") or next(iter(homs.values()))
    elif "hom" in data:
        obj = data["hom"]
    elif "f" in data:
        obj = data["f"]
    elif "checkable" in data:
        obj = data["checkable"]["f"]
        data = {"r": data["checkable"]["r"], **data}
    else:
        raise InputError("expected \"hom\", \"f\" or \"homs\" in the input")
    f = ModuleHom.from_json(obj, ring)
    if "r" not in data:
        raise InputError("missing \"r\"")
    return f, f.ring.from_json(data["r"])


def _require_valid(f: ModuleHom):
    ok, bad = hom_validate(f)
    if not ok:
        raise InputError(f"hom is not well defined: relation column {bad} of the source")


# -- verbs --------------------------------------------------------------------------

def _nf_json(nf) -> dict:
    return {
        "D": nf.D.to_json(),
        "U": nf.U.to_json(),
        "V": nf.V.to_json(),
        "pivots": [list(p) for p in nf.pivots],
    }


def verb_snf(args, data):
    return _nf_json(snf(_matrix(args, data)))


def verb_hnf(args, data):
    return _nf_json(hnf(_matrix(args, data)))


def verb_solve(args, data):
    A = _matrix(args, data, "A")
    b = _matrix(args, data, "b")
    sol = solve_linear(A, b)
    if sol is None:
        return {"solvable": False, "x0": None, "kernel": []}
    x0, kernel = sol
    return {"solvable": True, "x0": x0.to_json(), "kernel": [k.to_json() for k in kernel]}


def verb_check_hom(args, data):
    """Validate a hom, or re-check any certificate this tool emits."""
    if isinstance(data, dict) and "verb" in data and "result" in data:
        return _recheck_envelope(args, data)
    if isinstance(data, dict) and "checkable" in data:
        return {"kind": "certificate", "valid": verify_certificate(data)}
    obj = data.get("hom", data) if isinstance(data, dict) else data
    ring = _ring(args, data) if isinstance(data, dict) and ("ring" in data or args.ring) else None
    f = ModuleHom.from_json(obj, ring)
    ok, bad = hom_validate(f)
    return {"kind": "hom", "wellDefined": ok, "badRelation": bad}


def _recheck_envelope(args, env):
    verb, res = env["verb"], env["result"]
    if verb in ("divide", "oracle"):
        return {"kind": "certificate", "valid": verify_certificate(res)}
    if verb == "seeming":
        f, r = _hom_and_r(args, res["input"])
        return {"kind": "seeming", "valid": is_seemingly_divisible(f, r).to_json(f.ring) == res["report"]}
    if verb == "step2":
        f = ModuleHom.from_json(res["hom"])
        r = f.ring.from_json(res["r"])
        cmp = seeming_vs_divisible(f, r)
        return {"kind": "step2", "valid": cmp.status == res["status"] and hom_validate(f)[0]}
    if verb == "decompose":
        phi = ModuleHom.from_json(res["iso"]["phi"])
        psi = ModuleHom.from_json(res["iso"]["psi"])
        ok = (
            hom_validate(phi)[0]
            and hom_validate(psi)[0]
            and compose(psi, phi).equals(identity_hom(phi.source))
            and compose(phi, psi).equals(identity_hom(phi.target))
        )
        return {"kind": "isomorphism", "valid": ok}
    if verb == "obstruction":
        f, r = _hom_and_r(args, res["input"])
        return {"kind": "obstruction", "valid": obstruction_class(f, r).to_json() == res["report"]}
    raise InputError(f"no re-check defined for verb {verb!r}")


def verb_seeming(args, data):
    f, r = _hom_and_r(args, data)
    _require_valid(f)
    report = is_seemingly_divisible(f, r).to_json(f.ring)
    return {"input": {"hom": f.to_json(), "r": f.ring.to_json(r)},
            "verdict": report["verdict"], "report": report}


def verb_divide(args, data):
    f, r = _hom_and_r(args, data)
    _require_valid(f)
    return divide(f, r).to_json()


def verb_oracle(args, data):
    f, r = _hom_and_r(args, data)
    _require_valid(f)
    return oracle_divide(f, r).to_json()


def verb_homology(args, data):
    f, r = _hom_and_r(args, data)
    _require_valid(f)
    out = homology_maps(f, r).to_json()
    if out["coneApplicable"]:
        h = null_homotopy(f, r)
        out["nullHomotopy"] = h.to_json() if h is not None else None
    return out


def verb_obstruction(args, data):
    f, r = _hom_and_r(args, data)
    _require_valid(f)
    return {"input": {"hom": f.to_json(), "r": f.ring.to_json(r)},
            "report": obstruction_class(f, r).to_json()}


def _infer_local(R):
    """``(p, n)`` with ``R = E/(p^n)``, or raise."""
    if isinstance(R, _Residues):
        q = R.modulus
        for p in range(2, q + 1):
            if q % p == 0:
                n, m = 0, q
                while m % p == 0:
                    m //= p
                    n += 1
                if m == 1:
                    return p, n
                break
    elif isinstance(R, PolyQuotient):
        f = R.modulus
        for d in range(1, len(f)):
            for lp in _monic_irreducibles(R.p, d):
                n, g = 0, f
                while True:
                    q, rem = polys.divmod_(g, lp, R.p)
                    if rem:
                        break
                    g, n = q, n + 1
                if n:
                    if g == (1,):
                        return R.project([lp]), n
                    raise InputError(f"{R} is not a quotient by a prime power")
    raise InputError(f"{R} is not of the shape E/(p^n); pass \"p\" and \"n\"")


def _monic_irreducibles(p, d):
    import itertools

    for coeffs in itertools.product(range(p), repeat=d):
        lp = tuple(coeffs) + (1,)
        if polys.is_irreducible(lp, p):
            yield lp


def verb_decompose(args, data):
    M = _module(args, data)
    R = M.ring
    if isinstance(data, dict) and "p" in data and "n" in data:
        p, n = R.from_json(data["p"]), int(data["n"])
    else:
        p, n = _infer_local(R)
    dec = split_lemma_dec(M, p, n)
    check_certificate(dec)
    out = dec.to_json()
    out["p"] = R.to_json(p)
    out["n"] = n
    return out


def verb_invariants(args, data):
    M = _module(args, data)
    R = M.ring
    lifted = lift_module(M)
    factors, rank = invariant_factors(lifted)
    B = lifted.ring
    return {
        "ring": R.descriptor(),
        "computedOver": B.descriptor(),
        "invariantFactors": [B.to_json(d) for d in factors],
        "freeRank": rank,
    }


def _bounds(args) -> SizeBounds:
    return SizeBounds(max_module_size=args.max_module_size or MODULE_BUDGET)


def verb_classify_ring(args, data):
    R = _ring(args, data or {})
    return classify_finite_ring(R, args.max_ring_size or RING_BUDGET).to_json()


def verb_step2(args, data):
    data = data or {}
    R = _ring(args, data)
    get = lambda k: R.from_json(data[k]) if k in data else None  # noqa: E731
    f, r = step2_counterexample(R, get("t"), get("y"), get("idempotent"))
    cmp = seeming_vs_divisible(f, r)
    oracle = oracle_divide(f, r)
    return {
        "hom": f.to_json(),
        "r": R.to_json(r),
        "status": cmp.status,
        "seeming": cmp.seeming.to_json(R),
        "division": cmp.certificate.to_json(),
        "oracle": {"divisible": oracle.divisible, "count": oracle.count},
    }


def verb_probe(args, data):
    R = _ring(args, data or {})
    seed = args.seed if args.seed is not None else 0
    v = probe_ring(
        R,
        trials=args.trials if args.trials is not None else 100,
        seed=seed,
        bounds=_bounds(args),
        max_ring_size=args.max_ring_size or RING_BUDGET,
    )
    return v.to_json()


def verb_gallery(args, data):
    name = args.name or (data or {}).get("name")
    if not name:
        raise InputError("gallery needs a scenario name")
    return gallery_build(name)


def verb_suite(args, data):
    wanted = args.criteria or sorted(CRITERIA)
    results = []
    for k in wanted:
        if k not in CRITERIA:
            raise InputError(f"unknown criterion {k}")
        res = CRITERIA[k]()
        print(res.line(), file=sys.stderr)
        results.append(res.to_json())
    return {"criteria": results, "allPassed": all(r["passed"] for r in results)}


HANDLERS = {
    "snf": verb_snf,
    "hnf": verb_hnf,
    "solve": verb_solve,
    "check-hom": verb_check_hom,
    "seeming": verb_seeming,
    "divide": verb_divide,
    "oracle": verb_oracle,
    "homology": verb_homology,
    "obstruction": verb_obstruction,
    "decompose": verb_decompose,
    "invariants": verb_invariants,
    "classify-ring": verb_classify_ring,
    "step2": verb_step2,
    "probe": verb_probe,
    "gallery": verb_gallery,
    "suite": verb_suite,
}

NEEDS_INPUT = {"snf", "hnf", "solve", "check-hom", "seeming", "divide", "oracle", "homology",
               "obstruction", "decompose", "invariants"}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="moddiv", description="Divisibility of module homomorphisms.")
    ap.add_argument("--version", action="version", version=f"moddiv {__version__}")
    ap.add_argument("verb", choices=VERBS)
    ap.add_argument("name", nargs="?", help="gallery scenario name")
    ap.add_argument("-i", "--input", help="JSON file or inline JSON")
    ap.add_argument("-o", "--output", help="write the JSON result here")
    ap.add_argument("-r", "--ring", help="ring descriptor, e.g. 'Z/8'")
    ap.add_argument("--seed", type=int)
    ap.add_argument("--trials", type=int)
    ap.add_argument("--max-module-size", type=int)
    ap.add_argument("--max-ring-size", type=int)
    ap.add_argument("--criteria", type=int, nargs="*", help="suite: criterion numbers to run")
    ap.add_argument("--format", choices=("json", "pretty"), default="json")
    return ap


def _emit(args, payload: dict):
    if args.format == "pretty":
        text = json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False)
    else:
        text = canonical(payload)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _error(verb, kind: str, message: str, code: int) -> int:
    print(canonical({"verb": verb, "error": {"type": kind, "message": message}}), file=sys.stderr)
    return code


def run(argv=None) -> int:
    args = build_parser().parse_args(argv)
    verb = args.verb
    try:
        data = load_input(args.input)
        if verb in NEEDS_INPUT and data is None:
            raise InputError(f"{verb} needs -i/--input")
        payload_in = data
        if verb != "check-hom" and isinstance(data, dict) and "verb" in data and "result" in data:
            payload_in = data["result"]  # output of another verb, e.g. a gallery scenario
        result = HANDLERS[verb](args, payload_in)
    except BudgetExceeded as exc:
        return _error(verb, "budget", str(exc), 3)
    except (InputError, ModdivError, ValueError, KeyError, TypeError, IndexError) as exc:
        if isinstance(exc, AssertionError):
            raise
        kind = "input" if isinstance(exc, InputError) else type(exc).__name__
        msg = str(exc) if not isinstance(exc, KeyError) else f"missing field {exc}"
        return _error(verb, kind, msg, 2)
    payload = {
        "verb": verb,
        "inputDigest": hashlib.sha256(canonical(data).encode("utf-8")).hexdigest(),
        "result": result,
    }
    if args.seed is not None:
        payload["seed"] = args.seed
    _emit(args, payload)
    if verb == "suite" and not result["allPassed"]:
        return 1
    return 0


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":  # pragma: no cover
    main()
