"""JSON wire formats for everything the command line reads and writes.

Coefficients travel exactly: finite-field elements as coordinate vectors
over the prime field, quaternions as four "num/den" strings, never floats.
Decoders are strict about shape and raise InvalidInput naming the JSON
path of the first offending key; encoders are inverse on the nose, so a
decode of an encode gives back an equal object. Missing cocycle alpha
entries default to the identity and missing xi/eta entries to 1, which
keeps hand-written bundles short.
"""

import json
from dataclasses import replace
from fractions import Fraction

from .coeff import FiniteField, QuatElement, QuaternionAutomorphism, Quaternions
from .cohom import Cochain, GaugeElement, TwoCocycle, chain_keys
from .common import DEFAULT_BOUNDS
from .errors import InvalidInput
from .sgrp import SquareFreeSemigroup


def dumps(obj):
    """Canonical report serialization: sorted keys, stable layout."""
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _expect(cond, message, where):
    if not cond:
        raise InvalidInput(message, where=where)


def _as_dict(obj, where):
    _expect(isinstance(obj, dict), "expected an object", where)
    return obj


def _as_int(obj, where):
    _expect(isinstance(obj, int) and not isinstance(obj, bool), "expected an integer", where)
    return obj


def _int_list(obj, length, where):
    _expect(isinstance(obj, list) and len(obj) == length, f"expected a list of {length} integers", where)
    return [_as_int(x, f"{where}[{a}]") for a, x in enumerate(obj)]


def _indices(key, where):
    try:
        parts = tuple(int(x) for x in key.split(","))
    except ValueError:
        raise InvalidInput(f"key {key!r} is not a comma-separated index tuple", where=where)
    _expect(all(x > 0 for x in parts), "indices are 1-based", where)
    return parts


def _key_of(chain):
    if isinstance(chain, int):
        return str(chain)
    if isinstance(chain[0], int):
        return ",".join(str(x) for x in chain)
    # a composable chain of pairs is determined by its vertex sequence
    return ",".join(str(x) for x in (chain[0][0],) + tuple(p[1] for p in chain))


def _fraction(text, where):
    _expect(isinstance(text, str), 'expected a rational string "num/den"', where)
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise InvalidInput(f"{text!r} is not a rational number", where=where)


# ---------------------------------------------------------------- backends


def encode_coefficients(D):
    if isinstance(D, Quaternions):
        return {"backend": "quaternion"}
    return {"backend": "finite_field", "p": D.p, "k": D.k, "modulus": list(D.modulus)}


def decode_coefficients(obj, where="coefficients"):
    obj = _as_dict(obj, where)
    backend = obj.get("backend")
    if backend == "quaternion":
        return Quaternions()
    _expect(backend == "finite_field", f"unknown backend {backend!r}", f"{where}.backend")
    p = _as_int(obj.get("p"), f"{where}.p")
    k = _as_int(obj.get("k", 1), f"{where}.k")
    modulus = obj.get("modulus")
    if modulus is not None:
        modulus = _int_list(modulus, k + 1, f"{where}.modulus")
    try:
        return FiniteField(p, k, modulus)
    except ValueError as exc:
        raise InvalidInput(str(exc), where=where)


# ---------------------------------------------------------------- elements


def encode_element(x):
    if isinstance(x, QuatElement):
        return [f"{v.numerator}/{v.denominator}" for v in x.parts]
    return list(x.coords)


def decode_element(D, obj, where):
    if isinstance(D, Quaternions):
        _expect(isinstance(obj, list) and len(obj) == 4, "expected four rational strings", where)
        return D.element(tuple(_fraction(v, f"{where}[{a}]") for a, v in enumerate(obj)))
    coords = _int_list(obj, D.k, where)
    _expect(all(0 <= c < D.p for c in coords), f"coordinates must lie in [0,{D.p})", where)
    return D.element(coords)


def encode_automorphism(a):
    if isinstance(a, QuaternionAutomorphism):
        return {"conj": [f"{v}/1" for v in a.conjugator]}
    return {"frobenius": a.m}


def decode_automorphism(D, obj, where):
    obj = _as_dict(obj, where)
    if isinstance(D, Quaternions):
        parts = obj.get("conj")
        _expect(parts is not None, 'quaternion automorphisms are {"conj": [...]}', where)
        _expect(isinstance(parts, list) and len(parts) == 4, "expected four rational strings", f"{where}.conj")
        q = tuple(_fraction(v, f"{where}.conj[{a}]") for a, v in enumerate(parts))
        _expect(any(v != 0 for v in q), "conjugator must be nonzero", f"{where}.conj")
        return QuaternionAutomorphism(D, q)
    m = obj.get("frobenius")
    _expect(m is not None, 'field automorphisms are {"frobenius": m}', where)
    m = _as_int(m, f"{where}.frobenius")
    _expect(0 <= m < D.k, f"exponent must lie in [0,{D.k})", f"{where}.frobenius")
    return D.frobenius(m)


# --------------------------------------------------------------- semigroup


def encode_semigroup(S):
    return {
        "n": S.n,
        "support": [list(p) for p in sorted(S.support)],
        "comp": [list(t) for t in sorted(S.comp)],
    }


def decode_semigroup(obj, where="semigroup"):
    """Structural parse plus unit closure; semantic checks stay in validate()."""
    obj = _as_dict(obj, where)
    n = _as_int(obj.get("n"), f"{where}.n")
    _expect(n >= 1, "n must be positive", f"{where}.n")
    support = obj.get("support")
    _expect(isinstance(support, list), "expected a list of pairs", f"{where}.support")
    pairs = [tuple(_int_list(p, 2, f"{where}.support[{a}]")) for a, p in enumerate(support)]
    comp = obj.get("comp", [])
    _expect(isinstance(comp, list), "expected a list of triples", f"{where}.comp")
    triples = [tuple(_int_list(t, 3, f"{where}.comp[{a}]")) for a, t in enumerate(comp)]
    return SquareFreeSemigroup.make(n, pairs, triples)


# ----------------------------------------------------------------- cocycle


def encode_cocycle(c):
    alpha = {_key_of(p): encode_automorphism(a) for p, a in c.alpha.items() if not a.is_identity()}
    xi = {_key_of(t): encode_element(v) for t, v in c.xi.items() if v != v.field.one}
    return {"alpha": alpha, "xi": xi}


def decode_cocycle(S, D, obj, where="cocycle"):
    obj = _as_dict(obj, where)
    c = TwoCocycle.trivial(S, D)
    for key, enc in _as_dict(obj.get("alpha", {}), f"{where}.alpha").items():
        path = f"{where}.alpha.{key}"
        p = _indices(key, path)
        _expect(len(p) == 2 and p in S.support, f"{key!r} is not a support pair", path)
        c.alpha[p] = decode_automorphism(D, enc, path)
    for key, enc in _as_dict(obj.get("xi", {}), f"{where}.xi").items():
        path = f"{where}.xi.{key}"
        t = _indices(key, path)
        _expect(len(t) == 3 and t in S.comp, f"{key!r} is not a composable triple", path)
        v = decode_element(D, enc, path)
        _expect(not v.is_zero(), "xi values must be units", path)
        c.xi[t] = v
    return c


def encode_gauge(g):
    mu = {str(i): encode_automorphism(a) for i, a in g.mu.items() if not a.is_identity()}
    eta = {_key_of(p): encode_element(v) for p, v in g.eta.items() if v != v.field.one}
    return {"mu": mu, "eta": eta}


def decode_gauge(S, D, obj, where="gauge"):
    obj = _as_dict(obj, where)
    g = GaugeElement.identity(S, D)
    for key, enc in _as_dict(obj.get("mu", {}), f"{where}.mu").items():
        path = f"{where}.mu.{key}"
        idx = _indices(key, path)
        _expect(len(idx) == 1 and 1 <= idx[0] <= S.n, f"{key!r} is not an idempotent index", path)
        g.mu[idx[0]] = decode_automorphism(D, enc, path)
    for key, enc in _as_dict(obj.get("eta", {}), f"{where}.eta").items():
        path = f"{where}.eta.{key}"
        p = _indices(key, path)
        _expect(len(p) == 2 and p in S.support, f"{key!r} is not a support pair", path)
        v = decode_element(D, enc, path)
        _expect(not v.is_zero(), "eta values must be units", path)
        g.eta[p] = v
    return g


# ----------------------------------------------------------------- cochain


def encode_cochain(phi):
    return {"m": phi.m, "cochain": {_key_of(k): encode_element(v) for k, v in phi.data.items()}}


def decode_cochain(S, D, obj, where="cochain"):
    """Total m-cochain from {"m": int, "cochain": {...}}; no defaulting."""
    obj = _as_dict(obj, where)
    m = _as_int(obj.get("m"), f"{where}.m")
    _expect(0 <= m <= 3, "cochain degree must lie in [0,3]", f"{where}.m")
    table = _as_dict(obj.get("cochain"), f"{where}.cochain")
    keys = chain_keys(S, m)
    wanted = {_key_of(k): k for k in keys}
    data = {}
    for key, enc in table.items():
        path = f"{where}.cochain.{key}"
        _expect(key in wanted, f"{key!r} is not a composable {m}-chain", path)
        v = decode_element(D, enc, path)
        _expect(not v.is_zero(), "cochain values must be units", path)
        data[wanted[key]] = v
    for key in wanted:
        _expect(key in table, f"missing value at {key!r}", f"{where}.cochain")
    return Cochain(m, data)


def encode_ring_element(x):
    return {_key_of(p): encode_element(v) for p, v in sorted(x.coeffs.items())}


def encode_ring_aut(f):
    """Images of the additive basis, keyed "i,j:t" for gen^t s_ij."""
    R = f.ring
    images = {}
    for p in sorted(R.S.support):
        for t, b in enumerate(R.D.power_basis()):
            images[f"{_key_of(p)}:{t}"] = encode_ring_element(f.apply(R.element({p: b})))
    return {"images": images}


def decode_ring_element(R, obj, where="element"):
    obj = _as_dict(obj, where)
    coeffs = {}
    for key, enc in obj.items():
        path = f"{where}.{key}"
        p = _indices(key, path)
        _expect(len(p) == 2 and p in R.S.support, f"{key!r} is not a support pair", path)
        coeffs[p] = decode_element(R.D, enc, path)
    return R.element(coeffs)


# ------------------------------------------------------------------ bundle


def decode_bounds(obj, base=DEFAULT_BOUNDS, where="bounds"):
    if obj is None:
        return base
    obj = _as_dict(obj, where)
    values = {}
    for name in ("max_units", "max_search", "aut_s_max_n"):
        if name in obj:
            value = _as_int(obj[name], f"{where}.{name}")
            _expect(value > 0, "bounds must be positive", f"{where}.{name}")
            values[name] = value
    return replace(base, **values) if values else base


def decode_bundle(obj, base_bounds=DEFAULT_BOUNDS):
    """Parse {semigroup, coefficients, cocycle?, bounds?} into domain objects."""
    obj = _as_dict(obj, "bundle")
    _expect("semigroup" in obj, "missing semigroup", "bundle.semigroup")
    _expect("coefficients" in obj, "missing coefficients", "bundle.coefficients")
    S = decode_semigroup(obj["semigroup"])
    D = decode_coefficients(obj["coefficients"])
    cocycle = None
    if obj.get("cocycle") is not None:
        cocycle = decode_cocycle(S, D, obj["cocycle"])
    bounds = decode_bounds(obj.get("bounds"), base_bounds)
    return S, D, cocycle, bounds
