"""Instance files: canonical JSON plus a lenient text front-end.

The canonical form round-trips: serializing a parsed instance and parsing it
back yields an equal instance.  Option values ride along unchanged so reports
echo exactly what ran.
"""

from __future__ import annotations

import json
import re

from .errors import ParseError
from .exprparse import parse_generator, parse_polynomial
from .matlis import ResourceCaps
from .modp import ModpConfig, ModpPolicy
from .orders import MonomialOrder, ORDER_KINDS
from .reduction import ProblemInstance, generator_to_str
from .scalars import GF, QQ, is_prime

DEFAULT_OPTIONS = {
    "max_terms": 5000,
    "max_degree": 64,
    "max_iterations": 10000,
    "modp": "auto",
    "modp_threshold": 4,
    "modp_retries": 3,
    "search_bound": 5,
    "trunc_degree": 4,
}

_PARAM_NAME = re.compile(r"^t_\d+_\d+$")


def _fail(message, line=None):
    raise ParseError(message, line)


def _parse_order_value(value, variables):
    if isinstance(value, str):
        text = value.strip()
        parts = [p for p in re.split(r"[>\s]+", text) if p]
        if not parts:
            _fail("empty order")
        kind = parts[0]
        names = parts[1:]
    elif isinstance(value, dict):
        kind = value.get("kind", "glex")
        names = value.get("precedence") or []
    else:
        _fail(f"cannot read order from {value!r}")
    if kind not in ORDER_KINDS:
        _fail(f"unknown order kind {kind!r} (expected one of {ORDER_KINDS})")
    if not names:
        # explicit precedence so parse(serialize(.)) round-trips to equality
        return MonomialOrder(kind, tuple(range(len(variables))))
    if sorted(names) != sorted(variables):
        _fail("order precedence must list every variable exactly once")
    index = {v: i for i, v in enumerate(variables)}
    return MonomialOrder(kind, tuple(index[n] for n in names))


def _text_to_mapping(text):
    """The lenient front-end: 'key: value' lines, '#' comments."""
    mapping = {}
    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ":" not in line:
            _fail(f"expected 'key: value' in {raw!r}", ln)
        key, value = line.split(":", 1)
        key = key.strip().lower().replace("-", "_")
        mapping[key] = (value.strip(), ln)
    out = {}
    options = {}
    for key, (value, ln) in mapping.items():
        if key in ("characteristic", "char"):
            out["characteristic"] = _int_or_fail(value, ln)
        elif key in ("variables", "vars"):
            out["variables"] = [v.strip() for v in value.split(",") if v.strip()]
        elif key == "order":
            out["order"] = value
        elif key in ("dim", "dimension"):
            out["dim"] = _int_or_fail(value, ln)
        elif key in ("ideal", "j"):
            out["ideal"] = [v.strip() for v in value.split(",") if v.strip()]
        elif key in ("quotient_ideal", "quotient", "i"):
            out["quotient_ideal"] = [v.strip() for v in value.split(",") if v.strip()]
        elif key in DEFAULT_OPTIONS:
            options[key] = value if key == "modp" else _int_or_fail(value, ln)
        else:
            _fail(f"unknown key {key!r}", ln)
    if options:
        out["options"] = options
    return out


def _int_or_fail(value, line=None):
    try:
        return int(value)
    except ValueError:
        _fail(f"expected an integer, got {value!r}", line)


def parse_instance(text):
    """Parse an instance file (JSON or lenient text) into (instance, options)."""
    stripped = text.lstrip()
    if stripped.startswith("{"):
        try:
            mapping = json.loads(text)
        except json.JSONDecodeError as err:
            raise ParseError(f"invalid JSON: {err.msg}", err.lineno, err.colno)
        if not isinstance(mapping, dict):
            _fail("instance file must be a JSON object")
    else:
        mapping = _text_to_mapping(text)
    return build_instance(mapping)


def build_instance(mapping):
    char = mapping.get("characteristic", 0)
    if not isinstance(char, int) or char < 0:
        _fail("characteristic must be 0 or a prime")
    if char and not is_prime(char):
        _fail(f"characteristic {char} is not prime")
    base = GF(char) if char else QQ
    variables = mapping.get("variables")
    if not variables:
        _fail("missing 'variables'")
    variables = [str(v) for v in variables]
    if len(set(variables)) != len(variables):
        _fail("variable names must be distinct")
    for v in variables:
        if _PARAM_NAME.match(v):
            _fail(f"variable name {v!r} collides with the parameter namespace t_i_j")
        if not re.match(r"^[A-Za-z_][A-Za-z0-9_]*$", v):
            _fail(f"invalid variable name {v!r}")
    order = _parse_order_value(mapping.get("order", "glex"), variables)
    if "dim" not in mapping:
        _fail("missing 'dim'")
    dim = mapping["dim"]
    if not isinstance(dim, int) or not (0 <= dim <= len(variables)):
        _fail(f"dim must satisfy 0 <= dim <= {len(variables)}")
    ideal_exprs = mapping.get("ideal")
    if not ideal_exprs:
        _fail("missing 'ideal' generators")
    quotient_exprs = mapping.get("quotient_ideal") or []
    j_gens = tuple(
        _parse_gen(expr, base, variables, f"ideal[{k}]") for k, expr in enumerate(ideal_exprs)
    )
    i_gens = tuple(
        _parse_gen(expr, base, variables, f"quotient_ideal[{k}]")
        for k, expr in enumerate(quotient_exprs)
    )
    options = dict(DEFAULT_OPTIONS)
    extra = mapping.get("options") or {}
    for key, value in extra.items():
        if key not in DEFAULT_OPTIONS:
            _fail(f"unknown option {key!r}")
        options[key] = value
    if options["modp"] not in ("on", "off", "auto"):
        _fail("option modp must be on|off|auto")
    caps = ResourceCaps(
        max_terms=options["max_terms"],
        max_degree=options["max_degree"],
        max_iterations=options["max_iterations"],
    )
    if dim > 0 and len(j_gens) < dim:
        _fail("the ideal needs at least dim generators")
    inst = ProblemInstance(
        base=base,
        nvars=len(variables),
        var_names=tuple(variables),
        i_gens=i_gens,
        j_gens=j_gens,
        d=dim,
        order=order,
        caps=caps,
    )
    return inst, options


def _parse_gen(expr, base, variables, where):
    if not isinstance(expr, str):
        _fail(f"{where}: generator must be an expression string")
    try:
        return parse_generator(expr, base, variables)
    except ParseError as err:
        raise ParseError(f"{where}: {err}") from err


def parse_member_expression(expr, inst):
    return parse_polynomial(expr, inst.base, inst.var_names)


def modp_config(options):
    return ModpConfig(
        mode=options["modp"],
        threshold=options["modp_threshold"],
        policy=ModpPolicy(max_retries=options["modp_retries"]),
    )


def instance_to_jsonable(inst, options=None):
    """Canonical JSON form; parse(serialize(inst)) == inst."""
    order = inst.order
    if order.precedence is None:
        precedence = list(inst.var_names)
    else:
        precedence = [inst.var_names[i] for i in order.precedence]
    payload = {
        "characteristic": inst.base.char,
        "variables": list(inst.var_names),
        "order": {"kind": order.kind, "precedence": precedence},
        "quotient_ideal": [generator_to_str(g, inst.var_names) for g in inst.i_gens],
        "ideal": [generator_to_str(g, inst.var_names) for g in inst.j_gens],
        "dim": inst.d,
    }
    if options is not None:
        payload["options"] = dict(sorted(options.items()))
    return payload


def instance_to_json(inst, options=None):
    return json.dumps(instance_to_jsonable(inst, options), indent=2, sort_keys=False)
