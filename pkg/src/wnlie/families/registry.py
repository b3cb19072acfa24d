"""Family JSON: ``{"family": name, ...parameters}`` (parameters may also sit under ``"params"``)."""

from __future__ import annotations

from ..errors import ParseError
from ..exactla.fields import FieldSpec, QQ
from ..fdlie.algebra import FinDimLie
from .affine import CoordinateAlgebra, tensor_algebra
from .graded_families import abelian_tower, loop, multiloop, virasoro_hat, witt
from .kn import kn_genus0

FAMILIES = ("witt", "virasoro_hat", "kn_genus0", "tensor", "loop", "multiloop", "abelian_tower")


def _field(obj: dict) -> FieldSpec:
    return FieldSpec.from_json(obj["field"]) if "field" in obj else QQ


def from_family_json(obj: dict):
    params = dict(obj.get("params", {}))
    params.update({k: v for k, v in obj.items() if k not in ("family", "params")})
    name = obj.get("family")
    try:
        if name == "witt":
            g = witt(params.get("variant", "laurent"), _field(params), params.get("punctures"))
        elif name == "virasoro_hat":
            g = virasoro_hat(_field(params), int(params.get("window", 8)))
        elif name == "kn_genus0":
            g = kn_genus0(params.get("punctures", []), _field(params))
        elif name == "tensor":
            g = tensor_algebra(FinDimLie.from_json(params["s"]), CoordinateAlgebra.from_json(params["a"]))
            g.spec = {"family": "tensor", "s": params["s"], "a": params["a"]}
        elif name == "loop":
            g = loop(FinDimLie.from_json(params["s"]), params.get("variant", "laurent"), params.get("low"))
        elif name == "multiloop":
            g = multiloop(FinDimLie.from_json(params["s"]), int(params.get("rank", 2)))
        elif name == "abelian_tower":
            g = abelian_tower(params.get("low", 1), int(params.get("dim", 1)))
        else:
            raise ParseError(f"unknown family {name!r}", location="family")
    except ParseError:
        raise
    except (KeyError, TypeError) as exc:
        raise ParseError(f"missing or malformed family parameter: {exc}", location="params") from exc
    if getattr(g, "spec", None) is None and name in ("loop", "multiloop", "abelian_tower"):
        g.spec = {"family": name, **{k: v for k, v in params.items()}}
    return g
