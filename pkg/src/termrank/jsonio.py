"""JSON schemas: instance files, matroid descriptors, set-function tables,
certificates, and result files.

Node ids are strings, subsets are serialized as sorted id arrays, and every
file is rejected on unknown fields so that typos cannot silently change the
problem being solved.
"""

from __future__ import annotations

import json

from .bigraph import Bigraph, DegreeSpec, GroundSets, bits
from .errors import InstanceError
from .feasibility import Instance, ViolationCert
from .matroid import Matroid, enumerate_bases
from .setfun import SetFunction

MODES = ("ore", "msmt", "ms_only", "fully", "ryser", "brualdi", "ryser_gen")

_COMMON_KEYS = {"mode", "S", "T"}
_ALLOWED_KEYS = {
    "ore": _COMMON_KEYS | {"h0", "m_S", "m_T"},
    "msmt": _COMMON_KEYS | {"h0", "m_S", "m_T", "matroid_S", "matroid_T", "demand"},
    "ms_only": _COMMON_KEYS | {"h0", "m_S", "matroid_S", "matroid_T", "demand"},
    "fully": _COMMON_KEYS | {"h0", "m_S", "m_T", "matroid_S", "matroid_T", "demand"},
    "ryser": _COMMON_KEYS | {"h0", "m_S", "m_T", "target_rank"},
    "brualdi": _COMMON_KEYS | {"h0", "matroid_S", "matroid_T", "target_rank"},
    "ryser_gen": _COMMON_KEYS | {"h0", "m_S", "m_T", "matroid_S", "matroid_T", "target_rank"},
}


def dumps(obj) -> str:
    """Deterministic JSON text: sorted keys, fixed layout, trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def matroid_from_descriptor(ground, desc) -> Matroid:
    if not isinstance(desc, dict) or "kind" not in desc:
        raise InstanceError("matroid descriptor must be an object with a 'kind' field")
    kind = desc["kind"]
    if kind == "free":
        _reject_extra(desc, {"kind"}, "matroid descriptor")
        return Matroid.free(ground)
    if kind == "uniform":
        _reject_extra(desc, {"kind", "k"}, "matroid descriptor")
        if "k" not in desc:
            raise InstanceError("uniform matroid descriptor needs 'k'")
        return Matroid.uniform(ground, int(desc["k"]))
    if kind == "partition":
        _reject_extra(desc, {"kind", "blocks", "caps"}, "matroid descriptor")
        if "blocks" not in desc or "caps" not in desc:
            raise InstanceError("partition matroid descriptor needs 'blocks' and 'caps'")
        return Matroid.partition(ground, desc["blocks"], desc["caps"])
    if kind == "explicit":
        _reject_extra(desc, {"kind", "bases"}, "matroid descriptor")
        if "bases" not in desc:
            raise InstanceError("explicit matroid descriptor needs 'bases'")
        return Matroid.from_bases(ground, desc["bases"])
    raise InstanceError(f"unknown matroid kind {kind!r}")


def matroid_descriptor(m: Matroid) -> dict:
    if m.kind == "free":
        return {"kind": "free"}
    if m.kind.startswith("uniform("):
        return {"kind": "uniform", "k": int(m.kind[8:-1])}
    bases = enumerate_bases(m)
    return {
        "kind": "explicit",
        "bases": [sorted(m.ground[i] for i in bits(b)) for b in bases],
    }


def setfunction_to_json(p: SetFunction) -> dict:
    values = {}
    for mask in range(1 << p.n):
        key = ",".join(sorted(p.ground[i] for i in bits(mask)))
        values[key] = p.values[mask]
    return {"ground": list(p.ground), "values": values}


def setfunction_from_json(data) -> SetFunction:
    if not isinstance(data, dict):
        raise InstanceError("demand: must be an object with 'ground' and 'values'")
    _reject_extra(data, {"ground", "values"}, "demand")
    if "ground" not in data or "values" not in data:
        raise InstanceError("demand: needs 'ground' and 'values'")
    ground = tuple(str(x) for x in data["ground"])
    raw = data["values"]
    if not isinstance(raw, dict):
        raise InstanceError("demand.values: must be an object keyed by subsets")
    values = []
    seen_keys = set()
    for mask in range(1 << len(ground)):
        key = ",".join(sorted(ground[i] for i in bits(mask)))
        if key not in raw:
            raise InstanceError(f"demand.values: missing subset key {key!r}")
        seen_keys.add(key)
        try:
            values.append(int(raw[key]))
        except (TypeError, ValueError) as exc:
            raise InstanceError(f"demand.values[{key!r}]: not an integer") from exc
    extra = set(raw) - seen_keys
    if extra:
        raise InstanceError(f"demand.values: unknown subset keys {sorted(extra)}")
    return SetFunction(ground, tuple(values))


def _reject_extra(data: dict, allowed: set[str], path: str) -> None:
    extra = set(data) - allowed
    if extra:
        raise InstanceError(f"{path}: unknown fields {sorted(extra)}")


def _parse_ids(data, key: str) -> tuple[str, ...]:
    if key not in data:
        raise InstanceError(f"{key}: missing")
    raw = data[key]
    if not isinstance(raw, list) or not all(isinstance(x, str) for x in raw):
        raise InstanceError(f"{key}: must be a list of string node ids")
    return tuple(raw)


def _parse_degrees(data, key: str, ids: tuple[str, ...]) -> tuple[int, ...]:
    raw = data[key]
    if not isinstance(raw, dict):
        raise InstanceError(f"{key}: must map node id to degree")
    out = []
    for name in ids:
        if name not in raw:
            raise InstanceError(f"{key}: missing degree for node {name!r}")
        try:
            out.append(int(raw[name]))
        except (TypeError, ValueError) as exc:
            raise InstanceError(f"{key}[{name!r}]: not an integer") from exc
    extra = set(raw) - set(ids)
    if extra:
        raise InstanceError(f"{key}: unknown node ids {sorted(extra)}")
    return tuple(out)


def load_instance(data, mode_override: str | None = None) -> tuple[str, Instance]:
    """Parse and validate an instance file body into (mode, Instance)."""
    if not isinstance(data, dict):
        raise InstanceError("instance file must be a JSON object")
    mode = mode_override or data.get("mode")
    if mode is None:
        raise InstanceError("mode: missing (and no --mode override given)")
    if mode not in MODES:
        raise InstanceError(f"mode: unknown mode {mode!r}, expected one of {MODES}")
    _reject_extra(data, _ALLOWED_KEYS[mode] | {"mode"}, "instance")

    grounds = GroundSets(_parse_ids(data, "S"), _parse_ids(data, "T"))
    initial = Bigraph.from_names(grounds, data.get("h0", []))
    if not initial.simple:
        raise InstanceError("h0: initial graph must be simple")
    if mode == "ryser" and initial.edge_count:
        raise InstanceError("h0: the classic term-rank mode takes no initial edges")

    degrees = None
    if "m_S" in data:
        m_s = _parse_degrees(data, "m_S", grounds.s_ids)
        m_t = _parse_degrees(data, "m_T", grounds.t_ids) if "m_T" in data else None
        degrees = DegreeSpec(grounds, m_s, m_t)
    if mode in ("ore", "msmt", "fully", "ryser", "ryser_gen"):
        if degrees is None or degrees.m_t is None:
            raise InstanceError(f"m_S/m_T: mode {mode!r} needs degrees on both classes")
    if mode == "ms_only" and degrees is None:
        raise InstanceError("m_S: missing")

    matroid_s = None
    if "matroid_S" in data:
        matroid_s = matroid_from_descriptor(grounds.s_ids, data["matroid_S"])
    matroid_t = None
    if "matroid_T" in data:
        matroid_t = matroid_from_descriptor(grounds.t_ids, data["matroid_T"])
    demand = None
    if "demand" in data:
        demand = setfunction_from_json(data["demand"])
        if demand.ground != grounds.t_ids:
            raise InstanceError("demand.ground: must equal T in the same order")

    if mode in ("msmt", "ms_only", "fully"):
        if demand is None and matroid_t is None:
            raise InstanceError(f"mode {mode!r} needs 'demand' or 'matroid_T'")
        if demand is not None and matroid_t is not None:
            raise InstanceError("give either 'demand' or 'matroid_T', not both")
    if mode in ("brualdi", "ryser_gen"):
        if matroid_s is None or matroid_t is None:
            raise InstanceError(f"mode {mode!r} needs matroids on both classes")

    target_rank = None
    if "target_rank" in data:
        try:
            target_rank = int(data["target_rank"])
        except (TypeError, ValueError) as exc:
            raise InstanceError("target_rank: not an integer") from exc
    if mode == "ryser" and target_rank is None:
        raise InstanceError("target_rank: missing")
    if (
        mode == "brualdi"
        and target_rank is not None
        and (matroid_s.full_rank != target_rank or matroid_t.full_rank != target_rank)
    ):
        raise InstanceError(
            f"target_rank: {target_rank} does not match the matroid ranks "
            f"{matroid_s.full_rank}/{matroid_t.full_rank}"
        )

    inst = Instance.make(
        grounds,
        initial=initial,
        degrees=degrees,
        matroid_s=matroid_s,
        demand=demand,
        matroid_t=matroid_t,
        target_rank=target_rank,
    )
    return mode, inst


def load_instance_file(path, mode_override: str | None = None) -> tuple[str, Instance]:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise InstanceError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InstanceError(f"{path}: malformed JSON: {exc}") from exc
    return load_instance(data, mode_override)


def instance_to_json(mode: str, inst: Instance) -> dict:
    """Serialize back to the instance file schema (used for reproducers)."""
    g = inst.grounds
    data: dict = {"mode": mode, "S": list(g.s_ids), "T": list(g.t_ids)}
    if inst.initial.edge_count:
        data["h0"] = [[a, b] for a, b in inst.initial.edge_names()]
    if inst.degrees is not None:
        data["m_S"] = {name: inst.degrees.m_s[i] for i, name in enumerate(g.s_ids)}
        if inst.degrees.m_t is not None and mode != "ms_only":
            data["m_T"] = {name: inst.degrees.m_t[j] for j, name in enumerate(g.t_ids)}
    if mode in ("msmt", "ms_only", "fully", "brualdi", "ryser_gen"):
        if inst.matroid_s is not None:
            data["matroid_S"] = matroid_descriptor(inst.matroid_s)
    if mode in ("brualdi", "ryser_gen") and inst.matroid_t is not None:
        data["matroid_T"] = matroid_descriptor(inst.matroid_t)
    elif mode in ("msmt", "ms_only", "fully") and inst.demand is not None:
        data["demand"] = setfunction_to_json(inst.demand)
    if inst.target_rank is not None and mode in ("ryser", "brualdi", "ryser_gen"):
        data["target_rank"] = inst.target_rank
    return data


def cert_to_json(cert: ViolationCert, grounds: GroundSets) -> dict:
    data = {
        "which": cert.which,
        "X": sorted(grounds.s_names(cert.x)),
        "Y": sorted(grounds.t_names(cert.y)),
        "parts": [sorted(grounds.t_names(p)) for p in cert.parts],
        "lhs": cert.lhs,
        "rhs": cert.rhs,
    }
    data["Xp"] = sorted(grounds.s_names(cert.xp)) if cert.xp is not None else None
    data["Yp"] = sorted(grounds.t_names(cert.yp)) if cert.yp is not None else None
    return data


def witness_to_json(
    grounds: GroundSets, graph: Bigraph | None, matching=None
) -> dict:
    data: dict = {}
    if graph is not None:
        data["edges"] = [[a, b] for a, b in graph.edge_names()]
    if matching is not None:
        data["matching"] = [
            [grounds.s_ids[s], grounds.t_ids[t]] for s, t in matching
        ]
    return data


def result_to_json(
    verdict: str,
    *,
    grounds: GroundSets,
    witness: dict | None = None,
    cert: ViolationCert | None = None,
    stats: dict | None = None,
) -> dict:
    data: dict = {"verdict": verdict, "witness": None, "certificate": None}
    if witness is not None:
        data["witness"] = witness
    if cert is not None:
        data["certificate"] = cert_to_json(cert, grounds)
    data["stats"] = stats or {}
    return data
