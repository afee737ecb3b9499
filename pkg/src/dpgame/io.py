"""JSON instance, allocation and result documents.

Names are used at the file boundary only; see ``docs/formats.md``.
"""
from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .exact import SolveOutcome
from .game import AgentPrefs, Allocation, Game, Topology, ValidationError, cost, validate_game
from .stability import Notion, StabilityReport, jump_costs, stability_report, swap_costs

FORMAT_VERSION = 1


class InstanceError(ValueError):
    """A document that does not parse or does not match the schema."""


def _require(doc: Any, key: str, kind, where: str):
    if not isinstance(doc, dict) or key not in doc:
        raise InstanceError(f"{where}: missing field '{key}'")
    val = doc[key]
    if not isinstance(val, kind) or isinstance(val, bool) and kind is not bool:
        raise InstanceError(f"{where}.{key}: expected {getattr(kind, '__name__', kind)}")
    return val


def _check_version(doc, where):
    v = doc.get("format_version", FORMAT_VERSION) if isinstance(doc, dict) else None
    if v != FORMAT_VERSION:
        raise InstanceError(f"{where}.format_version: unsupported version {v!r}")


def vertex_names(game: Game) -> list[str]:
    return [game.topology.name(v) for v in range(game.n_vertices)]


def game_to_dict(game: Game, meta: dict | None = None) -> dict:
    names = [p.name for p in game.agents]
    vnames = vertex_names(game)
    doc = {
        "format_version": FORMAT_VERSION,
        "vertices": vnames,
        "edges": [[vnames[u], vnames[v]] for u, v in game.topology.edges],
        "agents": [
            {"name": p.name, "wants": {names[b]: int(d) for b, d in sorted(p.wants.items())}}
            for p in game.agents
        ],
    }
    if meta:
        doc["meta"] = meta
    return doc


def game_from_dict(doc: Any, where: str = "instance") -> Game:
    if not isinstance(doc, dict):
        raise InstanceError(f"{where}: expected an object")
    _check_version(doc, where)
    verts = _require(doc, "vertices", list, where)
    if not all(isinstance(v, str) for v in verts):
        raise InstanceError(f"{where}.vertices: names must be strings")
    if len(set(verts)) != len(verts):
        raise InstanceError(f"{where}.vertices: duplicate vertex name")
    vid = {name: i for i, name in enumerate(verts)}
    edges = []
    for i, e in enumerate(_require(doc, "edges", list, where)):
        if not (isinstance(e, list) and len(e) == 2):
            raise InstanceError(f"{where}.edges[{i}]: expected a pair of vertex names")
        for end in e:
            if end not in vid:
                raise InstanceError(f"{where}.edges[{i}]: unknown vertex {end!r}")
        edges.append((vid[e[0]], vid[e[1]]))
    raw_agents = _require(doc, "agents", list, where)
    names = []
    for i, a in enumerate(raw_agents):
        names.append(_require(a, "name", str, f"{where}.agents[{i}]"))
    if len(set(names)) != len(names):
        raise InstanceError(f"{where}.agents: duplicate agent name")
    aid = {n: i for i, n in enumerate(names)}
    agents = []
    for i, a in enumerate(raw_agents):
        ctx = f"{where}.agents[{i}]"
        wants = a.get("wants", {})
        if not isinstance(wants, dict):
            raise InstanceError(f"{ctx}.wants: expected an object")
        w = {}
        for other, d in wants.items():
            if other not in aid:
                raise InstanceError(f"{ctx}.wants: unknown agent {other!r}")
            if not isinstance(d, int) or isinstance(d, bool):
                raise InstanceError(f"{ctx}.wants.{other}: ideal distance must be an integer")
            w[aid[other]] = d
        agents.append(AgentPrefs(names[i], w))
    game = Game(Topology(len(verts), tuple(edges), tuple(verts)), tuple(agents))
    bad = validate_game(game)
    if bad:
        raise ValidationError(bad)
    return game


def _read_json(path, what):
    text = Path(path).read_text()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InstanceError(f"{path}: {what} is not valid JSON (line {exc.lineno}, column {exc.colno}): "
                            f"{exc.msg}") from None


def load_game(path) -> Game:
    return game_from_dict(_read_json(path, "instance"), str(path))


def save_game(game: Game, path, meta: dict | None = None) -> None:
    Path(path).write_text(json.dumps(game_to_dict(game, meta), indent=2) + "\n")


def allocation_to_dict(game: Game, alloc: Allocation) -> dict:
    vn = vertex_names(game)
    return {"format_version": FORMAT_VERSION,
            "allocation": {p.name: vn[alloc[a]] for a, p in enumerate(game.agents)}}


def allocation_from_dict(doc: Any, game: Game, where: str = "allocation") -> Allocation:
    if not isinstance(doc, dict):
        raise InstanceError(f"{where}: expected an object")
    _check_version(doc, where)
    mapping = _require(doc, "allocation", dict, where)
    vid = {n: i for i, n in enumerate(vertex_names(game))}
    placement = []
    for p in game.agents:
        if p.name not in mapping:
            raise InstanceError(f"{where}.allocation: agent {p.name!r} is not placed")
        v = mapping[p.name]
        if v not in vid:
            raise InstanceError(f"{where}.allocation.{p.name}: unknown vertex {v!r}")
        placement.append(vid[v])
    extra = set(mapping) - {p.name for p in game.agents}
    if extra:
        raise InstanceError(f"{where}.allocation: unknown agent {sorted(extra)[0]!r}")
    if len(set(placement)) != len(placement):
        raise ValidationError("allocation is not injective")
    return Allocation(tuple(placement))


def load_allocation(path, game: Game) -> Allocation:
    return allocation_from_dict(_read_json(path, "allocation"), game, str(path))


def save_allocation(game: Game, alloc: Allocation, path) -> None:
    Path(path).write_text(json.dumps(allocation_to_dict(game, alloc), indent=2) + "\n")


# -- result documents ------------------------------------------------------------

def report_to_dict(game: Game, alloc: Allocation, report: StabilityReport | None = None) -> dict:
    """Stability flags and every deviation with the costs before and after it."""
    report = report or stability_report(game, alloc)
    an = [p.name for p in game.agents]
    vn = vertex_names(game)
    envy = []
    for a, b in report.envy_pairs:
        before, after = swap_costs(game, alloc, a, b)
        envy.append({"agent": an[a], "other": an[b], "cost_before": before, "cost_after": after})
    swaps = []
    for a, b in report.swap_deviations:
        ab, aa = swap_costs(game, alloc, a, b)
        bb, ba = swap_costs(game, alloc, b, a)
        swaps.append({"agents": [an[a], an[b]], "cost_before": [ab, bb], "cost_after": [aa, ba]})
    jumps = []
    for a, v in report.jump_deviations:
        before, after = jump_costs(game, alloc, a, v)
        jumps.append({"agent": an[a], "vertex": vn[v], "cost_before": before, "cost_after": after})
    return {"is_ef": report.is_ef, "is_swap_stable": report.is_swap_stable,
            "is_jump_stable": report.is_jump_stable, "envy": envy, "swap": swaps, "jump": jumps}


def result_document(game: Game, outcome: SolveOutcome, notion: Notion | str, wall_time: float) -> dict:
    doc = {
        "format_version": FORMAT_VERSION,
        "status": outcome.status.value,
        "solver": outcome.solver,
        "notion": Notion(notion).value,
        "counters": {"nodes_explored": outcome.nodes_explored, "dynamics_steps": outcome.steps},
        "wall_time_s": round(wall_time, 6),
    }
    if outcome.found:
        w = outcome.witness
        doc["allocation"] = allocation_to_dict(game, w)["allocation"]
        doc["costs"] = {p.name: cost(game, w, a) for a, p in enumerate(game.agents)}
        doc["report"] = report_to_dict(game, w)
    return doc


def check_document(game: Game, alloc: Allocation) -> dict:
    an = [p.name for p in game.agents]
    return {
        "format_version": FORMAT_VERSION,
        "allocation": allocation_to_dict(game, alloc)["allocation"],
        "costs": {an[a]: cost(game, alloc, a) for a in range(game.n_agents)},
        "report": report_to_dict(game, alloc),
    }


def _human_report(rep: dict) -> list[str]:
    out = [f"envy-free: {rep['is_ef']}  swap-stable: {rep['is_swap_stable']}  "
           f"jump-stable: {rep['is_jump_stable']}"]
    for e in rep["envy"]:
        out.append(f"  envy  {e['agent']} -> {e['other']}: cost {e['cost_before']} -> {e['cost_after']}")
    for s in rep["swap"]:
        (a, b), (ab, bb), (aa, ba) = s["agents"], s["cost_before"], s["cost_after"]
        out.append(f"  swap  {a} <-> {b}: {a} {ab} -> {aa}, {b} {bb} -> {ba}")
    for j in rep["jump"]:
        out.append(f"  jump  {j['agent']} to {j['vertex']}: cost {j['cost_before']} -> {j['cost_after']}")
    return out


def emit_result(doc: dict, fmt: str = "human") -> str:
    """Render a result or check document; ``machine`` is sorted, indented JSON."""
    if fmt == "machine":
        return json.dumps(doc, indent=2, sort_keys=True)
    if fmt != "human":
        raise ValueError(f"unknown format {fmt!r}")
    lines = []
    if "status" in doc:
        c = doc["counters"]
        lines.append(f"status: {doc['status']}  notion: {doc['notion']}  solver: {doc['solver']}")
        lines.append(f"nodes explored: {c['nodes_explored']}  dynamics steps: {c['dynamics_steps']}  "
                     f"time: {doc['wall_time_s']:.4f}s")
    if "allocation" in doc:
        width = max((len(a) for a in doc["allocation"]), default=5)
        lines.append(f"{'agent'.ljust(width)}  vertex  cost")
        for a, v in doc["allocation"].items():
            lines.append(f"{a.ljust(width)}  {v:<6}  {doc['costs'][a]}")
        lines += _human_report(doc["report"])
    return "\n".join(lines)
