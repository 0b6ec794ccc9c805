"""Run configuration files.

A config is a TOML document with flat sections.  All quantities are in
natural units: continuum runs measure time in 1/Gamma0 (so Gamma0 = 1),
lattice runs in 1/g0 (so g0 = 1).  Angles are given in units of pi.

    [model]
    kind = "continuum"          # or "lattice"
    gamma0_tau = 0.2            # continuum only
    phi_over_pi = 1.0           # continuum only
    J_over_g0 = 5.0             # lattice only
    N = 4                       # lattice only
    chain_len = 400             # lattice only, optional

    [modulation]
    type = "step"               # constant | cosine | step | quench
    delta_rel = -0.5
    t_switch = 0.5

    [numerics]
    horizon = 10.0
    steps_per_tau = 64          # continuum
    step = 0.002                # lattice, optional

    [output]
    csv = "run.csv"
    svg = "run.svg"

    [sweep]                     # presence selects sweep mode
    axis = "delta_rel"
    values = [-0.5, 0.0, 0.5]
    reducer = "population_at"   # or "plateau"
    at = 5.0

Sweep values for the angle axes ``theta`` and ``phi`` are in units of pi.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from typing import Any, Union

try:  # Python >= 3.11
    import tomllib
except ModuleNotFoundError:  # pragma: no cover
    import tomli as tomllib

from .analysis import AXES, REDUCERS
from .continuum import ContinuumParams
from .errors import GiantAtomError, ParseError, ValidationError
from .lattice import LatticeConfig
from .schedules import Constant, Cosine, PeriodicQuench, Step

# section -> key -> (type, description)
SCHEMA: dict[str, dict[str, tuple[str, str]]] = {
    "model": {
        "kind": ("str", "'continuum' or 'lattice'"),
        "gamma0_tau": ("float", "delay times reference decay rate, Gamma0*tau (continuum)"),
        "phi_over_pi": ("float", "propagation phase phi in units of pi (continuum)"),
        "J_over_g0": ("float", "hopping J in units of g0 (lattice)"),
        "N": ("int", "site separation of the two coupling points (lattice)"),
        "chain_len": ("int", "number of resonators M; default from the light cone (lattice)"),
    },
    "modulation": {
        "type": ("str", "'constant', 'cosine', 'step' or 'quench'"),
        "scale": ("float", "amplitude of constant/cosine profiles (default 1)"),
        "omega": ("float", "cosine frequency in units of Gamma0"),
        "theta_over_pi": ("float", "cosine phase of the second leg in units of pi (default 0)"),
        "delta_rel": ("float", "relative coupling change Delta_g/g0 of a step"),
        "t_switch": ("float", "step time t'"),
        "t_on": ("float", "quench ON duration t'"),
        "t_off": ("float", "quench OFF duration t''"),
    },
    "numerics": {
        "horizon": ("float", "final time"),
        "steps_per_tau": ("int", "grid resolution per delay, >= 16 (continuum, default 64)"),
        "step": ("float", "time step, step*J <= 0.05 (lattice, default 0.01/J)"),
    },
    "output": {
        "csv": ("str", "CSV output path"),
        "svg": ("str", "SVG plot path (optional)"),
    },
    "sweep": {
        "axis": ("str", "one of " + ", ".join(AXES)),
        "values": ("list[float]", "axis values (angles in units of pi)"),
        "reducer": ("str", "'plateau' or 'population_at'"),
        "at": ("float", "evaluation time for reducer 'population_at'"),
        "tail_fraction": ("float", "plateau window fraction (default 0.2)"),
        "tol": ("float", "plateau tolerance (default 1e-3)"),
        "workers": ("int", "worker processes (default from GIANTATOM_WORKERS or 1)"),
    },
}

_PROFILE_KEYS = {
    "constant": {"scale"},
    "cosine": {"omega", "theta_over_pi", "scale"},
    "step": {"delta_rel", "t_switch"},
    "quench": {"t_on", "t_off"},
}
_MODEL_KEYS = {
    "continuum": {"kind", "gamma0_tau", "phi_over_pi"},
    "lattice": {"kind", "J_over_g0", "N", "chain_len"},
}


@dataclass(frozen=True)
class SweepSpec:
    axis: str
    values: tuple
    reducer: str = "plateau"
    at: float | None = None
    tail_fraction: float = 0.2
    tol: float = 1e-3
    workers: int | None = None


@dataclass(frozen=True)
class RunSpec:
    mode: str
    kind: str
    params: Union[ContinuumParams, LatticeConfig]
    horizon: float
    steps_per_tau: int = 64
    csv: str | None = None
    svg: str | None = None
    sweep: SweepSpec | None = None
    document: dict = field(default_factory=dict, compare=False, repr=False)


def _line_of(text: str, key: str) -> int | None:
    pat = re.compile(rf"^\s*[\"']?{re.escape(key)}[\"']?\s*=", re.MULTILINE)
    m = pat.search(text)
    return text.count("\n", 0, m.start()) + 1 if m else None


def _where(text: str, key: str) -> str:
    line = _line_of(text, key)
    return f"line {line}: " if line else ""


def _check_type(section: str, key: str, value, text: str):
    kind = SCHEMA[section][key][0]
    ok = {
        "str": isinstance(value, str),
        "float": isinstance(value, (int, float)) and not isinstance(value, bool),
        "int": isinstance(value, int) and not isinstance(value, bool),
        "list[float]": isinstance(value, list)
        and all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in value),
    }[kind]
    if not ok:
        raise ParseError(
            f"{_where(text, key)}[{section}] {key} must be {kind}, got {type(value).__name__}"
        )


def _profile(mod: dict) -> Any:
    kind = mod.get("type", "constant")
    if kind == "constant":
        return Constant(float(mod.get("scale", 1.0)))
    if kind == "cosine":
        return Cosine(float(mod["omega"]), 0.0, float(mod.get("scale", 1.0)))
    if kind == "step":
        return Step(float(mod["delta_rel"]), float(mod["t_switch"]))
    if kind == "quench":
        return PeriodicQuench(float(mod["t_on"]), float(mod["t_off"]))
    raise ValidationError(f"unknown modulation type {kind!r}")


def _required(section: str, doc: dict, keys, text: str):
    for k in keys:
        if k not in doc.get(section, {}):
            raise ParseError(f"[{section}] is missing required key {k!r}")


def parse_config(text: str) -> RunSpec:
    """Parse and validate a config document; see the module docstring."""
    try:
        doc = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        raise ParseError(f"malformed config: {exc}") from None

    for section, body in doc.items():
        if section not in SCHEMA:
            m = re.search(rf"^\s*\[{re.escape(section)}\]", text, re.MULTILINE)
            where = f"line {text.count(chr(10), 0, m.start()) + 1}: " if m else ""
            raise ParseError(f"{where}unknown section [{section}]")
        if not isinstance(body, dict):
            raise ParseError(f"{_where(text, section)}{section!r} must be a [section]")
        for key, value in body.items():
            if key not in SCHEMA[section]:
                raise ParseError(f"{_where(text, key)}unknown key {key!r} in [{section}]")
            _check_type(section, key, value, text)

    _required("model", doc, ["kind"], text)
    _required("numerics", doc, ["horizon"], text)
    model = doc["model"]
    kind = model["kind"]
    if kind not in _MODEL_KEYS:
        raise ValidationError(f"[model] kind must be 'continuum' or 'lattice', got {kind!r}")
    for key in model:
        if key not in _MODEL_KEYS[kind]:
            raise ParseError(f"{_where(text, key)}key {key!r} does not apply to {kind} models")

    mod = doc.get("modulation", {})
    mtype = mod.get("type", "constant")
    if mtype not in _PROFILE_KEYS:
        raise ValidationError(f"[modulation] type must be one of {sorted(_PROFILE_KEYS)}")
    for key in mod:
        if key != "type" and key not in _PROFILE_KEYS[mtype]:
            raise ParseError(f"{_where(text, key)}key {key!r} does not apply to {mtype} modulation")
    needed = {"cosine": ["omega"], "step": ["delta_rel", "t_switch"], "quench": ["t_on", "t_off"]}
    _required("modulation", doc, needed.get(mtype, []), text)

    num = doc["numerics"]
    horizon = float(num["horizon"])
    out = doc.get("output", {})

    try:
        if not horizon > 0:
            raise ValidationError(f"[numerics] horizon must be > 0, got {horizon}")
        if kind == "continuum":
            _required("model", doc, ["gamma0_tau", "phi_over_pi"], text)
            if "step" in num:
                raise ParseError(f"{_where(text, 'step')}'step' applies to lattice runs only")
            if mtype == "quench":
                raise ValidationError("quench modulation is only supported for lattice runs")
            steps = int(num.get("steps_per_tau", 64))
            if steps < 16:
                raise ValidationError(f"[numerics] steps_per_tau must be >= 16, got {steps}")
            prof1 = _profile(mod)
            prof2 = prof1
            if mtype == "cosine":
                prof2 = Cosine(prof1.omega, math.pi * float(mod.get("theta_over_pi", 0.0)), prof1.scale)
            params = ContinuumParams(
                gamma0=1.0,
                tau=float(model["gamma0_tau"]),
                phi=math.pi * float(model["phi_over_pi"]),
                profile1=prof1,
                profile2=prof2,
            )
        else:
            _required("model", doc, ["J_over_g0", "N"], text)
            if "steps_per_tau" in num:
                raise ParseError(
                    f"{_where(text, 'steps_per_tau')}'steps_per_tau' applies to continuum runs only"
                )
            if mtype not in ("constant", "quench"):
                raise ValidationError("lattice runs support 'constant' or 'quench' modulation")
            if mtype == "constant" and float(mod.get("scale", 1.0)) != 1.0:
                raise ValidationError("lattice coupling strength is g0; use scale = 1")
            steps = 64
            params = LatticeConfig(
                hopping=float(model["J_over_g0"]),
                g0=1.0,
                span=int(model["N"]),
                horizon=horizon,
                schedule=_profile(mod),
                chain_len=int(model["chain_len"]) if "chain_len" in model else None,
                step=float(num["step"]) if "step" in num else None,
            )
    except GiantAtomError:
        raise
    except (ValueError, KeyError) as exc:
        raise ValidationError(str(exc)) from None

    sweep = None
    if "sweep" in doc:
        sw = doc["sweep"]
        _required("sweep", doc, ["axis", "values"], text)
        if sw["axis"] not in AXES:
            raise ValidationError(f"[sweep] axis must be one of {AXES}, got {sw['axis']!r}")
        reducer = sw.get("reducer", "plateau")
        if reducer not in REDUCERS:
            raise ValidationError(f"[sweep] reducer must be one of {REDUCERS}, got {reducer!r}")
        if reducer == "population_at" and "at" not in sw:
            raise ParseError("[sweep] reducer 'population_at' needs key 'at'")
        if "at" in sw and not 0 <= float(sw["at"]) <= horizon:
            raise ValidationError(f"[sweep] at={sw['at']} outside [0, horizon]")
        sweep = SweepSpec(
            axis=sw["axis"],
            values=tuple(float(v) for v in sw["values"]),
            reducer=reducer,
            at=float(sw["at"]) if "at" in sw else None,
            tail_fraction=float(sw.get("tail_fraction", 0.2)),
            tol=float(sw.get("tol", 1e-3)),
            workers=int(sw["workers"]) if "workers" in sw else None,
        )
        if not 0 < sweep.tail_fraction <= 0.5:
            raise ValidationError("[sweep] tail_fraction must lie in (0, 0.5]")

    return RunSpec(
        mode="sweep" if sweep else kind,
        kind=kind,
        params=params,
        horizon=horizon,
        steps_per_tau=steps,
        csv=out.get("csv"),
        svg=out.get("svg"),
        sweep=sweep,
        document=doc,
    )


def _fmt(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, str):
        return '"' + value.replace("\\", "\\\\").replace('"', '\\"') + '"'
    if isinstance(value, float):
        if math.isnan(value) or math.isinf(value):
            raise ValueError(f"cannot render non-finite value {value}")
        return repr(value)
    if isinstance(value, (list, tuple)):
        return "[" + ", ".join(_fmt(v) for v in value) + "]"
    return str(value)


def render_document(doc: dict) -> str:
    """Write a flat-section document back out as TOML."""
    lines = []
    for section in SCHEMA:
        body = doc.get(section)
        if not body:
            continue
        if lines:
            lines.append("")
        lines.append(f"[{section}]")
        for key in SCHEMA[section]:
            if key in body:
                lines.append(f"{key} = {_fmt(body[key])}")
    return "\n".join(lines) + "\n"


def to_document(spec: RunSpec) -> dict:
    """The config document that parses back to ``spec``."""
    doc: dict[str, dict] = {"model": {"kind": spec.kind}, "numerics": {"horizon": spec.horizon}}
    p = spec.params
    if spec.kind == "continuum":
        doc["model"]["gamma0_tau"] = p.tau
        doc["model"]["phi_over_pi"] = p.phi / math.pi
        doc["numerics"]["steps_per_tau"] = spec.steps_per_tau
        prof, prof2 = p.profile1, p.profile2
    else:
        doc["model"]["J_over_g0"] = p.hopping
        doc["model"]["N"] = p.span
        doc["model"]["chain_len"] = p.chain_len
        doc["numerics"]["step"] = p.step
        prof, prof2 = p.schedule, None
    if isinstance(prof, Constant):
        doc["modulation"] = {"type": "constant", "scale": prof.scale}
    elif isinstance(prof, Cosine):
        doc["modulation"] = {
            "type": "cosine",
            "omega": prof.omega,
            "theta_over_pi": prof2.theta / math.pi,
            "scale": prof.scale,
        }
    elif isinstance(prof, Step):
        doc["modulation"] = {"type": "step", "delta_rel": prof.delta_rel, "t_switch": prof.t_switch}
    else:
        doc["modulation"] = {"type": "quench", "t_on": prof.t_on, "t_off": prof.t_off}
    out = {k: v for k, v in (("csv", spec.csv), ("svg", spec.svg)) if v is not None}
    if out:
        doc["output"] = out
    if spec.sweep is not None:
        s = spec.sweep
        sw = {"axis": s.axis, "values": list(s.values), "reducer": s.reducer}
        if s.at is not None:
            sw["at"] = s.at
        sw["tail_fraction"] = s.tail_fraction
        sw["tol"] = s.tol
        if s.workers is not None:
            sw["workers"] = s.workers
        doc["sweep"] = sw
    return doc


def render_config(spec: RunSpec) -> str:
    """Config text for ``spec``; reuses the parsed document when there is one."""
    return render_document(spec.document or to_document(spec))


def schema_text() -> str:
    lines = []
    for section, keys in SCHEMA.items():
        lines.append(f"[{section}]")
        for key, (kind, desc) in keys.items():
            lines.append(f"  {key:<15} {kind:<12} {desc}")
    return "\n".join(lines) + "\n"
