"""Scenario files: a small INI-like format describing model runs.

A scenario file holds sections ``[name]``, each a list of ``key = value``
lines. Blank lines and lines starting with ``#`` or ``;`` are skipped.
Every section needs a ``model`` key naming one of the registered models;
the remaining keys are model parameters and run controls, checked against
the model's schema with errors that name the offending key and line.

Value syntax depends on the key's declared kind:

  float      ``0.95``, ``1e-3``
  int        ``500``
  bool       ``true`` / ``false``
  sequence   ``geometric(a, r)`` | ``polynomial(a, k)`` | ``constant(c)``
             | ``[v0, v1, ...]``
  values     ``linspace(lo, hi, n)`` | ``[v0, v1, ...]``
  names      comma-separated identifiers

A section with a ``sweep`` key is a parameter sweep: ``sweep`` names the
swept model parameter, ``values`` the grid, and ``stats`` the recorded
statistics. Sweeps accept only model parameters, not run controls.

Running a scenario writes ``<name>.csv`` (the path, when the model
produces one), ``<name>_summary.txt``, and for sweeps ``<name>_sweep.csv``
into the output directory. Output is deterministic byte for byte.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import barebones, bewley, csvio, olg, tirole, valuation, wilson
from .paths import EquilibriumPath
from .sequences import ExplicitSeq, GeometricSeq, PolynomialSeq, constant


class ScenarioError(ValueError):
    """Unparseable scenario text or a key that fails its schema."""


class RunError(RuntimeError):
    """A well-formed scenario that cannot be run (no equilibrium, etc.)."""


# ---------------------------------------------------------------------------
# raw parsing


@dataclass
class _RawSection:
    name: str
    line: int
    pairs: dict[str, tuple[str, int]] = field(default_factory=dict)


def _split_sections(text: str, source: str) -> list[_RawSection]:
    sections: list[_RawSection] = []
    seen: set[str] = set()
    current: _RawSection | None = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#") or line.startswith(";"):
            continue
        if line.startswith("["):
            if not line.endswith("]"):
                raise ScenarioError(
                    f"{source}:{lineno}: malformed section header {line!r}"
                )
            name = line[1:-1].strip()
            if not name:
                raise ScenarioError(f"{source}:{lineno}: empty section name")
            if name in seen:
                raise ScenarioError(
                    f"{source}:{lineno}: duplicate scenario {name!r}"
                )
            seen.add(name)
            current = _RawSection(name=name, line=lineno)
            sections.append(current)
            continue
        if current is None:
            raise ScenarioError(
                f"{source}:{lineno}: key outside any [section]"
            )
        key, eq, value = line.partition("=")
        if not eq:
            raise ScenarioError(
                f"{source}:{lineno}: expected 'key = value', got {line!r}"
            )
        key = key.strip()
        if not key:
            raise ScenarioError(f"{source}:{lineno}: missing key before '='")
        if key in current.pairs:
            raise ScenarioError(
                f"{source}:{lineno}: duplicate key {key!r} in [{current.name}]"
            )
        current.pairs[key] = (value.strip(), lineno)
    return sections


# ---------------------------------------------------------------------------
# value conversion

_CALL_RE = re.compile(r"^([a-z_]+)\s*\((.*)\)$")


def _float(raw: str, where: str) -> float:
    try:
        return float(raw)
    except ValueError:
        raise ScenarioError(f"{where}: expected a number, got {raw!r}") from None


def _int(raw: str, where: str) -> int:
    try:
        return int(raw, 10)
    except ValueError:
        raise ScenarioError(f"{where}: expected an integer, got {raw!r}") from None


def _bool(raw: str, where: str) -> bool:
    low = raw.lower()
    if low == "true":
        return True
    if low == "false":
        return False
    raise ScenarioError(f"{where}: expected true or false, got {raw!r}")


def _float_list(raw: str, where: str) -> tuple[float, ...]:
    inner = raw[1:-1].strip()
    if not inner:
        raise ScenarioError(f"{where}: empty list")
    return tuple(_float(part.strip(), where) for part in inner.split(","))


def _call_args(inner: str, where: str, count: int) -> list[float]:
    parts = [p.strip() for p in inner.split(",")]
    if len(parts) != count:
        raise ScenarioError(
            f"{where}: expected {count} arguments, got {len(parts)}"
        )
    return [_float(p, where) for p in parts]


def _sequence(raw: str, where: str) -> Sequence:
    if raw.startswith("[") and raw.endswith("]"):
        return ExplicitSeq(_float_list(raw, where))
    m = _CALL_RE.match(raw)
    if m:
        fn, inner = m.group(1), m.group(2)
        if fn == "geometric":
            a, r = _call_args(inner, where, 2)
            return GeometricSeq(a, r)
        if fn == "polynomial":
            a, k = _call_args(inner, where, 2)
            return PolynomialSeq(a, k)
        if fn == "constant":
            (c,) = _call_args(inner, where, 1)
            return constant(c)
        raise ScenarioError(f"{where}: unknown sequence form {fn!r}")
    raise ScenarioError(
        f"{where}: expected geometric(a, r), polynomial(a, k), constant(c) "
        f"or [v0, v1, ...], got {raw!r}"
    )


def _sweep_values(raw: str, where: str) -> tuple[float, ...]:
    if raw.startswith("[") and raw.endswith("]"):
        return _float_list(raw, where)
    m = _CALL_RE.match(raw)
    if m and m.group(1) == "linspace":
        lo, hi, n = _call_args(m.group(2), where, 3)
        if n != int(n) or int(n) < 2:
            raise ScenarioError(f"{where}: linspace needs an integer count >= 2")
        return tuple(float(v) for v in np.linspace(lo, hi, int(n)))
    raise ScenarioError(
        f"{where}: expected linspace(lo, hi, n) or [v0, v1, ...], got {raw!r}"
    )


def _names(raw: str, where: str) -> tuple[str, ...]:
    parts = [p.strip() for p in raw.split(",") if p.strip()]
    if not parts:
        raise ScenarioError(f"{where}: expected a comma-separated name list")
    return tuple(parts)


# ---------------------------------------------------------------------------
# model schemas


@dataclass(frozen=True)
class Opt:
    kind: str                 # float | int | bool | sequence
    required: bool = False
    default: object = None
    param: bool = False       # model parameter (sweepable) vs run control


_OLG_COLUMNS = ("t", "P", "D", "R")
_WILSON_COLUMNS = ("t", "P", "D", "R", "yield")
_BB_COLUMNS = ("t", "P", "D", "R", "W", "K", "phi", "price_rent")

MODEL_SCHEMAS: dict[str, dict[str, Opt]] = {
    "samuelson": {
        "beta": Opt("float", required=True, param=True),
        "young_endow": Opt("float", required=True, param=True),
        "old_endow": Opt("float", required=True, param=True),
        "p0": Opt("float"),
        "horizon": Opt("int", default=200),
    },
    "weil": {
        "beta": Opt("float", required=True, param=True),
        "young_endow": Opt("float", required=True, param=True),
        "old_endow": Opt("float", required=True, param=True),
        "survival": Opt("float", required=True, param=True),
        "seed": Opt("int", default=0),
        "horizon": Opt("int", default=200),
    },
    "bewley": {
        "beta": Opt("float", required=True, param=True),
        "gamma": Opt("float", required=True, param=True),
        "growth": Opt("float", required=True, param=True),
        "rich_endow": Opt("float", required=True, param=True),
        "poor_endow": Opt("float", required=True, param=True),
        "horizon": Opt("int", default=200),
    },
    "tirole": {
        "beta": Opt("float", required=True, param=True),
        "alpha": Opt("float", required=True, param=True),
        "delta": Opt("float", required=True, param=True),
        "tfp": Opt("float", required=True, param=True),
    },
    "tirole_crowdin": {
        "beta": Opt("float", required=True, param=True),
        "alpha": Opt("float", required=True, param=True),
        "delta": Opt("float", required=True, param=True),
        "tfp": Opt("float", required=True, param=True),
        "entrepreneur_prob": Opt("float", required=True, param=True),
    },
    "wilson": {
        "beta": Opt("float", required=True, param=True),
        "young_endow": Opt("sequence", required=True),
        "dividend": Opt("sequence", required=True),
        "horizon": Opt("int", default=200),
        "test_horizon": Opt("int", default=10_000),
    },
    "barebones": {
        "pi": Opt("float", required=True, param=True),
        "beta": Opt("float", required=True, param=True),
        "delta": Opt("float", required=True, param=True),
        "productivity": Opt("float", required=True, param=True),
        "rent": Opt("float", required=True, param=True),
        "land_supply": Opt("float", default=1.0, param=True),
        "horizon": Opt("int", default=200),
        "p0": Opt("float"),
        "w0": Opt("float"),
        "truncation": Opt("int"),
        "require_feasible": Opt("bool", default=False),
    },
    "barebones_construct": {
        "pi": Opt("float", required=True, param=True),
        "beta": Opt("float", required=True, param=True),
        "delta": Opt("float", required=True, param=True),
        "productivity": Opt("float", required=True, param=True),
        "rent": Opt("float", required=True, param=True),
        "land_supply": Opt("float", default=1.0, param=True),
        "k0": Opt("float", required=True),
        "horizon": Opt("int", default=200),
    },
    "barebones_switch": {
        "pi": Opt("float", required=True, param=True),
        "beta": Opt("float", required=True, param=True),
        "delta": Opt("float", required=True, param=True),
        "rent": Opt("float", required=True, param=True),
        "land_supply": Opt("float", default=1.0, param=True),
        "base_productivity": Opt("float", required=True, param=True),
        "shock_productivity": Opt("float", required=True, param=True),
        "shock_rent": Opt("float", param=True),
        "shock_on": Opt("int", required=True),
        "shock_off": Opt("int", required=True),
        "horizon": Opt("int", default=50),
    },
    "barebones_timevarying": {
        "pi": Opt("float", required=True, param=True),
        "beta": Opt("float", required=True, param=True),
        "delta": Opt("float", required=True, param=True),
        "land_supply": Opt("float", default=1.0, param=True),
        "productivity": Opt("sequence", required=True),
        "rent": Opt("sequence", required=True),
        "w0": Opt("float", required=True),
        "horizon": Opt("int", default=200),
        "require_feasible": Opt("bool", default=True),
    },
}

# models that emit no time path (steady-state comparisons only)
_NO_PATH_MODELS = frozenset({"tirole", "tirole_crowdin"})


@dataclass(frozen=True)
class Scenario:
    name: str
    model: str
    options: dict[str, object]
    columns: tuple[str, ...] | None = None
    sweep: str | None = None
    sweep_values: tuple[float, ...] | None = None
    stats: tuple[str, ...] | None = None

    @property
    def is_sweep(self) -> bool:
        return self.sweep is not None


def _typed_scenario(raw: _RawSection, source: str) -> Scenario:
    def where(key: str) -> str:
        return f"{source}:{raw.pairs[key][1]}: [{raw.name}] {key}"

    pairs = dict(raw.pairs)
    if "model" not in pairs:
        raise ScenarioError(
            f"{source}:{raw.line}: [{raw.name}] is missing the model key"
        )
    model = pairs.pop("model")[0]
    if model not in MODEL_SCHEMAS:
        raise ScenarioError(
            f"{where('model')}: unknown model {model!r}; "
            f"known: {', '.join(sorted(MODEL_SCHEMAS))}"
        )
    schema = MODEL_SCHEMAS[model]

    if "sweep" in pairs:
        return _typed_sweep(raw, source, model, pairs, where)

    columns: tuple[str, ...] | None = None
    if "columns" in pairs:
        if model in _NO_PATH_MODELS:
            raise ScenarioError(
                f"{where('columns')}: model {model!r} produces no path"
            )
        columns = _names(pairs.pop("columns")[0], where("columns"))

    options: dict[str, object] = {}
    for key, (rawval, _lineno) in pairs.items():
        if key in ("values", "stats"):
            raise ScenarioError(
                f"{where(key)}: {key!r} is only valid in sweep scenarios"
            )
        if key not in schema:
            raise ScenarioError(
                f"{where(key)}: unknown key for model {model!r}; "
                f"known: {', '.join(sorted(schema))}"
            )
        opt = schema[key]
        w = where(key)
        if opt.kind == "float":
            options[key] = _float(rawval, w)
        elif opt.kind == "int":
            options[key] = _int(rawval, w)
        elif opt.kind == "bool":
            options[key] = _bool(rawval, w)
        elif opt.kind == "sequence":
            options[key] = _sequence(rawval, w)
        else:  # pragma: no cover - schema table bug
            raise AssertionError(opt.kind)
    for key, opt in schema.items():
        if key in options:
            continue
        if opt.required:
            raise ScenarioError(
                f"{source}:{raw.line}: [{raw.name}] is missing "
                f"required key {key!r}"
            )
        if opt.default is not None or opt.kind == "bool":
            options[key] = opt.default

    if columns is not None:
        for c in columns:
            if c not in csvio.PATH_COLUMNS:
                raise ScenarioError(
                    f"{where('columns')}: unknown column {c!r}; "
                    f"known: {', '.join(csvio.PATH_COLUMNS)}"
                )
            if c in ("V", "bubble") and options.get("truncation") is None:
                raise ScenarioError(
                    f"{where('columns')}: column {c!r} needs a "
                    "truncation key to run the valuation"
                )
    return Scenario(name=raw.name, model=model, options=options, columns=columns)


def _typed_sweep(raw, source, model, pairs, where) -> Scenario:
    schema = MODEL_SCHEMAS[model]
    if model not in _STAT_NAMES:
        raise ScenarioError(
            f"{where('sweep')}: model {model!r} does not support sweeps; "
            f"sweepable: {', '.join(sorted(_STAT_NAMES))}"
        )
    sweep_key = pairs.pop("sweep")[0].strip()
    if sweep_key not in schema or not schema[sweep_key].param:
        params = [k for k, o in schema.items() if o.param]
        raise ScenarioError(
            f"{source}:{raw.line}: [{raw.name}] cannot sweep {sweep_key!r}; "
            f"sweepable parameters: {', '.join(params)}"
        )
    if "values" not in pairs:
        raise ScenarioError(
            f"{source}:{raw.line}: [{raw.name}] sweep needs a values key"
        )
    values = _sweep_values(pairs.pop("values")[0], where("values"))
    if "stats" not in pairs:
        raise ScenarioError(
            f"{source}:{raw.line}: [{raw.name}] sweep needs a stats key"
        )
    stats = _names(pairs.pop("stats")[0], where("stats"))
    for s in stats:
        if s not in _STAT_NAMES[model]:
            raise ScenarioError(
                f"{where('stats')}: unknown statistic {s!r} for {model!r}; "
                f"known: {', '.join(_STAT_NAMES[model])}"
            )

    options: dict[str, object] = {}
    for key, (rawval, _lineno) in pairs.items():
        if key not in schema or not schema[key].param:
            raise ScenarioError(
                f"{where(key)}: only model parameters are allowed in sweeps"
            )
        options[key] = _float(rawval, where(key))
    for key, opt in schema.items():
        if not opt.param or key in options or key == sweep_key:
            continue
        if opt.required:
            raise ScenarioError(
                f"{source}:{raw.line}: [{raw.name}] is missing "
                f"required key {key!r}"
            )
        if opt.default is not None:
            options[key] = opt.default
    if sweep_key in options:
        del options[sweep_key]
    return Scenario(
        name=raw.name,
        model=model,
        options=options,
        sweep=sweep_key,
        sweep_values=values,
        stats=stats,
    )


def parse_scenarios(text: str, source: str = "<string>") -> list[Scenario]:
    sections = _split_sections(text, source)
    if not sections:
        raise ScenarioError(f"{source}: no scenarios found")
    return [_typed_scenario(s, source) for s in sections]


def load_scenarios(path: str | Path) -> list[Scenario]:
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as e:
        raise ScenarioError(f"cannot read {p}: {e}") from None
    return parse_scenarios(text, source=str(p))


# ---------------------------------------------------------------------------
# serialization (round-trips through the parser)


def _format_value(v: object) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, int):
        return str(v)
    if isinstance(v, float):
        return repr(v)
    if isinstance(v, GeometricSeq):
        return f"geometric({v.scale!r}, {v.ratio!r})"
    if isinstance(v, PolynomialSeq):
        return f"polynomial({v.scale!r}, {v.power!r})"
    if isinstance(v, ExplicitSeq):
        return "[" + ", ".join(repr(float(x)) for x in v.entries) + "]"
    raise TypeError(f"cannot serialize {type(v).__name__}")


def serialize_scenario(sc: Scenario) -> str:
    lines = [f"[{sc.name}]", f"model = {sc.model}"]
    if sc.is_sweep:
        lines.append(f"sweep = {sc.sweep}")
        lines.append(
            "values = [" + ", ".join(repr(v) for v in sc.sweep_values) + "]"
        )
        lines.append("stats = " + ", ".join(sc.stats))
    for key, val in sc.options.items():
        if val is None:
            continue
        lines.append(f"{key} = {_format_value(val)}")
    if sc.columns is not None:
        lines.append("columns = " + ", ".join(sc.columns))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# sweep statistics


def _stats_samuelson(o: dict) -> dict[str, object]:
    p = olg.SamuelsonParams(o["beta"], o["young_endow"], o["old_endow"])
    eq = olg.samuelson_equilibria(p)
    price = eq.stationary_price if eq.stationary_price is not None else float("nan")
    return {
        "stationary_price": price,
        "autarky_rate": olg.autarky_rate(p),
        "has_bubbly": eq.has_bubbly,
    }


def _stats_tirole(o: dict) -> dict[str, object]:
    p = _tirole_params(o)
    ss = (
        tirole.tirole_crowdin_steady(p)
        if p.entrepreneur_prob < 1.0
        else tirole.tirole_steady(p)
    )
    b = ss.bubbly
    return {
        "k_fundamental": ss.k_fundamental,
        "r_fundamental": ss.r_fundamental,
        "k_bubbly": b.capital if b else float("nan"),
        "bubble_price": b.price if b else float("nan"),
        "crowding": ss.crowding if ss.crowding is not None else "none",
    }


def _tirole_params(o: dict) -> tirole.TiroleParams:
    return tirole.TiroleParams(
        beta=o["beta"],
        alpha=o["alpha"],
        delta=o["delta"],
        tfp=o["tfp"],
        entrepreneur_prob=o.get("entrepreneur_prob", 1.0),
    )


def _stats_barebones(o: dict) -> dict[str, object]:
    p = _barebones_params(o)
    th = barebones.thresholds(p)
    ss = barebones.steady_state(p)
    regime = barebones.classify_regime(p)
    return {
        "longrun_rate": barebones.longrun_rate(p),
        "regime": regime.kind.value,
        "has_bubble": regime.has_bubble,
        "steady_price": ss.price if ss is not None else float("nan"),
        "steady_rate": ss.rate if ss is not None else float("nan"),
        "price_slope": barebones.price_slope(p),
        "min_wealth": barebones.min_wealth(p),
        "threshold_low": th.low,
        "threshold_high": th.high,
    }


def _barebones_params(o: dict) -> barebones.BareBonesParams:
    return barebones.BareBonesParams(
        pi=o["pi"],
        beta=o["beta"],
        delta=o["delta"],
        productivity=o["productivity"],
        rent=o["rent"],
        land_supply=o.get("land_supply", 1.0),
    )


_STAT_FUNCS = {
    "samuelson": _stats_samuelson,
    "tirole": _stats_tirole,
    "tirole_crowdin": _stats_tirole,
    "barebones": _stats_barebones,
}

_STAT_NAMES = {
    "samuelson": ("stationary_price", "autarky_rate", "has_bubbly"),
    "tirole": (
        "k_fundamental", "r_fundamental", "k_bubbly", "bubble_price", "crowding",
    ),
    "tirole_crowdin": (
        "k_fundamental", "r_fundamental", "k_bubbly", "bubble_price", "crowding",
    ),
    "barebones": (
        "longrun_rate", "regime", "has_bubble", "steady_price", "steady_rate",
        "price_slope", "min_wealth", "threshold_low", "threshold_high",
    ),
}


def run_sweep_values(
    sc: Scenario,
) -> tuple[list[float], dict[str, list[object]]]:
    """Evaluate a sweep in memory: the swept grid plus one list per stat."""
    if not sc.is_sweep:
        raise ValueError(f"scenario {sc.name!r} is not a sweep")
    stat_fn = _STAT_FUNCS[sc.model]
    out: dict[str, list[object]] = {name: [] for name in sc.stats}
    for v in sc.sweep_values:
        opts = dict(sc.options)
        opts[sc.sweep] = v
        row = stat_fn(opts)
        for name in sc.stats:
            out[name].append(row[name])
    return list(sc.sweep_values), out


# ---------------------------------------------------------------------------
# single runs


@dataclass
class _ModelOutput:
    path: EquilibriumPath | None
    report: valuation.BubbleReport | None
    summary: dict[str, object]
    columns: tuple[str, ...]


def _run_samuelson(o: dict, horizon: int, seed: int | None) -> _ModelOutput:
    p = olg.SamuelsonParams(o["beta"], o["young_endow"], o["old_endow"])
    eq = olg.samuelson_equilibria(p)
    summary: dict[str, object] = {
        "stationary_price": eq.stationary_price
        if eq.stationary_price is not None
        else float("nan"),
        "autarky_rate": olg.autarky_rate(p),
        "has_bubbly": eq.has_bubbly,
    }
    p0 = o.get("p0")
    if p0 is None:
        if eq.stationary_price is None:
            raise RunError(
                "no positive stationary price at these endowments; "
                "only autarky exists (give p0 to force an attempt)"
            )
        p0 = eq.stationary_price
    path = olg.samuelson_price_path(p, p0, horizon)
    summary["p0"] = p0
    return _ModelOutput(path, None, summary, _OLG_COLUMNS)


def _run_weil(o: dict, horizon: int, seed: int | None) -> _ModelOutput:
    p = olg.WeilParams(
        o["beta"], o["young_endow"], o["old_endow"], o["survival"]
    )
    use_seed = o["seed"] if seed is None else seed
    price = olg.weil_stationary_price(p)
    if price is None:
        raise RunError(
            "no stochastic bubble at these parameters "
            "(survival-weighted demand too low)"
        )
    path = olg.weil_sample_path(p, seed=use_seed, horizon=horizon)
    summary = {
        "stationary_price": price,
        "seed": use_seed,
        "collapse_time": path.meta["collapse_time"],
        "mean_collapse_time": path.meta["mean_collapse_time"],
    }
    return _ModelOutput(path, None, summary, _OLG_COLUMNS)


def _run_bewley(o: dict, horizon: int, seed: int | None) -> _ModelOutput:
    p = bewley.BewleyParams(
        o["beta"], o["gamma"], o["growth"], o["rich_endow"], o["poor_endow"]
    )
    eq = bewley.bewley_price(p)
    if not eq.exists:
        return _ModelOutput(
            None, None, {"exists": False, "reason": eq.reason}, _OLG_COLUMNS
        )
    path = bewley.bewley_path(p, horizon)
    checks = bewley.bewley_validate(p, horizon=min(horizon, 1000))
    summary = {
        "exists": True,
        "price_level": eq.price_level,
        "rate": p.growth,
        "max_rich_residual": checks["max_rich_residual"],
        "min_poor_slack": checks["min_poor_slack"],
    }
    return _ModelOutput(path, None, summary, _OLG_COLUMNS)


def _run_tirole(o: dict, horizon: int, seed: int | None) -> _ModelOutput:
    p = _tirole_params(o)
    crowdin = p.entrepreneur_prob < 1.0
    ss = tirole.tirole_crowdin_steady(p) if crowdin else tirole.tirole_steady(p)
    summary: dict[str, object] = {
        "k_fundamental": ss.k_fundamental,
        "r_fundamental": ss.r_fundamental,
    }
    if ss.bubbly is not None:
        summary["k_bubbly"] = ss.bubbly.capital
        summary["bubble_price"] = ss.bubbly.price
        summary["bubble_rate"] = ss.bubbly.rate
    summary["crowding"] = ss.crowding if ss.crowding is not None else "none"
    if not crowdin:
        summary["savings_residual"] = tirole.savings_identity_residual(p)
    if crowdin and ss.bubbly is not None:
        summary["crossover_prob"] = tirole.crossover_pi(p)
    return _ModelOutput(None, None, summary, ())


def _run_wilson(o: dict, horizon: int, seed: int | None) -> _ModelOutput:
    p = wilson.WilsonParams(o["beta"], o["young_endow"], o["dividend"])
    path = wilson.wilson_path(p, horizon)
    test = wilson.wilson_bubble_test(p, horizon=o["test_horizon"])
    summary = {
        "yield_series": test.kind.value,
        "has_bubble": test.kind.value == "convergent",
        "tail_ratio": test.tail_ratio,
    }
    return _ModelOutput(path, None, summary, _WILSON_COLUMNS)


def _barebones_summary(p: barebones.BareBonesParams) -> dict[str, object]:
    th = barebones.thresholds(p)
    regime = barebones.classify_regime(p)
    ss = barebones.steady_state(p)
    out: dict[str, object] = {
        "regime": regime.kind.value,
        "has_bubble": regime.has_bubble,
        "threshold_low": th.low,
        "threshold_high": th.high,
        "longrun_rate": barebones.longrun_rate(p),
        "counterfactual_rate": regime.necessity.counterfactual_rate,
        "economy_growth": regime.necessity.economy_growth,
    }
    if ss is not None:
        out["steady_price"] = ss.price
        out["steady_rate"] = ss.rate
    return out


def _run_barebones(o: dict, horizon: int, seed: int | None) -> _ModelOutput:
    p = _barebones_params(o)
    summary = _barebones_summary(p)
    p0, w0 = o.get("p0"), o.get("w0")
    if p0 is not None and w0 is not None:
        raise RunError("give p0 or w0, not both")
    if p0 is not None:
        path = barebones.simulate_from_price(
            p, p0, horizon, require_feasible=o["require_feasible"]
        )
    elif w0 is not None:
        path = barebones.simulate_forward(
            p, w0, horizon, require_feasible=o["require_feasible"]
        )
    else:
        ss = barebones.steady_state(p)
        if ss is None:
            raise RunError(
                "no steady state at or above the upper threshold; give p0 or w0"
            )
        path = barebones.steady_path(p, horizon)
    for key in ("w_bound", "feasible"):
        if key in path.meta:
            summary[key] = path.meta[key]
    report = None
    columns = _BB_COLUMNS
    trunc = o.get("truncation")
    if trunc is not None:
        report = valuation.fundamental_value(path, trunc)
        summary["valuation_verdict"] = report.verdict
        summary["limit_rate"] = report.limit_rate
        columns = _BB_COLUMNS + ("V", "bubble")
    return _ModelOutput(path, report, summary, columns)


def _run_barebones_construct(
    o: dict, horizon: int, seed: int | None
) -> _ModelOutput:
    p = _barebones_params(o)
    built = barebones.construct_equilibrium(p, o["k0"], horizon)
    summary = _barebones_summary(p)
    summary["prephase_length"] = built.prephase_length
    summary["w_switch"] = built.w_switch
    summary["w_bound"] = built.path.meta["w_bound"]
    summary["prephase_rate_residual"] = built.path.meta[
        "prephase_rate_residual"
    ]
    return _ModelOutput(built.path, None, summary, _BB_COLUMNS)


def _run_barebones_switch(
    o: dict, horizon: int, seed: int | None
) -> _ModelOutput:
    base = barebones.BareBonesParams(
        pi=o["pi"],
        beta=o["beta"],
        delta=o["delta"],
        productivity=o["base_productivity"],
        rent=o["rent"],
        land_supply=o.get("land_supply", 1.0),
    )
    shock_rent = o.get("shock_rent")
    shock = barebones.BareBonesParams(
        pi=o["pi"],
        beta=o["beta"],
        delta=o["delta"],
        productivity=o["shock_productivity"],
        rent=o["rent"] if shock_rent is None else shock_rent,
        land_supply=o.get("land_supply", 1.0),
    )
    path = barebones.simulate_regime_switch(
        base, shock, o["shock_on"], o["shock_off"], horizon
    )
    summary = {
        "base_regime": barebones.classify_regime(base).kind.value,
        "shock_regime": barebones.classify_regime(shock).kind.value,
        "base_steady_price": path.meta["base_steady_price"],
        "window": f"[{o['shock_on']}, {o['shock_off']})",
        "arbitrage_violations": len(path.meta["arbitrage_violations"]),
    }
    return _ModelOutput(path, None, summary, _BB_COLUMNS)


def _run_barebones_timevarying(
    o: dict, horizon: int, seed: int | None
) -> _ModelOutput:
    prod, rent = o["productivity"], o["rent"]
    p = barebones.BareBonesParams(
        pi=o["pi"],
        beta=o["beta"],
        delta=o["delta"],
        productivity=prod.value(0),
        rent=rent.value(0),
        land_supply=o.get("land_supply", 1.0),
    )
    res = barebones.simulate_timevarying(
        p,
        o["w0"],
        horizon,
        productivity=prod,
        rent=rent,
        require_feasible=o["require_feasible"],
    )
    summary = {
        "has_bubble": res.bubble,
        "final_slope_ratio": float(res.slope_ratio[-1]),
        "arbitrage_violations": len(res.violations),
    }
    return _ModelOutput(res.path, None, summary, _BB_COLUMNS)


_RUNNERS = {
    "samuelson": _run_samuelson,
    "weil": _run_weil,
    "bewley": _run_bewley,
    "tirole": _run_tirole,
    "tirole_crowdin": _run_tirole,
    "wilson": _run_wilson,
    "barebones": _run_barebones,
    "barebones_construct": _run_barebones_construct,
    "barebones_switch": _run_barebones_switch,
    "barebones_timevarying": _run_barebones_timevarying,
}


@dataclass
class RunResult:
    scenario: str
    files: list[Path]
    summary: dict[str, object]


def _summary_text(summary: dict[str, object]) -> str:
    lines = []
    for key, val in summary.items():
        if isinstance(val, bool):
            s = "true" if val else "false"
        elif isinstance(val, (float, np.floating)):
            s = csvio.format_float(float(val))
        else:
            s = str(val)
        lines.append(f"{key} = {s}")
    return "\n".join(lines) + "\n"


def _write(path: Path, text: str) -> None:
    with open(path, "w", newline="") as fh:
        fh.write(text)


def run_scenario(
    sc: Scenario,
    out_dir: str | Path,
    horizon: int | None = None,
    seed: int | None = None,
) -> RunResult:
    """Run one scenario, writing its CSV and summary into out_dir."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    files: list[Path] = []

    if sc.is_sweep:
        values, stats = run_sweep_values(sc)
        header = [sc.sweep, *sc.stats]
        rows = [
            [v, *(stats[name][i] for name in sc.stats)]
            for i, v in enumerate(values)
        ]
        sweep_file = out / f"{sc.name}_sweep.csv"
        _write(sweep_file, csvio.emit_table_csv(header, rows))
        files.append(sweep_file)
        summary: dict[str, object] = {
            "model": sc.model,
            "sweep": sc.sweep,
            "points": len(values),
        }
    else:
        run = _RUNNERS[sc.model]
        h = horizon if horizon is not None else sc.options.get("horizon", 0)
        output = run(sc.options, h, seed)
        summary = {"model": sc.model, **output.summary}
        if output.path is not None:
            columns = sc.columns if sc.columns is not None else output.columns
            csv_file = out / f"{sc.name}.csv"
            _write(
                csv_file,
                csvio.emit_csv(output.path, tuple(columns), output.report),
            )
            files.append(csv_file)

    summary_file = out / f"{sc.name}_summary.txt"
    _write(summary_file, _summary_text(summary))
    files.append(summary_file)
    return RunResult(scenario=sc.name, files=files, summary=summary)


def list_models() -> str:
    """Human-readable registry of models and their scenario keys."""
    lines = []
    for model in sorted(MODEL_SCHEMAS):
        schema = MODEL_SCHEMAS[model]
        parts = []
        for key, opt in schema.items():
            mark = key if opt.required else f"[{key}]"
            parts.append(mark)
        tail = "" if model not in _NO_PATH_MODELS else "  (no path output)"
        lines.append(f"{model}: {', '.join(parts)}{tail}")
        if model in _STAT_NAMES:
            lines.append(f"  sweep stats: {', '.join(_STAT_NAMES[model])}")
    return "\n".join(lines) + "\n"
