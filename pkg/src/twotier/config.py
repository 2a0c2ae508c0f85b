"""Single-file JSON configuration: field, code, decoding, topology, errors.

Sections materialize into the domain objects of the other modules; any
invalid value surfaces as :class:`ConfigError` so the command layer can
map it to a stable exit code. Elements in configuration are base-p digit
strings (low-order digit first) or powers of gamma like ``"g^3"``.
"""

import json
from dataclasses import dataclass

from .codes import (DEFAULT_CODEBOOK_BUDGET, GabidulinSpec, KKSpec, MVSpec,
                    build_codebook)
from .decoders import DecodeOptions
from .errors import BudgetError, ConfigError
from .fields import FieldContext, parse_element
from .sim import DETECT_ONLY, STRATEGIES, ErrorModel, Topology
from .union import DEFAULT_UNION_BUDGET, build_union


def load_config(path) -> "RunConfig":
    try:
        with open(path, encoding="utf-8") as fh:
            raw = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path} is not valid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise ConfigError(f"config {path} must be a JSON object")
    return RunConfig(raw=raw)


def _require(section: dict, key: str, where: str):
    if key not in section:
        raise ConfigError(f"missing {key!r} in {where}")
    return section[key]


@dataclass
class RunConfig:
    raw: dict

    def _section(self, key: str, required: bool = False) -> dict:
        value = self.raw.get(key, {})
        if required and key not in self.raw:
            raise ConfigError(f"missing config section {key!r}")
        if not isinstance(value, dict):
            raise ConfigError(f"config section {key!r} must be an object")
        return value

    @property
    def name(self) -> str:
        return str(self.raw.get("name", "unnamed"))

    @property
    def seed(self) -> int:
        return int(self.raw.get("seed", 0))

    @property
    def union_budget(self) -> int:
        return int(self._section("budgets").get("union", DEFAULT_UNION_BUDGET))

    @property
    def codebook_budget(self) -> int:
        return int(self._section("budgets").get("codebook", DEFAULT_CODEBOOK_BUDGET))

    def echo(self) -> dict:
        return self.raw

    # -- materialization -------------------------------------------------

    def build_field(self) -> FieldContext:
        section = self._section("field", required=True)
        try:
            return FieldContext(int(_require(section, "p", "field")),
                                int(_require(section, "n", "field")),
                                section.get("modulus"),
                                basis=section.get("basis"))
        except ValueError as exc:
            raise ConfigError(f"field: {exc}") from exc

    def build_spec(self, ctx: FieldContext):
        section = self._section("code", required=True)
        kind = _require(section, "kind", "code")
        try:
            if kind == "gabidulin":
                gens = [parse_element(ctx, s) for s in _require(section, "generators", "code")]
                return GabidulinSpec(field=ctx, n=int(_require(section, "n", "code")),
                                     k=int(_require(section, "k", "code")), generators=gens)
            if kind == "kk":
                alphas = [parse_element(ctx, s) for s in _require(section, "alphas", "code")]
                return KKSpec(field=ctx, l=int(_require(section, "l", "code")),
                              k=int(_require(section, "k", "code")), alphas=alphas)
            if kind == "mv":
                alphas = [parse_element(ctx, s) for s in _require(section, "alphas", "code")]
                return MVSpec(field=ctx, m=int(_require(section, "m", "code")),
                              l=int(_require(section, "l", "code")),
                              big_l=int(_require(section, "L", "code")),
                              k=int(_require(section, "k", "code")), alphas=alphas,
                              layout_name=section.get("layout", "uncompressed"))
        except ValueError as exc:
            raise ConfigError(f"code: {exc}") from exc
        raise ConfigError(f"unknown code kind {kind!r}")

    def build_all(self):
        """(field, spec, codebook, union) with budgets applied."""
        ctx = self.build_field()
        spec = self.build_spec(ctx)
        codebook = build_codebook(spec, self.codebook_budget)
        return ctx, spec, codebook, build_union(codebook, self.union_budget)

    def decode_options(self) -> DecodeOptions:
        tier1 = self._section("tier1")
        tier2 = self._section("tier2")
        radius = tier1.get("radius")
        list_radius = tier2.get("list_radius")
        try:
            return DecodeOptions(
                tier1_enabled=bool(tier1.get("enabled", True)),
                mode=tier1.get("mode", "correct-or-erase"),
                radius=None if radius is None else int(radius),
                metric=tier2.get("metric", "injection"),
                list_radius=None if list_radius is None else int(list_radius),
                feedback=bool(self.raw.get("feedback", False)),
                allow_radius_override=bool(tier1.get("allow_radius_override", False)))
        except ValueError as exc:
            raise ConfigError(f"decoding options: {exc}") from exc

    def topology(self) -> Topology:
        section = self._section("topology", required=True)
        nodes = _require(section, "nodes", "topology")
        edges = _require(section, "edges", "topology")
        if not isinstance(nodes, dict):
            raise ConfigError("topology.nodes must map node names to roles")
        try:
            return Topology(nodes=tuple(nodes.items()),
                            edges=tuple((e[0], e[1]) for e in edges))
        except (ValueError, IndexError, TypeError) as exc:
            raise ConfigError(f"topology: {exc}") from exc

    def error_model(self) -> ErrorModel:
        section = self._section("errors")
        try:
            return ErrorModel(
                bit_flip_prob=float(section.get("bit_flip_prob", 0.0)),
                fixed_flips=(None if section.get("fixed_flips") is None
                             else int(section["fixed_flips"])),
                corrupt_packet_prob=float(section.get("corrupt_packet_prob", 0.0)),
                injected_packets=int(section.get("injected_packets", 0)),
                injection_node=section.get("injection_node"))
        except ValueError as exc:
            raise ConfigError(f"errors: {exc}") from exc

    def sim_params(self) -> dict:
        section = self._section("sim")
        strategies = tuple(section.get("strategies", STRATEGIES))
        unknown = set(strategies) - set(STRATEGIES)
        if unknown:
            raise ConfigError(f"sim: unknown strategies {sorted(unknown)}")
        trials = int(section.get("trials", 100))
        if trials < 1:
            raise ConfigError("sim: trials must be at least 1")
        return {
            "trials": trials,
            "strategies": strategies,
            "node_filter_mode": section.get("node_filter_mode", DETECT_ONLY),
            "retry_full_rank": bool(section.get("retry_full_rank", False)),
        }

    def message_digits(self):
        text = self.raw.get("message")
        if text is None:
            return None
        return parse_digits(text)


def parse_digits(text) -> tuple:
    if isinstance(text, (list, tuple)):
        return tuple(int(d) for d in text)
    s = str(text).strip()
    if not s or not all(ch.isdigit() for ch in s):
        raise ConfigError(f"cannot parse digit string {text!r}")
    return tuple(int(ch) for ch in s)
