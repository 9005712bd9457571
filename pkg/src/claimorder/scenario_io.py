"""Flat key-value scenario files: parsing with position-annotated errors.

The format is one ``dotted.key = value`` pair per line, ``#`` comments, two
portfolio sections (``portfolio_a`` is the starred one), and optional
``theorem``, ``h``, ``majorization_tol`` and ``grid.*`` settings.  See the
files under ``scenarios/`` for complete examples.
"""

from __future__ import annotations

from dataclasses import dataclass

from .claims import IndependentIndicators, JointPairIndicators, Portfolio
from .copulas import AMH, FGM, Copula, Frank3, GumbelHougaard, Independence
from .margins import (
    Gamma,
    Margin,
    Pareto,
    PHRMargin,
    ScaleMargin,
    StdExponential,
    StdUniform,
    TGMargin,
    TransmutedExponential,
    Weibull,
)
from .theorems import (
    GridSpec,
    HFunction,
    IdentityH,
    LogShift2H,
    Scenario,
    SqrtH,
    TabulatedMonotoneH,
    TheoremId,
)

__all__ = ["ScenarioParseError", "ParsedScenario", "parse_scenario_text"]


class ScenarioParseError(ValueError):
    """Malformed scenario text; carries the offending line when known."""

    def __init__(self, msg: str, line: int | None = None):
        self.line = line
        super().__init__(msg if line is None else f"line {line}: {msg}")


@dataclass(frozen=True)
class ParsedScenario:
    scenario: Scenario
    theorem: TheoremId | None


class _Bag:
    def __init__(self, text: str):
        self.entries: dict[str, tuple[str, int]] = {}
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ScenarioParseError("expected 'key = value'", lineno)
            key, _, val = line.partition("=")
            key, val = key.strip(), val.strip()
            if not key or not val:
                raise ScenarioParseError("empty key or value", lineno)
            if key in self.entries:
                raise ScenarioParseError(f"duplicate key '{key}'", lineno)
            self.entries[key] = (val, lineno)
        if not self.entries:
            raise ScenarioParseError("scenario file declares nothing")

    def has(self, key: str) -> bool:
        return key in self.entries

    def take(self, key: str) -> tuple[str, int]:
        if key not in self.entries:
            raise ScenarioParseError(f"missing required key '{key}'")
        return self.entries.pop(key)

    def take_opt(self, key: str) -> tuple[str, int] | None:
        return self.entries.pop(key, None)

    def finish(self):
        if self.entries:
            key, (_, lineno) = next(iter(self.entries.items()))
            raise ScenarioParseError(f"unknown key '{key}'", lineno)


def _float(val: str, lineno: int, key: str) -> float:
    try:
        return float(val)
    except ValueError:
        raise ScenarioParseError(f"'{key}' must be a number, got '{val}'", lineno) from None


def _int(val: str, lineno: int, key: str) -> int:
    try:
        return int(val)
    except ValueError:
        raise ScenarioParseError(f"'{key}' must be an integer, got '{val}'", lineno) from None


_BASELINES = {"exponential": StdExponential, "uniform": StdUniform}

_MARGIN_BUILDERS = {
    "gamma": (Gamma, ("shape", "rate")),
    "pareto": (Pareto, ("scale", "exponent")),
    "weibull": (Weibull, ("shape", "rate")),
    "transmuted_exponential": (TransmutedExponential, ("scale", "transmute")),
    "scale": (ScaleMargin, ("baseline", "rate")),
    "phr": (PHRMargin, ("baseline", "power")),
    "tg": (TGMargin, ("baseline", "transmute")),
}


def _build_margin(bag: _Bag, prefix: str) -> Margin:
    fam_val, fam_line = bag.take(f"{prefix}.family")
    if fam_val not in _MARGIN_BUILDERS:
        raise ScenarioParseError(
            f"unknown margin family '{fam_val}' (one of {sorted(_MARGIN_BUILDERS)})", fam_line
        )
    cls, fields = _MARGIN_BUILDERS[fam_val]
    kwargs = {}
    for field_name in fields:
        val, lineno = bag.take(f"{prefix}.{field_name}")
        if field_name == "baseline":
            if val not in _BASELINES:
                raise ScenarioParseError(
                    f"unknown baseline '{val}' (one of {sorted(_BASELINES)})", lineno
                )
            kwargs[field_name] = _BASELINES[val]()
        else:
            kwargs[field_name] = _float(val, lineno, f"{prefix}.{field_name}")
    try:
        return cls(**kwargs)
    except ValueError as exc:
        raise ScenarioParseError(f"{prefix}: {exc}", fam_line) from None


def _build_copula(bag: _Bag, prefix: str, n: int) -> Copula:
    fam_val, fam_line = bag.take(f"{prefix}.family")
    dim_entry = bag.take_opt(f"{prefix}.dimension")
    dim = _int(*dim_entry, f"{prefix}.dimension") if dim_entry else n

    def theta() -> float:
        val, lineno = bag.take(f"{prefix}.theta")
        return _float(val, lineno, f"{prefix}.theta")

    try:
        if fam_val == "independence":
            return Independence(dim)
        if fam_val == "fgm":
            return FGM(dim, theta())
        if fam_val == "amh":
            return AMH(theta(), dim)
        if fam_val == "gumbel_hougaard":
            return GumbelHougaard(theta(), dim)
        if fam_val == "frank3":
            return Frank3(theta(), dim)
    except ValueError as exc:
        raise ScenarioParseError(f"{prefix}: {exc}", fam_line) from None
    raise ScenarioParseError(f"unknown copula family '{fam_val}'", fam_line)


def _build_indicators(bag: _Bag, prefix: str, n: int):
    kind_val, kind_line = bag.take(f"{prefix}.kind")
    try:
        if kind_val == "independent":
            ps = []
            for i in range(1, n + 1):
                val, lineno = bag.take(f"{prefix}.p.{i}")
                ps.append(_float(val, lineno, f"{prefix}.p.{i}"))
            return IndependentIndicators(tuple(ps))
        if kind_val == "joint":
            vals = []
            for name in ("p00", "p01", "p10", "p11"):
                val, lineno = bag.take(f"{prefix}.{name}")
                vals.append(_float(val, lineno, f"{prefix}.{name}"))
            return JointPairIndicators(*vals)
    except ValueError as exc:
        raise ScenarioParseError(f"{prefix}: {exc}", kind_line) from None
    raise ScenarioParseError(
        f"unknown indicator kind '{kind_val}' (independent or joint)", kind_line
    )


def _build_portfolio(bag: _Bag, name: str) -> Portfolio:
    n = 0
    while bag.has(f"{name}.margin.{n + 1}.family"):
        n += 1
    if n == 0:
        raise ScenarioParseError(f"section '{name}' declares no margins")
    margins = tuple(_build_margin(bag, f"{name}.margin.{i}") for i in range(1, n + 1))
    copula = _build_copula(bag, f"{name}.copula", n)
    indicators = _build_indicators(bag, f"{name}.indicators", n)
    try:
        return Portfolio(margins, copula, indicators)
    except ValueError as exc:
        raise ScenarioParseError(f"{name}: {exc}") from None


def _build_h(bag: _Bag) -> HFunction | None:
    entry = bag.take_opt("h")
    if entry is None:
        return None
    val, lineno = entry
    if val == "identity":
        return IdentityH()
    if val == "sqrt":
        return SqrtH()
    if val == "log_shift_2":
        return LogShift2H()
    if val == "tabulated":
        knots = []
        k = 1
        while bag.has(f"h.knot.{k}.p"):
            pv, pl = bag.take(f"h.knot.{k}.p")
            vv, vl = bag.take(f"h.knot.{k}.value")
            knots.append((_float(pv, pl, "h.knot.p"), _float(vv, vl, "h.knot.value")))
            k += 1
        try:
            return TabulatedMonotoneH(tuple(knots))
        except ValueError as exc:
            raise ScenarioParseError(f"h: {exc}", lineno) from None
    raise ScenarioParseError(f"unknown h function '{val}'", lineno)


def parse_scenario_text(text: str) -> ParsedScenario:
    """Parse scenario text into a Scenario plus its optional theorem tag."""
    bag = _Bag(text)

    theorem = None
    entry = bag.take_opt("theorem")
    if entry is not None:
        val, lineno = entry
        try:
            theorem = TheoremId(val)
        except ValueError:
            raise ScenarioParseError(f"unknown theorem id '{val}'", lineno) from None

    h = _build_h(bag)

    tol = 1e-12
    entry = bag.take_opt("majorization_tol")
    if entry is not None:
        tol = _float(entry[0], entry[1], "majorization_tol")

    grid_kwargs = {}
    for key, conv in (("points", _int), ("qlo", _float), ("qhi", _float)):
        entry = bag.take_opt(f"grid.{key}")
        if entry is not None:
            grid_kwargs[key] = conv(entry[0], entry[1], f"grid.{key}")
    try:
        grid = GridSpec(**grid_kwargs)
    except ValueError as exc:
        raise ScenarioParseError(f"grid: {exc}") from None

    a = _build_portfolio(bag, "portfolio_a")
    b = _build_portfolio(bag, "portfolio_b")
    bag.finish()
    if a.n != b.n:
        raise ScenarioParseError(f"portfolios disagree in size: {a.n} vs {b.n}")
    return ParsedScenario(Scenario(a, b, h=h, majorization_tol=tol, grid=grid), theorem)
