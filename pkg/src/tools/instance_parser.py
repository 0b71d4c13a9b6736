"""
Instance Files

Line-oriented text format, one declaration per line, `#` starts a comment:

    var x1 in {1,2}
    dfa M states {q0,q1} alphabet {a,b} initial q0 accepting {q1}
    trans q0 a -> q1
    constraint soft_gcc vars(x1,x2) bounds(1:1..3, 2:0..*) measure var cost z
    constraint soft_regular vars(x1,x2) dfa M measure edit weights 1,1,1 cost z
    constraint sgca vars(z1,z2) bounds(1:0..0) measure overflow cost zagg
    minimize zagg

`trans` lines belong to the most recent `dfa`. Upper bound `*` is unbounded.
Soft gcc measures: var, val, overflow (no underflow term), linear (overflow
of d weighted by d) and weighted with over(v:w,..) under(v:w,..) defaults(o,u).
"""

import logging
import re
from pathlib import Path

from pydantic import ValidationError

from src.data_models import (
    Dfa,
    EditWeights,
    GccBounds,
    MeasureKind,
    Model,
    RegularMeasure,
    SgcaSpec,
    SoftGccSpec,
    SoftRegularSpec,
    Transition,
    Variable,
    ViolationMeasure,
)
from src.utils.errors import InstanceSyntaxError, RejectedInputError
from src.utils.utils import Value, format_values, parse_value, sorted_values

logger = logging.getLogger(__name__)

TOKEN = re.compile(r"\{[^}]*\}?|\w+\([^)]*\)?|->|\S+")
CLAUSE = re.compile(r"^(\w+)\((.*)\)$")
BOUND = re.compile(r"^\s*([^:\s]+)\s*:\s*(\d+)\s*\.\.\s*(\d+|\*)\s*$")
WEIGHT = re.compile(r"^\s*([^:\s]+)\s*:\s*(\d+)\s*$")

GCC_MEASURES = {
    "var": ViolationMeasure.var,
    "val": ViolationMeasure.val,
    "overflow": ViolationMeasure.overflow_only,
    "linear": ViolationMeasure.linear_overflow,
}
REGULAR_MEASURES = ("var", "edit")


class Token:
    def __init__(self, text: str, line: int, column: int):
        self.text = text
        self.line = line
        self.column = column

    def fail(self, message: str) -> InstanceSyntaxError:
        return InstanceSyntaxError(message, self.line, self.column)


class InstanceParser:
    """Reads an instance document into a validated Model"""

    def __init__(self):
        self.variables: list[Variable] = []
        self.dfa_headers: dict[str, dict] = {}
        self.dfa_lines: dict[str, int] = {}
        self.constraints: list = []
        self.constraint_lines: list[int] = []
        self.objective: str | None = None
        self.last_line = 1

    def parse(self, text: str) -> Model:
        current_dfa = None
        for number, raw in enumerate(text.splitlines(), 1):
            self.last_line = number
            line = raw.split("#", 1)[0]
            tokens = [Token(m.group(), number, m.start() + 1) for m in TOKEN.finditer(line)]
            if not tokens:
                continue
            keyword = tokens[0].text
            if keyword == "var":
                self._variable(tokens)
            elif keyword == "dfa":
                current_dfa = self._dfa(tokens)
            elif keyword == "trans":
                if current_dfa is None:
                    raise tokens[0].fail("trans outside a dfa block")
                self._transition(current_dfa, tokens[1:], tokens[0])
            elif keyword == "constraint":
                self._constraint(tokens)
            elif keyword == "minimize":
                self._objective(tokens)
            else:
                raise tokens[0].fail(f"unknown declaration {keyword!r}")
        return self._model()

    # Declarations

    def _variable(self, tokens: list[Token]) -> None:
        if len(tokens) != 4 or tokens[2].text != "in":
            raise tokens[0].fail("expected: var <name> in {v1,v2,...}")
        name = self._name(tokens[1])
        values = self._set(tokens[3])
        try:
            self.variables.append(Variable(name=name, domain=values))
        except ValidationError as exc:
            raise tokens[3].fail(_first_error(exc)) from exc

    def _dfa(self, tokens: list[Token]) -> str:
        if len(tokens) < 2:
            raise tokens[0].fail("expected: dfa <name> states {..} alphabet {..} initial <q> accepting {..}")
        name = self._name(tokens[1])
        if name in self.dfa_headers:
            raise tokens[1].fail(f"dfa {name} declared twice")
        header = {"name": name, "transitions": []}
        rest = tokens[2:]
        while rest:
            key = rest[0]
            if key.text == "trans":
                self.dfa_headers[name] = header
                self._transition(name, rest[1:5], key)
                rest = rest[5:]
                continue
            if len(rest) < 2:
                raise key.fail(f"missing value after {key.text}")
            value = rest[1]
            if key.text in ("states", "accepting"):
                # state names stay verbatim, "01" is not "1"
                header[key.text] = self._raw_set(value, allow_empty=key.text == "accepting")
            elif key.text == "alphabet":
                header["alphabet"] = self._set(value)
            elif key.text == "initial":
                header["initial"] = value.text
            else:
                raise key.fail(f"unknown dfa clause {key.text!r}")
            rest = rest[2:]
        for required in ("states", "alphabet", "initial"):
            if required not in header:
                raise tokens[0].fail(f"dfa {name}: missing {required}")
        self.dfa_headers[name] = header
        self.dfa_lines[name] = tokens[0].line
        return name

    def _transition(self, dfa: str, tokens: list[Token], anchor: Token) -> None:
        if len(tokens) != 4 or tokens[2].text != "->":
            raise anchor.fail("expected: trans <state> <symbol> -> <state>")
        self.dfa_headers[dfa]["transitions"].append(
            Transition(source=tokens[0].text, symbol=parse_value(tokens[1].text), target=tokens[3].text)
        )

    def _constraint(self, tokens: list[Token]) -> None:
        if len(tokens) < 2:
            raise tokens[0].fail("expected: constraint <kind> ...")
        kind = tokens[1].text
        if kind not in ("soft_gcc", "soft_regular", "sgca"):
            raise tokens[1].fail(f"unknown constraint kind {kind!r}")

        fields: dict = {}
        weights: dict[str, dict[Value, int]] = {}
        defaults = None
        measure_token = None
        rest = tokens[2:]
        while rest:
            token = rest[0]
            clause = CLAUSE.match(token.text)
            if clause:
                key, body = clause.groups()
                if key == "vars":
                    fields["variables"] = [self._name(token, n.strip()) for n in body.split(",") if n.strip()]
                elif key == "bounds":
                    fields["bounds"] = self._bounds(token, body)
                elif key in ("over", "under"):
                    weights[key] = self._weights(token, body)
                elif key == "defaults":
                    defaults = (token, body)
                else:
                    raise token.fail(f"unknown clause {key!r}")
                rest = rest[1:]
                continue
            if len(rest) < 2:
                raise token.fail(f"missing value after {token.text}")
            value = rest[1]
            if token.text == "measure":
                measure_token = value
            elif token.text == "cost":
                fields["cost"] = self._name(value)
            elif token.text == "dfa" and kind == "soft_regular":
                fields["dfa"] = self._name(value)
            elif token.text == "weights" and kind == "soft_regular":
                try:
                    fields["weights"] = EditWeights.parse(value.text)
                except (ValueError, ValidationError) as exc:
                    raise value.fail(f"bad edit weights {value.text!r}") from exc
            else:
                raise token.fail(f"unexpected {token.text!r} in {kind}")
            rest = rest[2:]

        for required in ("variables", "cost") + (("dfa",) if kind == "soft_regular" else ()):
            if required not in fields:
                raise tokens[0].fail(f"{kind}: missing {required}")

        if kind == "soft_regular":
            if weights or defaults:
                raise tokens[1].fail("soft_regular takes no over/under/defaults")
            if measure_token is not None:
                if measure_token.text not in REGULAR_MEASURES:
                    raise measure_token.fail(f"unknown soft_regular measure {measure_token.text!r}")
                fields["measure"] = RegularMeasure(measure_token.text)
            spec = SoftRegularSpec(**fields)
        else:
            if measure_token is not None:
                fields["measure"] = self._gcc_measure(measure_token, weights, defaults)
            elif weights or defaults:
                raise tokens[1].fail("over/under/defaults need measure weighted")
            spec = SoftGccSpec(**fields) if kind == "soft_gcc" else SgcaSpec(**fields)

        self.constraints.append(spec)
        self.constraint_lines.append(tokens[0].line)

    def _objective(self, tokens: list[Token]) -> None:
        if len(tokens) != 2:
            raise tokens[0].fail("expected: minimize <name>")
        if self.objective is not None:
            raise tokens[0].fail("objective declared twice")
        self.objective = self._name(tokens[1])

    # Pieces

    @staticmethod
    def _name(token: Token, text: str | None = None) -> str:
        text = token.text if text is None else text
        if not re.fullmatch(r"[A-Za-z_][\w]*", text):
            raise token.fail(f"bad name {text!r}")
        return text

    @staticmethod
    def _raw_set(token: Token, allow_empty: bool = False) -> list[str]:
        text = token.text
        if not (text.startswith("{") and text.endswith("}")):
            raise token.fail(f"expected {{...}}, got {text!r}")
        items = [item.strip() for item in text[1:-1].split(",") if item.strip()]
        if not items and not allow_empty:
            raise token.fail("empty set")
        return items

    @classmethod
    def _set(cls, token: Token, allow_empty: bool = False) -> list[Value]:
        return [parse_value(item) for item in cls._raw_set(token, allow_empty)]

    @staticmethod
    def _bounds(token: Token, body: str) -> GccBounds:
        table = {}
        for entry in (e for e in body.split(",") if e.strip()):
            match = BOUND.match(entry)
            if not match:
                raise token.fail(f"expected value:low..high, got {entry.strip()!r}")
            value = parse_value(match.group(1))
            if value in table:
                raise token.fail(f"value {value} bounded twice")
            high = None if match.group(3) == "*" else int(match.group(3))
            table[value] = (int(match.group(2)), high)
        try:
            return GccBounds.of(table)
        except ValidationError as exc:
            raise token.fail(_first_error(exc)) from exc

    @staticmethod
    def _weights(token: Token, body: str) -> dict[Value, int]:
        table = {}
        for entry in (e for e in body.split(",") if e.strip()):
            match = WEIGHT.match(entry)
            if not match:
                raise token.fail(f"expected value:weight, got {entry.strip()!r}")
            table[parse_value(match.group(1))] = int(match.group(2))
        return table

    @staticmethod
    def _gcc_measure(token: Token, weights: dict, defaults) -> ViolationMeasure:
        name = token.text
        if name not in GCC_MEASURES and name != "weighted":
            raise token.fail(f"unknown soft_gcc measure {name!r}")
        if name != "weighted":
            if weights or defaults:
                raise token.fail(f"measure {name} takes no over/under/defaults")
            return GCC_MEASURES[name]()

        default_over = default_under = 1
        if defaults is not None:
            anchor, body = defaults
            parts = [p.strip() for p in body.split(",")]
            if len(parts) != 2 or not all(p.isdigit() for p in parts):
                raise anchor.fail("expected defaults(over,under)")
            default_over, default_under = int(parts[0]), int(parts[1])
        return ViolationMeasure(
            kind=MeasureKind.WEIGHTED,
            over=weights.get("over", {}),
            under=weights.get("under", {}),
            default_over=default_over,
            default_under=default_under,
        )

    def _model(self) -> Model:
        dfas = {}
        for name, header in self.dfa_headers.items():
            try:
                dfas[name] = Dfa(**header)
            except ValidationError as exc:
                raise InstanceSyntaxError(
                    f"dfa {name}: {_first_error(exc)}", self.dfa_lines.get(name, 1), 1
                ) from exc
        try:
            return Model(
                variables=self.variables,
                dfas=dfas,
                constraints=self.constraints,
                objective=self.objective,
            )
        except ValidationError as exc:
            message = _first_error(exc)
            line = self.last_line
            found = re.search(r"constraint #(\d+)", message)
            if found and int(found.group(1)) <= len(self.constraint_lines):
                line = self.constraint_lines[int(found.group(1)) - 1]
            raise InstanceSyntaxError(message, line, 1) from exc


def _first_error(exc: ValidationError) -> str:
    message = exc.errors()[0]["msg"]
    return message.removeprefix("Value error, ")


def parse_instance(text: str) -> Model:
    """
    Raises:
        InstanceSyntaxError: with the line and column of the offending token
    """
    return InstanceParser().parse(text)


def load_instance(path: str | Path) -> Model:
    text = Path(path).read_text(encoding="utf-8")
    model = parse_instance(text)
    logger.debug(
        "loaded %s: %d variables, %d constraints", path, len(model.variables), len(model.constraints)
    )
    return model


# Writing


def _format_bounds(bounds: GccBounds) -> str:
    entries = []
    for value in bounds.values():
        high = bounds.upper(value)
        entries.append(f"{value}:{bounds.lower(value)}..{'*' if high is None else high}")
    return f"bounds({','.join(entries)})"


def _format_measure(measure: ViolationMeasure) -> str:
    if measure == ViolationMeasure.var():
        return "measure var"
    if measure == ViolationMeasure.val():
        return "measure val"
    if measure == ViolationMeasure.overflow_only():
        return "measure overflow"
    if measure == ViolationMeasure.linear_overflow():
        return "measure linear"
    parts = ["measure weighted"]
    if measure.over:
        parts.append("over(" + ",".join(f"{v}:{w}" for v, w in _ordered(measure.over)) + ")")
    if measure.under:
        parts.append("under(" + ",".join(f"{v}:{w}" for v, w in _ordered(measure.under)) + ")")
    parts.append(f"defaults({measure.default_over},{measure.default_under})")
    return " ".join(parts)


def _ordered(table: dict[Value, int]) -> list[tuple[Value, int]]:
    return [(v, table[v]) for v in sorted_values(table)]


def serialize_instance(model: Model) -> str:
    """Canonical text of a model; parse_instance reads it back to an equal Model"""
    lines = []
    for variable in model.variables:
        lines.append(f"var {variable.name} in {{{','.join(str(v) for v in variable.domain)}}}")
    for name, dfa in model.dfas.items():
        lines.append(
            f"dfa {name} states {{{','.join(dfa.states)}}} "
            f"alphabet {{{','.join(str(a) for a in dfa.alphabet)}}} "
            f"initial {dfa.initial} accepting {{{','.join(dfa.accepting)}}}"
        )
        for t in dfa.transitions:
            lines.append(f"trans {t.source} {t.symbol} -> {t.target}")
    for spec in model.constraints:
        parts = ["constraint", spec.kind, f"vars({','.join(spec.variables)})"]
        if isinstance(spec, SoftRegularSpec):
            w = spec.weights
            parts += [
                f"dfa {spec.dfa}",
                f"measure {spec.measure.value}",
                f"weights {w.substitution},{w.insertion},{w.deletion}",
            ]
        else:
            parts += [_format_bounds(spec.bounds), _format_measure(spec.measure)]
        parts.append(f"cost {spec.cost}")
        lines.append(" ".join(parts))
    if model.objective is not None:
        lines.append(f"minimize {model.objective}")
    return "\n".join(lines) + "\n"


# Command-line overrides


def apply_overrides(
    model: Model,
    measure: str | None = None,
    zmax: int | None = None,
    edit_weights: str | None = None,
) -> Model:
    """
    Replace measures, cap cost domains and set edit weights across the model

    Args:
        model: parsed instance, left untouched
        measure: applied to every soft_gcc and soft_regular constraint that
            knows the name; sgca keeps its own encoding
        zmax: new upper bound of every cost domain
        edit_weights: "s,i,d" penalties for soft_regular constraints

    Returns:
        a new Model with the overrides applied

    Raises:
        RejectedInputError: the override fits no constraint or empties a domain
    """
    constraints = list(model.constraints)
    if measure is not None:
        touched = 0
        for index, spec in enumerate(constraints):
            if isinstance(spec, SoftGccSpec) and measure in GCC_MEASURES:
                constraints[index] = spec.model_copy(update={"measure": GCC_MEASURES[measure]()})
                touched += 1
            elif isinstance(spec, SoftRegularSpec) and measure in REGULAR_MEASURES:
                constraints[index] = spec.model_copy(update={"measure": RegularMeasure(measure)})
                touched += 1
        if not touched:
            raise RejectedInputError(f"--measure {measure}: no constraint accepts it")

    if edit_weights is not None:
        try:
            weights = EditWeights.parse(edit_weights)
        except (ValueError, ValidationError) as exc:
            raise RejectedInputError(f"--edit-weights {edit_weights!r}: expected s,i,d") from exc
        constraints = [
            spec.model_copy(update={"weights": weights}) if isinstance(spec, SoftRegularSpec) else spec
            for spec in constraints
        ]

    variables = list(model.variables)
    if zmax is not None:
        costs = {spec.cost for spec in constraints}
        for index, variable in enumerate(variables):
            if variable.name in costs:
                capped = [v for v in variable.domain if v <= zmax]
                if not capped:
                    raise RejectedInputError(
                        f"--zmax {zmax} empties the domain {{{format_values(variable.domain)}}} of {variable.name}"
                    )
                variables[index] = Variable(name=variable.name, domain=capped)

    try:
        return Model(
            variables=variables,
            dfas=model.dfas,
            constraints=constraints,
            objective=model.objective,
        )
    except ValidationError as exc:
        raise RejectedInputError(_first_error(exc)) from exc
