"""Boundary rules and the rule file format.

Each rule names a trigger, an action and an optional guard:

    rule NAME priority INT trigger TRIGGER action ACTION [guard GUARD]

TRIGGER is one of
    cat:LABEL    a chunk with that label (disc-mk, disc-mk-amb, ...)
    conj:LEMMA   a coordinating-conjunction token (tag CC) with LEMMA
    punct:open   a paired opening delimiter (with its closing partner)
    punct:close  a paired closing delimiter
ACTION is "before" (boundary at the trigger span start) or "after"
(boundary right after the span end); GUARD is a guard id. Lines
starting with '#' are comments.

Lower priority numbers fire first. A rule set is only valid when every
rule triggering on a marker chunk has a strictly lower priority number
than every non-marker rule, so markers always win ties.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import guards
from .errors import ConfigError, ParseError, ValidationError

TRIGGER_KINDS = ("cat", "conj", "punct")
ACTIONS = ("before", "after")
MARKER_LABELS = ("disc-mk", "disc-mk-amb")

# Positional punctuation tags grouped into paired delimiter classes.
# Dashes pair by alternation (first one opens, the next one closes).
OPEN_TAGS = {"Fpa": "paren", "Fca": "bracket", "Fra": "quote"}
CLOSE_TAGS = {"Fpt": "paren", "Fct": "bracket", "Frc": "quote"}
DASH_TAGS = {"Fg"}


@dataclass(frozen=True)
class Rule:
    name: str
    priority: int
    trigger: tuple[str, str]
    action: str
    guard: str | None = None
    enabled: bool = True

    def __post_init__(self):
        if not self.name:
            raise ValidationError("rule name must be non-empty")
        if self.priority < 0:
            raise ValidationError(f"rule {self.name}: priority must be >= 0")
        kind, value = self.trigger
        if kind not in TRIGGER_KINDS:
            raise ValidationError(f"rule {self.name}: unknown trigger kind {kind!r}")
        if kind == "punct" and value not in ("open", "close"):
            raise ValidationError(
                f"rule {self.name}: punct trigger must be open or close, got {value!r}"
            )
        if not value:
            raise ValidationError(f"rule {self.name}: empty trigger value")
        if self.action not in ACTIONS:
            raise ValidationError(f"rule {self.name}: unknown action {self.action!r}")
        if self.guard is not None and self.guard not in guards.GUARDS:
            raise ConfigError(
                f"rule {self.name}: unknown guard {self.guard!r}; known guards: "
                f"{', '.join(guards.known_guards())}"
            )

    @property
    def is_marker_rule(self) -> bool:
        kind, value = self.trigger
        return kind == "cat" and value in MARKER_LABELS

    @property
    def trigger_text(self) -> str:
        return f"{self.trigger[0]}:{self.trigger[1]}"


@dataclass(frozen=True)
class RuleSet:
    rules: tuple[Rule, ...]
    language: str = "ca"

    def __post_init__(self):
        object.__setattr__(self, "rules", tuple(self.rules))
        names = set()
        for r in self.rules:
            if r.name in names:
                raise ValidationError(f"duplicate rule name {r.name!r}")
            names.add(r.name)
        marker_priorities = [r.priority for r in self.rules if r.is_marker_rule]
        other_priorities = [r.priority for r in self.rules if not r.is_marker_rule]
        if marker_priorities and other_priorities:
            if max(marker_priorities) >= min(other_priorities):
                raise ValidationError(
                    "marker rules must have strictly lower priority numbers "
                    f"than non-marker rules (marker max {max(marker_priorities)}, "
                    f"other min {min(other_priorities)})"
                )

    def __len__(self) -> int:
        return len(self.rules)

    def enabled_rules(self) -> tuple[Rule, ...]:
        return tuple(r for r in self.rules if r.enabled)


def _parse_rule_line(line: str, lineno: int) -> Rule:
    tokens = line.split()
    if not tokens or tokens[0] != "rule":
        raise ParseError("rule line must start with 'rule'", line=lineno)
    fields: dict[str, str] = {}
    if len(tokens) < 2:
        raise ParseError("rule line is missing its name", line=lineno)
    name = tokens[1]
    rest = tokens[2:]
    if len(rest) % 2 != 0:
        raise ParseError("rule line has a dangling keyword", line=lineno)
    for key, value in zip(rest[0::2], rest[1::2]):
        if key in fields:
            raise ParseError(f"duplicate keyword {key!r}", line=lineno)
        fields[key] = value
    for required in ("priority", "trigger", "action"):
        if required not in fields:
            raise ParseError(f"rule {name!r} is missing {required!r}", line=lineno)
    unknown = set(fields) - {"priority", "trigger", "action", "guard"}
    if unknown:
        raise ParseError(
            f"unknown keyword(s) {', '.join(sorted(unknown))}", line=lineno
        )
    try:
        priority = int(fields["priority"])
    except ValueError:
        raise ParseError(
            f"priority must be an integer, got {fields['priority']!r}", line=lineno
        ) from None
    trigger_text = fields["trigger"]
    kind, sep, value = trigger_text.partition(":")
    if not sep or kind not in TRIGGER_KINDS or not value:
        raise ParseError(f"malformed trigger {trigger_text!r}", line=lineno)
    try:
        return Rule(
            name=name,
            priority=priority,
            trigger=(kind, value),
            action=fields["action"],
            guard=fields.get("guard"),
        )
    except (ValidationError, ConfigError) as exc:
        raise ParseError(str(exc), line=lineno) from None


def parse_rules(text: str, language: str = "ca") -> RuleSet:
    """Parse a rule file; errors carry line numbers."""
    rules: list[Rule] = []
    for lineno, raw in enumerate(text.split("\n"), start=1):
        line = raw.rstrip("\r").strip()
        if not line or line.startswith("#"):
            continue
        rules.append(_parse_rule_line(line, lineno))
    try:
        return RuleSet(rules=tuple(rules), language=language)
    except ValidationError as exc:
        raise ParseError(str(exc)) from None


def load_rules(path, language: str = "ca") -> RuleSet:
    with open(path, encoding="utf-8") as fh:
        return parse_rules(fh.read(), language=language)


def serialize_rules(ruleset: RuleSet) -> str:
    """Render a rule set back to the rule file format.

    Disabled rules (a porting outcome) are emitted as comments so the
    file stays loadable while keeping them visible.
    """
    lines = []
    for r in ruleset.rules:
        body = f"rule {r.name} priority {r.priority} trigger {r.trigger_text} action {r.action}"
        if r.guard:
            body += f" guard {r.guard}"
        lines.append(body if r.enabled else f"# disabled: {body}")
    return "\n".join(lines) + ("\n" if lines else "")
