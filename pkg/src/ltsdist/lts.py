"""Labeled transition systems: data model, text format, validation.

The text format is UTF-8 and line oriented; `#` starts a comment.

    states: s t u        # cumulative, one or more lines
    init: s              # exactly one
    trans: s a t         # one transition per line; duplicates collapse

A label token that reads as an exact rational (integer, decimal, or
p/q) is a numeric label; anything else is symbolic.  One system must
use a single variant throughout, because numeric labels take part in
arithmetic for the maximum-lead distance.

Label distance tables use lines `d <label> <label> <value>` plus an
optional header `default: eq0-else1 | eq0-elseinf` choosing how pairs
missing from the table resolve (the default is eq0-else1).
"""

from collections import namedtuple
from fractions import Fraction

from .values import INF, Value, fmt_value, is_inf, looks_rational, parse_value

Label = str | Fraction


class ParseError(ValueError):
    """Raised for malformed or invalid input documents."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = " (line %d)" % line if column is None else " (line %d, column %d)" % (line, column)
        super().__init__(message + where)


Diagnostic = namedtuple("Diagnostic", "code subject message")


def parse_label(token: str) -> Label:
    return Fraction(token) if looks_rational(token) else token


def label_key(a: Label):
    # Total order usable even when symbolic and numeric labels are mixed.
    return (0, a, "") if isinstance(a, Fraction) else (1, Fraction(0), a)


def fmt_label(a: Label) -> str:
    return str(a)


class Lts:
    """Finite labeled transition system with a designated initial state.

    `transitions` is a set of (source, label, target) triples.  Instances
    are immutable; well-formedness (initial state declared, endpoints
    declared, non-blocking, single label variant) is checked by
    `validate`, which `parse_lts` applies automatically.
    """

    def __init__(self, states, initial, transitions):
        self.states = frozenset(states)
        self.initial = initial
        self.transitions = frozenset((s, a, t) for (s, a, t) in transitions)
        self._out = {}
        for s, a, t in sorted(self.transitions, key=lambda tr: (tr[0], label_key(tr[1]), tr[2])):
            self._out.setdefault(s, []).append((a, t))
        for s in self._out:
            self._out[s] = tuple(self._out[s])

    def out(self, state):
        """Outgoing (label, target) pairs of a state, deterministically ordered."""
        return self._out.get(state, ())

    @property
    def labels(self):
        return frozenset(a for (_, a, _) in self.transitions)

    @property
    def label_kind(self):
        """'numeric', 'symbolic', or 'mixed' ('symbolic' when there are no labels)."""
        kinds = {isinstance(a, Fraction) for a in self.labels}
        if len(kinds) == 2:
            return "mixed"
        return "numeric" if kinds == {True} else "symbolic"

    def __eq__(self, other):
        if not isinstance(other, Lts):
            return NotImplemented
        return (self.states, self.initial, self.transitions) == (other.states, other.initial, other.transitions)

    def __hash__(self):
        return hash((self.states, self.initial, self.transitions))

    def __repr__(self):
        return "Lts(%d states, %d transitions, init=%r)" % (len(self.states), len(self.transitions), self.initial)


def validate(lts: Lts) -> list:
    """All invariant violations of an Lts, one Diagnostic per finding.

    An empty list means the system is well formed.
    """
    diags = []
    if lts.initial not in lts.states:
        diags.append(Diagnostic("bad-initial", lts.initial, "initial state %r is not declared" % lts.initial))
    for s, a, t in sorted(lts.transitions, key=lambda tr: (tr[0], label_key(tr[1]), tr[2])):
        for endpoint in (s, t):
            if endpoint not in lts.states:
                diags.append(Diagnostic("undeclared-state", endpoint,
                                        "transition endpoint %r is not declared" % endpoint))
    for s in sorted(lts.states):
        if not lts.out(s):
            diags.append(Diagnostic("blocking", s, "state %r has no outgoing transition" % s))
    if lts.label_kind == "mixed":
        diags.append(Diagnostic("mixed-labels", None, "symbolic and numeric labels are mixed"))
    return diags


def _tokens(line):
    return line.split()


def parse_lts(text: str) -> Lts:
    """Parse the line-oriented LTS format; raises ParseError on any defect."""
    states = set()
    initial = None
    transitions = set()
    first_symbolic = first_numeric = None  # (line, token)

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ":" not in line:
            raise ParseError("expected 'states:', 'init:' or 'trans:' directive", lineno, 1)
        head, _, rest = line.partition(":")
        head = head.strip()
        toks = _tokens(rest)
        if head == "states":
            if not toks:
                raise ParseError("empty states declaration", lineno)
            states.update(toks)
        elif head == "init":
            if len(toks) != 1:
                raise ParseError("init takes exactly one state", lineno)
            if initial is not None:
                raise ParseError("duplicate init declaration", lineno)
            initial = toks[0]
        elif head == "trans":
            if len(toks) != 3:
                raise ParseError("trans takes source, label, target", lineno)
            src, labtok, dst = toks
            for endpoint in (src, dst):
                if endpoint not in states:
                    raise ParseError("undeclared state %r" % endpoint, lineno)
            label = parse_label(labtok)
            if isinstance(label, Fraction):
                first_numeric = first_numeric or (lineno, labtok)
            else:
                first_symbolic = first_symbolic or (lineno, labtok)
            if first_numeric and first_symbolic:
                later = max(first_numeric, first_symbolic)
                raise ParseError("mixed symbolic and numeric labels (%r)" % later[1], later[0])
            transitions.add((src, label, dst))
        else:
            raise ParseError("unknown directive %r" % head, lineno, 1)

    if initial is None:
        raise ParseError("missing init declaration")
    lts = Lts(states, initial, transitions)
    for diag in validate(lts):
        raise ParseError(diag.message)
    return lts


def serialize_lts(lts: Lts) -> str:
    """Canonical text for an Lts; parse_lts(serialize_lts(l)) == l."""
    lines = ["states: " + " ".join(sorted(lts.states)), "init: %s" % lts.initial]
    for s, a, t in sorted(lts.transitions, key=lambda tr: (tr[0], label_key(tr[1]), tr[2])):
        lines.append("trans: %s %s %s" % (s, fmt_label(a), t))
    return "\n".join(lines) + "\n"


DEFAULT_ONE = "eq0-else1"
DEFAULT_INF = "eq0-elseinf"


class LabelDistance:
    """Total directed distance on labels, backed by an explicit table.

    Pairs missing from the table resolve through the default rule: 0 when
    the labels are equal, otherwise 1 (eq0-else1) or infinity
    (eq0-elseinf).  The table is directional; nothing forces symmetry.
    Explicit entries must be non-negative and zero on the diagonal.
    """

    def __init__(self, table=None, default_rule=DEFAULT_ONE):
        if default_rule not in (DEFAULT_ONE, DEFAULT_INF):
            raise ValueError("unknown default rule %r" % default_rule)
        self.default_rule = default_rule
        self.table = {}
        for (a, b), v in (table or {}).items():
            if not is_inf(v):
                v = Fraction(v)
                if v < 0:
                    raise ValueError("negative label distance d(%s, %s) = %s" % (a, b, v))
            if a == b and v != 0:
                raise ValueError("d(%s, %s) must be 0, got %s" % (a, b, fmt_value(v)))
            self.table[(a, b)] = v

    def __call__(self, a: Label, b: Label) -> Value:
        hit = self.table.get((a, b))
        if hit is not None:
            return hit
        if a == b:
            return Fraction(0)
        return Fraction(1) if self.default_rule == DEFAULT_ONE else INF

    @property
    def has_infinite_entries(self):
        return self.default_rule == DEFAULT_INF or any(is_inf(v) for v in self.table.values())

    def __eq__(self, other):
        if not isinstance(other, LabelDistance):
            return NotImplemented
        return (self.table, self.default_rule) == (other.table, other.default_rule)

    def __repr__(self):
        return "LabelDistance(%d entries, default=%s)" % (len(self.table), self.default_rule)


def parse_label_distance(text: str, alphabet) -> LabelDistance:
    """Parse a label distance table over the given alphabet.

    The alphabet should be the union of the label sets of both systems
    being compared; entries mentioning other labels are rejected.
    """
    alphabet = frozenset(alphabet)
    default_rule = None
    table = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        toks = _tokens(line)
        if toks[0] == "default:":
            if len(toks) != 2 or toks[1] not in (DEFAULT_ONE, DEFAULT_INF):
                raise ParseError("default takes %s or %s" % (DEFAULT_ONE, DEFAULT_INF), lineno)
            if default_rule is not None:
                raise ParseError("duplicate default declaration", lineno)
            default_rule = toks[1]
        elif toks[0] == "d":
            if len(toks) != 4:
                raise ParseError("d takes two labels and a value", lineno)
            a, b = parse_label(toks[1]), parse_label(toks[2])
            for lab, tok in ((a, toks[1]), (b, toks[2])):
                if lab not in alphabet:
                    raise ParseError("label %r is not in the alphabet" % tok, lineno)
            try:
                v = parse_value(toks[3])
            except ValueError:
                raise ParseError("bad distance value %r" % toks[3], lineno) from None
            if not is_inf(v) and v < 0:
                raise ParseError("negative distance %r" % toks[3], lineno)
            if a == b and v != 0:
                raise ParseError("d(%s, %s) must be 0" % (toks[1], toks[2]), lineno)
            table[(a, b)] = v
        else:
            raise ParseError("expected 'd' entry or 'default:' header", lineno, 1)
    return LabelDistance(table, default_rule or DEFAULT_ONE)
