"""Translate parse trees into the semantic-role graph.

Each sentence becomes one command entry under the CMD_LIST root. Verbs
become ACTION elements; conditionals become TRIGGER_RESPONSE pairs with
the when/as/after marker stored as a PROPERTY of the TRIGGER; loop
prefixes become PROPERTY modifiers or COUNT children; noun phrases
always carry SPECIFIC_OR_UNSPECIFIC, COUNT, and PLURAL leaves.
"""

from __future__ import annotations

from ..errors import MalformedParse
from ..grammar.lexicon import Lexicon, default_lexicon
from ..grammar.parse_tree import ParseNode, Relation
from ..grammar.tokens import Category
from . import s2
from .coreference import resolve_coreference
from .s2 import S2Element
from .validator import validate

_FOREVER_WORDS = {"forever", "endlessly", "over and over"}

_RESERVED = {"i": s2.RESERVED_SELF, "view": s2.RESERVED_VIEW,
             "thing": s2.RESERVED_THING}


def build_s2(parse: ParseNode, sentence_history: list[S2Element] | None = None,
             lexicon: Lexicon | None = None) -> S2Element:
    """Build the S2 graph for one parsed sentence (CMD_LIST root)."""
    return build_command([parse], sentence_history, lexicon)


def build_command(parses: list[ParseNode],
                  sentence_history: list[S2Element] | None = None,
                  lexicon: Lexicon | None = None) -> S2Element:
    """Build one CMD_LIST root holding an entry per parsed sentence."""
    builder = _Builder(lexicon or default_lexicon())
    root = S2Element(node_type=s2.CMD_LIST, key="")
    for parse in parses:
        root.add(s2.CMD_LIST, builder.command_entry(parse))
    resolve_coreference(root, sentence_history or [])
    validate(root)
    return root


class _Builder:
    def __init__(self, lexicon: Lexicon):
        self.lex = lexicon

    def command_entry(self, parse: ParseNode) -> S2Element:
        if parse.relation != Relation.ROOT:
            raise MalformedParse("expected a ROOT parse node")
        entry = S2Element(node_type=s2.CMD_LIST, type_display="CMD",
                          key=s2.CMD_LIST)
        condition = parse.child(Relation.CONDITION)
        if condition is not None:
            tr = S2Element(node_type=s2.TRIGGER_RESPONSE,
                           type_display=s2.TRIGGER_RESPONSE,
                           key=s2.TRIGGER_RESPONSE)
            trigger = self.action(condition, s2.TRIGGER)
            marker = condition.child(Relation.ADVMOD)
            if marker is not None and marker.token.category == Category.WHEN_MARKER:
                trigger.add(s2.PROPERTY, self.property_node(
                    "marker", "ADV", marker.token.lemma))
            tr.add(s2.TRIGGER, trigger)
            tr.add(s2.RESPONSE, self.action(parse, s2.RESPONSE,
                                            skip_condition=True))
            entry.add(s2.TRIGGER_RESPONSE, tr)
        else:
            entry.add(s2.ACTION, self.action(parse, s2.ACTION))
        return entry

    # -- actions -----------------------------------------------------------

    def action(self, node: ParseNode, key: str,
               skip_condition: bool = False) -> S2Element:
        el = S2Element(node_type=key if key in (s2.TRIGGER, s2.RESPONSE)
                       else s2.ACTION,
                       label=node.token.lemma, tag="VERB",
                       type_display=s2.ACTION, kind=s2.ACTION, key=key,
                       token=node.token)
        if key in (s2.SEQUENCE_THEN, s2.SEQUENCE_SIMULTANEOUS):
            el.node_type = key
            el.type_display = s2.ACTION
            el.annotations.add(s2.MUST_FILL_IN_AGENT)

        pending_neg = False
        for child in node.children:
            rel = child.relation
            if rel == Relation.CONDITION and skip_condition:
                continue
            if rel == Relation.SUBJECT:
                el.add(s2.AGENT, self.noun(child, s2.AGENT))
            elif rel == Relation.IOBJ:
                el.add(s2.INDIRECT_OBJECT, self.noun(child, s2.INDIRECT_OBJECT))
            elif rel == Relation.DOBJ:
                if child.token.category == Category.NUM:
                    el.add(s2.DIRECT_OBJECT, self.numeric_literal(child))
                elif child.token.category == Category.VERB:
                    el.add(s2.PROPERTY, self.property_node(
                        "verb", "VERB", child.token.lemma))
                else:
                    el.add(s2.DIRECT_OBJECT, self.noun(child, s2.DIRECT_OBJECT))
            elif rel == Relation.PREP:
                el.add(s2.PREPOSITION, self.preposition(child))
            elif rel == Relation.TIME:
                el.add(s2.TIME, self.time_node(child))
            elif rel == Relation.ADVMOD:
                if child.token.category == Category.WHEN_MARKER:
                    continue
                text = child.token.lemma
                if "loop_forever" in child.flags or text in _FOREVER_WORDS:
                    text = "forever"
                el.add(s2.PROPERTY, self.property_node("modifier", "ADV", text))
            elif rel == Relation.AMOD:
                prop = self.trait(child, negated=pending_neg)
                pending_neg = False
                el.add(s2.PROPERTY, prop)
            elif rel == Relation.NEG:
                pending_neg = True
            elif rel == Relation.NUMMOD and "loop_count" in child.flags:
                count = S2Element(node_type=s2.COUNT, type_display="VALUE",
                                  key=s2.COUNT, token=child.token,
                                  value={s2.V_NUMERIC: [float(child.token.number_value)]})
                el.add(s2.COUNT, count)
            elif rel == Relation.CONJ:
                el.add(s2.SEQUENCE_SIMULTANEOUS,
                       self.action(child, s2.SEQUENCE_SIMULTANEOUS))
            elif rel == Relation.SEQ:
                el.add(s2.SEQUENCE_THEN, self.action(child, s2.SEQUENCE_THEN))
            elif rel == Relation.CONDITION:
                raise MalformedParse("nested conditionals are unsupported")
            else:
                raise MalformedParse(f"unsupported relation {rel} under a verb")
        return el

    # -- noun phrases --------------------------------------------------------

    def noun(self, node: ParseNode, role: str) -> S2Element:
        tok = node.token
        det = node.child(Relation.DET)
        det_tok = det.token if det is not None else None

        plural = tok.plural
        specific = True
        det_label = det_tok.lemma if det_tok is not None else ""
        count = 1.0
        deictic = tok.deictic or (det_tok is not None and det_tok.deictic)
        type_ref = False

        nummods = [c for c in node.children_of(Relation.NUMMOD)]
        explicit_count = None
        numeric_filter = None
        for nm in nummods:
            if tok.lemma == "number" or tok.category == Category.NUM:
                numeric_filter = nm.token.number_value
            else:
                explicit_count = nm.token.number_value

        if det_tok is None and not tok.deictic and tok.category != Category.PRON:
            if "vocative" in node.flags:
                det_label, specific = "the", True
            elif explicit_count is None:
                specific = False
                type_ref = True
        elif det_tok is not None:
            if det_tok.lemma in ("a", "an"):
                specific = False
            elif det_tok.lemma == "all":
                count = s2.ALL_COUNT
                plural = True
        if explicit_count is not None:
            count = float(explicit_count)
            plural = count > 1

        el = S2Element(
            node_type=role, label=tok.lemma, tag="NOUN",
            kind=s2.V_THING_TYPE if type_ref else s2.V_THING_INSTANCE,
            key=role, token=tok,
        )
        if type_ref:
            el.value = {s2.V_THING_TYPE: [tok.lemma]}
        else:
            el.value = {s2.V_THING_INSTANCE: [0]}
        if numeric_filter is not None:
            el.value[s2.V_NUMERIC] = [float(numeric_filter)]

        if tok.category == Category.PRON:
            if tok.lemma in _RESERVED:
                el.annotations.add(_RESERVED[tok.lemma])
            else:
                el.annotations.add(s2.PRONOUN)
            plural = tok.plural
        if tok.lemma in _RESERVED and tok.category != Category.PRON:
            el.annotations.add(_RESERVED[tok.lemma])
        if deictic:
            el.annotations.add(s2.DEICTIC)
            det_label = det_label or tok.lemma
            plural = plural or tok.plural

        sou = S2Element(
            node_type=s2.SPECIFIC_OR_UNSPECIFIC, label=det_label,
            tag="DET" if det_label else "", type_display="VALUE",
            kind="SPECIFIC" if specific else "UNSPECIFIC",
            key=s2.SPECIFIC_OR_UNSPECIFIC,
            value={s2.V_FLAG: [specific]},
            token=det_tok,
        )
        el.add(s2.SPECIFIC_OR_UNSPECIFIC, sou)
        el.add(s2.COUNT, S2Element(
            node_type=s2.COUNT, type_display="VALUE", key=s2.COUNT,
            value={s2.V_NUMERIC: [count]}))
        el.add(s2.PLURAL, S2Element(
            node_type=s2.PLURAL, type_display="VALUE", key=s2.PLURAL,
            value={s2.V_FLAG: [bool(plural)]}))

        for amod in node.children_of(Relation.AMOD):
            el.add(s2.PROPERTY, self.trait(amod))
        constraint = node.child(Relation.PREP)
        if constraint is not None:
            pobj = constraint.child(Relation.POBJ)
            if pobj is None:
                raise MalformedParse("hierarchy constraint without object")
            el.add(s2.PROPERTY, S2Element(
                node_type=s2.PROPERTY, label=constraint.token.lemma,
                tag="PREP", type_display=s2.PROPERTY, kind="HIERARCHY",
                key=s2.PROPERTY,
                value={s2.V_THING_TYPE: [pobj.token.lemma]},
                token=constraint.token))
        return el

    def numeric_literal(self, node: ParseNode) -> S2Element:
        return S2Element(
            node_type=s2.DIRECT_OBJECT, label=node.token.text, tag="NUM",
            kind="VALUE", key=s2.DIRECT_OBJECT,
            value={s2.V_NUMERIC: [float(node.token.number_value)]},
            token=node.token)

    def preposition(self, node: ParseNode) -> S2Element:
        el = S2Element(node_type=s2.PREPOSITION, label=node.token.lemma,
                       type_display=node.token.lemma, key=s2.PREPOSITION,
                       token=node.token)
        pobj = node.child(Relation.POBJ)
        if pobj is None:
            raise MalformedParse("preposition without object")
        if pobj.token.category == Category.NUM:
            el.add(s2.OBJECT, self.numeric_literal(pobj))
        else:
            el.add(s2.OBJECT, self.noun(pobj, s2.OBJECT))
        return el

    def time_node(self, node: ParseNode) -> S2Element:
        unit_seconds = self.lex.time_units.get(node.token.lemma, 1.0)
        el = S2Element(node_type=s2.TIME, label=node.token.lemma, tag="TIME",
                       key=s2.TIME, token=node.token)
        if "interval" in node.flags:
            el.type_display = "INTERVAL"
            amod = node.child(Relation.AMOD)
            nummod = node.child(Relation.NUMMOD)
            if amod is not None:
                el.add(s2.PROPERTY, self.property_node(
                    "trait", "ADJ", amod.token.lemma))
            elif nummod is not None:
                el.value = {s2.V_NUMERIC: [nummod.token.number_value * unit_seconds]}
        else:
            el.type_display = "DURATION"
            nummod = node.child(Relation.NUMMOD)
            seconds = (nummod.token.number_value if nummod else 1.0) * unit_seconds
            el.value = {s2.V_NUMERIC: [seconds]}
        return el

    def trait(self, amod: ParseNode, negated: bool = False) -> S2Element:
        neg_child = amod.child(Relation.NEG)
        prop = self.property_node("trait", "ADJ", amod.token.lemma)
        prop.token = amod.token
        if negated or neg_child is not None:
            prop.value[s2.V_FLAG] = [False]
        for adv in amod.children_of(Relation.ADVMOD):
            prop.add(s2.PROPERTY, self.property_node(
                "modifier", "ADV", adv.token.lemma))
        return prop

    @staticmethod
    def property_node(label: str, tag: str, text: str) -> S2Element:
        return S2Element(node_type=s2.PROPERTY, label=label, tag=tag,
                         type_display=s2.PROPERTY, key=s2.PROPERTY,
                         value={s2.V_TEXT: [text]})
