"""Stable textual rendering of S2 graphs for inspection and goldens."""

from __future__ import annotations

from . import s2
from .s2 import S2Element

# canonical emission order for children keys
KEY_ORDER = [
    s2.CMD_LIST, s2.ACTION, s2.TRIGGER, s2.RESPONSE, s2.TRIGGER_RESPONSE,
    s2.PREPOSITION, s2.SEQUENCE_SIMULTANEOUS, s2.SEQUENCE_THEN,
    s2.DIRECT_OBJECT, s2.INDIRECT_OBJECT, s2.OBJECT, s2.PROPERTY, s2.TIME,
    s2.AGENT, s2.COREFERENCE,
    s2.SPECIFIC_OR_UNSPECIFIC, s2.COUNT, s2.PLURAL,
]

VALUE_ORDER = [s2.V_THING_INSTANCE, s2.V_THING_TYPE, s2.V_NUMERIC,
               s2.V_FLAG, s2.V_TEXT]


def format_s2(root: S2Element) -> str:
    return "\n".join(_format(root, 0))


def _ordered_keys(el: S2Element) -> list[str]:
    known = [k for k in KEY_ORDER if k in el.children]
    extra = sorted(k for k in el.children if k not in KEY_ORDER)
    return known + extra


def _scalar(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return f"{v:.6f}"
    return str(v)


def _format(el: S2Element, indent: int) -> list[str]:
    pad = " " * indent
    inner = " " * (indent + 4)
    lines = [pad + "{"]
    header = (f"label=[{el.label}], tag=[{el.tag}], type=[{el.type_display}], "
              f"kind=[{el.kind}], key=[{el.key}], idx=[{el.idx()}]")
    shown = sorted(a for a in el.annotations
                   if a in (s2.MUST_FILL_IN_AGENT, s2.UNRESOLVED_PRONOUN))
    if shown:
        header += f", @=[{','.join(shown)}]"
    header += f" id=[{el.elem_id}]"
    lines.append(inner + header)
    if el.refers_to is not None:
        lines.append(inner + f"<coreference substitution> id=[{el.refers_to.elem_id}]")
    if el.value:
        lines.append(inner + "value={")
        for kind in VALUE_ORDER:
            if kind in el.value:
                body = ",".join(_scalar(v) for v in el.value[kind])
                lines.append(" " * (indent + 8) + f"{kind}=[{body}]")
        lines.append(inner + "}")
    for key in _ordered_keys(el):
        lines.append(inner + f"[{key}] = [")
        for child in el.children[key]:
            lines.extend(_format(child, indent + 4))
            lines.append(inner + ",")
        lines.append(inner + "]")
    lines.append(pad + "}")
    return lines
