from .binder import (COREFERENCE, DEIXIS, INSTANCES, LABEL_MATCH, RESERVED,
                     TYPE, UNSPECIFIC, USER_LINK, BindingSlot, bind, relink,
                     unlink)
from .labeling import apply_adjective, label_by_deixis, label_by_link

__all__ = [
    "BindingSlot", "COREFERENCE", "DEIXIS", "INSTANCES", "LABEL_MATCH",
    "RESERVED", "TYPE", "UNSPECIFIC", "USER_LINK", "apply_adjective", "bind",
    "label_by_deixis", "label_by_link", "relink", "unlink",
]
