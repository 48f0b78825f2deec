from .lexicon import Lexicon, default_lexicon, load_lexicon
from .parse_tree import ParseNode, Relation, dump_tree
from .parser import parse_sentence
from .suggest import suggest_verbs
from .tokenizer import split_sentences, tokenize
from .tokens import Category, Token, VerbForm

__all__ = [
    "Category", "Lexicon", "ParseNode", "Relation", "Token", "VerbForm",
    "default_lexicon", "dump_tree", "load_lexicon", "parse_sentence",
    "split_sentences", "suggest_verbs", "tokenize",
]
