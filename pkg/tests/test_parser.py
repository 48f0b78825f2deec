import json

import pytest

from storyworld.errors import UnsupportedGrammar
from storyworld.grammar import (Relation, default_lexicon, dump_tree,
                                parse_sentence, suggest_verbs, tokenize)
from storyworld.grammar.lexicon import load_lexicon


def parse(text):
    return parse_sentence(tokenize(text))


def test_simple_svo():
    tree = parse("the dog jumps")
    assert tree.relation == Relation.ROOT
    assert tree.token.lemma == "jump"
    subj = tree.child(Relation.SUBJECT)
    assert subj.token.lemma == "dog"
    assert subj.child(Relation.DET).token.lemma == "the"


def test_tense_forms_identical_trees():
    reference = dump_tree(parse("the dog jumps"))
    for text in ["the dog jumped", "the dog will jump", "the dog is jumping"]:
        assert dump_tree(parse(text)) == reference, text


def test_vocative_imperative():
    for text in ["dog, jump", "dog jump"]:
        tree = parse(text)
        assert tree.token.lemma == "jump"
        subj = tree.child(Relation.SUBJECT)
        assert subj.token.lemma == "dog"
        assert "vocative" in subj.flags


def test_subjectless_imperative_rejected():
    with pytest.raises(UnsupportedGrammar):
        parse("Make a star")


def test_passive_rejected():
    with pytest.raises(UnsupportedGrammar):
        parse("the ball is thrown")


def test_dangling_preposition_rejected():
    with pytest.raises(UnsupportedGrammar):
        parse("the dog jumps on")


def test_conditional_shape():
    tree = parse("When boys collide with trees, boys move to houses")
    assert tree.token.lemma == "move"
    cond = tree.child(Relation.CONDITION)
    assert cond is not None and cond.token.lemma == "collide"
    assert cond.child(Relation.ADVMOD).token.lemma == "when"


def test_conditional_without_comma():
    tree = parse("when balls collide with paddles paddles reflect balls")
    assert tree.token.lemma == "reflect"
    assert tree.child(Relation.CONDITION).token.lemma == "collide"


def test_sequence_and_conjunction():
    tree = parse("The dog jumps and the cats jump")
    conj = tree.child(Relation.CONJ)
    assert conj is not None and conj.token.lemma == "jump"
    tree = parse("the square moves up for 11.18 seconds and then jumps")
    seq = tree.child(Relation.SEQ)
    assert seq is not None and seq.token.lemma == "jump"
    assert tree.child(Relation.TIME) is not None


def test_loop_prefixes():
    tree = parse("10 times the dog jumps excitedly")
    num = tree.child(Relation.NUMMOD)
    assert "loop_count" in num.flags and num.token.number_value == 10
    tree = parse("forever the frog hops to a lily")
    adv = tree.child(Relation.ADVMOD)
    assert "loop_forever" in adv.flags


def test_interval_prefix():
    tree = parse("Every few seconds the frog hops to a lily.")
    tnode = tree.child(Relation.TIME)
    assert "interval" in tnode.flags
    assert tnode.child(Relation.AMOD).token.lemma == "few"


def test_stop_forms():
    tree = parse("The square stops moving")
    assert tree.token.lemma == "stop"
    assert tree.child(Relation.DOBJ).token.lemma == "move"
    tree = parse("the squirrel stops")
    assert tree.token.lemma == "stop"
    assert tree.child(Relation.DOBJ) is None


def test_subject_hierarchy_constraint():
    tree = parse("the blades on the windmill rotate")
    subj = tree.child(Relation.SUBJECT)
    prep = subj.child(Relation.PREP)
    assert prep.token.lemma == "on"
    assert prep.child(Relation.POBJ).token.lemma == "windmill"


def test_determinism():
    text = "Forever the person throws the ball into the pond and then the dog gives the ball to her."
    assert dump_tree(parse(text)) == dump_tree(parse(text))


def test_suggest_known_verb_rejected():
    with pytest.raises(ValueError):
        suggest_verbs("move")


def test_suggest_unknown_with_synonyms(tmp_path):
    # build a lexicon without "hop" so the substitution flow applies
    import storyworld.grammar.lexicon as lexmod
    raw = json.loads((lexmod._DATA_PATH).read_text())
    del raw["verbs"]["hop"]
    path = tmp_path / "lex.json"
    path.write_text(json.dumps(raw))
    lex = load_lexicon(path)
    assert suggest_verbs("hop", lex) == ["jump", "move"]


def test_suggest_no_synonyms():
    assert suggest_verbs("glorp") == []


def test_suggest_caps_at_five():
    lex = default_lexicon()
    for lemma, entries in lex.verb_synonyms.items():
        if not lex.is_verb(lemma):
            assert len(suggest_verbs(lemma, lex)) <= 5
