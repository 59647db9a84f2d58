"""Randomized invariants over contexts, feature sets, and whole streams."""

from hypothesis import given, settings
from hypothesis import strategies as st

from povtrack import (
    Clause,
    Context,
    Engine,
    FeatureSet,
    Interpretation,
    ParagraphBreak,
    Pse,
    SceneBreak,
    Sentence,
    SoaType,
    StateOfAffairs,
    TextSituation,
    VerbFeatures,
    new_context,
    new_context_after_break,
)

NAMES = ("Ada", "Bo", "Cyr", "Dot")
CATEGORIES = ("question", "sentence-fragment", "progressive", "habitual",
              "eval-adjective", "evidential-evidence", "comparative-like",
              "past-perfective", "conjunct", "degree-intensifier")

character_sets = st.frozensets(st.sampled_from(NAMES), max_size=3)
situations = st.sampled_from(list(TextSituation))


@st.composite
def contexts(draw):
    last_sc = draw(character_sets)
    previous = draw(character_sets) | last_sc
    return Context(last_sc, draw(character_sets), previous,
                   draw(situations))


interpretations = st.one_of(
    st.builds(Interpretation.subjective_of, character_sets),
    st.builds(Interpretation.objective_of, character_sets),
)

verb_features = st.builds(
    VerbFeatures,
    simple_past=st.booleans(), negated=st.booleans(),
    habitual=st.booleans(), modal=st.booleans(),
    past_perfective=st.booleans(), progressive=st.booleans())


@st.composite
def feature_sets(draw):
    n_extra = draw(st.integers(0, 2))
    soas = []
    clauses = []
    for i in range(n_extra + 1):
        soas.append(StateOfAffairs(
            f"a{i}", draw(st.sampled_from(list(SoaType))),
            draw(character_sets)))
        under = frozenset() if i == 0 else frozenset(
            {f"c{draw(st.integers(0, i - 1))}"})
        clauses.append(Clause(f"c{i}", f"a{i}", under, draw(verb_features)))
    head = None
    if draw(st.booleans()):
        soas.append(StateOfAffairs("hn", SoaType.PRIVATE_STATE,
                                   draw(character_sets)))
        head = "hn"
    pses = []
    for j in range(draw(st.integers(0, 3))):
        under = draw(st.sets(st.sampled_from([c.id for c in clauses]),
                             max_size=2))
        pses.append(Pse(f"p{j}", draw(st.sampled_from(CATEGORIES)),
                        frozenset(under)))
    parenthetical = None
    if draw(st.booleans()):
        parenthetical = draw(character_sets.filter(bool))
    quoted = (draw(st.booleans())
              and soas[0].type is SoaType.ACTION and head is None)
    return FeatureSet(tuple(clauses), tuple(soas), tuple(pses),
                      parenthetical, head, quoted)


@st.composite
def streams(draw):
    items = []
    for i in range(draw(st.integers(0, 12))):
        kind = draw(st.integers(0, 5))
        if kind == 0:
            items.append(ParagraphBreak())
        elif kind == 1:
            items.append(SceneBreak())
        else:
            items.append(Sentence(f"s{i}", draw(feature_sets())))
    return items


@given(interpretations, contexts())
def test_sentence_transition_invariants(interp, context):
    out = new_context(interp, context)
    assert context.previous_scs <= out.previous_scs
    if interp.subjective:
        assert out.situation is TextSituation.CONTINUING_SUBJECTIVE
        assert out.last_sc == interp.characters
    else:
        assert out.last_sc == context.last_sc
        assert out.previous_scs == context.previous_scs
    # the context well-formedness condition is preserved
    if out.last_sc:
        assert out.last_sc <= out.previous_scs


@given(contexts())
def test_break_transition_invariants(context):
    scene = new_context_after_break(SceneBreak(), context)
    assert scene.situation is TextSituation.PRESUBJECTIVE_NONACTIVE
    para = new_context_after_break(ParagraphBreak(), context)
    for out in (scene, para):
        assert out.last_sc == context.last_sc
        assert out.previous_scs == context.previous_scs
        assert out.last_active_character == context.last_active_character


@given(feature_sets(), contexts())
def test_interpretation_is_deterministic(fs, context):
    engine = Engine()
    assert engine.interpret(fs, context) == engine.interpret(fs, context)


@given(feature_sets(), contexts())
def test_identified_character_comes_from_known_sources(fs, context):
    engine = Engine()
    interp, detail = engine.interpret(fs, context)
    if not interp.subjective:
        return
    allowed = (detail.chosen.who | context.last_sc
               | context.last_active_character)
    if fs.parenthetical is not None:
        allowed |= fs.parenthetical
    assert interp.characters <= allowed


@given(feature_sets(), contexts())
def test_active_characters_were_subjective_before(fs, context):
    engine = Engine()
    interp, detail = engine.interpret(fs, context)
    if interp.subjective or not interp.characters:
        return
    assert interp.characters <= context.previous_scs
    clause = fs.clause_about(detail.chosen.id)
    assert clause.vp.simple_past
    assert not (clause.vp.negated or clause.vp.habitual or clause.vp.modal)


@given(feature_sets(), contexts())
def test_psa_sentences_never_have_active_characters_by_default(fs, context):
    # under the default policy, an actor qualified to be active would
    # also make the sentence subjective, so the two never co-occur
    engine = Engine()
    interp, detail = engine.interpret(fs, context)
    if detail.chosen.type is SoaType.PRIVATE_STATE_ACTION and \
            not interp.subjective:
        assert interp.characters == frozenset()


@settings(max_examples=60)
@given(streams())
def test_track_fold_invariants(items):
    engine = Engine()
    steps = engine.track(items)
    assert len(steps) == len(items)
    previous = None
    for step in steps:
        if previous is not None:
            assert step.before == previous
        previous = step.after
        assert step.before.previous_scs <= step.after.previous_scs
        if step.interpretation is None:
            assert isinstance(step.item, (ParagraphBreak, SceneBreak))
        elif step.interpretation.subjective:
            assert step.after.situation is TextSituation.CONTINUING_SUBJECTIVE
    # replay is identical
    assert steps == engine.track(items)
