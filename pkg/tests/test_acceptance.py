"""Acceptance suite: one test per criterion, one printed line each.

Run with ``pytest -s tests/test_acceptance.py`` to see the pass lines.
"""

import time

from povtrack import (
    Engine,
    Interpretation,
    ParagraphBreak,
    PovOperation,
    SceneBreak,
    Sentence,
    SignificancePolicy,
    TextSituation,
    classify_operation,
    evaluate,
    last_active_character_expected,
    last_subjective_character_expected,
    new_context,
    new_context_after_break,
    render_step,
)
import dataclasses

from conftest import fixture_doc
from test_situations import (
    BREAK_TABLE,
    EXPECT_LAST_ACTIVE,
    EXPECT_LAST_SC,
    INPUTS,
    SENTENCE_TABLE,
    ctx,
)

TS = TextSituation


def run(name, engine=None):
    doc = fixture_doc(name)
    steps = (engine or Engine()).track_document(doc)
    return doc, steps


def verdicts(steps):
    return [(s.item.id, s.interpretation) for s in steps
            if s.interpretation is not None]


def situations(steps):
    return [s.after.situation.value for s in steps]


def subjective(*who):
    return Interpretation.subjective_of(who)


def objective(*who):
    return Interpretation.objective_of(who)


def test_criterion_1_demo1_replay():
    started = time.monotonic()
    doc, steps = run("demo1")
    assert doc.initial_context.situation is TS.POSTSUBJECTIVE_NONACTIVE
    assert doc.initial_context.last_sc == {"Dennys", "Sandy"}
    assert len(doc.items) == 7

    assert verdicts(steps) == [
        ("s1", objective()),
        ("s2", objective()),
        ("s3", objective()),
        ("s4", subjective("Dennys", "Sandy")),
        ("s5", objective()),
        ("s6", objective()),
        ("s7", subjective("Dennys", "Sandy")),
    ]
    assert situations(steps) == [
        "postsubjective-nonactive",
        "postsubjective-nonactive",
        "postsubjective-nonactive",
        "continuing-subjective",
        "interrupted-subjective",
        "interrupted-subjective",
        "continuing-subjective",
    ]
    # item 1 is a private-state action read as an action
    assert steps[0].detail.chosen.type.value == "private-state-action"
    assert steps[0].detail.treated_as_private_state is False
    # item 4 turns subjective through the sentence fragment
    assert [p.category for p in steps[3].detail.fired] == ["sentence-fragment"]
    # item 7 fires the fragment and the seeming verb; the progressive
    # is considered but stays silent outside continuing-subjective
    assert [p.category for p in steps[6].detail.fired] == [
        "sentence-fragment", "seeming-verb"]
    assert [p.category for p in steps[6].item.features.pses] == [
        "sentence-fragment", "progressive", "seeming-verb"]
    elapsed = time.monotonic() - started
    assert elapsed < 1.0
    print(f"\nACCEPTANCE PASS 1: demo 1 replay exact at every step "
          f"({elapsed * 1000:.0f} ms)")


def test_criterion_2_demo2_replay():
    doc, steps = run("demo2")
    assert verdicts(steps) == [
        ("s1", subjective("the girl")),
        ("s2", subjective("Johnnie Martin")),
    ]
    assert situations(steps) == [
        "continuing-subjective",   # after the question sentence
        "broken-subjective",       # after the paragraph break
        "continuing-subjective",   # after the private-state report
    ]
    assert [p.category for p in steps[0].detail.fired] == [
        "question", "eval-adjective", "past-perfective"]
    # both elements fire but are subordinated to the private-state term
    assert [p.category for p in steps[2].detail.fired] == [
        "percept-term", "attitude-noun"]
    assert steps[2].detail.considerable == ()
    print("\nACCEPTANCE PASS 2: demo 2 replay exact "
          "(question sentence, broken-subjective, private-state report)")


def test_criterion_3_demo3_replay():
    doc, steps = run("demo3")
    assert situations(steps) == [
        "postsubjective-active",      # riding sentence: Newt active
        "postsubjective-nonactive",   # paragraph break
        "postsubjective-active",      # Newt asked
        "postsubjective-nonactive",   # paragraph break
        "postsubjective-active",      # Jake said
        "postsubjective-active",      # negated sentence: no active char
        "continuing-subjective",      # percept term wins for Newt
    ]
    assert verdicts(steps) == [
        ("s1", objective("Newt")),
        ("s2", objective("Newt")),
        ("s3", objective("Jake")),
        ("s4", objective()),
        ("s5", subjective("Newt")),
    ]
    final = steps[-1]
    assert final.detail.sc_source == "competition-last-sc"
    assert final.before.last_active_character == {"Jake"}
    print("\nACCEPTANCE PASS 3: demo 3 replay exact, competition resolved "
          "to the last subjective character")


def test_criterion_4_transition_table_exhaustion():
    checked = 0
    for situation in TS:
        for kind, interp in INPUTS.items():
            out = new_context(interp, ctx(situation))
            assert out.situation.value == SENTENCE_TABLE[
                (situation.value, kind)]
            checked += 1
        for kind, item in (("paragraph", ParagraphBreak()),
                           ("scene", SceneBreak())):
            out = new_context_after_break(item, ctx(situation))
            assert out.situation.value == BREAK_TABLE[(situation.value, kind)]
            checked += 1
    assert checked == 7 * 5

    for situation in TS:
        scene = new_context_after_break(SceneBreak(), ctx(situation))
        assert scene.situation is TS.PRESUBJECTIVE_NONACTIVE
        subj = new_context(INPUTS["subjective"], ctx(situation))
        assert subj.situation is TS.CONTINUING_SUBJECTIVE
        for kind, interp in INPUTS.items():
            out = new_context(interp, ctx(situation))
            if (out.situation is TS.INTERRUPTED_SUBJECTIVE
                    and situation is not TS.INTERRUPTED_SUBJECTIVE):
                assert situation is TS.CONTINUING_SUBJECTIVE
                assert not interp.subjective
    print(f"\nACCEPTANCE PASS 4: all {checked} transitions match the "
          "hand-derived table, reachability invariants hold")


def test_criterion_5_expectation_predicates():
    for situation in TS:
        context = ctx(situation)
        assert last_subjective_character_expected(context) == \
            EXPECT_LAST_SC[situation.value]
        assert last_active_character_expected(context) == \
            EXPECT_LAST_ACTIVE[situation.value]
    print("\nACCEPTANCE PASS 5: expectation predicates exhaustively correct "
          "over all 7 situations")


def test_criterion_6_passage_fixtures():
    engine = Engine()

    doc = fixture_doc("minicorpus")
    by_id = {}
    index_by_id = {}
    for i, item in enumerate(doc.items):
        if isinstance(item, Sentence):
            index_by_id[item.id] = i
    for step in engine.track_document(doc):
        if step.interpretation is not None:
            by_id[step.item.id] = step
    assert by_id["15.11"].interpretation == subjective("Zoe")
    assert classify_operation(doc, index_by_id["15.11"]) is \
        PovOperation.RESUMPTION
    assert by_id["17.9"].interpretation == subjective("Augustus")

    _, steps = run("p18")
    assert verdicts(steps)[1] == ("s2", subjective("Lorena"))

    _, steps = run("p24")
    assert verdicts(steps)[0] == ("s1", subjective("Dennys", "Sandy"))
    assert steps[0].detail.considerable  # 'evidently' blocks the experiencer

    _, steps = run("p26")
    assert verdicts(steps) == [
        ("s1", subjective("Augustus", "Call")),
        ("s2", subjective("Augustus")),
        ("s3", subjective("Augustus")),
    ]

    _, steps = run("p27")
    assert verdicts(steps)[1] == ("s2", subjective("Sandy"))
    assert steps[-1].detail.chosen.who == frozenset()  # unspecified

    _, steps = run("p31")
    tail = [s for s in steps if s.interpretation is not None
            and s.item.id not in ("s31.1", "s31.2", "s31.3")]
    assert len(tail) == 9
    for step in tail:
        assert not step.interpretation.subjective
        assert step.before.situation is TS.PRESUBJECTIVE_NONACTIVE

    _, steps = run("p19")
    first = steps[0]
    assert first.interpretation == subjective()
    assert first.detail.sc_source == "failed"
    assert any("WARNING" in line for line in render_step(first))
    print("\nACCEPTANCE PASS 6: passage fixtures reproduce the documented "
          "outcomes (resumption, competition, narrowing, unspecified "
          "experiencer, empty-center scene, identification failure)")


def test_criterion_7_evaluator_oracle():
    doc = fixture_doc("minicorpus")
    report = evaluate(doc, Engine())
    assert report.sentences == 38
    assert [c.sentence_id for c in report.primary] == ["d.1", "d.4"]
    assert [c.sentence_id for c in report.secondary] == ["d.2", "d.5"]
    assert report.simple_quoted == 13

    by_label = {r.label: r for r in report.by_interpretation}
    assert (by_label["subjective"].actual,
            by_label["subjective"].primary) == (19, 0)
    assert (by_label["objective"].actual,
            by_label["objective"].primary) == (19, 2)
    assert dict(by_label["objective"].wrong) == {"subjective": 2}
    row = by_label["objective, other than simple quoted speech"]
    assert (row.actual, row.primary) == (6, 2)

    by_op = {r.label: r for r in report.by_operation}
    assert by_op["continuation"].actual == 12
    assert by_op["resumption"].actual == 1
    assert by_op["initiation"].actual == 6
    assert by_op["objective"].actual == 19
    assert dict(by_op["objective"].wrong) == {"initiation": 2}

    # self-consistency: with gold set to the engine's own output the
    # evaluation is perfect
    engine = Engine()
    steps = engine.track_document(doc)
    interps = {s.item.id: s.interpretation for s in steps
               if s.interpretation is not None}
    items = tuple(
        dataclasses.replace(item, gold=interps[item.id])
        if isinstance(item, Sentence) else item
        for item in doc.items)
    echoed = evaluate(dataclasses.replace(doc, items=items), engine)
    assert (echoed.primary_count, echoed.secondary_count) == (0, 0)
    print("\nACCEPTANCE PASS 7: mini-corpus evaluation equals hand-computed "
          "counts (2 primary, 2 secondary), self-consistency 0/0")


def test_criterion_8_significance_policy_differential():
    doc = fixture_doc("lynette")
    default = evaluate(doc, Engine())
    strict = evaluate(doc, Engine(
        policy=SignificancePolicy.MIN_LENGTH_2))
    assert default.primary_count == 2
    assert [c.sentence_id for c in default.primary] == ["l.5", "l.6"]
    assert strict.primary_count == 0
    assert strict.primary_count < default.primary_count
    print("\nACCEPTANCE PASS 8: min-length-2 policy strictly reduces primary "
          f"errors ({default.primary_count} -> {strict.primary_count})")


def test_criterion_9_desk_scale_substitute():
    # The published novel-scale error rates cannot be checked here: the
    # evaluation texts are full novels that are not part of this
    # repository.  The bundled corpora stay at desk scale, and the rest
    # of this suite substitutes for the novel-scale run.
    started = time.monotonic()
    total = 0
    for name in ("demo1", "demo2", "demo3", "minicorpus", "lynette",
                 "flipped", "p18", "p19", "p24", "p26", "p27", "p31"):
        doc = fixture_doc(name)
        sentences = len(doc.sentences())
        assert sentences < 450
        total += sentences
        Engine().track_document(doc)
    evaluate(fixture_doc("minicorpus"), Engine())
    elapsed = time.monotonic() - started
    assert elapsed < 10.0
    print(f"\nACCEPTANCE PASS 9: novel-scale error rates out of desk reach "
          f"by design ({total} bundled sentences); replay plus evaluation "
          f"ran in {elapsed:.2f}s (< 10s)")
