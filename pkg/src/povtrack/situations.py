"""Context transitions and expectation predicates.

Two pure functions advance the tracking context: one after a sentence
has been interpreted, one after a paragraph or scene break.  The
expectation predicates say which of the two remembered characters (last
subjective character, last active character) a subjective sentence may
fall back to in the current situation.
"""

from __future__ import annotations

from .model import (
    Context,
    Interpretation,
    InputItem,
    ParagraphBreak,
    SceneBreak,
    TextSituation,
)

_TS = TextSituation


def new_context(interpretation: Interpretation, context: Context) -> Context:
    """Context after a sentence with the given interpretation."""
    if interpretation.subjective:
        return Context(
            last_sc=interpretation.characters,
            last_active_character=context.last_active_character,
            previous_scs=context.previous_scs | interpretation.characters,
            situation=_TS.CONTINUING_SUBJECTIVE,
        )

    active = interpretation.characters
    situation = context.situation
    if active and situation is _TS.PRESUBJECTIVE_NONACTIVE:
        new_situation = _TS.PRESUBJECTIVE_ACTIVE
    elif active and situation in (_TS.POSTSUBJECTIVE_NONACTIVE,
                                  _TS.BROKEN_SUBJECTIVE):
        new_situation = _TS.POSTSUBJECTIVE_ACTIVE
    elif not active and situation is _TS.BROKEN_SUBJECTIVE:
        new_situation = _TS.POSTSUBJECTIVE_NONACTIVE
    elif situation is _TS.CONTINUING_SUBJECTIVE:
        new_situation = _TS.INTERRUPTED_SUBJECTIVE
    else:
        new_situation = situation
    return Context(
        last_sc=context.last_sc,
        last_active_character=active if active else context.last_active_character,
        previous_scs=context.previous_scs,
        situation=new_situation,
    )


def new_context_after_break(item: InputItem, context: Context) -> Context:
    """Context after a paragraph or scene break.

    Only the situation changes; the remembered character sets survive.
    A scene break cancels every expectation by forcing the situation
    back to presubjective-nonactive.
    """
    if isinstance(item, SceneBreak):
        new_situation = _TS.PRESUBJECTIVE_NONACTIVE
    elif isinstance(item, ParagraphBreak):
        situation = context.situation
        if situation is _TS.PRESUBJECTIVE_ACTIVE:
            new_situation = _TS.PRESUBJECTIVE_NONACTIVE
        elif situation is _TS.CONTINUING_SUBJECTIVE:
            new_situation = _TS.BROKEN_SUBJECTIVE
        elif situation is _TS.INTERRUPTED_SUBJECTIVE:
            new_situation = _TS.POSTSUBJECTIVE_NONACTIVE
        elif situation is _TS.POSTSUBJECTIVE_ACTIVE:
            new_situation = _TS.POSTSUBJECTIVE_NONACTIVE
        else:
            new_situation = situation
    else:
        raise TypeError(f"not a break item: {item!r}")
    return Context(
        last_sc=context.last_sc,
        last_active_character=context.last_active_character,
        previous_scs=context.previous_scs,
        situation=new_situation,
    )


def last_subjective_character_expected(context: Context) -> bool:
    """True once a subjective sentence has appeared in the current scene."""
    return context.situation not in (_TS.PRESUBJECTIVE_NONACTIVE,
                                     _TS.PRESUBJECTIVE_ACTIVE)


def last_active_character_expected(context: Context) -> bool:
    """True when an active character appeared earlier in the paragraph
    and no subjective sentence has appeared since."""
    return context.situation in (_TS.PRESUBJECTIVE_ACTIVE,
                                 _TS.POSTSUBJECTIVE_ACTIVE)
