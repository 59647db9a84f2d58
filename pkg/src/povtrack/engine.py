"""The sentence interpreter and the document-level tracking fold.

For each sentence the engine picks one state of affairs to consider,
decides whether the sentence is subjective, and either identifies the
subjective character (from the sentence when possible, otherwise from
the expected characters the context supplies) or computes the active
character of an objective sentence.

A private-state action (looking, sighing, frowning) is the delicate
case: it is read as a private state only when its actor already has a
qualifying subjective past, otherwise as an ordinary action.  What
counts as "qualifying" is the significance policy; the default accepts
any actor who has ever been a subjective character.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .model import (
    Characters,
    Context,
    FeatureSet,
    InputItem,
    Interpretation,
    NOBODY,
    ParagraphBreak,
    Pse,
    PseCategory,
    SceneBreak,
    Sentence,
    SoaType,
    StateOfAffairs,
    TextSituation,
    registry_lookup,
    DEFAULT_REGISTRY,
    INITIAL_CONTEXT,
)
from .situations import (
    last_active_character_expected,
    last_subjective_character_expected,
    new_context,
    new_context_after_break,
)


class SignificancePolicy(Enum):
    """When has a character's subjective past been significant enough for
    their private-state actions to read as private states?"""

    ANY_PREVIOUS_SC = "any-previous-sc"
    CONTAINS_REPRESENTED_THOUGHT = "contains-represented-thought"
    CONTAINS_SUBJECTIVE_ELEMENT = "contains-subjective-element"
    MIN_LENGTH_2 = "min-length-2"

    @classmethod
    def from_name(cls, name: str) -> "SignificancePolicy":
        for member in cls:
            if member.value == name:
                return member
        raise ValueError(f"unknown significance policy {name!r}")


@dataclass
class CharacterRecord:
    """Per-character subjective history; flags only ever turn on."""

    ever_subjective: bool = False
    represented_thought: bool = False
    subjective_element: bool = False
    run: int = 0
    longest_run: int = 0


class SubjectiveHistory:
    """Running record of each character's subjective contexts.

    ``run`` counts the current streak of consecutive subjective
    sentences attributed to the character; any objective sentence,
    break, or subjective sentence of someone else resets it.
    """

    def __init__(self, previously_subjective: Characters = NOBODY):
        self._records: dict[str, CharacterRecord] = {}
        for name in previously_subjective:
            self.record(name).ever_subjective = True

    def record(self, name: str) -> CharacterRecord:
        if name not in self._records:
            self._records[name] = CharacterRecord()
        return self._records[name]

    def note_subjective(self, characters: Characters,
                        represented_thought: bool,
                        subjective_element: bool) -> None:
        for name in characters:
            rec = self.record(name)
            rec.ever_subjective = True
            rec.represented_thought |= represented_thought
            rec.subjective_element |= subjective_element
            rec.run += 1
            rec.longest_run = max(rec.longest_run, rec.run)
        for name, rec in self._records.items():
            if name not in characters:
                rec.run = 0

    def note_nonsubjective(self) -> None:
        for rec in self._records.values():
            rec.run = 0

    def satisfies(self, name: str, policy: SignificancePolicy) -> bool:
        rec = self._records.get(name)
        if rec is None:
            return False
        if policy is SignificancePolicy.ANY_PREVIOUS_SC:
            return rec.ever_subjective
        if policy is SignificancePolicy.CONTAINS_REPRESENTED_THOUGHT:
            return rec.represented_thought
        if policy is SignificancePolicy.CONTAINS_SUBJECTIVE_ELEMENT:
            return rec.subjective_element
        return rec.longest_run >= 2


@dataclass(frozen=True)
class InterpretationDetail:
    """Why the engine decided what it decided, for traces and history."""

    chosen: StateOfAffairs
    treated_as_private_state: bool | None  # None unless chosen is a psa
    fired: tuple[Pse, ...]  # elements subjective in this situation
    considerable: tuple[Pse, ...]  # fired, minus subordinated/excluded
    trigger: str | None  # what made the sentence subjective
    sc_source: str | None  # where the subjective character came from


@dataclass(frozen=True)
class TrackStep:
    item: InputItem
    before: Context
    after: Context
    interpretation: Interpretation | None  # None for breaks
    detail: InterpretationDetail | None


class Engine:
    """Interprets sentences against a category registry and a policy."""

    def __init__(self, registry: dict[str, PseCategory] | None = None,
                 policy: SignificancePolicy = SignificancePolicy.ANY_PREVIOUS_SC):
        self.registry = DEFAULT_REGISTRY if registry is None else registry
        self.policy = policy

    # -- state-of-affairs selection ------------------------------------

    def treat_as_private_state(self, soa: StateOfAffairs, fs: FeatureSet,
                               context: Context,
                               history: SubjectiveHistory | None = None) -> bool:
        """Whether a private-state action reads as a private state here."""
        history = self._history(history, context)
        who = soa.who
        if not who or not who <= context.previous_scs:
            return False
        return all(history.satisfies(name, self.policy) for name in who)

    def choose_state_of_affairs(self, fs: FeatureSet, context: Context,
                                history: SubjectiveHistory | None = None
                                ) -> StateOfAffairs:
        """Pick the single state of affairs the sentence is taken to be about.

        Preference order: a private-state (or private-state-reading
        action) main clause, then a private-state head noun, then the
        first subordinated clause about a private state that is not
        itself under such a clause, then the main clause regardless.
        """
        history = self._history(history, context)
        main = fs.soa_by_id(fs.main_clause().soa)
        if main.type is SoaType.PRIVATE_STATE:
            return main
        if (main.type is SoaType.PRIVATE_STATE_ACTION
                and self.treat_as_private_state(main, fs, context, history)):
            return main
        head = fs.head_noun_soa()
        if head is not None:
            return head
        candidates = self._candidate_subordinated_clauses(fs, context, history)
        if candidates:
            return fs.soa_by_id(candidates[0].soa)
        return main

    def _candidate_subordinated_clauses(self, fs, context, history):
        main_id = fs.main_clause().id
        private_clauses = {
            c.id for c in fs.clauses
            if fs.soa_by_id(c.soa).type in (SoaType.PRIVATE_STATE,
                                            SoaType.PRIVATE_STATE_ACTION)}
        out = []
        for clause in fs.clauses:
            if clause.id == main_id:
                continue
            soa = fs.soa_by_id(clause.soa)
            qualifies = soa.type is SoaType.PRIVATE_STATE or (
                soa.type is SoaType.PRIVATE_STATE_ACTION
                and self.treat_as_private_state(soa, fs, context, history))
            if qualifies and not (clause.under & private_clauses):
                out.append(clause)
        # ties broken by annotation order, so runs are reproducible
        return out

    # -- subjective elements -------------------------------------------

    def category(self, name: str) -> PseCategory:
        return registry_lookup(name, self.registry)

    def subjective_elements(self, fs: FeatureSet, context: Context
                            ) -> tuple[Pse, ...]:
        """The elements that actually express subjectivity here: those
        whose category is associated with the current situation."""
        return tuple(
            pse for pse in fs.pses
            if context.situation in self.category(pse.category).situations)

    def elements_for_identification(self, soa: StateOfAffairs, fs: FeatureSet,
                                    context: Context) -> tuple[Pse, ...]:
        """Subjective elements usable as evidence that the experiencer of
        ``soa`` is not the subjective character: non-subordinated ones of
        non-excluded categories."""
        return tuple(
            pse for pse in self.subjective_elements(fs, context)
            if not fs.pse_subordinated_to(pse, soa)
            and not self.category(pse.category).excluded)

    # -- the subjectivity decision -------------------------------------

    def sentence_is_subjective(self, fs: FeatureSet, context: Context,
                               history: SubjectiveHistory | None = None) -> bool:
        history = self._history(history, context)
        chosen = self.choose_state_of_affairs(fs, context, history)
        return self._is_subjective(fs, context, history, chosen)

    def _is_subjective(self, fs, context, history, chosen) -> bool:
        if fs.parenthetical is not None:
            return True
        if self.subjective_elements(fs, context):
            return True
        if chosen.type is SoaType.PRIVATE_STATE:
            return True
        if (chosen.type is SoaType.PRIVATE_STATE_ACTION
                and self.treat_as_private_state(chosen, fs, context, history)):
            return True
        return (chosen.type is SoaType.NONPRIVATE_STATE
                and context.situation is TextSituation.CONTINUING_SUBJECTIVE)

    # -- identifying the subjective character ---------------------------

    def subjective_character_from_sentence(self, fs: FeatureSet, context: Context,
                                           history: SubjectiveHistory | None = None
                                           ) -> Characters:
        """The parenthetical subject, or a qualifying experiencer; empty
        when the sentence alone cannot say whose it is."""
        history = self._history(history, context)
        chosen = self.choose_state_of_affairs(fs, context, history)
        return self._from_sentence(fs, context, history, chosen)

    def _from_sentence(self, fs, context, history, chosen) -> Characters:
        if fs.parenthetical is not None:
            return fs.parenthetical
        who = chosen.who
        if not who:
            return NOBODY
        if self.elements_for_identification(chosen, fs, context):
            return NOBODY
        private = chosen.type is SoaType.PRIVATE_STATE or (
            chosen.type is SoaType.PRIVATE_STATE_ACTION
            and self.treat_as_private_state(chosen, fs, context, history))
        if not private:
            return NOBODY
        if context.situation is not TextSituation.CONTINUING_SUBJECTIVE:
            return who
        # mid-context, only a strict narrowing or broadening of the
        # current point of view may come from the experiencer
        if who < context.last_sc or who > context.last_sc:
            return who
        return NOBODY

    def choose_expected_character(self, fs: FeatureSet, context: Context,
                                  history: SubjectiveHistory | None = None
                                  ) -> Characters:
        """Resolve competition between the two expected characters: the
        last subjective character wins only when the sentence is about
        the last active character."""
        history = self._history(history, context)
        chosen = self.choose_state_of_affairs(fs, context, history)
        if chosen.who == context.last_active_character:
            return context.last_sc
        return context.last_active_character

    def identify_subjective_character(self, fs: FeatureSet, context: Context,
                                      history: SubjectiveHistory | None = None
                                      ) -> Characters:
        history = self._history(history, context)
        chosen = self.choose_state_of_affairs(fs, context, history)
        who, _source = self._identify(fs, context, history, chosen)
        return who

    def _identify(self, fs, context, history, chosen):
        from_sentence = self._from_sentence(fs, context, history, chosen)
        if from_sentence:
            source = ("parenthetical" if fs.parenthetical is not None
                      else "experiencer")
            return from_sentence, source
        sc_expected = last_subjective_character_expected(context)
        active_expected = last_active_character_expected(context)
        if sc_expected and active_expected:
            if chosen.who == context.last_active_character:
                return context.last_sc, "competition-last-sc"
            return context.last_active_character, "competition-last-active"
        if sc_expected:
            return context.last_sc, "last-sc"
        if active_expected:
            return context.last_active_character, "last-active"
        return NOBODY, "failed"

    # -- active characters ----------------------------------------------

    def active_character(self, fs: FeatureSet, context: Context,
                         history: SubjectiveHistory | None = None) -> Characters:
        """The actor of an objective sentence about an actual current
        action, provided the actor has been a subjective character."""
        history = self._history(history, context)
        chosen = self.choose_state_of_affairs(fs, context, history)
        if chosen.type is SoaType.ACTION:
            pass
        elif (chosen.type is SoaType.PRIVATE_STATE_ACTION
              and not self.treat_as_private_state(chosen, fs, context, history)):
            pass  # reads as an ordinary action here
        else:
            return NOBODY
        who = chosen.who
        if not who or not who <= context.previous_scs:
            return NOBODY
        clause = fs.clause_about(chosen.id)
        if clause is None:
            return NOBODY
        vp = clause.vp
        if vp.simple_past and not vp.negated and not vp.habitual and not vp.modal:
            return who
        return NOBODY

    # -- top level --------------------------------------------------------

    def pov(self, fs: FeatureSet, context: Context,
            history: SubjectiveHistory | None = None) -> Interpretation:
        interpretation, _detail = self.interpret(fs, context, history)
        return interpretation

    def interpret(self, fs: FeatureSet, context: Context,
                  history: SubjectiveHistory | None = None
                  ) -> tuple[Interpretation, InterpretationDetail]:
        """Interpret one sentence, keeping the reasoning for the trace."""
        history = self._history(history, context)
        chosen = self.choose_state_of_affairs(fs, context, history)
        fired = self.subjective_elements(fs, context)
        considerable = self.elements_for_identification(chosen, fs, context)
        treated = None
        if chosen.type is SoaType.PRIVATE_STATE_ACTION:
            treated = self.treat_as_private_state(chosen, fs, context, history)

        if self._is_subjective(fs, context, history, chosen):
            who, source = self._identify(fs, context, history, chosen)
            interpretation = Interpretation.subjective_of(who)
            trigger = self._trigger(fs, chosen, treated, fired, considerable)
            detail = InterpretationDetail(chosen, treated, fired, considerable,
                                          trigger, source)
        else:
            active = self.active_character(fs, context, history)
            interpretation = Interpretation.objective_of(active)
            detail = InterpretationDetail(chosen, treated, fired, considerable,
                                          None, None)
        return interpretation, detail

    @staticmethod
    def _trigger(fs, chosen, treated, fired, considerable) -> str:
        if fs.parenthetical is not None:
            return "parenthetical"
        if considerable:
            return "elements"
        if chosen.type is SoaType.PRIVATE_STATE:
            return "private-state"
        if treated:
            return "private-state-action"
        if fired:
            return "elements"
        return "continuing-nonprivate"

    def track(self, items, initial_context: Context = INITIAL_CONTEXT
              ) -> list[TrackStep]:
        """Fold the interpreter over an item stream.

        A failed identification is reported as a subjective sentence
        with an empty character set; downstream consumers surface it as
        a warning.
        """
        history = SubjectiveHistory(initial_context.previous_scs)
        context = initial_context
        steps: list[TrackStep] = []
        for item in items:
            if isinstance(item, Sentence):
                interpretation, detail = self.interpret(
                    item.features, context, history)
                after = new_context(interpretation, context)
                self.advance_history(history, item.features, interpretation,
                                     context)
                steps.append(TrackStep(item, context, after, interpretation,
                                       detail))
            elif isinstance(item, (ParagraphBreak, SceneBreak)):
                after = new_context_after_break(item, context)
                history.note_nonsubjective()
                steps.append(TrackStep(item, context, after, None, None))
            else:
                raise TypeError(f"not an input item: {item!r}")
            context = after
        return steps

    def track_document(self, document) -> list[TrackStep]:
        return self.track(document.items, document.initial_context)

    def advance_history(self, history: SubjectiveHistory, fs: FeatureSet,
                        interpretation: Interpretation,
                        context_before: Context) -> None:
        """Update the history with one interpreted sentence.

        A subjective sentence counts as a represented thought when
        nothing in it states the private state outright: no narrative
        parenthetical, and the chosen state of affairs is not read as a
        private state.
        """
        if not interpretation.subjective:
            history.note_nonsubjective()
            return
        chosen = self.choose_state_of_affairs(fs, context_before, history)
        stated = chosen.type is SoaType.PRIVATE_STATE or (
            chosen.type is SoaType.PRIVATE_STATE_ACTION
            and self.treat_as_private_state(chosen, fs, context_before, history))
        represented = fs.parenthetical is None and not stated
        element = bool(self.subjective_elements(fs, context_before))
        history.note_subjective(interpretation.characters, represented, element)

    @staticmethod
    def _history(history: SubjectiveHistory | None,
                 context: Context) -> SubjectiveHistory:
        # a fresh history seeded from the context reproduces the default
        # policy; callers that care about other policies pass their own
        if history is not None:
            return history
        return SubjectiveHistory(context.previous_scs)
