"""Domain model for psychological point-of-view tracking.

Third-person narrative is read as a stream of input items: sentences,
paragraph breaks, and scene breaks.  Each sentence arrives already
annotated with a feature set (clauses, the states of affairs they are
about, potential subjective elements, an optional narrative
parenthetical).  The tracker never sees raw text; everything here is the
vocabulary those annotations and the tracking state are expressed in.

Character sets are plain ``frozenset[str]``.  The empty set is
meaningful throughout: an unspecified experiencer, an objective sentence
with no active character, or a failed identification.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum


class PovTrackError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(PovTrackError):
    """Input bytes could not be parsed at all (malformed JSON, wrong shape)."""


class ValidationError(PovTrackError):
    """A document parsed but violates the annotation schema."""


class RegistryError(PovTrackError):
    """A category registry is malformed or a category cannot be resolved."""


Characters = frozenset[str]

NOBODY: Characters = frozenset()


class TextSituation(Enum):
    """The seven discourse states the tracker distinguishes.

    They summarise, for the current scene, whether a subjective sentence
    has appeared, whether the local paragraph context is subjective, and
    whether a sentence with an active character has appeared earlier in
    the current paragraph.
    """

    PRESUBJECTIVE_NONACTIVE = "presubjective-nonactive"
    PRESUBJECTIVE_ACTIVE = "presubjective-active"
    CONTINUING_SUBJECTIVE = "continuing-subjective"
    BROKEN_SUBJECTIVE = "broken-subjective"
    INTERRUPTED_SUBJECTIVE = "interrupted-subjective"
    POSTSUBJECTIVE_NONACTIVE = "postsubjective-nonactive"
    POSTSUBJECTIVE_ACTIVE = "postsubjective-active"

    @classmethod
    def from_name(cls, name: str) -> "TextSituation":
        for member in cls:
            if member.value == name:
                return member
        raise ValidationError(f"unknown text situation {name!r}")


# The four association levels, weakest context requirement last.  A
# category at level k is subjective in every situation of levels 1..k.
_LEVEL_SITUATIONS: dict[int, frozenset[TextSituation]] = {
    1: frozenset({TextSituation.CONTINUING_SUBJECTIVE}),
    2: frozenset({TextSituation.BROKEN_SUBJECTIVE,
                  TextSituation.INTERRUPTED_SUBJECTIVE}),
    3: frozenset({TextSituation.PRESUBJECTIVE_ACTIVE,
                  TextSituation.POSTSUBJECTIVE_NONACTIVE,
                  TextSituation.POSTSUBJECTIVE_ACTIVE}),
    4: frozenset({TextSituation.PRESUBJECTIVE_NONACTIVE}),
}


def situations_for_level(level: int) -> frozenset[TextSituation]:
    """The text situations introduced at exactly this strength level."""
    if level not in _LEVEL_SITUATIONS:
        raise ValueError(f"level must be in 1..4, got {level!r}")
    return _LEVEL_SITUATIONS[level]


def situations_up_to_level(level: int) -> frozenset[TextSituation]:
    """All situations in which a level-``level`` category is subjective."""
    if level not in _LEVEL_SITUATIONS:
        raise ValueError(f"level must be in 1..4, got {level!r}")
    out: frozenset[TextSituation] = frozenset()
    for k in range(1, level + 1):
        out |= _LEVEL_SITUATIONS[k]
    return out


@dataclass(frozen=True)
class PseCategory:
    """One category of potential subjective element.

    ``level`` is the highest association level: the category counts as a
    subjective element exactly in the situations of levels 1..level.
    ``excluded`` marks categories that are never used as evidence when
    identifying the subjective character of a private-state sentence
    (they can legitimately appear, non-subordinated, in private-state
    reports).
    """

    name: str
    level: int
    excluded: bool = False

    def __post_init__(self) -> None:
        if self.level not in (1, 2, 3, 4):
            raise RegistryError(
                f"category {self.name!r}: level must be in 1..4, got {self.level!r}")

    @property
    def situations(self) -> frozenset[TextSituation]:
        return situations_up_to_level(self.level)


def _default_categories() -> tuple[PseCategory, ...]:
    level1 = ("past-perfective", "progressive")
    level2 = ("habitual",)
    level4 = ("exclamation", "question")
    level3 = (
        "eval-adjective", "eval-noun", "eval-adverb",
        "obligation-modal", "minimizer", "lack-of-knowledge",
        "sentence-fragment", "kinship-term",
        "evidential-certainty", "evidential-evidence", "hedge",
        "expectation-met", "expectation-unmet",
        "conjunct", "conditional-clause",
        "comparative-like", "percept-term", "seeming-verb",
        "attitude-noun", "as-plus-modifier", "degree-intensifier",
    )
    excluded = {"habitual", "comparative-like", "as-plus-modifier",
                "degree-intensifier"}
    out = []
    for level, names in ((1, level1), (2, level2), (3, level3), (4, level4)):
        for name in names:
            out.append(PseCategory(name, level, excluded=name in excluded))
    return tuple(out)


DEFAULT_CATEGORIES: tuple[PseCategory, ...] = _default_categories()

DEFAULT_REGISTRY: dict[str, PseCategory] = {c.name: c for c in DEFAULT_CATEGORIES}


def registry_lookup(name: str, registry: dict[str, PseCategory]) -> PseCategory:
    try:
        return registry[name]
    except KeyError:
        raise RegistryError(
            f"unknown potential-subjective-element category {name!r}") from None


@dataclass(frozen=True)
class Context:
    """The tracking state carried from one input item to the next."""

    last_sc: Characters
    last_active_character: Characters
    previous_scs: Characters
    situation: TextSituation


INITIAL_CONTEXT = Context(NOBODY, NOBODY, NOBODY,
                          TextSituation.PRESUBJECTIVE_NONACTIVE)


class SoaType(Enum):
    PRIVATE_STATE_ACTION = "private-state-action"
    ACTION = "action"
    PRIVATE_STATE = "private-state"
    NONPRIVATE_STATE = "nonprivate-state"

    @classmethod
    def from_name(cls, name: str) -> "SoaType":
        for member in cls:
            if member.value == name:
                return member
        raise ValidationError(f"unknown state-of-affairs type {name!r}")


@dataclass(frozen=True)
class StateOfAffairs:
    """What a clause (or a private-state head noun) is about.

    ``who`` is the experiencer or actor; empty means unspecified.
    """

    id: str
    type: SoaType
    who: Characters = NOBODY


@dataclass(frozen=True)
class VerbFeatures:
    """Tense/aspect/mood flags of one clause's main verb phrase."""

    simple_past: bool = False
    negated: bool = False
    habitual: bool = False
    modal: bool = False
    past_perfective: bool = False
    progressive: bool = False


@dataclass(frozen=True)
class Clause:
    """One clause; ``under`` names the clauses it is subordinated to.

    Exactly one clause per sentence has ``under == frozenset()``: the
    main clause.  For quoted speech the main clause is the communicative
    action and carries the discourse parenthetical's verb features.
    """

    id: str
    soa: str
    under: frozenset[str] = frozenset()
    vp: VerbFeatures = VerbFeatures()


@dataclass(frozen=True)
class Pse:
    """A potential subjective element occurrence.

    ``under`` lists the clauses whose governing lexical item
    syntactically dominates the element; an element is never treated as
    subordinated to the head-noun state of affairs.
    """

    id: str
    category: str
    under: frozenset[str] = frozenset()


@dataclass(frozen=True)
class FeatureSet:
    """The annotations of a single sentential input item."""

    clauses: tuple[Clause, ...]
    soas: tuple[StateOfAffairs, ...]
    pses: tuple[Pse, ...] = ()
    parenthetical: Characters | None = None
    head_noun_private_state: str | None = None
    quoted_speech: bool = False

    def soa_by_id(self, soa_id: str) -> StateOfAffairs:
        for soa in self.soas:
            if soa.id == soa_id:
                return soa
        raise ValidationError(f"unknown state of affairs {soa_id!r}")

    def main_clause(self) -> Clause:
        mains = [c for c in self.clauses if not c.under]
        if len(mains) != 1:
            raise ValidationError(
                f"expected exactly one main clause, found {len(mains)}")
        return mains[0]

    def clause_about(self, soa_id: str) -> Clause | None:
        """The clause a state of affairs belongs to (None for a head-noun one)."""
        for clause in self.clauses:
            if clause.soa == soa_id:
                return clause
        return None

    def head_noun_soa(self) -> StateOfAffairs | None:
        if self.head_noun_private_state is None:
            return None
        return self.soa_by_id(self.head_noun_private_state)

    def pse_subordinated_to(self, pse: Pse, soa: StateOfAffairs) -> bool:
        """Whether this element sits inside the scope of ``soa``'s lexical item.

        Never true for the head-noun state of affairs (a noun phrase has
        no clausal scope for the element to sit in).
        """
        if soa.id == self.head_noun_private_state:
            return False
        clause = self.clause_about(soa.id)
        return clause is not None and clause.id in pse.under


@dataclass(frozen=True)
class Interpretation:
    """The verdict on one sentence: subjective of a character set, or
    objective with an (often empty) active character set."""

    subjective: bool
    characters: Characters

    @classmethod
    def subjective_of(cls, who) -> "Interpretation":
        return cls(True, frozenset(who))

    @classmethod
    def objective_of(cls, who) -> "Interpretation":
        return cls(False, frozenset(who))

    @property
    def kind(self) -> str:
        return "subjective" if self.subjective else "objective"


@dataclass(frozen=True)
class Sentence:
    id: str
    features: FeatureSet
    text: str | None = None
    gold: Interpretation | None = None


@dataclass(frozen=True)
class ParagraphBreak:
    pass


@dataclass(frozen=True)
class SceneBreak:
    pass


InputItem = Sentence | ParagraphBreak | SceneBreak
