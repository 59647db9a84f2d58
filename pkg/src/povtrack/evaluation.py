"""Scoring the tracker against gold labels.

Two folds run side by side over a fully gold-labelled document:

* the *actual* fold advances context and history from the gold labels,
  so every sentence is judged in the context a perfect reader would
  have;
* the *computed* fold advances them from the engine's own output.

A sentence is a **primary error** when the engine is wrong in the
actual context, and a **secondary error** when it is right there but
wrong in its own computed context (the mistake is inherited from an
earlier one).  Results are broken down by interpretation kind and by
the point-of-view operation the gold labels say the sentence performs.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from enum import Enum

from .engine import Engine, SubjectiveHistory
from .corpus import Document
from .model import (
    Context,
    Interpretation,
    SceneBreak,
    Sentence,
    SoaType,
    ValidationError,
)
from .situations import new_context, new_context_after_break


class PovOperation(Enum):
    CONTINUATION = "continuation"
    RESUMPTION = "resumption"
    INITIATION = "initiation"
    OBJECTIVE = "objective"


def classify_operation(document: Document, index: int,
                       interpretation: Interpretation | None = None
                       ) -> PovOperation:
    """The point-of-view operation an interpretation performs at ``index``.

    Judged against the gold labels of the preceding sentences in the
    current scene.  With no interpretation given, the sentence's own
    gold label is classified.  Paragraph breaks are invisible here; a
    scene break starts classification afresh.
    """
    item = document.items[index]
    if not isinstance(item, Sentence):
        raise ValueError(f"items[{index}] is not a sentence")
    if interpretation is None:
        interpretation = item.gold
        if interpretation is None:
            raise ValidationError(f"sentence {item.id} has no gold label")
    if not interpretation.subjective:
        return PovOperation.OBJECTIVE

    target = interpretation.characters
    previous_sentence: Sentence | None = None
    last_subjective: Sentence | None = None
    for j in range(index - 1, -1, -1):
        earlier = document.items[j]
        if isinstance(earlier, SceneBreak):
            break
        if not isinstance(earlier, Sentence):
            continue
        if earlier.gold is None:
            raise ValidationError(f"sentence {earlier.id} has no gold label")
        if previous_sentence is None:
            previous_sentence = earlier
        if earlier.gold.subjective:
            last_subjective = earlier
            break
    if (previous_sentence is not None and previous_sentence.gold.subjective
            and previous_sentence.gold.characters == target):
        return PovOperation.CONTINUATION
    if (last_subjective is not None
            and last_subjective.gold.characters == target
            and not previous_sentence.gold.subjective):
        return PovOperation.RESUMPTION
    return PovOperation.INITIATION


def is_simple_quoted_speech(sentence: Sentence) -> bool:
    """Quoted speech carrying nothing the tracker could react to: no
    potential subjective elements, and no subordinated clause about a
    private state or private-state action."""
    fs = sentence.features
    if not fs.quoted_speech or fs.pses:
        return False
    main_id = fs.main_clause().id
    for clause in fs.clauses:
        if clause.id == main_id:
            continue
        if fs.soa_by_id(clause.soa).type in (SoaType.PRIVATE_STATE,
                                             SoaType.PRIVATE_STATE_ACTION):
            return False
    return True


def actual_contexts(document: Document, engine: Engine) -> list[Context]:
    """The context before each input item, advanced from gold labels."""
    contexts = []
    context = document.initial_context
    history = SubjectiveHistory(context.previous_scs)
    for item in document.items:
        contexts.append(context)
        if isinstance(item, Sentence):
            if item.gold is None:
                raise ValidationError(f"sentence {item.id} has no gold label")
            after = new_context(item.gold, context)
            engine.advance_history(history, item.features, item.gold, context)
        else:
            after = new_context_after_break(item, context)
            history.note_nonsubjective()
        context = after
    return contexts


@dataclass
class ErrorCase:
    sentence_id: str
    gold: Interpretation
    got: Interpretation

    def to_dict(self) -> dict:
        return {"id": self.sentence_id,
                "gold": _interp_dict(self.gold),
                "got": _interp_dict(self.got)}


@dataclass
class BreakdownRow:
    label: str
    actual: int = 0
    primary: int = 0
    wrong: Counter = field(default_factory=Counter)

    def to_dict(self) -> dict:
        return {"label": self.label, "actual": self.actual,
                "primary": self.primary, "incorrect": dict(self.wrong)}


@dataclass
class EvalReport:
    sentences: int
    primary: list[ErrorCase]
    secondary: list[ErrorCase]
    simple_quoted: int
    by_interpretation: list[BreakdownRow]
    by_operation: list[BreakdownRow]

    @property
    def primary_count(self) -> int:
        return len(self.primary)

    @property
    def secondary_count(self) -> int:
        return len(self.secondary)

    def to_dict(self) -> dict:
        return {
            "sentences": self.sentences,
            "simple_quoted_speech": self.simple_quoted,
            "primary": {"count": self.primary_count,
                        "cases": [c.to_dict() for c in self.primary]},
            "secondary": {"count": self.secondary_count,
                          "cases": [c.to_dict() for c in self.secondary]},
            "by_interpretation": [r.to_dict() for r in self.by_interpretation],
            "by_operation": [r.to_dict() for r in self.by_operation],
        }

    def render(self) -> str:
        lines = [
            f"Sentences evaluated: {self.sentences}",
            f"Simple quoted speech: {self.simple_quoted}",
            f"Primary errors: {self.primary_count} "
            f"({_pct(self.primary_count, self.sentences)}%)",
            f"Secondary errors: {self.secondary_count} "
            f"({_pct(self.secondary_count, self.sentences)}%)",
            "",
        ]
        lines += _render_table("Results by interpretation",
                               "interpretation", self.by_interpretation,
                               self.sentences)
        lines.append("")
        lines += _render_table("Results by point-of-view operation",
                               "operation", self.by_operation, self.sentences)
        if self.secondary:
            lines.append("")
            lines.append("Secondary error cases")
            lines.append("---------------------")
            for case in self.secondary:
                lines.append(f"  {case.sentence_id}: gold "
                             f"{_interp_text(case.gold)}, got "
                             f"{_interp_text(case.got)}")
        return "\n".join(lines) + "\n"


def evaluate(document: Document, engine: Engine | None = None) -> EvalReport:
    """Run both folds and build the full report.

    Every sentence must carry a gold label.
    """
    engine = engine or Engine()
    for sentence in document.sentences():
        if sentence.gold is None:
            raise ValidationError(f"sentence {sentence.id} has no gold label")

    interp_rows = {
        "subjective": BreakdownRow("subjective"),
        "objective": BreakdownRow("objective"),
        "objective-nonquoted": BreakdownRow(
            "objective, other than simple quoted speech"),
    }
    op_rows = {
        PovOperation.CONTINUATION: BreakdownRow("continuation"),
        PovOperation.RESUMPTION: BreakdownRow("resumption"),
        PovOperation.INITIATION: BreakdownRow("initiation"),
        PovOperation.OBJECTIVE: BreakdownRow("objective"),
        "objective-nonquoted": BreakdownRow(
            "objective, other than simple quoted speech"),
    }

    primary: list[ErrorCase] = []
    secondary: list[ErrorCase] = []
    simple_quoted = 0
    sentence_count = 0

    actual_ctx = computed_ctx = document.initial_context
    actual_hist = SubjectiveHistory(actual_ctx.previous_scs)
    computed_hist = SubjectiveHistory(computed_ctx.previous_scs)

    for index, item in enumerate(document.items):
        if not isinstance(item, Sentence):
            actual_ctx = new_context_after_break(item, actual_ctx)
            computed_ctx = new_context_after_break(item, computed_ctx)
            actual_hist.note_nonsubjective()
            computed_hist.note_nonsubjective()
            continue

        sentence_count += 1
        gold = item.gold
        got_actual = engine.pov(item.features, actual_ctx, actual_hist)
        got_computed = engine.pov(item.features, computed_ctx, computed_hist)
        is_primary = got_actual != gold
        is_secondary = not is_primary and got_computed != gold

        quoted_simple = is_simple_quoted_speech(item)
        simple_quoted += quoted_simple
        operation = classify_operation(document, index)

        irows = [interp_rows[gold.kind]]
        orows = [op_rows[operation]]
        if not gold.subjective and not quoted_simple:
            irows.append(interp_rows["objective-nonquoted"])
            orows.append(op_rows["objective-nonquoted"])
        for row in irows + orows:
            row.actual += 1
        if is_primary:
            primary.append(ErrorCase(item.id, gold, got_actual))
            for row in irows:
                row.primary += 1
                row.wrong[_interp_error_label(gold, got_actual)] += 1
            wrong_op = _operation_error_label(document, index, gold,
                                              got_actual)
            for row in orows:
                row.primary += 1
                row.wrong[wrong_op] += 1
        if is_secondary:
            secondary.append(ErrorCase(item.id, gold, got_computed))

        actual_after = new_context(gold, actual_ctx)
        engine.advance_history(actual_hist, item.features, gold, actual_ctx)
        computed_after = new_context(got_computed, computed_ctx)
        engine.advance_history(computed_hist, item.features, got_computed,
                               computed_ctx)
        actual_ctx, computed_ctx = actual_after, computed_after

    return EvalReport(
        sentences=sentence_count,
        primary=primary,
        secondary=secondary,
        simple_quoted=simple_quoted,
        by_interpretation=[interp_rows["subjective"], interp_rows["objective"],
                           interp_rows["objective-nonquoted"]],
        by_operation=[op_rows[PovOperation.CONTINUATION],
                      op_rows[PovOperation.RESUMPTION],
                      op_rows[PovOperation.INITIATION],
                      op_rows[PovOperation.OBJECTIVE],
                      op_rows["objective-nonquoted"]],
    )


def _interp_error_label(gold: Interpretation, got: Interpretation) -> str:
    if gold.subjective:
        return ("subjective, wrong character" if got.subjective
                else "objective")
    return "subjective" if got.subjective else "objective, wrong active character"


def _operation_error_label(document, index, gold, got) -> str:
    if not got.subjective:
        return ("objective" if gold.subjective
                else "objective, wrong active character")
    return classify_operation(document, index, got).value


def _pct(part: int, whole: int) -> int:
    if whole == 0:
        return 0
    return int(100 * part / whole + 0.5)


def _interp_dict(interp: Interpretation) -> dict:
    return {"type": interp.kind, "characters": sorted(interp.characters)}


def _interp_text(interp: Interpretation) -> str:
    names = ", ".join(sorted(interp.characters)) or "-"
    return f"{interp.kind}({names})"


def _render_table(title, key_header, rows, total) -> list[str]:
    header = [key_header, "actual", "primary errors",
              "incorrect interpretations"]
    body = []
    for row in rows:
        actual = f"{row.actual}/{total} ({_pct(row.actual, total)}%)"
        prim = f"{row.primary}/{row.actual} ({_pct(row.primary, row.actual)}%)"
        wrong = "  ".join(f"{n} {_plural(label, n)}"
                          for label, n in sorted(row.wrong.items())) or "-"
        body.append([row.label, actual, prim, wrong])
    widths = [max(len(header[i]), *(len(r[i]) for r in body))
              for i in range(4)]
    lines = [title, "-" * len(title)]
    lines.append("  ".join(header[i].ljust(widths[i]) for i in range(4)))
    for cells in body:
        lines.append("  ".join(cells[i].ljust(widths[i])
                               for i in range(4)).rstrip())
    return lines


def _plural(label: str, n: int) -> str:
    if n > 1 and label in ("continuation", "resumption", "initiation"):
        return label + "s"
    return label
