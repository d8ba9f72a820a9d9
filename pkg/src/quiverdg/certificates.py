"""Replayable reflexivity verdicts.

A verdict never stands alone.  It cites exactly one criterion and lists
the hypotheses that were checked, each tagged with how far the check
reaches: exact, only within a computed window, or taken on trust from
the caller.  Every machine-checked hypothesis carries its check as a
callable closed over the original objects, so a certificate can be
replayed later and either comes back green or names the hypothesis that
no longer holds.
"""

from dataclasses import dataclass, field

VERIFIED_EXACTLY = "verified-exactly"
VERIFIED_WITHIN_WINDOW = "verified-within-window"
ASSUMED_BY_USER = "assumed-by-user"

_TAGS = (VERIFIED_EXACTLY, VERIFIED_WITHIN_WINDOW, ASSUMED_BY_USER)
_VERDICTS = ("Reflexive", "NotReflexive", "Unknown")


@dataclass(frozen=True)
class Hypothesis:
    """One checked statement inside a certificate."""

    statement: str
    tag: str
    replay: object = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if self.tag not in _TAGS:
            raise ValueError("unknown hypothesis tag %r" % self.tag)
        if self.tag != ASSUMED_BY_USER and self.replay is None:
            raise ValueError(
                "hypothesis %r claims verification but has no replay check"
                % self.statement)


@dataclass(frozen=True)
class Certificate:
    """A named criterion together with its verified hypotheses.

    The criterion slug describes the mathematical situation, for example
    "finite-product-of-complete-local".  A witness, when present, is a
    short human-readable description of the obstruction or of the object
    that exhibits the claimed behaviour.
    """

    criterion: str
    hypotheses: tuple
    witness: str = None

    def __post_init__(self):
        object.__setattr__(self, "hypotheses", tuple(self.hypotheses))

    @property
    def window_conditional(self):
        return any(h.tag == VERIFIED_WITHIN_WINDOW for h in self.hypotheses)


@dataclass(frozen=True)
class ReflexivityVerdict:
    verdict: str
    certificate: Certificate
    characteristic: str = "any"

    def __post_init__(self):
        if self.verdict not in _VERDICTS:
            raise ValueError("unknown verdict %r" % self.verdict)

    @property
    def window_conditional(self):
        return self.certificate.window_conditional

    def qualified_verdict(self):
        """The verdict string, marked when it only holds within a window."""
        if self.verdict == "Reflexive" and self.window_conditional:
            return "Reflexive(window-conditional)"
        return self.verdict

    def as_report(self):
        """A nested dict of plain strings, ready for serialization."""
        return {
            "verdict": self.qualified_verdict(),
            "criterion": self.certificate.criterion,
            "characteristic": self.characteristic,
            "witness": self.certificate.witness or "",
            "hypotheses": [
                {"statement": h.statement, "tag": h.tag}
                for h in self.certificate.hypotheses
            ],
        }


def replay_certificate(certificate):
    """Run every machine-checked hypothesis again.

    Returns a list of failure strings; an empty list means the
    certificate is still green.  Hypotheses tagged as assumed by the
    user are skipped, since there is nothing to run.
    """
    failures = []
    for h in certificate.hypotheses:
        if h.tag == ASSUMED_BY_USER:
            continue
        try:
            ok = bool(h.replay())
        except Exception as exc:
            failures.append("%s: replay raised %r" % (h.statement, exc))
            continue
        if not ok:
            failures.append("%s: replay came back false" % h.statement)
    return failures
