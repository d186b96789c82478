"""Exception types. Every error carries a short stable ``code``."""


class CrosskitError(ValueError):
    code = "error"


class EmptyPattern(CrosskitError):
    code = "empty-pattern"


class EmptyRule(CrosskitError):
    code = "empty-rule"


class RuleAbsent(CrosskitError):
    code = "rule-absent"


class EmptyWord(CrosskitError):
    code = "empty-word"


class EpsilonAxiom(CrosskitError):
    code = "epsilon-axiom"


class EmptyAxioms(CrosskitError):
    code = "empty-axioms"


class EpsilonInLanguage(CrosskitError):
    code = "epsilon-in-language"


class NotAClosure(CrosskitError):
    code = "not-a-closure"


class InconsistentProfile(CrosskitError):
    code = "inconsistent-profile"


class AlphabetTooLarge(CrosskitError):
    code = "alphabet-too-large"


class BadWord(CrosskitError):
    code = "bad-word"


class RegexSyntax(CrosskitError):
    code = "regex-syntax"

    def __init__(self, message, position):
        super().__init__(f"{message} at {position}")
        self.position = position


class SchemaError(CrosskitError):
    code = "schema"

    def __init__(self, message, path="$"):
        super().__init__(f"{path}: {message}")
        self.path = path
