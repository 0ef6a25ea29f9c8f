from pydantic import BaseModel

STATUS_DOCS_PAGE = "docs/tutorial/warnings_and_errors.md#{code}"


class _StatusMessage(BaseModel):
    """
    Base status message used for warnings or errors.

    Attributes:
        code: Status code.
        message: Message explaining the issue.
    """
    code: str
    message: str

    def __str__(self) -> str:
        return f"{self.message} See {STATUS_DOCS_PAGE.format(code=self.code)}"

    @classmethod
    def from_code(cls, code: str) -> "_StatusMessage":
        raise NotImplementedError("Should be called from WarningMessage or ErrorMessage.")


class WarningMessage(_StatusMessage):
    """
    Warning message attached to a numerical result.

    Attributes:
        code: Warning code.
        message: Warning message.
    """

    @classmethod
    def from_code(cls, code: str) -> "WarningMessage":
        if code in _warning_codes:
            return _warning_codes[code]()
        raise ValueError(f"Warning code `{code}` does not exist.")


class ErrorMessage(_StatusMessage):
    """
    Error record written by the command line interface.

    Attributes:
        code: Error code.
        message: Error message.
        detail: Text of the underlying exception, if any.
    """
    detail: str = ""

    @classmethod
    def from_code(cls, code: str) -> "ErrorMessage":
        if code in _error_codes:
            return _error_codes[code]()
        raise ValueError(f"Error code `{code}` does not exist.")


class IllConditionedKernelWarning(WarningMessage):
    code: str = "ill-conditioned-kernel"
    message: str = "The kernel integral cancels strongly, its absolute error estimate exceeds the tolerance."


class ContourEscalatedWarning(WarningMessage):
    code: str = "contour-escalated"
    message: str = "The z-line was moved away from its default abscissa to reduce cancellation."


class PrecisionEscalatedWarning(WarningMessage):
    code: str = "precision-escalated"
    message: str = "The kernel was re-evaluated in extended precision."


class FloatSamplerFallbackWarning(WarningMessage):
    code: str = "float-sampler-fallback"
    message: str = "The floating point transition sampler disagreed with its cross-check, exact arithmetic was used."


class InvalidScenarioError(ErrorMessage):
    code: str = "invalid-scenario"
    message: str = "The scenario configuration is invalid."


class NumericalFailureError(ErrorMessage):
    code: str = "numerical-failure"
    message: str = "A numerical method failed while running the scenario."


class MissingManifestError(ErrorMessage):
    code: str = "missing-manifest"
    message: str = "The artifact directory does not contain a manifest."


_warning_codes: dict[str, type[WarningMessage]] = {
    "ill-conditioned-kernel": IllConditionedKernelWarning,
    "contour-escalated": ContourEscalatedWarning,
    "precision-escalated": PrecisionEscalatedWarning,
    "float-sampler-fallback": FloatSamplerFallbackWarning,
}

_error_codes: dict[str, type[ErrorMessage]] = {
    "invalid-scenario": InvalidScenarioError,
    "numerical-failure": NumericalFailureError,
    "missing-manifest": MissingManifestError,
}
