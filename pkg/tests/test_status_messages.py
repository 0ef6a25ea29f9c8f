import pytest

from noncolliding.status_messages import (
    ContourEscalatedWarning,
    ErrorMessage,
    IllConditionedKernelWarning,
    MissingManifestError,
    WarningMessage,
)


def test_warning_from_code():
    warning = WarningMessage.from_code("contour-escalated")
    assert isinstance(warning, ContourEscalatedWarning)
    assert "warnings_and_errors.md#contour-escalated" in str(warning)


def test_error_from_code():
    error = ErrorMessage.from_code("missing-manifest")
    assert isinstance(error, MissingManifestError)
    assert error.detail == ""


@pytest.mark.parametrize("cls", [WarningMessage, ErrorMessage])
def test_unknown_code(cls):
    with pytest.raises(ValueError):
        cls.from_code("unknown-code")


def test_result_warnings():
    from noncolliding.modeling import BernoulliKernelResult

    result = BernoulliKernelResult(value=0.5, z_line_abscissa=0.5, w_pole_list=[0])
    assert not result.has_warnings
    result.add_warning(IllConditionedKernelWarning())
    assert result.has_warnings
    assert result.warnings[0].code == "ill-conditioned-kernel"
