"""
Unit tests for command dispatch.

Tests cover:
- Result shapes of every command kind
- Argument checks (widths, rational coefficients, field selection)
- The success and error envelopes built by respond()
"""

from fractions import Fraction

import pytest
from pydantic import ValidationError

from app.core.enums import FieldKind
from app.core.exceptions import (
    InvalidArgumentError,
    NegativeRadicandError,
    ParseError,
    UltrafilterDependentError,
)
from app.schemas.command_schema import (
    ClassifyCommand,
    CompareCommand,
    CountRootsCommand,
    CutClassifyCommand,
    HyperIvtCommand,
    IsolateRootsCommand,
    IvtRootCommand,
    OddRootCommand,
    ShadowCommand,
    SqrtCommand,
    command_adapter,
)
from app.services.command_service import execute, respond


@pytest.mark.unit
class TestExecute:
    def test_isolate(self):
        result = execute(IsolateRootsCommand(poly="x^3 - x"))
        assert result == {
            "roots": [
                {"defining": "x^3 - x", "kind": "exact_root", "lo": v, "hi": v}
                for v in ("-1", "0", "1")
            ]
        }

    def test_isolate_without_real_roots(self):
        assert execute(IsolateRootsCommand(poly="x^2 + 1")) == {"roots": []}

    def test_isolate_refined_to_width(self):
        result = execute(IsolateRootsCommand(poly="x^2 - 2", width="1/1000"))
        assert len(result["roots"]) == 2
        for root in result["roots"]:
            assert root["kind"] == "sign_change"
            assert Fraction(root["hi"]) - Fraction(root["lo"]) <= Fraction(1, 1000)

    def test_count(self):
        assert execute(CountRootsCommand(poly="x^3 - x", lo="-2", hi="2")) == {"count": 3}

    def test_ivt_root_exact(self):
        result = execute(IvtRootCommand(poly="x^2 - 1/4", a="0", b="1"))
        assert result == {"kind": "exact_root", "lo": "1/2", "hi": "1/2"}

    def test_ivt_root_bracket(self):
        result = execute(IvtRootCommand(poly="x^2 - 2", a="0", b="2", width="1/64"))
        lo, hi = Fraction(result["lo"]), Fraction(result["hi"])
        assert result["kind"] == "sign_change"
        assert lo * lo < 2 < hi * hi
        assert hi - lo <= Fraction(1, 64)

    def test_odd_root(self):
        result = execute(OddRootCommand(poly="x"))
        assert result == {"defining": "x", "kind": "exact_root", "lo": "0", "hi": "0"}

    def test_sqrt(self):
        result = execute(SqrtCommand(q="9/4"))
        assert result == {"defining": "x^2 - 9/4", "kind": "exact_root", "lo": "3/2", "hi": "3/2"}

    def test_classify(self):
        result = execute(ClassifyCommand(element="1/w"))
        assert result == {"classification": "infinitesimal", "label": "infinitesimal (nonzero)"}

    def test_classify_sequence(self):
        result = execute(ClassifyCommand(element="alt{1/n; -1/n^2}"))
        assert result["classification"] == "infinitesimal"

    def test_shadow(self):
        assert execute(ShadowCommand(element="(3*w+1)/(w+2)")) == {"shadow": "3"}

    def test_compare(self):
        assert execute(CompareCommand(left="w", right="1000000000")) == {"ordering": "greater"}

    def test_compare_element_with_sequence(self):
        assert execute(CompareCommand(left="1/w", right="1/n^2")) == {"ordering": "greater"}

    def test_cut_classify(self):
        result = execute(CutClassifyCommand(poly="x^2 - 2", lo="0", hi="2"))
        assert result["cut"] == "gap"
        assert result["root"]["defining"] == "x^2 - 2"

    def test_hyper_ivt(self):
        result = execute(HyperIvtCommand(poly="x - 1/w", a="-1", b="1", levels=4))
        assert result["residual"] == "zero"
        assert result["residual_source"] == "exact"
        assert result["root"] == "1/w"
        assert [level["level"] for level in result["levels"]] == [2, 4, 8, 16]
        assert result["skipped"] == []


@pytest.mark.unit
class TestArguments:
    def test_nonpositive_width(self):
        with pytest.raises(InvalidArgumentError, match="positive"):
            execute(SqrtCommand(q="2", width="0"))

    def test_malformed_width(self):
        with pytest.raises(ParseError):
            execute(SqrtCommand(q="2", width="tiny"))

    def test_qw_polynomial_with_rational_coefficients(self):
        result = execute(CountRootsCommand(poly="x^2 - 2", lo="0", hi="2", field=FieldKind.QW))
        assert result == {"count": 1}

    def test_qw_polynomial_with_w_coefficients(self):
        with pytest.raises(InvalidArgumentError, match="outside Q"):
            execute(CountRootsCommand(poly="x - w", lo="0", hi="2", field=FieldKind.QW))

    def test_sequence_and_element_mixed(self):
        with pytest.raises(ParseError, match="mixes"):
            execute(ClassifyCommand(element="n + w"))

    def test_negative_radicand(self):
        with pytest.raises(NegativeRadicandError):
            execute(SqrtCommand(q="-1"))

    def test_ultrafilter_dependent(self):
        with pytest.raises(UltrafilterDependentError):
            execute(CompareCommand(left="alt{-1; 1}", right="0"))


@pytest.mark.unit
class TestSchema:
    def test_discriminator(self):
        command = command_adapter.validate_python({"kind": "sqrt", "q": "2"})
        assert isinstance(command, SqrtCommand)
        assert command.field is FieldKind.Q

    def test_hyper_ivt_defaults_to_qw(self):
        command = command_adapter.validate_python({"kind": "hyper-ivt", "poly": "x", "a": "0", "b": "1"})
        assert command.field is FieldKind.QW

    @pytest.mark.parametrize(
        "payload",
        [
            {"kind": "factor", "poly": "x"},
            {"kind": "isolate", "poly": ""},
            {"kind": "isolate", "poly": "x", "grid": 1},
            {"kind": "hyper-ivt", "poly": "x", "a": "0", "b": "1", "levels": 0},
            {"kind": "hyper-ivt", "poly": "x", "a": "0", "b": "1", "levels": 257},
        ],
    )
    def test_rejected(self, payload: dict):
        with pytest.raises(ValidationError):
            command_adapter.validate_python(payload)


@pytest.mark.unit
class TestRespond:
    def test_success_envelope(self):
        response, error = respond(ClassifyCommand(element="1/w"), "cli")
        assert error is None
        assert response.model_dump() == {
            "command": "classify",
            "status": "success",
            "result": {"classification": "infinitesimal", "label": "infinitesimal (nonzero)"},
            "error_code": None,
            "error_message": None,
        }

    def test_error_envelope(self):
        response, error = respond(SqrtCommand(q="-1"), "api")
        assert isinstance(error, NegativeRadicandError)
        assert response.status == "error"
        assert response.result is None
        assert response.error_code == "negative_radicand"
        assert response.error_message == "-1 has no real square root"
