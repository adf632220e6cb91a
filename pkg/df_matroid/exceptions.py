from typing import Any, Dict, Optional

from django.utils.translation import gettext_lazy as _
from rest_framework import status
from rest_framework.exceptions import APIException, ValidationError


class DfMatroidValidationError(ValidationError):
    """
    This is a base exception for malformed matroid input
    """

    status_code = status.HTTP_400_BAD_REQUEST
    default_detail = _("Invalid matroid input")


class GroundSizeError(DfMatroidValidationError):
    """
    This exception is used when a ground set exceeds the supported size
    """

    default_detail = _("Ground sets are limited to 64 elements")
    default_code = "ground_size"


class ElementOutOfRangeError(DfMatroidValidationError):
    """
    This exception is used when an element index is outside the ground set
    """

    default_detail = _("Element index out of range")
    default_code = "element_out_of_range"


class InputFormatError(DfMatroidValidationError):
    """
    This exception is used when an input file cannot be parsed
    """

    default_detail = _("Malformed input file")
    default_code = "input_format"

    def __init__(self, detail: Optional[str] = None, line: Optional[int] = None):
        self.line = line
        if detail is not None and line is not None:
            detail = f"line {line}: {detail}"
        super().__init__(detail)


class InvalidPresentationError(DfMatroidValidationError):
    """
    This exception is used when a family or set system is inconsistent with itself
    """

    default_detail = _("Inconsistent presentation")
    default_code = "invalid_presentation"


class CyclicFlatAxiomError(DfMatroidValidationError):
    """
    This exception is used when a family of sets fails the cyclic flat axioms
    """

    default_detail = _("Family is not the cyclic flat lattice of a matroid")
    default_code = "cyclic_flat_axiom"

    def __init__(self, detail: Optional[str] = None, report: Any = None):
        self.report = report
        super().__init__(detail)


class DfMatroidError(APIException):
    """
    This is a base exception for refusals carrying a machine-readable payload
    """

    status_code = status.HTTP_422_UNPROCESSABLE_ENTITY
    default_detail = _("Matroid computation refused")
    default_code = "matroid_error"

    def __init__(
        self,
        detail: Optional[str] = None,
        code: Optional[str] = None,
        extra_data: Optional[Dict[str, Any]] = None,
    ):
        super().__init__(detail, code)
        self.extra_data = extra_data or {}


class OracleLimitExceeded(DfMatroidError):
    """
    This exception is used when an exhaustive oracle is asked for a ground set
    above the configured limit
    """

    default_detail = _("Ground set too large for exhaustive enumeration")
    default_code = "oracle_limit_exceeded"


class NoTransversalError(DfMatroidError):
    """
    This exception is used when a set system has no transversal
    """

    default_detail = _("Set system has no transversal")
    default_code = "no_transversal"


class BoundExceededError(DfMatroidError):
    default_detail = _("Total multiplicity exceeds the number of elements")
    default_code = "bound_exceeded"


class NormalizationFailed(DfMatroidError):
    default_detail = _("Could not reduce the presentation to rank many sets")
    default_code = "normalization_failed"
