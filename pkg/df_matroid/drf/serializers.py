import dataclasses
from typing import Any, Dict, List, Optional

from rest_framework import serializers
from rest_framework.renderers import JSONRenderer

from ..decide import ContractionDecision, DeletionDecision
from ..formats import format_bipartite, format_digraph
from ..ground import ElementSet, HallViolation
from ..reports import Report
from ..settings import api_settings


class ElementSetField(serializers.Field):
    def to_representation(self, value: ElementSet) -> List[int]:
        return list(value)


class WitnessField(serializers.Field):
    """Flattens a witness dataclass; sets become index lists."""

    def to_representation(self, value: Any) -> Dict[str, Any]:
        data: Dict[str, Any] = {"kind": value.kind}
        for item in dataclasses.fields(value):
            if item.name == "kind":
                continue
            attribute = getattr(value, item.name)
            if isinstance(attribute, ElementSet):
                data[item.name] = list(attribute)
            elif isinstance(attribute, HallViolation):
                data["sets"] = list(attribute.indices)
                data["union"] = list(attribute.union)
            else:
                data[item.name] = attribute
        return data


class CyclicFlatSerializer(serializers.Serializer):
    flat = ElementSetField()
    rank = serializers.IntegerField()
    gamma = serializers.IntegerField(allow_null=True)


class CyclicFlatFamilySerializer(serializers.Serializer):
    ground_size = serializers.IntegerField()
    flats = CyclicFlatSerializer(many=True)


class DeletionTraceSerializer(serializers.Serializer):
    neighbourhoods = CyclicFlatFamilySerializer()
    first_joins = CyclicFlatFamilySerializer()
    second_joins = CyclicFlatFamilySerializer()
    candidates = CyclicFlatFamilySerializer(allow_null=True)
    positive = CyclicFlatFamilySerializer(allow_null=True)


class ReportSerializer(serializers.Serializer):
    command = serializers.CharField()
    input_digest = serializers.CharField()


class DeletionReportSerializer(ReportSerializer):
    element = serializers.IntegerField(source="subject.element")
    verdict = serializers.CharField(source="subject.verdict")
    trivial = serializers.CharField(source="subject.trivial", allow_null=True)
    labels = serializers.ListField(child=serializers.IntegerField(), source="subject.labels")
    witness = WitnessField(source="subject.witness", allow_null=True)
    trace = DeletionTraceSerializer(source="subject.trace", allow_null=True)
    representation = serializers.SerializerMethodField()

    def get_representation(self, report: Report) -> Optional[str]:
        decision: DeletionDecision = report.subject
        if decision.representation is None:
            return None
        return format_digraph(decision.representation)


class ContractionReportSerializer(ReportSerializer):
    element = serializers.IntegerField(source="subject.element")
    verdict = serializers.CharField(source="subject.verdict")
    trivial = serializers.CharField(source="subject.trivial", allow_null=True)
    labels = serializers.ListField(child=serializers.IntegerField(), source="subject.labels")
    witness = WitnessField(source="subject.witness", allow_null=True)
    normalized = serializers.SerializerMethodField()
    dual_trace = DeletionTraceSerializer(source="subject.dual_trace.trace", allow_null=True)
    presentation = serializers.SerializerMethodField()

    def get_normalized(self, report: Report) -> Optional[str]:
        decision: ContractionDecision = report.subject
        if decision.normalized is None:
            return None
        return format_bipartite(decision.normalized)

    def get_presentation(self, report: Report) -> Optional[str]:
        decision: ContractionDecision = report.subject
        if decision.presentation is None:
            return None
        return format_bipartite(decision.presentation)


class DigraphReportSerializer(ReportSerializer):
    arcs = serializers.SerializerMethodField()
    representation = serializers.SerializerMethodField()

    def get_arcs(self, report: Report) -> int:
        return len(report.subject.arcs)

    def get_representation(self, report: Report) -> str:
        return format_digraph(report.subject)


class FlatsReportSerializer(ReportSerializer):
    flats = CyclicFlatFamilySerializer(source="subject")
    total_gamma = serializers.IntegerField(source="subject.gamma_total")


class DualizeReportSerializer(ReportSerializer):
    output_format = serializers.CharField(source="subject.output_format")
    normalized_from = serializers.IntegerField(source="subject.normalized_from", allow_null=True)
    representation = serializers.CharField(source="subject.representation")


class TableEntrySerializer(serializers.Serializer):
    subset = ElementSetField()
    value = serializers.IntegerField()


class OracleReportSerializer(ReportSerializer):
    mode = serializers.CharField(source="subject.mode")
    ground_size = serializers.IntegerField(source="subject.ground_size")
    holds = serializers.BooleanField(source="subject.holds", allow_null=True)
    witness = ElementSetField(source="subject.witness", allow_null=True)
    value = serializers.IntegerField(source="subject.value", allow_null=True)
    flats = CyclicFlatFamilySerializer(source="subject.flats", allow_null=True)
    table = TableEntrySerializer(source="subject.table", many=True)


class FuzzReportSerializer(serializers.Serializer):
    command = serializers.CharField()
    kind = serializers.CharField(source="subject.kind")
    seed = serializers.IntegerField(source="subject.seed")
    count = serializers.IntegerField(source="subject.count")
    instances = serializers.IntegerField(source="subject.instances")
    checks = serializers.IntegerField(source="subject.checks")
    yes = serializers.IntegerField(source="subject.yes")
    no = serializers.IntegerField(source="subject.no")
    disagreements = serializers.ListField(source="subject.disagreements")
    pinned = serializers.CharField(source="subject.pinned", allow_null=True)


def render_report(data: Any) -> str:
    rendered = JSONRenderer().render(
        data, renderer_context={"indent": int(api_settings.REPORT_INDENT)}
    )
    return rendered.decode("utf-8") + "\n"
