# reports/views.py
from pydantic import ValidationError
from rest_framework import status
from rest_framework.response import Response
from rest_framework.views import APIView

from states.services.errors import EntlabError
from states.services.io import parse_state

from .serializers import EvaluateSerializer, ExampleRowSerializer
from .services.constants import EXAMPLES
from .services.evaluate import evaluate_state
from .services.examples import run_example


# 공통 에러 응답
def _fail(message: str, http_status=status.HTTP_400_BAD_REQUEST):
    return Response({
        "status": http_status,
        "success": False,
        "message": message,
        "data": None
    }, status=http_status)


def _ok(message: str, data):
    return Response({
        "status": status.HTTP_200_OK,
        "success": True,
        "message": message,
        "data": data,
    }, status=status.HTTP_200_OK)


class ExampleView(APIView):
    """
    GET /api/reports/examples/<which>/

    - example 커맨드와 같은 표 (값, 기준값, 차이)
    """
    def get(self, request, which: int):
        if which not in EXAMPLES:
            return _fail(f"예제 {which} 는 없습니다 (1–3)", status.HTTP_404_NOT_FOUND)
        measure, index, _ = EXAMPLES[which]
        rows = run_example(which)
        return _ok(f"예제 {which} 계산 완료", {
            "which": which,
            "measure": measure,
            "index": index,
            "rows": ExampleRowSerializer(rows, many=True).data,
            "passed": all(r.ok for r in rows),
        })


class EvaluateView(APIView):
    """
    POST /api/reports/evaluate/
    body: {state: {n_qubits, amplitudes}, measure, index, exponent, pivot?}
    """
    def post(self, request):
        ser = EvaluateSerializer(data=request.data)
        if not ser.is_valid():
            return _fail(f"요청 형식 오류: {ser.errors}")
        data = ser.validated_data
        try:
            state = parse_state(data["state"])
            result = evaluate_state(state, data["measure"], data["index"], data["exponent"], pivot=data["pivot"])
        except (EntlabError, ValidationError) as e:
            return _fail(str(e))
        return _ok("평가 완료", result)
