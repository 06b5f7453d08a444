# verify/views.py
from rest_framework import status
from rest_framework.response import Response
from rest_framework.views import APIView

from states.services.errors import DomainError

from .models import SweepRun
from .serializers import RunQuerySerializer, SweepRunSerializer
from .services.families import Family

RECENT_RUNS = 100


def _fail(message: str, http_status=status.HTTP_400_BAD_REQUEST):
    return Response({
        "status": http_status,
        "success": False,
        "message": message,
        "data": None
    }, status=http_status)


class SweepRunListView(APIView):
    """
    GET /api/verify/runs/?family=lemma1&passed=true

    - 저장된 sweep 최근 100건, 최신순
    """
    def get(self, request):
        ser = RunQuerySerializer(data=request.query_params)
        if not ser.is_valid():
            return _fail(f"쿼리 파라미터 오류: {ser.errors}")

        qs = SweepRun.objects.all()
        family = ser.validated_data.get("family")
        if family:
            try:
                qs = qs.filter(family=Family.parse(family).value)
            except DomainError as e:
                return _fail(str(e))
        passed = ser.validated_data.get("passed")
        if passed is not None:
            qs = qs.filter(passed=passed)

        runs = SweepRunSerializer(qs[:RECENT_RUNS], many=True).data
        return Response({
            "status": status.HTTP_200_OK,
            "success": True,
            "message": "sweep 기록 조회 성공",
            "data": {"count": len(runs), "items": runs},
        }, status=status.HTTP_200_OK)
