# verify/models.py
from django.db import models


class SweepRun(models.Model):
    """
    끝난 sweep 한 번의 기록 (sweep --save)
    - spec: SweepSpec 또는 상태 검사 설정 JSON
    - argmin / violations: SweepReport 와 같은 모양
    """
    family = models.CharField(max_length=20, db_index=True)
    spec = models.JSONField()
    points = models.PositiveIntegerField()
    min_margin = models.FloatField()
    argmin = models.JSONField()
    violations = models.JSONField(default=list)
    passed = models.BooleanField(default=True)
    created_at = models.DateTimeField(auto_now_add=True)

    class Meta:
        db_table = "verify_sweep_run"
        ordering = ("-created_at", "-id")

    def __str__(self):
        return f"{self.family} ({'ok' if self.passed else 'violated'})"
