# verify/admin.py
from django.contrib import admin

from .models import SweepRun


@admin.register(SweepRun)
class SweepRunAdmin(admin.ModelAdmin):
    list_display = ("family", "points", "min_margin", "passed", "created_at")
    list_filter = ("passed",)
    search_fields = ("family",)
