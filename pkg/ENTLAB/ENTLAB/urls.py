"""
URL configuration for ENTLAB project.

계산 자체는 management command 가 주 경로이고, 여기서는 같은 서비스를
JSON API 로도 노출한다.
"""
from django.contrib import admin
from django.urls import path, include

urlpatterns = [
    path("admin/", admin.site.urls),
    path("api/", include("reports.urls")),
    path("api/", include("verify.urls")),
]
