from django.urls import path

from .views import SweepRunListView

urlpatterns = [
    path("verify/runs/", SweepRunListView.as_view()),
]
