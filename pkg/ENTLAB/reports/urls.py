from django.urls import path

from .views import EvaluateView, ExampleView

urlpatterns = [
    path("reports/examples/<int:which>/", ExampleView.as_view()),
    path("reports/evaluate/", EvaluateView.as_view()),
]
