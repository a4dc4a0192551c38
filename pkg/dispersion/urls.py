# django imports
from django.urls import path, include
from rest_framework.routers import DefaultRouter

# in-app imports
from dispersion.views import (
    EvaluationViewSet,
    FigureViewSet,
)


router = DefaultRouter()
router.register(r'evaluations', EvaluationViewSet, basename='evaluations')


urlpatterns = [
    path('', include(router.urls)),
    path('figures/<str:name>/', FigureViewSet.as_view({'get': 'retrieve'}), name='figure-detail'),
]
