"""
URL configuration for the boundary_qbm project.

Only the read-only dispersion API is mounted; there is no admin site.
"""
from django.urls import path, include


urlpatterns = [
    path('', include('dispersion.urls')),
]
