"""
URL configuration for the Spectre Hamiltonien project.
"""
from django.urls import path, include

urlpatterns = [
    path('api/certify/', include('certifier.urls')),
    path('api/spectrum/', include('spectral.urls')),
]
