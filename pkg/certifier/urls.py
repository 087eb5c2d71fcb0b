from django.urls import path
from .views import CertifyView

urlpatterns = [
    path('', CertifyView.as_view(), name='certify'),
]
