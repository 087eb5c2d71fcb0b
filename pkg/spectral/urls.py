from django.urls import path
from .views import SpectrumView

urlpatterns = [
    path('', SpectrumView.as_view(), name='spectrum'),
]
