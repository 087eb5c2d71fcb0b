import logging

from django.core.exceptions import ValidationError as DjangoValidationError
from rest_framework import status
from rest_framework.permissions import AllowAny
from rest_framework.response import Response
from rest_framework.views import APIView

from .exceptions import TheoremViolation
from .serializers import CertificateSerializer, CertifyInputSerializer
from .services import certify

logger = logging.getLogger(__name__)


class CertifyView(APIView):
    permission_classes = [AllowAny]

    def post(self, request):
        serializer = CertifyInputSerializer(data=request.data)
        if not serializer.is_valid():
            return Response({"error": serializer.errors}, status=status.HTTP_400_BAD_REQUEST)

        g = serializer.validated_data['graph']
        try:
            certificate = certify(g, serializer.validated_data.get('budget'))
        except DjangoValidationError as e:
            return Response({"error": e.messages}, status=status.HTTP_400_BAD_REQUEST)
        except TheoremViolation as e:
            logger.error(f"Theorem violation while certifying {g}: {e}")
            return Response({"error": str(e)}, status=status.HTTP_500_INTERNAL_SERVER_ERROR)
        except Exception as e:
            logger.exception("Unexpected error in certify view")
            return Response({"error": str(e)}, status=status.HTTP_500_INTERNAL_SERVER_ERROR)

        return Response(CertificateSerializer(certificate).data)
