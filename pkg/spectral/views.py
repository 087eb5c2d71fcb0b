import logging

from rest_framework import status
from rest_framework.permissions import AllowAny
from rest_framework.response import Response
from rest_framework.views import APIView

from .exceptions import SpectralError
from .serializers import Graph6InputSerializer, SpectralResultSerializer
from .services import compute_spectrum

logger = logging.getLogger(__name__)


class SpectrumView(APIView):
    permission_classes = [AllowAny]

    def post(self, request):
        serializer = Graph6InputSerializer(data=request.data)
        if not serializer.is_valid():
            return Response({"error": serializer.errors}, status=status.HTTP_400_BAD_REQUEST)

        g = serializer.validated_data['graph']
        try:
            result = compute_spectrum(g)
        except SpectralError as e:
            logger.error(f"Spectrum computation failed for {g}: {e}")
            return Response({"error": str(e)}, status=status.HTTP_422_UNPROCESSABLE_ENTITY)
        except Exception as e:
            logger.exception("Unexpected error in spectrum view")
            return Response({"error": str(e)}, status=status.HTTP_500_INTERNAL_SERVER_ERROR)

        logger.info(f"Spectrum of {g}: lambda1={result.lambda1:.12g} ({result.method})")
        return Response(SpectralResultSerializer(result).data)
