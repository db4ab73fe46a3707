from typing import Optional

from django.conf import settings

from shared.arithmetic.interfaces import IScalarBackend


class ScalarBackendFactory:
    @staticmethod
    def create_backend(backend: Optional[str] = None) -> IScalarBackend:
        backend = backend or getattr(settings, 'LPSENS_BACKEND', 'float')
        if backend == 'float':
            from shared.arithmetic.float_backend import FloatBackend
            return FloatBackend()
        if backend == 'rational':
            from shared.arithmetic.rational_backend import RationalBackend
            return RationalBackend()

        raise ValueError(f"Unsupported scalar backend: {backend}")
