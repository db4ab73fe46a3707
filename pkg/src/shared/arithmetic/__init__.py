from shared.arithmetic.factory import ScalarBackendFactory
from shared.arithmetic.interfaces import IScalarBackend, Scalar

__all__ = [
    'IScalarBackend',
    'Scalar',
    'ScalarBackendFactory',
]
