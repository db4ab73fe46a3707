from celery import shared_task
from loguru import logger

from common.exceptions import InfeasibleProblem, LpSensError, UnboundedProblem
from .serializers import report_to_dict
from .services import analyze_file


@shared_task
def analyze_problem_file(path: str, options: dict) -> dict:
    """Analyze one input file; failures come back as an error payload instead of raising."""
    try:
        document = analyze_file(path, options)
        logger.info(f'analyzed {path}: d_w={document.d_w} ({document.grade})')
        return {'status': 'success', 'path': path, 'report': report_to_dict(document)}

    except (InfeasibleProblem, UnboundedProblem) as exc:
        logger.error(f'{path}: {exc.detail}')
        return {'status': 'error', 'path': path, 'error': exc.detail, 'returncode': 2}

    except (LpSensError, ValueError, OSError) as exc:
        logger.error(f'Error analyzing {path}: {exc}')
        return {'status': 'error', 'path': path, 'error': str(exc), 'returncode': 1}
