"""
Environment-driven configuration.

Values are read from the process environment, optionally seeded from a
``.env`` file in the backend directory. Every key has a default so the
toolkit runs without any configuration.
"""

import os
from pathlib import Path
from dotenv import load_dotenv

# Get the path to the .env file (one directory up from this package)
env_path = Path(__file__).parent.parent / '.env'

# Load environment variables from .env file, if present
load_dotenv(dotenv_path=env_path)

LOG_LEVEL = os.getenv('TVR_LOG_LEVEL', 'INFO').upper()
LOG_FILE = os.getenv('TVR_LOG_FILE')
LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'

# scipy.fft worker threads; results do not depend on this value
FFT_WORKERS = int(os.getenv('TVR_FFT_WORKERS', '1'))

# Iteration budgets (m_max = 200 and eps_tol = 1e-6 for the denoiser)
MAX_ITERS = int(os.getenv('TVR_MAX_ITERS', '200'))
TOL = float(os.getenv('TVR_TOL', '1e-6'))
INNER_ITERS = int(os.getenv('TVR_INNER_ITERS', '10'))
OUTER_ITERS = int(os.getenv('TVR_OUTER_ITERS', '100'))
