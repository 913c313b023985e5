"""
liegal – Configuration
"""
import os

# ── Enumeration limits ───────────────────────────────────────────────────────
CANDIDATE_BUDGET = int(os.getenv("LIEGAL_CANDIDATE_BUDGET", str(2**24)))
CLOSURE_CAP = int(os.getenv("LIEGAL_CLOSURE_CAP", "20000"))

# ── Worker pool ──────────────────────────────────────────────────────────────
WORKERS = int(os.getenv("LIEGAL_WORKERS", "1"))
BATCH_SIZE = int(os.getenv("LIEGAL_BATCH_SIZE", "2048"))

# int64 kernels stay exact while dim * p^2 fits; larger primes use Python ints
NUMPY_PRIME_LIMIT = 2**24

# ── Defaults ─────────────────────────────────────────────────────────────────
DEFAULT_FIELD = os.getenv("LIEGAL_DEFAULT_FIELD", "Q")
LOG_LEVEL = os.getenv("LIEGAL_LOG_LEVEL", "INFO").upper()
