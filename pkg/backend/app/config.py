"""
Configuration for Polylink
==========================
Search caps, seeds and service settings, overridable from the environment or a .env file.
"""

import os
from dotenv import load_dotenv

load_dotenv()

# =============================================================================
# DETERMINISM
# =============================================================================

DEFAULT_SEED = int(os.getenv("POLYLINK_SEED", "0"))

# =============================================================================
# VERIFIED SEARCH CAPS
# =============================================================================

# Halvings allowed in any "sufficiently small epsilon" search
HALVING_CAP = int(os.getenv("POLYLINK_HALVING_CAP", "256"))
# Doublings allowed in any "sufficiently large lambda" search
DOUBLING_CAP = int(os.getenv("POLYLINK_DOUBLING_CAP", "64"))

# =============================================================================
# ORACLE CONFIGURATION
# =============================================================================

ORACLE_MAX_N = int(os.getenv("POLYLINK_ORACLE_MAX_N", "16"))
BOX_FACTOR = int(os.getenv("POLYLINK_BOX_FACTOR", "4"))
# Exterior answers must survive this many consecutive box doublings
STABLE_DOUBLINGS = 2

# =============================================================================
# CACHES AND LIMITS
# =============================================================================

# Polygons kept parsed, with their classifier contexts and wedge directions
CACHE_SIZE = int(os.getenv("POLYLINK_CACHE_SIZE", "64"))
# Sampled pairs per component when verifying an extremal polygon; 0 skips the bound check
VERIFY_BUDGET = int(os.getenv("POLYLINK_VERIFY_BUDGET", "8"))
# Largest spiral the API will generate
SPIRAL_MAX_N = int(os.getenv("POLYLINK_SPIRAL_MAX_N", "200"))

# =============================================================================
# OUTPUT CONFIGURATION
# =============================================================================

SVG_DIGITS = int(os.getenv("POLYLINK_SVG_DIGITS", "12"))
LOG_LEVEL = os.getenv("LOG_LEVEL", "WARNING").upper()

# =============================================================================
# API CONFIGURATION
# =============================================================================

API_HOST = os.getenv("API_HOST", "0.0.0.0")
API_PORT = int(os.getenv("PORT", os.getenv("API_PORT", "8000")))
CORS_ORIGINS = os.getenv("CORS_ORIGINS", "http://localhost:3000,http://localhost:8000").split(",")
