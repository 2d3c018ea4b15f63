import os

VERSION = "0.1.0"
PROJECT_NAME = "tunnelgate"

log_level = os.getenv('TUNNELGATE_LOG_LEVEL', 'INFO').upper()
transparency_threshold = os.getenv('TUNNELGATE_TRANSPARENCY_THRESHOLD', '0.1')
diff_step = os.getenv('TUNNELGATE_DIFF_STEP', '1e-6')
diff_scheme = os.getenv('TUNNELGATE_DIFF_SCHEME', 'richardson4').lower()
phase_convention = os.getenv('TUNNELGATE_PHASE_CONVENTION', 'structure').lower()

try:
    TRANSPARENCY_THRESHOLD = float(transparency_threshold)
    DIFF_STEP = float(diff_step)
except ValueError:
    raise ValueError("TUNNELGATE_TRANSPARENCY_THRESHOLD and TUNNELGATE_DIFF_STEP have to be numbers.")

if TRANSPARENCY_THRESHOLD <= 0:
    raise ValueError("TUNNELGATE_TRANSPARENCY_THRESHOLD has to be positive.")
if not 1e-10 <= DIFF_STEP <= 1e-2:
    raise ValueError("TUNNELGATE_DIFF_STEP has to lie in [1e-10, 1e-2].")
if diff_scheme not in ('central2', 'richardson4'):
    raise ValueError("TUNNELGATE_DIFF_SCHEME has to be 'central2' or 'richardson4'.")
if phase_convention not in ('structure', 'gap', 'none'):
    raise ValueError("TUNNELGATE_PHASE_CONVENTION has to be 'structure', 'gap' or 'none'.")

DIFF_SCHEME = diff_scheme
# Frozen by oracle.differentiation.calibrate_convention: the closed-form phase time measures the phase over 2a+L.
PHASE_CONVENTION = phase_convention
LOG_LEVEL = log_level

# Below this Γ²+Δ² the exact phase time is reported as singular.
SINGULAR_DENOMINATOR_EPS = 1e-30
# Branch formulas assume an ultra-relativistic particle.
RELATIVISTIC_ENERGY_GATE = 10.0
