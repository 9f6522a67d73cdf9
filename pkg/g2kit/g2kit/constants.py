import math

# Tolerance hierarchy for the float backend, loosest last.
EQUALITY_TOL = 1e-9
RESIDUAL_TOL = 1e-8
SPECTRUM_TOL = 1e-7
AMBIGUOUS_BAND = 1e-6

# Roots closer than this are re-checked as a possible repeated eigenvalue.
CLUSTER_RADIUS = 1e-4
NEWTON_STEPS = 1

SERIES_CUTOFF = 1e-16
SCALING_TARGET = 0.5

COMPACT_PARAMS = (-1, -1, -1)
DIMENSION = 8
DER_DIMENSION = 14

# Standing choices for the compact preset: L = span{1, e1}, a = e2, b = e4.
DEFAULT_GAMMA_INDEX = 1
DEFAULT_A_INDEX = 2
DEFAULT_B_INDEX = 4

DEFAULT_THETA = 2 * math.pi / 5
DEFAULT_PHI = 2 * math.pi / 7

DEFAULT_SEED = 0
DEFAULT_AXIOM_TRIALS = 1000
DEFAULT_SAMPLE_TRIALS = 100
DEFAULT_VERIFY_TRIALS = 200
DEFAULT_INVOLUTION_TRIALS = 50
SAMPLER_FACTORS = 3
GENERIC_FRACTION = 0.99

DEFAULT_RP_POINT = ("3/5", "4/5")

SCHEMA_VERSION = 1
TOLERANCE_ENV_VAR = "G2KIT_TOLERANCE"

# xorshift64* (Vigna): shifts 12, 25, 27 and the output multiplier.
XORSHIFT_SHIFTS = (12, 25, 27)
XORSHIFT_MULTIPLIER = 0x2545F4914F6CDD1D
SPLITMIX_GAMMA = 0x9E3779B97F4A7C15
SPLITMIX_MIX1 = 0xBF58476D1CE4E5B9
SPLITMIX_MIX2 = 0x94D049BB133111EB
MASK64 = (1 << 64) - 1
