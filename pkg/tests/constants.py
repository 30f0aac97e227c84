import math

SEED = 12345

# two qubit pairs with lambda0 = 0.7 and 0.6: 4 sqrt(0.21 * 0.24)
PRODUCT_RULE_VALUE = 0.8979978
# three pairs 0.7:0.3
CHAIN_VALUE = (2 * math.sqrt(0.21)) ** 3

INPUT_THRESHOLD = 2 / 3
OUTPUT_THRESHOLD = 1 - 1 / math.sqrt(3)  # 0.4226497...

# depolarized qubits at p = 0.2, lambda0 = 0.5
NOISY_P = 0.2
NOISY_PROBABILITY = 0.25
NOISY_CONCURRENCE = 0.46
NOISY_RATIO = 0.46 / 0.7 ** 2

INPUT_HALF_WIDTH_P05 = 0.4330127
PHI_HALF_WIDTH_P03 = 0.34626

BLOCK_EXACT = {2: 0.5, 3: 0.82934, 10: 1.257799}
BLOCK_BOUNDS = {3: (0.62854, 0.93884), 10: (1.14551, 1.27277)}

SMALL_EPS_DELTA = 0.025658
SMALL_EPS_BOUND = 0.7433624

Q_N3 = {0.5: 0.334558, 0.6: 0.520092}

PLUGIN_SUITE_NAME = "plugin_suite"
