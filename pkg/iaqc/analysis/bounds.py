"""Closed-form photon budgets for an eavesdropper on the three-pass protocol."""
import math

from iaqc.errors import check_range


def min_photons_info_bound(s):
    """Information-theoretic floor on Eve's siphoned photons: ceil(3 * log2 s).

    Distinguishing s angles needs log2 s photons per pass and Eve needs all
    three passes. Non-integer values round up since photons are discrete.
    """
    check_range('s', s, 2, None)
    # 3*log2(s) is an exact integer for powers of two; guard against 9.000000000000002
    return int(math.ceil(round(3 * math.log2(s), 9)))


def detector_bank_budget(s):
    """Photons Eve needs with one detector per candidate angle, and the safe source size.

    Returns:
        tuple: (3s photons siphoned by Eve, 6s source intensity that a
        factor-of-two intensity detector still protects)
    """
    check_range('s', s, 2, None)
    return 3 * s, 6 * s


def siphon_budget(m):
    """Eve's total siphon 3m for m photons per pass, and the 6m source it halves."""
    check_range('m', m, 1, None)
    return 3 * m, 6 * m
