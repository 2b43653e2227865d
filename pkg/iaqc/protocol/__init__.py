"""K06 and iAQC round engines, sessions and the photon ledger."""
