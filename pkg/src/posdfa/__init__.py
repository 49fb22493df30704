"""Learning DFAs from positive samples."""
