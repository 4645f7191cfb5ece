"""Group model, quadrature, radial profiles and polar integration for HardyBench."""
