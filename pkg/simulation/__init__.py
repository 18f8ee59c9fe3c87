"""
Monte Carlo outage simulation over quasi-static Rayleigh fading.
"""
