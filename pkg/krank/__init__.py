"""
krank: exact partition rank/crank counts and their asymptotics

Computes p(n) and Garvan's k-rank counts N_k(m, n) exactly from a cached
partition table, evaluates the asymptotic estimators and error bounds for
them, and checks one against the other.

This package provides:
- Exact engine with an independent q-series oracle (krank.engine)
- Signed log-domain arithmetic (krank.logdomain)
- Asymptotic estimators and bounds (krank.asymptotics)
- Sweep harness, table cache and acceptance suite
- Command-line front end (krank)
"""

__version__ = "1.0.0"
