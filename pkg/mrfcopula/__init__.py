"""
@fileoverview MRF copula family with gamma (Clayton) frailties: evaluation,
              sampling, simultaneous default, Spearman's rho and tail
              dependence.
@filepath mrfcopula/__init__.py
"""
