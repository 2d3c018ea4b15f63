from .appendix import AppendixTerms, appendix_terms, free_time, phase_time_exact
