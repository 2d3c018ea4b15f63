from .transparent import ExpansionResult, expansion_first_order, phase_time_branch_a, phase_time_branch_b, \
    phase_time_first_order, potential_for_q
