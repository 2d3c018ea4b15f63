from .superluminal import CurvePoint, RatioPoint, RegionVerdict, Verdict, cardano_critical_beta_b, classify, \
    classify_system, critical_beta, gain_threshold_beta, threshold_curve, time_gain, traversal_velocity
