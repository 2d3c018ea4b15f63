phase_time_sample_request = {
        "json_schema_extra": {
            "examples": [
                {
                    "mass": 1.0,
                    "energy": 5.0,
                    "potential": 5.5,
                    "width": 0.05,
                    "gap": 10.0,
                    "units": "natural"
                }
            ]
        }
    }

curve_sample_request = {
        "json_schema_extra": {
            "examples": [
                {
                    "branches": ["A", "B"],
                    "beta_min": 0.87,
                    "beta_max": 0.99,
                    "samples": 5
                }
            ]
        }
    }

phase_time_sample_response = {
        200: {
            "description": "Phase times computed",
            "content": {
                "application/json": {
                    "example": {
                        "energy": 5.0,
                        "potential": 5.5,
                        "mass": 1.0,
                        "width": 0.05,
                        "gap": 10.0,
                        "units": "natural",
                        "k": 4.898979485566356,
                        "q": 0.8660254037844386,
                        "qa": 0.04330127018922193,
                        "branch": "A",
                        "tau_exact": 10.3129,
                        "tau_branch": 10.261491,
                        "tau_free": 10.308269,
                        "time_gain": 0.046778,
                        "traversal_velocity": 0.984242,
                        "verdict": "Subluminal"
                    }
                }
            }
        },
        409: {
            "description": "Exact phase time is numerically singular",
            "content": {
                "application/json": {
                    "example": {
                        "detail": "singular_denominator: Gamma^2 + Delta^2 = 1.2e-31 is below 1e-30"
                    }
                }
            }
        }
    }

curve_sample_response = {
        200: {
            "description": "Threshold curve sampled",
            "content": {
                "application/json": {
                    "example": [
                        {"branch": "A", "beta": 0.9, "alpha_ratio": 0.36, "feasible": True},
                        {"branch": "A", "beta": 0.5, "alpha_ratio": -0.14285714285714285, "feasible": False}
                    ]
                }
            }
        }
    }

thresholds_sample_response = {
        200: {
            "description": "Critical velocities",
            "content": {
                "application/json": {
                    "example": {
                        "critical_beta_a": 0.8633249580710799,
                        "critical_beta_b": 0.7709169970592481,
                        "gain_threshold_beta": 0.816496580927726
                    }
                }
            }
        }
    }
