class TunnelingError(ValueError):
    """
    Base class of every domain error raised by tunnelgate.

    Subclasses ValueError so that pydantic validators turn it into a regular ValidationError.

    Attributes:
        code (str): Stable machine-parseable reason, reported by the CLI and the HTTP surface.
    """
    code = "tunneling_error"


class EnergyBelowRest(TunnelingError):
    """Raised when E <= mc^2, i.e. the particle does not propagate outside the barriers."""
    code = "energy_below_rest"


class KleinRegime(TunnelingError):
    """Raised when V0 >= E + mc^2 (supercritical barrier)."""
    code = "klein_regime"


class Propagating(TunnelingError):
    """Raised when V0 <= E - mc^2, the particle passes over the barrier."""
    code = "propagating"


class SingularDenominator(TunnelingError):
    code = "singular_denominator"


class IllConditioned(TunnelingError):
    code = "ill_conditioned"


class StencilOutOfRegime(TunnelingError):
    code = "stencil_out_of_regime"


class NoisyDerivative(TunnelingError):
    code = "noisy_derivative"


class BranchDegenerate(TunnelingError):
    code = "branch_degenerate"


class WrongBranch(TunnelingError):
    code = "wrong_branch"


class ZeroPath(TunnelingError):
    code = "zero_path"
