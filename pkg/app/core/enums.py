try:
    from enum import StrEnum
except ImportError:  # Python < 3.11
    from enum import Enum

    class StrEnum(str, Enum):  # type: ignore[no-redef]
        def __str__(self) -> str:
            return str.__str__(self)

        def __format__(self, format_spec: str) -> str:
            return str.__format__(str(self), format_spec)


class Environment(StrEnum):
    """
    Application environments - short form for ease of use.

    Values:
        LOCAL: Local development machine
        DEV: Development server
        STAGE: Staging/QA environment
        PROD: Production environment
    """

    LOCAL = "local"
    DEV = "dev"
    STAGE = "stage"
    PROD = "prod"

    @classmethod
    def from_string(cls, value: str) -> "Environment":
        """
        Parse environment from string (case-insensitive).

        Raises:
            ValueError: If value is not a valid environment
        """
        value_lower = value.lower().strip()

        mapping = {
            "local": cls.LOCAL,
            "dev": cls.DEV,
            "development": cls.DEV,
            "stage": cls.STAGE,
            "staging": cls.STAGE,
            "prod": cls.PROD,
            "production": cls.PROD,
        }

        if value_lower not in mapping:
            valid_values = ", ".join(e.value for e in cls)
            raise ValueError(
                f"Invalid environment '{value}'. Must be one of: {valid_values}"
            )

        return mapping[value_lower]


class Ordering(StrEnum):
    """Outcome of a three-way comparison."""

    LESS = "less"
    EQUAL = "equal"
    GREATER = "greater"

    @classmethod
    def from_sign(cls, sign: int) -> "Ordering":
        if sign < 0:
            return cls.LESS
        if sign > 0:
            return cls.GREATER
        return cls.EQUAL


class Classification(StrEnum):
    """
    Magnitude class of an element of a non-Archimedean extension.

    ZERO and INFINITESIMAL together make up the infinitesimals; adding
    APPRECIABLE gives the limited elements; INFINITE is everything else.
    """

    ZERO = "zero"
    INFINITESIMAL = "infinitesimal"
    APPRECIABLE = "appreciable"
    INFINITE = "infinite"

    @property
    def is_infinitesimal(self) -> bool:
        return self in (Classification.ZERO, Classification.INFINITESIMAL)

    @property
    def is_limited(self) -> bool:
        return self is not Classification.INFINITE

    @property
    def label(self) -> str:
        return {
            Classification.ZERO: "zero",
            Classification.INFINITESIMAL: "infinitesimal (nonzero)",
            Classification.APPRECIABLE: "appreciable",
            Classification.INFINITE: "infinite",
        }[self]


class IntervalKind(StrEnum):
    EXACT_ROOT = "exact_root"
    SIGN_CHANGE = "sign_change"


class CutKind(StrEnum):
    """The four shapes a Dedekind cut (L, U) can take."""

    JUMP = "jump"
    GAP = "gap"
    MAX_IN_LOWER = "max_in_lower"
    MIN_IN_UPPER = "min_in_upper"


class FieldKind(StrEnum):
    """Coefficient field of a parsed polynomial: Q, or Q(w)."""

    Q = "q"
    QW = "qw"


class ResidualSource(StrEnum):
    """How the residual verdict of a hyper-IVT run was obtained."""

    EXACT = "exact"
    FITTED = "fitted"
    BOUND = "bound"
