"""Parameter domains of the disk family.

The family index n >= 2 fixes a pinched strip in the (x, y) plane: for
x > 0 the half-width is (x^2 + n^-2)^(5/4) / 4, and for x <= 0 it is the
constant b = 1 / (4 n^(5/2)).  The two branches agree at x = 0, so the width
function is continuous.  The angle-potential rate has poles at
-k/n +- i/n (0 <= k <= n), all strictly outside the closed strip.

Membership is closed (boundary included) so that boundary traces of the
immersion are evaluable.  Because the strip pinches like n^(-5/2), grids use
the normalised transverse coordinate eta in [-1, 1] with y = eta * width(x).
"""

from dataclasses import dataclass

X_MIN = -0.5
X_MAX = 0.5


class DomainRangeError(ValueError):
    """Argument outside the closed parameter strip."""


@dataclass(frozen=True)
class DomainSpec:
    """One member of the family, indexed by the integer n >= 2."""

    n: int

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 2:
            raise DomainRangeError(f"family index must be an integer >= 2, got {self.n!r}")

    @property
    def b(self):
        """Half-width of the x <= 0 part: 1 / (4 n^(5/2))."""
        return 1.0 / (4.0 * float(self.n) ** 2.5)

    @property
    def x_range(self):
        return (X_MIN, X_MAX)


def y_boundary(spec, x):
    """Half-width of the strip at abscissa x (positive for every valid x)."""
    if not X_MIN <= x <= X_MAX:
        raise DomainRangeError(f"x={x!r} outside [{X_MIN}, {X_MAX}]")
    if x > 0.0:
        return (x * x + 1.0 / spec.n**2) ** 1.25 / 4.0
    return spec.b


def contains(spec, x, y):
    """Closed membership test; total (never raises)."""
    if not X_MIN <= x <= X_MAX:
        return False
    if x > 0.0:
        half = (x * x + 1.0 / spec.n**2) ** 1.25 / 4.0
    else:
        half = spec.b
    return abs(y) <= half


def pole_positions(spec):
    """The 2(n+1) poles -k/n +- i/n of the angle-potential rate, as complexes."""
    n = spec.n
    poles = []
    for k in range(n + 1):
        re = -k / n
        poles.append(complex(re, 1.0 / n))
        poles.append(complex(re, -1.0 / n))
    return poles


def pole_clearance(spec):
    """Lower bound on the distance from the pole set to the closed strip.

    Every pole sits at height 1/n while the strip at the pole's abscissa has
    half-width at most b, so the vertical gap 1/n - b is a valid clearance.
    """
    return 1.0 / spec.n - spec.b


@dataclass(frozen=True)
class DomainPoint:
    """A strip point together with its normalised transverse coordinate.

    Build via :func:`from_eta` or :func:`from_xy`; the bare constructor does
    not validate membership.
    """

    x: float
    y: float
    eta: float

    @staticmethod
    def from_eta(spec, x, eta):
        if not -1.0 <= eta <= 1.0:
            raise DomainRangeError(f"eta={eta!r} outside [-1, 1]")
        y = eta * y_boundary(spec, x)
        return DomainPoint(float(x), y, float(eta))

    @staticmethod
    def from_xy(spec, x, y):
        half = y_boundary(spec, x)
        if abs(y) > half:
            raise DomainRangeError(f"(x={x!r}, y={y!r}) outside the strip (half-width {half!r})")
        return DomainPoint(float(x), float(y), float(y) / half)
