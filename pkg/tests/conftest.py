import math

import pytest

from qwalk import WalkParams

SYMMETRIC = (complex(1.0 / math.sqrt(2.0), 0.0), complex(0.0, 1.0 / math.sqrt(2.0)))


@pytest.fixture
def example_params():
    """The localizing showcase: theta=pi/4, theta1=0, symmetric spinor."""
    return WalkParams(theta=math.pi / 4, theta1=0.0, tau=0,
                      alpha=SYMMETRIC[0], beta=SYMMETRIC[1])


@pytest.fixture
def hadamard_params():
    """theta1 = theta = pi/4: the swap is a no-op, the walk stays homogeneous."""
    return WalkParams(theta=math.pi / 4, theta1=math.pi / 4, tau=0,
                      alpha=SYMMETRIC[0], beta=SYMMETRIC[1])
