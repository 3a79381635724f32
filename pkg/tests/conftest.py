import pytest

from frontlab.frontal import resolve_normal
from frontlab.specfile import parse_surface_spec


def make_surface(toml_text, params=None):
    spec = parse_surface_spec(toml_text)
    if params:
        spec = spec.with_params(params)
    return resolve_normal(spec)


CUSPIDAL_EDGE = """
[surface]
f = ["u", "v^2", "v^3"]
[domain]
u = [-1.0, 1.0]
v = [-1.0, 1.0]
"""

CUSPIDAL_EDGE_NU = """
[surface]
f = ["u", "v^2", "v^3"]
normal = ["0", "-3*v/sqrt(9*v^2+4)", "2/sqrt(9*v^2+4)"]
[domain]
u = [-1.0, 1.0]
v = [-1.0, 1.0]
"""

CONE = """
[surface]
f = ["v*cos(u)", "v*sin(u)", "v^2+v"]
normal = [
  "-(1+2*v)*cos(u)/sqrt((1+2*v)^2+1)",
  "-(1+2*v)*sin(u)/sqrt((1+2*v)^2+1)",
  "1/sqrt((1+2*v)^2+1)",
]
[domain]
u = [-7.0, 7.0]
v = [-0.4, 0.4]
"""

IMMERSION = """
[surface]
f = ["u", "v", "0"]
"""


@pytest.fixture
def cuspidal_edge():
    return make_surface(CUSPIDAL_EDGE)


@pytest.fixture
def cuspidal_edge_supplied():
    return make_surface(CUSPIDAL_EDGE_NU)


@pytest.fixture
def cone():
    return make_surface(CONE)


@pytest.fixture
def immersion():
    return make_surface(IMMERSION)
