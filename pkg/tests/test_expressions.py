import math

import pytest

from frontlab.errors import EvaluationError, ExpressionError, JetOrderError
from frontlab.expressions import (evaluate_jet, evaluate_with_env,
                                  parse_expression, substitute)
from frontlab.jets import Jet


def test_parse_and_evaluate_simple():
    e = parse_expression("v^3", ("u", "v"))
    j = evaluate_jet(e, (0.0, 0.0), 4)
    assert j.coeff(0, 3) == 1.0
    assert sum(1 for _ in j.coeffs) == 1


def test_v_sin_u_jet():
    e = parse_expression("v*sin(u)", ("u", "v"))
    j = evaluate_jet(e, (0.0, 0.0), 3)
    assert j.coeff(1, 1) == pytest.approx(1.0)
    assert all(abs(c) < 1e-15 for k, c in j.coeffs.items() if k != (1, 1))


def test_sqrt_series():
    e = parse_expression("sqrt(1+u)", ("u", "v"))
    j = evaluate_jet(e, (0.0, 0.0), 2)
    assert j.coeff(0, 0) == pytest.approx(1.0)
    assert j.coeff(1, 0) == pytest.approx(0.5)
    assert j.coeff(2, 0) == pytest.approx(-1.0 / 8.0)


def test_constants_and_params():
    e = parse_expression("a*pi + e", ("u", "v"), ("a",))
    j = evaluate_jet(e, (0.0, 0.0), 1, params={"a": 2.0})
    assert j.value == pytest.approx(2 * math.pi + math.e)
    with pytest.raises(EvaluationError):
        evaluate_jet(e, (0.0, 0.0), 1)  # unbound parameter


def test_unknown_identifier_position():
    with pytest.raises(ExpressionError) as exc:
        parse_expression("u + w", ("u", "v"))
    assert exc.value.pos == 4


def test_non_smooth_rejected():
    for fn in ("abs(u)", "floor(v)", "sign(u)"):
        with pytest.raises(ExpressionError):
            parse_expression(fn, ("u", "v"))


def test_unknown_function_rejected():
    with pytest.raises(ExpressionError):
        parse_expression("sinh(u)", ("u", "v"))


def test_syntax_errors():
    for text in ("u +", "(u", "u ** v", "2 3", ""):
        with pytest.raises(ExpressionError):
            parse_expression(text, ("u", "v"))


def test_power_rules():
    e = parse_expression("(1+u)^3", ("u", "v"))
    j = evaluate_jet(e, (0.0, 0.0), 3)
    assert [j.coeff(k, 0) for k in range(4)] == pytest.approx([1, 3, 3, 1])
    # negative exponent is smooth away from zeros
    e2 = parse_expression("(1+u)^-1", ("u", "v"))
    j2 = evaluate_jet(e2, (0.0, 0.0), 3)
    assert [j2.coeff(k, 0) for k in range(4)] == pytest.approx([1, -1, 1, -1])


def test_parameter_exponent():
    e = parse_expression("u^k", ("u", "v"), ("k",))
    j = evaluate_jet(e, (0.0, 0.0), 4, params={"k": 3})
    assert j.coeff(3, 0) == pytest.approx(1.0)
    with pytest.raises(EvaluationError):
        evaluate_jet(e, (0.0, 0.0), 4, params={"k": 2.5})


def test_variable_exponent_rejected():
    with pytest.raises(ExpressionError):
        parse_expression("u^v", ("u", "v"))


def test_unary_minus_precedence():
    e = parse_expression("-u^2", ("u", "v"))
    j = evaluate_jet(e, (1.0, 0.0), 2)
    assert j.value == pytest.approx(-1.0)


def test_domain_errors():
    e = parse_expression("log(u)", ("u", "v"))
    with pytest.raises(EvaluationError):
        evaluate_jet(e, (0.0, 0.0), 2)
    e = parse_expression("sqrt(u)", ("u", "v"))
    with pytest.raises(EvaluationError):
        evaluate_jet(e, (-1.0, 0.0), 2)


def test_order_cap():
    e = parse_expression("u", ("u", "v"))
    with pytest.raises(JetOrderError):
        evaluate_jet(e, (0.0, 0.0), 7)
    evaluate_jet(e, (0.0, 0.0), 7, max_order=8)


def test_evaluate_with_env_composition():
    # metric-style expression composed with surface jets
    g = parse_expression("(1+x1)^2", ("x1", "x2", "x3"))
    u = Jet.variable(0, 0.0, 2, 3)
    env = {"x1": u, "x2": Jet.constant(0.0, 2, 3), "x3": Jet.constant(0.0, 2, 3)}
    j = evaluate_with_env(g, env)
    assert j.value == pytest.approx(1.0)
    assert j.coeff(1, 0) == pytest.approx(2.0)


def test_substitute_linear_change():
    e = parse_expression("u^2 + v", ("u", "v"))
    U = parse_expression("u + 2*v", ("u", "v"))
    V = parse_expression("v", ("u", "v"))
    e2 = substitute(e, {"u": U, "v": V})
    j = evaluate_jet(e2, (1.0, 1.0), 2)
    assert j.value == pytest.approx((1 + 2) ** 2 + 1)


def test_jet_matches_symbolic_oracle():
    import sympy as sp

    text = "sin(u)*exp(v) + u^3*v - sqrt(4+u)"
    e = parse_expression(text, ("u", "v"))
    j = evaluate_jet(e, (0.3, -0.2), 4)
    su, sv = sp.symbols("u v")
    sexpr = sp.sin(su) * sp.exp(sv) + su ** 3 * sv - sp.sqrt(4 + su)
    for (i, k), c in j.coeffs.items():
        d = sp.diff(sexpr, su, i, sv, k)
        expected = float(d.subs({su: 0.3, sv: -0.2})) / (
            math.factorial(i) * math.factorial(k))
        assert c == pytest.approx(expected, rel=1e-11, abs=1e-12)
