"""Ambient Riemannian structure.

Provides the metric inner product, the volume form ``det_g``, the metric
cross product, Christoffel symbols, covariant differentiation of vector
fields along a surface, and pointwise sectional curvature.  A Euclidean
chart short-circuits everything to plain dot/cross/determinant.

General metrics are supplied as a 3x3 expression matrix in the ambient
coordinates ``x1, x2, x3``; the round sphere (curvature +1) and
hyperbolic space (curvature -1) are available as built-in conformal
charts, so all formulas stay chart-local.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Optional, Sequence, Tuple

import numpy as np

from .errors import MetricError
from .expressions import Expression, evaluate_with_env, parse_expression
from .jets import Jet

Vec = Tuple[Jet, Jet, Jet]

AMBIENT_VARS = ("x1", "x2", "x3")


def _det3(m) -> Jet:
    """Determinant of a 3x3 matrix of jets (or floats)."""
    return (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))


def _det3_vectors(a: Vec, b: Vec, c: Vec) -> Jet:
    return _det3([a, b, c])


@dataclass(frozen=True)
class AmbientChart:
    """A coordinate chart on the ambient 3-manifold.

    ``kind`` is "euclidean" or "general"; for general charts ``g_exprs``
    holds the symmetric metric matrix as expressions in x1, x2, x3 and
    ``params`` the bindings they may reference.
    """

    kind: str = "euclidean"
    g_exprs: Optional[Tuple[Tuple[Expression, ...], ...]] = None
    params: Dict[str, float] = field(default_factory=dict)
    name: str = "euclidean"

    @property
    def euclidean(self) -> bool:
        return self.kind == "euclidean"

    # -- metric evaluation -------------------------------------------------

    def metric_jets3(self, x0: Sequence[float], order: int):
        """Metric matrix as trivariate jets at the ambient point x0."""
        env = {name: Jet.variable(i, x0[i], 3, order) for i, name in enumerate(AMBIENT_VARS)}
        g = [[evaluate_with_env(self.g_exprs[i][j], env, self.params)
              for j in range(3)] for i in range(3)]
        self._check_spd([[g[i][j].value for j in range(3)] for i in range(3)])
        return g

    def metric_at(self, x: Vec):
        """Metric matrix as jets in the surface variables, composed along x."""
        if self.euclidean:
            nv, od = x[0].nvars, x[0].order
            return [[Jet.constant(1.0 if i == j else 0.0, nv, od) for j in range(3)]
                    for i in range(3)]
        x0 = [xi.value for xi in x]
        g3 = self.metric_jets3(x0, x[0].order)
        offsets = [xi - x0i for xi, x0i in zip(x, x0)]
        return [[g3[i][j].compose(offsets) for j in range(3)] for i in range(3)]

    @staticmethod
    def _check_spd(g0):
        m = np.array(g0, dtype=float)
        for k in (1, 2, 3):
            if np.linalg.det(m[:k, :k]) <= 0:
                raise MetricError("metric is not positive definite at the evaluation point")

    # -- algebraic operations ----------------------------------------------

    def inner_product(self, x: Vec, a: Vec, b: Vec) -> Jet:
        if self.euclidean:
            return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
        g = self.metric_at(x)
        acc = None
        for i in range(3):
            for j in range(3):
                term = g[i][j] * a[i] * b[j]
                acc = term if acc is None else acc + term
        return acc

    def norm_sq(self, x: Vec, a: Vec) -> Jet:
        return self.inner_product(x, a, a)

    def det_g(self, x: Vec, a: Vec, b: Vec, c: Vec) -> Jet:
        """Riemannian volume form: sqrt(det g) times the coordinate determinant."""
        d = _det3_vectors(a, b, c)
        if self.euclidean:
            return d
        g = self.metric_at(x)
        return _det3(g).sqrt() * d

    def cross_g(self, x: Vec, a: Vec, b: Vec) -> Vec:
        """The vector with <a x_g b, c> = det_g(a, b, c) for every c."""
        if self.euclidean:
            return (a[1] * b[2] - a[2] * b[1],
                    a[2] * b[0] - a[0] * b[2],
                    a[0] * b[1] - a[1] * b[0])
        g = self.metric_at(x)
        sq = _det3(g).sqrt()
        basis = []
        nv, od = a[0].nvars, a[0].order
        for k in range(3):
            e = tuple(Jet.constant(1.0 if i == k else 0.0, nv, od) for i in range(3))
            basis.append(e)
        cov = [sq * _det3_vectors(a, b, basis[k]) for k in range(3)]
        ginv = _invert3(g)
        return tuple(
            ginv[k][0] * cov[0] + ginv[k][1] * cov[1] + ginv[k][2] * cov[2]
            for k in range(3))

    # -- connection ----------------------------------------------------------

    def christoffel_jets3(self, x0: Sequence[float], order: int):
        """Gamma^k_ij as trivariate jets at x0 (zero for Euclidean)."""
        if self.euclidean:
            z = Jet.constant(0.0, 3, order)
            return [[[z] * 3 for _ in range(3)] for _ in range(3)]
        g = self.metric_jets3(x0, order + 1)
        ginv = _invert3(g)
        dg = [[[g[i][j].partial(l) for l in range(3)] for j in range(3)] for i in range(3)]
        gamma = [[[None] * 3 for _ in range(3)] for _ in range(3)]
        for k in range(3):
            for i in range(3):
                for j in range(i, 3):
                    acc = None
                    for l in range(3):
                        term = ginv[k][l] * (dg[l][j][i] + dg[l][i][j] - dg[i][j][l])
                        acc = term if acc is None else acc + term
                    val = acc * 0.5
                    gamma[k][i][j] = val
                    gamma[k][j][i] = val
        return gamma

    def christoffels_along(self, x: Vec):
        """Gamma^k_ij composed along the map x, as surface-variable jets."""
        if self.euclidean:
            nv, od = x[0].nvars, max(x[0].order - 1, 0)
            z = Jet.constant(0.0, nv, od)
            return [[[z] * 3 for _ in range(3)] for _ in range(3)]
        x0 = [xi.value for xi in x]
        g3 = self.christoffel_jets3(x0, x[0].order)
        offsets = [xi - x0i for xi, x0i in zip(x, x0)]
        return [[[g3[k][i][j].compose(offsets) for j in range(3)] for i in range(3)]
                for k in range(3)]

    def covariant_derivative(self, f: Vec, field: Vec, direction: int) -> Vec:
        """Levi-Civita derivative of a vector field along f in a chart direction.

        Returns d(field)/d(direction) + Gamma(f_direction, field), with
        the jet order reduced by one.
        """
        dfield = tuple(field[k].partial(direction) for k in range(3))
        if self.euclidean:
            return dfield
        gamma = self.christoffels_along(f)
        fdir = tuple(f[k].partial(direction) for k in range(3))
        od = dfield[0].order
        out = []
        for k in range(3):
            acc = dfield[k]
            for i in range(3):
                for j in range(3):
                    acc = acc + gamma[k][i][j].truncated(od) * fdir[i].truncated(od) \
                        * field[j].truncated(od)
            out.append(acc)
        return tuple(out)

    def covariant_derivative_along(self, gamma_hat, field, t_index: int = 0):
        """Covariant derivative of a field along a curve gamma_hat (1-var jets)."""
        dfield = tuple(field[k].partial(t_index) for k in range(3))
        if self.euclidean:
            return dfield
        chr_ = self.christoffels_along(gamma_hat)
        vel = tuple(gamma_hat[k].partial(t_index) for k in range(3))
        od = dfield[0].order
        out = []
        for k in range(3):
            acc = dfield[k]
            for i in range(3):
                for j in range(3):
                    acc = acc + chr_[k][i][j].truncated(od) * vel[i].truncated(od) \
                        * field[j].truncated(od)
            out.append(acc)
        return tuple(out)

    # -- curvature -------------------------------------------------------------

    def sectional_curvature(self, x0: Sequence[float], X: Sequence[float],
                            Y: Sequence[float]) -> float:
        """Sectional curvature of the plane spanned by X, Y at x0."""
        if self.euclidean:
            return 0.0
        X = np.asarray(X, dtype=float)
        Y = np.asarray(Y, dtype=float)
        gj = self.metric_jets3(x0, 2)
        g0 = np.array([[gj[i][j].value for j in range(3)] for i in range(3)])
        gram = np.array([[X @ g0 @ X, X @ g0 @ Y], [Y @ g0 @ X, Y @ g0 @ Y]])
        denom = np.linalg.det(gram)
        if denom <= 1e-14 * max(1.0, np.linalg.norm(X) * np.linalg.norm(Y)) ** 4:
            raise MetricError("sectional curvature of a degenerate plane")
        gamma = self.christoffel_jets3(x0, 1)
        gval = np.zeros((3, 3, 3))
        dgam = np.zeros((3, 3, 3, 3))  # dgam[l][i][j][m] = d_m Gamma^l_ij
        for l in range(3):
            for i in range(3):
                for j in range(3):
                    gval[l][i][j] = gamma[l][i][j].value
                    for m in range(3):
                        idx = [0, 0, 0]
                        idx[m] = 1
                        dgam[l][i][j][m] = gamma[l][i][j].coeff(*idx)
        # component of R(d_i, d_j) d_k along d_l
        R = np.zeros((3, 3, 3, 3))
        for l in range(3):
            for i in range(3):
                for j in range(3):
                    for k in range(3):
                        val = dgam[l][j][k][i] - dgam[l][i][k][j]
                        for m in range(3):
                            val += gval[l][i][m] * gval[m][j][k] \
                                - gval[l][j][m] * gval[m][i][k]
                        R[l][i][j][k] = val
        # <R(X, Y) Y, X>
        num = 0.0
        for i in range(3):
            for j in range(3):
                for k in range(3):
                    for l in range(3):
                        for m in range(3):
                            num += X[i] * Y[j] * Y[k] * X[m] * g0[m][l] * R[l][i][j][k]
        return float(num / denom)


def _invert3(g):
    """Inverse of a 3x3 jet matrix via the adjugate."""
    det = _det3(g)
    inv_det = det.reciprocal()
    cof = [[None] * 3 for _ in range(3)]
    for i in range(3):
        for j in range(3):
            rows = [r for r in range(3) if r != i]
            cols = [c for c in range(3) if c != j]
            minor = g[rows[0]][cols[0]] * g[rows[1]][cols[1]] \
                - g[rows[0]][cols[1]] * g[rows[1]][cols[0]]
            sign = 1.0 if (i + j) % 2 == 0 else -1.0
            cof[i][j] = minor * sign
    # adjugate transpose times 1/det
    return [[cof[j][i] * inv_det for j in range(3)] for i in range(3)]


# -- built-in charts ------------------------------------------------------------

def euclidean_chart() -> AmbientChart:
    return AmbientChart(kind="euclidean", name="euclidean")


def _conformal_chart(factor_text: str, name: str) -> AmbientChart:
    rows = []
    for i in range(3):
        row = []
        for j in range(3):
            text = factor_text if i == j else "0"
            row.append(parse_expression(text, AMBIENT_VARS))
        rows.append(tuple(row))
    return AmbientChart(kind="general", g_exprs=tuple(rows), name=name)


def sphere_chart() -> AmbientChart:
    """Round 3-sphere of curvature +1 in a stereographic conformal chart."""
    return _conformal_chart("4/(1+x1^2+x2^2+x3^2)^2", "sphere")


def hyperbolic_chart() -> AmbientChart:
    """Hyperbolic 3-space of curvature -1 in the conformal ball chart."""
    return _conformal_chart("4/(1-x1^2-x2^2-x3^2)^2", "hyperbolic")


def chart_from_matrix(rows, params=None, name="custom") -> AmbientChart:
    """Build a general chart from a 3x3 matrix of expression strings."""
    if len(rows) != 3 or any(len(r) != 3 for r in rows):
        raise MetricError("metric matrix must be 3x3")
    exprs = tuple(
        tuple(parse_expression(rows[i][j], AMBIENT_VARS,
                               tuple((params or {}).keys())) for j in range(3))
        for i in range(3))
    for i in range(3):
        for j in range(i + 1, 3):
            if exprs[i][j].text.replace(" ", "") != exprs[j][i].text.replace(" ", ""):
                raise MetricError("metric matrix must be symmetric")
    return AmbientChart(kind="general", g_exprs=exprs, params=dict(params or {}),
                        name=name)


# -- module-level operation wrappers (the public operation surface) -----------

def inner_product(chart: AmbientChart, x: Vec, a: Vec, b: Vec) -> Jet:
    return chart.inner_product(x, a, b)


def det_g(chart: AmbientChart, x: Vec, a: Vec, b: Vec, c: Vec) -> Jet:
    return chart.det_g(x, a, b, c)


def cross_g(chart: AmbientChart, x: Vec, a: Vec, b: Vec) -> Vec:
    return chart.cross_g(x, a, b)


def covariant_derivative(chart: AmbientChart, f: Vec, field: Vec,
                         direction: int) -> Vec:
    return chart.covariant_derivative(f, field, direction)


def sectional_curvature(chart: AmbientChart, x0, X, Y) -> float:
    return chart.sectional_curvature(x0, X, Y)
