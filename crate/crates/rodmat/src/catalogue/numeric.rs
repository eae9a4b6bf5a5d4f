//! Floating-point metric-level evaluators. Each family that has a closed
//! metric form implements [`MetricEval`] in its natural coordinates; the Gram
//! matrix of the two Killing vectors is returned together with the induced
//! Weyl-Papapetrou coordinates (r, z), so callers can check the identity
//! det J = ±r² on a grid without knowing the coordinates used.

use super::GramSample;

/// Numeric evaluation of the Killing-vector Gram matrix and twist potential
/// at a point of the family's natural coordinate chart.
pub trait MetricEval: Sync + Send {
    /// Gram matrix sample at `point` (chart coordinates).
    fn gram(&self, point: [f64; 2]) -> GramSample;
    /// Twist potential at `point`.
    fn twist(&self, point: [f64; 2]) -> f64;
    /// Whether `point` lies in the open coordinate domain.
    fn in_domain(&self, point: [f64; 2]) -> bool;
    /// A rectangle `[lo0, hi0] × [lo1, hi1]` whose interior lies in the
    /// domain, used to place default verification grids.
    fn default_window(&self) -> [f64; 4];
}

fn sample(j11: f64, j12: f64, j22: f64, r: f64, z: f64, point: [f64; 2]) -> GramSample {
    GramSample { j11, j12, j22, r, z, point }
}

/// Flat E⁴ with two rotational Killing vectors, chart (u, v) = the two polar
/// radii: J = diag(u², v²), r = uv, z = (u² − v²)/2.
pub struct FlatE4Eval;

impl MetricEval for FlatE4Eval {
    fn gram(&self, [u, v]: [f64; 2]) -> GramSample {
        sample(u * u, 0.0, v * v, u * v, 0.5 * (u * u - v * v), [u, v])
    }

    fn twist(&self, _point: [f64; 2]) -> f64 {
        0.0
    }

    fn in_domain(&self, [u, v]: [f64; 2]) -> bool {
        u > 0.0 && v > 0.0
    }

    fn default_window(&self) -> [f64; 4] {
        [0.5, 2.0, 0.5, 2.0]
    }
}

/// Static (diagonal) metrics given by rod data: chart is (r, z) itself and
/// J = diag(f, ∓r²/f) with log f the superposition of rod potentials.
pub struct WeylEval {
    finite: Vec<(f64, f64)>,
    semi: Vec<f64>,
    lorentzian: bool,
    window: [f64; 4],
}

impl WeylEval {
    pub fn lorentzian(finite: Vec<(f64, f64)>, z_top: f64) -> Self {
        let window = [0.5, 3.0, z_top + 0.5, z_top + 3.0];
        WeylEval { finite, semi: vec![], lorentzian: true, window }
    }

    pub fn riemannian(finite: Vec<(f64, f64)>, semi: Vec<f64>, z_top: f64) -> Self {
        let window = [0.5, 3.0, z_top + 0.5, z_top + 3.0];
        WeylEval { finite, semi, lorentzian: false, window }
    }

    fn f(&self, r: f64, z: f64) -> f64 {
        let rho = |a: f64| (r * r + (z - a) * (z - a)).sqrt();
        let mut f = 1.0;
        for &(a, b) in &self.finite {
            let (ra, rb) = (rho(a), rho(b));
            f *= (ra + rb - (b - a)) / (ra + rb + (b - a));
        }
        for &a in &self.semi {
            f *= rho(a) + (z - a);
        }
        f
    }
}

impl MetricEval for WeylEval {
    fn gram(&self, [r, z]: [f64; 2]) -> GramSample {
        let f = self.f(r, z);
        let s = if self.lorentzian { -1.0 } else { 1.0 };
        sample(f, 0.0, s * r * r / f, r, z, [r, z])
    }

    fn twist(&self, _point: [f64; 2]) -> f64 {
        0.0
    }

    fn in_domain(&self, [r, _z]: [f64; 2]) -> bool {
        r > 0.0
    }

    fn default_window(&self) -> [f64; 4] {
        self.window
    }
}

/// Rotating black hole in Boyer-Lindquist-like chart (R, θ).
pub struct KerrEval {
    m: f64,
    a: f64,
    r_plus: f64,
}

impl KerrEval {
    pub fn new(m: f64, a: f64) -> Self {
        let r_plus = m + (m * m + a * a).sqrt();
        KerrEval { m, a, r_plus }
    }
}

impl MetricEval for KerrEval {
    fn gram(&self, [rr, th]: [f64; 2]) -> GramSample {
        let (m, a) = (self.m, self.a);
        let (s, c) = th.sin_cos();
        let sigma2 = rr * rr - a * a * c * c;
        let delta = rr * rr - 2.0 * m * rr - a * a;
        let j11 = 1.0 - 2.0 * m * rr / sigma2;
        let j12 = 2.0 * m * a * rr * s * s / sigma2;
        let j22 = (rr * rr - a * a) * s * s - 2.0 * m * a * a * rr * s.powi(4) / sigma2;
        let r = delta.sqrt() * s;
        let z = (rr - m) * c;
        sample(j11, j12, j22, r, z, [rr, th])
    }

    fn twist(&self, [rr, th]: [f64; 2]) -> f64 {
        let c = th.cos();
        2.0 * self.m * self.a * c / (rr * rr - self.a * self.a * c * c)
    }

    fn in_domain(&self, [rr, th]: [f64; 2]) -> bool {
        rr > self.r_plus && th > 0.0 && th < std::f64::consts::PI
    }

    fn default_window(&self) -> [f64; 4] {
        [self.r_plus + 0.5, self.r_plus + 3.0, 0.3, 2.8]
    }
}

/// Taub-NUT (including the self-dual and bolt cases) in the chart (R, θ).
pub struct TaubNutEval {
    m: f64,
    n: f64,
    r_plus: f64,
}

impl TaubNutEval {
    pub fn new(m: f64, n: f64) -> Self {
        let r_plus = m + (m * m - n * n).max(0.0).sqrt();
        TaubNutEval { m, n, r_plus }
    }
}

impl MetricEval for TaubNutEval {
    fn gram(&self, [rr, th]: [f64; 2]) -> GramSample {
        let (m, n) = (self.m, self.n);
        let (s, c) = th.sin_cos();
        let u = (rr * rr - 2.0 * m * rr + n * n) / (rr * rr - n * n);
        let j11 = u;
        let j12 = 2.0 * n * u * c;
        let j22 = 4.0 * n * n * u * c * c + (rr * rr - n * n) * s * s;
        let r = (rr * rr - 2.0 * m * rr + n * n).sqrt() * s;
        let z = (rr - m) * c;
        sample(j11, j12, j22, r, z, [rr, th])
    }

    fn twist(&self, [rr, _th]: [f64; 2]) -> f64 {
        let d = rr - self.r_plus;
        self.n * d * d / (self.r_plus * (rr * rr - self.n * self.n))
    }

    fn in_domain(&self, [rr, th]: [f64; 2]) -> bool {
        rr > self.r_plus && th > 0.0 && th < std::f64::consts::PI
    }

    fn default_window(&self) -> [f64; 4] {
        [self.r_plus + 0.5, self.r_plus + 3.0, 0.3, 2.8]
    }
}

/// Kerr-Taub-bolt in the chart (R, θ).
pub struct KtbEval {
    m: f64,
    a: f64,
    n: f64,
    r_plus: f64,
}

impl KtbEval {
    pub fn new(m: f64, a: f64, n: f64) -> Self {
        let r_plus = m + (m * m + a * a - n * n).sqrt();
        KtbEval { m, a, n, r_plus }
    }
}

impl MetricEval for KtbEval {
    fn gram(&self, [rr, th]: [f64; 2]) -> GramSample {
        let (m, a, n) = (self.m, self.a, self.n);
        let (s, c) = th.sin_cos();
        let x = rr * rr - (a * c + n) * (a * c + n);
        let delta = rr * rr - 2.0 * m * rr + n * n - a * a;
        let p_r = rr * rr - a * a - n.powi(4) / (n * n - a * a);
        let p_th = -a * s * s + 2.0 * n * c - a * n * n / (n * n - a * a);
        let j11 = (a * a * s * s + delta) / x;
        let j12 = (a * s * s * p_r + delta * p_th) / x;
        let j22 = (s * s * p_r * p_r + delta * p_th * p_th) / x;
        let r = delta.sqrt() * s;
        let z = (rr - m) * c;
        sample(j11, j12, j22, r, z, [rr, th])
    }

    fn twist(&self, [rr, th]: [f64; 2]) -> f64 {
        let (m, a, n) = (self.m, self.a, self.n);
        let c = th.cos();
        let x = rr * rr - (a * c + n) * (a * c + n);
        2.0 * (n * rr - m * (a * c + n)) / x
    }

    fn in_domain(&self, [rr, th]: [f64; 2]) -> bool {
        let c = th.cos();
        let x = rr * rr - (self.a * c + self.n) * (self.a * c + self.n);
        rr > self.r_plus && th > 0.0 && th < std::f64::consts::PI && x > 0.0
    }

    fn default_window(&self) -> [f64; 4] {
        [self.r_plus + 0.5, self.r_plus + 3.0, 0.3, 2.8]
    }
}

/// Gibbons-Hawking metrics in the chart (r, z):
/// J = [[1/V, W/V], [W/V, W²/V + r²V]] with V harmonic.
pub struct GhEval {
    delta: f64,
    /// (mass, axis position) pairs.
    sources: Vec<(f64, f64)>,
}

impl GhEval {
    pub fn new(delta: f64, sources: Vec<(f64, f64)>) -> Self {
        GhEval { delta, sources }
    }

    pub fn potential(&self, r: f64, z: f64) -> f64 {
        let mut v = self.delta;
        for &(m, a) in &self.sources {
            v += m / (r * r + (z - a) * (z - a)).sqrt();
        }
        v
    }

    fn w(&self, r: f64, z: f64) -> f64 {
        let mut w = 0.0;
        for &(m, a) in &self.sources {
            w += m * (z - a) / (r * r + (z - a) * (z - a)).sqrt();
        }
        w
    }
}

impl MetricEval for GhEval {
    fn gram(&self, [r, z]: [f64; 2]) -> GramSample {
        let v = self.potential(r, z);
        let w = self.w(r, z);
        sample(1.0 / v, w / v, w * w / v + r * r * v, r, z, [r, z])
    }

    fn twist(&self, [r, z]: [f64; 2]) -> f64 {
        1.0 / self.potential(r, z)
    }

    fn in_domain(&self, [r, _z]: [f64; 2]) -> bool {
        r > 0.0
    }

    fn default_window(&self) -> [f64; 4] {
        let z_top = self
            .sources
            .iter()
            .map(|&(_, a)| a)
            .fold(f64::NEG_INFINITY, f64::max);
        [0.5, 3.0, z_top + 0.5, z_top + 3.0]
    }
}

/// Type-D twisting ALE family in the chart (p, q), with q in the upper root
/// interval of the shared quartic.
pub struct PdEval {
    gamma: f64,
    n: f64,
    epsilon: f64,
    m: f64,
    roots: [f64; 4],
}

impl PdEval {
    pub fn new(gamma: f64, n: f64, epsilon: f64, m: f64, roots: [f64; 4]) -> Self {
        PdEval { gamma, n, epsilon, m, roots }
    }

    fn quartic(&self, x: f64) -> f64 {
        self.gamma + 2.0 * self.n * x - self.epsilon * x * x
            + 2.0 * self.m * x * x * x
            + self.gamma * x.powi(4)
    }
}

impl MetricEval for PdEval {
    fn gram(&self, [p, q]: [f64; 2]) -> GramSample {
        let (g, n, e, m) = (self.gamma, self.n, self.epsilon, self.m);
        let pp = self.quartic(p);
        let qq = self.quartic(q);
        let d2 = (p - q) * (p - q);
        let c = 1.0 - p * p * q * q;
        let t = (pp / (d2 * c)).sqrt();
        let u = (-qq / (d2 * c)).sqrt();
        // frame components of the two Killing co-vectors
        let (alpha, beta) = (q * q * t, -t);
        let (lambda, mu) = (u, -p * p * u);
        let j11 = alpha * alpha + lambda * lambda;
        let j12 = alpha * beta + lambda * mu;
        let j22 = beta * beta + mu * mu;
        let r = (-pp * qq).sqrt() / d2;
        let z = (-g - n * (p + q) + e * p * q - g * p * p * q * q - m * p * q * (p + q)) / d2;
        sample(j11, j12, j22, r, z, [p, q])
    }

    fn twist(&self, [p, q]: [f64; 2]) -> f64 {
        let (g, n, m) = (self.gamma, self.n, self.m);
        let f = -2.0 * g * q - 2.0 * n * q * q
            + 2.0 * m * p * q * q * q
            + 2.0 * g * p * p * q * q * q;
        f / ((p - q) * (1.0 - p * p * q * q))
    }

    fn in_domain(&self, [p, q]: [f64; 2]) -> bool {
        let [_, p2, p3, p4] = self.roots;
        p > p2 && p < p3 && q > p3 && q < p4 && (1.0 - p * p * q * q) > 1e-12
    }

    fn default_window(&self) -> [f64; 4] {
        let [_, p2, p3, p4] = self.roots;
        let dp = p3 - p2;
        let dq = p4 - p3;
        [p2 + 0.2 * dp, p3 - 0.2 * dp, p3 + 0.2 * dq, p4 - 0.2 * dq]
    }
}

/// The ALF instanton family in the chart (x, y) with
/// x ∈ (x2, x3), y ∈ (x1, x2).
pub struct CtEval {
    a: [f64; 5],
    nu: f64,
    roots: [f64; 4],
}

impl CtEval {
    pub fn new(a: [f64; 5], nu: f64, roots: [f64; 4]) -> Self {
        CtEval { a, nu, roots }
    }

    fn quartic(&self, x: f64) -> f64 {
        let a = &self.a;
        a[0] + a[1] * x + a[2] * x * x + a[3] * x.powi(3) + a[4] * x.powi(4)
    }

    fn h(&self, x: f64, y: f64) -> f64 {
        let a = &self.a;
        let nu = self.nu;
        (nu * x + y)
            * ((nu * x - y) * (a[1] - a[3] * x * y)
                - 2.0 * (1.0 - nu) * (a[0] - a[4] * x * x * y * y))
    }
}

impl MetricEval for CtEval {
    fn gram(&self, [x, y]: [f64; 2]) -> GramSample {
        let a = &self.a;
        let nu = self.nu;
        let xx = self.quartic(x);
        let yy = self.quartic(y);
        let f = x * x * yy - y * y * xx;
        let h = self.h(x, y);
        let g = (nu * nu * a[0] + 2.0 * nu * a[3] * y.powi(3) + 2.0 * nu * a[4] * y.powi(4)
            - a[4] * y.powi(4))
            * xx
            + (a[0] - 2.0 * nu * a[0] - 2.0 * nu * a[1] * x - nu * nu * a[4] * x.powi(4)) * yy;
        let d = x - y;
        let j11 = f / (d * h);
        let j12 = g / (d * h);
        let j22 = -h * xx * yy / (d.powi(3) * f) + g * g / (d * h * f);
        let r = (-xx * yy).sqrt() / (d * d);
        let z = (2.0 * (a[0] + a[2] * x * y + a[4] * x * x * y * y)
            + (x + y) * (a[1] + a[3] * x * y))
            / (2.0 * d * d);
        sample(j11, j12, j22, r, z, [x, y])
    }

    fn twist(&self, [x, y]: [f64; 2]) -> f64 {
        let a = &self.a;
        let nu = self.nu;
        (a[0] * y + (2.0 * nu - 1.0) * a[0] * x
            + (a[1] * nu - a[4] * y.powi(3)) * x * x
            + (-nu * a[3] * y - 2.0 * nu * a[4] * y * y + a[4] * y * y) * x.powi(3))
            / self.h(x, y)
    }

    fn in_domain(&self, [x, y]: [f64; 2]) -> bool {
        let [x1, x2, x3, _] = self.roots;
        x > x2
            && x < x3
            && y > x1
            && y < x2
            && self.h(x, y).abs() > 1e-12
            && (x * x * self.quartic(y) - y * y * self.quartic(x)).abs() > 1e-12
    }

    fn default_window(&self) -> [f64; 4] {
        let [x1, x2, x3, _] = self.roots;
        let dx = x3 - x2;
        let dy = x2 - x1;
        [x2 + 0.2 * dx, x3 - 0.2 * dx, x1 + 0.2 * dy, x2 - 0.2 * dy]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_det(ev: &dyn MetricEval, sign: f64) {
        let [lo0, hi0, lo1, hi1] = ev.default_window();
        let n = 7;
        for i in 0..n {
            for j in 0..n {
                let p0 = lo0 + (hi0 - lo0) * (i as f64 + 0.5) / n as f64;
                let p1 = lo1 + (hi1 - lo1) * (j as f64 + 0.5) / n as f64;
                assert!(ev.in_domain([p0, p1]), "window point outside domain");
                let s = ev.gram([p0, p1]);
                let want = sign * s.r * s.r;
                assert!(
                    (s.det() - want).abs() <= 1e-9 * (1.0 + want.abs()),
                    "det {} vs {} at ({}, {})",
                    s.det(),
                    want,
                    p0,
                    p1
                );
            }
        }
    }

    #[test]
    fn flat_det_identity() {
        check_det(&FlatE4Eval, 1.0);
    }

    #[test]
    fn weyl_det_identity() {
        check_det(&WeylEval::lorentzian(vec![(-1.0, 1.0)], 1.0), -1.0);
        check_det(
            &WeylEval::riemannian(vec![(-0.25, 0.3)], vec![-0.4], 0.3),
            1.0,
        );
    }

    #[test]
    fn kerr_det_identity() {
        check_det(&KerrEval::new(3.0, 4.0), 1.0);
    }

    #[test]
    fn taub_nut_det_identity() {
        check_det(&TaubNutEval::new(5.0, 4.0), 1.0);
        // self-dual case
        check_det(&TaubNutEval::new(2.0, 2.0), 1.0);
    }

    #[test]
    fn ktb_det_identity() {
        check_det(&KtbEval::new(4.0, 7.0, 1.0), 1.0);
    }

    #[test]
    fn gh_det_identity() {
        check_det(&GhEval::new(1.0, vec![(1.0, -1.0), (1.0, 1.0)]), 1.0);
        check_det(&GhEval::new(0.0, vec![(2.0, -2.0), (1.0, 2.0)]), 1.0);
    }

    #[test]
    fn pd_det_identity() {
        // quartic with roots -4, -1/2, 1/4, 2
        check_det(
            &PdEval::new(1.0, -9.0 / 8.0, 61.0 / 8.0, 9.0 / 8.0, [-4.0, -0.5, 0.25, 2.0]),
            1.0,
        );
    }

    #[test]
    fn ct_det_identity() {
        // X = (x+2)(x+1)(x-1)(x-3)
        check_det(
            &CtEval::new([6.0, 1.0, -7.0, -1.0, 1.0], 0.5, [-2.0, -1.0, 1.0, 3.0]),
            1.0,
        );
    }

    /// The twist potential and Gram matrix must satisfy the defining relation
    /// ∂ψ/∂r = -(J11²/r) ∂ω/∂z, ∂ψ/∂z = (J11²/r) ∂ω/∂r with ω = J12/J11,
    /// up to sign conventions; checked here only up to overall sign since the
    /// orientation convention differs per family.
    fn check_twist_gradient(ev: &dyn MetricEval, to_rz: bool) {
        let [lo0, hi0, lo1, hi1] = ev.default_window();
        let p = [0.5 * (lo0 + hi0), 0.45 * (lo1 + hi1) + 0.55 * lo1];
        let h = 1e-5;
        // numeric gradients in chart coordinates
        let grad = |f: &dyn Fn([f64; 2]) -> f64| {
            [
                (f([p[0] + h, p[1]]) - f([p[0] - h, p[1]])) / (2.0 * h),
                (f([p[0], p[1] + h]) - f([p[0], p[1] - h])) / (2.0 * h),
            ]
        };
        let psi_g = grad(&|q| ev.twist(q));
        let omega_g = grad(&|q| {
            let s = ev.gram(q);
            s.j12 / s.j11
        });
        let s0 = ev.gram(p);
        // chart-to-(r,z) Jacobian by finite differences
        let jac = grad(&|q| ev.gram(q).r);
        let jaz = grad(&|q| ev.gram(q).z);
        // convert both gradients to (r, z) components
        let det = jac[0] * jaz[1] - jac[1] * jaz[0];
        let to_rz_vec = |g: [f64; 2]| {
            [
                (g[0] * jaz[1] - g[1] * jaz[0]) / det,
                (-g[0] * jac[1] + g[1] * jac[0]) / det,
            ]
        };
        let (psi_rz, omega_rz) = if to_rz {
            (to_rz_vec(psi_g), to_rz_vec(omega_g))
        } else {
            (psi_g, omega_g)
        };
        let k = s0.j11 * s0.j11 / s0.r;
        // ∇ψ = ±k · (rotate ∇ω by 90°)
        let lhs = (psi_rz[0], psi_rz[1]);
        let rhs = (k * omega_rz[1], -k * omega_rz[0]);
        let plus = (lhs.0 - rhs.0).hypot(lhs.1 - rhs.1);
        let minus = (lhs.0 + rhs.0).hypot(lhs.1 + rhs.1);
        let scale = lhs.0.hypot(lhs.1).max(1e-12);
        assert!(
            plus.min(minus) <= 1e-3 * scale.max(1.0),
            "twist gradient mismatch: {:?} vs {:?}",
            lhs,
            rhs
        );
    }

    #[test]
    fn taub_nut_twist_consistent() {
        check_twist_gradient(&TaubNutEval::new(5.0, 4.0), true);
    }

    #[test]
    fn kerr_twist_consistent() {
        check_twist_gradient(&KerrEval::new(3.0, 4.0), true);
    }

    #[test]
    fn gh_twist_consistent() {
        check_twist_gradient(&GhEval::new(1.0, vec![(1.0, -1.0), (1.0, 1.0)]), false);
    }
}
