//! Numeric continuation of axis data into the bulk: contour extraction of the
//! harmonic term a₀(r, z), the diagonal and Gibbons-Hawking splittings
//! producing the Ernst potential J′(r, z), and finite-difference verification
//! of harmonicity and Yang's equation.

use crate::exact::RationalFunction;
use crate::inverse::isolate_real_roots;
use crate::patching::{PatchingMatrix, Signature};
use num::complex::Complex64;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SplittingError {
    #[error(
        "contour for (r, z) = ({r}, {z}) passes within {dist:e} of the excluded point {point}"
    )]
    ContourCollision { r: f64, z: f64, point: f64, dist: f64 },
    #[error("matrix shape does not match this splitting route: {0}")]
    WrongSplittingRoute(String),
    #[error("field is numerically singular at grid point ({0}, {1})")]
    SingularField(f64, f64),
    #[error("bad grid: {0}")]
    BadGrid(String),
    #[error("quadrature needs at least 16 points (got {0})")]
    TooFewQuadPoints(usize),
}

/// Default number of quadrature points on |ζ| = 1, overridable through the
/// `RODMAT_QUAD_POINTS` environment variable.
pub fn default_quad_points() -> usize {
    std::env::var("RODMAT_QUAD_POINTS")
        .ok()
        .and_then(|s| s.parse().ok())
        .filter(|&n| n >= 16)
        .unwrap_or(256)
}

/// Axis data F(z) to be continued into the bulk: either a rational function
/// itself or the logarithm of one (with continuous branch tracking along the
/// contour).
pub struct AxisFunction {
    num: Vec<f64>,
    den: Vec<f64>,
    take_log: bool,
    /// Real points the contour must stay away from: poles, and for the log
    /// case also zeros (branch points).
    exclusions: Vec<f64>,
}

fn to_f64_coeffs(p: &crate::exact::Polynomial) -> Vec<f64> {
    p.coeffs().iter().map(crate::exact::rat_to_f64).collect()
}

impl AxisFunction {
    pub fn rational(f: RationalFunction) -> Self {
        AxisFunction {
            num: to_f64_coeffs(f.num()),
            den: to_f64_coeffs(f.den()),
            take_log: false,
            exclusions: isolate_real_roots(f.den()),
        }
    }

    pub fn log_of(f: RationalFunction) -> Self {
        let mut exclusions = isolate_real_roots(f.den());
        exclusions.extend(isolate_real_roots(f.num()));
        AxisFunction {
            num: to_f64_coeffs(f.num()),
            den: to_f64_coeffs(f.den()),
            take_log: true,
            exclusions,
        }
    }

    pub fn exclusions(&self) -> &[f64] {
        &self.exclusions
    }

    fn eval_raw(&self, w: Complex64) -> Complex64 {
        horner(&self.num, w) / horner(&self.den, w)
    }

    /// Axis value of the continued quantity at a real z (log applied when
    /// requested).
    pub fn axis_value(&self, z: f64) -> f64 {
        let v = self.eval_raw(Complex64::new(z, 0.0));
        if self.take_log {
            v.norm().ln()
        } else {
            v.re
        }
    }
}

fn horner(coeffs: &[f64], w: Complex64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        acc = acc * w + c;
    }
    acc
}

/// The substitution ζ ↦ z − ½r(ζ − ζ⁻¹) maps |ζ| = 1 onto the vertical
/// segment {z + is : |s| ≤ r}; every excluded point must keep a safety
/// distance of r/100 from it.
fn contour_check(f: &AxisFunction, r: f64, z: f64) -> Result<(), SplittingError> {
    for &p in &f.exclusions {
        let dist = (p - z).abs();
        if dist <= r * 1e-2 {
            return Err(SplittingError::ContourCollision { r, z, point: p, dist });
        }
    }
    Ok(())
}

/// Trapezoid approximation of (1/2πi)∮ F(z − ½r(ζ − ζ⁻¹)) dζ/ζ on |ζ| = 1:
/// the coefficient a₀(r, z) of the Laurent expansion, i.e. the harmonic
/// continuation of the axis data. Spectrally convergent in `quad_points`.
pub fn a0_extract(
    f: &AxisFunction,
    r: f64,
    z: f64,
    quad_points: usize,
) -> Result<f64, SplittingError> {
    if quad_points < 16 {
        return Err(SplittingError::TooFewQuadPoints(quad_points));
    }
    if !(r > 0.0) {
        return Err(SplittingError::BadGrid(format!("need r > 0, got {}", r)));
    }
    contour_check(f, r, z)?;
    let n = quad_points;
    let mut sum = Complex64::new(0.0, 0.0);
    let mut prev_arg = 0.0f64;
    for k in 0..n {
        let theta = 2.0 * std::f64::consts::PI * (k as f64) / (n as f64);
        let zeta = Complex64::new(0.0, theta).exp();
        let w = Complex64::new(z, 0.0) - 0.5 * r * (zeta - 1.0 / zeta);
        let v = f.eval_raw(w);
        let term = if f.take_log {
            // continuous branch: unwrap the argument along the contour,
            // anchored at ζ = 1 where the contour meets the axis
            let mut arg = v.arg();
            if k > 0 {
                let two_pi = 2.0 * std::f64::consts::PI;
                while arg - prev_arg > std::f64::consts::PI {
                    arg -= two_pi;
                }
                while arg - prev_arg < -std::f64::consts::PI {
                    arg += two_pi;
                }
            }
            prev_arg = arg;
            Complex64::new(v.norm().ln(), arg)
        } else {
            v
        };
        sum += term;
    }
    Ok((sum / (n as f64)).re)
}

/// Rectangular (r, z) evaluation window; r strictly positive.
#[derive(Clone, Copy, Debug)]
pub struct GridSpec {
    pub r0: f64,
    pub r1: f64,
    pub z0: f64,
    pub z1: f64,
    pub nr: usize,
    pub nz: usize,
}

impl GridSpec {
    pub fn new(
        r0: f64,
        r1: f64,
        z0: f64,
        z1: f64,
        nr: usize,
        nz: usize,
    ) -> Result<Self, SplittingError> {
        if !(r0 > 0.0 && r1 > r0 && z1 > z0) {
            return Err(SplittingError::BadGrid(
                "need 0 < r0 < r1 and z0 < z1".to_string(),
            ));
        }
        if nr < 2 || nz < 2 {
            return Err(SplittingError::BadGrid("need at least 2 points per axis".to_string()));
        }
        Ok(GridSpec { r0, r1, z0, z1, nr, nz })
    }

    /// Square grid with n points per direction.
    pub fn square(r0: f64, r1: f64, z0: f64, z1: f64, n: usize) -> Result<Self, SplittingError> {
        GridSpec::new(r0, r1, z0, z1, n, n)
    }

    pub fn hr(&self) -> f64 {
        (self.r1 - self.r0) / ((self.nr - 1) as f64)
    }

    pub fn hz(&self) -> f64 {
        (self.z1 - self.z0) / ((self.nz - 1) as f64)
    }

    pub fn r_at(&self, i: usize) -> f64 {
        self.r0 + (i as f64) * self.hr()
    }

    pub fn z_at(&self, j: usize) -> f64 {
        self.z0 + (j as f64) * self.hz()
    }
}

/// Scalar samples over a [`GridSpec`], indexed (i_r, i_z).
pub struct ScalarField {
    pub grid: GridSpec,
    values: Vec<f64>,
}

impl ScalarField {
    pub fn from_fn(grid: GridSpec, f: impl Fn(f64, f64) -> f64) -> Self {
        let mut values = Vec::with_capacity(grid.nr * grid.nz);
        for i in 0..grid.nr {
            for j in 0..grid.nz {
                values.push(f(grid.r_at(i), grid.z_at(j)));
            }
        }
        ScalarField { grid, values }
    }

    pub fn try_from_fn(
        grid: GridSpec,
        f: impl Fn(f64, f64) -> Result<f64, SplittingError>,
    ) -> Result<Self, SplittingError> {
        let mut values = Vec::with_capacity(grid.nr * grid.nz);
        for i in 0..grid.nr {
            for j in 0..grid.nz {
                values.push(f(grid.r_at(i), grid.z_at(j))?);
            }
        }
        Ok(ScalarField { grid, values })
    }

    pub fn at(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.grid.nz + j]
    }
}

/// Per-point symmetric 2×2 Ernst potential J′ over a grid.
pub struct BulkField {
    pub grid: GridSpec,
    pub signature: Signature,
    pub provenance: String,
    j11: Vec<f64>,
    j12: Vec<f64>,
    j22: Vec<f64>,
}

impl BulkField {
    pub fn at(&self, i: usize, j: usize) -> [f64; 3] {
        let k = i * self.grid.nz + j;
        [self.j11[k], self.j12[k], self.j22[k]]
    }

    pub fn set(&mut self, i: usize, j: usize, v: [f64; 3]) {
        let k = i * self.grid.nz + j;
        self.j11[k] = v[0];
        self.j12[k] = v[1];
        self.j22[k] = v[2];
    }

    fn blank(grid: GridSpec, signature: Signature, provenance: &str) -> Self {
        let n = grid.nr * grid.nz;
        BulkField {
            grid,
            signature,
            provenance: provenance.to_string(),
            j11: vec![0.0; n],
            j12: vec![0.0; n],
            j22: vec![0.0; n],
        }
    }

    /// Scalar view of one component (or derived quantity) of the field.
    pub fn scalar_map(&self, f: impl Fn([f64; 3]) -> f64) -> ScalarField {
        let mut values = Vec::with_capacity(self.grid.nr * self.grid.nz);
        for i in 0..self.grid.nr {
            for j in 0..self.grid.nz {
                values.push(f(self.at(i, j)));
            }
        }
        ScalarField { grid: self.grid, values }
    }

    /// Largest pointwise |det J′ − (±1)| over the grid.
    pub fn det_error_max(&self) -> f64 {
        let target = match self.signature {
            Signature::Lorentzian => 1.0,
            Signature::Riemannian => -1.0,
        };
        let mut worst = 0.0f64;
        for k in 0..self.j11.len() {
            let det = self.j11[k] * self.j22[k] - self.j12[k] * self.j12[k];
            worst = worst.max((det - target).abs());
        }
        worst
    }
}

/// Diagonal (static/Weyl) route: P = diag(p11, ±1/p11) continues to
/// J′ = diag(e^{a}, ±e^{−a}) with a the harmonic continuation of log p11.
pub fn split_diagonal(
    p: &PatchingMatrix,
    grid: &GridSpec,
    quad_points: usize,
) -> Result<BulkField, SplittingError> {
    if !p.p12.is_zero() {
        return Err(SplittingError::WrongSplittingRoute(
            "diagonal route needs p12 ≡ 0".to_string(),
        ));
    }
    let axis = AxisFunction::log_of(p.p11.clone());
    let eps = match p.signature {
        Signature::Lorentzian => 1.0,
        Signature::Riemannian => -1.0,
    };
    let mut out = BulkField::blank(*grid, p.signature, "split_diagonal");
    for i in 0..grid.nr {
        for j in 0..grid.nz {
            let (r, z) = (grid.r_at(i), grid.z_at(j));
            let a = a0_extract(&axis, r, z, quad_points)?;
            out.set(i, j, [a.exp(), 0.0, eps * (-a).exp()]);
        }
    }
    Ok(out)
}

/// Gibbons-Hawking route: P = [[V(0,z), −1], [−1, 0]] continues to
/// J′ = [[V(r,z), −1], [−1, 0]] with V the harmonic continuation of the
/// axis potential.
pub fn split_gh(
    p: &PatchingMatrix,
    grid: &GridSpec,
    quad_points: usize,
) -> Result<BulkField, SplittingError> {
    if !p.is_gibbons_hawking_form() {
        return Err(SplittingError::WrongSplittingRoute(
            "Gibbons-Hawking route needs the shape [[V, -1], [-1, 0]]".to_string(),
        ));
    }
    let axis = AxisFunction::rational(p.p11.clone());
    let mut out = BulkField::blank(*grid, p.signature, "split_gh");
    for i in 0..grid.nr {
        for j in 0..grid.nz {
            let (r, z) = (grid.r_at(i), grid.z_at(j));
            let v = a0_extract(&axis, r, z, quad_points)?;
            out.set(i, j, [v, -1.0, 0.0]);
        }
    }
    Ok(out)
}

/// Residual magnitudes of a finite-difference operator over a grid interior.
#[derive(Clone, Copy, Debug)]
pub struct ResidualReport {
    pub max: f64,
    pub l2: f64,
    pub spacing: (f64, f64),
    /// log₂ of the max-residual ratio against a half-spacing run, when one
    /// was supplied.
    pub order: Option<f64>,
}

impl ResidualReport {
    /// Order estimate from this (coarse) run and a half-spacing (fine) run.
    pub fn order_against(&self, fine: &ResidualReport) -> f64 {
        (self.max / fine.max).log2()
    }

    pub fn with_order(mut self, fine: &ResidualReport) -> ResidualReport {
        self.order = Some(self.order_against(fine));
        self
    }
}

/// Axisymmetric Laplacian residual F_rr + F_r/r + F_zz by centered
/// differences over the grid interior.
pub fn harmonic_residual(field: &ScalarField) -> ResidualReport {
    let g = &field.grid;
    let (hr, hz) = (g.hr(), g.hz());
    let mut max = 0.0f64;
    let mut sum_sq = 0.0f64;
    let mut count = 0usize;
    for i in 1..g.nr - 1 {
        for j in 1..g.nz - 1 {
            let r = g.r_at(i);
            let f_rr =
                (field.at(i + 1, j) - 2.0 * field.at(i, j) + field.at(i - 1, j)) / (hr * hr);
            let f_r = (field.at(i + 1, j) - field.at(i - 1, j)) / (2.0 * hr);
            let f_zz =
                (field.at(i, j + 1) - 2.0 * field.at(i, j) + field.at(i, j - 1)) / (hz * hz);
            let res = (f_rr + f_r / r + f_zz).abs();
            max = max.max(res);
            sum_sq += res * res;
            count += 1;
        }
    }
    ResidualReport {
        max,
        l2: (sum_sq / count.max(1) as f64).sqrt(),
        spacing: (hr, hz),
        order: None,
    }
}

type Mat2 = [f64; 4];

fn mat_mul(a: &Mat2, b: &Mat2) -> Mat2 {
    [
        a[0] * b[0] + a[1] * b[2],
        a[0] * b[1] + a[1] * b[3],
        a[2] * b[0] + a[3] * b[2],
        a[2] * b[1] + a[3] * b[3],
    ]
}

fn mat_inv(a: &Mat2) -> Option<Mat2> {
    let det = a[0] * a[3] - a[1] * a[2];
    if det.abs() < 1e-10 {
        return None;
    }
    Some([a[3] / det, -a[1] / det, -a[2] / det, a[0] / det])
}

fn frobenius(a: &Mat2) -> f64 {
    a.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// Yang-equation residual r⁻¹∂_r(r J⁻¹∂_rJ) + ∂_z(J⁻¹∂_zJ) in Frobenius
/// norm, by nested centered differences (two interior layers).
pub fn yang_residual(field: &BulkField) -> Result<ResidualReport, SplittingError> {
    let g = &field.grid;
    if g.nr < 5 || g.nz < 5 {
        return Err(SplittingError::BadGrid(
            "Yang residual needs at least 5 points per axis".to_string(),
        ));
    }
    let (hr, hz) = (g.hr(), g.hz());
    let jmat = |i: usize, j: usize| -> Mat2 {
        let [a, b, c] = field.at(i, j);
        [a, b, b, c]
    };
    // first pass: A = J⁻¹∂_rJ and B = J⁻¹∂_zJ on the interior
    let mut a_field = vec![[0.0f64; 4]; g.nr * g.nz];
    let mut b_field = vec![[0.0f64; 4]; g.nr * g.nz];
    for i in 1..g.nr - 1 {
        for j in 1..g.nz - 1 {
            let inv = mat_inv(&jmat(i, j))
                .ok_or(SplittingError::SingularField(g.r_at(i), g.z_at(j)))?;
            let mut dr = [0.0f64; 4];
            let mut dz = [0.0f64; 4];
            let (p, m) = (jmat(i + 1, j), jmat(i - 1, j));
            let (q, n) = (jmat(i, j + 1), jmat(i, j - 1));
            for k in 0..4 {
                dr[k] = (p[k] - m[k]) / (2.0 * hr);
                dz[k] = (q[k] - n[k]) / (2.0 * hz);
            }
            a_field[i * g.nz + j] = mat_mul(&inv, &dr);
            b_field[i * g.nz + j] = mat_mul(&inv, &dz);
        }
    }
    // second pass: divergence on the interior of the interior
    let mut max = 0.0f64;
    let mut sum_sq = 0.0f64;
    let mut count = 0usize;
    for i in 2..g.nr - 2 {
        for j in 2..g.nz - 2 {
            let r = g.r_at(i);
            let (rp, rm) = (g.r_at(i + 1), g.r_at(i - 1));
            let ap = &a_field[(i + 1) * g.nz + j];
            let am = &a_field[(i - 1) * g.nz + j];
            let bp = &b_field[i * g.nz + j + 1];
            let bm = &b_field[i * g.nz + j - 1];
            let mut res = [0.0f64; 4];
            for k in 0..4 {
                res[k] = (rp * ap[k] - rm * am[k]) / (2.0 * hr * r)
                    + (bp[k] - bm[k]) / (2.0 * hz);
            }
            let norm = frobenius(&res);
            max = max.max(norm);
            sum_sq += norm * norm;
            count += 1;
        }
    }
    Ok(ResidualReport {
        max,
        l2: (sum_sq / count.max(1) as f64).sqrt(),
        spacing: (hr, hz),
        order: None,
    })
}
