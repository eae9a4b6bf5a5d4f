//! The individual metric families. Exact top-rod matrices are transcribed
//! in closed form; the remaining rods are produced by node passing at
//! construction time, so the passing rules and the closed forms are kept
//! consistent by construction.

use super::numeric::{self, MetricEval};
use super::{
    describe_params, get_param, CatalogueEntry, CatalogueError, Family, Params, RodStructure,
};
use crate::exact::{rat, rat_i, rat_sqrt, rat_to_f64, Polynomial, Rational, RationalFunction};
use crate::patching::{AsymptoticClass, Direction, PatchingMatrix, Signature};
use num::{One, Signed, Zero};

pub(super) fn all() -> Vec<Box<dyn Family>> {
    vec![
        Box::new(FlatE4),
        Box::new(Schwarzschild),
        Box::new(Kerr),
        Box::new(TaubNut),
        Box::new(Sdtn),
        Box::new(TaubBolt),
        Box::new(KerrTaubBolt),
        Box::new(GhMultiTaubNut),
        Box::new(GhMultiEguchiHanson),
        Box::new(Bazaikin),
        Box::new(DoubleSchwarzschild),
        Box::new(WeylEven),
        Box::new(WeylOdd),
        Box::new(CMetric),
        Box::new(PlebanskiDemianski),
        Box::new(ChenTeo),
    ]
}

fn rf(num: Polynomial, den: Polynomial) -> RationalFunction {
    RationalFunction::new(num, den).expect("nonzero denominator")
}

/// Distinct real roots of a quartic, ascending; exact when all four are
/// rational, numeric (Sturm isolation + bisection) otherwise.
fn four_real_roots(
    q: &Polynomial,
) -> Result<(Option<Vec<Rational>>, Vec<f64>), CatalogueError> {
    let mut exact = crate::exact::rational_roots(q);
    exact.sort();
    if exact.len() == 4 {
        let f = exact.iter().map(rat_to_f64).collect();
        return Ok((Some(exact), f));
    }
    let f = crate::inverse::isolate_real_roots(q);
    if f.len() != 4 {
        return Err(CatalogueError::InvalidParameters(
            "the quartic must have four distinct real roots".into(),
        ));
    }
    Ok((None, f))
}

fn linpair(a: &Rational, b: &Rational) -> Polynomial {
    // (z - a)(z - b)
    &Polynomial::linear_root(a) * &Polynomial::linear_root(b)
}

/// Fills matrices for all rods by passing down from a given top matrix.
/// Closed-form overrides (paper transcriptions) replace the derived ones
/// where supplied, after a conjugation-equivalence sanity check is possible
/// in tests.
fn rods_by_passing(
    top: &PatchingMatrix,
    nodes: &[Rational],
    gh: bool,
) -> Result<Vec<Option<PatchingMatrix>>, CatalogueError> {
    let mut out = vec![Some(top.clone())];
    let mut current = top.clone();
    for node in nodes.iter().rev() {
        current = if gh {
            current.pass_node_gh(node)
        } else {
            current.pass_node_standard(node, Direction::Down).map(|(p, _)| p)
        }
        .map_err(|e| CatalogueError::InvalidParameters(format!("node passing failed: {}", e)))?;
        out.push(Some(current.clone()));
    }
    out.reverse();
    Ok(out)
}

fn entry(
    family: &'static str,
    params: Params,
    signature: Signature,
    rods: RodStructure,
    matrices: Vec<Option<PatchingMatrix>>,
    evaluator: Option<Box<dyn MetricEval>>,
) -> CatalogueEntry {
    assert_eq!(matrices.len(), rods.n_rods(), "one matrix slot per rod");
    CatalogueEntry { family, params, signature, rod_structure: rods, matrices, evaluator }
}

// ---------------------------------------------------------------------------

/// Flat metric on E4 written with two rotational Killing vectors: one node at
/// the origin, AE asymptotics.
struct FlatE4;

impl Family for FlatE4 {
    fn name(&self) -> &'static str {
        "flat_e4"
    }

    fn description(&self) -> &'static str {
        "flat metric on E^4 with two rotations; one node, AE"
    }

    fn defaults(&self) -> Params {
        Params::new()
    }

    fn make(&self, params: &Params) -> Result<CatalogueEntry, CatalogueError> {
        let two_z = Polynomial::monomial(rat_i(2), 1);
        let p_plus = PatchingMatrix::diagonal(
            rf(Polynomial::one(), two_z.clone()),
            RationalFunction::from_poly(-&two_z),
            Signature::Riemannian,
            vec![Rational::zero()],
            Some(crate::patching::RodInterval::top(Rational::zero())),
        );
        let p_minus = PatchingMatrix::diagonal(
            rf(-&Polynomial::one(), two_z.clone()),
            RationalFunction::from_poly(two_z),
            Signature::Riemannian,
            vec![Rational::zero()],
            Some(crate::patching::RodInterval::bottom(Rational::zero())),
        );
        let rods = RodStructure::from_labels(
            vec![Rational::zero()],
            vec![(rat_i(1), rat_i(0)), (rat_i(0), rat_i(1))],
            AsymptoticClass::AeAle,
        );
        Ok(entry(
            self.name(),
            params.clone(),
            Signature::Riemannian,
            rods,
            vec![Some(p_minus), Some(p_plus)],
            Some(Box::new(numeric::FlatE4Eval)),
        ))
    }
}

// ---------------------------------------------------------------------------

/// Lorentzian Schwarzschild: one finite horizon rod between z = ±m.
struct Schwarzschild;

impl Family for Schwarzschild {
    fn name(&self) -> &'static str {
        "schwarzschild"
    }

    fn description(&self) -> &'static str {
        "Lorentzian Schwarzschild; horizon rod [-m, m]"
    }

    fn defaults(&self) -> Params {
        super::params_from(&[("m", rat_i(1))])
    }

    fn make(&self, params: &Params) -> Result<CatalogueEntry, CatalogueError> {
        let m = get_param(params, "m")?;
        if !m.is_positive() {
            return Err(CatalogueError::InvalidParameters(format!(
                "need m > 0, got {}",
                describe_params(params)
            )));
        }
        let nodes = vec![-m.clone(), m.clone()];
        let top = PatchingMatrix::diagonal(
            rf(Polynomial::linear_root(&-m.clone()), Polynomial::linear_root(&m)),
            rf(Polynomial::linear_root(&m), Polynomial::linear_root(&-m.clone())),
            Signature::Lorentzian,
            nodes.clone(),
            Some(crate::patching::RodInterval::top(m.clone())),
        );
        let matrices = rods_by_passing(&top, &nodes, false)?;
        let rods = RodStructure::from_labels(
            nodes,
            vec![(rat_i(0), rat_i(1)), (rat_i(1), rat_i(0)), (rat_i(0), rat_i(1))],
            AsymptoticClass::AfAlf,
        );
        let mf = rat_to_f64(&m);
        Ok(entry(
            self.name(),
            params.clone(),
            Signature::Lorentzian,
            rods,
            matrices,
            Some(Box::new(numeric::WeylEval::lorentzian(vec![(-mf, mf)], mf))),
        ))
    }
}

// ---------------------------------------------------------------------------

/// Riemannian Kerr with rational σ = (m² + a²)^{1/2}.
struct Kerr;

impl Kerr {
    fn top_matrix(m: &Rational, a: &Rational, sigma: &Rational) -> PatchingMatrix {
        // ((z+m)² - a², -2ma; -2ma, -(z-m)² + a²) / (z² - σ²)
        let den = linpair(sigma, &-sigma.clone());
        let shift_sq = |s: &Rational| {
            // (z + s)²
            Polynomial::linear_root(&-s.clone()).pow(2)
        };
        let a2 = Polynomial::constant(a * a);
        let p11 = rf(&shift_sq(m) - &a2, den.clone());
        let p22 = rf(&a2 - &shift_sq(&-m.clone()), den.clone());
        let p12 = rf(
            Polynomial::constant(-(m * a) * rat_i(2)),
            den,
        );
        PatchingMatrix::new(
            p11,
            p12,
            p22,
            Signature::Riemannian,
            vec![-sigma.clone(), sigma.clone()],
            Some(crate::patching::RodInterval::top(sigma.clone())),
        )
    }
}

impl Family for Kerr {
    fn name(&self) -> &'static str {
        "kerr"
    }

    fn description(&self) -> &'static str {
        "Riemannian Kerr; two nodes at ±σ, σ² = m² + a²"
    }

    fn defaults(&self) -> Params {
        super::params_from(&[("m", rat_i(3)), ("a", rat_i(4))])
    }

    fn make(&self, params: &Params) -> Result<CatalogueEntry, CatalogueError> {
        let m = get_param(params, "m")?;
        let a = get_param(params, "a")?;
        if !m.is_positive() || a.is_zero() {
            return Err(CatalogueError::InvalidParameters(
                "need m > 0 and a != 0".into(),
            ));
        }
        let sigma = rat_sqrt(&(&m * &m + &a * &a)).ok_or_else(|| {
            CatalogueError::InvalidParameters(
                "σ² = m² + a² must be a rational square for exact mode".into(),
            )
        })?;
        let nodes = vec![-sigma.clone(), sigma.clone()];
        let top = Kerr::top_matrix(&m, &a, &sigma);
        // P₋ is P₊ with m → −m in the diagonal (discrete isometry z → −z)
        let bottom = {
            let mut b = Kerr::top_matrix(&-m.clone(), &a, &sigma);
            // the isometry flips the off-diagonal sign convention back
            b.p12 = top.p12.clone();
            b.signature = Signature::Riemannian;
            b.rod = Some(crate::patching::RodInterval::bottom(-sigma.clone()));
            b
        };
        let (middle, _) = top
            .pass_node_standard(&sigma, Direction::Down)
            .map_err(|e| CatalogueError::InvalidParameters(e.to_string()))?;
        // middle-rod kernel: ∂t − a/(2mR₊) ∂φ with R₊ = m + σ
        let gamma = -&a / (&(&m * rat_i(2)) * &(&m + &sigma));
        let rods = RodStructure::from_labels(
            nodes,
            vec![
                (rat_i(0), rat_i(1)),
                (rat_i(1), gamma),
                (rat_i(0), rat_i(1)),
            ],
            AsymptoticClass::AfAlf,
        );
        let (mf, af) = (rat_to_f64(&m), rat_to_f64(&a));
        Ok(entry(
            self.name(),
            params.clone(),
            Signature::Riemannian,
            rods,
            vec![Some(bottom), Some(middle), Some(top)],
            Some(Box::new(numeric::KerrEval::new(mf, af))),
        ))
    }
}

// ---------------------------------------------------------------------------

/// Riemannian Taub-NUT with rational σ = (m² − N²)^{1/2}. The shipped top
/// matrix is the raw axis computation, which tends to a non-normalized
/// constant at infinity (class Other until normalized).
struct TaubNut;

impl TaubNut {
    fn top_matrix(m: &Rational, n: &Rational, sigma: &Rational) -> PatchingMatrix {
        let r_plus = m + sigma;
        let z_minus = Polynomial::linear_root(sigma);
        let z_plus = Polynomial::linear_root(&-sigma.clone());
        // ((z+m)² − N²) / (z² − σ²)
        let p11 = rf(
            &Polynomial::linear_root(&-m.clone()).pow(2) - &Polynomial::constant(n * n),
            &z_minus * &z_plus,
        );
        // −N(z−σ)/(R₊(z+σ))
        let p12 = rf(
            z_minus.clone().scale(&(-n / &r_plus)),
            z_plus.clone(),
        );
        // −2σ(z−σ)/(R₊(z+σ))
        let p22 = rf(
            z_minus.scale(&(-(sigma * rat_i(2)) / &r_plus)),
            z_plus,
        );
        PatchingMatrix::new(
            p11,
            p12,
            p22,
            Signature::Riemannian,
            vec![-sigma.clone(), sigma.clone()],
            Some(crate::patching::RodInterval::top(sigma.clone())),
        )
    }
}

impl Family for TaubNut {
    fn name(&self) -> &'static str {
        "taub_nut"
    }

    fn description(&self) -> &'static str {
        "Riemannian Taub-NUT; two nodes at ±σ, σ² = m² − N²"
    }

    fn defaults(&self) -> Params {
        super::params_from(&[("m", rat_i(5)), ("N", rat_i(4))])
    }

    fn make(&self, params: &Params) -> Result<CatalogueEntry, CatalogueError> {
        let m = get_param(params, "m")?;
        let n = get_param(params, "N")?;
        if !(&m * &m > &n * &n && !n.is_zero()) {
            return Err(CatalogueError::InvalidParameters(
                "need m² > N² > 0 to keep the nodes real and separate".into(),
            ));
        }
        let sigma = rat_sqrt(&(&m * &m - &n * &n)).ok_or_else(|| {
            CatalogueError::InvalidParameters(
                "σ² = m² − N² must be a rational square for exact mode".into(),
            )
        })?;
        let nodes = vec![-sigma.clone(), sigma.clone()];
        let top = TaubNut::top_matrix(&m, &n, &sigma);
        let matrices = rods_by_passing(&top, &nodes, false)?;
        let two_n = &n * rat_i(2);
        let rods = RodStructure::from_labels(
            nodes,
            vec![
                (two_n.clone(), rat_i(1)),
                (rat_i(1), rat_i(0)),
                (-two_n, rat_i(1)),
            ],
            AsymptoticClass::AfAlf,
        );
        let (mf, nf) = (rat_to_f64(&m), rat_to_f64(&n));
        Ok(entry(
            self.name(),
            params.clone(),
            Signature::Riemannian,
            rods,
            matrices,
            Some(Box::new(numeric::TaubNutEval::new(mf, nf))),
        ))
    }
}

// ---------------------------------------------------------------------------

/// Self-dual Taub-NUT (m = N): one node, Gibbons-Hawking form.
struct Sdtn;

impl Family for Sdtn {
    fn name(&self) -> &'static str {
        "sdtn"
    }

    fn description(&self) -> &'static str {
        "self-dual Taub-NUT; single node at the origin, Gibbons-Hawking form"
    }

    fn defaults(&self) -> Params {
        super::params_from(&[("m", rat_i(2))])
    }

    fn make(&self, params: &Params) -> Result<CatalogueEntry, CatalogueError> {
        let m = get_param(params, "m")?;
        if !m.is_positive() {
            return Err(CatalogueError::InvalidParameters("need m > 0".into()));
        }
        let top = gh_matrix(&Rational::one(), &[(&m * rat_i(2), Rational::zero())], &[]);
        let nodes = vec![Rational::zero()];
        let matrices = rods_by_passing(&top, &nodes, true)?;
        let rods = RodStructure::from_labels(
            nodes,
            vec![(rat_i(0), rat_i(1)), (rat_i(0), rat_i(1))],
            AsymptoticClass::AfAlf,
        );
        let mf = rat_to_f64(&m);
        Ok(entry(
            self.name(),
            params.clone(),
            Signature::Riemannian,
            rods,
            matrices,
            Some(Box::new(numeric::GhEval::new(1.0, vec![(2.0 * mf, 0.0)]))),
        ))
    }
}

// ---------------------------------------------------------------------------

/// Taub-bolt: m = 5N/4, σ = 3N/4; Hermitian but not (anti-)self-dual.
struct TaubBolt;

impl Family for TaubBolt {
    fn name(&self) -> &'static str {
        "taub_bolt"
    }

    fn description(&self) -> &'static str {
        "Taub-bolt (m = 5N/4); central rod is a bolt"
    }

    fn defaults(&self) -> Params {
        super::params_from(&[("N", rat_i(4))])
    }

    fn make(&self, params: &Params) -> Result<CatalogueEntry, CatalogueError> {
        let n = get_param(params, "N")?;
        if !n.is_positive() {
            return Err(CatalogueError::InvalidParameters("need N > 0".into()));
        }
        let m = &n * rat(5, 4);
        let sigma = &n * rat(3, 4);
        // this is the m = 5N/4 slice of the Taub-NUT top matrix:
        // p11 = (z+3σ)(z+σ/3)/(z²−σ²), off-diagonal −(z−σ)/(2(z+σ)),
        // p22 = −3(z−σ)/(4(z+σ))
        let top = TaubNut::top_matrix(&m, &n, &sigma);
        let nodes = vec![-sigma.clone(), sigma.clone()];
        let matrices = rods_by_passing(&top, &nodes, false)?;
        let two_n = &n * rat_i(2);
        let rods = RodStructure::from_labels(
            nodes,
            vec![
                (two_n.clone(), rat_i(1)),
                (rat_i(1), rat_i(0)),
                (-two_n, rat_i(1)),
            ],
            AsymptoticClass::AfAlf,
        );
        let (mf, nf) = (rat_to_f64(&m), rat_to_f64(&n));
        Ok(entry(
            self.name(),
            params.clone(),
            Signature::Riemannian,
            rods,
            matrices,
            Some(Box::new(numeric::TaubNutEval::new(mf, nf))),
        ))
    }
}

// ---------------------------------------------------------------------------

/// Kerr-Taub-bolt: two nodes at ±σ with σ² = m² + a² − N².
struct KerrTaubBolt;

impl Family for KerrTaubBolt {
    fn name(&self) -> &'static str {
        "kerr_taub_bolt"
    }

    fn description(&self) -> &'static str {
        "Kerr-Taub-bolt; σ² = m² + a² − N², AF, conically singular"
    }

    fn defaults(&self) -> Params {
        super::params_from(&[("m", rat_i(4)), ("a", rat_i(7)), ("N", rat_i(1))])
    }

    fn make(&self, params: &Params) -> Result<CatalogueEntry, CatalogueError> {
        let m = get_param(params, "m")?;
        let a = get_param(params, "a")?;
        let n = get_param(params, "N")?;
        if !m.is_positive() {
            return Err(CatalogueError::InvalidParameters("need m > 0".into()));
        }
        if &a * &a == &n * &n {
            return Err(CatalogueError::InvalidParameters(
                "need a² ≠ N² (metric functions degenerate)".into(),
            ));
        }
        let s2 = &(&m * &m + &a * &a) - &(&n * &n);
        if !s2.is_positive() {
            return Err(CatalogueError::InvalidParameters(
                "need σ² = m² + a² − N² > 0".into(),
            ));
        }
        let sigma = rat_sqrt(&s2).ok_or_else(|| {
            CatalogueError::InvalidParameters(
                "σ² = m² + a² − N² must be a rational square for exact mode".into(),
            )
        })?;
        let nodes = vec![-sigma.clone(), sigma.clone()];
        let den = linpair(&sigma, &-sigma.clone());
        // (z² + 2mz + m² − (a+N)², 2(Nz − am); ·, −z² + 2mz − m² + (a−N)²)
        let apn = &a + &n;
        let amn = &a - &n;
        let p11 = rf(
            Polynomial::new(vec![&(&m * &m) - &(&apn * &apn), &m * rat_i(2), rat_i(1)]),
            den.clone(),
        );
        let p12 = rf(
            Polynomial::new(vec![-(&a * &m) * rat_i(2), &n * rat_i(2)]),
            den.clone(),
        );
        let p22 = rf(
            Polynomial::new(vec![&(&amn * &amn) - &(&m * &m), &m * rat_i(2), rat_i(-1)]),
            den,
        );
        let top = PatchingMatrix::new(
            p11,
            p12,
            p22,
            Signature::Riemannian,
            nodes.clone(),
            Some(crate::patching::RodInterval::top(sigma.clone())),
        );
        let matrices = rods_by_passing(&top, &nodes, false)?;
        let rods = RodStructure::from_labels(
            nodes,
            vec![
                (rat_i(0), rat_i(1)),
                (rat_i(1), rat_i(0)),
                (rat_i(0), rat_i(1)),
            ],
            AsymptoticClass::AfAlf,
        );
        let (mf, af, nf) = (rat_to_f64(&m), rat_to_f64(&a), rat_to_f64(&n));
        Ok(entry(
            self.name(),
            params.clone(),
            Signature::Riemannian,
            rods,
            matrices,
            Some(Box::new(numeric::KtbEval::new(mf, af, nf))),
        ))
    }
}

// ---------------------------------------------------------------------------

/// Builds the Gibbons-Hawking matrix [[V(0,z), −1], [−1, 0]] from
/// V(0,z) = δ + Σ mᵢ/(z − aᵢ), with the terms in `flipped` entered with the
/// opposite sign (for rods below those nodes).
fn gh_matrix(
    delta: &Rational,
    masses: &[(Rational, Rational)],
    flipped: &[Rational],
) -> PatchingMatrix {
    let mut v = RationalFunction::constant(delta.clone());
    for (mass, node) in masses {
        let sign = if flipped.contains(node) { -mass.clone() } else { mass.clone() };
        v = &v + &rf(Polynomial::constant(sign), Polynomial::linear_root(node));
    }
    let nodes: Vec<Rational> = masses.iter().map(|(_, a)| a.clone()).collect();
    PatchingMatrix::new(
        v,
        RationalFunction::constant(-Rational::one()),
        RationalFunction::zero(),
        Signature::Riemannian,
        nodes,
        None,
    )
}

fn gh_node_params(params: &Params) -> Result<Vec<Rational>, CatalogueError> {
    let mut nodes = Vec::new();
    let mut i = 1;
    while let Some(a) = params.get(&format!("a{}", i)) {
        nodes.push(a.clone());
        i += 1;
    }
    if nodes.is_empty() {
        return Err(CatalogueError::MissingParameter("a1".to_string()));
    }
    let mut sorted = nodes.clone();
    sorted.sort();
    sorted.dedup();
    if sorted.len() != nodes.len() {
        return Err(CatalogueError::InvalidParameters("nodes must be distinct".into()));
    }
    Ok(sorted)
}

fn gh_entry(
    name: &'static str,
    params: &Params,
    delta: Rational,
    class: AsymptoticClass,
) -> Result<CatalogueEntry, CatalogueError> {
    let m = get_param(params, "m")?;
    if !m.is_positive() {
        return Err(CatalogueError::InvalidParameters("need m > 0".into()));
    }
    let nodes = gh_node_params(params)?;
    let masses: Vec<(Rational, Rational)> =
        nodes.iter().map(|a| (m.clone(), a.clone())).collect();
    let top = gh_matrix(&delta, &masses, &[]);
    let matrices = rods_by_passing(&top, &nodes, true)?;
    let kernels = vec![(rat_i(0), rat_i(1)); nodes.len() + 1];
    let rods = RodStructure::from_labels(nodes.clone(), kernels, class);
    let sources: Vec<(f64, f64)> =
        masses.iter().map(|(m, a)| (rat_to_f64(m), rat_to_f64(a))).collect();
    Ok(entry(
        name,
        params.clone(),
        Signature::Riemannian,
        rods,
        matrices,
        Some(Box::new(numeric::GhEval::new(rat_to_f64(&delta), sources))),
    ))
}

/// Multi-Taub-NUT: V = 1 + Σ m/ρᵢ, ALF.
struct GhMultiTaubNut;

impl Family for GhMultiTaubNut {
    fn name(&self) -> &'static str {
        "gh_mtn"
    }

    fn description(&self) -> &'static str {
        "multi-Taub-NUT (Gibbons-Hawking, V → 1); equal masses at a1..ak"
    }

    fn defaults(&self) -> Params {
        super::params_from(&[("m", rat_i(1)), ("a1", rat_i(-1)), ("a2", rat_i(1))])
    }

    fn make(&self, params: &Params) -> Result<CatalogueEntry, CatalogueError> {
        gh_entry(self.name(), params, Rational::one(), AsymptoticClass::AfAlf)
    }
}

/// Multi-Eguchi-Hanson: V = Σ m/ρᵢ, ALE.
struct GhMultiEguchiHanson;

impl Family for GhMultiEguchiHanson {
    fn name(&self) -> &'static str {
        "gh_meh"
    }

    fn description(&self) -> &'static str {
        "multi-Eguchi-Hanson (Gibbons-Hawking, V → 0); equal masses at a1..ak"
    }

    fn defaults(&self) -> Params {
        super::params_from(&[("m", rat_i(1)), ("a1", rat_i(-1)), ("a2", rat_i(1))])
    }

    fn make(&self, params: &Params) -> Result<CatalogueEntry, CatalogueError> {
        gh_entry(self.name(), params, Rational::zero(), AsymptoticClass::AeAle)
    }
}

// ---------------------------------------------------------------------------

/// Two unequal point masses at z = ±σ in Gibbons-Hawking form:
/// V(0,z) = (bz − aσ)/(z² − σ²), masses (b∓a)/2.
struct Bazaikin;

impl Family for Bazaikin {
    fn name(&self) -> &'static str {
        "bazaikin"
    }

    fn description(&self) -> &'static str {
        "unequal-mass two-centre Gibbons-Hawking (Eguchi-Hanson-like), ALE"
    }

    fn defaults(&self) -> Params {
        super::params_from(&[("a", rat_i(1)), ("b", rat_i(3)), ("sigma", rat_i(2))])
    }

    fn make(&self, params: &Params) -> Result<CatalogueEntry, CatalogueError> {
        let a = get_param(params, "a")?;
        let b = get_param(params, "b")?;
        let sigma = get_param(params, "sigma")?;
        if !sigma.is_positive() {
            return Err(CatalogueError::InvalidParameters("need sigma > 0".into()));
        }
        // masses α = (b − a)/2 at +σ and β = (b + a)/2 at −σ must be positive
        let alpha = &(&b - &a) / rat_i(2);
        let beta = &(&b + &a) / rat_i(2);
        if !alpha.is_positive() || !beta.is_positive() {
            return Err(CatalogueError::InvalidParameters(
                "need |a| < b for positive point masses".into(),
            ));
        }
        let masses = vec![(beta.clone(), -sigma.clone()), (alpha.clone(), sigma.clone())];
        let top = gh_matrix(&Rational::zero(), &masses, &[]);
        let nodes = vec![-sigma.clone(), sigma.clone()];
        let matrices = rods_by_passing(&top, &nodes, true)?;
        let kernels = vec![(rat_i(0), rat_i(1)); 3];
        let rods = RodStructure::from_labels(nodes, kernels, AsymptoticClass::AeAle);
        let sf = rat_to_f64(&sigma);
        Ok(entry(
            self.name(),
            params.clone(),
            Signature::Riemannian,
            rods,
            matrices,
            Some(Box::new(numeric::GhEval::new(
                0.0,
                vec![(rat_to_f64(&beta), -sf), (rat_to_f64(&alpha), sf)],
            ))),
        ))
    }
}

// ---------------------------------------------------------------------------

fn weyl_f_even(nodes: &[Rational]) -> RationalFunction {
    // massive rods [a0,a1], [a2,a3], ...: on the top axis
    // f = Π (z − a_odd) / (z − a_even)
    let mut num = Polynomial::one();
    let mut den = Polynomial::one();
    for (i, a) in nodes.iter().enumerate() {
        if i % 2 == 1 {
            num = &num * &Polynomial::linear_root(a);
        } else {
            den = &den * &Polynomial::linear_root(a);
        }
    }
    rf(num, den)
}

fn weyl_f_odd(nodes: &[Rational]) -> RationalFunction {
    // bottom semi-infinite massive rod (−∞, a1] then [a2,a3], ...:
    // f = 2 (z−a1)(z−a3)... / (z−a2)(z−a4)...
    let mut num = Polynomial::constant(rat_i(2));
    let mut den = Polynomial::one();
    for (i, a) in nodes.iter().enumerate() {
        if i % 2 == 0 {
            num = &num * &Polynomial::linear_root(a);
        } else {
            den = &den * &Polynomial::linear_root(a);
        }
    }
    rf(num, den)
}

fn weyl_nodes(params: &Params, parity_even: bool) -> Result<Vec<Rational>, CatalogueError> {
    let nodes = gh_node_params(params)?;
    if parity_even && nodes.len() % 2 != 0 {
        return Err(CatalogueError::InvalidParameters(
            "need an even number of nodes".into(),
        ));
    }
    if !parity_even && nodes.len() % 2 != 1 {
        return Err(CatalogueError::InvalidParameters(
            "need an odd number of nodes".into(),
        ));
    }
    Ok(nodes)
}

fn weyl_entry(
    name: &'static str,
    params: &Params,
    nodes: Vec<Rational>,
    f_top: RationalFunction,
    signature: Signature,
    class: AsymptoticClass,
) -> Result<CatalogueEntry, CatalogueError> {
    let s = match signature {
        Signature::Lorentzian => Rational::one(),
        Signature::Riemannian => -Rational::one(),
    };
    let top = PatchingMatrix::diagonal(
        f_top.recip().expect("f nonzero"),
        &RationalFunction::constant(s) * &f_top,
        signature,
        nodes.clone(),
        Some(crate::patching::RodInterval::top(nodes.last().unwrap().clone())),
    );
    let matrices = rods_by_passing(&top, &nodes, false)?;
    // ∂φ on the odd-indexed rods counting down from the top, ∂t-null between
    let n_rods = nodes.len() + 1;
    let kernels: Vec<(Rational, Rational)> = (0..n_rods)
        .map(|i| {
            if (n_rods - 1 - i) % 2 == 0 {
                (rat_i(0), rat_i(1))
            } else {
                (rat_i(1), rat_i(0))
            }
        })
        .collect();
    let rods = RodStructure::from_labels(nodes.clone(), kernels, class);
    // finite massive rods for the numeric potential, plus the semi-infinite
    // one for the odd case
    let nf: Vec<f64> = nodes.iter().map(rat_to_f64).collect();
    let ev: Box<dyn MetricEval> = if nodes.len() % 2 == 0 {
        let rods_f: Vec<(f64, f64)> = nf.chunks(2).map(|c| (c[0], c[1])).collect();
        match signature {
            Signature::Lorentzian => {
                Box::new(numeric::WeylEval::lorentzian(rods_f, *nf.last().unwrap()))
            }
            Signature::Riemannian => {
                Box::new(numeric::WeylEval::riemannian(rods_f, vec![], *nf.last().unwrap()))
            }
        }
    } else {
        let semi = nf[0];
        let rods_f: Vec<(f64, f64)> = nf[1..].chunks(2).map(|c| (c[0], c[1])).collect();
        Box::new(numeric::WeylEval::riemannian(rods_f, vec![semi], *nf.last().unwrap()))
    };
    Ok(entry(name, params.clone(), signature, rods, matrices, Some(ev)))
}

/// Two collinear Schwarzschild black holes (Lorentzian Weyl class).
struct DoubleSchwarzschild;

impl Family for DoubleSchwarzschild {
    fn name(&self) -> &'static str {
        "double_schwarzschild"
    }

    fn description(&self) -> &'static str {
        "two collinear static black holes; four nodes a1 < a2 < a3 < a4"
    }

    fn defaults(&self) -> Params {
        super::params_from(&[
            ("a1", rat_i(0)),
            ("a2", rat_i(1)),
            ("a3", rat_i(2)),
            ("a4", rat_i(3)),
        ])
    }

    fn make(&self, params: &Params) -> Result<CatalogueEntry, CatalogueError> {
        let nodes = weyl_nodes(params, true)?;
        if nodes.len() != 4 {
            return Err(CatalogueError::InvalidParameters(
                "exactly four nodes a1..a4".into(),
            ));
        }
        let f = weyl_f_even(&nodes);
        weyl_entry(
            self.name(),
            params,
            nodes,
            f,
            Signature::Lorentzian,
            AsymptoticClass::AfAlf,
        )
    }
}

/// Even-node Weyl generalization of the double Schwarzschild.
struct WeylEven;

impl Family for WeylEven {
    fn name(&self) -> &'static str {
        "weyl_even"
    }

    fn description(&self) -> &'static str {
        "static multi-black-hole (even node count a1 < … < a2k), AF"
    }

    fn defaults(&self) -> Params {
        super::params_from(&[("a1", rat_i(-2)), ("a2", rat_i(-1)), ("a3", rat_i(1)), ("a4", rat_i(2))])
    }

    fn make(&self, params: &Params) -> Result<CatalogueEntry, CatalogueError> {
        let nodes = weyl_nodes(params, true)?;
        let f = weyl_f_even(&nodes);
        weyl_entry(
            self.name(),
            params,
            nodes,
            f,
            Signature::Lorentzian,
            AsymptoticClass::AfAlf,
        )
    }
}

/// Odd-node Weyl class (C-metric pattern), Riemannian and ALE.
struct WeylOdd;

impl Family for WeylOdd {
    fn name(&self) -> &'static str {
        "weyl_odd"
    }

    fn description(&self) -> &'static str {
        "static odd-node Weyl class (C-metric pattern), ALE"
    }

    fn defaults(&self) -> Params {
        super::params_from(&[
            ("a1", rat_i(-2)),
            ("a2", rat_i(0)),
            ("a3", rat_i(1)),
            ("a4", rat_i(2)),
            ("a5", rat_i(3)),
        ])
    }

    fn make(&self, params: &Params) -> Result<CatalogueEntry, CatalogueError> {
        let nodes = weyl_nodes(params, false)?;
        let f = weyl_f_odd(&nodes);
        weyl_entry(
            self.name(),
            params,
            nodes,
            f,
            Signature::Riemannian,
            AsymptoticClass::AeAle,
        )
    }
}

// ---------------------------------------------------------------------------

/// Riemannian C-metric with exactly supplied cubic roots β₁ < β₂ < 0 < β.
struct CMetric;

impl Family for CMetric {
    fn name(&self) -> &'static str {
        "c_metric"
    }

    fn description(&self) -> &'static str {
        "Riemannian C-metric; three nodes μ < ν < 0 < ξ from supplied cubic roots"
    }

    fn defaults(&self) -> Params {
        super::params_from(&[
            ("b1", rat(-7, 3)),
            ("b2", rat(-7, 5)),
            ("b", rat(7, 8)),
            ("A", rat_i(1)),
        ])
    }

    fn make(&self, params: &Params) -> Result<CatalogueEntry, CatalogueError> {
        let b1 = get_param(params, "b1")?;
        let b2 = get_param(params, "b2")?;
        let b = get_param(params, "b")?;
        let big_a = get_param(params, "A")?;
        if !(b1 < b2 && b2.is_negative() && b.is_positive()) {
            return Err(CatalogueError::InvalidParameters(
                "need roots ordered b1 < b2 < 0 < b".into(),
            ));
        }
        if big_a.is_zero() {
            return Err(CatalogueError::InvalidParameters("need A ≠ 0".into()));
        }
        // the roots must reconstruct G(x) = 1 − x² − αx³: the elementary
        // symmetric functions satisfy e2 = 0 and e3 = −e1 = 1/α
        let e1 = &(&b + &b1) + &b2;
        let e2 = &(&(&b * &b1) + &(&b * &b2)) + &(&b1 * &b2);
        let e3 = &(&b * &b1) * &b2;
        if !e2.is_zero() || e3 != -e1.clone() || e1.is_zero() {
            return Err(CatalogueError::InvalidParameters(
                "roots do not reconstruct a cubic of the form 1 - x^2 - alpha*x^3".into(),
            ));
        }
        let alpha = -e1.recip();
        let two_a2 = &(&big_a * &big_a) * rat_i(2);
        let mu = &(&alpha * &b1) / &two_a2;
        let nu = &(&alpha * &b2) / &two_a2;
        let xi = &(&alpha * &b) / &two_a2;
        if !(mu < nu && nu.is_negative() && xi.is_positive()) {
            return Err(CatalogueError::InvalidParameters(
                "derived nodes are not ordered μ < ν < 0 < ξ".into(),
            ));
        }
        let nodes = vec![mu.clone(), nu.clone(), xi.clone()];
        // f on the top rod: 2(z−μ)(z−ξ)/(z−ν)
        let f_top = rf(
            linpair(&mu, &xi).scale(&rat_i(2)),
            Polynomial::linear_root(&nu),
        );
        let top = PatchingMatrix::diagonal(
            f_top.recip().expect("nonzero"),
            -&f_top,
            Signature::Riemannian,
            nodes.clone(),
            Some(crate::patching::RodInterval::top(xi.clone())),
        );
        let matrices = rods_by_passing(&top, &nodes, false)?;
        let kernels = vec![
            (rat_i(1), rat_i(0)),
            (rat_i(0), rat_i(1)),
            (rat_i(1), rat_i(0)),
            (rat_i(0), rat_i(1)),
        ];
        let rods = RodStructure::from_labels(nodes.clone(), kernels, AsymptoticClass::AeAle);
        // the Weyl potential has a semi-infinite massive rod below μ and a
        // finite one [ν, ξ]
        let (muf, nuf, xif) = (rat_to_f64(&mu), rat_to_f64(&nu), rat_to_f64(&xi));
        Ok(entry(
            self.name(),
            params.clone(),
            Signature::Riemannian,
            rods,
            matrices,
            Some(Box::new(numeric::WeylEval::riemannian(
                vec![(nuf, xif)],
                vec![muf],
                xif,
            ))),
        ))
    }
}

// ---------------------------------------------------------------------------

/// Type-D twisting family: numeric rod structure from the quartic's roots;
/// patching-matrix entries have no shipped closed form, only the degree
/// pattern is validated (see `pd_shape_check`).
struct PlebanskiDemianski;

impl Family for PlebanskiDemianski {
    fn name(&self) -> &'static str {
        "plebanski_demianski"
    }

    fn description(&self) -> &'static str {
        "Plebanski-Demianski (ALE, type D); numeric rod structure only"
    }

    fn defaults(&self) -> Params {
        // quartic P(p) = 1 + (9/4)p³ − (61/8)p² − (9/4)p + ... with roots
        // −4, −1/2, 1/4, 2
        super::params_from(&[
            ("gamma", rat_i(1)),
            ("n", rat(-9, 8)),
            ("epsilon", rat(61, 8)),
            ("m", rat(9, 8)),
        ])
    }

    fn make(&self, params: &Params) -> Result<CatalogueEntry, CatalogueError> {
        let g = get_param(params, "gamma")?;
        let n = get_param(params, "n")?;
        let e = get_param(params, "epsilon")?;
        let m = get_param(params, "m")?;
        if !g.is_positive() {
            return Err(CatalogueError::InvalidParameters("need gamma > 0".into()));
        }
        // P(p) = γ + 2np − εp² + 2mp³ + γp⁴
        let quartic = Polynomial::new(vec![
            g.clone(),
            &n * rat_i(2),
            -e.clone(),
            &m * rat_i(2),
            g.clone(),
        ]);
        let (exact_roots, roots) = four_real_roots(&quartic)?;
        // nodes z = −ε/2 + m s + (γ/2) s² at the corner sums
        // s ∈ {p2+p3, p2+p4, p3+p4}
        let nodes_exact: Vec<Rational> = match exact_roots {
            Some(ps) => {
                let node_of = |s: &Rational| {
                    &(&(&e / rat_i(-2)) + &(&m * s)) + &(&(&g / rat_i(2)) * &(s * s))
                };
                let mut ns = vec![
                    node_of(&(&ps[1] + &ps[2])),
                    node_of(&(&ps[1] + &ps[3])),
                    node_of(&(&ps[2] + &ps[3])),
                ];
                ns.sort();
                ns
            }
            None => {
                let node_of = |s: f64| {
                    rat_to_f64(&e) * -0.5 + rat_to_f64(&m) * s + rat_to_f64(&g) * 0.5 * s * s
                };
                let mut zs = vec![
                    node_of(roots[1] + roots[2]),
                    node_of(roots[1] + roots[3]),
                    node_of(roots[2] + roots[3]),
                ];
                zs.sort_by(|x, y| x.partial_cmp(y).unwrap());
                zs.iter().map(|&z| crate::exact::rat_approx(z)).collect()
            }
        };
        let kernels = vec![(rat_i(0), rat_i(1)); 4];
        let rods = RodStructure::from_labels(nodes_exact, kernels, AsymptoticClass::AeAle);
        let ev = numeric::PdEval::new(
            rat_to_f64(&g),
            rat_to_f64(&n),
            rat_to_f64(&e),
            rat_to_f64(&m),
            [roots[0], roots[1], roots[2], roots[3]],
        );
        Ok(entry(
            self.name(),
            params.clone(),
            Signature::Riemannian,
            rods,
            vec![None, None, None, None],
            Some(Box::new(ev)),
        ))
    }
}

// ---------------------------------------------------------------------------

/// Chen-Teo: numeric rod structure from the quartic X; shape-only matrix
/// validation (see `ct_shape_check`).
struct ChenTeo;

impl Family for ChenTeo {
    fn name(&self) -> &'static str {
        "chen_teo"
    }

    fn description(&self) -> &'static str {
        "Chen-Teo (ALF instanton); numeric rod structure only"
    }

    fn defaults(&self) -> Params {
        // X = (x+2)(x+1)(x−1)(x−3) = x⁴ − x³ − 7x² + x + 6
        super::params_from(&[
            ("A0", rat_i(6)),
            ("A1", rat_i(1)),
            ("A2", rat_i(-7)),
            ("A3", rat_i(-1)),
            ("A4", rat_i(1)),
            ("nu", rat(1, 2)),
            ("k", rat_i(1)),
        ])
    }

    fn make(&self, params: &Params) -> Result<CatalogueEntry, CatalogueError> {
        let a: Vec<Rational> = (0..5)
            .map(|i| get_param(params, &format!("A{}", i)))
            .collect::<Result<_, _>>()?;
        let nu = get_param(params, "nu")?;
        let k = get_param(params, "k")?;
        if !a[4].is_positive() {
            return Err(CatalogueError::InvalidParameters("need A4 > 0".into()));
        }
        if !k.is_positive() {
            return Err(CatalogueError::InvalidParameters("need k > 0".into()));
        }
        let quartic = Polynomial::new(a.clone());
        let (exact_roots, roots) = four_real_roots(&quartic)?;
        let af: Vec<f64> = a.iter().map(rat_to_f64).collect();
        // z at the corner with x-sum s: −(A2 + A3 s + A4 s²)/2, over the
        // corner sums s ∈ {x1+x2, x1+x3, x2+x3}
        let nodes_exact: Vec<Rational> = match exact_roots {
            Some(xs) => {
                let node_of = |s: &Rational| {
                    -&(&(&a[2] + &(&a[3] * s)) + &(&a[4] * &(s * s))) / rat_i(2)
                };
                let mut ns = vec![
                    node_of(&(&xs[0] + &xs[1])),
                    node_of(&(&xs[0] + &xs[2])),
                    node_of(&(&xs[1] + &xs[2])),
                ];
                ns.sort();
                ns
            }
            None => {
                let node_of = |s: f64| -0.5 * (af[2] + af[3] * s + af[4] * s * s);
                let mut zs = vec![
                    node_of(roots[0] + roots[1]),
                    node_of(roots[0] + roots[2]),
                    node_of(roots[1] + roots[2]),
                ];
                zs.sort_by(|x, y| x.partial_cmp(y).unwrap());
                zs.iter().map(|&z| crate::exact::rat_approx(z)).collect()
            }
        };
        let kernels = vec![(rat_i(0), rat_i(1)); 4];
        let rods = RodStructure::from_labels(nodes_exact, kernels, AsymptoticClass::AfAlf);
        let ev = numeric::CtEval::new(
            [af[0], af[1], af[2], af[3], af[4]],
            rat_to_f64(&nu),
            [roots[0], roots[1], roots[2], roots[3]],
        );
        Ok(entry(
            self.name(),
            params.clone(),
            Signature::Riemannian,
            rods,
            vec![None, None, None, None],
            Some(Box::new(ev)),
        ))
    }
}

/// The Lorentzian Tomimatsu-Sato δ=2 patching matrix on the top axis, for
/// rational parameters with p² + q² = 1. Deliberately pathological: the
/// determinant identity holds but pole admissibility fails (double poles at
/// z = ±1 and extra poles at the roots of the quartic numerator factor).
pub fn tomimatsu_sato_delta2(p: &Rational, q: &Rational) -> Result<PatchingMatrix, CatalogueError> {
    if &(&(p * p) + &(q * q)) != &Rational::one() || p.is_zero() {
        return Err(CatalogueError::InvalidParameters(
            "need p² + q² = 1 with p ≠ 0".into(),
        ));
    }
    // Q(z) = p²(z²−1)² + 4zp(z−1)² + 8z²(p+1)
    let z2m1 = Polynomial::new(vec![rat_i(-1), rat_i(0), rat_i(1)]);
    let zm1 = Polynomial::linear_root(&Rational::one());
    let zpoly = Polynomial::monomial(Rational::one(), 1);
    let big_q = &(&z2m1.pow(2).scale(&(p * p))
        + &(&zpoly * &zm1.pow(2)).scale(&(p * rat_i(4))))
        + &Polynomial::monomial(&(p + &Rational::one()) * rat_i(8), 2);
    let denom = z2m1.pow(2).scale(&(p * p));
    let p11 = rf(big_q.clone(), denom.clone());
    let p12 = rf(Polynomial::monomial(q * rat_i(8), 2), denom.clone());
    // p22 = (p⁴(z²−1)⁴ + 64 q² z⁴) / (p²(z²−1)² Q(z))
    let p22 = rf(
        &z2m1.pow(4).scale(&(&(p * p) * &(p * p)))
            + &Polynomial::monomial(&(q * q) * rat_i(64), 4),
        &denom * &big_q,
    );
    Ok(PatchingMatrix::new(
        p11,
        p12,
        p22,
        Signature::Lorentzian,
        vec![rat_i(-1), rat_i(1)],
        Some(crate::patching::RodInterval::top(rat_i(1))),
    ))
}

#[cfg(test)]
mod tests {
    use super::super::{
        ct_shape_check, family_names, killing_basis_change, make_entry, pd_shape_check, Params,
    };
    use super::*;
    use crate::exact::rat_to_string;
    use crate::patching::find_conjugation;

    fn defaults(name: &str) -> super::super::CatalogueEntry {
        make_entry(name, &Params::new()).expect(name)
    }

    #[test]
    fn registry_lists_all_families() {
        let names = family_names();
        assert_eq!(names.len(), 16);
        for want in [
            "flat_e4",
            "schwarzschild",
            "kerr",
            "taub_nut",
            "sdtn",
            "taub_bolt",
            "kerr_taub_bolt",
            "gh_mtn",
            "gh_meh",
            "bazaikin",
            "double_schwarzschild",
            "weyl_even",
            "weyl_odd",
            "c_metric",
            "plebanski_demianski",
            "chen_teo",
        ] {
            assert!(names.contains(&want), "missing {}", want);
        }
        assert!(matches!(
            make_entry("nonesuch", &Params::new()),
            Err(CatalogueError::UnknownFamily(_))
        ));
    }

    #[test]
    fn all_shipped_matrices_pass_det_and_pole_checks() {
        for name in family_names() {
            let e = defaults(name);
            assert_eq!(e.matrices.len(), e.rod_structure.n_rods(), "{}", name);
            for (i, slot) in e.matrices.iter().enumerate() {
                let Some(p) = slot else { continue };
                let det = p.det_check();
                assert!(det.pass, "{} rod {} det residual {:?}", name, i, det.residual);
                let audit = p.pole_audit();
                assert!(
                    audit.admissible,
                    "{} rod {} pole findings {:?}",
                    name, i, audit.findings
                );
            }
        }
    }

    #[test]
    fn matrix_slots_match_closed_form_availability() {
        for name in family_names() {
            let e = defaults(name);
            let expect_matrices = !matches!(name, "plebanski_demianski" | "chen_teo");
            assert_eq!(e.has_matrices(), expect_matrices, "{}", name);
            if !expect_matrices {
                assert!(matches!(
                    e.patching_matrix(0),
                    Err(CatalogueError::NotImplementedInPaper)
                ));
            }
            assert!(matches!(
                e.patching_matrix(99),
                Err(CatalogueError::BadRodIndex(99, _))
            ));
        }
    }

    #[test]
    fn kerr_chain_stays_admissible_and_conjugation_is_recoverable() {
        // passing down both nodes gives a valid (if growth-gauged)
        // representative for the bottom rod
        let e = defaults("kerr");
        let top = e.patching_matrix(2).unwrap();
        let (middle, _) = top.pass_node_standard(&rat_i(5), Direction::Down).unwrap();
        let (derived_bottom, _) =
            middle.pass_node_standard(&rat_i(-5), Direction::Down).unwrap();
        assert!(derived_bottom.det_check().pass);
        assert!(derived_bottom.pole_audit().admissible);
        // a constant conjugation applied by hand is recovered exactly
        let c = crate::patching::ConjugationRecord::lower_shear(rat(1, 2));
        let q = top.conjugate(&c).unwrap();
        let found = find_conjugation(top, &q).expect("conjugation exists");
        assert!(top.conjugate(&found).unwrap().same_entries(&q));
    }

    #[test]
    fn taub_bolt_entries() {
        // N = 4: m = 5, σ = 3, off-diagonal −(z−σ)/(2(z+σ))
        let e = defaults("taub_bolt");
        let top = e.patching_matrix(2).unwrap();
        let want = rf(
            Polynomial::linear_root(&rat_i(3)).scale(&rat(-1, 2)),
            Polynomial::linear_root(&rat_i(-3)),
        );
        assert_eq!(top.p12, want);
        assert!(top.det_check().pass);
    }

    #[test]
    fn gh_kernel_labels_repeat() {
        let e = defaults("gh_mtn");
        let rods = e.rod_structure();
        assert_eq!(rods.n_rods(), 3);
        for rod in &rods.rods {
            assert_eq!(rod.kernel, (rat_i(0), rat_i(1)));
        }
    }

    #[test]
    fn killing_basis_change_flattens_one_centre_eguchi_hanson() {
        // V = 2/z with one node; C with (α, β, γ) = (2, 1, 0) turns the
        // matrix into diag(1/(2z), −2z)
        let p = gh_matrix(&Rational::zero(), &[(rat_i(2), Rational::zero())], &[]);
        let q = killing_basis_change(&p, &rat_i(2), &rat_i(1), &rat_i(0)).unwrap();
        let two_z = Polynomial::monomial(rat_i(2), 1);
        assert_eq!(q.p11, rf(Polynomial::one(), two_z.clone()));
        assert!(q.p12.is_zero());
        assert_eq!(q.p22, RationalFunction::from_poly(-&two_z));
    }

    #[test]
    fn pd_nodes_exact_for_rational_quartic() {
        let e = defaults("plebanski_demianski");
        let nodes: Vec<String> =
            e.rod_structure().nodes.iter().map(rat_to_string).collect();
        assert_eq!(nodes, vec!["-65/16", "-1", "5/4"]);
    }

    #[test]
    fn ct_nodes_exact_for_rational_quartic() {
        let e = defaults("chen_teo");
        let nodes: Vec<String> =
            e.rod_structure().nodes.iter().map(rat_to_string).collect();
        assert_eq!(nodes, vec!["-5/2", "5/2", "7/2"]);
    }

    #[test]
    fn shape_checks_accept_and_reject() {
        // a hand-built matrix with the (quadratic, linear, quartic)/cubic shape
        let c1 = Polynomial::from_roots(&[rat_i(1), rat_i(2), rat_i(3)]);
        let shape_pd = PatchingMatrix::new(
            rf(Polynomial::new(vec![rat_i(1), rat_i(0), rat_i(1)]), c1.clone()),
            rf(Polynomial::new(vec![rat_i(0), rat_i(1)]), c1.clone()),
            rf(Polynomial::new(vec![rat_i(1), rat_i(0), rat_i(0), rat_i(0), rat_i(1)]), c1.clone()),
            Signature::Riemannian,
            vec![rat_i(1), rat_i(2), rat_i(3)],
            None,
        );
        assert!(pd_shape_check(&shape_pd));
        assert!(!ct_shape_check(&shape_pd));
        let shape_ct = PatchingMatrix::new(
            rf(Polynomial::new(vec![rat_i(1), rat_i(0), rat_i(0), rat_i(1)]), c1.clone()),
            rf(Polynomial::new(vec![rat_i(0), rat_i(1)]), c1.clone()),
            rf(Polynomial::new(vec![rat_i(2), rat_i(0), rat_i(0), rat_i(-1)]), c1),
            Signature::Riemannian,
            vec![rat_i(1), rat_i(2), rat_i(3)],
            None,
        );
        assert!(ct_shape_check(&shape_ct));
        assert!(!pd_shape_check(&shape_ct));
        // two-node matrices have the wrong denominator degree for either
        let kerr = defaults("kerr");
        let top = kerr.patching_matrix(2).unwrap();
        assert!(!pd_shape_check(top));
        assert!(!ct_shape_check(top));
    }

    #[test]
    fn tomimatsu_sato_fails_pole_audit_but_not_det() {
        let p = tomimatsu_sato_delta2(&rat(3, 5), &rat(4, 5)).unwrap();
        assert!(p.det_check().pass);
        let audit = p.pole_audit();
        assert!(!audit.admissible);
        use crate::patching::PoleClass;
        // double poles at both z = ±1
        assert!(audit
            .findings
            .iter()
            .any(|f| f.class == PoleClass::DoublePole && f.location == "1"));
        assert!(audit
            .findings
            .iter()
            .any(|f| f.class == PoleClass::DoublePole && f.location == "-1"));
        // the Q(z) factor in the lower-right denominator cancels identically
        // (the numerator is Q(z)·Q(−z)), so no further poles survive; the
        // roots of Q show up as zeros of p11 (singularities of the metric
        // coefficient g_tt) rather than poles of the patching matrix
        assert!(!audit.findings.iter().any(|f| f.class == PoleClass::OffNodePole));
        assert!(tomimatsu_sato_delta2(&rat(1, 2), &rat(1, 2)).is_err());
    }

    #[test]
    fn off_node_poles_are_flagged() {
        // a pole at z = 2 that is not in the node list
        let p = PatchingMatrix::new(
            rf(
                Polynomial::one(),
                &Polynomial::linear_root(&rat_i(0)) * &Polynomial::linear_root(&rat_i(2)),
            ),
            RationalFunction::constant(-Rational::one()),
            RationalFunction::zero(),
            Signature::Riemannian,
            vec![rat_i(0)],
            None,
        );
        let audit = p.pole_audit();
        assert!(!audit.admissible);
        use crate::patching::PoleClass;
        assert!(audit
            .findings
            .iter()
            .any(|f| f.class == PoleClass::OffNodePole && f.location == "2"));
    }

    #[test]
    fn parameter_validation_rejects_bad_inputs() {
        let bad = |name: &str, pairs: &[(&str, Rational)]| {
            let params = super::super::params_from(pairs);
            assert!(make_entry(name, &params).is_err(), "{} accepted {:?}", name, pairs);
        };
        bad("schwarzschild", &[("m", rat_i(-1))]);
        bad("kerr", &[("m", rat_i(1)), ("a", rat_i(1))]); // σ² = 2 not square
        bad("taub_nut", &[("m", rat_i(1)), ("N", rat_i(2))]); // m² < N²
        bad("kerr_taub_bolt", &[("m", rat_i(1)), ("a", rat_i(2)), ("N", rat_i(2))]);
        bad("bazaikin", &[("a", rat_i(4)), ("b", rat_i(3))]); // |a| > b
        bad("c_metric", &[("b1", rat_i(-1)), ("b2", rat(-1, 2)), ("b", rat_i(1))]);
        bad("double_schwarzschild", &[("a4", rat_i(0))]); // duplicate node
        bad("gh_mtn", &[("m", rat_i(-1))]);
    }

    #[test]
    fn evaluators_cover_expected_families() {
        for name in family_names() {
            let e = defaults(name);
            assert!(e.evaluator().is_some(), "{} lacks an evaluator", name);
            let ev = e.evaluator().unwrap();
            let [lo0, hi0, lo1, hi1] = ev.default_window();
            let p = [0.5 * (lo0 + hi0), 0.5 * (lo1 + hi1)];
            let s = e.evaluate_gram(p).expect(name);
            let sign = match e.signature {
                Signature::Lorentzian => -1.0,
                Signature::Riemannian => 1.0,
            };
            let want = sign * s.r * s.r;
            assert!(
                (s.det() - want).abs() <= 1e-9 * (1.0 + want.abs()),
                "{}: det {} vs {}",
                name,
                s.det(),
                want
            );
        }
    }
}
