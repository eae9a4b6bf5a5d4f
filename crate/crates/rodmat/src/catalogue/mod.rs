//! The known metric families as executable data: exact rod structures and
//! per-rod patching matrices, plus numeric metric-level evaluators (Gram
//! matrix, Weyl-Papapetrou coordinates, twist potential) for cross-checks.
//!
//! Each family implements [`Family`] and is looked up by name in a global
//! registry, so new families (or algorithm variants of existing ones) plug in
//! without touching call sites.

mod families;
mod numeric;

pub use families::tomimatsu_sato_delta2;
pub use numeric::MetricEval;

use crate::exact::{rat_to_string, Rational, RationalFunction};
use crate::patching::{AsymptoticClass, PatchingMatrix, RodInterval, Signature};
use once_cell::sync::Lazy;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CatalogueError {
    #[error("unknown family `{0}`")]
    UnknownFamily(String),
    #[error("missing parameter `{0}`")]
    MissingParameter(String),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("no closed form is available for this rod")]
    NotImplementedInPaper,
    #[error("rod index {0} out of range (entry has {1} rods)")]
    BadRodIndex(usize, usize),
    #[error("point outside the entry's coordinate domain")]
    OutOfDomain,
    #[error("entry has no numeric evaluator")]
    NoEvaluator,
}

pub type Params = BTreeMap<String, Rational>;

/// One rod: an axis interval and the Killing combination αK + βL that
/// degenerates on it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rod {
    pub interval: RodInterval,
    pub kernel: (Rational, Rational),
}

/// Nodes and rods of a solution, rods ascending in z (index 0 = bottom).
#[derive(Clone, Debug)]
pub struct RodStructure {
    pub nodes: Vec<Rational>,
    pub rods: Vec<Rod>,
    pub asymptotic_class: AsymptoticClass,
}

impl RodStructure {
    /// Builds the complement intervals of an ascending node list, with kernel
    /// labels supplied bottom-to-top (must be nodes + 1 of them).
    pub fn from_labels(
        nodes: Vec<Rational>,
        kernels: Vec<(Rational, Rational)>,
        class: AsymptoticClass,
    ) -> Self {
        assert_eq!(kernels.len(), nodes.len() + 1, "one kernel label per rod");
        let mut rods = Vec::with_capacity(kernels.len());
        for (i, kernel) in kernels.into_iter().enumerate() {
            let interval = match (i.checked_sub(1), nodes.get(i)) {
                (None, Some(top)) => RodInterval::bottom(top.clone()),
                (Some(lo), Some(top)) => RodInterval::finite(nodes[lo].clone(), top.clone()),
                (Some(lo), None) => RodInterval::top(nodes[lo].clone()),
                (None, None) => RodInterval {
                    lower: crate::patching::Bound::NegInf,
                    upper: crate::patching::Bound::PosInf,
                },
            };
            rods.push(Rod { interval, kernel });
        }
        RodStructure { nodes, rods, asymptotic_class: class }
    }

    pub fn n_rods(&self) -> usize {
        self.rods.len()
    }
}

/// Numeric sample of the Gram matrix at one metric-coordinate point.
#[derive(Clone, Copy, Debug)]
pub struct GramSample {
    pub j11: f64,
    pub j12: f64,
    pub j22: f64,
    pub r: f64,
    pub z: f64,
    pub point: [f64; 2],
}

impl GramSample {
    pub fn det(&self) -> f64 {
        self.j11 * self.j22 - self.j12 * self.j12
    }
}

/// A fully constructed catalogue member: validated parameters, rod structure,
/// per-rod patching matrices (where closed forms exist) and optional numeric
/// evaluators.
pub struct CatalogueEntry {
    pub family: &'static str,
    pub params: Params,
    pub signature: Signature,
    pub rod_structure: RodStructure,
    /// Indexed like `rod_structure.rods`; `None` where no closed form ships.
    matrices: Vec<Option<PatchingMatrix>>,
    evaluator: Option<Box<dyn MetricEval>>,
}

impl CatalogueEntry {
    pub fn rod_structure(&self) -> &RodStructure {
        &self.rod_structure
    }

    pub fn patching_matrix(&self, rod_index: usize) -> Result<&PatchingMatrix, CatalogueError> {
        let n = self.rod_structure.n_rods();
        match self.matrices.get(rod_index) {
            None => Err(CatalogueError::BadRodIndex(rod_index, n)),
            Some(None) => Err(CatalogueError::NotImplementedInPaper),
            Some(Some(p)) => Ok(p),
        }
    }

    /// Index of the topmost rod.
    pub fn top_rod(&self) -> usize {
        self.rod_structure.n_rods() - 1
    }

    pub fn has_matrices(&self) -> bool {
        self.matrices.iter().any(|m| m.is_some())
    }

    pub fn evaluator(&self) -> Option<&dyn MetricEval> {
        self.evaluator.as_deref()
    }

    pub fn evaluate_gram(&self, point: [f64; 2]) -> Result<GramSample, CatalogueError> {
        let ev = self.evaluator().ok_or(CatalogueError::NoEvaluator)?;
        if !ev.in_domain(point) {
            return Err(CatalogueError::OutOfDomain);
        }
        Ok(ev.gram(point))
    }

    pub fn twist_potential(&self, point: [f64; 2]) -> Result<f64, CatalogueError> {
        let ev = self.evaluator().ok_or(CatalogueError::NoEvaluator)?;
        if !ev.in_domain(point) {
            return Err(CatalogueError::OutOfDomain);
        }
        Ok(ev.twist(point))
    }
}

/// A metric family: parameter validation plus entry construction.
pub trait Family: Sync + Send {
    fn name(&self) -> &'static str;
    fn description(&self) -> &'static str;
    /// Parameter names with their demo defaults (used when a parameter is
    /// not supplied).
    fn defaults(&self) -> Params;
    fn make(&self, params: &Params) -> Result<CatalogueEntry, CatalogueError>;
}

static REGISTRY: Lazy<BTreeMap<&'static str, Box<dyn Family>>> = Lazy::new(|| {
    let mut m: BTreeMap<&'static str, Box<dyn Family>> = BTreeMap::new();
    for f in families::all() {
        m.insert(f.name(), f);
    }
    m
});

pub fn family(name: &str) -> Option<&'static dyn Family> {
    REGISTRY.get(name).map(|b| b.as_ref())
}

pub fn family_names() -> Vec<&'static str> {
    REGISTRY.keys().copied().collect()
}

/// Constructs an entry, filling unspecified parameters from the family's
/// demo defaults.
pub fn make_entry(name: &str, params: &Params) -> Result<CatalogueEntry, CatalogueError> {
    let fam = family(name).ok_or_else(|| CatalogueError::UnknownFamily(name.to_string()))?;
    let mut full = fam.defaults();
    for (k, v) in params {
        full.insert(k.clone(), v.clone());
    }
    fam.make(&full)
}

pub(crate) fn get_param(params: &Params, name: &str) -> Result<Rational, CatalogueError> {
    params
        .get(name)
        .cloned()
        .ok_or_else(|| CatalogueError::MissingParameter(name.to_string()))
}

/// P → CPCᵀ with the z-dependent C = [[α⁻¹, 0], [βz + γ, α]]: rescales the
/// diagonal, changes the Killing vector on the rod, and shifts the twist
/// potential by a constant. Asymptotics generally change.
pub fn killing_basis_change(
    p: &PatchingMatrix,
    alpha: &Rational,
    beta: &Rational,
    gamma: &Rational,
) -> Result<PatchingMatrix, CatalogueError> {
    use num::Zero;
    if alpha.is_zero() {
        return Err(CatalogueError::InvalidParameters("alpha must be nonzero".into()));
    }
    let a = RationalFunction::constant(alpha.recip());
    let d = RationalFunction::constant(alpha.clone());
    let l = RationalFunction::from_poly(crate::exact::Polynomial::new(vec![
        gamma.clone(),
        beta.clone(),
    ]));
    let q11 = &(&a * &a) * &p.p11;
    let q12 = &(&(&a * &l) * &p.p11) + &(&(&a * &d) * &p.p12);
    let q22 = &(&(&l * &l) * &p.p11)
        + &(&(&(&(&l * &d) * &p.p12) + &(&(&l * &d) * &p.p12)) + &(&(&d * &d) * &p.p22));
    Ok(PatchingMatrix {
        p11: q11,
        p12: q12,
        p22: q22,
        signature: p.signature,
        nodes: p.nodes.clone(),
        rod: p.rod.clone(),
    })
}

/// Degree-pattern check for the twist-reduced type-D three-node shape:
/// entries (quadratic, linear, quartic) over a shared cubic denominator.
pub fn pd_shape_check(p: &PatchingMatrix) -> bool {
    shape_check(p, 3, &[2, 1, 4])
}

/// Degree-pattern check for the three-node ALF shape: entries
/// (cubic, linear, cubic) over the shared cubic node polynomial.
pub fn ct_shape_check(p: &PatchingMatrix) -> bool {
    shape_check(p, 3, &[3, 1, 3])
}

fn shape_check(p: &PatchingMatrix, den_degree: usize, num_degrees: &[usize; 3]) -> bool {
    // common denominator: lcm of the three (entries may have cancelled
    // factors individually)
    let dens = [p.p11.den(), p.p12.den(), p.p22.den()];
    let mut lcm = crate::exact::Polynomial::one();
    for d in dens {
        let g = lcm.gcd(d);
        lcm = &lcm.div_rem(&g).0 * d;
    }
    if lcm.degree() != Some(den_degree) {
        return false;
    }
    for (entry, want) in [&p.p11, &p.p12, &p.p22].iter().zip(num_degrees) {
        let scaled = entry.num();
        let (q, r) = lcm.div_rem(entry.den());
        if !r.is_zero() {
            return false;
        }
        let lifted = scaled * &q;
        if lifted.degree() != Some(*want) {
            return false;
        }
    }
    true
}

pub(crate) fn params_from(pairs: &[(&str, Rational)]) -> Params {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

pub(crate) fn describe_params(params: &Params) -> String {
    params
        .iter()
        .map(|(k, v)| format!("{}={}", k, rat_to_string(v)))
        .collect::<Vec<_>>()
        .join(", ")
}
