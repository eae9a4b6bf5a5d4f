//! Ansatz construction for the inverse problem: given an asymptotic class,
//! signature, node count and charges, produce the symmetric rational-matrix
//! shape with undetermined coefficients together with the polynomial system
//! expressing det P ≡ ±1.

use super::mpoly::MPoly;
use super::InverseError;
use crate::exact::{rat_sqrt, Polynomial, Rational, RationalFunction};
use crate::patching::{PatchingMatrix, RodInterval, Signature};
use num::{One, Signed, Zero};

/// Target asymptotic geometry of the reconstruction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TargetClass {
    /// P(∞) = diag(1, ±1): the `h1`-type expansion with charges (m, N, L).
    Alf,
    /// p11 ~ (2z)⁻¹, p22 ~ ∓2z: the `e8`-type expansion with charges (M, L).
    Ale,
}

impl TargetClass {
    pub fn as_str(self) -> &'static str {
        match self {
            TargetClass::Alf => "alf",
            TargetClass::Ale => "ale",
        }
    }
}

/// Asymptotic data driving the reconstruction. `None` entries are left free
/// where the ansatz permits (one-node systems), otherwise they default to 0.
#[derive(Clone, Debug)]
pub enum TargetCharges {
    Alf { mass: Rational, nut: Option<Rational>, angmom: Option<Rational> },
    /// `angmom` in the off-diagonal convention p12 = −2L/Δ + …; it equals
    /// −ζ/4 for the ζ reported by charge extraction.
    Ale { mass: Rational, angmom: Rational },
}

impl TargetCharges {
    pub fn class(&self) -> TargetClass {
        match self {
            TargetCharges::Alf { .. } => TargetClass::Alf,
            TargetCharges::Ale { .. } => TargetClass::Ale,
        }
    }
}

/// The undetermined-coefficient system: matrix entry numerators over the node
/// polynomial Δ, with the determinant identity flattened into polynomial
/// equations on the unknowns.
pub struct AnsatzSystem {
    pub class: TargetClass,
    pub signature: Signature,
    pub n_nodes: usize,
    pub charges: TargetCharges,
    /// Node positions when supplied by the caller (required for 3 nodes).
    pub nodes: Option<Vec<Rational>>,
    /// Names of the undetermined coefficients, fixing the variable order of
    /// every [`MPoly`] in this system.
    pub unknowns: Vec<&'static str>,
    /// det-identity equations (each must vanish), plus any direct charge
    /// constraints the shape imposes.
    pub equations: Vec<MPoly>,
    num11: Vec<MPoly>,
    num12: Vec<MPoly>,
    num22: Vec<MPoly>,
}

impl AnsatzSystem {
    pub fn render_equations(&self) -> Vec<String> {
        self.equations.iter().map(|e| format!("{} = 0", e.render(&self.unknowns))).collect()
    }

    /// Exact verification: does the assignment (ordered like `unknowns`)
    /// satisfy every equation?
    pub fn check_assignment(&self, vals: &[Rational]) -> bool {
        vals.len() == self.unknowns.len()
            && self.equations.iter().all(|e| e.eval(vals).is_zero())
    }

    pub(super) fn unknown_index(&self, name: &str) -> Option<usize> {
        self.unknowns.iter().position(|&u| u == name)
    }

    /// Node positions implied by an assignment: the caller-supplied nodes, or
    /// the centred conventions {0} / {−σ, σ}. `None` when σ = √s is
    /// irrational or degenerate, in which case no exact matrix exists.
    pub fn node_positions(&self, vals: &[Rational]) -> Option<Vec<Rational>> {
        if let Some(nodes) = &self.nodes {
            return Some(nodes.clone());
        }
        match self.n_nodes {
            1 => Some(vec![Rational::zero()]),
            2 => {
                let s = &vals[self.unknown_index("s")?];
                let sigma = rat_sqrt(s)?;
                if sigma.is_zero() {
                    return None;
                }
                Some(vec![-&sigma, sigma])
            }
            _ => None,
        }
    }

    /// Builds the patching matrix for a verified assignment, when the node
    /// positions are exactly representable.
    pub fn matrix_for(&self, vals: &[Rational]) -> Option<PatchingMatrix> {
        let nodes = self.node_positions(vals)?;
        let delta = Polynomial::from_roots(&nodes);
        let lift = |coeffs: &[MPoly]| {
            let num = Polynomial::new(coeffs.iter().map(|c| c.eval(vals)).collect());
            RationalFunction::new(num, delta.clone()).ok()
        };
        let p11 = lift(&self.num11)?;
        let p12 = lift(&self.num12)?;
        let p22 = lift(&self.num22)?;
        let top = nodes.last().cloned().unwrap();
        Some(PatchingMatrix::new(
            p11,
            p12,
            p22,
            self.signature,
            nodes,
            Some(RodInterval::top(top)),
        ))
    }
}

fn zmul(a: &[MPoly], b: &[MPoly], nv: usize) -> Vec<MPoly> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![MPoly::zero(nv); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].add(&x.mul(y));
        }
    }
    out
}

fn zsub(a: &[MPoly], b: &[MPoly], nv: usize) -> Vec<MPoly> {
    let mut out = vec![MPoly::zero(nv); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] = out[i].add(x);
    }
    for (i, y) in b.iter().enumerate() {
        out[i] = out[i].sub(y);
    }
    out
}

/// Assembles the undetermined-coefficient system for the requested shape.
///
/// Node conventions (use `translate` on the result to move them): 1 node at
/// z = 0; 2 nodes at ±σ (supplied nodes must be symmetric); 3 nodes summing
/// to 0 and always supplied explicitly.
pub fn build_ansatz(
    signature: Signature,
    charges: TargetCharges,
    n_nodes: usize,
    nodes: Option<Vec<Rational>>,
) -> Result<AnsatzSystem, InverseError> {
    if !(1..=3).contains(&n_nodes) {
        return Err(InverseError::Unsupported(format!(
            "{} nodes: only 1, 2 or 3 are supported",
            n_nodes
        )));
    }
    let class = charges.class();
    if class == TargetClass::Ale && signature == Signature::Lorentzian {
        return Err(InverseError::Unsupported(
            "the AE/ALE ansatz is Riemannian-only".to_string(),
        ));
    }
    if let Some(ns) = &nodes {
        validate_nodes(ns, n_nodes)?;
    }
    if n_nodes == 3 && nodes.is_none() {
        return Err(InverseError::BadInput(
            "three-node systems need explicit node positions (summing to 0)".to_string(),
        ));
    }
    if let (3, TargetCharges::Alf { nut: Some(n), .. }) = (n_nodes, &charges) {
        if !n.is_zero() {
            return Err(InverseError::Unsupported(
                "three-node ALF reconstruction is implemented for N = 0 only".to_string(),
            ));
        }
    }

    let (unknowns, num11, num12, num22, mut extra): (
        Vec<&'static str>,
        Vec<MPoly>,
        Vec<MPoly>,
        Vec<MPoly>,
        Vec<MPoly>,
    ) = match (&charges, n_nodes) {
        (TargetCharges::Alf { mass, nut, angmom }, 1) => {
            let unknowns = vec!["N"];
            let nv = 1;
            let c = |x: Rational| MPoly::constant(nv, x);
            let two_m = mass + mass;
            let p1 = vec![c(two_m.clone()), c(Rational::one())];
            let p2 = match signature {
                Signature::Riemannian => vec![c(two_m.clone()), c(-Rational::one())],
                Signature::Lorentzian => vec![c(-&two_m), c(Rational::one())],
            };
            let q = vec![MPoly::var(nv, 0).scale(&crate::exact::rat_i(2))];
            let mut extra = Vec::new();
            if let Some(n) = nut {
                // pin N to the supplied NUT charge
                extra.push(MPoly::var(nv, 0).sub(&c(n.clone())));
            }
            if let Some(l) = angmom {
                // p12 = 2N/z has no 1/z² term, so L must vanish
                extra.push(c(l.clone()));
            }
            (unknowns, p1, q, p2, extra)
        }
        (TargetCharges::Alf { mass, nut, angmom }, 2) => {
            let unknowns: Vec<&'static str> =
                if nodes.is_some() { vec!["A", "B"] } else { vec!["A", "B", "s"] };
            let nv = unknowns.len();
            let c = |x: Rational| MPoly::constant(nv, x);
            let n = nut.clone().unwrap_or_else(Rational::zero);
            let l = angmom.clone().unwrap_or_else(Rational::zero);
            let two_m = mass + mass;
            let p1 = vec![MPoly::var(nv, 0), c(two_m.clone()), c(Rational::one())];
            let p2 = match signature {
                Signature::Riemannian => {
                    vec![MPoly::var(nv, 1), c(two_m.clone()), c(-Rational::one())]
                }
                Signature::Lorentzian => {
                    vec![MPoly::var(nv, 1), c(-&two_m), c(Rational::one())]
                }
            };
            let q = vec![c(-(&l + &l)), c(&n + &n)];
            (unknowns, p1, q, p2, Vec::new())
        }
        (TargetCharges::Alf { mass, angmom, .. }, 3) => {
            let unknowns = vec!["A", "B", "D", "E", "F"];
            let nv = 5;
            let c = |x: Rational| MPoly::constant(nv, x);
            let l = angmom.clone().unwrap_or_else(Rational::zero);
            let two_m = mass + mass;
            let p1 = vec![
                MPoly::var(nv, 1),
                MPoly::var(nv, 0),
                c(two_m.clone()),
                c(Rational::one()),
            ];
            let p2 = match signature {
                Signature::Riemannian => vec![
                    MPoly::var(nv, 3),
                    MPoly::var(nv, 2),
                    c(two_m.clone()),
                    c(-Rational::one()),
                ],
                Signature::Lorentzian => vec![
                    MPoly::var(nv, 3),
                    MPoly::var(nv, 2),
                    c(-&two_m),
                    c(Rational::one()),
                ],
            };
            let q = vec![MPoly::var(nv, 4), c(-(&l + &l))];
            (unknowns, p1, q, p2, Vec::new())
        }
        (TargetCharges::Ale { mass, angmom }, 1) => {
            let unknowns = vec!["S0"];
            let nv = 1;
            let c = |x: Rational| MPoly::constant(nv, x);
            let half = crate::exact::rat(1, 2);
            let p11 = vec![c(half)];
            let p12 = vec![];
            let p22 = vec![
                MPoly::var(nv, 0),
                c(-(mass + mass)),
                c(crate::exact::rat_i(-2)),
            ];
            // p12 ≡ 0 forces the angular-momentum charge to vanish
            let extra = vec![c(angmom.clone())];
            (unknowns, p11, p12, p22, extra)
        }
        (TargetCharges::Ale { mass, angmom }, 2) => {
            let unknowns: Vec<&'static str> =
                if nodes.is_some() { vec!["A", "B"] } else { vec!["A", "B", "s"] };
            let nv = unknowns.len();
            let c = |x: Rational| MPoly::constant(nv, x);
            let half = crate::exact::rat(1, 2);
            let p11 = vec![c(-(mass / crate::exact::rat_i(2))), c(half)];
            let p12 = vec![c(-(angmom + angmom))];
            let m2 = crate::exact::rat_i(-2);
            let p22 = vec![
                MPoly::var(nv, 1).scale(&m2),
                MPoly::var(nv, 0).scale(&m2),
                c(-(mass + mass)),
                c(m2.clone()),
            ];
            (unknowns, p11, p12, p22, Vec::new())
        }
        (TargetCharges::Ale { mass, angmom }, 3) => {
            let unknowns = vec!["A", "B", "C", "D", "E"];
            let nv = 5;
            let c = |x: Rational| MPoly::constant(nv, x);
            let half = crate::exact::rat(1, 2);
            let p11 = vec![MPoly::var(nv, 0), c(mass.clone()), c(half)];
            let two_l = angmom + angmom;
            let p12 = vec![MPoly::var(nv, 1).scale(&two_l), c(-&two_l)];
            let m2 = crate::exact::rat_i(-2);
            let p22 = vec![
                MPoly::var(nv, 4).scale(&m2),
                MPoly::var(nv, 3).scale(&m2),
                MPoly::var(nv, 2).scale(&m2),
                c(mass + mass + mass + mass),
                c(m2.clone()),
            ];
            (unknowns, p11, p12, p22, Vec::new())
        }
        _ => unreachable!("node count validated above"),
    };

    let nv = unknowns.len();
    // target: num11·num22 − num12² = ε·Δ² with ε = det P
    let delta_sq: Vec<MPoly> = match &nodes {
        Some(ns) => Polynomial::from_roots(ns)
            .pow(2)
            .coeffs()
            .iter()
            .map(|c| MPoly::constant(nv, c.clone()))
            .collect(),
        None => match n_nodes {
            1 => {
                let mut v = vec![MPoly::zero(nv); 3];
                v[2] = MPoly::constant(nv, Rational::one());
                v
            }
            2 => {
                let s = MPoly::var(nv, 2);
                let mut v = vec![MPoly::zero(nv); 5];
                v[0] = s.mul(&s);
                v[2] = s.scale(&crate::exact::rat_i(-2));
                v[4] = MPoly::constant(nv, Rational::one());
                v
            }
            _ => unreachable!("3-node requires explicit nodes"),
        },
    };
    let eps = signature.target_det();
    let target: Vec<MPoly> = delta_sq.iter().map(|c| c.scale(&eps)).collect();
    let lhs = zsub(
        &zsub(&zmul(&num11, &num22, nv), &zmul(&num12, &num12, nv), nv),
        &target,
        nv,
    );
    let mut equations: Vec<MPoly> = lhs.into_iter().filter(|e| !e.is_zero()).collect();
    equations.append(&mut extra);
    equations.retain(|e| !e.is_zero());

    Ok(AnsatzSystem {
        class,
        signature,
        n_nodes,
        charges,
        nodes,
        unknowns,
        equations,
        num11,
        num12,
        num22,
    })
}

fn validate_nodes(nodes: &[Rational], n_nodes: usize) -> Result<(), InverseError> {
    if nodes.len() != n_nodes {
        return Err(InverseError::BadInput(format!(
            "expected {} nodes, got {}",
            n_nodes,
            nodes.len()
        )));
    }
    for w in nodes.windows(2) {
        if w[0] >= w[1] {
            return Err(InverseError::BadInput(
                "nodes must be strictly ascending".to_string(),
            ));
        }
    }
    let centred_ok = match n_nodes {
        1 => nodes[0].is_zero(),
        2 => nodes[0] == -&nodes[1] && nodes[1].is_positive(),
        3 => (&nodes[0] + &nodes[1] + &nodes[2]).is_zero(),
        _ => false,
    };
    if !centred_ok {
        return Err(InverseError::BadInput(format!(
            "nodes must be centred ({}); translate first",
            match n_nodes {
                1 => "single node at 0".to_string(),
                2 => "±σ".to_string(),
                _ => "sum 0".to_string(),
            }
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, rat_i};

    fn alf(m: i64, n: i64, l: i64) -> TargetCharges {
        TargetCharges::Alf {
            mass: rat_i(m),
            nut: Some(rat_i(n)),
            angmom: Some(rat_i(l)),
        }
    }

    #[test]
    fn kerr_data_system_shape() {
        let sys =
            build_ansatz(Signature::Riemannian, alf(3, 0, 12), 2, None).unwrap();
        assert_eq!(sys.unknowns, vec!["A", "B", "s"]);
        // z⁵ and z⁶ coefficients cancel identically; z⁰..z⁴ remain except the
        // auto-satisfied leading one
        assert_eq!(sys.equations.len(), 3);
        // the known Kerr answer satisfies the system
        let vals = vec![rat_i(-7), rat_i(7), rat_i(25)];
        assert!(sys.check_assignment(&vals));
        assert!(!sys.check_assignment(&[rat_i(-7), rat_i(7), rat_i(24)]));
        let p = sys.matrix_for(&vals).unwrap();
        assert!(p.det_check().pass);
        assert_eq!(p.nodes, vec![rat_i(-5), rat_i(5)]);
    }

    #[test]
    fn irrational_sigma_gives_no_exact_matrix() {
        let sys = build_ansatz(Signature::Riemannian, alf(1, 0, 0), 2, None).unwrap();
        // s = 2 is consistent shape-wise but σ = √2 is not rational
        assert!(sys.matrix_for(&[rat_i(-2), rat_i(2), rat_i(2)]).is_none());
    }

    #[test]
    fn node_conventions_enforced() {
        let off_centre = build_ansatz(
            Signature::Riemannian,
            alf(3, 0, 12),
            2,
            Some(vec![rat_i(-1), rat_i(3)]),
        );
        assert!(matches!(off_centre, Err(InverseError::BadInput(_))));
        let missing = build_ansatz(Signature::Riemannian, alf(1, 0, 0), 3, None);
        assert!(matches!(missing, Err(InverseError::BadInput(_))));
        let too_many = build_ansatz(Signature::Riemannian, alf(1, 0, 0), 4, None);
        assert!(matches!(too_many, Err(InverseError::Unsupported(_))));
        let lorentzian_ale = build_ansatz(
            Signature::Lorentzian,
            TargetCharges::Ale { mass: rat_i(0), angmom: rat(-1, 2) },
            2,
            None,
        );
        assert!(matches!(lorentzian_ale, Err(InverseError::Unsupported(_))));
    }

    #[test]
    fn ale_two_node_known_solution_checks() {
        let sys = build_ansatz(
            Signature::Riemannian,
            TargetCharges::Ale { mass: rat_i(0), angmom: rat(-1, 2) },
            2,
            None,
        )
        .unwrap();
        // σ = 1, A = −2, B = 0
        let vals = vec![rat_i(-2), rat_i(0), rat_i(1)];
        assert!(sys.check_assignment(&vals));
        let p = sys.matrix_for(&vals).unwrap();
        assert!(p.det_check().pass);
        assert_eq!(format!("{}", p.p12), "(1) / (z^2 - 1)");
    }

    #[test]
    fn equations_render_readably() {
        let sys = build_ansatz(Signature::Riemannian, alf(2, 0, 0), 1, None).unwrap();
        let eqs = sys.render_equations();
        assert!(eqs.iter().any(|e| e.contains("N")), "{:?}", eqs);
    }
}
