//! The patching-matrix abstraction and its structural operations:
//! determinant verification, constant conjugation, node passing (standard and
//! Gibbons-Hawking rules), pole auditing, asymptotic classification, charge
//! extraction and conjugation-equivalence testing.

use crate::exact::{
    rat_sqrt, rat_to_string, Polynomial, PoleLocation, Rational, RationalFunction,
};
use num::{One, Signed, Zero};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PatchingError {
    #[error("conjugation matrix must have determinant 1")]
    InvalidConjugation,
    #[error("node {0} is not in the matrix node list")]
    NodeNotFound(String),
    #[error("residue matrix at the node has rank 2 (degenerate node)")]
    DegenerateNode,
    #[error("matrix has no pole at the node")]
    NoPoleAtNode,
    #[error("entry has a pole of order {0} at the node; only simple poles can be passed")]
    NonSimplePole(usize),
    #[error("matrix is not in Gibbons-Hawking form [[V, -1], [-1, 0]]")]
    NotGibbonsHawkingForm,
    #[error("matrix is not asymptotically AF/ALF or AE/ALE")]
    NotAsymptoticallyStandard,
    #[error("inconsistent mass slots between p11 and p22 expansions")]
    MalformedAsymptotics,
    #[error("matrix cannot be normalized to diag(1, ±1) over the rationals")]
    CannotNormalize,
}

/// Signature fixes the required determinant of the Ernst potential:
/// +1 Lorentzian, −1 Riemannian.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Signature {
    Lorentzian,
    Riemannian,
}

impl Signature {
    /// The determinant every patching matrix of this signature must have.
    pub fn target_det(self) -> Rational {
        match self {
            Signature::Lorentzian => Rational::one(),
            Signature::Riemannian => -Rational::one(),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Signature::Lorentzian => "lorentzian",
            Signature::Riemannian => "riemannian",
        }
    }
}

/// One endpoint of a rod.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Bound {
    NegInf,
    Finite(Rational),
    PosInf,
}

/// The open z-interval a patching matrix is attached to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RodInterval {
    pub lower: Bound,
    pub upper: Bound,
}

impl RodInterval {
    pub fn top(above: Rational) -> Self {
        RodInterval { lower: Bound::Finite(above), upper: Bound::PosInf }
    }

    pub fn bottom(below: Rational) -> Self {
        RodInterval { lower: Bound::NegInf, upper: Bound::Finite(below) }
    }

    pub fn finite(lower: Rational, upper: Rational) -> Self {
        RodInterval { lower: Bound::Finite(lower), upper: Bound::Finite(upper) }
    }
}

/// Constant 2×2 conjugation matrix of unit determinant: the freedom
/// P → C P Cᵀ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugationRecord {
    pub c11: Rational,
    pub c12: Rational,
    pub c21: Rational,
    pub c22: Rational,
}

impl ConjugationRecord {
    pub fn new(
        c11: Rational,
        c12: Rational,
        c21: Rational,
        c22: Rational,
    ) -> Result<Self, PatchingError> {
        let c = ConjugationRecord { c11, c12, c21, c22 };
        if c.det().is_one() {
            Ok(c)
        } else {
            Err(PatchingError::InvalidConjugation)
        }
    }

    pub fn identity() -> Self {
        ConjugationRecord {
            c11: Rational::one(),
            c12: Rational::zero(),
            c21: Rational::zero(),
            c22: Rational::one(),
        }
    }

    /// [[0, 1], [−1, 0]]: swaps the diagonal slots under P → CPCᵀ.
    pub fn swap() -> Self {
        ConjugationRecord {
            c11: Rational::zero(),
            c12: Rational::one(),
            c21: -Rational::one(),
            c22: Rational::zero(),
        }
    }

    /// [[1, 0], [g, 1]]
    pub fn lower_shear(g: Rational) -> Self {
        ConjugationRecord {
            c11: Rational::one(),
            c12: Rational::zero(),
            c21: g,
            c22: Rational::one(),
        }
    }

    pub fn det(&self) -> Rational {
        &self.c11 * &self.c22 - &self.c12 * &self.c21
    }

    pub fn is_identity(&self) -> bool {
        self == &ConjugationRecord::identity()
    }

    /// Matrix inverse; assumes unit determinant.
    pub fn inverse(&self) -> Self {
        ConjugationRecord {
            c11: self.c22.clone(),
            c12: -self.c12.clone(),
            c21: -self.c21.clone(),
            c22: self.c11.clone(),
        }
    }

    /// self · other
    pub fn compose(&self, other: &Self) -> Self {
        ConjugationRecord {
            c11: &self.c11 * &other.c11 + &self.c12 * &other.c21,
            c12: &self.c11 * &other.c12 + &self.c12 * &other.c22,
            c21: &self.c21 * &other.c11 + &self.c22 * &other.c21,
            c22: &self.c21 * &other.c12 + &self.c22 * &other.c22,
        }
    }
}

/// Falloff class read from the behaviour of P(z) as z → ∞.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AsymptoticClass {
    AfAlf,
    AeAle,
    Other,
}

impl AsymptoticClass {
    pub fn as_str(self) -> &'static str {
        match self {
            AsymptoticClass::AfAlf => "AF/ALF",
            AsymptoticClass::AeAle => "AE/ALE",
            AsymptoticClass::Other => "other",
        }
    }
}

/// Asymptotic conserved quantities read from the Laurent tails of P.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Charges {
    AfAlf { mass: Rational, nut: Rational, angmom: Rational },
    AeAle { eta: Rational, zeta: Rational },
}

/// Symmetric 2×2 matrix of rational functions with unit (anti-)determinant:
/// the patching matrix P(z) = J'(0, z) on a rod.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatchingMatrix {
    pub p11: RationalFunction,
    pub p12: RationalFunction,
    pub p22: RationalFunction,
    pub signature: Signature,
    /// Node positions, ascending.
    pub nodes: Vec<Rational>,
    pub rod: Option<RodInterval>,
}

/// Outcome of the exact determinant identity check.
#[derive(Clone, Debug)]
pub struct DetCheck {
    pub pass: bool,
    /// det P − (±1) when the check fails.
    pub residual: Option<RationalFunction>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EntrySlot {
    P11,
    P12,
    P22,
}

impl EntrySlot {
    pub fn as_str(self) -> &'static str {
        match self {
            EntrySlot::P11 => "p11",
            EntrySlot::P12 => "p12",
            EntrySlot::P22 => "p22",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PoleClass {
    Ok,
    DoublePole,
    OffNodePole,
    ComplexPolePair,
}

impl PoleClass {
    pub fn as_str(self) -> &'static str {
        match self {
            PoleClass::Ok => "ok",
            PoleClass::DoublePole => "double-pole",
            PoleClass::OffNodePole => "off-node-pole",
            PoleClass::ComplexPolePair => "complex-pole-pair",
        }
    }
}

#[derive(Clone, Debug)]
pub struct PoleFinding {
    pub entry: EntrySlot,
    pub class: PoleClass,
    /// Exact location for rational poles; a textual description otherwise.
    pub location: String,
    pub order: usize,
}

#[derive(Clone, Debug)]
pub struct PoleAudit {
    pub findings: Vec<PoleFinding>,
    pub admissible: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Down,
    Up,
}

impl PatchingMatrix {
    pub fn new(
        p11: RationalFunction,
        p12: RationalFunction,
        p22: RationalFunction,
        signature: Signature,
        mut nodes: Vec<Rational>,
        rod: Option<RodInterval>,
    ) -> Self {
        nodes.sort();
        PatchingMatrix { p11, p12, p22, signature, nodes, rod }
    }

    pub fn diagonal(
        p11: RationalFunction,
        p22: RationalFunction,
        signature: Signature,
        nodes: Vec<Rational>,
        rod: Option<RodInterval>,
    ) -> Self {
        PatchingMatrix::new(p11, RationalFunction::zero(), p22, signature, nodes, rod)
    }

    pub fn entry(&self, slot: EntrySlot) -> &RationalFunction {
        match slot {
            EntrySlot::P11 => &self.p11,
            EntrySlot::P12 => &self.p12,
            EntrySlot::P22 => &self.p22,
        }
    }

    pub fn det(&self) -> RationalFunction {
        &(&self.p11 * &self.p22) - &(&self.p12 * &self.p12)
    }

    /// Exact identity det P ≡ ±1 per signature.
    pub fn det_check(&self) -> DetCheck {
        let det = self.det();
        let target = RationalFunction::constant(self.signature.target_det());
        let residual = &det - &target;
        if residual.is_zero() {
            DetCheck { pass: true, residual: None }
        } else {
            DetCheck { pass: false, residual: Some(residual) }
        }
    }

    /// Entry-wise equality in canonical form (same signature).
    pub fn same_entries(&self, other: &PatchingMatrix) -> bool {
        self.signature == other.signature
            && self.p11 == other.p11
            && self.p12 == other.p12
            && self.p22 == other.p22
    }

    /// P → C P Cᵀ with constant C of unit determinant.
    pub fn conjugate(&self, c: &ConjugationRecord) -> Result<PatchingMatrix, PatchingError> {
        if !c.det().is_one() {
            return Err(PatchingError::InvalidConjugation);
        }
        Ok(self.conjugate_unchecked(c))
    }

    fn conjugate_unchecked(&self, c: &ConjugationRecord) -> PatchingMatrix {
        let r = |x: &Rational| RationalFunction::constant(x.clone());
        let (a, b, g, d) = (r(&c.c11), r(&c.c12), r(&c.c21), r(&c.c22));
        let p11 = &(&(&a * &a) * &self.p11)
            + &(&(&(&a * &b) * &self.p12).scale2() + &(&(&b * &b) * &self.p22));
        let p12 = &(&(&a * &g) * &self.p11)
            + &(&(&(&(&a * &d) + &(&b * &g)) * &self.p12) + &(&(&b * &d) * &self.p22));
        let p22 = &(&(&g * &g) * &self.p11)
            + &(&(&(&g * &d) * &self.p12).scale2() + &(&(&d * &d) * &self.p22));
        PatchingMatrix {
            p11,
            p12,
            p22,
            signature: self.signature,
            nodes: self.nodes.clone(),
            rod: self.rod.clone(),
        }
    }

    /// Translate the variable: P(z) → P(z + shift), nodes shifted accordingly.
    pub fn translate(&self, shift: &Rational) -> PatchingMatrix {
        let tr = |b: &Bound| match b {
            Bound::Finite(x) => Bound::Finite(x - shift),
            other => other.clone(),
        };
        PatchingMatrix {
            p11: self.p11.translate(shift),
            p12: self.p12.translate(shift),
            p22: self.p22.translate(shift),
            signature: self.signature,
            nodes: self.nodes.iter().map(|a| a - shift).collect(),
            rod: self.rod.as_ref().map(|r| RodInterval { lower: tr(&r.lower), upper: tr(&r.upper) }),
        }
    }

    fn residue_matrix(
        &self,
        node: &Rational,
    ) -> Result<(Rational, Rational, Rational), PatchingError> {
        let mut res = Vec::with_capacity(3);
        for entry in [&self.p11, &self.p12, &self.p22] {
            let order = entry.pole_order_at(node);
            if order > 1 {
                return Err(PatchingError::NonSimplePole(order));
            }
            res.push(if order == 1 {
                entry.residue_at(node).expect("simple pole has a residue")
            } else {
                Rational::zero()
            });
        }
        Ok((res[0].clone(), res[1].clone(), res[2].clone()))
    }

    /// Passes the matrix by a node using the swap rule
    /// [[(2w)⁻¹a, b], [b, 2w·c]] ↔ [[2w·a, b], [b, (2w)⁻¹c]] in w = z − node,
    /// after conjugating the (rank-one) residue into the appropriate diagonal
    /// slot. The conjugation is undone afterwards so that the matrices of the
    /// worked examples are reproduced literally; the C used is returned.
    pub fn pass_node_standard(
        &self,
        node: &Rational,
        direction: Direction,
    ) -> Result<(PatchingMatrix, ConjugationRecord), PatchingError> {
        if !self.nodes.contains(node) {
            return Err(PatchingError::NodeNotFound(rat_to_string(node)));
        }
        let (r11, r12, r22) = self.residue_matrix(node)?;
        if r11.is_zero() && r12.is_zero() && r22.is_zero() {
            return Err(PatchingError::NoPoleAtNode);
        }
        if !(&r11 * &r22 - &r12 * &r12).is_zero() {
            return Err(PatchingError::DegenerateNode);
        }
        // range vector of the rank-1 residue, first nonzero component = 1
        let v = if !r11.is_zero() {
            Some(&r12 / &r11)
        } else {
            None // v = (0, 1); r12 must vanish too by the rank condition
        };
        let c = match (direction, &v) {
            // send v to e1: pole concentrates in the (1,1) slot
            (Direction::Down, Some(t)) => ConjugationRecord::lower_shear(-t.clone()),
            (Direction::Down, None) => ConjugationRecord::swap(),
            // send v to e2: pole concentrates in the (2,2) slot
            (Direction::Up, Some(t)) => ConjugationRecord {
                c11: t.clone(),
                c12: -Rational::one(),
                c21: Rational::one(),
                c22: Rational::zero(),
            },
            (Direction::Up, None) => ConjugationRecord::identity(),
        };
        let aligned = self.conjugate_unchecked(&c);
        let four_w2 = RationalFunction::from_poly(
            Polynomial::linear_root(node).pow(2).scale(&Rational::from_integer(4.into())),
        );
        let (q11, q22) = match direction {
            Direction::Down => (&aligned.p11 * &four_w2, &aligned.p22 / &four_w2),
            Direction::Up => (&aligned.p11 / &four_w2, &aligned.p22 * &four_w2),
        };
        let swapped = PatchingMatrix { p11: q11, p22: q22, ..aligned };
        let mut out = swapped.conjugate_unchecked(&c.inverse());
        out.rod = self.adjacent_rod(node, direction);
        Ok((out, c))
    }

    fn adjacent_rod(&self, node: &Rational, direction: Direction) -> Option<RodInterval> {
        let idx = self.nodes.iter().position(|a| a == node)?;
        Some(match direction {
            Direction::Down => {
                let lower = if idx == 0 {
                    Bound::NegInf
                } else {
                    Bound::Finite(self.nodes[idx - 1].clone())
                };
                RodInterval { lower, upper: Bound::Finite(node.clone()) }
            }
            Direction::Up => {
                let upper = if idx + 1 == self.nodes.len() {
                    Bound::PosInf
                } else {
                    Bound::Finite(self.nodes[idx + 1].clone())
                };
                RodInterval { lower: Bound::Finite(node.clone()), upper }
            }
        })
    }

    /// Is the matrix in Gibbons-Hawking shape [[V(0,z), −1], [−1, 0]]?
    pub fn is_gibbons_hawking_form(&self) -> bool {
        self.p22.is_zero() && self.p12.as_constant().map_or(false, |c| c == -Rational::one())
    }

    /// Node passing for Gibbons-Hawking matrices: flip the sign of the
    /// partial-fraction term m/(z − a) of p11 at the node.
    pub fn pass_node_gh(&self, node: &Rational) -> Result<PatchingMatrix, PatchingError> {
        if !self.is_gibbons_hawking_form() {
            return Err(PatchingError::NotGibbonsHawkingForm);
        }
        if !self.nodes.contains(node) {
            return Err(PatchingError::NodeNotFound(rat_to_string(node)));
        }
        if self.p11.pole_order_at(node) != 1 {
            return Err(PatchingError::NoPoleAtNode);
        }
        let r = self.p11.residue_at(node).expect("simple pole");
        let flip = RationalFunction::new(
            Polynomial::constant(&r * Rational::from_integer(2.into())),
            Polynomial::linear_root(node),
        )
        .expect("nonzero denominator");
        let mut out = self.clone();
        out.p11 = &self.p11 - &flip;
        out.rod = None;
        Ok(out)
    }

    /// Classifies every pole of every entry. Admissible iff all poles are
    /// simple and located at nodes.
    pub fn pole_audit(&self) -> PoleAudit {
        let mut findings = Vec::new();
        for slot in [EntrySlot::P11, EntrySlot::P12, EntrySlot::P22] {
            let report = self.entry(slot).pole_analysis();
            for pole in &report.poles {
                let (class, location) = match &pole.location {
                    PoleLocation::Rational(a) => {
                        let class = if pole.order > 1 {
                            PoleClass::DoublePole
                        } else if self.nodes.contains(a) {
                            PoleClass::Ok
                        } else {
                            PoleClass::OffNodePole
                        };
                        (class, rat_to_string(a))
                    }
                    PoleLocation::Irreducible { factor, degree } => (
                        PoleClass::ComplexPolePair,
                        format!("roots of irreducible factor {} (degree {})", factor, degree),
                    ),
                };
                findings.push(PoleFinding { entry: slot, class, location, order: pole.order });
            }
        }
        let admissible = findings.iter().all(|f| f.class == PoleClass::Ok);
        PoleAudit { findings, admissible }
    }

    /// AF/ALF iff P(z) → diag(1, ±1); AE/ALE iff p11 ~ (2z)⁻¹ and
    /// p22 ~ ∓2z (signs by signature); Other otherwise.
    pub fn asymptotic_classify(&self) -> AsymptoticClass {
        let s = self.signature.target_det();
        let two = Rational::from_integer(2.into());
        let d11 = self.p11.degree_at_infinity();
        let d12 = self.p12.degree_at_infinity();
        let d22 = self.p22.degree_at_infinity();
        let off_vanishes = d12.map_or(true, |d| d < 0);
        let limit = |f: &RationalFunction| f.series_at_infinity(0).coeff(0);
        if d11.map_or(false, |d| d <= 0)
            && d22.map_or(false, |d| d <= 0)
            && off_vanishes
            && limit(&self.p11).is_one()
            && limit(&self.p22) == s
        {
            return AsymptoticClass::AfAlf;
        }
        let p11_lead_ok = d11 == Some(-1)
            && self.p11.series_at_infinity(0).coeff(-1) == (Rational::one() / &two);
        let p22_lead_ok =
            d22 == Some(1) && self.p22.series_at_infinity(0).coeff(1) == &two * &s;
        if p11_lead_ok && p22_lead_ok && off_vanishes {
            return AsymptoticClass::AeAle;
        }
        AsymptoticClass::Other
    }

    /// Reads the asymptotic charges from the Laurent tails: for AF/ALF
    /// p11 = 1 + 2m/z + …, p12 = 2N/z − 2L/z² + …; for AE/ALE
    /// p11 = (2z)⁻¹(1 − M/z + …), p12 = L/(2z²) + ….
    pub fn extract_charges(&self) -> Result<Charges, PatchingError> {
        let two = Rational::from_integer(2.into());
        match self.asymptotic_classify() {
            AsymptoticClass::AfAlf => {
                let t11 = self.p11.series_at_infinity(2);
                let t12 = self.p12.series_at_infinity(2);
                let t22 = self.p22.series_at_infinity(2);
                let mass = t11.coeff(-1) / &two;
                if t22.coeff(-1) / &two != mass {
                    return Err(PatchingError::MalformedAsymptotics);
                }
                let nut = t12.coeff(-1) / &two;
                let angmom = -t12.coeff(-2) / &two;
                Ok(Charges::AfAlf { mass, nut, angmom })
            }
            AsymptoticClass::AeAle => {
                let t11 = self.p11.series_at_infinity(2);
                let t12 = self.p12.series_at_infinity(2);
                let eta = -t11.coeff(-2) * &two;
                let zeta = t12.coeff(-2) * &two;
                Ok(Charges::AeAle { eta, zeta })
            }
            AsymptoticClass::Other => Err(PatchingError::NotAsymptoticallyStandard),
        }
    }

    /// Conjugates a matrix with a finite constant limit at infinity to one
    /// with limit diag(1, ±1).
    pub fn normalize_alf(&self) -> Result<(PatchingMatrix, ConjugationRecord), PatchingError> {
        let finite = |f: &RationalFunction| f.degree_at_infinity().map_or(true, |d| d <= 0);
        if !(finite(&self.p11) && finite(&self.p12) && finite(&self.p22)) {
            return Err(PatchingError::CannotNormalize);
        }
        let limit = |f: &RationalFunction| f.series_at_infinity(0).coeff(0);
        let mut u = limit(&self.p11);
        let mut v = limit(&self.p12);
        let pre = if u.is_zero() {
            // move a usable slot into (1,1)
            let sw = ConjugationRecord::swap();
            let swapped = self.conjugate_unchecked(&sw);
            u = limit(&swapped.p11);
            v = limit(&swapped.p12);
            if u.is_zero() {
                return Err(PatchingError::CannotNormalize);
            }
            Some(sw)
        } else {
            None
        };
        if !u.is_positive() {
            return Err(PatchingError::CannotNormalize);
        }
        let alpha = rat_sqrt(&u).ok_or(PatchingError::CannotNormalize)?;
        // C = [[1/α, 0], [−v/α, α]]: kills the off-diagonal limit and
        // rescales the diagonal; det C = 1 automatically
        let c1 = ConjugationRecord {
            c11: alpha.recip(),
            c12: Rational::zero(),
            c21: -&v / &alpha,
            c22: alpha,
        };
        let c = match pre {
            Some(sw) => c1.compose(&sw),
            None => c1,
        };
        let out = self.conjugate_unchecked(&c);
        let lim11 = limit(&out.p11);
        let lim22 = limit(&out.p22);
        if !(lim11.is_one() && lim22 == self.signature.target_det() && limit(&out.p12).is_zero()) {
            return Err(PatchingError::CannotNormalize);
        }
        Ok((out, c))
    }
}

impl RationalFunction {
    fn scale2(&self) -> RationalFunction {
        self + self
    }
}

/// Searches for a constant C of unit determinant with C P Cᵀ = Q identically.
///
/// The relation C·P(z) = Q(z)·cof(C) is linear in the entries of C, so the
/// candidates form the nullspace of a linear system sampled at non-pole
/// points; determinant-1 representatives are then sought in that nullspace
/// and the winner is verified as an exact identity.
pub fn find_conjugation(p: &PatchingMatrix, q: &PatchingMatrix) -> Option<ConjugationRecord> {
    if p.signature != q.signature {
        return None;
    }
    let samples = sample_points(p, q, 6);
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for z in &samples {
        let pe = [p.p11.eval(z)?, p.p12.eval(z)?, p.p22.eval(z)?];
        let qe = [q.p11.eval(z)?, q.p12.eval(z)?, q.p22.eval(z)?];
        let (p11, p12, p22) = (&pe[0], &pe[1], &pe[2]);
        let (q11, q12, q22) = (&qe[0], &qe[1], &qe[2]);
        let zero = Rational::zero;
        // unknowns (a, b, c, d) = (c11, c12, c21, c22)
        rows.push(vec![p11.clone(), p12 + q12, zero(), -q11.clone()]);
        rows.push(vec![p12 - q12, p22.clone(), q11.clone(), zero()]);
        rows.push(vec![zero(), q22.clone(), p11.clone(), p12 - q12]);
        rows.push(vec![-q22.clone(), zero(), p12 + q12, p22.clone()]);
    }
    let kernel = nullspace(rows, 4);
    if kernel.is_empty() {
        return None;
    }
    let as_record = |v: &[Rational]| ConjugationRecord {
        c11: v[0].clone(),
        c12: v[1].clone(),
        c21: v[2].clone(),
        c22: v[3].clone(),
    };
    let mut candidates: Vec<Vec<Rational>> = kernel.clone();
    if kernel.len() >= 2 {
        let coeffs = [
            crate::exact::rat_i(1),
            crate::exact::rat_i(-1),
            crate::exact::rat_i(2),
            crate::exact::rat_i(-2),
            crate::exact::rat(1, 2),
            crate::exact::rat(-1, 2),
        ];
        for i in 0..kernel.len() {
            for j in (i + 1)..kernel.len() {
                for a in &coeffs {
                    for b in &coeffs {
                        let v: Vec<Rational> = (0..4)
                            .map(|k| &kernel[i][k] * a + &kernel[j][k] * b)
                            .collect();
                        candidates.push(v);
                    }
                }
            }
        }
    }
    for v in candidates {
        let rec = as_record(&v);
        let d = rec.det();
        if d.is_zero() || d.is_negative() {
            continue;
        }
        let t = match rat_sqrt(&d.recip()) {
            Some(t) => t,
            None => continue,
        };
        let scaled = ConjugationRecord {
            c11: &rec.c11 * &t,
            c12: &rec.c12 * &t,
            c21: &rec.c21 * &t,
            c22: &rec.c22 * &t,
        };
        debug_assert!(scaled.det().is_one());
        let conj = p.conjugate_unchecked(&scaled);
        if conj.p11 == q.p11 && conj.p12 == q.p12 && conj.p22 == q.p22 {
            return Some(scaled);
        }
    }
    None
}

fn sample_points(p: &PatchingMatrix, q: &PatchingMatrix, count: usize) -> Vec<Rational> {
    let mut pts = Vec::with_capacity(count);
    let mut k: i64 = 2;
    while pts.len() < count {
        let z = crate::exact::rat_i(k);
        let regular = [&p.p11, &p.p12, &p.p22, &q.p11, &q.p12, &q.p22]
            .iter()
            .all(|f| f.eval(&z).is_some());
        if regular {
            pts.push(z);
        }
        k += 1;
    }
    pts
}

/// Nullspace basis of an exact rational matrix (rows × ncols).
fn nullspace(mut rows: Vec<Vec<Rational>>, ncols: usize) -> Vec<Vec<Rational>> {
    let mut pivot_col_of_row = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        // find pivot
        let piv = (r..rows.len()).find(|&i| !rows[i][col].is_zero());
        let piv = match piv {
            Some(i) => i,
            None => continue,
        };
        rows.swap(r, piv);
        let inv = rows[r][col].recip();
        for x in rows[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][col].is_zero() {
                let f = rows[i][col].clone();
                for c in 0..ncols {
                    let v = &rows[i][c] - &(&f * &rows[r][c]);
                    rows[i][c] = v;
                }
            }
        }
        pivot_col_of_row.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    let pivots: Vec<usize> = pivot_col_of_row;
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    let mut basis = Vec::new();
    for &fc in &free {
        let mut v = vec![Rational::zero(); ncols];
        v[fc] = Rational::one();
        for (row_idx, &pc) in pivots.iter().enumerate() {
            v[pc] = -rows[row_idx][fc].clone();
        }
        basis.push(v);
    }
    basis
}

impl fmt::Display for PatchingMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[[ {} , {} ]", self.p11, self.p12)?;
        write!(f, " [ {} , {} ]]", self.p12, self.p22)
    }
}
