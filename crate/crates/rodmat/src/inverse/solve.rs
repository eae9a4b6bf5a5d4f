//! Per-shape elimination solvers for the inverse-problem ansatz systems, and
//! classification of reconstructed matrices against the known families.
//!
//! Strategy per shape: substitute the equations that are linear in one
//! unknown, in a fixed order, until a single univariate polynomial remains;
//! take its rational roots exactly and certify any irrational real roots with
//! Sturm-isolated intervals. Every exact candidate is then verified against
//! the full equation system before being reported.

use super::ansatz::{AnsatzSystem, TargetClass};
use super::sturm::{isolate_real_roots_exact, RootInterval};
use super::{InverseError, TargetCharges};
use crate::exact::{
    rat, rat_i, rat_sqrt, rat_to_string, rational_roots, Polynomial, Rational,
};
use crate::patching::{
    find_conjugation, AsymptoticClass, Charges, PatchingMatrix, Signature,
};
use num::{One, Signed, Zero};

/// Family identification of a reconstructed matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyTag {
    Flat,
    Sdtn,
    MultiCentreGh,
    Kerr,
    KerrTaubBolt,
    BazaikinEguchiHanson,
    Unknown,
}

impl FamilyTag {
    pub fn as_str(self) -> &'static str {
        match self {
            FamilyTag::Flat => "flat",
            FamilyTag::Sdtn => "SDTN",
            FamilyTag::MultiCentreGh => "multi-centre-GH",
            FamilyTag::Kerr => "Kerr",
            FamilyTag::KerrTaubBolt => "Kerr-Taub-bolt",
            FamilyTag::BazaikinEguchiHanson => "Bazaikin/Eguchi-Hanson",
            FamilyTag::Unknown => "unknown",
        }
    }
}

/// One exact solution of the system.
#[derive(Clone, Debug)]
pub struct Solution {
    /// Unknown values in the system's variable order (plus `sigma` when the
    /// node spacing came out as a perfect square).
    pub assignment: Vec<(String, Rational)>,
    /// Which determinant branch produced this solution, when there are
    /// several.
    pub branch: Option<String>,
    /// The reconstructed matrix, when the nodes are exactly representable.
    pub matrix: Option<PatchingMatrix>,
    pub tag: FamilyTag,
}

/// Certified leftover univariate factor whose irrational real roots are
/// isolated but not expressible exactly.
#[derive(Clone, Debug)]
pub struct Residual {
    pub unknown: String,
    pub polynomial: Polynomial,
    pub roots: Vec<RootInterval>,
}

#[derive(Debug)]
pub struct SolutionSet {
    pub solutions: Vec<Solution>,
    pub residual: Option<Residual>,
}

struct Raw {
    /// (assignment values, branch label); verified downstream.
    candidates: Vec<(Vec<Rational>, Option<String>)>,
    residual: Option<Residual>,
    /// Certificate used when no candidate survives verification.
    empty_note: String,
}

impl Raw {
    fn of(candidates: Vec<(Vec<Rational>, Option<String>)>) -> Self {
        Raw { candidates, residual: None, empty_note: String::new() }
    }
}

pub fn solve_system(sys: &AnsatzSystem) -> Result<SolutionSet, InverseError> {
    let raw = match (sys.class, sys.n_nodes) {
        (TargetClass::Alf, 1) => solve_alf1(sys)?,
        (TargetClass::Alf, 2) => solve_alf2(sys)?,
        (TargetClass::Alf, 3) => solve_alf3(sys)?,
        (TargetClass::Ale, 1) => solve_ale1(sys)?,
        (TargetClass::Ale, 2) => solve_ale2(sys)?,
        (TargetClass::Ale, 3) => solve_ale3(sys)?,
        _ => unreachable!("node count validated at ansatz construction"),
    };
    let mut solutions = Vec::new();
    let mut seen: Vec<Vec<Rational>> = Vec::new();
    for (vals, branch) in raw.candidates {
        if seen.contains(&vals) || !sys.check_assignment(&vals) {
            continue;
        }
        seen.push(vals.clone());
        let matrix = sys.matrix_for(&vals);
        let tag = matrix.as_ref().map(classify_solution).unwrap_or(FamilyTag::Unknown);
        let mut assignment: Vec<(String, Rational)> = sys
            .unknowns
            .iter()
            .map(|u| u.to_string())
            .zip(vals.iter().cloned())
            .collect();
        if let Some(i) = sys.unknown_index("s") {
            if let Some(sigma) = rat_sqrt(&vals[i]) {
                assignment.push(("sigma".to_string(), sigma));
            }
        }
        solutions.push(Solution { assignment, branch, matrix, tag });
    }
    if solutions.is_empty() && raw.residual.is_none() {
        let note = if raw.empty_note.is_empty() {
            "no candidate satisfied the full determinant system".to_string()
        } else {
            raw.empty_note
        };
        return Err(InverseError::NoSolution(note));
    }
    Ok(SolutionSet { solutions, residual: raw.residual })
}

/// Splits a univariate polynomial into its exact rational roots and a
/// root-free-over-Q remainder with Sturm-isolated real roots (if any).
fn univariate(p: &Polynomial) -> (Vec<Rational>, Option<(Polynomial, Vec<RootInterval>)>) {
    let roots = rational_roots(p);
    let mut rem = p.clone();
    for r in &roots {
        let lin = Polynomial::linear_root(r);
        loop {
            let (q, rest) = rem.div_rem(&lin);
            if rest.is_zero() {
                rem = q;
            } else {
                break;
            }
        }
    }
    if rem.degree().map_or(false, |d| d >= 1) {
        let intervals = isolate_real_roots_exact(&rem, &rat(1, 1_000_000));
        if !intervals.is_empty() {
            return (roots, Some((rem, intervals)));
        }
    }
    (roots, None)
}

fn alf_charges(sys: &AnsatzSystem) -> (Rational, Option<Rational>, Option<Rational>) {
    match &sys.charges {
        TargetCharges::Alf { mass, nut, angmom } => {
            (mass.clone(), nut.clone(), angmom.clone())
        }
        _ => unreachable!("dispatched on class"),
    }
}

fn ale_charges(sys: &AnsatzSystem) -> (Rational, Rational) {
    match &sys.charges {
        TargetCharges::Ale { mass, angmom } => (mass.clone(), angmom.clone()),
        _ => unreachable!("dispatched on class"),
    }
}

fn solve_alf1(sys: &AnsatzSystem) -> Result<Raw, InverseError> {
    let (m, nut, angmom) = alf_charges(sys);
    if let Some(l) = &angmom {
        if !l.is_zero() {
            return Err(InverseError::NoSolution(format!(
                "a one-node matrix has p12 = 2N/z with no 1/z² term, so L must vanish (got {})",
                rat_to_string(l)
            )));
        }
    }
    match sys.signature {
        Signature::Riemannian => {
            let n = nut.clone().unwrap_or_else(|| m.clone());
            if &n * &n != &m * &m {
                return Err(InverseError::NoSolution(format!(
                    "the constant coefficient forces N² = m², but N = {} and m = {}",
                    rat_to_string(&n),
                    rat_to_string(&m)
                )));
            }
            let branch =
                nut.is_none().then(|| "orientation convention N = +m".to_string());
            Ok(Raw::of(vec![(vec![n], branch)]))
        }
        Signature::Lorentzian => {
            let n = nut.unwrap_or_else(Rational::zero);
            if !m.is_zero() || !n.is_zero() {
                return Err(InverseError::NoSolution(format!(
                    "the constant coefficient forces m² + N² = 0; with m = {}, N = {} \
                     there is no real solution",
                    rat_to_string(&m),
                    rat_to_string(&n)
                )));
            }
            Ok(Raw::of(vec![(vec![Rational::zero()], Some("flat".to_string()))]))
        }
    }
}

fn solve_alf2(sys: &AnsatzSystem) -> Result<Raw, InverseError> {
    let (m, nut, angmom) = alf_charges(sys);
    let n = nut.unwrap_or_else(Rational::zero);
    let l = angmom.unwrap_or_else(Rational::zero);
    let lorentzian = sys.signature == Signature::Lorentzian;
    let m2 = &m * &m;
    let n2 = &n * &n;
    let l2 = &l * &l;
    let four = rat_i(4);
    let two = rat_i(2);

    // A, B for a known s, when m ≠ 0 (the linear path)
    let linear_ab = |s: &Rational| -> (Rational, Rational) {
        if lorentzian {
            let diff = -&four * &n * &l / &m; // B − A
            let sum = &four * (&m2 + &n2) - &two * s;
            (&(&sum - &diff) / &two, &(&sum + &diff) / &two)
        } else {
            let sum = -&four * &n * &l / &m; // A + B
            let diff = &two * s - &four * &m2 + &four * &n2;
            (&(&sum - &diff) / &two, &(&sum + &diff) / &two)
        }
    };

    match &sys.nodes {
        Some(nodes) => {
            let s = &nodes[1] * &nodes[1];
            if !m.is_zero() {
                let (a, b) = linear_ab(&s);
                let resid = if lorentzian {
                    &(&a * &b) - &(&four * &l2) - &(&s * &s)
                } else {
                    &(&(&a * &b) - &(&four * &l2)) + &(&s * &s)
                };
                if !resid.is_zero() {
                    return Err(InverseError::NoSolution(format!(
                        "the constant determinant coefficient leaves residual {} ≠ 0 \
                         for σ² = {}",
                        rat_to_string(&resid),
                        rat_to_string(&s)
                    )));
                }
                Ok(Raw::of(vec![(vec![a, b], None)]))
            } else {
                if !(&n * &l).is_zero() {
                    return Err(InverseError::NoSolution(format!(
                        "with m = 0 the z-coefficient 8NL = {} cannot vanish",
                        rat_to_string(&(rat_i(8) * &n * &l))
                    )));
                }
                // quadratic in A after eliminating B
                let quad = if lorentzian {
                    // A + B = 4N² − 2s, AB = 4L² + s²
                    let sum = &four * &n2 - &two * &s;
                    Polynomial::new(vec![
                        &four * &l2 + &s * &s,
                        -sum,
                        Rational::one(),
                    ])
                } else {
                    // B − A = 2s + 4N², AB = 4L² − s²
                    let k = &two * &s + &four * &n2;
                    Polynomial::new(vec![
                        &s * &s - &four * &l2,
                        k,
                        Rational::one(),
                    ])
                };
                let (roots, leftover) = univariate(&quad);
                let other = |a: &Rational| {
                    if lorentzian {
                        &(&four * &n2 - &two * &s) - a
                    } else {
                        a + &(&two * &s + &four * &n2)
                    }
                };
                let candidates =
                    roots.iter().map(|a| (vec![a.clone(), other(a)], None)).collect();
                Ok(Raw {
                    candidates,
                    residual: leftover.map(|(p, ivs)| Residual {
                        unknown: "A".to_string(),
                        polynomial: p,
                        roots: ivs,
                    }),
                    empty_note: "the quadratic for A has no real roots".to_string(),
                })
            }
        }
        None => {
            if m.is_zero() {
                if !(&n * &l).is_zero() {
                    return Err(InverseError::NoSolution(format!(
                        "with m = 0 the z-coefficient 8NL = {} cannot vanish",
                        rat_to_string(&(rat_i(8) * &n * &l))
                    )));
                }
                return Err(InverseError::Underdetermined(
                    "m = 0 leaves the node spacing σ free; supply nodes".to_string(),
                ));
            }
            if !lorentzian && m2 == n2 {
                return Err(InverseError::Underdetermined(
                    "m² = N² is the one-parameter multi-centre Gibbons-Hawking \
                     branch; supply nodes to pick a member"
                        .to_string(),
                ));
            }
            let s = if lorentzian {
                &(&m2 + &n2) - &(&l2 / &m2)
            } else {
                &(&m2 - &n2) + &(&l2 / &m2)
            };
            if !s.is_positive() {
                return Err(InverseError::NoSolution(format!(
                    "σ² = {} is not positive",
                    rat_to_string(&s)
                )));
            }
            let (a, b) = linear_ab(&s);
            Ok(Raw::of(vec![(vec![a, b, s], None)]))
        }
    }
}

fn solve_alf3(sys: &AnsatzSystem) -> Result<Raw, InverseError> {
    let (m, _, angmom) = alf_charges(sys);
    let l = angmom.unwrap_or_else(Rational::zero);
    let nodes = sys.nodes.as_ref().expect("enforced at ansatz construction");
    let delta = Polynomial::from_roots(nodes);
    let u = delta.coeff(1);
    let v = delta.coeff(0);
    let lorentzian = sys.signature == Signature::Lorentzian;

    if l.is_zero() {
        // diagonal case: the two numerator cubics multiply to Δ², so each is
        // a product of three of the doubled node roots
        let mut candidates = Vec::new();
        let delta_sq = delta.pow(2);
        let idx: [[usize; 3]; 7] =
            [[0, 0, 1], [0, 0, 2], [0, 1, 1], [0, 1, 2], [0, 2, 2], [1, 1, 2], [1, 2, 2]];
        for t in idx {
            let triple: Vec<Rational> = t.iter().map(|&i| nodes[i].clone()).collect();
            let sum = &(&triple[0] + &triple[1]) + &triple[2];
            if sum != -(&m + &m) {
                continue;
            }
            let c1 = Polynomial::from_roots(&triple);
            let (c2t, rest) = delta_sq.div_rem(&c1);
            debug_assert!(rest.is_zero());
            let (a, b) = (c1.coeff(1), c1.coeff(0));
            let (d, e) = if lorentzian {
                (c2t.coeff(1), c2t.coeff(0))
            } else {
                (-c2t.coeff(1), -c2t.coeff(0))
            };
            let label = format!(
                "p11 numerator roots {{{}}}",
                triple.iter().map(rat_to_string).collect::<Vec<_>>().join(", ")
            );
            candidates.push((vec![a, b, d, e, Rational::zero()], Some(label)));
        }
        let mut raw = Raw::of(candidates);
        raw.empty_note = format!(
            "L = 0 requires a triple of (doubled) node roots summing to −2m = {}; none does",
            rat_to_string(&-(&m + &m))
        );
        return Ok(raw);
    }
    if m.is_zero() {
        return if lorentzian {
            Err(InverseError::NoSolution(
                "with m = 0 the quadratic for A has negative discriminant −16L²"
                    .to_string(),
            ))
        } else {
            Err(InverseError::Underdetermined(
                "m = 0 with L ≠ 0 leaves a one-parameter family; not supported"
                    .to_string(),
            ))
        };
    }

    // general elimination: D, B, E, F in that order, each linear given the
    // previous, leaving one univariate polynomial in A
    let c = Polynomial::constant;
    let a_var = Polynomial::new(vec![Rational::zero(), Rational::one()]);
    let m2 = &m * &m;
    let l2 = &l * &l;
    let (d, b, e, f, last): (Polynomial, Polynomial, Polynomial, Polynomial, Polynomial);
    if lorentzian {
        d = &c(&(rat_i(2) * &u) + &(rat_i(4) * &m2)) - &a_var;
        let dm = &d - &a_var;
        b = (&(&(&a_var * &d) + &c(rat_i(4) * &m * &v))
            - &(&dm.scale(&(rat_i(4) * &m2)) + &c(&(rat_i(4) * &l2) + &(&u * &u))))
            .scale(&(rat_i(4) * &m).recip());
        e = &(&c(rat_i(2) * &v) - &b) - &dm.scale(&(rat_i(2) * &m));
        f = (&c(rat_i(2) * &u * &v) - &(&(&a_var * &e) + &(&b * &d)))
            .scale(&(rat_i(4) * &l).recip());
        last = &(&(&b * &e) - &(&f * &f)) - &c(&v * &v);
    } else {
        d = &a_var + &c(-(&(rat_i(4) * &m2) + &(rat_i(2) * &u)));
        let sum_ad = &a_var + &d;
        b = (&(&(&c(rat_i(4) * &m * &v) + &sum_ad.scale(&(rat_i(4) * &m2)))
            + &c(&(rat_i(4) * &l2) - &(&u * &u)))
            - &(&a_var * &d))
            .scale(&(rat_i(4) * &m).recip());
        e = &(&b - &c(rat_i(2) * &v)) - &sum_ad.scale(&(rat_i(2) * &m));
        f = (&(&(&a_var * &e) + &(&b * &d)) + &c(rat_i(2) * &u * &v))
            .scale(&-(rat_i(4) * &l).recip());
        last = &(&(&b * &e) - &(&f * &f)) + &c(&v * &v);
    }
    if last.is_zero() {
        return Err(InverseError::Underdetermined(
            "the final equation vanishes identically; a one-parameter family remains"
                .to_string(),
        ));
    }
    let (roots, leftover) = univariate(&last);
    let candidates = roots
        .iter()
        .map(|a0| {
            (
                vec![a0.clone(), b.eval(a0), d.eval(a0), e.eval(a0), f.eval(a0)],
                None,
            )
        })
        .collect();
    Ok(Raw {
        candidates,
        residual: leftover.map(|(p, ivs)| Residual {
            unknown: "A".to_string(),
            polynomial: p,
            roots: ivs,
        }),
        empty_note: "the eliminant in A has no real roots".to_string(),
    })
}

fn solve_ale1(sys: &AnsatzSystem) -> Result<Raw, InverseError> {
    let (m, l) = ale_charges(sys);
    if !m.is_zero() {
        return Err(InverseError::NoSolution(format!(
            "a one-node AE matrix has p11 = 1/(2z) exactly, so M must vanish (got {})",
            rat_to_string(&m)
        )));
    }
    if !l.is_zero() {
        return Err(InverseError::NoSolution(format!(
            "a one-node AE matrix is diagonal, so L must vanish (got {})",
            rat_to_string(&l)
        )));
    }
    Ok(Raw::of(vec![(vec![Rational::zero()], Some("flat".to_string()))]))
}

fn solve_ale2(sys: &AnsatzSystem) -> Result<Raw, InverseError> {
    let (m, l) = ale_charges(sys);
    let m2 = &m * &m;
    let two_l = &l + &l;
    match &sys.nodes {
        Some(nodes) => {
            let s = &nodes[1] * &nodes[1];
            let d = &s - &m2;
            if &d * &d != rat_i(4) * &l * &l {
                return Err(InverseError::NoSolution(format!(
                    "(σ² − M²)² = {} but 4L² = {}",
                    rat_to_string(&(&d * &d)),
                    rat_to_string(&(rat_i(4) * &l * &l))
                )));
            }
            let a = &m2 - &(&s + &s);
            let b = &m * &a;
            let label = if d == two_l { "σ² = M² + 2L" } else { "σ² = M² − 2L" };
            Ok(Raw::of(vec![(vec![a, b], Some(label.to_string()))]))
        }
        None => {
            let branches = [
                (&m2 + &two_l, "σ² = M² + 2L"),
                (&m2 - &two_l, "σ² = M² − 2L"),
            ];
            let mut candidates = Vec::new();
            for (s, label) in branches {
                if !s.is_positive() {
                    continue;
                }
                let a = &m2 - &(&s + &s);
                let b = &m * &a;
                candidates.push((vec![a, b, s], Some(label.to_string())));
            }
            if candidates.is_empty() {
                return Err(InverseError::NoSolution(format!(
                    "neither branch gives σ² > 0: M² + 2L = {}, M² − 2L = {}",
                    rat_to_string(&(&m2 + &two_l)),
                    rat_to_string(&(&m2 - &two_l))
                )));
            }
            Ok(Raw::of(candidates))
        }
    }
}

fn solve_ale3(sys: &AnsatzSystem) -> Result<Raw, InverseError> {
    let (m, l) = ale_charges(sys);
    let nodes = sys.nodes.as_ref().expect("enforced at ansatz construction");
    let delta = Polynomial::from_roots(nodes);
    let u = delta.coeff(1);
    let v = delta.coeff(0);

    if l.is_zero() {
        // diagonal case: (z² + 2Mz + 2A)·S̃ = Δ², so the quadratic is a
        // product of two of the doubled node roots
        let mut candidates = Vec::new();
        let delta_sq = delta.pow(2);
        for i in 0..3 {
            for j in i..3 {
                let (ai, aj) = (&nodes[i], &nodes[j]);
                if &(ai + aj) != &-(&m + &m) {
                    continue;
                }
                let quad = Polynomial::from_roots(&[ai.clone(), aj.clone()]);
                let (quart, rest) = delta_sq.div_rem(&quad);
                debug_assert!(rest.is_zero());
                let a = &quad.coeff(0) / rat_i(2);
                let label = format!(
                    "p11 numerator roots {{{}, {}}}",
                    rat_to_string(ai),
                    rat_to_string(aj)
                );
                candidates.push((
                    vec![
                        a,
                        Rational::zero(),
                        quart.coeff(2),
                        quart.coeff(1),
                        quart.coeff(0),
                    ],
                    Some(label),
                ));
            }
        }
        let mut raw = Raw::of(candidates);
        raw.empty_note = format!(
            "L = 0 requires a pair of node roots summing to −2M = {}; none does",
            rat_to_string(&-(&m + &m))
        );
        return Ok(raw);
    }

    // general elimination: C, D, E then B linear in turn, quartic left in A
    let c = Polynomial::constant;
    let a_var = Polynomial::new(vec![Rational::zero(), Rational::one()]);
    let m2 = &m * &m;
    let l2 = &l * &l;
    let cc = &c(&(rat_i(2) * &u) + &(rat_i(4) * &m2)) - &a_var.scale(&rat_i(2));
    let dd = &c(&(rat_i(2) * &v) - &(&(rat_i(4) * &m * &u) + &(rat_i(8) * &m2 * &m)))
        + &a_var.scale(&(rat_i(8) * &m));
    let ee = &(&c(&(&u * &u) - &(rat_i(4) * &l2)) - &dd.scale(&(rat_i(2) * &m)))
        - &(&a_var * &cc).scale(&rat_i(2));
    let bb = (&(&ee.scale(&(rat_i(2) * &m)) + &(&a_var * &dd).scale(&rat_i(2)))
        - &c(rat_i(2) * &u * &v))
        .scale(&(rat_i(8) * &l2).recip());
    let last = &(&(&a_var * &ee).scale(&rat_i(2)) + &(&bb * &bb).scale(&(rat_i(4) * &l2)))
        - &c(&v * &v);
    if last.is_zero() {
        return Err(InverseError::Underdetermined(
            "the final equation vanishes identically; a one-parameter family remains"
                .to_string(),
        ));
    }
    let (roots, leftover) = univariate(&last);
    let candidates = roots
        .iter()
        .map(|a0| {
            (
                vec![a0.clone(), bb.eval(a0), cc.eval(a0), dd.eval(a0), ee.eval(a0)],
                None,
            )
        })
        .collect();
    Ok(Raw {
        candidates,
        residual: leftover.map(|(p, ivs)| Residual {
            unknown: "A".to_string(),
            polynomial: p,
            roots: ivs,
        }),
        empty_note: "the quartic in A has no real roots".to_string(),
    })
}

/// Identifies a matrix by admissibility, shape and charges, cross-checking
/// against the catalogue's closed forms where the parameters are exact.
pub fn classify_solution(p: &PatchingMatrix) -> FamilyTag {
    classify_inner(p, true)
}

fn classify_inner(p: &PatchingMatrix, allow_normalize: bool) -> FamilyTag {
    if !p.det_check().pass || !p.pole_audit().admissible {
        return FamilyTag::Unknown;
    }
    let n = p.nodes.len();
    if p.is_gibbons_hawking_form() {
        return match n {
            0 => FamilyTag::Flat,
            1 => FamilyTag::Sdtn,
            _ => FamilyTag::MultiCentreGh,
        };
    }
    match p.asymptotic_classify() {
        AsymptoticClass::AfAlf => {
            let Ok(Charges::AfAlf { mass, nut, angmom }) = p.extract_charges() else {
                return FamilyTag::Unknown;
            };
            match n {
                0 => FamilyTag::Flat,
                1 => {
                    if &nut * &nut == &mass * &mass {
                        if mass.is_zero() {
                            FamilyTag::Flat
                        } else {
                            FamilyTag::Sdtn
                        }
                    } else {
                        FamilyTag::Unknown
                    }
                }
                2 => {
                    if &mass * &mass == &nut * &nut {
                        FamilyTag::MultiCentreGh
                    } else if nut.is_zero() {
                        if mass.is_zero() && angmom.is_zero() {
                            FamilyTag::Flat
                        } else {
                            confirm_kerr(p, &mass, &angmom)
                        }
                    } else {
                        FamilyTag::KerrTaubBolt
                    }
                }
                _ => FamilyTag::Unknown,
            }
        }
        AsymptoticClass::AeAle => match n {
            1 => FamilyTag::Flat,
            2 => FamilyTag::BazaikinEguchiHanson,
            _ => FamilyTag::Unknown,
        },
        AsymptoticClass::Other => {
            if allow_normalize {
                if let Ok((q, _)) = p.normalize_alf() {
                    return classify_inner(&q, false);
                }
            }
            FamilyTag::Unknown
        }
    }
}

/// Two-node AF/ALF with N = 0 is Kerr; confirm against the closed form when
/// the rotation parameter is exactly representable.
fn confirm_kerr(p: &PatchingMatrix, mass: &Rational, angmom: &Rational) -> FamilyTag {
    if p.signature == Signature::Riemannian && !mass.is_zero() && !angmom.is_zero() {
        let a = angmom / mass;
        let params = crate::catalogue::params_from(&[("m", mass.clone()), ("a", a)]);
        if let Ok(entry) = crate::catalogue::make_entry("kerr", &params) {
            if let Ok(top) = entry.patching_matrix(entry.top_rod()) {
                return if find_conjugation(p, top).is_some() {
                    FamilyTag::Kerr
                } else {
                    FamilyTag::Unknown
                };
            }
        }
    }
    FamilyTag::Kerr
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalogue::{killing_basis_change, make_entry, params_from};
    use crate::exact::rat_from_str;
    use crate::inverse::{build_ansatz, count_real_roots_in, InverseError};
    use crate::patching::ConjugationRecord;

    fn alf(m: &str, n: Option<&str>, l: Option<&str>) -> TargetCharges {
        TargetCharges::Alf {
            mass: rat_from_str(m).unwrap(),
            nut: n.map(|x| rat_from_str(x).unwrap()),
            angmom: l.map(|x| rat_from_str(x).unwrap()),
        }
    }

    fn ale(m: &str, l: &str) -> TargetCharges {
        TargetCharges::Ale {
            mass: rat_from_str(m).unwrap(),
            angmom: rat_from_str(l).unwrap(),
        }
    }

    fn nodes(xs: &[&str]) -> Option<Vec<Rational>> {
        Some(xs.iter().map(|x| rat_from_str(x).unwrap()).collect())
    }

    fn solve(
        sig: Signature,
        ch: TargetCharges,
        n: usize,
        ns: Option<Vec<Rational>>,
    ) -> Result<SolutionSet, InverseError> {
        solve_system(&build_ansatz(sig, ch, n, ns).unwrap())
    }

    fn value(sol: &Solution, name: &str) -> Rational {
        sol.assignment
            .iter()
            .find(|(k, _)| k == name)
            .map(|(_, v)| v.clone())
            .unwrap()
    }

    #[test]
    fn one_node_alf_is_uniquely_self_dual_taub_nut() {
        let set = solve(Signature::Riemannian, alf("2", None, None), 1, None).unwrap();
        assert_eq!(set.solutions.len(), 1);
        assert!(set.residual.is_none());
        let sol = &set.solutions[0];
        assert_eq!(value(sol, "N"), rat_i(2));
        assert_eq!(sol.tag, FamilyTag::Sdtn);
        // the reconstruction is the Gibbons-Hawking form seen through the
        // basis change C = [[1, 0], [1, 1]]
        let gh = make_entry("sdtn", &params_from(&[("m", rat_i(2))])).unwrap();
        let top = gh.patching_matrix(gh.top_rod()).unwrap();
        let c = ConjugationRecord::new(rat_i(1), rat_i(0), rat_i(1), rat_i(1)).unwrap();
        let expect = top.conjugate(&c).unwrap();
        assert!(sol.matrix.as_ref().unwrap().same_entries(&expect));
    }

    #[test]
    fn one_node_alf_rejects_bad_charges() {
        let wrong_nut = solve(Signature::Riemannian, alf("2", Some("1"), None), 1, None);
        assert!(matches!(wrong_nut, Err(InverseError::NoSolution(_))));
        let with_l = solve(Signature::Riemannian, alf("2", None, Some("3")), 1, None);
        assert!(matches!(with_l, Err(InverseError::NoSolution(_))));
        let lorentzian = solve(Signature::Lorentzian, alf("2", None, None), 1, None);
        assert!(matches!(lorentzian, Err(InverseError::NoSolution(_))));
    }

    #[test]
    fn kerr_charges_reconstruct_the_catalogue_matrix() {
        let set =
            solve(Signature::Riemannian, alf("3", Some("0"), Some("12")), 2, None).unwrap();
        assert_eq!(set.solutions.len(), 1);
        let sol = &set.solutions[0];
        assert_eq!(value(sol, "s"), rat_i(25));
        assert_eq!(value(sol, "sigma"), rat_i(5));
        assert_eq!(value(sol, "A"), rat_i(-7));
        assert_eq!(value(sol, "B"), rat_i(7));
        assert_eq!(sol.tag, FamilyTag::Kerr);
        let kerr = make_entry("kerr", &params_from(&[("m", rat_i(3)), ("a", rat_i(4))]))
            .unwrap();
        let top = kerr.patching_matrix(kerr.top_rod()).unwrap();
        assert!(sol.matrix.as_ref().unwrap().same_entries(top));
    }

    #[test]
    fn lorentzian_kerr_data_is_overextreme() {
        let err = solve(Signature::Lorentzian, alf("3", Some("0"), Some("12")), 2, None);
        match err {
            Err(InverseError::NoSolution(cert)) => assert!(cert.contains("-7"), "{}", cert),
            other => panic!("expected NoSolution, got {:?}", other.map(|s| s.solutions.len())),
        }
    }

    #[test]
    fn taub_nut_charges_match_the_normalized_catalogue_form() {
        let set =
            solve(Signature::Riemannian, alf("5", Some("4"), Some("0")), 2, None).unwrap();
        assert_eq!(set.solutions.len(), 1);
        let sol = &set.solutions[0];
        assert_eq!(value(sol, "sigma"), rat_i(3));
        let tn = make_entry("taub_nut", &params_from(&[])).unwrap();
        let raw_top = tn.patching_matrix(tn.top_rod()).unwrap();
        let (normalized, _) = raw_top.normalize_alf().unwrap();
        assert!(sol.matrix.as_ref().unwrap().same_entries(&normalized));
        assert_eq!(sol.tag, FamilyTag::KerrTaubBolt);
    }

    #[test]
    fn lorentzian_schwarzschild_reconstruction() {
        let set =
            solve(Signature::Lorentzian, alf("1", Some("0"), Some("0")), 2, None).unwrap();
        assert_eq!(set.solutions.len(), 1);
        let sol = &set.solutions[0];
        assert_eq!(value(sol, "s"), rat_i(1));
        assert_eq!(value(sol, "A"), rat_i(1));
        assert_eq!(value(sol, "B"), rat_i(1));
        let p = sol.matrix.as_ref().unwrap();
        assert!(p.det_check().pass);
        assert_eq!(format!("{}", p.p11), "(z + 1) / (z - 1)");
        assert!(p.p12.is_zero());
    }

    #[test]
    fn degenerate_two_node_branches_ask_for_nodes() {
        let gh_branch = solve(Signature::Riemannian, alf("2", Some("2"), Some("1")), 2, None);
        assert!(matches!(gh_branch, Err(InverseError::Underdetermined(_))));
        let massless = solve(Signature::Riemannian, alf("0", Some("0"), Some("1")), 2, None);
        assert!(matches!(massless, Err(InverseError::Underdetermined(_))));
    }

    #[test]
    fn gh_branch_with_nodes_resolves_to_multi_centre() {
        let set = solve(
            Signature::Riemannian,
            alf("2", Some("2"), Some("1")),
            2,
            nodes(&["-1", "1"]),
        )
        .unwrap();
        assert_eq!(set.solutions.len(), 1);
        let sol = &set.solutions[0];
        assert_eq!(value(sol, "A"), rat_i(-3));
        assert_eq!(value(sol, "B"), rat_i(-1));
        assert_eq!(sol.tag, FamilyTag::MultiCentreGh);
    }

    #[test]
    fn irrational_roots_come_back_as_certified_intervals() {
        let set = solve(
            Signature::Riemannian,
            alf("0", Some("2"), Some("0")),
            2,
            nodes(&["-1", "1"]),
        )
        .unwrap();
        assert!(set.solutions.is_empty());
        let res = set.residual.as_ref().unwrap();
        assert_eq!(res.unknown, "A");
        assert_eq!(res.polynomial.degree(), Some(2));
        assert_eq!(res.roots.len(), 2);
        for iv in &res.roots {
            assert_eq!(count_real_roots_in(&res.polynomial, &iv.lo, &iv.hi), 1);
        }
    }

    #[test]
    fn one_node_ale_is_flat_space_only() {
        let set = solve(Signature::Riemannian, ale("0", "0"), 1, None).unwrap();
        assert_eq!(set.solutions.len(), 1);
        let p = set.solutions[0].matrix.as_ref().unwrap();
        assert!(p.det_check().pass);
        assert_eq!(set.solutions[0].tag, FamilyTag::Flat);
        assert!(matches!(
            solve(Signature::Riemannian, ale("1", "0"), 1, None),
            Err(InverseError::NoSolution(_))
        ));
    }

    #[test]
    fn two_node_ale_acceptance_values() {
        let set = solve(Signature::Riemannian, ale("0", "-1/2"), 2, None).unwrap();
        assert_eq!(set.solutions.len(), 1);
        let sol = &set.solutions[0];
        assert_eq!(sol.branch.as_deref(), Some("σ² = M² − 2L"));
        assert_eq!(value(sol, "sigma"), rat_i(1));
        assert_eq!(value(sol, "A"), rat_i(-2));
        assert_eq!(value(sol, "B"), rat_i(0));
        let p = sol.matrix.as_ref().unwrap();
        assert!(p.det_check().pass);
        // p22 numerator is −2z³ + 4z
        assert_eq!(
            p.p22.num().coeffs(),
            &[rat_i(0), rat_i(4), rat_i(0), rat_i(-2)]
        );
        assert_eq!(sol.tag, FamilyTag::BazaikinEguchiHanson);
    }

    #[test]
    fn two_node_ale_with_no_positive_branch_fails() {
        assert!(matches!(
            solve(Signature::Riemannian, ale("0", "0"), 2, None),
            Err(InverseError::NoSolution(_))
        ));
    }

    #[test]
    fn bazaikin_round_trip_through_the_basis_change() {
        // a = 1, b = 2, σ = 1 keeps the basis change rational:
        // α = √(2b) = 2, β = √(2/b) = 1, γ = aσ√(2/b³) = 1/2
        let entry = make_entry(
            "bazaikin",
            &params_from(&[("a", rat_i(1)), ("b", rat_i(2)), ("sigma", rat_i(1))]),
        )
        .unwrap();
        let top = entry.patching_matrix(entry.top_rod()).unwrap();
        let transformed =
            killing_basis_change(top, &rat_i(2), &rat_i(1), &rat(1, 2)).unwrap();
        let set = solve(Signature::Riemannian, ale("1/2", "-3/8"), 2, None).unwrap();
        assert_eq!(set.solutions.len(), 1);
        let sol = &set.solutions[0];
        assert_eq!(value(sol, "sigma"), rat_i(1));
        assert!(sol.matrix.as_ref().unwrap().same_entries(&transformed));
        assert_eq!(sol.tag, FamilyTag::BazaikinEguchiHanson);
    }

    #[test]
    fn three_node_ale_reduces_to_a_quartic() {
        let set = solve(Signature::Riemannian, ale("1", "1"), 3, nodes(&["-3", "1", "2"]))
            .unwrap();
        // the quartic in A splits as two rational roots times an irreducible
        // quadratic with two more real roots
        assert_eq!(set.solutions.len(), 2);
        let a_values: Vec<Rational> =
            set.solutions.iter().map(|s| value(s, "A")).collect();
        assert!(a_values.contains(&rat(-5, 2)));
        assert!(a_values.contains(&rat(-1, 2)));
        for sol in &set.solutions {
            assert!(sol.matrix.as_ref().unwrap().det_check().pass);
        }
        let res = set.residual.as_ref().unwrap();
        assert_eq!(res.polynomial.degree(), Some(2));
        assert_eq!(res.roots.len(), 2);
        for iv in &res.roots {
            assert_eq!(count_real_roots_in(&res.polynomial, &iv.lo, &iv.hi), 1);
        }
    }

    #[test]
    fn three_node_ale_diagonal_enumeration() {
        let set = solve(Signature::Riemannian, ale("1", "0"), 3, nodes(&["-3", "1", "2"]))
            .unwrap();
        // only the pair {−3, 1} sums to −2M = −2
        assert_eq!(set.solutions.len(), 1);
        let sol = &set.solutions[0];
        assert_eq!(value(sol, "A"), rat(-3, 2));
        assert!(sol.branch.as_deref().unwrap().contains("-3"));
        assert!(sol.matrix.as_ref().unwrap().det_check().pass);
        assert!(sol.matrix.as_ref().unwrap().p12.is_zero());
    }

    #[test]
    fn three_node_alf_exact_solutions() {
        let set = solve(
            Signature::Riemannian,
            alf("2", None, Some("3")),
            3,
            nodes(&["-4", "1", "3"]),
        )
        .unwrap();
        assert_eq!(set.solutions.len(), 3);
        assert!(set.residual.is_none());
        for sol in &set.solutions {
            let p = sol.matrix.as_ref().unwrap();
            assert!(p.det_check().pass);
        }
        let a_values: Vec<Rational> =
            set.solutions.iter().map(|s| value(s, "A")).collect();
        assert!(a_values.contains(&rat_i(-15)));
    }

    #[test]
    fn three_node_alf_diagonal_enumeration() {
        let set = solve(
            Signature::Riemannian,
            alf("5/2", None, Some("0")),
            3,
            nodes(&["-3", "1", "2"]),
        )
        .unwrap();
        assert_eq!(set.solutions.len(), 1);
        let sol = &set.solutions[0];
        // p11 numerator (z + 3)²(z − 1) = z³ + 5z² + 3z − 9
        assert_eq!(value(sol, "A"), rat_i(3));
        assert_eq!(value(sol, "B"), rat_i(-9));
        let p = sol.matrix.as_ref().unwrap();
        assert!(p.det_check().pass);
        assert!(p.pole_audit().admissible);
    }

    #[test]
    fn three_node_alf_lorentzian_can_be_empty() {
        let err = solve(
            Signature::Lorentzian,
            alf("2", None, Some("1")),
            3,
            nodes(&["-3", "1", "2"]),
        );
        assert!(matches!(err, Err(InverseError::NoSolution(_))));
    }
}
