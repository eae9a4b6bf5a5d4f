//! `rodmat`: batch command-line front end. JSON payloads on stdout,
//! human-readable diagnostics on stderr.
//!
//! Exit codes: 0 success, 2 domain/input error, 3 admissibility failure
//! (pole audit or determinant identity), 4 no solution / no equivalence.

use clap::{Args, Parser, Subcommand};
use rodmat::catalogue::{self, Params};
use rodmat::exact::{rat_from_str, rat_to_string, Rational};
use rodmat::inverse::{
    build_ansatz, classify_solution, solve_system, InverseError, TargetCharges,
};
use rodmat::patching::{
    find_conjugation, Bound, ConjugationRecord, Direction, PatchingMatrix, Signature,
};
use rodmat::schema;
use rodmat::splitting::{
    default_quad_points, harmonic_residual, split_diagonal, split_gh, yang_residual, BulkField,
    GridSpec,
};
use serde::Serialize;
use serde_json::{json, Value};
use std::path::PathBuf;
use std::process::ExitCode;

const EXIT_DOMAIN: u8 = 2;
const EXIT_ADMISSIBILITY: u8 = 3;
const EXIT_NO_SOLUTION: u8 = 4;

#[derive(Parser)]
#[command(
    name = "rodmat",
    about = "Patching-matrix algebra for stationary axisymmetric and toric Ricci-flat 4-metrics",
    version
)]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
}

/// Catalogue parameters shared by several verbs; every value is an exact
/// rational literal like `3`, `-7/5`.
#[derive(Args, Default)]
struct ParamFlags {
    #[arg(long)]
    m: Option<String>,
    #[arg(long)]
    a: Option<String>,
    #[arg(long = "N")]
    nut: Option<String>,
    #[arg(long = "L")]
    angmom: Option<String>,
    #[arg(long = "M")]
    mass: Option<String>,
    /// Additional family parameter as key=value (repeatable).
    #[arg(long = "param", value_name = "KEY=VALUE")]
    extra: Vec<String>,
}

#[derive(Subcommand)]
enum Verb {
    /// List the catalogue families.
    List,
    /// Print a family's patching matrix on one rod as JSON.
    Show {
        family: String,
        /// Rod selector: "top", "bottom" or an index (0 = bottom rod).
        #[arg(long, default_value = "top")]
        rod: String,
        #[command(flatten)]
        params: ParamFlags,
    },
    /// Print a family's rod structure.
    Rods {
        family: String,
        #[command(flatten)]
        params: ParamFlags,
    },
    /// Pass a patching matrix by one of its nodes.
    Passnode {
        file: PathBuf,
        /// Node position (exact rational).
        #[arg(long)]
        node: String,
        /// "down" (towards the rod below) or "up".
        #[arg(long, default_value = "down")]
        direction: String,
    },
    /// Pole audit and determinant check of a stored matrix.
    Audit { file: PathBuf },
    /// Asymptotic charges of a stored matrix (normalizing first if needed).
    Charges { file: PathBuf },
    /// Conjugate a stored matrix to the standard limit at infinity.
    Normalize { file: PathBuf },
    /// Reconstruct a patching matrix from rod count and asymptotic charges.
    Inverse {
        /// Target class: "alf" or "ale".
        #[arg(long)]
        class: String,
        /// Signature: "r" (Riemannian) or "l" (Lorentzian).
        #[arg(long, default_value = "r")]
        signature: String,
        /// Node count (1-3), or explicit comma-separated node positions.
        #[arg(long)]
        nodes: String,
        #[command(flatten)]
        params: ParamFlags,
    },
    /// Continue a stored matrix into the bulk on a grid.
    Split {
        file: PathBuf,
        /// Grid window r0,r1,z0,z1,n (r0 > 0, n points per direction).
        #[arg(long)]
        grid: String,
        /// Quadrature points on the contour (>= 16).
        #[arg(long)]
        quad: Option<usize>,
    },
    /// Split on two grid resolutions and report residual convergence.
    Verify {
        file: PathBuf,
        #[arg(long)]
        grid: String,
        #[arg(long)]
        quad: Option<usize>,
        /// Fail (exit 2) when the fine-grid Yang residual exceeds this.
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Search for a constant unit-determinant conjugation between two matrices.
    Equiv { file1: PathBuf, file2: PathBuf },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.verb) {
        Ok(payload) => {
            println!("{}", serde_json::to_string_pretty(&payload).expect("serializable"));
            ExitCode::SUCCESS
        }
        Err(failure) => {
            eprintln!("rodmat: {}", failure.message);
            if let Some(payload) = failure.payload {
                println!("{}", serde_json::to_string_pretty(&payload).expect("serializable"));
            }
            ExitCode::from(failure.code)
        }
    }
}

struct Failure {
    code: u8,
    message: String,
    /// Structured findings to still emit on stdout (e.g. audit reports).
    payload: Option<Value>,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Failure { code, message: message.into(), payload: None }
    }

    fn with_payload(mut self, payload: Value) -> Self {
        self.payload = Some(payload);
        self
    }
}

fn domain(message: impl Into<String>) -> Failure {
    Failure::new(EXIT_DOMAIN, message)
}

fn run(verb: Verb) -> Result<Value, Failure> {
    match verb {
        Verb::List => cmd_list(),
        Verb::Show { family, rod, params } => cmd_show(&family, &rod, &params),
        Verb::Rods { family, params } => cmd_rods(&family, &params),
        Verb::Passnode { file, node, direction } => cmd_passnode(&file, &node, &direction),
        Verb::Audit { file } => cmd_audit(&file),
        Verb::Charges { file } => cmd_charges(&file),
        Verb::Normalize { file } => cmd_normalize(&file),
        Verb::Inverse { class, signature, nodes, params } => {
            cmd_inverse(&class, &signature, &nodes, &params)
        }
        Verb::Split { file, grid, quad } => cmd_split(&file, &grid, quad),
        Verb::Verify { file, grid, quad, tol } => cmd_verify(&file, &grid, quad, tol),
        Verb::Equiv { file1, file2 } => cmd_equiv(&file1, &file2),
    }
}

// ---------------------------------------------------------------------------
// shared plumbing

fn parse_rat(s: &str, what: &str) -> Result<Rational, Failure> {
    rat_from_str(s).map_err(|_| domain(format!("bad rational literal `{}` for {}", s, what)))
}

fn collect_params(flags: &ParamFlags) -> Result<Params, Failure> {
    let mut out = Params::new();
    let named = [
        ("m", &flags.m),
        ("a", &flags.a),
        ("N", &flags.nut),
        ("L", &flags.angmom),
        ("M", &flags.mass),
    ];
    for (key, value) in named {
        if let Some(v) = value {
            out.insert(key.to_string(), parse_rat(v, key)?);
        }
    }
    for kv in &flags.extra {
        let (k, v) = kv
            .split_once('=')
            .ok_or_else(|| domain(format!("--param wants KEY=VALUE, got `{}`", kv)))?;
        out.insert(k.to_string(), parse_rat(v, k)?);
    }
    Ok(out)
}

fn make_entry(family: &str, flags: &ParamFlags) -> Result<catalogue::CatalogueEntry, Failure> {
    let params = collect_params(flags)?;
    catalogue::make_entry(family, &params).map_err(|e| domain(e.to_string()))
}

/// Loads a matrix file and gates it through the pole audit (exit 3 with the
/// findings when inadmissible), per the front-door contract.
fn load_matrix(path: &PathBuf) -> Result<PatchingMatrix, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| domain(format!("cannot read {}: {}", path.display(), e)))?;
    let p = schema::matrix_from_str(&text).map_err(|e| domain(e.to_string()))?;
    let audit = p.pole_audit();
    if !audit.admissible {
        return Err(Failure::new(
            EXIT_ADMISSIBILITY,
            format!("{} fails the pole audit", path.display()),
        )
        .with_payload(audit_payload(&p)));
    }
    Ok(p)
}

fn conjugation_payload(c: &ConjugationRecord) -> Value {
    json!({
        "c11": rat_to_string(&c.c11),
        "c12": rat_to_string(&c.c12),
        "c21": rat_to_string(&c.c21),
        "c22": rat_to_string(&c.c22),
    })
}

fn matrix_payload(p: &PatchingMatrix) -> Value {
    serde_json::to_value(schema::matrix_to_json(p)).expect("serializable")
}

fn bound_payload(b: &Bound) -> Value {
    Value::String(match b {
        Bound::NegInf => "-inf".to_string(),
        Bound::PosInf => "+inf".to_string(),
        Bound::Finite(x) => rat_to_string(x),
    })
}

// ---------------------------------------------------------------------------
// catalogue verbs

fn cmd_list() -> Result<Value, Failure> {
    let families: Vec<Value> = catalogue::family_names()
        .into_iter()
        .map(|name| {
            let fam = catalogue::family(name).expect("registered");
            let defaults: Vec<Value> = fam
                .defaults()
                .iter()
                .map(|(k, v)| json!({ "name": k, "default": rat_to_string(v) }))
                .collect();
            json!({
                "name": name,
                "description": fam.description(),
                "parameters": defaults,
            })
        })
        .collect();
    Ok(json!({ "families": families }))
}

fn resolve_rod(entry: &catalogue::CatalogueEntry, rod: &str) -> Result<usize, Failure> {
    match rod {
        "top" => Ok(entry.top_rod()),
        "bottom" => Ok(0),
        other => other
            .parse::<usize>()
            .map_err(|_| domain(format!("bad rod selector `{}`", other))),
    }
}

fn cmd_show(family: &str, rod: &str, params: &ParamFlags) -> Result<Value, Failure> {
    let entry = make_entry(family, params)?;
    let idx = resolve_rod(&entry, rod)?;
    let p = entry.patching_matrix(idx).map_err(|e| domain(e.to_string()))?;
    Ok(matrix_payload(p))
}

fn cmd_rods(family: &str, params: &ParamFlags) -> Result<Value, Failure> {
    let entry = make_entry(family, params)?;
    let rs = entry.rod_structure();
    let rods: Vec<Value> = rs
        .rods
        .iter()
        .map(|r| {
            json!({
                "lower": bound_payload(&r.interval.lower),
                "upper": bound_payload(&r.interval.upper),
                "kernel": [rat_to_string(&r.kernel.0), rat_to_string(&r.kernel.1)],
            })
        })
        .collect();
    Ok(json!({
        "family": family,
        "class": rs.asymptotic_class.as_str(),
        "nodes": rs.nodes.iter().map(rat_to_string).collect::<Vec<_>>(),
        "rods": rods,
    }))
}

// ---------------------------------------------------------------------------
// matrix-file verbs

fn cmd_passnode(file: &PathBuf, node: &str, direction: &str) -> Result<Value, Failure> {
    let p = load_matrix(file)?;
    let node = parse_rat(node, "--node")?;
    if p.is_gibbons_hawking_form() {
        let out = p.pass_node_gh(&node).map_err(|e| domain(e.to_string()))?;
        return Ok(json!({
            "route": "gibbons-hawking",
            "matrix": matrix_payload(&out),
            "conjugation": Value::Null,
        }));
    }
    let dir = match direction {
        "down" => Direction::Down,
        "up" => Direction::Up,
        other => return Err(domain(format!("bad --direction `{}` (down|up)", other))),
    };
    let (out, c) = p.pass_node_standard(&node, dir).map_err(|e| domain(e.to_string()))?;
    Ok(json!({
        "route": "standard",
        "matrix": matrix_payload(&out),
        "conjugation": conjugation_payload(&c),
    }))
}

fn audit_payload(p: &PatchingMatrix) -> Value {
    let audit = p.pole_audit();
    let det = p.det_check();
    let findings: Vec<Value> = audit
        .findings
        .iter()
        .map(|f| {
            json!({
                "entry": f.entry.as_str(),
                "class": f.class.as_str(),
                "location": f.location,
                "order": f.order,
            })
        })
        .collect();
    json!({
        "admissible": audit.admissible,
        "determinant": {
            "pass": det.pass,
            "residual": det.residual.as_ref().map(|r| r.to_string()),
        },
        "findings": findings,
    })
}

fn cmd_audit(file: &PathBuf) -> Result<Value, Failure> {
    // no load gate here: reporting the pathologies is the whole point
    let text = std::fs::read_to_string(file)
        .map_err(|e| domain(format!("cannot read {}: {}", file.display(), e)))?;
    let p = schema::matrix_from_str(&text).map_err(|e| domain(e.to_string()))?;
    let payload = audit_payload(&p);
    let ok = payload["admissible"].as_bool() == Some(true)
        && payload["determinant"]["pass"].as_bool() == Some(true);
    if ok {
        Ok(payload)
    } else {
        Err(Failure::new(
            EXIT_ADMISSIBILITY,
            format!("{} is not an admissible patching matrix", file.display()),
        )
        .with_payload(payload))
    }
}

fn charges_payload(p: &PatchingMatrix) -> Result<Value, Failure> {
    let charges = p.extract_charges().map_err(|e| domain(e.to_string()))?;
    Ok(match charges {
        rodmat::patching::Charges::AfAlf { mass, nut, angmom } => json!({
            "mass": rat_to_string(&mass),
            "nut": rat_to_string(&nut),
            "angmom": rat_to_string(&angmom),
        }),
        rodmat::patching::Charges::AeAle { eta, zeta } => json!({
            "eta": rat_to_string(&eta),
            "zeta": rat_to_string(&zeta),
        }),
    })
}

fn cmd_charges(file: &PathBuf) -> Result<Value, Failure> {
    let p = load_matrix(file)?;
    match p.asymptotic_classify() {
        rodmat::patching::AsymptoticClass::Other => {
            let (normalized, c) = p
                .normalize_alf()
                .map_err(|_| domain("matrix has no standard asymptotics and cannot be normalized"))?;
            Ok(json!({
                "class": normalized.asymptotic_classify().as_str(),
                "normalized": true,
                "conjugation": conjugation_payload(&c),
                "charges": charges_payload(&normalized)?,
            }))
        }
        class => Ok(json!({
            "class": class.as_str(),
            "normalized": false,
            "charges": charges_payload(&p)?,
        })),
    }
}

fn cmd_normalize(file: &PathBuf) -> Result<Value, Failure> {
    let p = load_matrix(file)?;
    let (out, c) = p.normalize_alf().map_err(|e| domain(e.to_string()))?;
    Ok(json!({
        "matrix": matrix_payload(&out),
        "conjugation": conjugation_payload(&c),
    }))
}

// ---------------------------------------------------------------------------
// inverse verb

fn cmd_inverse(
    class: &str,
    signature: &str,
    nodes: &str,
    params: &ParamFlags,
) -> Result<Value, Failure> {
    let signature = match signature {
        "r" => Signature::Riemannian,
        "l" => Signature::Lorentzian,
        other => return Err(domain(format!("bad --signature `{}` (r|l)", other))),
    };
    let (n_nodes, node_list) = if nodes.contains(',') {
        let positions: Result<Vec<Rational>, Failure> =
            nodes.split(',').map(|s| parse_rat(s.trim(), "--nodes")).collect();
        let positions = positions?;
        (positions.len(), Some(positions))
    } else {
        let n: usize = nodes
            .parse()
            .map_err(|_| domain(format!("bad --nodes `{}` (count or position list)", nodes)))?;
        (n, None)
    };
    let get = |v: &Option<String>, what: &str| -> Result<Option<Rational>, Failure> {
        v.as_ref().map(|s| parse_rat(s, what)).transpose()
    };
    let charges = match class {
        "alf" => TargetCharges::Alf {
            mass: get(&params.m, "--m")?.ok_or_else(|| domain("--class alf needs --m"))?,
            nut: get(&params.nut, "--N")?,
            angmom: get(&params.angmom, "--L")?,
        },
        "ale" => TargetCharges::Ale {
            mass: get(&params.mass, "--M")?.ok_or_else(|| domain("--class ale needs --M"))?,
            angmom: get(&params.angmom, "--L")?
                .ok_or_else(|| domain("--class ale needs --L"))?,
        },
        other => return Err(domain(format!("bad --class `{}` (alf|ale)", other))),
    };
    let system = build_ansatz(signature, charges, n_nodes, node_list).map_err(inverse_failure)?;
    let mut set = solve_system(&system).map_err(inverse_failure)?;
    set.solutions.sort_by(|a, b| a.assignment.cmp(&b.assignment));
    let solutions: Vec<Value> = set
        .solutions
        .iter()
        .map(|s| {
            let assignment: Vec<Value> = s
                .assignment
                .iter()
                .map(|(k, v)| json!([k, rat_to_string(v)]))
                .collect();
            let tag = match &s.matrix {
                Some(m) => classify_solution(m).as_str(),
                None => s.tag.as_str(),
            };
            json!({
                "assignment": assignment,
                "branch": s.branch,
                "family": tag,
                "matrix": s.matrix.as_ref().map(matrix_payload),
            })
        })
        .collect();
    let residual = set.residual.as_ref().map(|r| {
        json!({
            "unknown": r.unknown,
            "polynomial": r.polynomial.to_string(),
            "roots": r.roots.iter().map(|iv| json!({
                "lo": rat_to_string(&iv.lo),
                "hi": rat_to_string(&iv.hi),
            })).collect::<Vec<_>>(),
        })
    });
    Ok(json!({
        "class": class,
        "signature": signature.as_str(),
        "n_nodes": n_nodes,
        "equations": system.render_equations(),
        "solutions": solutions,
        "residual": residual,
    }))
}

fn inverse_failure(e: InverseError) -> Failure {
    match &e {
        InverseError::NoSolution(cert) => Failure::new(EXIT_NO_SOLUTION, e.to_string())
            .with_payload(json!({ "solutions": [], "certificate": cert })),
        _ => Failure::new(EXIT_DOMAIN, e.to_string()),
    }
}

// ---------------------------------------------------------------------------
// splitting verbs

fn parse_grid(spec: &str) -> Result<GridSpec, Failure> {
    let parts: Vec<&str> = spec.split(',').collect();
    if parts.len() != 5 {
        return Err(domain(format!("--grid wants r0,r1,z0,z1,n, got `{}`", spec)));
    }
    let num = |s: &str| -> Result<f64, Failure> {
        s.trim().parse().map_err(|_| domain(format!("bad grid number `{}`", s)))
    };
    let n: usize = parts[4]
        .trim()
        .parse()
        .map_err(|_| domain(format!("bad grid point count `{}`", parts[4])))?;
    GridSpec::square(num(parts[0])?, num(parts[1])?, num(parts[2])?, num(parts[3])?, n)
        .map_err(|e| domain(e.to_string()))
}

fn split_auto(
    p: &PatchingMatrix,
    grid: &GridSpec,
    quad: usize,
) -> Result<(&'static str, BulkField), Failure> {
    let route = if p.is_gibbons_hawking_form() {
        "gibbons-hawking"
    } else if p.p12.is_zero() {
        "diagonal"
    } else {
        return Err(domain(
            "matrix is neither diagonal nor Gibbons-Hawking; no splitting route applies",
        ));
    };
    let field = match route {
        "gibbons-hawking" => split_gh(p, grid, quad),
        _ => split_diagonal(p, grid, quad),
    }
    .map_err(|e| domain(e.to_string()))?;
    Ok((route, field))
}

#[derive(Serialize)]
struct GridJson {
    r0: f64,
    r1: f64,
    z0: f64,
    z1: f64,
    n: usize,
}

fn grid_payload(g: &GridSpec) -> Value {
    serde_json::to_value(GridJson { r0: g.r0, r1: g.r1, z0: g.z0, z1: g.z1, n: g.nr })
        .expect("serializable")
}

fn field_rows(field: &BulkField, pick: fn([f64; 3]) -> f64) -> Vec<Vec<f64>> {
    (0..field.grid.nr)
        .map(|i| (0..field.grid.nz).map(|j| pick(field.at(i, j))).collect())
        .collect()
}

fn cmd_split(file: &PathBuf, grid: &str, quad: Option<usize>) -> Result<Value, Failure> {
    let p = load_matrix(file)?;
    let grid = parse_grid(grid)?;
    let quad = quad.unwrap_or_else(default_quad_points);
    let (route, field) = split_auto(&p, &grid, quad)?;
    Ok(json!({
        "route": route,
        "numeric": {
            "grid": grid_payload(&grid),
            "quad_points": quad,
            "det_error_max": field.det_error_max(),
            "j11": field_rows(&field, |v| v[0]),
            "j12": field_rows(&field, |v| v[1]),
            "j22": field_rows(&field, |v| v[2]),
        },
    }))
}

fn residual_payload(r: &rodmat::splitting::ResidualReport) -> Value {
    json!({
        "max": r.max,
        "l2": r.l2,
        "spacing": [r.spacing.0, r.spacing.1],
    })
}

fn cmd_verify(
    file: &PathBuf,
    grid: &str,
    quad: Option<usize>,
    tol: Option<f64>,
) -> Result<Value, Failure> {
    let p = load_matrix(file)?;
    let coarse_grid = parse_grid(grid)?;
    let fine_grid = GridSpec {
        nr: 2 * coarse_grid.nr - 1,
        nz: 2 * coarse_grid.nz - 1,
        ..coarse_grid
    };
    let quad = quad.unwrap_or_else(default_quad_points);
    let (route, coarse_field) = split_auto(&p, &coarse_grid, quad)?;
    let (_, fine_field) = split_auto(&p, &fine_grid, quad)?;
    let coarse = yang_residual(&coarse_field).map_err(|e| domain(e.to_string()))?;
    let fine = yang_residual(&fine_field).map_err(|e| domain(e.to_string()))?;
    // scalar harmonicity of the continued potential on the fine grid:
    // the GH potential V directly, or log j11 on the diagonal route
    let pick: fn([f64; 3]) -> f64 = match route {
        "gibbons-hawking" => |v| v[0],
        _ => |v| v[0].ln(),
    };
    let harmonic = harmonic_residual(&fine_field.scalar_map(pick));
    let order = coarse.order_against(&fine);
    let payload = json!({
        "route": route,
        "numeric": {
            "grid": grid_payload(&coarse_grid),
            "quad_points": quad,
            "det_error_max": fine_field.det_error_max(),
            "yang_coarse": residual_payload(&coarse),
            "yang_fine": residual_payload(&fine),
            "convergence_order": order,
            "harmonic_fine": residual_payload(&harmonic),
        },
    });
    if let Some(tol) = tol {
        if !(fine.max <= tol) {
            return Err(domain(format!(
                "fine-grid Yang residual {} exceeds tolerance {}",
                fine.max, tol
            ))
            .with_payload(payload));
        }
    }
    Ok(payload)
}

fn cmd_equiv(file1: &PathBuf, file2: &PathBuf) -> Result<Value, Failure> {
    let p = load_matrix(file1)?;
    let q = load_matrix(file2)?;
    match find_conjugation(&p, &q) {
        Some(c) => Ok(json!({
            "equivalent": true,
            "conjugation": conjugation_payload(&c),
        })),
        None => Err(Failure::new(
            EXIT_NO_SOLUTION,
            "no constant unit-determinant conjugation relates the two matrices",
        )
        .with_payload(json!({ "equivalent": false }))),
    }
}
