//! Command-line front end and I/O formats.
//!
//! Subcommands: `decide` (run a problem file), `schwarz` (integrality
//! test only), `enumerate` (bounded search for admissible classes),
//! `tables` (dump embedded lookup data), `selftest` (run the invariant
//! suite). Verdicts are printed as JSON on standard output; the exit
//! code encodes the outcome so shell pipelines can branch: 0 splits,
//! 1 obstructed, 2 hypotheses not met, 64 usage or parse errors.
//!
//! Arithmetic values in emitted JSON are decimal strings, never raw
//! numbers, so consumers cannot overflow on them.

use crate::algebra::{AbelianGroup, IntMatrix};
use crate::chern::{ChernVector, LineBundle};
use crate::cpm::enumerate_split_chern;
use crate::engine::{
    decide, primary_obstruction, profile_cpm, CoeffSys, ProfileFlags, SpaceProfile, SplitProblem,
    Verdict,
};
use crate::ring::{GradedElement, Modulus, RingProfile, TruncatedPoly};
use crate::symfun::{rational_to_string, schwarzenberger_check};
use crate::tables::{dump_table, pi_2m2, TableName};
use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde::de::Error as DeError;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::BTreeMap;
use std::path::PathBuf;
use std::str::FromStr;

const EXIT_SPLITS: i32 = 0;
const EXIT_OBSTRUCTED: i32 = 1;
const EXIT_HYPOTHESES: i32 = 2;
const EXIT_USAGE: i32 = 64;

/// Arbitrary-precision integer that reads from a JSON number or decimal
/// string and always writes back a decimal string.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct JsonInt(pub BigInt);

impl Serialize for JsonInt {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

impl<'de> Deserialize<'de> for JsonInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(i64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(n) => Ok(JsonInt(BigInt::from(n))),
            Raw::Text(t) => BigInt::from_str(t.trim())
                .map(JsonInt)
                .map_err(|_| D::Error::custom(format!("not a decimal integer: {t:?}"))),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
}

#[derive(Parser, Debug)]
#[command(
    name = "pspan",
    about = "Exact-arithmetic line-bundle splitting decisions for complex vector bundles",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run a problem file: splitting, span, primary obstruction, or the
    /// integrality test, per the file's "mode".
    Decide {
        /// Path to a JSON problem file.
        #[arg(long)]
        input: PathBuf,
    },
    /// Run the Schwarzenberger integrality test on the class in a
    /// problem file (base "cpm").
    Schwarz {
        #[arg(long)]
        input: PathBuf,
    },
    /// Enumerate splitting-admissible Chern classes over projective
    /// m-space within coefficient bounds. One JSON object per line.
    Enumerate {
        /// Complex dimension m.
        #[arg(long)]
        m: usize,
        /// Number of line bundles (0 to 3).
        #[arg(long)]
        r: usize,
        /// Bound on |c_i|.
        #[arg(long)]
        bound: u32,
        /// Bound on |z_i|; defaults to --bound.
        #[arg(long)]
        line_bound: Option<u32>,
        #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
        format: OutputFormat,
    },
    /// Dump an embedded lookup table.
    Tables {
        /// Which table to dump.
        table: TableArg,
        /// For "pi": resolve the group at this m instead of dumping the
        /// residue table.
        #[arg(long)]
        m: Option<usize>,
        #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
        format: OutputFormat,
    },
    /// Run the built-in invariant suite; exits 0 when everything passes.
    Selftest,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum TableArg {
    /// (Co)homology of K(G, q) for generic G.
    EmG,
    /// Integral (co)homology of K(Z, q).
    EmZ,
    /// Mod-k cohomology of K(Z, q).
    EmZMod,
    /// Integral (co)homology of K(Z/k, q).
    EmCyclic,
    /// Homotopy groups of W(m, 2).
    Stiefel2,
    /// Homotopy groups of W(m, 3).
    Stiefel3,
    /// pi_{2m-2}(W(m, 3)).
    Pi,
}

impl From<TableArg> for TableName {
    fn from(t: TableArg) -> TableName {
        match t {
            TableArg::EmG => TableName::EmGeneric,
            TableArg::EmZ => TableName::EmZ,
            TableArg::EmZMod => TableName::EmZMod,
            TableArg::EmCyclic => TableName::EmCyclic,
            TableArg::Stiefel2 => TableName::Stiefel2,
            TableArg::Stiefel3 => TableName::Stiefel3,
            TableArg::Pi => TableName::Pi2m2,
        }
    }
}

// ---------------------------------------------------------------------
// problem file schema

#[derive(Clone, Copy, PartialEq, Eq, Debug, Deserialize, Serialize)]
#[serde(rename_all = "lowercase")]
enum BaseKind {
    Cpm,
    Profile,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Deserialize, Serialize)]
#[serde(rename_all = "kebab-case")]
enum Mode {
    Split,
    Span,
    PrimaryObstruction,
    Schwarzenberger,
}

/// A Chern component: a bare integer over projective space, a
/// coordinate vector over a declared profile.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
enum ClassComponent {
    Scalar(JsonInt),
    Vector(Vec<JsonInt>),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ProblemFile {
    base: BaseKind,
    m: usize,
    #[serde(default)]
    profile: Option<ProfileSpec>,
    #[serde(default)]
    xi: Vec<ClassComponent>,
    #[serde(default)]
    lines: Vec<Vec<JsonInt>>,
    r: usize,
    mode: Mode,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ProfileSpec {
    ring: RingSpec,
    #[serde(default)]
    cohomology: Vec<GroupSpec>,
    #[serde(default)]
    rho2: Vec<MapSpec>,
    #[serde(default)]
    sq2: Vec<MapSpec>,
    #[serde(default)]
    bockstein: Vec<MapSpec>,
    #[serde(default)]
    flags: FlagsSpec,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RingSpec {
    /// Groups of H^0, H^2, ..., H^{2m} in order.
    groups: Vec<GroupShape>,
    /// Structure constants for degree pairs a <= b; omitted pairs
    /// multiply to zero.
    #[serde(default)]
    products: Vec<ProductSpec>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct GroupShape {
    #[serde(default)]
    free_rank: usize,
    #[serde(default)]
    invariant_factors: Vec<JsonInt>,
}

impl GroupShape {
    fn build(&self) -> AbelianGroup {
        let orders: Vec<BigInt> = self.invariant_factors.iter().map(|f| f.0.clone()).collect();
        AbelianGroup::from_cyclic_orders(self.free_rank, &orders)
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ProductSpec {
    a: usize,
    b: usize,
    /// table[s][t] = coordinates of (generator s of H^{2a}) *
    /// (generator t of H^{2b}) in H^{2(a+b)}.
    table: Vec<Vec<Vec<JsonInt>>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct GroupSpec {
    degree: usize,
    coefficients: CoeffKind,
    group: GroupShape,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Deserialize)]
enum CoeffKind {
    #[serde(rename = "z")]
    Integral,
    #[serde(rename = "z2")]
    Mod2,
    #[serde(rename = "z4")]
    Mod4,
}

impl From<CoeffKind> for CoeffSys {
    fn from(k: CoeffKind) -> CoeffSys {
        match k {
            CoeffKind::Integral => CoeffSys::Integral,
            CoeffKind::Mod2 => CoeffSys::Mod2,
            CoeffKind::Mod4 => CoeffSys::Mod4,
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct MapSpec {
    degree: usize,
    /// Rows index target generators, columns source generators. An
    /// empty list is the map out of or into a trivial group.
    matrix: Vec<Vec<JsonInt>>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FlagsSpec {
    simply_connected: Option<bool>,
    w2_nonzero: Option<bool>,
    h2_no_2torsion: Option<bool>,
    h3_trivial: Option<bool>,
}

// ---------------------------------------------------------------------
// emitted documents

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UnmetDto {
    pub theorem: Option<String>,
    pub condition: String,
    pub status: String,
    pub detail: String,
}

/// Wire form of a verdict. Certificate components and witness values
/// are coordinate vectors rendered as decimal strings.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "kebab-case", deny_unknown_fields)]
pub enum VerdictDto {
    Splits {
        theorem: String,
        checked_indices: Vec<usize>,
        conditions: Vec<String>,
        flags_used: Vec<String>,
        certificate: Vec<Vec<String>>,
    },
    Obstructed {
        theorem: String,
        failing_index: usize,
        value: Vec<String>,
    },
    HypothesesNotMet {
        unmet: Vec<UnmetDto>,
    },
}

fn coords_to_strings(e: &GradedElement) -> Vec<String> {
    e.coords.iter().map(|c| c.to_string()).collect()
}

impl VerdictDto {
    pub fn from_verdict(v: &Verdict) -> VerdictDto {
        match v {
            Verdict::Splits {
                route,
                checked_indices,
                conditions,
                flags_used,
                certificate,
            } => VerdictDto::Splits {
                theorem: route.to_string(),
                checked_indices: checked_indices.clone(),
                conditions: conditions.clone(),
                flags_used: flags_used.clone(),
                certificate: certificate.iter().map(coords_to_strings).collect(),
            },
            Verdict::Obstructed {
                route,
                failing_index,
                value,
            } => VerdictDto::Obstructed {
                theorem: route.to_string(),
                failing_index: *failing_index,
                value: coords_to_strings(value),
            },
            Verdict::HypothesesNotMet { reports } => VerdictDto::HypothesesNotMet {
                unmet: reports
                    .iter()
                    .map(|r| UnmetDto {
                        theorem: r.route.map(|id| id.to_string()),
                        condition: r.check.condition.clone(),
                        status: r.check.status.to_string(),
                        detail: r.check.detail.clone(),
                    })
                    .collect(),
            },
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            VerdictDto::Splits { .. } => EXIT_SPLITS,
            VerdictDto::Obstructed { .. } => EXIT_OBSTRUCTED,
            VerdictDto::HypothesesNotMet { .. } => EXIT_HYPOTHESES,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct SchwarzDto {
    pub m: usize,
    pub passes: bool,
    pub first_failing_k: Option<usize>,
    pub value: Option<String>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ObstructionDto {
    pub degree_index: usize,
    pub value: Vec<String>,
    pub vanishes: bool,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
struct EnumerateDto {
    c: Vec<String>,
    lines: Vec<String>,
    residual: Vec<String>,
}

// ---------------------------------------------------------------------

#[derive(Debug)]
struct CliFailure {
    message: String,
    code: i32,
}

fn usage_error(message: impl Into<String>) -> CliFailure {
    CliFailure {
        message: message.into(),
        code: EXIT_USAGE,
    }
}

type CliResult = Result<i32, CliFailure>;

/// Entry point; returns the process exit code.
pub fn run<I>(argv: I) -> i32
where
    I: IntoIterator,
    I::Item: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    print!("{e}");
                    0
                }
                _ => {
                    eprint!("{e}");
                    EXIT_USAGE
                }
            };
        }
    };
    let outcome = match cli.command {
        Command::Decide { input } => run_decide(&input),
        Command::Schwarz { input } => run_schwarz(&input),
        Command::Enumerate {
            m,
            r,
            bound,
            line_bound,
            format,
        } => run_enumerate(m, r, bound, line_bound.unwrap_or(bound), format),
        Command::Tables { table, m, format } => run_tables(table, m, format),
        Command::Selftest => Ok(run_selftest()),
    };
    match outcome {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}

fn load_problem(path: &PathBuf) -> Result<ProblemFile, CliFailure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| usage_error(format!("cannot read {}: {e}", path.display())))?;
    let de = &mut serde_json::Deserializer::from_str(&text);
    let problem: ProblemFile = serde_path_to_error::deserialize(de).map_err(|e| {
        usage_error(format!(
            "malformed problem file at field `{}`: {}",
            e.path(),
            e.inner()
        ))
    })?;
    if problem.m == 0 {
        return Err(usage_error("field `m`: must be at least 1"));
    }
    Ok(problem)
}

fn build_profile(problem: &ProblemFile) -> Result<SpaceProfile, CliFailure> {
    match problem.base {
        BaseKind::Cpm => {
            if problem.profile.is_some() {
                return Err(usage_error(
                    "field `profile`: not allowed when base is \"cpm\"",
                ));
            }
            Ok(profile_cpm(problem.m))
        }
        BaseKind::Profile => {
            let spec = problem
                .profile
                .as_ref()
                .ok_or_else(|| usage_error("field `profile`: required when base is \"profile\""))?;
            build_space_profile(problem.m, spec)
        }
    }
}

fn build_space_profile(m: usize, spec: &ProfileSpec) -> Result<SpaceProfile, CliFailure> {
    if spec.ring.groups.len() != m + 1 {
        return Err(usage_error(format!(
            "field `profile.ring.groups`: expected {} groups for m = {m}, got {}",
            m + 1,
            spec.ring.groups.len()
        )));
    }
    let groups: Vec<AbelianGroup> = spec.ring.groups.iter().map(GroupShape::build).collect();
    let mut products = BTreeMap::new();
    for p in &spec.ring.products {
        let table: Vec<Vec<Vec<BigInt>>> = p
            .table
            .iter()
            .map(|row| {
                row.iter()
                    .map(|cell| cell.iter().map(|v| v.0.clone()).collect())
                    .collect()
            })
            .collect();
        if products.insert((p.a, p.b), table).is_some() {
            return Err(usage_error(format!(
                "field `profile.ring.products`: duplicate pair ({}, {})",
                p.a, p.b
            )));
        }
    }
    let ring = RingProfile::new(m, groups, products, None)
        .map_err(|e| usage_error(format!("field `profile.ring`: {e}")))?;

    let mut profile = SpaceProfile::new(
        ring,
        ProfileFlags {
            simply_connected: spec.flags.simply_connected,
            w2_nonzero: spec.flags.w2_nonzero,
            h2_no_2torsion: spec.flags.h2_no_2torsion,
            h3_trivial: spec.flags.h3_trivial,
        },
    );
    for g in &spec.cohomology {
        let key = (g.degree, g.coefficients.into());
        if profile.cohomology.insert(key, g.group.build()).is_some() {
            return Err(usage_error(format!(
                "field `profile.cohomology`: duplicate entry for degree {} with {:?} coefficients",
                g.degree, g.coefficients
            )));
        }
    }

    let build_map = |spec: &MapSpec,
                     src: Option<AbelianGroup>,
                     dst: Option<AbelianGroup>,
                     what: &str|
     -> Result<IntMatrix, CliFailure> {
        let src = src.ok_or_else(|| {
            usage_error(format!(
                "field `profile.{what}`: source group at degree {} unknown",
                spec.degree
            ))
        })?;
        let dst = dst.ok_or_else(|| {
            usage_error(format!(
                "field `profile.{what}`: target group for degree {} unknown",
                spec.degree
            ))
        })?;
        let (rows, cols) = (dst.generator_count(), src.generator_count());
        if spec.matrix.len() != rows {
            return Err(usage_error(format!(
                "field `profile.{what}`: matrix at degree {} has {} rows, expected {rows}",
                spec.degree,
                spec.matrix.len()
            )));
        }
        let mut entries = Vec::with_capacity(rows * cols);
        for row in &spec.matrix {
            if row.len() != cols {
                return Err(usage_error(format!(
                    "field `profile.{what}`: matrix at degree {} has a row of length {}, expected {cols}",
                    spec.degree,
                    row.len()
                )));
            }
            entries.extend(row.iter().map(|v| v.0.clone()));
        }
        Ok(IntMatrix::new(rows, cols, entries))
    };

    for mspec in &spec.rho2 {
        let mat = build_map(
            mspec,
            profile.group(mspec.degree, CoeffSys::Integral),
            profile.group(mspec.degree, CoeffSys::Mod2),
            "rho2",
        )?;
        profile.rho2.insert(mspec.degree, mat);
    }
    for mspec in &spec.sq2 {
        let mat = build_map(
            mspec,
            profile.group(mspec.degree, CoeffSys::Mod2),
            profile.group(mspec.degree + 2, CoeffSys::Mod2),
            "sq2",
        )?;
        profile.sq2.insert(mspec.degree, mat);
    }
    for mspec in &spec.bockstein {
        let mat = build_map(
            mspec,
            profile.group(mspec.degree, CoeffSys::Mod2),
            profile.group(mspec.degree + 1, CoeffSys::Integral),
            "bockstein",
        )?;
        profile.bockstein.insert(mspec.degree, mat);
    }

    profile
        .validate()
        .map_err(|e| usage_error(format!("field `profile`: {e}")))?;
    Ok(profile)
}

fn build_bundle(problem: &ProblemFile, profile: &SpaceProfile) -> Result<ChernVector, CliFailure> {
    let m = problem.m;
    if problem.xi.len() != m {
        return Err(usage_error(format!(
            "field `xi`: expected {m} components c_1..c_{m}, got {}",
            problem.xi.len()
        )));
    }
    let mut components = Vec::with_capacity(m);
    for (i, comp) in problem.xi.iter().enumerate() {
        let coords: Vec<BigInt> = match (problem.base, comp) {
            (BaseKind::Cpm, ClassComponent::Scalar(v)) => vec![v.0.clone()],
            (BaseKind::Profile, ClassComponent::Vector(vs)) => {
                vs.iter().map(|v| v.0.clone()).collect()
            }
            (BaseKind::Cpm, ClassComponent::Vector(_)) => {
                return Err(usage_error(format!(
                    "field `xi[{i}]`: expected a plain integer coefficient over projective space"
                )))
            }
            (BaseKind::Profile, ClassComponent::Scalar(_)) => {
                return Err(usage_error(format!(
                    "field `xi[{i}]`: expected a coordinate vector over a declared profile"
                )))
            }
        };
        components.push(coords);
    }
    ChernVector::new(&profile.ring, m, components)
        .map_err(|e| usage_error(format!("field `xi`: {e}")))
}

fn build_lines(
    problem: &ProblemFile,
    profile: &SpaceProfile,
) -> Result<Vec<LineBundle>, CliFailure> {
    let mut lines = Vec::with_capacity(problem.lines.len());
    for (i, coords) in problem.lines.iter().enumerate() {
        let coords: Vec<BigInt> = coords.iter().map(|v| v.0.clone()).collect();
        let c1 = profile
            .ring
            .element(1, coords)
            .map_err(|e| usage_error(format!("field `lines[{i}]`: {e}")))?;
        lines.push(
            LineBundle::new(c1).map_err(|e| usage_error(format!("field `lines[{i}]`: {e}")))?,
        );
    }
    Ok(lines)
}

fn cpm_class_poly(problem: &ProblemFile) -> Result<TruncatedPoly, CliFailure> {
    let mut coeffs = vec![BigRational::from_integer(1.into())];
    for (i, comp) in problem.xi.iter().enumerate() {
        match comp {
            ClassComponent::Scalar(v) => coeffs.push(BigRational::from_integer(v.0.clone())),
            ClassComponent::Vector(_) => {
                return Err(usage_error(format!(
                    "field `xi[{i}]`: expected a plain integer"
                )))
            }
        }
    }
    TruncatedPoly::new(Modulus::Integers, problem.m, coeffs)
        .map_err(|e| usage_error(format!("field `xi`: {e}")))
}

fn run_decide(input: &PathBuf) -> CliResult {
    let problem = load_problem(input)?;
    match problem.mode {
        Mode::Schwarzenberger => {
            if problem.base != BaseKind::Cpm {
                return Err(usage_error(
                    "field `mode`: the integrality test runs over base \"cpm\" only",
                ));
            }
            let dto = schwarz_report(&problem)?;
            println!("{}", serde_json::to_string(&dto).expect("serializable"));
            Ok(if dto.passes {
                EXIT_SPLITS
            } else {
                EXIT_OBSTRUCTED
            })
        }
        Mode::Split | Mode::Span | Mode::PrimaryObstruction => {
            let profile = build_profile(&problem)?;
            let xi = build_bundle(&problem, &profile)?;
            let lines = match problem.mode {
                Mode::Span => {
                    if !problem.lines.is_empty() {
                        return Err(usage_error(
                            "field `lines`: span mode uses trivial lines; leave the list empty",
                        ));
                    }
                    vec![LineBundle::trivial(&profile.ring); problem.r]
                }
                _ => build_lines(&problem, &profile)?,
            };
            if lines.len() != problem.r {
                return Err(usage_error(format!(
                    "field `r`: {} does not match {} line bundles",
                    problem.r,
                    lines.len()
                )));
            }
            let split =
                SplitProblem::new(profile, xi, lines).map_err(|e| usage_error(e.to_string()))?;
            if problem.mode == Mode::PrimaryObstruction {
                let value = primary_obstruction(&split).map_err(|e| usage_error(e.to_string()))?;
                let dto = ObstructionDto {
                    degree_index: value.degree,
                    value: coords_to_strings(&value),
                    vanishes: value.is_zero(),
                };
                println!("{}", serde_json::to_string(&dto).expect("serializable"));
                return Ok(if dto.vanishes {
                    EXIT_SPLITS
                } else {
                    EXIT_OBSTRUCTED
                });
            }
            let verdict = decide(&split);
            let dto = VerdictDto::from_verdict(&verdict);
            println!("{}", serde_json::to_string(&dto).expect("serializable"));
            Ok(dto.exit_code())
        }
    }
}

fn schwarz_report(problem: &ProblemFile) -> Result<SchwarzDto, CliFailure> {
    let poly = cpm_class_poly(problem)?;
    let report = schwarzenberger_check(&poly, problem.m).map_err(|e| usage_error(e.to_string()))?;
    Ok(SchwarzDto {
        m: problem.m,
        passes: report.passes,
        first_failing_k: report.first_failure.as_ref().map(|(k, _)| *k),
        value: report
            .first_failure
            .as_ref()
            .map(|(_, v)| rational_to_string(v)),
    })
}

fn run_schwarz(input: &PathBuf) -> CliResult {
    let problem = load_problem(input)?;
    if problem.base != BaseKind::Cpm {
        return Err(usage_error(
            "the integrality test runs over base \"cpm\" only",
        ));
    }
    let dto = schwarz_report(&problem)?;
    println!("{}", serde_json::to_string(&dto).expect("serializable"));
    Ok(if dto.passes {
        EXIT_SPLITS
    } else {
        EXIT_OBSTRUCTED
    })
}

fn run_enumerate(
    m: usize,
    r: usize,
    bound: u32,
    line_bound: u32,
    format: OutputFormat,
) -> CliResult {
    let tuples =
        enumerate_split_chern(m, r, bound, line_bound).map_err(|e| usage_error(e.to_string()))?;
    match format {
        OutputFormat::Json => {
            for t in &tuples {
                let dto = EnumerateDto {
                    c: t.chern.iter().map(|v| v.to_string()).collect(),
                    lines: t.lines.iter().map(|v| v.to_string()).collect(),
                    residual: t.residual.iter().map(rational_to_string).collect(),
                };
                println!("{}", serde_json::to_string(&dto).expect("serializable"));
            }
        }
        OutputFormat::Csv => {
            let mut header: Vec<String> = (1..=m).map(|i| format!("c{i}")).collect();
            header.extend((1..=r).map(|i| format!("z{i}")));
            header.extend((1..=m.saturating_sub(r)).map(|i| format!("e{i}")));
            println!("{}", header.join(","));
            for t in &tuples {
                let mut row: Vec<String> = t.chern.iter().map(|v| v.to_string()).collect();
                row.extend(t.lines.iter().map(|v| v.to_string()));
                row.extend(t.residual.iter().map(rational_to_string));
                println!("{}", row.join(","));
            }
        }
    }
    Ok(0)
}

fn csv_quote(field: &str) -> String {
    if field.contains(',') || field.contains('"') || field.contains('\n') {
        format!("\"{}\"", field.replace('"', "\"\""))
    } else {
        field.to_string()
    }
}

fn run_tables(table: TableArg, m: Option<usize>, format: OutputFormat) -> CliResult {
    if let (TableArg::Pi, Some(m)) = (table, m) {
        let entry = pi_2m2(m).map_err(|e| usage_error(e.to_string()))?;
        #[derive(Serialize)]
        struct PiDto {
            m: usize,
            group: String,
            order: String,
            n: Option<String>,
        }
        let dto = PiDto {
            m,
            group: entry.group.to_string(),
            order: entry.order.to_string(),
            n: entry.n.map(|n| n.to_string()),
        };
        match format {
            OutputFormat::Json => {
                println!("{}", serde_json::to_string(&dto).expect("serializable"))
            }
            OutputFormat::Csv => {
                println!("m,group,order,n");
                println!(
                    "{},{},{},{}",
                    dto.m,
                    csv_quote(&dto.group),
                    dto.order,
                    dto.n.unwrap_or_default()
                );
            }
        }
        return Ok(0);
    }
    if m.is_some() {
        return Err(usage_error("--m applies to the `pi` table only"));
    }
    let rows = dump_table(table.into());
    match format {
        OutputFormat::Json => {
            for row in &rows {
                let obj: serde_json::Map<String, serde_json::Value> = row
                    .columns
                    .iter()
                    .map(|(k, v)| (k.clone(), serde_json::Value::String(v.clone())))
                    .collect();
                println!("{}", serde_json::Value::Object(obj));
            }
        }
        OutputFormat::Csv => {
            if let Some(first) = rows.first() {
                let header: Vec<String> = first.columns.iter().map(|(k, _)| csv_quote(k)).collect();
                println!("{}", header.join(","));
                for row in &rows {
                    let vals: Vec<String> = row.columns.iter().map(|(_, v)| csv_quote(v)).collect();
                    println!("{}", vals.join(","));
                }
            }
        }
    }
    Ok(0)
}

fn run_selftest() -> i32 {
    let report = crate::selftest::run();
    for check in &report.checks {
        if check.passed {
            println!("ok   {}", check.name);
        } else {
            println!("FAIL {}: {}", check.name, check.detail);
        }
    }
    let failed = report.checks.iter().filter(|c| !c.passed).count();
    if failed == 0 {
        println!("selftest: all {} checks passed", report.checks.len());
        0
    } else {
        println!(
            "selftest: {failed} of {} checks failed",
            report.checks.len()
        );
        1
    }
}
