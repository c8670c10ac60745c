//! The `acd` command-line interface.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::code::{AdditiveCode, DEFAULT_CODEWORD_BOUND};
use crate::construct::{self, ConstructionReport};
use crate::duality::{
    count_skew, count_symmetric, enumerate_dualities, CharacterTable, ClassFilter, Duality, DualityClass,
    DEFAULT_ENUMERATION_BOUND, DEFAULT_TABLE_BOUND,
};
use crate::error::{Error, Result};
use crate::fpmat::general_linear_order;
use crate::gf::{FieldSpec, GFVector, GeneratorFile};
use crate::ortho::{self, all_self_orthogonal_elements, check_identities, Identity};
use crate::search::{self, SearchResult, TableMode, TableName, TableOptions, DEFAULT_BUDGET, DEFAULT_TRIALS};
use crate::FpMatrix;

/// Set to a non-empty value other than `0` to require explicit seeds.
pub const CI_ENV: &str = "ACD_CI";

#[derive(Debug, Parser)]
#[command(name = "acd", version, about = "Additive complementary dual codes under general dualities")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Enumerate, count, classify and tabulate dualities.
    #[command(subcommand)]
    Duality(DualityCmd),
    /// Inspect an additive code under a duality.
    #[command(subcommand)]
    Code(CodeCmd),
    /// Build ACD codes from the explicit constructions.
    #[command(subcommand)]
    Construct(ConstructCmd),
    /// Search for ACD codes of largest minimum distance.
    #[command(subcommand)]
    Search(SearchCmd),
    /// Check the dual-code identities on random codes.
    VerifyIdentities(IdentityArgs),
}

/// `name:M1` or `file:PATH`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DualitySource {
    Name(String),
    File(PathBuf),
}

fn parse_source(s: &str) -> std::result::Result<DualitySource, String> {
    if let Some(name) = s.strip_prefix("name:") {
        Ok(DualitySource::Name(name.to_string()))
    } else if let Some(path) = s.strip_prefix("file:") {
        Ok(DualitySource::File(PathBuf::from(path)))
    } else {
        Err("expected name:NAME or file:PATH".into())
    }
}

impl DualitySource {
    pub fn load(&self) -> Result<Duality> {
        match self {
            DualitySource::Name(n) => Duality::named(n),
            DualitySource::File(p) => Duality::parse_file(&read(p)?),
        }
    }
}

#[derive(Debug, Args)]
pub struct FieldArgs {
    /// Characteristic.
    #[arg(long)]
    pub p: u64,
    /// Extension degree.
    #[arg(long)]
    pub e: usize,
}

#[derive(Debug, Args)]
pub struct DualityArg {
    /// name:M1|M2|D1|D2|A4 or file:PATH.
    #[arg(long, value_parser = parse_source)]
    pub duality: DualitySource,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ClassArg {
    All,
    Symmetric,
    Skew,
    Other,
    /// Every K with K = K^T, including zero-diagonal ones over F_2.
    SymmetricMatrix,
}

impl From<ClassArg> for ClassFilter {
    fn from(c: ClassArg) -> Self {
        match c {
            ClassArg::All => ClassFilter::All,
            ClassArg::Symmetric => ClassFilter::Class(DualityClass::Symmetric),
            ClassArg::Skew => ClassFilter::Class(DualityClass::SkewSymmetric),
            ClassArg::Other => ClassFilter::Class(DualityClass::OtherNonSymmetric),
            ClassArg::SymmetricMatrix => ClassFilter::SymmetricMatrix,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum DualityCmd {
    /// List every duality of a field.
    List {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, value_enum, default_value_t = ClassArg::All)]
        class: ClassArg,
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_BOUND, value_parser = clap::value_parser!(u64).range(1..))]
        bound: u64,
    },
    /// Count dualities by class, by enumeration and by formula.
    Count {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_BOUND, value_parser = clap::value_parser!(u64).range(1..))]
        bound: u64,
    },
    /// Classify one duality.
    Classify {
        #[command(flatten)]
        duality: DualityArg,
    },
    /// Print the character table of a duality.
    Table {
        #[command(flatten)]
        duality: DualityArg,
        #[arg(long, default_value_t = DEFAULT_TABLE_BOUND, value_parser = clap::value_parser!(u64).range(1..))]
        bound: u64,
    },
    /// Check whether a character table comes from a duality.
    ValidateTable {
        #[command(flatten)]
        field: FieldArgs,
        /// Table file in the format printed by `duality table`.
        #[arg(long)]
        table: PathBuf,
    },
}

#[derive(Debug, Subcommand)]
pub enum CodeCmd {
    /// Dual dimension, Gram matrix and ACD / self-orthogonal / self-dual verdicts.
    Check {
        #[command(flatten)]
        duality: DualityArg,
        /// Generator file.
        #[arg(long)]
        gen: PathBuf,
    },
    /// Print the dual code.
    Dual {
        #[command(flatten)]
        duality: DualityArg,
        #[arg(long)]
        gen: PathBuf,
        /// Dualize with respect to the transposed duality.
        #[arg(long)]
        transpose: bool,
    },
    /// Minimum distance by codeword enumeration.
    Mindist {
        #[arg(long)]
        gen: PathBuf,
        #[arg(long, default_value_t = DEFAULT_CODEWORD_BOUND, value_parser = clap::value_parser!(u64).range(1..))]
        bound: u64,
    },
}

#[derive(Debug, Args)]
pub struct ConstructOut {
    /// Directory for the generator file.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum ConstructCmd {
    /// Length-one ACD code.
    Length1 {
        #[command(flatten)]
        duality: DualityArg,
        #[command(flatten)]
        out: ConstructOut,
    },
    /// Rows with a common nonzero pairwise exponent.
    Acd1 {
        #[command(flatten)]
        duality: DualityArg,
        #[arg(long)]
        gen: PathBuf,
        #[command(flatten)]
        out: ConstructOut,
    },
    /// Rows in orthogonal nonorthogonal pairs.
    Acd2 {
        #[command(flatten)]
        duality: DualityArg,
        #[arg(long)]
        gen: PathBuf,
        #[command(flatten)]
        out: ConstructOut,
    },
    /// Rank 2s, distance floor(n/s) block construction.
    Bound {
        #[command(flatten)]
        duality: DualityArg,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        s: usize,
        #[command(flatten)]
        out: ConstructOut,
    },
    /// Rank 2n-2, distance 2.
    N2n2 {
        #[command(flatten)]
        duality: DualityArg,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        out: ConstructOut,
    },
    /// Quaternary codes of rank 1, 2 or 2n-1.
    F4 {
        #[command(flatten)]
        duality: DualityArg,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        out: ConstructOut,
    },
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    #[command(flatten)]
    pub duality: DualityArg,
    /// Optional check that the duality is over this characteristic.
    #[arg(long)]
    pub p: Option<u64>,
    /// Optional check of the extension degree.
    #[arg(long)]
    pub e: Option<usize>,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub k: usize,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    pub jobs: u64,
    /// Directory for witness generator files.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum SearchCmd {
    /// Visit every rank-k subspace.
    Exhaustive {
        #[command(flatten)]
        args: SearchArgs,
        #[arg(long, default_value_t = DEFAULT_BUDGET, value_parser = clap::value_parser!(u64).range(1..))]
        budget: u64,
    },
    /// Sample random rank-k codes.
    Random {
        #[command(flatten)]
        args: SearchArgs,
        #[arg(long, default_value_t = DEFAULT_TRIALS, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Recompute a reference table and compare cell by cell.
    Table {
        /// table1 or table2.
        #[arg(long)]
        name: String,
        #[arg(long, default_value_t = 1)]
        n_min: usize,
        #[arg(long)]
        n_max: Option<usize>,
        /// exhaustive or mixed.
        #[arg(long, default_value = "exhaustive")]
        mode: String,
        #[arg(long, default_value_t = DEFAULT_BUDGET, value_parser = clap::value_parser!(u64).range(1..))]
        budget: u64,
        #[arg(long, default_value_t = DEFAULT_TRIALS, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
        jobs: u64,
        /// Also compute every cell under the transposed dualities.
        #[arg(long)]
        with_transpose: bool,
        /// Directory for witness generator files.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
pub struct IdentityArgs {
    #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
    pub samples: u64,
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_n: u64,
    #[arg(long)]
    pub seed: Option<u64>,
}

/// A rendered command result.
struct Outcome {
    text: String,
    json: Value,
    ok: bool,
}

impl Outcome {
    fn ok(text: String, json: Value) -> Self {
        Outcome { text, json, ok: true }
    }
}

/// Parses `args` and runs the command. Returns the process exit code:
/// 0 when everything passed, 1 when some check failed, 2 on input errors.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{rendered}");
            } else {
                let _ = write!(err, "{rendered}");
            }
            return if code == 0 { 0 } else { 2 };
        }
    };
    match execute(&cli) {
        Ok(outcome) => {
            let written = match cli.format {
                Format::Text => write!(out, "{}", outcome.text),
                Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&outcome.json).expect("valid json")),
            };
            if written.is_err() {
                return 2;
            }
            if outcome.ok {
                0
            } else {
                1
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn ci_mode() -> bool {
    std::env::var(CI_ENV).map(|v| !v.is_empty() && v != "0").unwrap_or(false)
}

fn seed_or_default(seed: Option<u64>) -> Result<u64> {
    match seed {
        Some(s) => Ok(s),
        None if ci_mode() => Err(Error::InvalidParameter(format!("--seed is required when {CI_ENV} is set"))),
        None => Ok(0),
    }
}

fn load_code(path: &Path) -> Result<AdditiveCode> {
    AdditiveCode::from_generator_file(&GeneratorFile::parse(&read(path)?)?)
}

fn load_rows(path: &Path, d: &Duality) -> Result<Vec<GFVector>> {
    let file = GeneratorFile::parse(&read(path)?)?;
    if file.spec != d.spec() {
        return Err(Error::SpecMismatch);
    }
    Ok(file.rows)
}

fn matrix_json(m: &FpMatrix) -> Value {
    json!(m.iter_rows().map(|r| r.to_vec()).collect::<Vec<_>>())
}

fn matrix_text(m: &FpMatrix) -> String {
    let mut s = String::new();
    for r in m.iter_rows() {
        let cells: Vec<String> = r.iter().map(u16::to_string).collect();
        s.push_str("  ");
        s.push_str(&cells.join(" "));
        s.push('\n');
    }
    s
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn file_stem(label: &str) -> String {
    label.chars().map(|c| if c.is_ascii_alphanumeric() { c } else { '_' }).collect()
}

fn write_generator(dir: &Path, name: &str, code: &AdditiveCode) -> Result<PathBuf> {
    std::fs::create_dir_all(dir)?;
    let path = dir.join(format!("{}.gen", file_stem(name)));
    std::fs::write(&path, code.to_generator_file().render())?;
    Ok(path)
}

fn execute(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Duality(cmd) => duality_cmd(cmd),
        Command::Code(cmd) => code_cmd(cmd),
        Command::Construct(cmd) => construct_cmd(cmd),
        Command::Search(cmd) => search_cmd(cmd),
        Command::VerifyIdentities(args) => verify_identities(args),
    }
}

fn duality_json(d: &Duality) -> Value {
    json!({
        "name": d.name(),
        "field": d.spec().to_string(),
        "matrix": matrix_json(d.matrix()),
        "class": d.class(),
    })
}

fn duality_cmd(cmd: &DualityCmd) -> Result<Outcome> {
    match cmd {
        DualityCmd::List { field, class, bound } => {
            let spec = FieldSpec::new(field.p, field.e)?;
            let all: Vec<Duality> = enumerate_dualities(spec, (*class).into(), *bound)?.collect();
            let mut text = String::new();
            for d in &all {
                text.push_str(&format!("{}  {}\n", d.matrix(), d.class()));
            }
            text.push_str(&format!("{} dualities\n", all.len()));
            let json = json!({
                "field": spec.to_string(),
                "count": all.len(),
                "dualities": all.iter().map(duality_json).collect::<Vec<_>>(),
            });
            Ok(Outcome::ok(text, json))
        }
        DualityCmd::Count { field, bound } => {
            let spec = FieldSpec::new(field.p, field.e)?;
            let prime = spec.prime();
            let total = general_linear_order(spec.e(), prime);
            let formula_sym = count_symmetric(prime, spec.e());
            let formula_skew = count_skew(prime, spec.e()).ok();
            let mut by_class: BTreeMap<&str, u64> = BTreeMap::new();
            let mut sym_matrix = 0u64;
            let enumerated = match enumerate_dualities(spec, ClassFilter::All, *bound) {
                Ok(iter) => {
                    for d in iter {
                        let key = match d.class() {
                            DualityClass::Symmetric => "symmetric",
                            DualityClass::SkewSymmetric => "skew_symmetric",
                            DualityClass::OtherNonSymmetric => "other",
                        };
                        *by_class.entry(key).or_default() += 1;
                        if *d.matrix() == d.matrix().transpose() {
                            sym_matrix += 1;
                        }
                    }
                    true
                }
                Err(Error::TooLarge { .. }) => false,
                Err(e) => return Err(e),
            };
            let get = |k: &str| by_class.get(k).copied().unwrap_or(0);
            let mut text = format!("field {spec}\ntotal {total}\n");
            let mut ok = true;
            if enumerated {
                text.push_str(&format!(
                    "symmetric {}\nskew {}\nother {}\n",
                    get("symmetric"),
                    get("skew_symmetric"),
                    get("other")
                ));
                // The closed form counts every symmetric K, which for p = 2
                // includes the zero-diagonal ones.
                ok &= formula_sym == sym_matrix.into();
                if let Some(f) = &formula_skew {
                    ok &= *f == get("skew_symmetric").into();
                }
            } else {
                text.push_str(&format!("enumeration skipped: more than {bound} matrices\n"));
            }
            text.push_str(&format!("formula symmetric matrices {formula_sym}\n"));
            if let Some(f) = &formula_skew {
                text.push_str(&format!("formula skew {f}\n"));
            }
            let enumerated_json = enumerated.then(|| {
                json!({
                    "symmetric": get("symmetric").to_string(),
                    "skew_symmetric": get("skew_symmetric").to_string(),
                    "other": get("other").to_string(),
                    "symmetric_matrices": sym_matrix.to_string(),
                })
            });
            let json = json!({
                "field": spec.to_string(),
                "total": total.to_string(),
                "enumerated": enumerated_json,
                "formula_symmetric_matrices": formula_sym.to_string(),
                "formula_skew_symmetric": formula_skew.map(|f| f.to_string()),
                "formulas_agree": ok,
            });
            Ok(Outcome { text, json, ok })
        }
        DualityCmd::Classify { duality } => {
            let d = duality.duality.load()?;
            let so = all_self_orthogonal_elements(&d);
            let text = format!(
                "duality {}\nfield {}\nmatrix {}\nclass {}\nall elements self-orthogonal: {}\n",
                d.label(),
                d.spec(),
                d.matrix(),
                d.class(),
                yes_no(so)
            );
            let mut json = duality_json(&d);
            json["self_orthogonal_elements"] = json!(so);
            Ok(Outcome::ok(text, json))
        }
        DualityCmd::Table { duality, bound } => {
            let d = duality.duality.load()?;
            let table = d.character_table(*bound)?;
            let rendered = table.render();
            let json = json!({
                "duality": d.label(),
                "field": d.spec().to_string(),
                "size": table.size(),
                "exponents": table.exponents().chunks(table.size()).map(|r| r.to_vec()).collect::<Vec<_>>(),
                "table": rendered,
            });
            Ok(Outcome::ok(rendered, json))
        }
        DualityCmd::ValidateTable { field, table } => {
            let spec = FieldSpec::new(field.p, field.e)?;
            let t = CharacterTable::parse(&read(table)?, spec)?;
            match t.validate() {
                Ok(d) => {
                    let text = format!("valid: yes\nmatrix {}\nclass {}\n", d.matrix(), d.class());
                    let json = json!({
                        "valid": true,
                        "matrix": matrix_json(d.matrix()),
                        "class": d.class(),
                        "diagnostics": Vec::<String>::new(),
                    });
                    Ok(Outcome::ok(text, json))
                }
                Err(diags) => {
                    let lines: Vec<String> = diags.iter().map(ToString::to_string).collect();
                    let mut text = format!("valid: no\n{} violations\n", lines.len());
                    for l in &lines {
                        text.push_str(l);
                        text.push('\n');
                    }
                    let json = json!({ "valid": false, "matrix": null, "class": null, "diagnostics": lines });
                    Ok(Outcome { text, json, ok: false })
                }
            }
        }
    }
}

fn code_cmd(cmd: &CodeCmd) -> Result<Outcome> {
    match cmd {
        CodeCmd::Check { duality, gen } => {
            let d = duality.duality.load()?;
            let c = load_code(gen)?;
            let dual = ortho::dual(&c, &d)?;
            let gram = ortho::gram(&c, &d)?;
            let verdict = ortho::check_acd(&c, &d, true)?;
            let so = ortho::is_self_orthogonal(&c, &d)?;
            let sd = ortho::is_self_dual(&c, &d)?;
            let dim = verdict.intersection_dim.unwrap_or_default();
            let text = format!(
                "duality {} ({})\nn {}\nk {}\ndual dimension {}\ngram\n{}ACD: {}\nself-orthogonal: {}\nself-dual: {}\nintersection dimension {}\n",
                d.label(),
                d.class(),
                c.n(),
                c.k(),
                dual.k(),
                matrix_text(&gram),
                yes_no(verdict.acd),
                yes_no(so),
                yes_no(sd),
                dim
            );
            let json = json!({
                "duality": d.label(),
                "class": d.class(),
                "field": c.spec().to_string(),
                "n": c.n(),
                "k": c.k(),
                "dual_dimension": dual.k(),
                "gram": matrix_json(&gram),
                "gram_rank": verdict.gram_rank,
                "acd": verdict.acd,
                "self_orthogonal": so,
                "self_dual": sd,
                "intersection_dimension": dim,
            });
            Ok(Outcome::ok(text, json))
        }
        CodeCmd::Dual { duality, gen, transpose } => {
            let d = duality.duality.load()?;
            let d = if *transpose { d.transpose() } else { d };
            let c = load_code(gen)?;
            let dual = ortho::dual(&c, &d)?;
            let rendered = dual.to_generator_file().render();
            let json = json!({
                "duality": d.label(),
                "n": dual.n(),
                "k": dual.k(),
                "generator": rendered,
            });
            Ok(Outcome::ok(rendered, json))
        }
        CodeCmd::Mindist { gen, bound } => {
            let c = load_code(gen)?;
            let dist = c.min_distance(*bound)?;
            let sb = c.singleton_bound();
            let text = format!("n {}\nk {}\ndistance {}\nsingleton bound {}\n", c.n(), c.k(), dist, sb);
            let json = json!({ "n": c.n(), "k": c.k(), "distance": dist, "singleton_bound": sb });
            Ok(Outcome::ok(text, json))
        }
    }
}

fn report_outcome(d: &Duality, r: &ConstructionReport, out: &ConstructOut, name: String) -> Result<Outcome> {
    let v = r.verify(d)?;
    let gen = r.code.to_generator_file().render();
    let fmt_opt = |x: Option<usize>| x.map_or_else(|| "-".to_string(), |v| v.to_string());
    let mut text = format!(
        "{gen}construction {}\nk {}\nclaimed distance {}\nmeasured distance {}\nclaimed ACD {}\nmeasured ACD {} (intersection dimension {})\nnon-trivial {}\nverified {}\n",
        r.source,
        v.rank,
        fmt_opt(v.claimed_distance),
        fmt_opt(v.distance),
        yes_no(v.claimed_acd),
        yes_no(v.acd),
        v.intersection_dim,
        yes_no(r.is_nontrivial()),
        yes_no(v.passed())
    );
    if let Some(dir) = &out.out {
        let path = write_generator(dir, &name, &r.code)?;
        text.push_str(&format!("wrote {}\n", path.display()));
    }
    let json = json!({
        "construction": r.source,
        "duality": d.label(),
        "n": r.code.n(),
        "k": r.code.k(),
        "generator": gen,
        "claimed_distance": v.claimed_distance,
        "claimed_acd": v.claimed_acd,
        "nontrivial": r.is_nontrivial(),
        "verification": v,
        "verified": v.passed(),
    });
    Ok(Outcome { text, json, ok: v.passed() })
}

fn construct_cmd(cmd: &ConstructCmd) -> Result<Outcome> {
    match cmd {
        ConstructCmd::Length1 { duality, out } => {
            let d = duality.duality.load()?;
            let r = construct::construct_length1(&d)?;
            report_outcome(&d, &r, out, format!("{}_length1", d.label()))
        }
        ConstructCmd::Acd1 { duality, gen, out } => {
            let d = duality.duality.load()?;
            let r = construct::construct_acd1(&d, &load_rows(gen, &d)?)?;
            report_outcome(&d, &r, out, format!("{}_acd1", d.label()))
        }
        ConstructCmd::Acd2 { duality, gen, out } => {
            let d = duality.duality.load()?;
            let r = construct::construct_acd2(&d, &load_rows(gen, &d)?)?;
            report_outcome(&d, &r, out, format!("{}_acd2", d.label()))
        }
        ConstructCmd::Bound { duality, n, s, out } => {
            let d = duality.duality.load()?;
            let r = construct::construct_bound(&d, *n, *s)?;
            report_outcome(&d, &r, out, format!("{}_bound_n{n}_s{s}", d.label()))
        }
        ConstructCmd::N2n2 { duality, n, out } => {
            let d = duality.duality.load()?;
            let r = construct::construct_n_2n2(&d, *n)?;
            report_outcome(&d, &r, out, format!("{}_n2n2_n{n}", d.label()))
        }
        ConstructCmd::F4 { duality, n, k, out } => {
            let d = duality.duality.load()?;
            let r = construct::construct_f4(&d, *n, *k)?;
            report_outcome(&d, &r, out, format!("{}_f4_n{n}_k{k}", d.label()))
        }
    }
}

fn load_search_duality(args: &SearchArgs) -> Result<Duality> {
    let d = args.duality.duality.load()?;
    if args.p.is_some_and(|p| p != d.spec().p() as u64) || args.e.is_some_and(|e| e != d.spec().e()) {
        return Err(Error::SpecMismatch);
    }
    Ok(d)
}

fn search_outcome(r: &SearchResult, out: &Option<PathBuf>) -> Result<Outcome> {
    let mut text = format!("{r}\n");
    text.push_str(&format!("duality {} over {}\n", r.duality, r.field));
    text.push_str(&format!("method {}\ncandidates {}\n", r.method, r.candidates_examined));
    if let Some(seed) = r.seed {
        text.push_str(&format!("seed {seed}\n"));
    }
    if let Some(w) = &r.witness {
        text.push_str("witness\n");
        text.push_str(&w.to_generator_file().render());
        if let Some(dir) = out {
            let path = write_generator(dir, &format!("{}_n{}_k{}", r.duality, r.n, r.k), w)?;
            text.push_str(&format!("wrote {}\n", path.display()));
        }
    }
    let json = serde_json::to_value(r).expect("serializable");
    Ok(Outcome::ok(text, json))
}

fn search_cmd(cmd: &SearchCmd) -> Result<Outcome> {
    match cmd {
        SearchCmd::Exhaustive { args, budget } => {
            let d = load_search_duality(args)?;
            let r = search::exhaustive_best(&d, args.n, args.k, *budget, args.jobs as usize)?;
            search_outcome(&r, &args.out)
        }
        SearchCmd::Random { args, trials, seed } => {
            let d = load_search_duality(args)?;
            let seed = seed_or_default(*seed)?;
            let r = search::random_best(&d, args.n, args.k, *trials, seed, args.jobs as usize)?;
            search_outcome(&r, &args.out)
        }
        SearchCmd::Table { name, n_min, n_max, mode, budget, trials, seed, jobs, with_transpose, out } => {
            let table = TableName::parse(name)?;
            let mode = TableMode::parse(mode)?;
            let n_max = n_max.unwrap_or(table.max_n());
            let seed = if mode == TableMode::Mixed { seed_or_default(*seed)? } else { seed.unwrap_or(0) };
            let mut opts = TableOptions::new(n_max, mode);
            opts.n_min = *n_min;
            opts.budget = *budget;
            opts.trials = *trials;
            opts.seed = seed;
            opts.jobs = *jobs as usize;
            if *with_transpose {
                let mut ds = table.dualities();
                for d in table.dualities() {
                    let t = d.transpose();
                    if !ds.contains(&t) {
                        ds.push(t);
                    }
                }
                opts.dualities = Some(ds);
            }
            let report = search::reproduce_table(table, &opts)?;
            let mut text = String::new();
            for cell in &report.cells {
                text.push_str(&format!("{cell}\n"));
                if let (Some(dir), Some(w)) = (out, cell.result.as_ref().and_then(|r| r.witness.as_ref())) {
                    write_generator(dir, &format!("{}_n{}_k{}", cell.duality, cell.n, cell.k), w)?;
                }
            }
            let counts: Vec<String> = [
                search::CellStatus::Pass,
                search::CellStatus::Warn,
                search::CellStatus::Fail,
                search::CellStatus::Skipped,
            ]
            .iter()
            .map(|s| format!("{} {}", report.count(*s), s))
            .collect();
            text.push_str(&format!("{}: {}\n", table.as_str(), counts.join(", ")));
            let json = serde_json::to_value(&report).expect("serializable");
            Ok(Outcome { text, json, ok: report.passed() })
        }
    }
}

fn verify_identities(args: &IdentityArgs) -> Result<Outcome> {
    let seed = seed_or_default(args.seed)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pool = Vec::new();
    for (p, e) in [(2, 2), (3, 2)] {
        pool.extend(enumerate_dualities(FieldSpec::new(p, e)?, ClassFilter::All, DEFAULT_ENUMERATION_BOUND)?);
    }
    let mut tally: BTreeMap<String, (Identity, u64, u64)> = BTreeMap::new();
    for _ in 0..args.samples {
        let d = &pool[rng.gen_range(0..pool.len())];
        let n = rng.gen_range(1..=args.max_n as usize);
        let width = d.spec().e() * n;
        let a = AdditiveCode::random(d.spec(), n, rng.gen_range(0..=width), &mut rng)?;
        let b = AdditiveCode::random(d.spec(), n, rng.gen_range(0..=width), &mut rng)?;
        for (id, ok) in check_identities(&a, &b, d)? {
            let entry = tally.entry(format!("{id}")).or_insert((id, 0, 0));
            entry.1 += 1;
            if !ok {
                entry.2 += 1;
            }
        }
    }
    let mut text = String::new();
    let mut rows = Vec::new();
    let mut ok = true;
    for (name, (id, checked, failures)) in &tally {
        ok &= *failures == 0;
        let status = if *failures == 0 { "PASS" } else { "FAIL" };
        text.push_str(&format!("{status} {name:<34} checked {checked:<6} failures {failures}  {}\n", id.description()));
        rows.push(json!({
            "identity": name,
            "description": id.description(),
            "checked": checked,
            "failures": failures,
        }));
    }
    let json = json!({ "samples": args.samples, "seed": seed, "identities": rows, "passed": ok });
    Ok(Outcome { text, json, ok })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("acd").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn duality_count_over_f9() {
        let (code, out, _) = run_args(&["duality", "count", "--p", "3", "--e", "2"]);
        assert_eq!(code, 0);
        assert!(out.contains("total 48"));
        assert!(out.contains("symmetric 18"));
        assert!(out.contains("skew 2"));
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(run_args(&["duality", "classify", "--duality", "M1"]).0, 2);
        assert_eq!(run_args(&["duality", "classify", "--duality", "name:Q7"]).0, 2);
        assert_eq!(
            run_args(&["search", "random", "--duality", "name:M1", "--n", "2", "--k", "2", "--trials", "0"]).0,
            2
        );
        assert_eq!(
            run_args(&["search", "exhaustive", "--duality", "name:M1", "--p", "2", "--n", "2", "--k", "2"]).0,
            2
        );
    }

    #[test]
    fn classify_json() {
        let (code, out, _) = run_args(&["--format", "json", "duality", "classify", "--duality", "name:A4"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["class"], "SkewSymmetric");
        assert_eq!(v["self_orthogonal_elements"], true);
    }

    #[test]
    fn help_exits_cleanly() {
        let (code, out, _) = run_args(&["--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("verify-identities"));
    }
}
