//! Command-line front end: every library capability behind one binary with
//! deterministic, machine-readable output.
//!
//! Exit codes: 0 success, 1 failed checks, 2 usage or malformed input,
//! 3 violated mathematical hypothesis, 4 resource cap exceeded.
//!
//! JSON output shapes (one compact line per invocation):
//! - `enumerate`: `[label, ...]` where a label is a nested array like
//!   `[[2,1],[1]]`.
//! - `classify-params`: `{"sphericity":{"kind",...},"faithful","faithful_h",
//!   "classes","integral_difference"}`.
//! - `cfun`: `{"c","c_hat"}` with rendered scalars.
//! - `fakedeg`: `{"f","valuation","dim"}`.
//! - `char`: `[{"gamma","num","den"}, ...]`, one object per character term.
//! - `kgroup --op res|ind`: `{"rows","cols","entries":[[row,col,value],...]}`;
//!   `--op injectivity`: `{"injective","kernel"}`.
//! - `crystal --op operators`: `{"eps","phi","raised","lowered"}`;
//!   `--op graph`: `{"nodes","edges":[[from,to,residue],...]}`;
//!   `--op singular`: `[label, ...]`.
//! - `fock --op apply`: `[[label, coefficient], ...]`;
//!   `--op relations`: `{"checks","failure"}`; `--op singular-dim`: `{"dim"}`.
//! - `dmatrix`: `[{"block","rows","entries":[[row,col,entry],...]}, ...]`,
//!   one object per residue block.
//! - `radical`: `[{"delta","simple","layer","multiplicity"}, ...]`.
//! - `gram`: `{"labels","determinant"}`.
//! - `tableau`: `{"shape","cols"}`.
//! - `labels`: `{"cherednik_charge","cherednik_weights","cherednik_label",
//!   "shape","tableau"}`.
//! - `verify`: `[{"suite","checks":[{"name","passed","detail"},...]}, ...]`.

mod config;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num::{BigRational, Signed, Zero};
use serde::Serialize;

use cherednik::bridge::{self, TauShape};
use cherednik::canonical;
use cherednik::characters::{
    c_function, c_hat, chhat_delta, chsph_delta, dim_irrep, fake_degree, fd,
};
use cherednik::crystal;
use cherednik::fock::{self, FockOp, FockVector};
use cherednik::kgroup::{self, Injectivity, LabeledMatrix};
use cherednik::params::{
    h_of, integral_difference, is_faithful, is_faithful_h, is_spherical, param_classes, Params,
    Sphericity,
};
use cherednik::verify;
use cherednik::{Charge, Error, Multipartition, Result};

use config::{FileConfig, Session};
use render::{csv_text, int_list, json_line, qpoly, rat, vpoly};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Args)]
struct CommonArgs {
    /// Level (number of components).
    #[arg(short = 'l', long)]
    level: Option<usize>,

    /// Size (number of boxes).
    #[arg(short = 'n', long)]
    size: Option<u64>,

    /// Deformation parameter: `symbolic`, an integer, or a fraction `a/b`.
    #[arg(long)]
    kappa: Option<String>,

    /// Charge entries, comma separated (e.g. `-s -1,0`).
    #[arg(short = 's', long = "charge", allow_hyphen_values = true)]
    charge: Option<String>,

    /// Weighting entries, comma separated.
    #[arg(short = 'm', long = "weighting", allow_hyphen_values = true)]
    weighting: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum KgroupOp {
    /// Restriction matrix on size-n labels.
    Res,
    /// Induction matrix on size-n labels.
    Ind,
    /// Joint injectivity of restriction and the graded character.
    Injectivity,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CrystalCmdOp {
    /// Counts and raised/lowered labels of one residue.
    Operators,
    /// The crystal graph on labels of size at most n.
    Graph,
    /// Labels killed by every raising operator.
    Singular,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FockCmdOp {
    /// Apply one operator to a standard basis vector.
    Apply,
    /// Check the defining relations on a residue window.
    Relations,
    /// Dimension of the joint kernel of the raising operators.
    SingularDim,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OperatorKind {
    /// Raising operator (removes a box).
    E,
    /// Lowering operator (adds a box).
    F,
    /// Torus operator.
    K,
    /// Inverse torus operator.
    KInv,
}

#[derive(Debug, Parser)]
#[command(
    name = "cherednik",
    version,
    about = "Exact combinatorics of cyclotomic Cherednik category O"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// JSON file supplying default l, n, kappa, s, m (flags win).
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,

    /// Seed for the randomized verification suites.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Cap on the number of labels an enumeration may produce.
    #[arg(long, global = true)]
    max_enumeration: Option<usize>,

    /// Cap on the number of cells a matrix may allocate.
    #[arg(long, global = true)]
    max_matrix_cells: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List the size-n labels with l components in canonical order.
    Enumerate {
        #[command(flatten)]
        common: CommonArgs,
    },

    /// Sphericity, faithfulness, parameter classes, integral differences.
    ClassifyParams {
        #[command(flatten)]
        common: CommonArgs,

        /// Second charge for the integral-difference test.
        #[arg(long, allow_hyphen_values = true)]
        charge2: Option<String>,

        /// Second deformation parameter (defaults to `--kappa`).
        #[arg(long)]
        kappa2: Option<String>,
    },

    /// The c-function and shifted c-function of one label.
    Cfun {
        #[command(flatten)]
        common: CommonArgs,

        /// The label, e.g. `[[1],[1]]`.
        #[arg(long)]
        lambda: String,
    },

    /// Fake degree polynomial, valuation, and dimension of one label.
    Fakedeg {
        /// The label, e.g. `[[1],[1]]`.
        #[arg(long)]
        lambda: String,
    },

    /// Graded character of a standard module.
    Char {
        #[command(flatten)]
        common: CommonArgs,

        /// The label, e.g. `[[1],[1]]`.
        #[arg(long)]
        lambda: String,

        /// Use the spherical normalization instead of the hat one.
        #[arg(long)]
        spherical: bool,
    },

    /// Restriction/induction matrices and the joint injectivity test.
    Kgroup {
        #[command(flatten)]
        common: CommonArgs,

        #[arg(long, value_enum)]
        op: KgroupOp,
    },

    /// Crystal operators, the crystal graph, or the singular labels.
    Crystal {
        #[command(flatten)]
        common: CommonArgs,

        #[arg(long, value_enum)]
        op: CrystalCmdOp,

        /// The label (for `--op operators`).
        #[arg(long)]
        lambda: Option<String>,

        /// The residue (for `--op operators`).
        #[arg(long, allow_hyphen_values = true)]
        residue: Option<i64>,
    },

    /// Apply quantum operators, check relations, or count the joint kernel.
    Fock {
        #[command(flatten)]
        common: CommonArgs,

        #[arg(long, value_enum)]
        op: FockCmdOp,

        /// Which operator to apply (for `--op apply`).
        #[arg(long, value_enum)]
        operator: Option<OperatorKind>,

        /// The residue of the operator (for `--op apply`).
        #[arg(long, allow_hyphen_values = true)]
        residue: Option<i64>,

        /// The label to act on (for `--op apply`).
        #[arg(long)]
        lambda: Option<String>,

        /// Lower end of the residue window (for `--op relations`).
        #[arg(long, allow_hyphen_values = true)]
        lo: Option<i64>,

        /// Upper end of the residue window (for `--op relations`).
        #[arg(long, allow_hyphen_values = true)]
        hi: Option<i64>,
    },

    /// Decomposition matrix in the dual canonical basis, by residue block.
    Dmatrix {
        #[command(flatten)]
        common: CommonArgs,
    },

    /// Radical-filtration table derived from the decomposition matrix.
    Radical {
        #[command(flatten)]
        common: CommonArgs,
    },

    /// Gram determinant of the singular block, specialized at q.
    Gram {
        #[command(flatten)]
        common: CommonArgs,

        /// The specialization point, a nonzero rational.
        #[arg(long, allow_hyphen_values = true)]
        q: String,
    },

    /// Column-strict tableau of a label (or the ground state).
    Tableau {
        #[command(flatten)]
        common: CommonArgs,

        /// The label; omitted means the ground state.
        #[arg(long)]
        lambda: Option<String>,

        /// Column depth (defaults to the minimal admissible depth).
        #[arg(long, allow_hyphen_values = true)]
        depth: Option<i64>,
    },

    /// Transport one label across the parabolic comparison.
    Labels {
        #[command(flatten)]
        common: CommonArgs,

        /// The label, e.g. `[[1],[],[1]]`.
        #[arg(long)]
        lambda: String,
    },

    /// Run the seeded self-check suites.
    Verify {
        #[command(flatten)]
        common: CommonArgs,

        /// Suite name or `all`.
        #[arg(long, default_value = "all")]
        suite: String,

        /// Scale knob: the largest size the suites exercise.
        #[arg(long = "max-n", default_value_t = 3)]
        max_n: u64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse(_) => 2,
        Error::ResourceCap(_) => 4,
        _ => 3,
    }
}

fn session_for(cli: &Cli, common: &CommonArgs) -> Result<Session> {
    let file = match &cli.config {
        Some(path) => config::load(path)?,
        None => FileConfig::default(),
    };
    Session::merge(
        file,
        common.level,
        common.size,
        common.kappa.as_deref(),
        common.charge.as_deref(),
        common.weighting.as_deref(),
        cli.max_enumeration,
        cli.max_matrix_cells,
    )
}

fn parse_label(text: &str) -> Result<Multipartition> {
    text.parse()
}

fn run(cli: &Cli) -> Result<ExitCode> {
    let format = cli.format;
    match &cli.command {
        Command::Enumerate { common } => {
            let out = cmd_enumerate(&session_for(cli, common)?, format)?;
            print!("{out}");
            Ok(ExitCode::SUCCESS)
        }
        Command::ClassifyParams {
            common,
            charge2,
            kappa2,
        } => {
            let out = cmd_classify(
                &session_for(cli, common)?,
                charge2.as_deref(),
                kappa2.as_deref(),
                format,
            )?;
            print!("{out}");
            Ok(ExitCode::SUCCESS)
        }
        Command::Cfun { common, lambda } => {
            let out = cmd_cfun(&session_for(cli, common)?, lambda, format)?;
            print!("{out}");
            Ok(ExitCode::SUCCESS)
        }
        Command::Fakedeg { lambda } => {
            let out = cmd_fakedeg(lambda, format)?;
            print!("{out}");
            Ok(ExitCode::SUCCESS)
        }
        Command::Char {
            common,
            lambda,
            spherical,
        } => {
            let out = cmd_char(&session_for(cli, common)?, lambda, *spherical, format)?;
            print!("{out}");
            Ok(ExitCode::SUCCESS)
        }
        Command::Kgroup { common, op } => {
            let out = cmd_kgroup(&session_for(cli, common)?, *op, format)?;
            print!("{out}");
            Ok(ExitCode::SUCCESS)
        }
        Command::Crystal {
            common,
            op,
            lambda,
            residue,
        } => {
            let out = cmd_crystal(
                &session_for(cli, common)?,
                *op,
                lambda.as_deref(),
                *residue,
                format,
            )?;
            print!("{out}");
            Ok(ExitCode::SUCCESS)
        }
        Command::Fock {
            common,
            op,
            operator,
            residue,
            lambda,
            lo,
            hi,
        } => cmd_fock(
            &session_for(cli, common)?,
            *op,
            *operator,
            *residue,
            lambda.as_deref(),
            *lo,
            *hi,
            format,
        ),
        Command::Dmatrix { common } => {
            let out = cmd_dmatrix(&session_for(cli, common)?, format)?;
            print!("{out}");
            Ok(ExitCode::SUCCESS)
        }
        Command::Radical { common } => {
            let out = cmd_radical(&session_for(cli, common)?, format)?;
            print!("{out}");
            Ok(ExitCode::SUCCESS)
        }
        Command::Gram { common, q } => {
            let out = cmd_gram(&session_for(cli, common)?, q, format)?;
            print!("{out}");
            Ok(ExitCode::SUCCESS)
        }
        Command::Tableau {
            common,
            lambda,
            depth,
        } => {
            let out = cmd_tableau(&session_for(cli, common)?, lambda.as_deref(), *depth, format)?;
            print!("{out}");
            Ok(ExitCode::SUCCESS)
        }
        Command::Labels { common, lambda } => {
            let out = cmd_labels(&session_for(cli, common)?, lambda, format)?;
            print!("{out}");
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            common,
            suite,
            max_n,
        } => cmd_verify(&session_for(cli, common)?, suite, *max_n, cli.seed, format),
    }
}

fn no_csv(command: &str) -> Error {
    Error::Parse(format!("csv output is not available for {command}"))
}

// --------------------------------------------------------------- enumerate

fn cmd_enumerate(session: &Session, format: Format) -> Result<String> {
    let l = session.level()?;
    let n = session.size()?;
    let labels = Multipartition::enumerate(l, n, &session.caps)?;
    match format {
        Format::Text => Ok(labels.iter().map(|m| format!("{m}\n")).collect()),
        Format::Json => json_line(&labels),
        Format::Csv => {
            let rows: Vec<Vec<String>> = labels.iter().map(|m| vec![m.to_string()]).collect();
            csv_text(&["label"], &rows)
        }
    }
}

// ---------------------------------------------------------- classify-params

#[derive(Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
enum SphericityOut {
    Spherical,
    AsphericalRatio { a: i64, b: i64 },
    AsphericalWall { u: i64, k: i64, m: i64, k_hat: i64 },
}

impl SphericityOut {
    fn text(&self) -> String {
        match self {
            SphericityOut::Spherical => "spherical".into(),
            SphericityOut::AsphericalRatio { a, b } => format!("aspherical ratio {a}/{b}"),
            SphericityOut::AsphericalWall { u, k, m, .. } => {
                format!("aspherical u={u} k={k} m={m}")
            }
        }
    }
}

#[derive(Serialize)]
struct ClassifyOut {
    sphericity: SphericityOut,
    faithful: bool,
    faithful_h: bool,
    classes: Option<Vec<Vec<usize>>>,
    integral_difference: Option<bool>,
}

fn cmd_classify(
    session: &Session,
    charge2: Option<&str>,
    kappa2: Option<&str>,
    format: Format,
) -> Result<String> {
    let p = session.params_with_size(None)?;
    let sphericity = match is_spherical(&p)? {
        Sphericity::Spherical => SphericityOut::Spherical,
        Sphericity::AsphericalRatio { a, b } => SphericityOut::AsphericalRatio { a, b },
        Sphericity::AsphericalWall { u, k, m, k_hat } => {
            SphericityOut::AsphericalWall { u, k, m, k_hat }
        }
    };
    let faithful = is_faithful(&p);
    let faithful_h = is_faithful_h(&h_of(&p))?;
    let classes = match (&p.m, p.kappa.is_symbolic()) {
        (Some(m), true) => {
            let pairs: Vec<(BigRational, BigRational)> = p
                .s
                .as_slice()
                .iter()
                .zip(m.iter())
                .map(|(&a, &b)| {
                    (
                        BigRational::from_integer(a.into()),
                        BigRational::from_integer(b.into()),
                    )
                })
                .collect();
            Some(param_classes(&p.kappa, &pairs)?)
        }
        _ => None,
    };
    let integral_difference = match (charge2, kappa2) {
        (None, None) => None,
        (s2, k2) => {
            let s2 = match s2 {
                Some(text) => Charge::new(config::parse_int_list(text, "charge")?)?,
                None => p.s.clone(),
            };
            let k2 = match k2 {
                Some(text) => config::parse_kappa(text)?,
                None => p.kappa.clone(),
            };
            let q = Params::new(p.n, k2, s2, None)?;
            Some(integral_difference(&p, &q)?)
        }
    };
    let out = ClassifyOut {
        sphericity,
        faithful,
        faithful_h,
        classes,
        integral_difference,
    };
    match format {
        Format::Json => json_line(&out),
        Format::Csv => Err(no_csv("classify-params")),
        Format::Text => {
            let mut text = format!(
                "{}\nfaithful {}\nfaithful-h {}\n",
                out.sphericity.text(),
                out.faithful,
                out.faithful_h
            );
            if let Some(classes) = &out.classes {
                let body: Vec<String> = classes
                    .iter()
                    .map(|c| {
                        format!(
                            "{{{}}}",
                            c.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(",")
                        )
                    })
                    .collect();
                text.push_str(&format!("classes {}\n", body.join("")));
            }
            if let Some(d) = out.integral_difference {
                text.push_str(&format!("integral-difference {d}\n"));
            }
            Ok(text)
        }
    }
}

// --------------------------------------------------------------------- cfun

#[derive(Serialize)]
struct CfunOut {
    c: String,
    c_hat: String,
}

fn cmd_cfun(session: &Session, lambda: &str, format: Format) -> Result<String> {
    let lambda = parse_label(lambda)?;
    let p = session.params_with_size(Some(lambda.size()))?;
    let out = CfunOut {
        c: c_function(&lambda, &p)?.render(),
        c_hat: c_hat(&lambda, &p)?.render(),
    };
    match format {
        Format::Json => json_line(&out),
        Format::Csv => Err(no_csv("cfun")),
        Format::Text => Ok(format!("c {}\nc-hat {}\n", out.c, out.c_hat)),
    }
}

// ------------------------------------------------------------------ fakedeg

#[derive(Serialize)]
struct FakedegOut {
    f: String,
    valuation: u64,
    dim: String,
}

fn cmd_fakedeg(lambda: &str, format: Format) -> Result<String> {
    let lambda = parse_label(lambda)?;
    let out = FakedegOut {
        f: qpoly(&fake_degree(&lambda)),
        valuation: fd(&lambda),
        dim: dim_irrep(&lambda).to_string(),
    };
    match format {
        Format::Json => json_line(&out),
        Format::Csv => Err(no_csv("fakedeg")),
        Format::Text => Ok(format!(
            "f {}\nvaluation {}\ndim {}\n",
            out.f, out.valuation, out.dim
        )),
    }
}

// --------------------------------------------------------------------- char

fn cmd_char(session: &Session, lambda: &str, spherical: bool, format: Format) -> Result<String> {
    let lambda = parse_label(lambda)?;
    let p = session.params_with_size(Some(lambda.size()))?;
    let ch = if spherical {
        chsph_delta(&lambda, &p)?
    } else {
        chhat_delta(&lambda, &p)?
    };
    match format {
        Format::Json => json_line(&ch),
        Format::Csv => {
            let rows: Vec<Vec<String>> = ch
                .terms()
                .iter()
                .map(|t| {
                    vec![
                        t.gamma.render(),
                        qpoly(&t.num),
                        t.den
                            .iter()
                            .map(|d| d.to_string())
                            .collect::<Vec<_>>()
                            .join(" "),
                    ]
                })
                .collect();
            csv_text(&["gamma", "num", "den"], &rows)
        }
        Format::Text => {
            let mut text = String::new();
            for t in ch.terms() {
                let den: Vec<String> = t.den.iter().map(|d| d.to_string()).collect();
                text.push_str(&format!(
                    "gamma={} num={} den={}\n",
                    t.gamma.render(),
                    qpoly(&t.num),
                    den.join(",")
                ));
            }
            Ok(text)
        }
    }
}

// ------------------------------------------------------------------- kgroup

#[derive(Serialize)]
struct MatrixOut<'a> {
    rows: &'a [Multipartition],
    cols: &'a [Multipartition],
    entries: Vec<(usize, usize, String)>,
}

fn labeled_matrix_out(m: &LabeledMatrix, format: Format) -> Result<String> {
    let mut entries: Vec<(usize, usize, String)> = Vec::new();
    for j in 0..m.col_labels.len() {
        for i in 0..m.row_labels.len() {
            let v = m.matrix.get(i, j);
            if !v.is_zero() {
                entries.push((i, j, rat(v)));
            }
        }
    }
    match format {
        Format::Json => json_line(&MatrixOut {
            rows: &m.row_labels,
            cols: &m.col_labels,
            entries,
        }),
        Format::Csv => {
            let rows: Vec<Vec<String>> = entries
                .iter()
                .map(|(i, j, v)| {
                    vec![
                        m.row_labels[*i].to_string(),
                        m.col_labels[*j].to_string(),
                        v.clone(),
                    ]
                })
                .collect();
            csv_text(&["row", "col", "value"], &rows)
        }
        Format::Text => {
            let mut text = String::new();
            for (j, col) in m.col_labels.iter().enumerate() {
                let terms: Vec<String> = (0..m.row_labels.len())
                    .filter_map(|i| {
                        let v = m.matrix.get(i, j);
                        if v.is_zero() {
                            None
                        } else if v == &BigRational::from_integer(1.into()) {
                            Some(m.row_labels[i].to_string())
                        } else {
                            Some(format!("{}*{}", rat(v), m.row_labels[i]))
                        }
                    })
                    .collect();
                let rhs = if terms.is_empty() {
                    "0".to_string()
                } else {
                    terms.join(" + ")
                };
                text.push_str(&format!("{col}: {rhs}\n"));
            }
            Ok(text)
        }
    }
}

#[derive(Serialize)]
struct InjectivityOut {
    injective: bool,
    kernel: Option<Vec<(Multipartition, String)>>,
}

fn kvector_text(terms: &[(Multipartition, BigRational)]) -> String {
    let mut text = String::new();
    for (idx, (label, c)) in terms.iter().enumerate() {
        let mag = c.abs();
        let sign = if c < &BigRational::zero() { "-" } else { "+" };
        if idx == 0 {
            if sign == "-" {
                text.push_str("- ");
            }
        } else {
            text.push_str(&format!(" {sign} "));
        }
        if mag == BigRational::from_integer(1.into()) {
            text.push_str(&label.to_string());
        } else {
            text.push_str(&format!("{}*{}", rat(&mag), label));
        }
    }
    text
}

fn cmd_kgroup(session: &Session, op: KgroupOp, format: Format) -> Result<String> {
    match op {
        KgroupOp::Res => {
            let m = kgroup::res_matrix(session.size()?, session.level()?, &session.caps)?;
            labeled_matrix_out(&m, format)
        }
        KgroupOp::Ind => {
            let m = kgroup::ind_matrix(session.size()?, session.level()?, &session.caps)?;
            labeled_matrix_out(&m, format)
        }
        KgroupOp::Injectivity => {
            let p = session.params_with_size(None)?;
            let outcome = kgroup::joint_injectivity(&p, &session.caps)?;
            let terms: Option<Vec<(Multipartition, BigRational)>> = match &outcome {
                Injectivity::Injective => None,
                Injectivity::Kernel(v) => {
                    Some(v.iter().map(|(m, c)| (m.clone(), c.clone())).collect())
                }
            };
            match format {
                Format::Json => json_line(&InjectivityOut {
                    injective: terms.is_none(),
                    kernel: terms.as_ref().map(|ts| {
                        ts.iter().map(|(m, c)| (m.clone(), rat(c))).collect()
                    }),
                }),
                Format::Csv => Err(no_csv("kgroup --op injectivity")),
                Format::Text => match &terms {
                    None => Ok("injective\n".into()),
                    Some(ts) => Ok(format!("kernel {}\n", kvector_text(ts))),
                },
            }
        }
    }
}

// ------------------------------------------------------------------ crystal

#[derive(Serialize)]
struct CrystalDataOut {
    eps: usize,
    phi: usize,
    raised: Option<Multipartition>,
    lowered: Option<Multipartition>,
}

#[derive(Serialize)]
struct GraphOut<'a> {
    nodes: &'a [Multipartition],
    edges: &'a [(usize, usize, i64)],
}

fn cmd_crystal(
    session: &Session,
    op: CrystalCmdOp,
    lambda: Option<&str>,
    residue: Option<i64>,
    format: Format,
) -> Result<String> {
    let s = session.charge()?;
    match op {
        CrystalCmdOp::Operators => {
            let lambda = parse_label(lambda.ok_or_else(|| {
                Error::Parse("crystal --op operators needs --lambda".into())
            })?)?;
            let i = residue
                .ok_or_else(|| Error::Parse("crystal --op operators needs --residue".into()))?;
            let data = crystal::crystal(&lambda, s, i);
            let out = CrystalDataOut {
                eps: data.eps,
                phi: data.phi,
                raised: data.raised,
                lowered: data.lowered,
            };
            match format {
                Format::Json => json_line(&out),
                Format::Csv => Err(no_csv("crystal --op operators")),
                Format::Text => {
                    let show = |m: &Option<Multipartition>| match m {
                        Some(m) => m.to_string(),
                        None => "-".into(),
                    };
                    Ok(format!(
                        "eps {}\nphi {}\nraised {}\nlowered {}\n",
                        out.eps,
                        out.phi,
                        show(&out.raised),
                        show(&out.lowered)
                    ))
                }
            }
        }
        CrystalCmdOp::Graph => {
            let g = crystal::crystal_graph(s.level(), session.size()?, s, &session.caps)?;
            match format {
                Format::Json => json_line(&GraphOut {
                    nodes: &g.nodes,
                    edges: &g.edges,
                }),
                Format::Csv => {
                    let rows: Vec<Vec<String>> = g
                        .edges
                        .iter()
                        .map(|(a, b, i)| {
                            vec![
                                g.nodes[*a].to_string(),
                                g.nodes[*b].to_string(),
                                i.to_string(),
                            ]
                        })
                        .collect();
                    csv_text(&["from", "to", "residue"], &rows)
                }
                Format::Text => {
                    let mut text = String::new();
                    for (idx, node) in g.nodes.iter().enumerate() {
                        text.push_str(&format!("node {idx} {node}\n"));
                    }
                    for (a, b, i) in &g.edges {
                        text.push_str(&format!("edge {a} {b} {i}\n"));
                    }
                    Ok(text)
                }
            }
        }
        CrystalCmdOp::Singular => {
            let labels = Multipartition::enumerate(s.level(), session.size()?, &session.caps)?;
            let singular: Vec<&Multipartition> = labels
                .iter()
                .filter(|m| crystal::is_singular(m, s))
                .collect();
            match format {
                Format::Json => json_line(&singular),
                Format::Csv => {
                    let rows: Vec<Vec<String>> =
                        singular.iter().map(|m| vec![m.to_string()]).collect();
                    csv_text(&["label"], &rows)
                }
                Format::Text => Ok(singular.iter().map(|m| format!("{m}\n")).collect()),
            }
        }
    }
}

// --------------------------------------------------------------------- fock

#[derive(Serialize)]
struct RelationsOut {
    checks: usize,
    failure: Option<String>,
}

#[allow(clippy::too_many_arguments)]
fn cmd_fock(
    session: &Session,
    op: FockCmdOp,
    operator: Option<OperatorKind>,
    residue: Option<i64>,
    lambda: Option<&str>,
    lo: Option<i64>,
    hi: Option<i64>,
    format: Format,
) -> Result<ExitCode> {
    let s = session.charge()?;
    match op {
        FockCmdOp::Apply => {
            let kind = operator
                .ok_or_else(|| Error::Parse("fock --op apply needs --operator".into()))?;
            let i = residue
                .ok_or_else(|| Error::Parse("fock --op apply needs --residue".into()))?;
            let lambda = parse_label(
                lambda.ok_or_else(|| Error::Parse("fock --op apply needs --lambda".into()))?,
            )?;
            let x = FockVector::basis(s.clone(), lambda)?;
            let y = fock::apply(
                match kind {
                    OperatorKind::E => FockOp::E(i),
                    OperatorKind::F => FockOp::F(i),
                    OperatorKind::K => FockOp::K(i),
                    OperatorKind::KInv => FockOp::KInv(i),
                },
                &x,
            );
            let terms: Vec<(Multipartition, String)> = y
                .iter()
                .map(|(m, c)| (m.clone(), vpoly(c)))
                .collect();
            let out = match format {
                Format::Json => json_line(&terms)?,
                Format::Csv => {
                    let rows: Vec<Vec<String>> = terms
                        .iter()
                        .map(|(m, c)| vec![m.to_string(), c.clone()])
                        .collect();
                    csv_text(&["label", "coefficient"], &rows)?
                }
                Format::Text => {
                    if terms.is_empty() {
                        "0\n".to_string()
                    } else {
                        terms
                            .iter()
                            .map(|(m, c)| format!("{m}: {c}\n"))
                            .collect()
                    }
                }
            };
            print!("{out}");
            Ok(ExitCode::SUCCESS)
        }
        FockCmdOp::Relations => {
            let n = session.size()?;
            let lo = lo.unwrap_or_else(|| {
                s.as_slice().iter().min().copied().unwrap_or(0) - n as i64
            });
            let hi = hi.unwrap_or_else(|| {
                s.as_slice().iter().max().copied().unwrap_or(0) + n as i64
            });
            let report = fock::verify_relations(s, n, lo, hi, &session.caps)?;
            let out = RelationsOut {
                checks: report.checks,
                failure: report.failure,
            };
            let passed = out.failure.is_none();
            let text = match format {
                Format::Json => json_line(&out)?,
                Format::Csv => return Err(no_csv("fock --op relations")),
                Format::Text => match &out.failure {
                    None => format!("checks {}\nok\n", out.checks),
                    Some(msg) => format!("checks {}\nfailure {}\n", out.checks, msg),
                },
            };
            print!("{text}");
            Ok(if passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            })
        }
        FockCmdOp::SingularDim => {
            let dim = fock::singular_space_dim(s, session.size()?, &session.caps)?;
            let text = match format {
                Format::Json => json_line(&serde_json::json!({ "dim": dim }))?,
                Format::Csv => return Err(no_csv("fock --op singular-dim")),
                Format::Text => format!("{dim}\n"),
            };
            print!("{text}");
            Ok(ExitCode::SUCCESS)
        }
    }
}

// ------------------------------------------------------------------ dmatrix

fn cmd_dmatrix(session: &Session, format: Format) -> Result<String> {
    let s = session.charge()?;
    let d = canonical::d_matrix(s, session.size()?, &session.caps)?;
    match format {
        Format::Json => json_line(&d),
        Format::Csv => {
            let mut rows: Vec<Vec<String>> = Vec::new();
            for (b, block) in d.blocks().iter().enumerate() {
                for &col in block {
                    for &row in block {
                        let entry = d.entry(row, col);
                        if !entry.is_zero() {
                            rows.push(vec![
                                b.to_string(),
                                d.labels()[row].to_string(),
                                d.labels()[col].to_string(),
                                vpoly(&entry),
                            ]);
                        }
                    }
                }
            }
            csv_text(&["block", "row", "col", "entry"], &rows)
        }
        Format::Text => {
            let mut text = String::new();
            for block in d.blocks() {
                let names: Vec<String> =
                    block.iter().map(|&i| d.labels()[i].to_string()).collect();
                text.push_str(&format!("block {}\n", names.join(" ")));
                for &col in &block {
                    for &row in &block {
                        let entry = d.entry(row, col);
                        if !entry.is_zero() {
                            text.push_str(&format!(
                                "entry {} {} {}\n",
                                d.labels()[row],
                                d.labels()[col],
                                vpoly(&entry)
                            ));
                        }
                    }
                }
            }
            Ok(text)
        }
    }
}

// ------------------------------------------------------------------ radical

#[derive(Serialize)]
struct RadicalOut {
    delta: Multipartition,
    simple: Multipartition,
    layer: i64,
    multiplicity: String,
}

fn cmd_radical(session: &Session, format: Format) -> Result<String> {
    let s = session.charge()?;
    let table = canonical::radical_table(s, session.size()?, &session.caps)?;
    let out: Vec<RadicalOut> = table
        .into_iter()
        .map(|e| RadicalOut {
            delta: e.delta_label,
            simple: e.simple_label,
            layer: e.layer,
            multiplicity: rat(&e.multiplicity),
        })
        .collect();
    match format {
        Format::Json => json_line(&out),
        Format::Csv => {
            let rows: Vec<Vec<String>> = out
                .iter()
                .map(|e| {
                    vec![
                        e.delta.to_string(),
                        e.simple.to_string(),
                        e.layer.to_string(),
                        e.multiplicity.clone(),
                    ]
                })
                .collect();
            csv_text(&["delta", "simple", "layer", "multiplicity"], &rows)
        }
        Format::Text => Ok(out
            .iter()
            .map(|e| {
                format!(
                    "delta {} simple {} layer {} mult {}\n",
                    e.delta, e.simple, e.layer, e.multiplicity
                )
            })
            .collect()),
    }
}

// --------------------------------------------------------------------- gram

#[derive(Serialize)]
struct GramOut {
    labels: Vec<Multipartition>,
    determinant: String,
}

fn cmd_gram(session: &Session, q: &str, format: Format) -> Result<String> {
    let s = session.charge()?;
    let n = session.size()?;
    let q: BigRational = q
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("q must be a rational, got `{q}`")))?;
    let (labels, _) = canonical::singular_gram(s, n, &session.caps)?;
    let det = canonical::gram_singular(s, n, &q, &session.caps)?;
    let out = GramOut {
        labels,
        determinant: rat(&det),
    };
    match format {
        Format::Json => json_line(&out),
        Format::Csv => Err(no_csv("gram")),
        Format::Text => {
            let names = if out.labels.is_empty() {
                "-".to_string()
            } else {
                out.labels
                    .iter()
                    .map(|m| m.to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            };
            Ok(format!("labels {}\ndet {}\n", names, out.determinant))
        }
    }
}

// ------------------------------------------------------------------ tableau

fn tableau_text(tab: &bridge::Tableau) -> String {
    let heights: Vec<i64> = tab
        .shape()
        .heights()
        .iter()
        .map(|&h| h as i64)
        .collect();
    let mut text = format!("shape {}\n", int_list(&heights));
    for col in tab.columns() {
        text.push_str(&format!("col {}\n", int_list(col)));
    }
    text.push_str(&format!("weight {}\n", int_list(&tab.weight_tau())));
    text
}

fn cmd_tableau(
    session: &Session,
    lambda: Option<&str>,
    depth: Option<i64>,
    format: Format,
) -> Result<String> {
    let s = session.charge()?;
    let lambda = match lambda {
        Some(text) => Some(parse_label(text)?),
        None => None,
    };
    let n = lambda
        .as_ref()
        .map(|m| m.size())
        .or(session.n)
        .unwrap_or(0);
    let depth = depth.unwrap_or_else(|| {
        s.get(1) - s.get(s.level()) + (n.max(1)) as i64
    });
    let shape = TauShape::new(s, depth)?;
    let tab = match &lambda {
        Some(m) => bridge::tableau_of(m, &shape)?,
        None => bridge::ground_state(&shape),
    };
    match format {
        Format::Json => json_line(&tab),
        Format::Csv => Err(no_csv("tableau")),
        Format::Text => Ok(tableau_text(&tab)),
    }
}

// ------------------------------------------------------------------- labels

#[derive(Serialize)]
struct LabelsOut<'a> {
    cherednik_charge: &'a Charge,
    cherednik_weights: &'a [i64],
    cherednik_label: &'a Multipartition,
    shape: &'a [u64],
    tableau: &'a bridge::Tableau,
}

fn cmd_labels(session: &Session, lambda: &str, format: Format) -> Result<String> {
    let lambda = parse_label(lambda)?;
    let p = session.params_with_size(Some(lambda.size()))?;
    let record = bridge::upsilon_labels(&lambda, &p)?;
    match format {
        Format::Json => json_line(&LabelsOut {
            cherednik_charge: &record.cherednik_charge,
            cherednik_weights: &record.cherednik_weights,
            cherednik_label: &record.cherednik_label,
            shape: record.shape.heights(),
            tableau: &record.tableau,
        }),
        Format::Csv => Err(no_csv("labels")),
        Format::Text => {
            let mut text = format!(
                "charge {}\nweights {}\nlabel {}\n",
                int_list(record.cherednik_charge.as_slice()),
                int_list(&record.cherednik_weights),
                record.cherednik_label
            );
            text.push_str(&tableau_text(&record.tableau));
            Ok(text)
        }
    }
}

// ------------------------------------------------------------------- verify

#[derive(Serialize)]
struct CheckOut<'a> {
    name: &'a str,
    passed: bool,
    detail: &'a str,
}

#[derive(Serialize)]
struct SuiteOut<'a> {
    suite: &'a str,
    checks: Vec<CheckOut<'a>>,
}

fn cmd_verify(
    session: &Session,
    suite: &str,
    max_n: u64,
    seed: u64,
    format: Format,
) -> Result<ExitCode> {
    let reports = if suite == "all" {
        verify::run_all(max_n, seed, &session.caps)?
    } else {
        vec![verify::run_suite(suite, max_n, seed, &session.caps)?]
    };
    let failures: usize = reports
        .iter()
        .map(|r| r.checks.iter().filter(|c| !c.passed).count())
        .sum();
    let text = match format {
        Format::Json => {
            let out: Vec<SuiteOut> = reports
                .iter()
                .map(|r| SuiteOut {
                    suite: &r.suite,
                    checks: r
                        .checks
                        .iter()
                        .map(|c| CheckOut {
                            name: &c.name,
                            passed: c.passed,
                            detail: &c.detail,
                        })
                        .collect(),
                })
                .collect();
            json_line(&out)?
        }
        Format::Csv => {
            let mut rows: Vec<Vec<String>> = Vec::new();
            for r in &reports {
                for c in &r.checks {
                    rows.push(vec![
                        r.suite.clone(),
                        c.name.clone(),
                        if c.passed { "ok" } else { "fail" }.into(),
                        c.detail.clone(),
                    ]);
                }
            }
            csv_text(&["suite", "check", "status", "detail"], &rows)?
        }
        Format::Text => {
            let mut text = String::new();
            for r in &reports {
                for c in &r.checks {
                    let status = if c.passed { "ok" } else { "FAIL" };
                    text.push_str(&format!("{}/{}: {} ({})\n", r.suite, c.name, status, c.detail));
                }
            }
            if failures == 0 {
                text.push_str("all checks passed\n");
            } else {
                text.push_str(&format!("{failures} checks failed\n"));
            }
            text
        }
    };
    print!("{text}");
    Ok(if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}
