//! Command-line interface.
//!
//! Exit codes: 0 success, 1 I/O failure, 2 usage error, 3 parse or malformed
//! blob, 4 domain or capacity error.

use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::codec::{
    decode, encode, paper_size_bits, represent, size_report, Form, InnerPoly, Layout,
    SizeFormula, Representation, TableVocab,
};
use crate::cyclotomic::{
    c_poly, extract_cyclotomic_factors, height_records, is_cyclotomic_quick, phi_poly, QuickVerdict,
};
use crate::error::Error;
use crate::factorrep::{
    factor_full, parse_factorization, squarefree_decomposition, to_c_aware, to_plain,
    CAwareFactorization, Factor, PhiAwareFactorization,
};
use crate::numtheory;
use crate::poly::SparsePoly;

#[derive(Debug, Parser)]
#[command(name = "cyclorep", version, about = "Cyclotomic-aware polynomial representations")]
pub struct Cli {
    /// Width in bits of counts, degrees and indices
    #[arg(short = 'N', global = true, default_value_t = 16, value_parser = clap::value_parser!(u32).range(1..=63))]
    pub n_bits: u32,

    /// Width in bits of the coefficient-size field
    #[arg(short = 'K', global = true, default_value_t = 16, value_parser = clap::value_parser!(u32).range(1..=63))]
    pub k_bits: u32,

    /// Comma-separated output for tables and size reports
    #[arg(long, global = true)]
    pub csv: bool,

    /// Append degree, height and term count
    #[arg(long, global = true)]
    pub stats: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FactorVocab {
    Plain,
    Phi,
    C,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LayoutArg {
    Dense,
    Sparse,
    Plain,
    Phi,
    C,
}

impl From<LayoutArg> for Layout {
    fn from(v: LayoutArg) -> Self {
        match v {
            LayoutArg::Dense => Layout::Dense,
            LayoutArg::Sparse => Layout::Sparse,
            LayoutArg::Plain => Layout::Plain,
            LayoutArg::Phi => Layout::PhiAware,
            LayoutArg::C => Layout::CAware,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InnerArg {
    Dense,
    Sparse,
}

impl From<InnerArg> for InnerPoly {
    fn from(v: InnerArg) -> Self {
        match v {
            InnerArg::Dense => InnerPoly::Dense,
            InnerArg::Sparse => InnerPoly::Sparse,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the k-th cyclotomic polynomial
    Phi {
        #[arg(value_parser = clap::value_parser!(u64).range(1..))]
        k: u64,
    },
    /// Print x^n - 1
    C {
        #[arg(value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
    },
    /// Factor a polynomial in the chosen vocabulary
    Factor {
        /// Polynomial or factorization text, or @path to read it from a file
        #[arg(allow_hyphen_values = true)]
        input: String,
        #[arg(long, value_enum, default_value = "phi")]
        vocab: FactorVocab,
        /// Stop at the square-free decomposition (plain vocabulary only)
        #[arg(long)]
        squarefree_only: bool,
    },
    /// Decide whether every root is a root of unity
    Detect {
        #[arg(allow_hyphen_values = true)]
        input: String,
    },
    /// Report measured and closed-form sizes
    Size {
        #[arg(allow_hyphen_values = true)]
        input: String,
        #[arg(long, value_enum, default_value = "phi")]
        vocab: LayoutArg,
        #[arg(long, value_enum, default_value = "sparse")]
        inner: InnerArg,
        #[arg(long)]
        squarefree_only: bool,
    },
    /// Write a packed blob
    Encode {
        #[arg(allow_hyphen_values = true)]
        input: String,
        #[arg(short, long)]
        output: PathBuf,
        #[arg(long, value_enum, default_value = "phi")]
        vocab: LayoutArg,
        #[arg(long, value_enum, default_value = "sparse")]
        inner: InnerArg,
        #[arg(long)]
        squarefree_only: bool,
    },
    /// Print the value stored in a packed blob
    Decode { path: PathBuf },
    /// Reproduce a size or height table
    Table {
        #[arg(value_parser = clap::value_parser!(u8).range(1..=3))]
        which: u8,
        /// Largest index scanned by table 1
        #[arg(long)]
        max: Option<u64>,
        /// Exponent of x^n - 1 for table 2
        #[arg(long)]
        n: Option<u64>,
        #[arg(long)]
        p: Option<u64>,
        #[arg(long)]
        q: Option<u64>,
    },
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Io(std::io::Error),
    Lib(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        Self::Lib(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        Self::Io(e)
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::Usage(m) => write!(f, "usage error: {m}"),
            Self::Io(e) => write!(f, "I/O error: {e}"),
            Self::Lib(e) => e.fmt(f),
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Io(_) => 1,
            Self::Usage(_) => 2,
            Self::Lib(Error::Syntax { .. } | Error::Malformed(_)) => 3,
            Self::Lib(_) => 4,
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

/// One output row: a label and named columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableRow {
    pub label: String,
    pub columns: Vec<(String, String)>,
}

fn read_input(arg: &str) -> CliResult<String> {
    match arg.strip_prefix('@') {
        Some(path) => Ok(std::fs::read_to_string(path)?.trim().to_string()),
        None => Ok(arg.to_string()),
    }
}

/// Reads a polynomial literal, or factorization text, which is expanded.
pub fn parse_input(text: &str) -> crate::Result<SparsePoly> {
    if text.contains('(') || text.contains("Phi_") || text.contains("C_") {
        parse_factorization(text)?.expand()
    } else {
        text.parse()
    }
}

fn input_poly(arg: &str) -> CliResult<SparsePoly> {
    Ok(parse_input(&read_input(arg)?)?)
}

fn nonzero(f: &SparsePoly) -> CliResult<()> {
    if f.is_zero() {
        return Err(Error::domain("the zero polynomial has no factorization").into());
    }
    Ok(())
}

fn stats_lines(f: &SparsePoly) -> String {
    format!(
        "degree: {}\nheight: {}\nterms: {}\n",
        f.degree(),
        f.height(),
        f.term_count()
    )
}

/// Factorization text in the chosen vocabulary.
pub fn factor_text(f: &SparsePoly, vocab: FactorVocab, squarefree_only: bool) -> crate::Result<String> {
    if f.is_zero() {
        return Err(Error::domain("the zero polynomial has no factorization"));
    }
    Ok(match vocab {
        FactorVocab::Plain if squarefree_only => squarefree_decomposition(f)?.to_string(),
        FactorVocab::Plain => to_plain(&factor_full(f)?)?.to_string(),
        FactorVocab::Phi => factor_full(f)?.to_string(),
        FactorVocab::C => to_c_aware(&factor_full(f)?)?.to_string(),
    })
}

/// Verdict line: quick test first, exact extraction for the decomposition.
pub fn detect_line(f: &SparsePoly) -> crate::Result<(QuickVerdict, String)> {
    if f.is_zero() {
        return Err(Error::domain("detection on the zero polynomial"));
    }
    let quick = is_cyclotomic_quick(f)?;
    let ex = extract_cyclotomic_factors(f)?;
    let pure = ex.x_power == 0 && ex.cofactor.degree() == 0;
    match (quick, pure) {
        (QuickVerdict::Cyclotomic, false) | (QuickVerdict::NotCyclotomic, true) => {
            return Err(Error::InvariantViolation(format!(
                "quick test says {quick} for {f}"
            )))
        }
        _ => {}
    }
    let line = if pure {
        let sign = if ex.cofactor.leading_coeff() < 0.into() { "-1 * " } else { "" };
        format!("cyclotomic: {sign}{}", ex.decomposition)
    } else {
        format!("not-cyclotomic (cofactor: {})", ex.cofactor.shift(ex.x_power))
    };
    Ok((quick, line))
}

fn expanded_in(layout: Layout, f: &SparsePoly) -> Representation {
    let block = vec![Factor::new(1, f.clone())];
    match layout {
        Layout::Dense => Representation::Dense(f.to_dense()),
        Layout::PhiAware => Representation::PhiAware(PhiAwareFactorization {
            other_factors: block,
            ..Default::default()
        }),
        Layout::CAware => Representation::CAware(CAwareFactorization {
            other_factors: block,
            ..Default::default()
        }),
        _ => Representation::Sparse(f.clone()),
    }
}

fn table_layout(vocab: TableVocab) -> (Layout, InnerPoly) {
    match vocab {
        TableVocab::Dense => (Layout::Plain, InnerPoly::Dense),
        TableVocab::Sparse => (Layout::Plain, InnerPoly::Sparse),
        TableVocab::Phi => (Layout::PhiAware, InnerPoly::Sparse),
        TableVocab::C => (Layout::CAware, InnerPoly::Sparse),
    }
}

/// Measured size of `f` in one cell of a size table.
pub fn measured_cell(
    f: &SparsePoly,
    vocab: TableVocab,
    form: Form,
    n_bits: u32,
    k_bits: u32,
) -> crate::Result<u64> {
    let (layout, inner) = table_layout(vocab);
    let value = match form {
        Form::Expanded => expanded_in(
            match vocab {
                TableVocab::Dense => Layout::Dense,
                TableVocab::Sparse => Layout::Sparse,
                _ => layout,
            },
            f,
        ),
        Form::SquareFree => represent(f, layout, true)?,
        Form::Factored => represent(f, layout, false)?,
    };
    Ok(encode(&value, n_bits, k_bits, inner)?.body_bits)
}

fn size_rows(
    f: &SparsePoly,
    formula: impl Fn(TableVocab, Form) -> SizeFormula,
    n_bits: u32,
    k_bits: u32,
) -> crate::Result<Vec<TableRow>> {
    let mut rows = Vec::new();
    for vocab in TableVocab::ALL {
        for form in Form::ALL {
            let measured = measured_cell(f, vocab, form, n_bits, k_bits)?;
            let closed = paper_size_bits(formula(vocab, form))?;
            rows.push(TableRow {
                label: vocab.label().to_string(),
                columns: vec![
                    ("form".into(), form.label().into()),
                    ("measured_bits".into(), measured.to_string()),
                    ("formula_bits".into(), closed.to_string()),
                ],
            });
        }
    }
    Ok(rows)
}

/// Height records of `Phi_k` for `k <= max`, from height 2 on.
pub fn table1_rows(max: u64) -> crate::Result<Vec<TableRow>> {
    Ok(height_records(max)?
        .into_iter()
        .filter(|r| r.height > 1.into())
        .map(|r| TableRow {
            label: r.height.to_string(),
            columns: vec![
                ("k".into(), r.first_k.to_string()),
                ("phi_k".into(), r.phi_of_k.to_string()),
            ],
        })
        .collect())
}

/// Sizes of `x^n - 1` in every vocabulary and form.
pub fn table2_rows(n: u64, n_bits: u32, k_bits: u32) -> crate::Result<Vec<TableRow>> {
    let f = c_poly(n)?;
    size_rows(&f, |vocab, form| SizeFormula::CyclotomicCell { n, vocab, form }, n_bits, k_bits)
}

/// Sizes of `(x^p - 1)(x^q - 1)` in every vocabulary and form.
pub fn table3_rows(p: u64, q: u64, n_bits: u32, k_bits: u32) -> crate::Result<Vec<TableRow>> {
    if p == q || !numtheory::is_prime(p) || !numtheory::is_prime(q) {
        return Err(Error::domain(format!("{p} and {q} must be distinct primes")));
    }
    let f = c_poly(p)?.mul(&c_poly(q)?);
    size_rows(&f, |vocab, form| SizeFormula::TwoPrimeCell { p, q, vocab, form }, n_bits, k_bits)
}

/// Renders rows as aligned text or CSV under a header.
pub fn render_rows(label_name: &str, rows: &[TableRow], csv: bool) -> String {
    let mut header = vec![label_name.to_string()];
    if let Some(r) = rows.first() {
        header.extend(r.columns.iter().map(|(n, _)| n.clone()));
    }
    let body: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            let mut v = vec![r.label.clone()];
            v.extend(r.columns.iter().map(|(_, c)| c.clone()));
            v
        })
        .collect();
    let mut out = String::new();
    if csv {
        for line in std::iter::once(&header).chain(&body) {
            writeln!(out, "{}", line.join(",")).unwrap();
        }
        return out;
    }
    let widths: Vec<usize> = (0..header.len())
        .map(|i| {
            std::iter::once(&header)
                .chain(&body)
                .map(|r| r[i].len())
                .max()
                .unwrap()
        })
        .collect();
    for line in std::iter::once(&header).chain(&body) {
        let cells: Vec<String> = line
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect();
        writeln!(out, "{}", cells.join("  ").trim_end()).unwrap();
    }
    out
}

fn execute(cli: &Cli, out: &mut dyn Write) -> CliResult<()> {
    let (nb, kb) = (cli.n_bits, cli.k_bits);
    match &cli.command {
        Command::Phi { k } => {
            let f = phi_poly(*k)?;
            writeln!(out, "{f}")?;
            if cli.stats {
                write!(out, "{}", stats_lines(&f))?;
            }
        }
        Command::C { n } => {
            let f = c_poly(*n)?;
            writeln!(out, "{f}")?;
            if cli.stats {
                write!(out, "{}", stats_lines(&f))?;
            }
        }
        Command::Factor {
            input,
            vocab,
            squarefree_only,
        } => {
            let f = input_poly(input)?;
            writeln!(out, "{}", factor_text(&f, *vocab, *squarefree_only)?)?;
            if cli.stats {
                write!(out, "{}", stats_lines(&f))?;
            }
        }
        Command::Detect { input } => {
            let f = input_poly(input)?;
            let (quick, line) = detect_line(&f)?;
            writeln!(out, "{line}")?;
            if cli.stats {
                writeln!(out, "quick: {quick}")?;
                write!(out, "{}", stats_lines(&f))?;
            }
        }
        Command::Size {
            input,
            vocab,
            inner,
            squarefree_only,
        } => {
            let f = input_poly(input)?;
            nonzero(&f)?;
            let value = represent(&f, (*vocab).into(), *squarefree_only)?;
            let r = size_report(&value, nb, kb, (*inner).into())?;
            let closed = r.paper_formula_bits.map_or("-".to_string(), |b| b.to_string());
            let p = r.params;
            if cli.csv {
                writeln!(out, "layout,measured_bits,paper_formula_bits,n,t,k,f,l")?;
                writeln!(
                    out,
                    "{},{},{},{},{},{},{},{}",
                    r.layout.name(),
                    r.measured_bits,
                    closed,
                    p.n,
                    p.t,
                    p.k,
                    p.f,
                    p.l
                )?;
            } else {
                writeln!(out, "layout: {}", r.layout.name())?;
                writeln!(out, "measured_bits: {}", r.measured_bits)?;
                writeln!(out, "paper_formula_bits: {closed}")?;
                writeln!(out, "n={} t={} k={} f={} l={}", p.n, p.t, p.k, p.f, p.l)?;
            }
        }
        Command::Encode {
            input,
            output,
            vocab,
            inner,
            squarefree_only,
        } => {
            let f = input_poly(input)?;
            nonzero(&f)?;
            let value = represent(&f, (*vocab).into(), *squarefree_only)?;
            let blob = encode(&value, nb, kb, (*inner).into())?;
            std::fs::write(output, &blob.bytes)?;
            writeln!(
                out,
                "{}: {} body bits, {} bytes",
                output.display(),
                blob.body_bits,
                blob.bytes.len()
            )?;
        }
        Command::Decode { path } => {
            let bytes = std::fs::read(path)?;
            let value = decode(&bytes)?;
            writeln!(out, "{value}")?;
            if cli.stats {
                write!(out, "{}", stats_lines(&value.expand()?))?;
            }
        }
        Command::Table { which, max, n, p, q } => {
            let need = |v: &Option<u64>, flag: &str| {
                v.ok_or_else(|| CliError::Usage(format!("table {which} needs --{flag}")))
            };
            let (label, rows) = match which {
                1 => ("height", table1_rows(need(max, "max")?)?),
                2 => {
                    let n = need(n, "n")?;
                    if n < 3 {
                        return Err(CliError::Usage("table 2 needs --n >= 3".into()));
                    }
                    ("representation", table2_rows(n, nb, kb)?)
                }
                _ => {
                    let (p, q) = (need(p, "p")?, need(q, "q")?);
                    if p == q || !numtheory::is_prime(p) || !numtheory::is_prime(q) {
                        return Err(CliError::Usage("--p and --q must be distinct primes".into()));
                    }
                    ("representation", table3_rows(p, q, nb, kb)?)
                }
            };
            write!(out, "{}", render_rows(label, &rows, cli.csv))?;
        }
    }
    Ok(())
}

/// Runs the command line `args` (including the program name), writing
/// results to `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
