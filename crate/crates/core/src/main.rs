use std::io::{Read, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;
use serde_json::json;

use nullcone::gt::{pattern_from_tableau, tableau_from_pattern, GtKind, GtPattern, GtPoset, RawPattern};
use nullcone::lattice::{enumerate_ssyt_with_guard, xi, xi_inverse, Guard, Lattice};
use nullcone::nullcone::{
    basis_independence, dim_gl_with_guard, dim_sp_with_guard, enumerate_n_standard, n_straighten_checked,
    omega_sum_for, sample_nullcone_point, theta_element, NullconeContext,
};
use nullcone::straighten::{straighten_with_guard, StandardCombination, WeightConfig};
use nullcone::tableau::{parse_int_list, parse_one_line, parse_product, parse_ssyt, Shape};
use nullcone::verify::{run_all, VerifyConfig};
use nullcone::{Error, Result};

#[derive(Parser)]
#[command(name = "nullcone", version, about = "Standard monomials, GT cones and straightening for the symplectic nullcone")]
struct Cli {
    /// Output format. JSON is stable; the table layout is not.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Subcommand)]
enum Cmd {
    /// Enumerate lattices, standard monomials, tableaux and cone points.
    #[command(subcommand)]
    Enumerate(EnumerateCmd),
    /// Straighten a product of minors in C[M_{n,m}].
    Straighten(StraightenArgs),
    /// Operations in the coordinate ring of the nullcone N_{k,2n}.
    #[command(subcommand)]
    Nullcone(NullconeCmd),
    /// Convert between tableaux, index sets and GT patterns.
    #[command(subcommand)]
    Convert(ConvertCmd),
    /// GT cone descriptions.
    #[command(subcommand)]
    Cone(ConeCmd),
    /// Run the self-check suite.
    #[command(subcommand)]
    Verify(VerifyCmd),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum LatticeKind {
    D,
    L,
    Pl,
    Nullcone,
}

#[derive(Args)]
struct LatticeArgs {
    #[arg(long, value_enum, default_value_t = LatticeKind::D)]
    lattice: LatticeKind,
    /// Rows `n` (for `nullcone`: half the column count).
    #[arg(long)]
    n: u32,
    /// Columns `m` (unused for `nullcone`).
    #[arg(long)]
    m: Option<u32>,
    /// Rows `k` (only for `nullcone`).
    #[arg(long)]
    k: Option<u32>,
}

impl LatticeArgs {
    fn lattice(&self) -> Result<Lattice> {
        let need = |v: Option<u32>, name: &str| v.ok_or_else(|| Error::parameter(format!("--{name} is required")));
        Ok(match self.lattice {
            LatticeKind::D => Lattice::D { n: self.n, m: need(self.m, "m")? },
            LatticeKind::L => Lattice::L { n: self.n, m: need(self.m, "m")? },
            LatticeKind::Pl => Lattice::Pl { n: self.n, m: need(self.m, "m")? },
            LatticeKind::Nullcone => Lattice::Nullcone { k: need(self.k, "k")?, n: self.n },
        })
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PosetKind {
    Gamma,
    Nullcone,
}

#[derive(Args)]
struct PosetArgs {
    #[arg(long, value_enum)]
    poset: PosetKind,
    /// `m` or `n,m` for `gamma`; `k,n` for `nullcone`.
    #[arg(long)]
    params: String,
}

impl PosetArgs {
    fn kind(&self) -> Result<GtKind> {
        let p = parse_int_list(&self.params)?;
        match (self.poset, p.as_slice()) {
            (PosetKind::Gamma, &[m]) => Ok(GtKind::Gamma { m }),
            (PosetKind::Gamma, &[n, m]) => Ok(GtKind::GammaNm { n, m }),
            (PosetKind::Nullcone, &[k, n]) => Ok(GtKind::Nullcone { k, n }),
            _ => Err(Error::parameter(format!("bad --params {:?} for this poset", self.params))),
        }
    }
}

#[derive(Subcommand)]
enum EnumerateCmd {
    /// Elements of a lattice of one-line tableaux, in canonical order.
    Lattice(LatticeArgs),
    /// Standard monomials (multichains) of a shape in a lattice.
    Standard {
        #[command(flatten)]
        lattice: LatticeArgs,
        #[arg(long)]
        shape: String,
    },
    /// N-standard monomials of a shape.
    Nstandard {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        shape: String,
    },
    /// Semistandard tableaux, optionally with every column above a floor.
    Ssyt {
        #[arg(long)]
        shape: String,
        #[arg(long)]
        max_entry: u32,
        #[arg(long)]
        floor: Option<String>,
    },
    /// Lattice points of a GT cone with a fixed shape row.
    ConePoints {
        #[command(flatten)]
        poset: PosetArgs,
        #[arg(long)]
        shape: String,
    },
}

#[derive(Args)]
struct StraightenArgs {
    #[arg(long)]
    n: u32,
    #[arg(long)]
    m: u32,
    /// Comma-separated `[I:J]` factors.
    #[arg(long)]
    product: String,
    #[arg(long)]
    weight_base: Option<String>,
}

#[derive(Args)]
struct NullconeArgs {
    #[arg(long)]
    k: u32,
    #[arg(long)]
    n: u32,
}

impl NullconeArgs {
    fn context(&self, guard: Guard) -> Result<NullconeContext> {
        Ok(NullconeContext::new(self.k, self.n)?.with_guard(guard))
    }
}

#[derive(Subcommand)]
enum NullconeCmd {
    /// Express a product of minors in terms of N-standard monomials.
    Straighten {
        #[command(flatten)]
        ctx: NullconeArgs,
        #[arg(long)]
        product: String,
        /// Nullcone points used for the cross-check.
        #[arg(long, default_value_t = 25)]
        points: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Number of N-standard monomials of a shape.
    Count {
        #[command(flatten)]
        ctx: NullconeArgs,
        #[arg(long)]
        shape: String,
    },
    /// The ω-sum with a given leading column index set.
    OmegaSum {
        #[command(flatten)]
        ctx: NullconeArgs,
        /// Column index set, comma separated.
        #[arg(long)]
        cols: String,
    },
    /// The ideal generator built from an ω-sum and a row set.
    Theta {
        #[command(flatten)]
        ctx: NullconeArgs,
        #[arg(long)]
        rows: String,
        #[arg(long)]
        cols: String,
    },
    /// An exact point of the nullcone.
    Sample {
        #[command(flatten)]
        ctx: NullconeArgs,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Rank of the N-standard monomials at sampled nullcone points.
    Independence {
        #[command(flatten)]
        ctx: NullconeArgs,
        /// All shapes of total size at most this.
        #[arg(long, conflicts_with = "shape")]
        degree: Option<u32>,
        #[arg(long)]
        shape: Option<String>,
        #[arg(long, default_value_t = 0)]
        points: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum ConvertCmd {
    /// Semistandard tableau (`1125/2356/3467`) to its GT pattern on Γ_m.
    TableauToPattern {
        #[arg(long)]
        tableau: String,
        #[arg(long)]
        m: u32,
    },
    /// GT pattern JSON on Γ_m (file or `-` for stdin) to its tableau.
    PatternToTableau {
        #[arg(long, default_value = "-")]
        input: String,
    },
    /// One-line tableau `[I:J]` in D(n,m) to its index set in Pl(n,m+n).
    Xi {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        tableau: String,
    },
    /// Index set in Pl(n,m+n) back to a one-line tableau.
    XiInverse {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        set: String,
    },
}

#[derive(Subcommand)]
enum ConeCmd {
    /// H-representation of a GT cone.
    Inequalities(PosetArgs),
}

#[derive(Subcommand)]
enum VerifyCmd {
    /// Every check, one line each.
    All {
        #[arg(long, default_value_t = 4)]
        max_size: u32,
        #[arg(long, default_value_t = 7)]
        seed: u64,
    },
}

struct Output {
    json: String,
    table: String,
    /// Nonzero when the command ran but reports a failed check.
    status: u8,
}

impl Output {
    fn new(json: impl Serialize, table: String) -> Result<Self> {
        let json = serde_json::to_string(&json).map_err(|e| Error::invariant(e.to_string()))?;
        Ok(Output { json, table, status: 0 })
    }
}

fn guard_from_env() -> Result<Guard> {
    match std::env::var("NULLCONE_GUARD") {
        Ok(v) => v
            .trim()
            .parse::<u64>()
            .map(Guard::new)
            .map_err(|_| Error::parameter(format!("NULLCONE_GUARD must be a non-negative integer, got {v:?}"))),
        Err(_) => Ok(Guard::default()),
    }
}

fn shape(s: &str) -> Result<Shape> {
    Shape::new(parse_int_list(s)?)
}

fn rational(q: &BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

fn lines<T: std::fmt::Display>(items: &[T]) -> String {
    items.iter().map(|t| format!("{t}\n")).collect()
}

fn pattern_table(p: &GtPattern) -> String {
    p.rows()
        .iter()
        .map(|r| r.iter().map(u64::to_string).collect::<Vec<_>>().join(" ") + "\n")
        .collect()
}

fn combination_table(c: &StandardCombination) -> String {
    if c.terms.is_empty() {
        return "0\n".into();
    }
    let width = c.terms.iter().map(|t| t.coef.to_string().len()).max().unwrap_or(0);
    c.terms.iter().map(|t| format!("{:>width$}  {}\n", t.coef.to_string(), t.tableau)).collect()
}

fn run(cmd: Cmd, guard: Guard) -> Result<Output> {
    match cmd {
        Cmd::Enumerate(e) => enumerate(e, guard),
        Cmd::Straighten(a) => {
            let cfg = match &a.weight_base {
                Some(b) => {
                    let base = b.parse::<BigInt>().map_err(|_| Error::parameter(format!("bad --weight-base {b:?}")))?;
                    WeightConfig::new(a.n, a.m, base)?
                }
                None => WeightConfig::default_for(a.n, a.m),
            };
            let comb = straighten_with_guard(&parse_product(&a.product, a.n, a.m)?, &cfg, guard)?;
            let table = combination_table(&comb);
            Output::new(comb, table)
        }
        Cmd::Nullcone(c) => nullcone_cmd(c, guard),
        Cmd::Convert(c) => convert(c),
        Cmd::Cone(ConeCmd::Inequalities(p)) => {
            let h = GtPoset::new(p.kind()?)?.cone_inequalities();
            let table = h
                .inequalities
                .iter()
                .map(|r| r.iter().map(i64::to_string).collect::<Vec<_>>().join(" ") + "\n")
                .collect();
            Output::new(h, table)
        }
        Cmd::Verify(VerifyCmd::All { max_size, seed }) => {
            let report = run_all(&VerifyConfig { max_size, seed, guard });
            let table = report.to_table();
            let passed = report.passed;
            let mut out = Output::new(report, table)?;
            if !passed {
                out.status = 1;
            }
            Ok(out)
        }
    }
}

fn enumerate(cmd: EnumerateCmd, guard: Guard) -> Result<Output> {
    match cmd {
        EnumerateCmd::Lattice(l) => {
            let all = l.lattice()?.enumerate_with_guard(guard)?;
            Output::new(&all, lines(&all))
        }
        EnumerateCmd::Standard { lattice, shape: s } => {
            let all = lattice.lattice()?.standard_tableaux_with_guard(&shape(&s)?, guard)?;
            Output::new(&all, lines(&all))
        }
        EnumerateCmd::Nstandard { k, n, shape: s } => {
            let ctx = NullconeContext::new(k, n)?.with_guard(guard);
            let all = enumerate_n_standard(&shape(&s)?, &ctx)?;
            Output::new(&all, lines(&all))
        }
        EnumerateCmd::Ssyt { shape: s, max_entry, floor } => {
            let floor = floor.map(|f| parse_int_list(&f)).transpose()?;
            let all = enumerate_ssyt_with_guard(&shape(&s)?, max_entry, floor.as_deref(), guard)?;
            let rows: Vec<&[Vec<u32>]> = all.iter().map(|t| t.rows()).collect();
            Output::new(rows, lines(&all))
        }
        EnumerateCmd::ConePoints { poset, shape: s } => {
            let all = GtPoset::new(poset.kind()?)?.cone_points(&shape(&s)?, guard)?;
            let table = all.iter().map(pattern_table).collect::<Vec<_>>().join("\n");
            Output::new(&all, table)
        }
    }
}

fn nullcone_cmd(cmd: NullconeCmd, guard: Guard) -> Result<Output> {
    match cmd {
        NullconeCmd::Straighten { ctx, product, points, seed } => {
            let c = ctx.context(guard)?;
            let prod = parse_product(&product, c.k(), 2 * c.n())?;
            let comb = n_straighten_checked(&prod, &c, seed, points)?;
            let table = combination_table(&comb);
            Output::new(comb, table)
        }
        NullconeCmd::Count { ctx, shape: s } => {
            let c = ctx.context(guard)?;
            let d = shape(&s)?;
            let count = enumerate_n_standard(&d, &c)?.len() as u64;
            let table = if d.length() <= c.k().min(c.n()) as usize {
                let gl = dim_gl_with_guard(&d, c.k(), guard)?;
                let sp = dim_sp_with_guard(&d, c.n(), guard)?;
                if gl * sp != count {
                    return Err(Error::invariant(format!("{count} N-standard monomials but dimensions {gl} x {sp}")));
                }
                format!("{count} = {gl} x {sp}\n")
            } else {
                format!("{count}\n")
            };
            Output::new(count, table)
        }
        NullconeCmd::OmegaSum { ctx, cols } => {
            let c = ctx.context(guard)?;
            let s = omega_sum_for(&parse_int_list(&cols)?, &c)?;
            let table = s.terms().iter().map(|(j, q)| format!("{q}  e{j:?}\n")).collect();
            Output::new(s, table)
        }
        NullconeCmd::Theta { ctx, rows, cols } => {
            let c = ctx.context(guard)?;
            let s = omega_sum_for(&parse_int_list(&cols)?, &c)?;
            let p = theta_element(&parse_int_list(&rows)?, &s, &c)?;
            let table = format!("{p}\n");
            Output::new(p, table)
        }
        NullconeCmd::Sample { ctx, seed } => {
            let c = ctx.context(guard)?;
            let pt = sample_nullcone_point(&c, seed);
            let matrix: Vec<Vec<String>> = pt.iter().map(|r| r.iter().map(rational).collect()).collect();
            let table = pt.iter().map(|r| r.iter().map(|q| q.to_string()).collect::<Vec<_>>().join(" ") + "\n").collect();
            Output::new(matrix, table)
        }
        NullconeCmd::Independence { ctx, degree, shape: s, points, seed } => {
            let c = ctx.context(guard)?;
            let shapes = match (degree, s) {
                (_, Some(s)) => vec![shape(&s)?],
                (Some(d), None) => (0..=d).flat_map(|d| Shape::partitions(d, c.k().min(c.n()) as usize)).collect(),
                (None, None) => return Err(Error::parameter("give --degree or --shape")),
            };
            let r = basis_independence(&shapes, &c, points, seed)?;
            let table = format!(
                "candidates {}\nrank {}\nblocks {}\npoints {}\nfull rank {}\n",
                r.candidates, r.rank, r.blocks, r.points, r.full_rank
            );
            let full = r.full_rank;
            let mut out = Output::new(&r, table)?;
            if !full {
                eprintln!("FINDING: rank {} of {} N-standard monomials", r.rank, r.candidates);
                out.status = 1;
            }
            Ok(out)
        }
    }
}

fn convert(cmd: ConvertCmd) -> Result<Output> {
    match cmd {
        ConvertCmd::TableauToPattern { tableau, m } => {
            let p = pattern_from_tableau(&parse_ssyt(&tableau, m)?, m)?;
            let table = pattern_table(&p);
            Output::new(p, table)
        }
        ConvertCmd::PatternToTableau { input } => {
            let mut text = String::new();
            if input == "-" {
                std::io::stdin().read_to_string(&mut text).map_err(|e| Error::parameter(e.to_string()))?;
            } else {
                text = std::fs::read_to_string(&input).map_err(|e| Error::parameter(format!("{input}: {e}")))?;
            }
            let raw: RawPattern = serde_json::from_str(&text).map_err(|e| Error::parameter(format!("bad pattern JSON: {e}")))?;
            let t = tableau_from_pattern(&raw.into_pattern()?)?;
            let table = format!("{t}\n");
            Output::new(json!({"tableau": t.to_string(), "rows": t.rows(), "max_entry": t.max_entry()}), table)
        }
        ConvertCmd::Xi { n, m, tableau } => {
            let k = xi(&parse_one_line(&tableau, n, m)?);
            let table = format!("{k:?}\n");
            Output::new(k, table)
        }
        ConvertCmd::XiInverse { n, m, set } => {
            let t = xi_inverse(&parse_int_list(&set)?, n, m)?;
            let table = format!("{t}\n");
            Output::new(t, table)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = guard_from_env().and_then(|g| run(cli.cmd, g));
    match result {
        Ok(out) => {
            let text = match cli.format {
                Format::Json => out.json + "\n",
                Format::Table => out.table,
            };
            // a closed pipe (e.g. `| head`) is not an error
            let _ = std::io::stdout().lock().write_all(text.as_bytes());
            ExitCode::from(out.status)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
