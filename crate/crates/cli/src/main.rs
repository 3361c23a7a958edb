use std::fs;
use std::io::{BufReader, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use kyflat::mtx::{read_matrix, write_matrix};
use kyflat::record::{render, Format, Record};
use kyflat::report::{cases_csv, cases_json, cases_text};
use kyflat::scan::scan;
use kyflat::verify::{log2_ratio, run, Cap, Settings, Statement};
use kyflat_core::exactla::{rank_with_policy, RankPolicy, RankResult, DEFAULT_EXACT_COLUMN_LIMIT};
use kyflat_core::formulas::{
    border_rank_lb, chowsrank_a, chowsrank_bound, hook_dim, perm_cat_rank, permcom_gap, psp_rank_bounds, s_formula,
    secant_chow_cat_rank, secant_chow_koszul_ub, veronese_point_rank, BoundReport,
};
use kyflat_core::symtensor::{catalecticant, gen_permanent, parse_poly, parse_poly_infer, FlatteningSpec, Poly};

const VERIFY_HELP: &str = "\
Statements and default caps (override with --cap key=value,...):
  rankchow      d=6                     Koszul rank of x1...xd against both closed forms of S
  chowsrank     n=8, matrix_n=2         closed border-rank bound against the flattening ratio
  nontrivial    d=6, seeds=10           generic Koszul rank equals the hook dimension
  YFveronese    n=4, d=4                Koszul rank of a power of a linear form
  kyfl11        n=4, d=4                rank n^2-1 at k=p=1, trace tensor in the kernel
  rankschow     d=4, r=3, sym=20        Koszul rank bounds for sums of products
  secant_cat    d=6, r=3                catalecticant rank r*C(d,k) for sums of products
  classic       n=4, d=6                generic catalecticants have maximal rank
  NUMAB         r=4, d=10, cols=300     NUM(A,B) sandwich and class partition
  bounds        r=6, d=9, cols=300      coarse bounds for power-sum powers
  perm          n=4                     catalecticant rank C(n,k)^2 of the permanent
  permcom_gap                           exact permanent rank-gap ratios
Each default suite finishes well under ten minutes on a laptop.";

#[derive(Parser, Debug)]
#[command(
    name = "kyflat",
    version,
    about = "Exact flattening and Koszul Young flattening ranks of homogeneous polynomials"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,
    /// Seed for random polynomials and random primes.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Always use exact rational elimination.
    #[arg(long, global = true, conflicts_with = "modular")]
    exact: bool,
    /// Always use modular elimination.
    #[arg(long, global = true)]
    modular: bool,
    /// Number of random primes for modular ranks.
    #[arg(long, global = true, default_value_t = 2)]
    primes: usize,
    /// Column limit: exact below, modular above; scan skips cells above it.
    #[arg(long, global = true, default_value_t = DEFAULT_EXACT_COLUMN_LIMIT)]
    budget_cols: usize,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

impl Global {
    fn policy(&self) -> RankPolicy {
        if self.exact {
            RankPolicy::Exact
        } else if self.modular {
            RankPolicy::Modular { primes: self.primes }
        } else {
            RankPolicy::Auto {
                exact_col_limit: self.budget_cols,
                primes: self.primes,
            }
        }
    }

    /// Random polynomials default to modular ranks.
    fn generic_policy(&self) -> RankPolicy {
        if self.exact {
            RankPolicy::Exact
        } else {
            RankPolicy::Modular { primes: self.primes }
        }
    }
}

#[derive(Args, Debug)]
struct PolyInput {
    /// Polynomial such as "x1*x2*x3" or "x1^2 - 3/2*x2^2".
    poly: Option<String>,
    /// Read the polynomial from a file instead.
    #[arg(long, conflicts_with = "poly")]
    poly_file: Option<PathBuf>,
    /// Number of variables (default: largest index used).
    #[arg(long)]
    n_vars: Option<usize>,
}

impl PolyInput {
    fn load(&self) -> Result<Poly> {
        let text = match (&self.poly, &self.poly_file) {
            (Some(t), _) => t.clone(),
            (None, Some(path)) => fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?,
            (None, None) => bail!("give a polynomial or --poly-file"),
        };
        Ok(match self.n_vars {
            Some(n) => parse_poly(text.trim(), n)?,
            None => parse_poly_infer(text.trim())?,
        })
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Kind {
    Cat,
    Shifted,
    Koszul,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a flattening matrix and compute its rank.
    Flatten {
        #[command(flatten)]
        input: PolyInput,
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long)]
        k: usize,
        /// Shift degree for --kind shifted.
        #[arg(long)]
        l: Option<usize>,
        /// Wedge degree for --kind koszul.
        #[arg(long)]
        p: Option<usize>,
        /// Also write the matrix in Matrix Market format.
        #[arg(long)]
        dump: Option<PathBuf>,
    },
    /// Rank of a Matrix Market coordinate file.
    Rank { file: PathBuf },
    /// Compare closed formulas against matrix-rank oracles.
    #[command(after_help = VERIFY_HELP)]
    Verify {
        /// Statement ids, or "all".
        #[arg(required = true)]
        statements: Vec<String>,
        /// Size caps, e.g. "d=5" or "n=4,d=4".
        #[arg(long, default_value = "")]
        cap: String,
    },
    /// Best border-rank lower bound over all (k, p) flattenings.
    Scan {
        #[command(flatten)]
        input: PolyInput,
    },
    /// Evaluate closed-form counts and bounds.
    Bounds {
        #[command(subcommand)]
        which: BoundKind,
    },
    /// Catalecticant ranks of the permanent and the rank-gap ratio.
    Permanent {
        #[arg(long)]
        n: usize,
        /// Single order; default all 1 <= k <= n/2.
        #[arg(long)]
        k: Option<usize>,
        /// With --delta1, also report the rank-gap ratio.
        #[arg(long)]
        r: Option<usize>,
        #[arg(long)]
        delta1: Option<usize>,
    },
}

#[derive(Subcommand, Debug)]
enum BoundKind {
    /// S(p,d,k), the Koszul rank of x1...xd.
    S {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        k: usize,
    },
    /// Generic Koszul rank d/(d-k+p) C(2d-k-1,d) C(d-1,p).
    Hook {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        p: usize,
    },
    /// Koszul rank of a power of a linear form in n variables.
    Veronese {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: usize,
    },
    /// Closed border-rank bound for x1...x_{2n+1}.
    Chowsrank {
        #[arg(long)]
        n: usize,
    },
    /// Catalecticant rank of a sum of r products.
    SecantCat {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        k: usize,
    },
    /// Koszul rank upper bound for a sum of r products.
    SecantKoszul {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        p: usize,
    },
    /// Catalecticant rank bounds for (x1^delta2 + ... + xr^delta2)^delta1.
    Psp {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        delta1: usize,
        #[arg(long)]
        delta2: usize,
        #[arg(long)]
        k: usize,
    },
    /// Border-rank lower bound from one Koszul flattening.
    Border {
        #[command(flatten)]
        input: PolyInput,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        p: usize,
    },
}

fn rank_fields(rec: Record, r: &RankResult) -> Record {
    let primes: Vec<String> = r.primes_used.iter().map(u64::to_string).collect();
    rec.set("rank", r.rank)
        .set("method", r.method.as_str())
        .set("primes_used", primes.join(" "))
        .set("is_certified_lower_bound", r.is_certified_lower_bound)
}

fn bound_record(rep: &BoundReport) -> Record {
    let mut rec = Record::new().set("subject", &rep.subject).set("source", rep.source);
    for (name, value) in &rep.parameters {
        rec = rec.set(name, value);
    }
    rec = rec.set("lower", &rep.lower).set_opt("upper", rep.upper.as_ref());
    if let Some((lo, hi)) = &rep.corollary {
        rec = rec.set("corollary_lower", lo).set("corollary_upper", hi);
    }
    rec
}

/// What a subcommand produced and whether the run counts as failed.
struct Outcome {
    text: String,
    failed: bool,
}

fn execute(cli: &Cli) -> Result<Outcome> {
    let g = &cli.global;
    let ok = |text: String| Ok(Outcome { text, failed: false });
    match &cli.command {
        Command::Flatten {
            input,
            kind,
            k,
            l,
            p,
            dump,
        } => {
            let poly = input.load()?;
            let spec = match kind {
                Kind::Cat => FlatteningSpec::catalecticant(*k),
                Kind::Shifted => FlatteningSpec::shifted(*k, l.ok_or_else(|| anyhow!("--kind shifted needs --l"))?),
                Kind::Koszul => FlatteningSpec::koszul(*k, p.ok_or_else(|| anyhow!("--kind koszul needs --p"))?),
            };
            spec.validate(&poly)?;
            let m = spec.build(&poly)?;
            if let Some(path) = dump {
                let mut f = fs::File::create(path).with_context(|| format!("creating {}", path.display()))?;
                write_matrix(&m, &mut f)?;
            }
            let r = rank_with_policy(&m, g.policy(), g.seed)?;
            let rec = Record::new()
                .set("subject", &poly)
                .set("kind", format!("{kind:?}").to_lowercase())
                .set("k", k)
                .set_opt("l", l.filter(|_| matches!(kind, Kind::Shifted)))
                .set_opt("p", p.filter(|_| matches!(kind, Kind::Koszul)))
                .set("n_rows", m.n_rows())
                .set("n_cols", m.n_cols())
                .set("nnz", m.nnz());
            ok(render(g.format, g.seed, &rank_fields(rec, &r), "", &[])?)
        }
        Command::Rank { file } => {
            let f = fs::File::open(file).with_context(|| format!("opening {}", file.display()))?;
            let m = read_matrix(BufReader::new(f))?;
            let r = rank_with_policy(&m, g.policy(), g.seed)?;
            let rec = Record::new()
                .set("file", file.display())
                .set("n_rows", m.n_rows())
                .set("n_cols", m.n_cols())
                .set("nnz", m.nnz());
            ok(render(g.format, g.seed, &rank_fields(rec, &r), "", &[])?)
        }
        Command::Verify { statements, cap } => {
            let chosen: Vec<Statement> = if statements.iter().any(|s| s == "all") {
                Statement::ALL.to_vec()
            } else {
                statements
                    .iter()
                    .map(|s| Statement::from_id(s).ok_or_else(|| anyhow!("unknown statement id '{s}'")))
                    .collect::<Result<_>>()?
            };
            let cap = Cap::parse(cap)?;
            let cases = run(&chosen, &cap, Settings::new(g.seed, g.policy(), g.generic_policy()))?;
            let failed = cases.iter().any(|c| c.status.is_failure());
            let text = match g.format {
                Format::Json => cases_json(&cases, g.seed),
                Format::Csv => cases_csv(&cases)?,
                Format::Text => cases_text(&cases),
            };
            Ok(Outcome { text, failed })
        }
        Command::Scan { input } => {
            let poly = input.load()?;
            let rep = scan(&poly, g.budget_cols, g.policy(), g.seed)?;
            let head = Record::new()
                .set("subject", &rep.subject)
                .set("degree", rep.degree)
                .set("n_vars", rep.n_vars)
                .set("source", rep.source)
                .set_opt("lower", rep.lower.as_ref())
                .set_opt("best_k", rep.best_k)
                .set_opt("best_p", rep.best_p)
                .set_opt("note", rep.note.as_ref());
            let rows: Vec<Record> = rep
                .cells
                .iter()
                .map(|c| {
                    Record::new()
                        .set("k", c.k)
                        .set("p", c.p)
                        .set("n_rows", c.n_rows)
                        .set("n_cols", c.n_cols)
                        .set("skipped", c.skipped)
                        .set("rank", c.rank.clone().unwrap_or_default())
                        .set("method", c.method.unwrap_or(""))
                        .set("point_rank", &c.point_rank)
                        .set("bound", c.bound.clone().unwrap_or_default())
                })
                .collect();
            ok(render(g.format, g.seed, &head, "cells", &rows)?)
        }
        Command::Bounds { which } => {
            let rec = match which {
                BoundKind::S { p, d, k } => Record::new()
                    .set("p", p)
                    .set("d", d)
                    .set("k", k)
                    .set("value", s_formula(*p, *d, *k)?),
                BoundKind::Hook { d, k, p } => Record::new()
                    .set("d", d)
                    .set("k", k)
                    .set("p", p)
                    .set("value", hook_dim(*d, *k, *p)?),
                BoundKind::Veronese { n, p } => Record::new()
                    .set("n", n)
                    .set("p", p)
                    .set("value", veronese_point_rank(*n, *p)?),
                BoundKind::Chowsrank { n } => {
                    let b = chowsrank_bound(*n)?;
                    Record::new()
                        .set("n", n)
                        .set("subject", format!("x1*...*x{}", 2 * n + 1))
                        .set("bound", &b)
                        .set("lower", b.ceil().to_integer())
                        .set("a", chowsrank_a(*n))
                }
                BoundKind::SecantCat { r, d, k } => Record::new()
                    .set("r", r)
                    .set("d", d)
                    .set("k", k)
                    .set("value", secant_chow_cat_rank(*r, *d, *k)?),
                BoundKind::SecantKoszul { r, d, k, p } => Record::new()
                    .set("r", r)
                    .set("d", d)
                    .set("k", k)
                    .set("p", p)
                    .set("upper", secant_chow_koszul_ub(*r, *d, *k, *p)?),
                BoundKind::Psp { r, delta1, delta2, k } => bound_record(&psp_rank_bounds(*r, *delta1, *delta2, *k)?),
                BoundKind::Border { input, k, p } => {
                    let (rep, r) = border_rank_lb(&input.load()?, *k, *p, g.policy(), g.seed)?;
                    rank_fields(bound_record(&rep), &r)
                }
            };
            ok(render(g.format, g.seed, &rec, "", &[])?)
        }
        Command::Permanent { n, k, r, delta1 } => {
            let poly = gen_permanent(*n)?;
            let orders: Vec<usize> = match k {
                Some(k) => vec![*k],
                None => (1..=n / 2).collect(),
            };
            let mut rows = Vec::new();
            let mut failed = false;
            for &k in &orders {
                let expected = perm_cat_rank(*n, k)?;
                let res = rank_with_policy(&catalecticant(&poly, k)?, g.policy(), g.seed)?;
                failed |= expected != res.rank.into();
                rows.push(rank_fields(
                    Record::new().set("n", n).set("k", k).set("expected", &expected),
                    &res,
                ));
            }
            let mut head = Record::new().set("subject", format!("perm_{n}"));
            match (r, delta1) {
                (Some(r), Some(delta1)) => {
                    let gap = permcom_gap(*n, *r, *delta1)?;
                    head = head
                        .set("r", r)
                        .set("delta1", delta1)
                        .set("gap", &gap)
                        .set("gap_log2", format!("{:.6}", log2_ratio(&gap)));
                }
                (None, None) => {}
                _ => bail!("--r and --delta1 go together"),
            }
            Ok(Outcome {
                text: render(g.format, g.seed, &head, "ranks", &rows)?,
                failed,
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match execute(&cli) {
        Ok(outcome) => {
            let written = match &cli.global.out {
                Some(path) => fs::write(path, &outcome.text).with_context(|| format!("writing {}", path.display())),
                None => std::io::stdout().write_all(outcome.text.as_bytes()).map_err(Into::into),
            };
            if let Err(e) = written {
                eprintln!("error: {e:#}");
                return ExitCode::from(2);
            }
            ExitCode::from(u8::from(outcome.failed))
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
