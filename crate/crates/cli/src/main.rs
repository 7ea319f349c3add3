//! Command-line surface: order computation, Sylow analysis, verification
//! sweeps and lattice experiments; text and JSON output.
//!
//! Exit codes: 0 success, 1 verification failure (with a counterexample
//! dump), 2 usage/parse error.

mod report;

use clap::{Parser, Subcommand};
use gensylow::analyzer;
use gensylow::arith::{primes_up_to, QSpec, RootOfUnity};
use gensylow::cyclotomic::{verify_divcyclo, verify_lemma_div, SweepReport};
use gensylow::group_data::{GroupSpec, SimpleFactor};
use gensylow::lattice;
use gensylow::order;
use report::Envelope;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "gensylow",
    about = "Generic orders and Sylow subgroup structure of finite reductive groups",
    version
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Factored and evaluated generic order of a group.
    Order {
        /// Group type, e.g. A3, 2A3, 3D4, 2B2, B2^2, A1xA1
        group: String,
        /// q as p^a, a plain prime power, or sqrt2^a / sqrt3^a
        #[arg(long)]
        q: String,
        #[arg(long)]
        json: bool,
        /// Write the JSON report to a file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sylow ℓ-subgroup structure of a single-factor group.
    Sylow {
        group: String,
        #[arg(long)]
        q: String,
        #[arg(long)]
        ell: u64,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sylow reports for every prime ℓ ≤ lmax dividing the order.
    Sweep {
        group: String,
        #[arg(long)]
        q: String,
        #[arg(long, default_value_t = 100)]
        lmax: u64,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Weyl-group lattice experiments.
    Weyl {
        #[command(subcommand)]
        cmd: WeylCmd,
    },
    /// Exhaustive verification suites; nonzero exit on any violation.
    Verify {
        #[command(subcommand)]
        suite: VerifySuite,
    },
}

#[derive(Subcommand)]
enum WeylCmd {
    /// Maximal ζ-eigenspace dimensions, a(ζ) and |N/C| for the factors over d.
    Eigenspaces {
        group: String,
        #[arg(long)]
        d: u64,
    },
    /// Torus structure (Smith invariants) of wF* − 1 for a word w.
    Torus {
        group: String,
        /// Word in the simple reflections, e.g. 1212
        #[arg(long)]
        w: String,
        #[arg(long)]
        q: String,
    },
}

#[derive(Subcommand)]
enum VerifySuite {
    /// v_ℓ((x^f−1)/(x−1)) = v_ℓ(f) for x ≡ 1 (mod ℓ; mod 4 if ℓ = 2).
    LemmaDiv {
        #[arg(long, default_value_t = 200)]
        xmax: u64,
        #[arg(long, default_value_t = 64)]
        fmax: u64,
        #[arg(long, default_value_t = 19)]
        lmax: u64,
    },
    /// ℓ | Φ_e(q) iff e = d·ℓ^b, with v_ℓ = 1 for b ≠ 0.
    Divcyclo {
        #[arg(long, default_value_t = 50)]
        qmax: u64,
        #[arg(long, default_value_t = 60)]
        emax: u64,
        #[arg(long, default_value_t = 19)]
        lmax: u64,
    },
    /// Finite-order integer matrices stay ≠ 1 after reduction mod m ≥ 3.
    Reduction {
        #[arg(long, value_delimiter = ',', default_value = "3,4,5,6,7,8,9")]
        m: Vec<i64>,
    },
    /// Enumerated matrix-group orders against the generic order formula.
    OrderOracle,
    /// Constructed Sylow subgroups against the analyzer's predictions.
    SylowOracle,
    /// Eigenspace dimensions, |N/C| and kernel conjugacy over small types.
    Coset,
    /// Characteristic polynomials under descent of scalars.
    Descent,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            // invalid input is a usage error; anything else is a failure
            match e {
                gensylow::Error::Parse(_)
                | gensylow::Error::InvalidGroup(_)
                | gensylow::Error::InvalidQ(_)
                | gensylow::Error::EllEqualsP(_) => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}

fn emit(envelope: &Envelope, json: bool, out: &Option<PathBuf>) -> gensylow::Result<()> {
    let rendered = serde_json::to_string_pretty(envelope).expect("reports serialize");
    if let Some(path) = out {
        std::fs::write(path, &rendered)
            .map_err(|e| gensylow::Error::Unsupported(format!("cannot write {path:?}: {e}")))?;
    }
    if json {
        println!("{rendered}");
    }
    Ok(())
}

fn run(cli: Cli) -> gensylow::Result<ExitCode> {
    match cli.cmd {
        Cmd::Order { group, q, json, out } => {
            let g = GroupSpec::parse(&group)?;
            let q = QSpec::parse(&q)?;
            g.validate_q(&q)?;
            let envelope = Envelope::order(&g, &q)?;
            if !json {
                for f in &g.factors {
                    let fo = order::single_factor_order(f)?;
                    println!("{f}: {fo} = {}", fo.evaluate(&q)?);
                }
                if g.factors.len() > 1 {
                    println!("total = {}", order::order_at(&g, &q)?);
                }
            }
            emit(&envelope, json, &out)?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Sylow {
            group,
            q,
            ell,
            json,
            out,
        } => {
            let f = single_factor(&group)?;
            let q = QSpec::parse(&q)?;
            let report = analyzer::analyze(&f, &q, ell)?;
            let envelope = Envelope::sylow(&f, &q, &report)?;
            if !json {
                print_sylow_text(&report);
            }
            emit(&envelope, json, &out)?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Sweep {
            group,
            q,
            lmax,
            json,
            out,
        } => {
            let f = single_factor(&group)?;
            let q = QSpec::parse(&q)?;
            let mut envelopes = Vec::new();
            for l in primes_up_to(lmax) {
                if l == q.p {
                    continue;
                }
                let report = analyzer::analyze(&f, &q, l)?;
                if report.sylow_valuation == 0 {
                    continue;
                }
                if !json {
                    println!(
                        "ell = {l}: order {}, d = {}, D = {:?}, abelian = {}{}",
                        report.sylow_order,
                        report.d_ell,
                        report.big_d,
                        report.abelian,
                        if report.exception == gensylow::group_data::ExceptionClass::None {
                            String::new()
                        } else {
                            format!(", exception {}", report.exception)
                        }
                    );
                }
                envelopes.push(Envelope::sylow(&f, &q, &report)?);
            }
            if json || out.is_some() {
                let rendered = serde_json::to_string_pretty(&envelopes).expect("serialize");
                if let Some(path) = &out {
                    std::fs::write(path, &rendered).map_err(|e| {
                        gensylow::Error::Unsupported(format!("cannot write {path:?}: {e}"))
                    })?;
                }
                if json {
                    println!("{rendered}");
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Weyl { cmd } => run_weyl(cmd),
        Cmd::Verify { suite } => run_verify(suite),
    }
}

fn single_factor(group: &str) -> gensylow::Result<SimpleFactor> {
    let g = GroupSpec::parse(group)?;
    if g.factors.len() != 1 {
        return Err(gensylow::Error::InvalidGroup(
            "this command takes a single quasi-simple factor".into(),
        ));
    }
    Ok(g.factors[0])
}

fn print_sylow_text(r: &analyzer::SylowReport) {
    println!("group        {}   q = {}   ell = {}", r.group, r.q, r.ell);
    println!("d(ell)       {}", r.d_ell);
    println!("D(ell)       {:?}", r.big_d);
    match &r.chosen {
        Some(c) => {
            let subst = if c.subst > 1 {
                format!("(q^{})", c.subst)
            } else {
                String::new()
            };
            println!(
                "factor       {}{subst}, n_phi = {}, v_ell = {}",
                c.id, c.n_phi, c.v_phi
            );
        }
        None => println!("factor       (ell does not divide the order)"),
    }
    println!(
        "W_phi        degrees {:?}, order {}",
        r.w_phi_degrees, r.w_phi_order
    );
    println!("sylow order  {}", r.sylow_order);
    println!("abelian      {}", r.abelian);
    println!("exception    {}", r.exception);
    if r.correction_v > 0 {
        println!("centralizer  v_ell = {}", r.correction_v);
    }
    let parts: Vec<String> = r.torus_part.iter().map(|x| x.to_string()).collect();
    println!("torus part   [{}]", parts.join(", "));
}

fn run_weyl(cmd: WeylCmd) -> gensylow::Result<ExitCode> {
    match cmd {
        WeylCmd::Eigenspaces { group, d } => {
            let f = single_factor(&group)?;
            let cap = lattice::weyl_cap();
            let zetas: Vec<RootOfUnity> = if f.very_twisted {
                order::single_factor_order(&f)?
                    .factors
                    .keys()
                    .filter(|k| k.id.d() == d)
                    .map(|k| k.id.canonical_root())
                    .collect()
            } else {
                vec![RootOfUnity::primitive(d)]
            };
            if zetas.is_empty() {
                return Err(gensylow::Error::Unsupported(format!(
                    "no order factor of {f} lies over d = {d}"
                )));
            }
            for zeta in zetas {
                let s = lattice::max_eigenspace_search(&f, &zeta, cap)?;
                let degs = order::a_zeta(&f.generalized_degrees(), &zeta);
                println!(
                    "zeta = {zeta}: max eigenspace dim {}, a(zeta) = {:?}, witness word {:?}",
                    s.max_dim, degs, s.witness_word
                );
                if s.max_dim > 0 {
                    let nq = lattice::normalizer_quotient(&f, &zeta, Some(&s.witness), cap)?;
                    println!(
                        "  |N| = {}, |C| = {}, |N/C| = {}",
                        nq.n_order,
                        nq.c_order,
                        nq.order()
                    );
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        WeylCmd::Torus { group, w, q } => {
            let f = single_factor(&group)?;
            let q = QSpec::parse(&q)?;
            GroupSpec::single(f).validate_q(&q)?;
            let q1 = q.pow(f.descent);
            let rep = lattice::build_rep(&f, &q1)?;
            let word: Vec<u8> = w
                .chars()
                .map(|c| {
                    c.to_digit(10)
                        .filter(|&d| d >= 1 && d <= rep.rank as u32)
                        .map(|d| d as u8)
                        .ok_or_else(|| {
                            gensylow::Error::Parse(format!("bad generator {c:?} in word"))
                        })
                })
                .collect::<gensylow::Result<_>>()?;
            let mut wm = lattice::MatI64::identity(rep.rank);
            for g in &word {
                wm = wm.mul(&rep.reflections[*g as usize - 1]);
            }
            let wf = lattice::IntMat::from_small(&wm).mul(&rep.fstar);
            let cp = wf.charpoly();
            println!("char poly of wF*: {cp}");
            for cf in lattice::char_poly_factored(&cp, &q1)? {
                let label = cf
                    .id
                    .map(|i| i.to_string())
                    .unwrap_or_else(|| "anonymous".into());
                println!("  factor {label}: {} (multiplicity {})", cf.poly, cf.mult);
            }
            let inv = lattice::torus_fixed_points(&wf, None)?;
            let parts: Vec<String> = inv.iter().map(|x| x.to_string()).collect();
            println!("torus invariants: [{}]", parts.join(", "));
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn finish(name: &str, report: SweepReport) -> ExitCode {
    if report.ok() {
        println!("{name}: {} checks, no violations", report.checks);
        ExitCode::SUCCESS
    } else {
        println!(
            "{name}: {} checks, {} violations",
            report.checks,
            report.violations.len()
        );
        for v in report.violations.iter().take(5) {
            println!("  counterexample: {v}");
        }
        ExitCode::from(1)
    }
}

fn run_verify(suite: VerifySuite) -> gensylow::Result<ExitCode> {
    let cap = lattice::weyl_cap();
    Ok(match suite {
        VerifySuite::LemmaDiv { xmax, fmax, lmax } => {
            finish("lemma-div", verify_lemma_div(xmax, fmax, lmax))
        }
        VerifySuite::Divcyclo { qmax, emax, lmax } => {
            finish("divcyclo", verify_divcyclo(qmax, emax, lmax))
        }
        VerifySuite::Reduction { m } => {
            finish("reduction", lattice::verify_reduction_lemma(&m)?)
        }
        VerifySuite::OrderOracle => {
            finish("order-oracle", gensylow::oracle::verify_order_oracle()?)
        }
        VerifySuite::SylowOracle => {
            finish("sylow-oracle", analyzer::verify_sylow_oracle()?)
        }
        VerifySuite::Coset => finish("coset", lattice::verify_coset_suite(cap)?),
        VerifySuite::Descent => finish("descent", lattice::verify_descent_suite()?),
    })
}
