//! Command-line front end: decomposition formulas, verification of the
//! splitting maps, vertex and Kostka reports, and the acceptance runner.
//!
//! Exit codes: 0 = success, 1 = a verification failed, 2 = bad input.

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use specht_sym::acceptance;
use specht_sym::combinatorics::binomial;
use specht_sym::gf::{binom_mod_p, PrimeField};
use specht_sym::repring::{
    kostka_positivity_report, sym_d_formula, sym_m_formula, sym_s_formula, to_young_basis,
    RepRingElement,
};
use specht_sym::spechtmod;
use specht_sym::splitters;
use specht_sym::symalg::{SplitKind, SymContext};
use specht_sym::vertexcalc::{sd_vertex_report, SDKind};
use specht_sym::Error;

#[derive(Parser)]
#[command(
    name = "specht-sym",
    version,
    about = "Exact symmetric-power calculator for symmetric-group modules over GF(p)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the decomposition formula for Sym^r of M, S or D.
    Decompose {
        #[arg(short, long, default_value_t = 10)]
        n: u32,
        #[arg(short, long, default_value_t = 5)]
        p: u64,
        #[arg(short, long)]
        r: u32,
        #[arg(short, long, value_enum)]
        module: ModuleKind,
        #[arg(long)]
        json: bool,
    },
    /// Re-verify the explicit splitting maps by exact matrix identities.
    Verify {
        #[arg(short, long, default_value_t = 10)]
        n: u32,
        #[arg(short, long, default_value_t = 5)]
        p: u64,
        /// Degree cap override for the symmetric algebra contexts.
        #[arg(long)]
        cap: Option<usize>,
        #[arg(value_enum)]
        target: VerifyTarget,
    },
    /// Classify the vertices of the Young summands of Sym^r S or Sym^r D.
    Vertex {
        #[arg(short, long, default_value_t = 10)]
        n: u32,
        #[arg(short, long, default_value_t = 5)]
        p: u64,
        #[arg(short, long, value_enum)]
        module: SdArg,
        #[arg(short, long)]
        r: u32,
        #[arg(long)]
        json: bool,
    },
    /// Derive the positive p-Kostka numbers from the fourth power of D.
    Kostka {
        #[arg(short, long, default_value_t = 10)]
        n: u32,
        #[arg(short, long, default_value_t = 5)]
        p: u64,
        #[arg(long)]
        json: bool,
    },
    /// Run the full acceptance suite (SPECHT_SYM_THREADS caps parallelism).
    Accept {
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModuleKind {
    #[value(name = "M", alias = "m")]
    M,
    #[value(name = "S", alias = "s")]
    S,
    #[value(name = "D", alias = "d")]
    D,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SdArg {
    #[value(name = "S", alias = "s")]
    S,
    #[value(name = "D", alias = "d")]
    D,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum VerifyTarget {
    #[value(name = "zeta")]
    Zeta,
    #[value(name = "gamma")]
    Gamma,
    #[value(name = "chainM", alias = "chainm")]
    ChainM,
    #[value(name = "chainS", alias = "chains")]
    ChainS,
    #[value(name = "commutator")]
    Commutator,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            if e.is_input_error() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}

fn run(command: Command) -> Result<(), Error> {
    match command {
        Command::Decompose { n, p, r, module, json } => decompose(n, p, r, module, json),
        Command::Verify { n, p, cap, target } => verify(n, p, cap, target),
        Command::Vertex { n, p, module, r, json } => vertex(n, p, module, r, json),
        Command::Kostka { n, p, json } => kostka(n, p, json),
        Command::Accept { json } => accept(json),
    }
}

#[derive(Serialize)]
struct DecomposeOutput {
    n: u32,
    p: u64,
    r: u32,
    module: String,
    m_basis: RepRingElement,
    young: RepRingElement,
    remainder: RepRingElement,
    dimension: i128,
    dimension_expected: i128,
}

fn decompose(n: u32, p: u64, r: u32, module: ModuleKind, json: bool) -> Result<(), Error> {
    PrimeField::new(p)?;
    let (formula, expected_dim, label) = match module {
        ModuleKind::M => {
            if n < 2 {
                return Err(Error::Precondition("needs n >= 2".into()));
            }
            // The placement count behind the coefficients grows explosively
            // in r; keep the CLI at desk scale.
            if r > 64 {
                return Err(Error::Precondition("decompose -m M supports r <= 64".into()));
            }
            (
                sym_m_formula(n, r),
                binomial((n + r) as u64 - 1, r as u64) as i128,
                format!("Sym^{r} M^({},1)", n - 1),
            )
        }
        ModuleKind::S => (
            sym_s_formula(n, p, r)?,
            binomial((n + r) as u64 - 2, r as u64) as i128,
            format!("Sym^{r} S^({},1)", n - 1),
        ),
        ModuleKind::D => (
            sym_d_formula(n, p, r)?,
            binomial((n + r) as u64 - 3, r as u64) as i128,
            format!("Sym^{r} D^({},1)", n - 1),
        ),
    };
    let dimension = formula.dimension().expect("M-basis formula");
    if dimension != expected_dim {
        return Err(Error::VerificationFailed(format!(
            "dimension {dimension} != expected {expected_dim}"
        )));
    }
    let (young, remainder) = to_young_basis(&formula, p)?;

    if json {
        let out = DecomposeOutput {
            n,
            p,
            r,
            module: format!("{module:?}"),
            m_basis: formula,
            young,
            remainder,
            dimension,
            dimension_expected: expected_dim,
        };
        println!("{}", serde_json::to_string_pretty(&out).expect("serializable"));
    } else {
        println!("{label} over GF({p}), n = {n}");
        println!("  m-basis: {formula}");
        if remainder.is_zero() {
            println!("  young:   {young}");
        } else {
            println!("  young:   {young} + unconverted {remainder}");
        }
        println!("  dimension: {dimension} (expected {expected_dim}) ok");
    }
    Ok(())
}

fn verify(n: u32, p: u64, cap: Option<usize>, target: VerifyTarget) -> Result<(), Error> {
    let field = PrimeField::new(p)?;
    let n_us = n as usize;
    match target {
        VerifyTarget::Zeta => {
            let ctx = SymContext::new(spechtmod::natural_module(n_us, field)?, cap.unwrap_or(2))?;
            splitters::zeta(&ctx)?;
            println!("PASS zeta: equivariant on {} generators, boundary_2 o zeta = id", n - 1);
        }
        VerifyTarget::Gamma => {
            let (s, _) = spechtmod::specht_n11(n_us, field)?;
            let ctx = SymContext::new(s, cap.unwrap_or(3))?;
            splitters::gamma(&ctx)?;
            println!("PASS gamma: equivariant on {} generators, gamma o mul_2 = id", n - 1);
        }
        VerifyTarget::ChainM => {
            let chain = splitters::split_chain_m_capped(n_us, p, cap.unwrap_or(SymContext::default_cap(p)))?;
            for (k, _) in chain.sections.iter().enumerate() {
                println!("PASS section of boundary_{}", k + 2);
            }
            println!("PASS chainM: {} verified sections", chain.sections.len());
        }
        VerifyTarget::ChainS => {
            let chain = splitters::split_chain_s_capped(n_us, p, cap.unwrap_or(SymContext::default_cap(p)))?;
            for (k, _) in chain.retractions.iter().enumerate() {
                println!("PASS retraction of mul_{}", k + 2);
            }
            println!("PASS chainS: {} verified retractions", chain.retractions.len());
        }
        VerifyTarget::Commutator => {
            let cap = cap.unwrap_or(p as usize + 1);
            let mut checked = 0usize;
            let chain = splitters::split_chain_m_capped(n_us, p, cap)?;
            for (k, phi) in chain.sections.iter().enumerate() {
                let r = k + 2;
                for d in 0..=(cap - 1) {
                    let got = chain
                        .ctx
                        .commutator_scalar(SplitKind::BoundarySection, &chain.boundary, phi, d)?;
                    let expected = binom_mod_p(d as u64, (r - 1) as u64, p)?;
                    if got != expected {
                        return Err(Error::VerificationFailed(format!(
                            "section commutator r={r} d={d}: {got} != {expected}"
                        )));
                    }
                    checked += 1;
                }
                println!("PASS commutator scalars for the section of boundary_{r}");
            }
            if p >= 5 && n as u64 % p == 0 {
                let chain = splitters::split_chain_s_capped(n_us, p, cap)?;
                for (k, phi) in chain.retractions.iter().enumerate() {
                    let r = k + 3;
                    for d in 0..=(cap - 1) {
                        let got = chain
                            .ctx
                            .commutator_scalar(SplitKind::MulRetraction, &chain.mul, phi, d)?;
                        let expected = binom_mod_p(d as u64, (r - 1) as u64, p)?;
                        if got != expected {
                            return Err(Error::VerificationFailed(format!(
                                "retraction commutator r={r} d={d}: {got} != {expected}"
                            )));
                        }
                        checked += 1;
                    }
                    println!("PASS commutator scalars for the retraction of mul_{}", r - 1);
                }
            }
            let m_ctx = SymContext::new(spechtmod::natural_module(n_us, field)?, cap)?;
            for a in 0..=4.min(cap) {
                for d in 0..=(cap - 1) {
                    let got = m_ctx.lift_identity_scalar(a, d)?;
                    let expected = binom_mod_p(d as u64, a as u64, p)?;
                    if got != expected {
                        return Err(Error::VerificationFailed(format!(
                            "lifted identity a={a} d={d}: {got} != {expected}"
                        )));
                    }
                    checked += 1;
                }
            }
            println!("PASS lifted identities act by binomial scalars");
            println!("PASS commutator: {checked} scalar identities exact");
        }
    }
    Ok(())
}

fn vertex(n: u32, p: u64, module: SdArg, r: u32, json: bool) -> Result<(), Error> {
    let kind = match module {
        SdArg::S => SDKind::S,
        SdArg::D => SDKind::D,
    };
    let report = sd_vertex_report(n, p, kind, r)?;
    if json {
        println!("{}", serde_json::to_string_pretty(&report).expect("serializable"));
    } else {
        println!("Young classes of Sym^{r} {kind}^({},1) over GF({p}), n = {n}:", n - 1);
        for e in &report.entries {
            let status = if e.certified { "summand  " } else { "candidate" };
            println!(
                "  {status} Y^({}) -> Sylow p-subgroup of S_{} (case {})",
                e.mu, e.vertex_m, e.case
            );
        }
    }
    Ok(())
}

fn kostka(n: u32, p: u64, json: bool) -> Result<(), Error> {
    let report = kostka_positivity_report(n, p)?;
    if json {
        println!("{}", serde_json::to_string_pretty(&report).expect("serializable"));
    } else {
        println!("[Sym^4 D^({},1)] = {}", n - 1, report.mixed);
        println!("positive p-Kostka numbers (p = {p}):");
        for c in &report.certificates {
            println!("  [M^({}) : Y^({})] >= {}", c.lambda, c.mu, c.lower_bound);
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct AcceptOutput {
    criteria: Vec<AcceptLine>,
    all_passed: bool,
}

#[derive(Serialize)]
struct AcceptLine {
    id: usize,
    name: &'static str,
    passed: bool,
    detail: String,
}

fn accept(json: bool) -> Result<(), Error> {
    let threads = acceptance::thread_count_from_env();
    let outcomes = acceptance::run_all(threads);
    let all_passed = outcomes.iter().all(|o| o.passed);
    if json {
        let out = AcceptOutput {
            criteria: outcomes
                .iter()
                .map(|o| AcceptLine {
                    id: o.id,
                    name: o.name,
                    passed: o.passed,
                    detail: o.detail.clone(),
                })
                .collect(),
            all_passed,
        };
        println!("{}", serde_json::to_string_pretty(&out).expect("serializable"));
    } else {
        println!("acceptance suite ({threads} threads)");
        println!("{:-<78}", "");
        for o in &outcomes {
            let status = if o.passed { "PASS" } else { "FAIL" };
            println!("{status} {:2}. {:<58} {:>6} ms", o.id, o.name, o.duration.as_millis());
            println!("       {}", o.detail);
        }
        println!("{:-<78}", "");
        println!("{}", if all_passed { "all criteria passed" } else { "FAILURES PRESENT" });
    }
    if all_passed {
        Ok(())
    } else {
        Err(Error::VerificationFailed("acceptance criteria failed".into()))
    }
}
