//! The acceptance suite: one callable check per criterion, exact at every
//! step, plus a small runner that executes independent criteria on a
//! bounded number of threads (`SPECHT_SYM_THREADS`).

use std::sync::Arc;
use std::sync::Mutex;
use std::time::{Duration, Instant};

use crate::combinatorics::{binomial, partitions_of, Partition};
use crate::gf::{binom_mod_p, PrimeField};
use crate::modact::check_equivariance;
use crate::repring::{
    kostka_positivity_report, sym_d_formula, sym_s_formula, to_young_basis, young_expansion_hook2,
    young_expansion_two_row, BasisTag, RepRingElement,
};
use crate::spechtmod;
use crate::splitters;
use crate::symalg::{SplitKind, SymContext};
use crate::vertexcalc;
use crate::{Error, Result};

pub const CRITERIA_COUNT: usize = 10;

pub fn criterion_name(id: usize) -> &'static str {
    match id {
        1 => "splitting suite (boundary sections, 2 <= r <= p-1)",
        2 => "gamma suite (equivariance and retraction of mul_2)",
        3 => "S-chain suite (retractions of mul_2 and mul_3)",
        4 => "commutator scalars and binomial action of lifted identities",
        5 => "decomposition suite (blocks and worked formulas)",
        6 => "dimension identities via kernel/cokernel ranks",
        7 => "Young expansions (two-row, hook, cube of D)",
        8 => "p-Kostka positivity certificates",
        9 => "vertex suite (classification and cross-validation)",
        10 => "negative control (no retraction of mul_1 on S^(4,1))",
        _ => "unknown",
    }
}

#[derive(Debug, Clone)]
pub struct CriterionOutcome {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub duration: Duration,
}

pub fn run_criterion(id: usize) -> CriterionOutcome {
    let start = Instant::now();
    let result = match id {
        1 => splitting_suite(),
        2 => gamma_suite(),
        3 => s_chain_suite(),
        4 => commutator_suite(),
        5 => decomposition_suite(),
        6 => dimension_suite(),
        7 => young_expansion_suite(),
        8 => kostka_suite(),
        9 => vertex_suite(),
        10 => negative_control(),
        _ => Err(Error::Precondition(format!("no criterion {id}"))),
    };
    let duration = start.elapsed();
    match result {
        Ok(detail) => CriterionOutcome {
            id,
            name: criterion_name(id),
            passed: true,
            detail,
            duration,
        },
        Err(e) => CriterionOutcome {
            id,
            name: criterion_name(id),
            passed: false,
            detail: e.to_string(),
            duration,
        },
    }
}

/// Thread cap from SPECHT_SYM_THREADS; defaults to the available
/// parallelism, clamped to the number of criteria.
pub fn thread_count_from_env() -> usize {
    let default = std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1);
    let requested = std::env::var("SPECHT_SYM_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|&v| v >= 1)
        .unwrap_or(default);
    requested.clamp(1, CRITERIA_COUNT)
}

/// Runs all criteria, at most `threads` at a time, and returns the outcomes
/// ordered by criterion id.
pub fn run_all(threads: usize) -> Vec<CriterionOutcome> {
    let queue: Mutex<Vec<usize>> = Mutex::new((1..=CRITERIA_COUNT).rev().collect());
    let results: Mutex<Vec<Option<CriterionOutcome>>> = Mutex::new(vec![None; CRITERIA_COUNT]);
    let workers = threads.clamp(1, CRITERIA_COUNT);
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let next = queue.lock().unwrap().pop();
                let Some(id) = next else { break };
                let outcome = run_criterion(id);
                results.lock().unwrap()[id - 1] = Some(outcome);
            });
        }
    });
    results
        .into_inner()
        .unwrap()
        .into_iter()
        .map(|o| o.expect("every criterion ran"))
        .collect()
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::VerificationFailed(msg.into()))
    }
}

fn pt(parts: &[u32]) -> Partition {
    Partition::new(parts.to_vec()).expect("valid partition literal")
}

/// Criterion 1: boundary sections exist and compose to the identity for
/// (n, p) in {(5,5), (10,5), (6,3)}, all 2 <= r <= p-1, within 30 seconds.
fn splitting_suite() -> Result<String> {
    let start = Instant::now();
    let mut lines = Vec::new();
    for (n, p) in [(5usize, 5u64), (10, 5), (6, 3)] {
        let chain = splitters::split_chain_m(n, p)?;
        ensure(
            chain.sections.len() == (p - 2) as usize,
            format!("expected {} sections for (n,p)=({n},{p})", p - 2),
        )?;
        for (k, phi) in chain.sections.iter().enumerate() {
            let r = k + 2;
            let dr = chain
                .boundary
                .component(r)
                .ok_or(Error::DegreeOutOfRange(r, chain.ctx.cap()))?;
            ensure(
                dr.matmul(phi.matrix())?.is_identity(),
                format!("boundary_{r} o section != id for (n,p)=({n},{p})"),
            )?;
        }
        lines.push(format!("({n},{p}): {} sections exact", chain.sections.len()));
    }
    let elapsed = start.elapsed();
    ensure(
        elapsed < Duration::from_secs(30),
        format!("splitting suite took {} ms, budget is 30 s", elapsed.as_millis()),
    )?;
    Ok(lines.join("; "))
}

/// Criterion 2: gamma is equivariant on every Coxeter generator and
/// retracts mul_2, for (n, p) in {(5,5), (10,5)}.
fn gamma_suite() -> Result<String> {
    let mut lines = Vec::new();
    for n in [5usize, 10] {
        let field = PrimeField::new(5)?;
        let (s, _) = spechtmod::specht_n11(n, field)?;
        let ctx = SymContext::new(Arc::clone(&s), 3)?;
        let g = splitters::gamma(&ctx)?;
        let sym3 = ctx.sym_power(3)?;
        let sym2 = ctx.sym_power(2)?;
        ensure(
            check_equivariance(&sym3, &sym2, g.matrix()),
            format!("gamma not equivariant for n = {n}"),
        )?;
        let iota = spechtmod::iota_trivial_to_specht(&s)?;
        let mul = ctx.mul_map(&iota)?;
        ensure(
            g.matrix().matmul(mul.component(2).unwrap())?.is_identity(),
            format!("gamma o mul_2 != id for n = {n}"),
        )?;
        lines.push(format!("(n={n}, p=5): equivariant on {} generators, retraction exact", n - 1));
    }
    Ok(lines.join("; "))
}

/// Criterion 3: the S-chain for (10, 5) retracts mul_2 and mul_3 exactly.
fn s_chain_suite() -> Result<String> {
    let chain = splitters::split_chain_s(10, 5)?;
    ensure(chain.retractions.len() == 2, "expected retractions of mul_2 and mul_3")?;
    for (k, phi) in chain.retractions.iter().enumerate() {
        let r = k + 3;
        let x = chain
            .mul
            .component(r - 1)
            .ok_or(Error::DegreeOutOfRange(r - 1, chain.ctx.cap()))?;
        ensure(
            phi.matrix().matmul(x)?.is_identity(),
            format!("retraction of mul_{} failed", r - 1),
        )?;
    }
    Ok("(10,5): retractions of mul_2 and mul_3 exact".into())
}

/// Criterion 4: every produced section/retraction has commutator scalar
/// C(d, r-1) on all degrees d <= p, and lift(id on Sym^a) acts on degree d
/// as C(d, a), for a <= 4.
fn commutator_suite() -> Result<String> {
    let mut checked = 0usize;
    for (n, p) in [(5usize, 5u64), (10, 5), (6, 3)] {
        let cap = p as usize + 1;
        let chain = splitters::split_chain_m_capped(n, p, cap)?;
        for (k, phi) in chain.sections.iter().enumerate() {
            let r = k + 2;
            for d in 0..=p as usize {
                let got = chain
                    .ctx
                    .commutator_scalar(SplitKind::BoundarySection, &chain.boundary, phi, d)?;
                let expected = binom_mod_p(d as u64, (r - 1) as u64, p)?;
                ensure(
                    got == expected,
                    format!("section commutator (n,p)=({n},{p}) r={r} d={d}: {got} != {expected}"),
                )?;
                checked += 1;
            }
        }
    }
    for (n, p) in [(5usize, 5u64), (10, 5)] {
        let cap = p as usize + 1;
        let chain = splitters::split_chain_s_capped(n, p, cap)?;
        for (k, phi) in chain.retractions.iter().enumerate() {
            let r = k + 3;
            for d in 0..=p as usize {
                let got = chain
                    .ctx
                    .commutator_scalar(SplitKind::MulRetraction, &chain.mul, phi, d)?;
                let expected = binom_mod_p(d as u64, (r - 1) as u64, p)?;
                ensure(
                    got == expected,
                    format!("retraction commutator (n,p)=({n},{p}) r={r} d={d}: {got} != {expected}"),
                )?;
                checked += 1;
            }
        }
    }
    // Lifted identities act by binomial scalars, on both module families.
    for (n, p) in [(5usize, 5u64), (10, 5), (6, 3)] {
        let field = PrimeField::new(p)?;
        let cap = p as usize + 1;
        let m_ctx = SymContext::new(spechtmod::natural_module(n, field)?, cap)?;
        let (s, _) = spechtmod::specht_n11(n, field)?;
        let s_ctx = SymContext::new(s, cap)?;
        for ctx in [&m_ctx, &s_ctx] {
            for a in 0..=4usize.min(cap) {
                for d in 0..=p as usize {
                    let got = ctx.lift_identity_scalar(a, d)?;
                    let expected = binom_mod_p(d as u64, a as u64, p)?;
                    ensure(
                        got == expected,
                        format!("lifted identity (n,p)=({n},{p}) a={a} d={d}: {got} != {expected}"),
                    )?;
                    checked += 1;
                }
            }
        }
    }
    Ok(format!("{checked} scalar identities exact"))
}

/// Criterion 5: the block decomposition for n = 10, r = 1..4 matches the
/// known shape table with every multiplicity 1, and the five worked
/// formulas hold verbatim.
fn decomposition_suite() -> Result<String> {
    let field = PrimeField::new(5)?;
    let table: [(usize, Vec<Partition>); 4] = [
        (1, vec![pt(&[9, 1])]),
        (2, vec![pt(&[9, 1]), pt(&[8, 2])]),
        (3, vec![pt(&[9, 1]), pt(&[8, 1, 1]), pt(&[7, 3])]),
        (
            4,
            vec![pt(&[9, 1]), pt(&[8, 2]), pt(&[8, 1, 1]), pt(&[7, 2, 1]), pt(&[6, 4])],
        ),
    ];
    for (r, expected) in &table {
        let blocks = spechtmod::sym_m_block_decomposition(10, field, *r)?;
        let mut shapes: Vec<Partition> = blocks.iter().map(|b| b.lambda.clone()).collect();
        let mut expected = expected.clone();
        shapes.sort();
        expected.sort();
        ensure(
            shapes == expected,
            format!("block shapes for r = {r} do not match the table"),
        )?;
        let total: usize = blocks.iter().map(|b| b.module.dim()).sum();
        ensure(
            total as u128 == binomial((10 + r - 1) as u64, *r as u64),
            format!("block dimensions for r = {r} do not fill Sym^r"),
        )?;
        for b in &blocks {
            ensure(
                b.witness.rank() == b.module.dim(),
                format!("block witness for {} is not bijective", b.lambda),
            )?;
        }
    }

    let elem = |terms: &[(&[u32], i64)]| {
        let mut e = RepRingElement::zero();
        for (parts, c) in terms {
            e.add_term(BasisTag::M, pt(parts), *c);
        }
        e
    };
    let cases: [(RepRingElement, RepRingElement); 5] = [
        (sym_s_formula(10, 5, 2)?, elem(&[(&[8, 2], 1)])),
        (
            sym_s_formula(10, 5, 3)?,
            elem(&[(&[8, 1, 1], 1), (&[7, 3], 1), (&[8, 2], -1)]),
        ),
        (
            sym_s_formula(10, 5, 4)?,
            elem(&[(&[8, 2], 1), (&[7, 2, 1], 1), (&[6, 4], 1), (&[7, 3], -1)]),
        ),
        (
            sym_d_formula(10, 5, 3)?,
            elem(&[(&[8, 1, 1], 1), (&[7, 3], 1), (&[8, 2], -2)]),
        ),
        (
            sym_d_formula(10, 5, 4)?,
            elem(&[
                (&[8, 2], 2),
                (&[7, 2, 1], 1),
                (&[6, 4], 1),
                (&[8, 1, 1], -1),
                (&[7, 3], -2),
            ]),
        ),
    ];
    for (i, (got, expected)) in cases.iter().enumerate() {
        ensure(got == expected, format!("worked formula {} differs: {got}", i + 1))?;
    }
    Ok("blocks r=1..4 match the table; 5 worked formulas verbatim".into())
}

/// Criterion 6: dim Sym^r S = C(n+r-2, r) via the kernel of boundary_r, and
/// dim Sym^r D = C(n+r-3, r) via the cokernel of mul_{r-1}, for n in
/// {5, 10}, p = 5, r <= 4.
fn dimension_suite() -> Result<String> {
    let field = PrimeField::new(5)?;
    let mut checked = 0usize;
    for n in [5usize, 10] {
        let m_ctx = SymContext::new(spechtmod::natural_module(n, field)?, 4)?;
        let eps = spechtmod::epsilon(m_ctx.base())?;
        let boundary = m_ctx.boundary(&eps)?;
        let (s, _) = spechtmod::specht_n11(n, field)?;
        let s_ctx = SymContext::new(Arc::clone(&s), 4)?;
        let iota = spechtmod::iota_trivial_to_specht(&s)?;
        let mul = s_ctx.mul_map(&iota)?;
        for r in 1..=4usize {
            let kernel_dim = m_ctx.dim(r) - boundary.component(r).unwrap().rank();
            ensure(
                kernel_dim as u128 == binomial((n + r - 2) as u64, r as u64),
                format!("kernel dimension for n = {n}, r = {r}"),
            )?;
            let coker_dim = s_ctx.dim(r) - mul.component(r - 1).unwrap().rank();
            ensure(
                coker_dim as u128 == binomial((n + r - 3) as u64, r as u64),
                format!("cokernel dimension for n = {n}, r = {r}"),
            )?;
            checked += 2;
        }
    }
    Ok(format!("{checked} rank identities exact"))
}

/// Criterion 7: the displayed two-row and hook expansions for p = 5 and
/// p = 7 with p | n, and the full conversion of the cube of D^(9,1).
fn young_expansion_suite() -> Result<String> {
    let y = |terms: &[&[u32]]| {
        let mut e = RepRingElement::zero();
        for parts in terms {
            e.add_term(BasisTag::Y, pt(parts), 1);
        }
        e
    };
    for (n, p) in [(10u32, 5u64), (20, 5), (14, 7), (21, 7)] {
        let e = young_expansion_two_row(&pt(&[n - 2, 2]), p)?;
        ensure(
            e == y(&[&[n - 2, 2], &[n - 1, 1]]),
            format!("M^(n-2,2) expansion for (n,p)=({n},{p})"),
        )?;
        let e = young_expansion_two_row(&pt(&[n - 3, 3]), p)?;
        ensure(
            e == y(&[&[n - 3, 3], &[n - 2, 2], &[n - 1, 1]]),
            format!("M^(n-3,3) expansion for (n,p)=({n},{p})"),
        )?;
        let e = young_expansion_two_row(&pt(&[n - 4, 4]), p)?;
        let expected = if p == 5 {
            y(&[&[n - 4, 4], &[n - 3, 3], &[n - 1, 1]])
        } else {
            y(&[&[n - 4, 4], &[n - 3, 3], &[n - 2, 2], &[n - 1, 1]])
        };
        ensure(e == expected, format!("M^(n-4,4) expansion for (n,p)=({n},{p})"))?;

        if n as u64 % p == 0 {
            let e = young_expansion_hook2(n, p)?;
            ensure(
                e == y(&[&[n - 1, 1], &[n - 2, 2], &[n - 2, 1, 1]]),
                format!("hook expansion for (n,p)=({n},{p})"),
            )?;
        }
    }

    let d3 = sym_d_formula(10, 5, 3)?;
    ensure(d3.dimension() == Some(120), "cube of D^(9,1) should have dimension 120")?;
    let (young, remainder) = to_young_basis(&d3, 5)?;
    ensure(remainder.is_zero(), "cube of D^(9,1) should convert completely")?;
    ensure(
        young == y(&[&[8, 1, 1], &[7, 3]]),
        format!("cube of D^(9,1) converted to {young}"),
    )?;
    Ok("expansions for (10,5),(20,5),(14,7),(21,7) and the cube of D^(9,1) exact".into())
}

/// Criterion 8: the mixed-basis fourth-power equation and its positivity
/// certificates, for (10,5) and (14,7).
fn kostka_suite() -> Result<String> {
    let report = kostka_positivity_report(10, 5)?;
    let mut expected = RepRingElement::term(BasisTag::M, pt(&[7, 2, 1]), 1);
    expected.add_term(BasisTag::Y, pt(&[6, 4]), 1);
    expected.add_term(BasisTag::Y, pt(&[7, 3]), -1);
    expected.add_term(BasisTag::Y, pt(&[8, 2]), -1);
    expected.add_term(BasisTag::Y, pt(&[8, 1, 1]), -1);
    ensure(
        report.mixed == expected,
        format!("mixed equation for (10,5): {}", report.mixed),
    )?;
    ensure(report.certificates.len() == 3, "(10,5) should yield 3 certificates")?;

    let report = kostka_positivity_report(14, 7)?;
    let mut expected = RepRingElement::term(BasisTag::M, pt(&[11, 2, 1]), 1);
    expected.add_term(BasisTag::Y, pt(&[10, 4]), 1);
    expected.add_term(BasisTag::Y, pt(&[11, 3]), -1);
    expected.add_term(BasisTag::Y, pt(&[12, 1, 1]), -1);
    ensure(
        report.mixed == expected,
        format!("mixed equation for (14,7): {}", report.mixed),
    )?;
    ensure(report.certificates.len() == 2, "(14,7) should yield 2 certificates")?;
    Ok("3 certificates at (10,5), 2 at (14,7), equations verbatim".into())
}

/// Criterion 9: vertex classification for n = 10, p = 5 across all covered
/// powers; agreement of the two vertex rules on every window partition of
/// n <= 20; and the small-degree dimension control.
fn vertex_suite() -> Result<String> {
    let mut entries = 0usize;
    for (kind, r_range) in [(vertexcalc::SDKind::S, 2..=4u32), (vertexcalc::SDKind::D, 3..=4u32)] {
        for r in r_range {
            let report = vertexcalc::sd_vertex_report(10, 5, kind, r)?;
            ensure(!report.entries.is_empty(), format!("empty report for {kind} r={r}"))?;
            for e in &report.entries {
                ensure(
                    e.vertex_m == 5 || e.vertex_m == 0,
                    format!("unexpected vertex S_{} for {}", e.vertex_m, e.mu),
                )?;
            }
            entries += report.entries.len();
        }
    }

    let mut window = 0usize;
    for p in [2u64, 3, 5, 7] {
        for n in (1..=20u32).filter(|n| *n as u64 % p == 0) {
            for mu in partitions_of(n) {
                let mu1 = mu.first() as u64;
                if mu1 <= n as u64 - p || mu1 >= n as u64 {
                    continue;
                }
                vertexcalc::vertex_case(&mu, n, p)?;
                window += 1;
            }
        }
    }

    for (n, p) in [(10u32, 5u64), (5, 5), (6, 3), (15, 5), (20, 5), (14, 7)] {
        ensure(
            vertexcalc::small_power_dims_prime_to_p(n, p)?,
            format!("small-degree dimensions for (n,p)=({n},{p}) are not prime to p"),
        )?;
    }
    Ok(format!(
        "{entries} summand/candidate labels classified; {window} window partitions cross-validated"
    ))
}

/// Criterion 10: exhaustive linear search certifies that mul_1 on S^(4,1)
/// over GF(5) has no equivariant retraction; the same solver does find the
/// degree-3 retraction.
fn negative_control() -> Result<String> {
    let field = PrimeField::new(5)?;
    let (s, _) = spechtmod::specht_n11(5, field)?;
    let iota = spechtmod::iota_trivial_to_specht(&s)?;
    let ctx = SymContext::new(s, 3)?;
    let mul = ctx.mul_map(&iota)?;
    ensure(
        splitters::find_retraction_of_mul(&ctx, &mul, 2)?.is_none(),
        "an unexpected retraction of mul_1 exists",
    )?;
    ensure(
        splitters::find_retraction_of_mul(&ctx, &mul, 3)?.is_some(),
        "solver failed to find the degree-3 retraction",
    )?;
    Ok("infeasibility certified for mul_1; positive control at degree 3".into())
}
