//! Explicit splitting maps between consecutive symmetric powers.
//!
//! Two seed maps are built directly: the squaring section zeta of the
//! boundary on a permutation module, and the degree 3 -> 2 retraction gamma
//! of the multiplication map on the standard module when p divides n. From
//! a verified splitting in one degree, `theta_up` and `theta_down` produce
//! a verified splitting one degree higher, and the chain constructors
//! iterate this up to degree p - 1. Every map constructed here is
//! re-verified by an exact matrix identity before it is returned.

use std::sync::Arc;

use crate::error::Error;
use crate::gf::Matrix;
use crate::modact::{GModule, ModuleHom};
use crate::symalg::{GradedEndo, SymContext};
use crate::Result;

/// The section zeta of boundary_2 on a module with a permutation basis:
/// x_i maps to x_i^2 / 2. Needs odd characteristic.
pub fn zeta(ctx: &SymContext) -> Result<ModuleHom> {
    let field = ctx.field();
    if field.modulus() == 2 {
        return Err(Error::Precondition("zeta needs odd characteristic".into()));
    }
    if ctx.cap() < 2 {
        return Err(Error::DegreeOutOfRange(2, ctx.cap()));
    }
    if !ctx.base().has_permutation_basis() {
        return Err(Error::Precondition("zeta needs a permutation basis".into()));
    }
    let inv2 = field.inv(2);
    let t = ctx.t();
    let mut mat = Matrix::zeros(field, ctx.dim(2), t);
    for i in 0..t {
        let mut square = vec![0u32; t];
        square[i] = 2;
        let row = ctx
            .index_of(2, &crate::combinatorics::Composition::new(square))
            .expect("square of a variable");
        mat[(row, i)] = inv2;
    }
    let hom = ModuleHom::new(ctx.sym_power(1)?, ctx.sym_power(2)?, mat)?;

    let eps = crate::spechtmod::epsilon(ctx.base())?;
    let boundary = ctx.boundary(&eps)?;
    let d2 = boundary.component(2).expect("cap >= 2");
    if !d2.matmul(hom.matrix())?.is_identity() {
        return Err(Error::VerificationFailed("boundary_2 o zeta is not the identity".into()));
    }
    Ok(hom)
}

/// The retraction gamma: Sym^3 S -> Sym^2 S of the multiplication map on
/// the standard module S^(n-1,1) in the e-basis, for odd p with p | n.
/// Defined on the three monomial shapes by
///   e_i^3         |-> -1/2 e_i sum_l e_l,
///   e_i^2 e_j     |->  1/2 (e_i e_j - e_i^2 - e_j^2) - 1/4 sum_l e_l^2,
///   e_i e_j e_k   |-> -1/4 (e_i^2 + e_j^2 + e_k^2 + sum_l e_l^2).
/// Equivariance and gamma o mul_2 = id are verified exactly.
pub fn gamma(ctx: &SymContext) -> Result<ModuleHom> {
    let field = ctx.field();
    let p = field.modulus();
    let n = ctx.n();
    if p == 2 {
        return Err(Error::Precondition("gamma needs odd characteristic".into()));
    }
    if n as u64 % p != 0 {
        return Err(Error::Precondition(format!("gamma needs p | n, got n = {n}, p = {p}")));
    }
    if n < 3 || ctx.t() != n - 1 {
        return Err(Error::Precondition(
            "gamma needs the (n-1)-dimensional standard module".into(),
        ));
    }
    if ctx.cap() < 3 {
        return Err(Error::DegreeOutOfRange(3, ctx.cap()));
    }
    let t = ctx.t();
    let inv2 = field.inv(2);
    let inv4 = field.mul(inv2, inv2);
    let neg = |v: u64| field.neg(v);

    let square_index: Vec<usize> = (0..t)
        .map(|l| {
            let mut e = vec![0u32; t];
            e[l] = 2;
            ctx.index_of(2, &crate::combinatorics::Composition::new(e)).unwrap()
        })
        .collect();
    let pair_index = |i: usize, j: usize| -> usize {
        let mut e = vec![0u32; t];
        e[i] += 1;
        e[j] += 1;
        ctx.index_of(2, &crate::combinatorics::Composition::new(e)).unwrap()
    };

    let mut mat = Matrix::zeros(field, ctx.dim(2), ctx.dim(3));
    for (col, beta) in ctx.monomials(3).iter().enumerate() {
        let support: Vec<(usize, u32)> = (0..t).map(|i| (i, beta.get(i))).filter(|&(_, e)| e > 0).collect();
        let mut column = vec![0u64; ctx.dim(2)];
        match support.as_slice() {
            // e_i^3 -> -1/2 e_i sum_l e_l
            [(i, 3)] => {
                for l in 0..t {
                    let idx = pair_index(*i, l);
                    column[idx] = field.add(column[idx], neg(inv2));
                }
            }
            // e_i^2 e_j (the exponent-2 slot is i)
            [(a, ea), (b, _)] => {
                let (i, j) = if *ea == 2 { (*a, *b) } else { (*b, *a) };
                column[pair_index(i, j)] = field.add(column[pair_index(i, j)], inv2);
                column[square_index[i]] = field.sub(column[square_index[i]], inv2);
                column[square_index[j]] = field.sub(column[square_index[j]], inv2);
                for l in 0..t {
                    column[square_index[l]] = field.sub(column[square_index[l]], inv4);
                }
            }
            // e_i e_j e_k
            [(i, 1), (j, 1), (k, 1)] => {
                for l in [*i, *j, *k] {
                    column[square_index[l]] = field.sub(column[square_index[l]], inv4);
                }
                for l in 0..t {
                    column[square_index[l]] = field.sub(column[square_index[l]], inv4);
                }
            }
            _ => unreachable!("degree-3 monomials have one of three shapes"),
        }
        mat.set_column(col, &column);
    }

    let hom = ModuleHom::new(ctx.sym_power(3)?, ctx.sym_power(2)?, mat)?;

    let iota = ModuleHom::new(
        GModule::trivial(n, field),
        Arc::clone(ctx.base()),
        Matrix::from_fn(field, t, 1, |_, _| 1),
    )?;
    let mul = ctx.mul_map(&iota)?;
    let x2 = mul.component(2).expect("cap >= 3");
    if !hom.matrix().matmul(x2)?.is_identity() {
        return Err(Error::VerificationFailed("gamma o mul_2 is not the identity".into()));
    }
    Ok(hom)
}

fn check_theta_degree(r: usize, p: u64) -> Result<(u64, u64)> {
    let r_mod = r as u64 % p;
    if r_mod == 0 || r_mod == p - 1 {
        return Err(Error::Precondition(format!(
            "theta needs r not congruent to 0 or -1 mod p, got r = {r}, p = {p}"
        )));
    }
    Ok((r as u64, r as u64 + 1))
}

/// From a verified section phi of boundary_r, the section
///   theta = 1/r (lift(phi) - lift(phi)^2 o boundary / (r+1))
/// of boundary_{r+1}, restricted to Sym^r. The input identity is
/// re-verified, and the output identity is verified before returning.
pub fn theta_up(ctx: &SymContext, boundary: &GradedEndo, phi: &ModuleHom, r: usize) -> Result<ModuleHom> {
    let field = ctx.field();
    let (rv, rv1) = check_theta_degree(r, field.modulus())?;
    let (a, b) = ctx.hom_degrees(phi)?;
    if a + 1 != b || b != r {
        return Err(Error::ShapeMismatch(format!(
            "expected a section Sym^{} -> Sym^{}, got Sym^{a} -> Sym^{b}",
            r - 1,
            r
        )));
    }
    let dr = boundary.component(r).ok_or(Error::DegreeOutOfRange(r, ctx.cap()))?;
    if !dr.matmul(phi.matrix())?.is_identity() {
        return Err(Error::VerificationFailed(format!(
            "input is not a section of boundary_{r}"
        )));
    }

    let inv_r = field.inv(rv % field.modulus());
    let inv_r1 = field.inv(rv1 % field.modulus());
    let psi_r = ctx.lift_component(phi.matrix(), r - 1, r, r)?;
    let phi_after_boundary = phi.matrix().matmul(dr)?;
    let correction = psi_r.matmul(&phi_after_boundary)?.scale(inv_r1);
    let theta = psi_r.sub(&correction)?.scale(inv_r);

    let hom = ModuleHom::new(ctx.sym_power(r)?, ctx.sym_power(r + 1)?, theta)?;
    let dr1 = boundary
        .component(r + 1)
        .ok_or(Error::DegreeOutOfRange(r + 1, ctx.cap()))?;
    if !dr1.matmul(hom.matrix())?.is_identity() {
        return Err(Error::VerificationFailed(format!(
            "constructed map is not a section of boundary_{}",
            r + 1
        )));
    }
    Ok(hom)
}

/// From a verified retraction phi of mul_{r-1}, the retraction
///   theta = 1/r (lift(phi) - mul o lift(phi)^2 / (r+1))
/// of mul_r, restricted to Sym^{r+1}. Verified on both ends like
/// [`theta_up`].
pub fn theta_down(ctx: &SymContext, mul: &GradedEndo, phi: &ModuleHom, r: usize) -> Result<ModuleHom> {
    let field = ctx.field();
    let (rv, rv1) = check_theta_degree(r, field.modulus())?;
    let (a, b) = ctx.hom_degrees(phi)?;
    if b + 1 != a || a != r {
        return Err(Error::ShapeMismatch(format!(
            "expected a retraction Sym^{} -> Sym^{}, got Sym^{a} -> Sym^{b}",
            r,
            r - 1
        )));
    }
    let x_prev = mul
        .component(r - 1)
        .ok_or(Error::DegreeOutOfRange(r - 1, ctx.cap()))?;
    if !phi.matrix().matmul(x_prev)?.is_identity() {
        return Err(Error::VerificationFailed(format!(
            "input is not a retraction of mul_{}",
            r - 1
        )));
    }

    let inv_r = field.inv(rv % field.modulus());
    let inv_r1 = field.inv(rv1 % field.modulus());
    let psi_next = ctx.lift_component(phi.matrix(), r, r - 1, r + 1)?;
    let phi_psi = phi.matrix().matmul(&psi_next)?;
    let correction = x_prev.matmul(&phi_psi)?.scale(inv_r1);
    let theta = psi_next.sub(&correction)?.scale(inv_r);

    let hom = ModuleHom::new(ctx.sym_power(r + 1)?, ctx.sym_power(r)?, theta)?;
    let x_r = mul.component(r).ok_or(Error::DegreeOutOfRange(r, ctx.cap()))?;
    if !hom.matrix().matmul(x_r)?.is_identity() {
        return Err(Error::VerificationFailed(format!(
            "constructed map is not a retraction of mul_{r}"
        )));
    }
    Ok(hom)
}

/// A verified chain of sections of the boundary maps on Sym M^(n-1,1).
pub struct MChain {
    pub ctx: SymContext,
    pub boundary: GradedEndo,
    /// sections[k] is a section of boundary_{k+2}, for 2 <= k+2 <= p-1.
    pub sections: Vec<ModuleHom>,
}

/// Sections of boundary_r on the natural permutation module for all
/// 2 <= r <= p-1, built from zeta by repeated `theta_up`.
pub fn split_chain_m(n: usize, p: u64) -> Result<MChain> {
    split_chain_m_capped(n, p, SymContext::default_cap(p))
}

pub fn split_chain_m_capped(n: usize, p: u64, cap: usize) -> Result<MChain> {
    if p < 3 {
        return Err(Error::Precondition("the splitting range 2 <= r <= p-1 is empty for p = 2".into()));
    }
    // The chain reaches Sym^{p-1}.
    let needed = (p as usize - 1).max(2);
    if cap < needed {
        return Err(Error::DegreeOutOfRange(needed, cap));
    }
    let field = crate::gf::PrimeField::new(p)?;
    let natural = crate::spechtmod::natural_module(n, field)?;
    let ctx = SymContext::new(natural, cap)?;
    let eps = crate::spechtmod::epsilon(ctx.base())?;
    let boundary = ctx.boundary(&eps)?;
    let mut sections = vec![zeta(&ctx)?];
    for r in 2..=(p as usize).saturating_sub(2) {
        let next = theta_up(&ctx, &boundary, sections.last().unwrap(), r)?;
        sections.push(next);
    }
    Ok(MChain { ctx, boundary, sections })
}

/// A verified chain of retractions of the multiplication maps on
/// Sym S^(n-1,1).
pub struct SChain {
    pub ctx: SymContext,
    pub mul: GradedEndo,
    /// retractions[k] is a retraction of mul_{k+2}: Sym^{k+2} -> Sym^{k+3},
    /// i.e. a map Sym^{k+3} -> Sym^{k+2}, for 3 <= k+3 <= p-1.
    pub retractions: Vec<ModuleHom>,
}

/// Retractions of mul_{r-1} on the standard module for all 3 <= r <= p-1,
/// built from gamma by repeated `theta_down`. Needs p >= 5 and p | n.
pub fn split_chain_s(n: usize, p: u64) -> Result<SChain> {
    split_chain_s_capped(n, p, SymContext::default_cap(p))
}

pub fn split_chain_s_capped(n: usize, p: u64, cap: usize) -> Result<SChain> {
    if p < 5 {
        return Err(Error::Precondition(
            "the splitting range 3 <= r <= p-1 is empty unless p >= 5".into(),
        ));
    }
    let needed = p as usize - 1;
    if cap < needed {
        return Err(Error::DegreeOutOfRange(needed, cap));
    }
    let field = crate::gf::PrimeField::new(p)?;
    if n as u64 % p != 0 {
        return Err(Error::Precondition(format!("split chain on S needs p | n, got n = {n}, p = {p}")));
    }
    let (specht, _) = crate::spechtmod::specht_n11(n, field)?;
    let iota = crate::spechtmod::iota_trivial_to_specht(&specht)?;
    let ctx = SymContext::new(specht, cap)?;
    let mul = ctx.mul_map(&iota)?;
    let mut retractions = vec![gamma(&ctx)?];
    for r in 3..=(p as usize).saturating_sub(2) {
        let next = theta_down(&ctx, &mul, retractions.last().unwrap(), r)?;
        retractions.push(next);
    }
    Ok(SChain { ctx, mul, retractions })
}

/// Exhaustive linear search for an equivariant retraction of
/// mul_{r-1}: Sym^{r-1} -> Sym^r. The unknown matrix is solved for under
/// the equivariance and retraction constraints; `None` certifies that no
/// retraction exists (the combined linear system is infeasible).
pub fn find_retraction_of_mul(ctx: &SymContext, mul: &GradedEndo, r: usize) -> Result<Option<ModuleHom>> {
    if r < 1 || r > ctx.cap() {
        return Err(Error::DegreeOutOfRange(r, ctx.cap()));
    }
    let field = ctx.field();
    let d1 = ctx.dim(r - 1);
    let d2 = ctx.dim(r);
    let src = ctx.sym_power(r)?;
    let tgt = ctx.sym_power(r - 1)?;
    let x = mul.component(r - 1).ok_or(Error::DegreeOutOfRange(r - 1, ctx.cap()))?;

    let vars = d1 * d2;
    let n_gens = ctx.n() - 1;
    let rows = n_gens * d1 * d2 + d1 * d1;
    let mut a = Matrix::zeros(field, rows, vars);
    let mut b = vec![0u64; rows];
    let var = |i: usize, l: usize| i * d2 + l;

    let mut row = 0;
    for m in 1..ctx.n() {
        let g_src = src.gen(m);
        let g_tgt = tgt.gen(m);
        for i in 0..d1 {
            for j in 0..d2 {
                // (R g_src - g_tgt R)[i, j] = 0.
                for l in 0..d2 {
                    let c = g_src[(l, j)];
                    if c != 0 {
                        let idx = var(i, l);
                        a[(row, idx)] = field.add(a[(row, idx)], c);
                    }
                }
                for k in 0..d1 {
                    let c = g_tgt[(i, k)];
                    if c != 0 {
                        let idx = var(k, j);
                        a[(row, idx)] = field.sub(a[(row, idx)], c);
                    }
                }
                row += 1;
            }
        }
    }
    for i in 0..d1 {
        for j in 0..d1 {
            // (R X)[i, j] = delta_{ij}.
            for k in 0..d2 {
                let c = x[(k, j)];
                if c != 0 {
                    let idx = var(i, k);
                    a[(row, idx)] = field.add(a[(row, idx)], c);
                }
            }
            b[row] = u64::from(i == j);
            row += 1;
        }
    }

    let Some(solution) = a.solve(&b)? else {
        return Ok(None);
    };
    let matrix = Matrix::from_fn(field, d1, d2, |i, j| solution[var(i, j)]);
    let hom = ModuleHom::new(src, tgt, matrix)?;
    if !hom.matrix().matmul(x)?.is_identity() {
        return Err(Error::VerificationFailed("solver returned a non-retraction".into()));
    }
    Ok(Some(hom))
}
