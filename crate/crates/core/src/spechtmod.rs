//! Concrete models of the modules M^lambda, S^(n-1,1) and D^(n-1,1), and
//! the block decomposition of Sym^r M^(n-1,1) into Young permutation
//! modules.
//!
//! M^(n-1,1) is the natural permutation module on x_1, ..., x_n. Its
//! standard submodule S^(n-1,1) carries the basis e_i = x_i - x_n. A Young
//! permutation module M^lambda is realized on the monomials whose exponent
//! multiset has block sizes lambda, with distinct exponent values 0, 1, ...
//! assigned to the blocks in order; the symmetric group permutes exponent
//! positions. Sym^r M^(n-1,1) splits as the direct sum of such blocks,
//! grouped by exponent multiset, and the multiset-preserving relabeling is
//! the isomorphism witness onto the canonical model.

use std::collections::HashMap;
use std::sync::Arc;

use crate::combinatorics::Partition;
use crate::error::Error;
use crate::gf::{Matrix, PrimeField};
use crate::modact::{quotient_module, GModule, ModuleHom};
use crate::symalg::SymContext;
use crate::Result;

/// The natural n-dimensional permutation module: s_m swaps coordinates
/// m and m+1.
pub fn natural_module(n: usize, field: PrimeField) -> Result<Arc<GModule>> {
    if n < 2 {
        return Err(Error::Precondition(format!("natural module needs n >= 2, got {n}")));
    }
    let mut gens = Vec::with_capacity(n - 1);
    for m in 0..n - 1 {
        let mut g = Matrix::identity(field, n);
        g[(m, m)] = 0;
        g[(m + 1, m + 1)] = 0;
        g[(m, m + 1)] = 1;
        g[(m + 1, m)] = 1;
        gens.push(g);
    }
    GModule::new(n, field, n, gens)
}

/// The surjection onto the trivial module sending every basis vector to 1.
pub fn epsilon(module: &Arc<GModule>) -> Result<ModuleHom> {
    let field = module.field();
    let k = GModule::trivial(module.n(), field);
    let row = Matrix::from_fn(field, 1, module.dim(), |_, _| 1);
    ModuleHom::new(Arc::clone(module), k, row)
}

/// The injection of the trivial module sending 1 to the sum of the basis.
/// Equivariant for any permutation basis.
pub fn iota_trivial_to_natural(module: &Arc<GModule>) -> Result<ModuleHom> {
    let field = module.field();
    let k = GModule::trivial(module.n(), field);
    let col = Matrix::from_fn(field, module.dim(), 1, |_, _| 1);
    ModuleHom::new(k, Arc::clone(module), col)
}

/// The standard (n-1)-dimensional module with basis e_i = x_i - x_n,
/// together with its inclusion into the natural module.
///
/// In the e-basis, s_m for m < n-1 swaps e_m and e_{m+1}, while s_{n-1}
/// sends e_i to e_i - e_{n-1} for i < n-1 and e_{n-1} to -e_{n-1}.
pub fn specht_n11(n: usize, field: PrimeField) -> Result<(Arc<GModule>, ModuleHom)> {
    if n < 3 {
        return Err(Error::Precondition(format!("S^(n-1,1) model needs n >= 3, got {n}")));
    }
    let dim = n - 1;
    let last = dim - 1;
    let mut gens = Vec::with_capacity(n - 1);
    for m in 0..n - 2 {
        let mut g = Matrix::identity(field, dim);
        g[(m, m)] = 0;
        g[(m + 1, m + 1)] = 0;
        g[(m, m + 1)] = 1;
        g[(m + 1, m)] = 1;
        gens.push(g);
    }
    let mut g = Matrix::zeros(field, dim, dim);
    for j in 0..last {
        g[(j, j)] = 1;
        g[(last, j)] = field.neg(1);
    }
    g[(last, last)] = field.neg(1);
    gens.push(g);
    let specht = GModule::new(n, field, dim, gens)?;

    let natural = natural_module(n, field)?;
    let mut incl = Matrix::zeros(field, n, dim);
    for j in 0..dim {
        incl[(j, j)] = 1;
        incl[(n - 1, j)] = field.neg(1);
    }
    let inclusion = ModuleHom::new(Arc::clone(&specht), natural, incl)?;
    Ok((specht, inclusion))
}

/// The injection K -> S^(n-1,1) sending 1 to e_1 + ... + e_{n-1}. It is
/// equivariant exactly when p divides n.
pub fn iota_trivial_to_specht(specht: &Arc<GModule>) -> Result<ModuleHom> {
    let field = specht.field();
    let n = specht.n();
    if n as u64 % field.modulus() != 0 {
        return Err(Error::Precondition(format!(
            "K -> S^(n-1,1) needs p | n, got n = {n}, p = {}",
            field.modulus()
        )));
    }
    let k = GModule::trivial(n, field);
    let col = Matrix::from_fn(field, specht.dim(), 1, |_, _| 1);
    ModuleHom::new(k, Arc::clone(specht), col)
}

/// All arrangements of the multiset `word` in ascending lexicographic order.
fn multiset_permutations(word: &[u32]) -> Vec<Vec<u32>> {
    let mut counts: Vec<(u32, usize)> = Vec::new();
    for &v in word {
        match counts.iter_mut().find(|(value, _)| *value == v) {
            Some((_, c)) => *c += 1,
            None => counts.push((v, 1)),
        }
    }
    counts.sort_unstable();
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(word.len());
    fill_arrangements(&mut counts, &mut cur, word.len(), &mut out);
    out
}

fn fill_arrangements(counts: &mut Vec<(u32, usize)>, cur: &mut Vec<u32>, total: usize, out: &mut Vec<Vec<u32>>) {
    if cur.len() == total {
        out.push(cur.clone());
        return;
    }
    for i in 0..counts.len() {
        if counts[i].1 == 0 {
            continue;
        }
        let value = counts[i].0;
        counts[i].1 -= 1;
        cur.push(value);
        fill_arrangements(counts, cur, total, out);
        cur.pop();
        counts[i].1 += 1;
    }
}

/// The Young permutation module M^lambda on monomials whose exponent
/// multiset has lambda_j positions carrying the value j-1; the group
/// permutes positions. Dimension is the multinomial coefficient
/// n! / (lambda_1! lambda_2! ...).
pub fn young_permutation_module(lambda: &Partition, field: PrimeField) -> Result<Arc<GModule>> {
    let n = lambda.size() as usize;
    if n == 0 {
        return Err(Error::Precondition("M^lambda needs a non-empty partition".into()));
    }
    let mut word = Vec::with_capacity(n);
    for (j, &part) in lambda.parts().iter().enumerate() {
        word.extend(std::iter::repeat(j as u32).take(part as usize));
    }
    let basis = multiset_permutations(&word);
    let index: HashMap<Vec<u32>, usize> = basis
        .iter()
        .enumerate()
        .map(|(i, v)| (v.clone(), i))
        .collect();
    let dim = basis.len();
    let mut gens = Vec::with_capacity(n.saturating_sub(1));
    for m in 0..n.saturating_sub(1) {
        let mut g = Matrix::zeros(field, dim, dim);
        for (col, v) in basis.iter().enumerate() {
            let mut w = v.clone();
            w.swap(m, m + 1);
            g[(index[&w], col)] = 1;
        }
        gens.push(g);
    }
    GModule::new(n, field, dim, gens)
}

/// One block of the exponent-multiset decomposition of Sym^r M^(n-1,1).
#[derive(Debug, Clone)]
pub struct SymBlock {
    /// d_i = number of positions with exponent i, for i = 0..=r.
    pub d_sequence: Vec<u32>,
    /// The non-zero entries of the d-sequence, sorted: the shape of the block.
    pub lambda: Partition,
    /// Indices of the block monomials in the degree-r monomial order.
    pub indices: Vec<usize>,
    /// The block as a module under the restricted (permutation) action.
    pub module: Arc<GModule>,
    /// Verified isomorphism from the block onto `young_permutation_module(lambda)`.
    pub witness: ModuleHom,
}

/// Partitions the monomial basis of Sym^r M^(n-1,1) by exponent multiset.
/// Each block is invariant, carries a permutation action, and is identified
/// with M^lambda by relabeling exponent values; the relabeling is returned
/// as a verified equivariant bijection. Blocks are listed in order of first
/// occurrence in the monomial order.
pub fn sym_m_block_decomposition(n: usize, field: PrimeField, r: usize) -> Result<Vec<SymBlock>> {
    let natural = natural_module(n, field)?;
    let ctx = SymContext::new(Arc::clone(&natural), r)?;

    // Base permutations: position i maps to perm[i].
    let mut perms = Vec::with_capacity(n - 1);
    for m in 1..n {
        let g = natural.gen(m);
        let mut perm = vec![0usize; n];
        for i in 0..n {
            let col = g.column(i);
            let j = col.iter().position(|&v| v == 1).expect("permutation basis");
            perm[i] = j;
        }
        perms.push(perm);
    }

    // Group monomial indices by d-sequence.
    let monomials = ctx.monomials(r);
    let mut order: Vec<Vec<u32>> = Vec::new();
    let mut groups: HashMap<Vec<u32>, Vec<usize>> = HashMap::new();
    for (idx, beta) in monomials.iter().enumerate() {
        let mut d_seq = vec![0u32; r + 1];
        for i in 0..n {
            d_seq[beta.get(i) as usize] += 1;
        }
        if !groups.contains_key(&d_seq) {
            order.push(d_seq.clone());
        }
        groups.entry(d_seq).or_default().push(idx);
    }

    let mut blocks = Vec::with_capacity(order.len());
    for d_seq in order {
        let indices = groups.remove(&d_seq).expect("group recorded");
        let local: HashMap<usize, usize> = indices.iter().enumerate().map(|(l, &g)| (g, l)).collect();
        let dim = indices.len();

        // Restricted action: a permutation of positions permutes the block.
        let mut gens = Vec::with_capacity(n - 1);
        for perm in &perms {
            let mut g = Matrix::zeros(field, dim, dim);
            for (col, &global) in indices.iter().enumerate() {
                let beta = &monomials[global];
                let mut image = vec![0u32; n];
                for i in 0..n {
                    image[perm[i]] = beta.get(i);
                }
                let image_global = ctx
                    .index_of(r, &crate::combinatorics::Composition::new(image))
                    .expect("image is a degree-r monomial");
                g[(local[&image_global], col)] = 1;
            }
            gens.push(g);
        }
        let module = GModule::new(n, field, dim, gens)?;

        // Shape: non-zero multiplicities, largest first.
        let lambda = Partition::from_unsorted(d_seq.iter().copied().filter(|&c| c > 0).collect())?;

        // Relabel exponent values onto 0, 1, ...: by multiplicity (largest
        // first), ties by increasing value, matching the canonical model's
        // block order.
        let mut values: Vec<u32> = (0..=r as u32).filter(|&v| d_seq[v as usize] > 0).collect();
        values.sort_by_key(|&v| (std::cmp::Reverse(d_seq[v as usize]), v));
        let relabel: HashMap<u32, u32> = values
            .iter()
            .enumerate()
            .map(|(new, &old)| (old, new as u32))
            .collect();

        let young = young_permutation_module(&lambda, field)?;
        let young_index: HashMap<Vec<u32>, usize> = {
            // Rebuild the canonical basis order for lookups.
            let mut word = Vec::with_capacity(n);
            for (j, &part) in lambda.parts().iter().enumerate() {
                word.extend(std::iter::repeat(j as u32).take(part as usize));
            }
            multiset_permutations(&word)
                .into_iter()
                .enumerate()
                .map(|(i, v)| (v, i))
                .collect()
        };

        let mut witness_matrix = Matrix::zeros(field, young.dim(), dim);
        for (col, &global) in indices.iter().enumerate() {
            let beta = &monomials[global];
            let relabeled: Vec<u32> = (0..n).map(|i| relabel[&beta.get(i)]).collect();
            witness_matrix[(young_index[&relabeled], col)] = 1;
        }
        let witness = ModuleHom::new(Arc::clone(&module), young, witness_matrix)?;

        blocks.push(SymBlock {
            d_sequence: d_seq,
            lambda,
            indices,
            module,
            witness,
        });
    }
    Ok(blocks)
}

/// Sym^r D^(n-1,1) realized as the cokernel of the multiplication map
/// Sym^{r-1} S -> Sym^r S, with the projection from Sym^r S^(n-1,1).
/// Requires p | n (otherwise there is no invariant line in S).
pub fn sym_d_module(n: usize, field: PrimeField, r: usize) -> Result<(Arc<GModule>, ModuleHom)> {
    if r < 1 {
        return Err(Error::Precondition("sym_d_module needs r >= 1".into()));
    }
    let (specht, _) = specht_n11(n, field)?;
    let iota = iota_trivial_to_specht(&specht)?;
    let ctx = SymContext::new(Arc::clone(&specht), r)?;
    let mul = ctx.mul_map(&iota)?;
    let x = mul.component(r - 1).expect("component r-1 exists for r <= cap");
    let hom = ModuleHom::new(ctx.sym_power(r - 1)?, ctx.sym_power(r)?, x.clone())?;
    quotient_module(&hom)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::{binomial, m_module_dimension, y_coefficient};
    use crate::modact::check_equivariance;

    fn gf(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn pt(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn natural_module_shapes() {
        let f = gf(5);
        assert!(natural_module(1, f).is_err());
        let m2 = natural_module(2, f).unwrap();
        assert_eq!(m2.dim(), 2);
        let m5 = natural_module(5, f).unwrap();
        m5.check_coxeter().unwrap();
        assert!(m5.has_permutation_basis());
        // The all-ones row is equivariant onto K.
        epsilon(&m5).unwrap();
        iota_trivial_to_natural(&m5).unwrap();
    }

    #[test]
    fn specht_module_model() {
        let f = gf(5);
        assert!(specht_n11(2, f).is_err());
        let (s, incl) = specht_n11(5, f).unwrap();
        assert_eq!(s.dim(), 4);
        s.check_coxeter().unwrap();
        assert_eq!(incl.rank(), 4);
        // iota: 1 -> sum e_i is equivariant since 5 | 5.
        iota_trivial_to_specht(&s).unwrap();
        // ... but not for n = 6 over GF(5).
        let (s6, _) = specht_n11(6, f).unwrap();
        assert!(iota_trivial_to_specht(&s6).is_err());
    }

    #[test]
    fn young_module_dimensions() {
        let f = gf(5);
        let trivial = young_permutation_module(&pt(&[6]), f).unwrap();
        assert_eq!(trivial.dim(), 1);
        assert!(trivial.gens().iter().all(|g| g.is_identity()));

        let m32 = young_permutation_module(&pt(&[3, 2]), f).unwrap();
        assert_eq!(m32.dim(), 10);
        m32.check_coxeter().unwrap();

        let m811 = young_permutation_module(&pt(&[8, 1, 1]), f).unwrap();
        assert_eq!(m811.dim(), 90);

        for lambda in [pt(&[4, 2]), pt(&[2, 2, 2]), pt(&[3, 1, 1, 1])] {
            let m = young_permutation_module(&lambda, f).unwrap();
            assert_eq!(m.dim() as u128, m_module_dimension(&lambda));
        }
    }

    #[test]
    fn block_decomposition_small_case() {
        // Sym^2 of the 5-dim natural module: blocks (4,1) and (3,2).
        let blocks = sym_m_block_decomposition(5, gf(5), 2).unwrap();
        assert_eq!(blocks.len(), 2);
        assert_eq!(blocks[0].lambda, pt(&[4, 1]));
        assert_eq!(blocks[0].module.dim(), 5);
        assert_eq!(blocks[1].lambda, pt(&[3, 2]));
        assert_eq!(blocks[1].module.dim(), 10);
        let total: usize = blocks.iter().map(|b| b.module.dim()).sum();
        assert_eq!(total as u128, binomial(6, 2));
    }

    #[test]
    fn block_decomposition_degree_one() {
        let blocks = sym_m_block_decomposition(10, gf(5), 1).unwrap();
        assert_eq!(blocks.len(), 1);
        assert_eq!(blocks[0].lambda, pt(&[9, 1]));
    }

    #[test]
    fn block_witnesses_are_equivariant_bijections() {
        for r in 1..=3usize {
            let blocks = sym_m_block_decomposition(6, gf(5), r).unwrap();
            let mut seen = 0usize;
            for b in &blocks {
                assert_eq!(b.witness.rank(), b.module.dim());
                assert!(check_equivariance(&b.module, b.witness.target(), b.witness.matrix()));
                b.module.check_coxeter().unwrap();
                seen += b.module.dim();
                assert_eq!(b.d_sequence.iter().sum::<u32>() as usize, 6);
            }
            assert_eq!(seen as u128, binomial((6 + r - 1) as u64, r as u64));
        }
    }

    #[test]
    fn block_multiplicities_match_y_coefficients() {
        for (n, r) in [(6usize, 3usize), (10, 4)] {
            let blocks = sym_m_block_decomposition(n, gf(5), r).unwrap();
            let mut counts: HashMap<Partition, u64> = HashMap::new();
            for b in &blocks {
                *counts.entry(b.lambda.clone()).or_insert(0) += 1;
            }
            for lambda in crate::combinatorics::partitions_of(n as u32) {
                let expected = y_coefficient(&lambda, r as u32);
                assert_eq!(counts.get(&lambda).copied().unwrap_or(0), expected, "{lambda}");
            }
        }
    }

    #[test]
    fn sym_d_dimensions() {
        let f = gf(5);
        // r = 1 recovers D^(n-1,1) of dimension n - 2.
        let (d1, _) = sym_d_module(5, f, 1).unwrap();
        assert_eq!(d1.dim(), 3);
        d1.check_coxeter().unwrap();

        let (d3, proj) = sym_d_module(10, f, 3).unwrap();
        assert_eq!(d3.dim() as u128, binomial(10, 3));
        assert_eq!(proj.rank(), d3.dim());

        // p must divide n.
        assert!(sym_d_module(6, f, 2).is_err());
    }

    #[test]
    fn sym2_d_dimension_splits_as_trivial_plus_two_row() {
        // Sym^2 D^(9,1) has dimension 36 = 1 + 35, where 35 is the number of
        // standard tableaux of shape (8,2), counted by the hook length
        // formula.
        let f = gf(5);
        let (d2, _) = sym_d_module(10, f, 2).unwrap();
        assert_eq!(d2.dim(), 36);

        // Hook lengths for (8,2): top row 9,8,6,5,4,3,2,1; bottom row 2,1.
        let hook_product: u128 = [9u128, 8, 6, 5, 4, 3, 2, 1, 2, 1].iter().product();
        let factorial_10: u128 = (1..=10u128).product();
        let standard_tableaux = factorial_10 / hook_product;
        assert_eq!(standard_tableaux, 35);
        assert_eq!(d2.dim() as u128, 1 + standard_tableaux);
    }

    #[test]
    fn formula_traces_match_the_matrix_model() {
        // The ring identity [Sym^r S] = sum_lambda (y_r - y_{r-1}) [M^lambda]
        // encodes a direct-sum decomposition, so generator traces must agree
        // mod p between the matrix model of Sym^r S and the weighted sum of
        // Young permutation module traces.
        let n = 6usize;
        let p = 5u64;
        let f = gf(p);
        let (s, _) = specht_n11(n, f).unwrap();
        let ctx = SymContext::new(s, 4).unwrap();
        for r in 2..=4u32 {
            let formula = crate::repring::sym_s_formula(n as u32, p, r).unwrap();
            let sym_r = ctx.sym_power(r as usize).unwrap();
            for m in 1..n {
                let direct = sym_r.gen(m).trace();
                let mut via_formula: i64 = 0;
                for (_, lambda, c) in formula.iter() {
                    let young = young_permutation_module(lambda, f).unwrap();
                    via_formula += c * young.gen(m).trace() as i64;
                }
                assert_eq!(
                    direct,
                    via_formula.rem_euclid(p as i64) as u64,
                    "trace of s_{m} on Sym^{r} S"
                );
            }
        }
    }

    #[test]
    fn sym2_specht_has_the_character_data_of_m_two_row() {
        // Sym^2 S^(n-1,1) and M^(n-2,2) share dimension C(n,2) and the trace
        // of every Coxeter generator, over GF(5) and GF(3).
        for p in [5u64, 3] {
            let f = gf(p);
            for n in [6usize, 10] {
                let (s, _) = specht_n11(n, f).unwrap();
                let ctx = SymContext::new(s, 2).unwrap();
                let sym2 = ctx.sym_power(2).unwrap();
                let m22 = young_permutation_module(&pt(&[(n - 2) as u32, 2]), f).unwrap();
                assert_eq!(sym2.dim(), m22.dim());
                assert_eq!(sym2.dim() as u128, binomial(n as u64, 2));
                for m in 1..n {
                    assert_eq!(sym2.gen(m).trace(), m22.gen(m).trace(), "trace of s_{m}");
                }
            }
        }
    }
}
