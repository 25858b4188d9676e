//! Matrix models of symmetric-group modules over GF(p).
//!
//! A module is given by one invertible matrix per Coxeter generator
//! s_m = (m, m+1). The Coxeter relations are verified when a module is built
//! from raw matrices; constructions that restrict or descend a verified
//! action (kernels, quotients, symmetric powers) inherit the relations and
//! skip the re-check.

use std::sync::Arc;

use crate::error::Error;
use crate::gf::{Matrix, PrimeField};
use crate::Result;

/// A representation of S_n: one generator matrix per transposition
/// s_m = (m, m+1), 1 <= m <= n-1, acting on column vectors.
#[derive(Debug, Clone)]
pub struct GModule {
    n: usize,
    field: PrimeField,
    dim: usize,
    gens: Vec<Matrix>,
}

impl GModule {
    /// Builds a module and verifies the Coxeter relations
    /// (s_m^2 = 1, braid, distant commutation). s_m^2 = 1 also certifies
    /// invertibility.
    pub fn new(n: usize, field: PrimeField, dim: usize, gens: Vec<Matrix>) -> Result<Arc<Self>> {
        let module = GModule::new_trusted(n, field, dim, gens)?;
        module.check_coxeter()?;
        Ok(module)
    }

    /// Shape checks only. For internal construction paths where the matrices
    /// are a restriction or quotient of an already-verified action, so the
    /// relations hold automatically.
    pub(crate) fn new_trusted(n: usize, field: PrimeField, dim: usize, gens: Vec<Matrix>) -> Result<Arc<Self>> {
        if n == 0 {
            return Err(Error::Precondition("n must be at least 1".into()));
        }
        if gens.len() != n - 1 {
            return Err(Error::ShapeMismatch(format!(
                "expected {} generator matrices, got {}",
                n - 1,
                gens.len()
            )));
        }
        for g in &gens {
            if g.rows() != dim || g.cols() != dim || g.field() != field {
                return Err(Error::ShapeMismatch(format!(
                    "generator is {}x{}, expected {dim}x{dim}",
                    g.rows(),
                    g.cols()
                )));
            }
        }
        Ok(Arc::new(GModule { n, field, dim, gens }))
    }

    /// The trivial one-dimensional module of S_n.
    pub fn trivial(n: usize, field: PrimeField) -> Arc<Self> {
        let gens = vec![Matrix::identity(field, 1); n - 1];
        GModule::new_trusted(n, field, 1, gens).expect("trivial module is well-formed")
    }

    /// The zero module.
    pub fn zero(n: usize, field: PrimeField) -> Arc<Self> {
        let gens = vec![Matrix::zeros(field, 0, 0); n - 1];
        GModule::new_trusted(n, field, 0, gens).expect("zero module is well-formed")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn gens(&self) -> &[Matrix] {
        &self.gens
    }

    /// Generator matrix of s_m, 1-indexed: 1 <= m <= n-1.
    pub fn gen(&self, m: usize) -> &Matrix {
        &self.gens[m - 1]
    }

    /// Verifies s_m^2 = 1, the braid relations and distant commutation.
    pub fn check_coxeter(&self) -> Result<()> {
        for (idx, g) in self.gens.iter().enumerate() {
            if !g.matmul(g)?.is_identity() {
                return Err(Error::CoxeterRelation(format!("s_{} squared != 1", idx + 1)));
            }
        }
        for m in 0..self.gens.len().saturating_sub(1) {
            let a = &self.gens[m];
            let b = &self.gens[m + 1];
            let aba = a.matmul(b)?.matmul(a)?;
            let bab = b.matmul(a)?.matmul(b)?;
            if aba != bab {
                return Err(Error::CoxeterRelation(format!("braid at s_{}, s_{}", m + 1, m + 2)));
            }
        }
        for m in 0..self.gens.len() {
            for k in m + 2..self.gens.len() {
                let ab = self.gens[m].matmul(&self.gens[k])?;
                let ba = self.gens[k].matmul(&self.gens[m])?;
                if ab != ba {
                    return Err(Error::CoxeterRelation(format!(
                        "s_{} and s_{} do not commute",
                        m + 1,
                        k + 1
                    )));
                }
            }
        }
        Ok(())
    }

    /// Whether every generator permutes the standard basis.
    pub fn has_permutation_basis(&self) -> bool {
        self.gens.iter().all(|g| {
            (0..g.cols()).all(|j| {
                let col = g.column(j);
                col.iter().filter(|&&v| v != 0).count() == 1 && col.iter().any(|&v| v == 1)
            })
        })
    }
}

/// True iff `matrix` commutes with the action: matrix * src_gen = tgt_gen * matrix
/// for every Coxeter generator. Generators suffice because they generate S_n.
/// Shape mismatches count as non-equivariant.
pub fn check_equivariance(source: &GModule, target: &GModule, matrix: &Matrix) -> bool {
    check_hom_shape(source, target, matrix).is_ok() && equivariance_failure(source, target, matrix).is_none()
}

fn check_hom_shape(source: &GModule, target: &GModule, matrix: &Matrix) -> Result<()> {
    if matrix.rows() != target.dim() || matrix.cols() != source.dim() || source.n() != target.n() {
        return Err(Error::ShapeMismatch(format!(
            "hom matrix is {}x{}, expected {}x{}",
            matrix.rows(),
            matrix.cols(),
            target.dim(),
            source.dim()
        )));
    }
    Ok(())
}

/// The first generator index on which commutation fails; shapes must match.
fn equivariance_failure(source: &GModule, target: &GModule, matrix: &Matrix) -> Option<usize> {
    for m in 1..source.n() {
        let lhs = matrix.matmul(source.gen(m)).expect("shape checked");
        let rhs = target.gen(m).matmul(matrix).expect("shape checked");
        if lhs != rhs {
            return Some(m);
        }
    }
    None
}

/// An equivariant map between two modules, stored as a
/// target.dim x source.dim matrix. Equivariance is verified at construction.
#[derive(Debug, Clone)]
pub struct ModuleHom {
    source: Arc<GModule>,
    target: Arc<GModule>,
    matrix: Matrix,
}

impl ModuleHom {
    pub fn new(source: Arc<GModule>, target: Arc<GModule>, matrix: Matrix) -> Result<Self> {
        check_hom_shape(&source, &target, &matrix)?;
        match equivariance_failure(&source, &target, &matrix) {
            None => Ok(ModuleHom { source, target, matrix }),
            Some(m) => Err(Error::NotEquivariant(m)),
        }
    }

    /// For composites of verified homs, where equivariance is automatic.
    pub(crate) fn new_trusted(source: Arc<GModule>, target: Arc<GModule>, matrix: Matrix) -> Self {
        debug_assert_eq!(matrix.rows(), target.dim());
        debug_assert_eq!(matrix.cols(), source.dim());
        ModuleHom { source, target, matrix }
    }

    pub fn identity(module: &Arc<GModule>) -> Self {
        ModuleHom {
            source: Arc::clone(module),
            target: Arc::clone(module),
            matrix: Matrix::identity(module.field(), module.dim()),
        }
    }

    pub fn zero(source: &Arc<GModule>, target: &Arc<GModule>) -> Self {
        ModuleHom {
            source: Arc::clone(source),
            target: Arc::clone(target),
            matrix: Matrix::zeros(source.field(), target.dim(), source.dim()),
        }
    }

    pub fn source(&self) -> &Arc<GModule> {
        &self.source
    }

    pub fn target(&self) -> &Arc<GModule> {
        &self.target
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    /// self after other: (self o other)(v) = self(other(v)).
    pub fn compose(&self, other: &ModuleHom) -> Result<ModuleHom> {
        if self.source.dim() != other.target.dim() {
            return Err(Error::ShapeMismatch("hom composition".into()));
        }
        let matrix = self.matrix.matmul(&other.matrix)?;
        Ok(ModuleHom::new_trusted(
            Arc::clone(&other.source),
            Arc::clone(&self.target),
            matrix,
        ))
    }

    pub fn is_identity(&self) -> bool {
        self.matrix.is_identity()
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }
}

/// The kernel of an equivariant map, as a module with the restricted action,
/// together with the inclusion into the source.
///
/// The kernel basis is echelon-normalized, so coordinates in the kernel basis
/// can be read off the free positions. Membership of each g * basis vector in
/// the kernel is verified exactly; failure signals a non-equivariant input.
pub fn kernel_module(h: &ModuleHom) -> Result<(Arc<GModule>, ModuleHom)> {
    let source = h.source();
    let field = source.field();
    let basis = h.matrix().kernel_basis();
    let k = basis.len();
    let free_positions: Vec<usize> = {
        let (_, pivots) = h.matrix().rref();
        let mut is_pivot = vec![false; source.dim()];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        (0..source.dim()).filter(|&j| !is_pivot[j]).collect()
    };

    let mut incl = Matrix::zeros(field, source.dim(), k);
    for (j, v) in basis.iter().enumerate() {
        incl.set_column(j, v);
    }

    let mut gens = Vec::with_capacity(source.n() - 1);
    for m in 1..source.n() {
        let mut restricted = Matrix::zeros(field, k, k);
        for (j, v) in basis.iter().enumerate() {
            let image = source.gen(m).mul_vec(v)?;
            // Echelon-normalized basis: coordinates are the free entries.
            let coords: Vec<u64> = free_positions.iter().map(|&pos| image[pos]).collect();
            let rebuilt = incl.mul_vec(&coords)?;
            if rebuilt != image {
                return Err(Error::ActionNotPreserved(m));
            }
            restricted.set_column(j, &coords);
        }
        gens.push(restricted);
    }

    let kernel = GModule::new_trusted(source.n(), field, k, gens)?;
    let inclusion = ModuleHom::new_trusted(Arc::clone(&kernel), Arc::clone(source), incl);
    if !h.matrix().matmul(inclusion.matrix())?.is_zero() {
        return Err(Error::VerificationFailed("kernel inclusion does not vanish".into()));
    }
    Ok((kernel, inclusion))
}

/// The quotient of the target of an injective equivariant map by its image,
/// with basis the non-pivot coordinates in the fixed basis order, together
/// with the projection from the target.
pub fn quotient_module(h: &ModuleHom) -> Result<(Arc<GModule>, ModuleHom)> {
    let target = h.target();
    let field = target.field();
    let rank = h.matrix().rank();
    if rank != h.source().dim() {
        return Err(Error::NotInjective {
            rank,
            dim: h.source().dim(),
        });
    }

    // Row-reduce the image: rows of the transpose span the image.
    let (image_rref, pivots) = h.matrix().transpose().rref();
    let mut is_pivot = vec![false; target.dim()];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    let free_positions: Vec<usize> = (0..target.dim()).filter(|&j| !is_pivot[j]).collect();
    let q = free_positions.len();

    // Reduce a vector modulo the image, returning its free coordinates.
    let reduce = |v: &[u64]| -> Vec<u64> {
        let mut w = v.to_vec();
        for (i, &pc) in pivots.iter().enumerate() {
            let c = w[pc];
            if c == 0 {
                continue;
            }
            for j in 0..target.dim() {
                let sub = field.mul(c, image_rref[(i, j)]);
                w[j] = field.sub(w[j], sub);
            }
        }
        free_positions.iter().map(|&pos| w[pos]).collect()
    };

    let mut proj = Matrix::zeros(field, q, target.dim());
    for col in 0..target.dim() {
        let mut e = vec![0u64; target.dim()];
        e[col] = 1;
        proj.set_column(col, &reduce(&e));
    }

    let mut gens = Vec::with_capacity(target.n() - 1);
    for m in 1..target.n() {
        let mut g = Matrix::zeros(field, q, q);
        for (j, &pos) in free_positions.iter().enumerate() {
            let mut e = vec![0u64; target.dim()];
            e[pos] = 1;
            let image = target.gen(m).mul_vec(&e)?;
            g.set_column(j, &reduce(&image));
        }
        gens.push(g);
    }

    let quotient = GModule::new_trusted(target.n(), field, q, gens)?;
    let projection = ModuleHom::new_trusted(Arc::clone(target), Arc::clone(&quotient), proj);
    if !projection.matrix().matmul(h.matrix())?.is_zero() {
        return Err(Error::VerificationFailed("projection does not kill the image".into()));
    }
    Ok((quotient, projection))
}

/// True iff surj o section is exactly the identity.
pub fn verify_split(surj: &ModuleHom, section: &ModuleHom) -> Result<bool> {
    Ok(surj.compose(section)?.is_identity())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spechtmod;

    fn gf(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn identity_hom_is_equivariant() {
        let f = gf(5);
        let m = spechtmod::natural_module(5, f).unwrap();
        assert!(check_equivariance(&m, &m, &Matrix::identity(f, 5)));
    }

    #[test]
    fn swap_of_trivial_summands_is_equivariant() {
        let f = gf(5);
        // K + K for S_3: two-dimensional module with identity generators.
        let gens = vec![Matrix::identity(f, 2); 2];
        let kk = GModule::new(3, f, 2, gens).unwrap();
        let swap = Matrix::from_rows(f, vec![vec![0, 1], vec![1, 0]]).unwrap();
        assert!(check_equivariance(&kk, &kk, &swap));
    }

    #[test]
    fn non_equivariant_matrix_is_rejected() {
        let f = gf(5);
        let m = spechtmod::natural_module(4, f).unwrap();
        let k = GModule::trivial(4, f);
        // Row (1, 0, 0, 0) is not invariant under coordinate permutations.
        let bad = Matrix::from_rows(f, vec![vec![1, 0, 0, 0]]).unwrap();
        assert!(ModuleHom::new(Arc::clone(&m), k, bad).is_err());
    }

    #[test]
    fn coxeter_check_rejects_bad_generators() {
        let f = gf(5);
        let not_involution = Matrix::from_rows(f, vec![vec![1, 1], vec![0, 1]]).unwrap();
        let gens = vec![not_involution, Matrix::identity(f, 2)];
        assert!(GModule::new(3, f, 2, gens).is_err());
    }

    #[test]
    fn kernel_of_identity_is_zero() {
        let f = gf(5);
        let m = spechtmod::natural_module(4, f).unwrap();
        let (ker, incl) = kernel_module(&ModuleHom::identity(&m)).unwrap();
        assert_eq!(ker.dim(), 0);
        assert_eq!(incl.matrix().cols(), 0);
    }

    #[test]
    fn kernel_of_epsilon_is_the_standard_submodule() {
        let f = gf(5);
        let m = spechtmod::natural_module(5, f).unwrap();
        let eps = spechtmod::epsilon(&m).unwrap();
        let (ker, incl) = kernel_module(&eps).unwrap();
        assert_eq!(ker.dim(), 4);
        ker.check_coxeter().unwrap();

        // Same subspace as the span of e_i = x_i - x_5.
        let (s, s_incl) = spechtmod::specht_n11(5, f).unwrap();
        assert_eq!(s.dim(), 4);
        let mut stacked = Matrix::zeros(f, 5, 8);
        for j in 0..4 {
            stacked.set_column(j, &incl.matrix().column(j));
            stacked.set_column(4 + j, &s_incl.matrix().column(j));
        }
        assert_eq!(stacked.rank(), 4);
    }

    #[test]
    fn quotient_by_zero_module_is_isomorphic_copy() {
        let f = gf(5);
        let m = spechtmod::natural_module(4, f).unwrap();
        let z = GModule::zero(4, f);
        let h = ModuleHom::new(z, Arc::clone(&m), Matrix::zeros(f, 4, 0)).unwrap();
        let (q, proj) = quotient_module(&h).unwrap();
        assert_eq!(q.dim(), 4);
        assert!(proj.matrix().is_identity());
    }

    #[test]
    fn quotient_of_specht_by_invariant_line_is_d() {
        let f = gf(5);
        let (s, _) = spechtmod::specht_n11(5, f).unwrap();
        let iota = spechtmod::iota_trivial_to_specht(&s).unwrap();
        let (d, proj) = quotient_module(&iota).unwrap();
        assert_eq!(d.dim(), 3);
        d.check_coxeter().unwrap();
        assert!(proj.matrix().matmul(iota.matrix()).unwrap().is_zero());
        // The projection is surjective and equivariant.
        assert_eq!(proj.rank(), d.dim());
        assert!(check_equivariance(proj.source(), proj.target(), proj.matrix()));
    }

    #[test]
    fn quotient_rejects_non_injective_maps() {
        let f = gf(5);
        let m = spechtmod::natural_module(4, f).unwrap();
        let h = ModuleHom::zero(&m, &m);
        assert!(matches!(quotient_module(&h), Err(Error::NotInjective { .. })));
    }

    #[test]
    fn split_verification() {
        let f = gf(5);
        let m = spechtmod::natural_module(4, f).unwrap();
        let id = ModuleHom::identity(&m);
        assert!(verify_split(&id, &id).unwrap());
        let k = GModule::trivial(4, f);
        let eps = spechtmod::epsilon(&m).unwrap();
        let zero = ModuleHom::zero(&k, &m);
        assert!(!verify_split(&eps, &zero).unwrap());
    }

    #[test]
    fn kernel_dim_plus_rank_is_source_dim() {
        let f = gf(5);
        let m = spechtmod::natural_module(6, f).unwrap();
        let eps = spechtmod::epsilon(&m).unwrap();
        let (ker, _) = kernel_module(&eps).unwrap();
        assert_eq!(ker.dim() + eps.rank(), m.dim());
    }

    #[test]
    fn kernel_of_boundary_2_is_the_square_of_the_submodule() {
        // On Sym^2 M^(4,1) over GF(5) the boundary has a 10-dimensional
        // kernel, the symmetric square of the 4-dimensional submodule.
        use crate::symalg::SymContext;
        let f = gf(5);
        let m = spechtmod::natural_module(5, f).unwrap();
        let ctx = SymContext::new(m, 2).unwrap();
        let eps = spechtmod::epsilon(ctx.base()).unwrap();
        let boundary = ctx.boundary(&eps).unwrap();
        let d2 = ModuleHom::new(
            ctx.sym_power(2).unwrap(),
            ctx.sym_power(1).unwrap(),
            boundary.component(2).unwrap().clone(),
        )
        .unwrap();
        let (ker, incl) = kernel_module(&d2).unwrap();
        assert_eq!(ker.dim(), 10);
        ker.check_coxeter().unwrap();
        assert!(d2.matrix().matmul(incl.matrix()).unwrap().is_zero());

        // Verified split pair: dim(ker d2) + dim(target) = dim(source).
        let zeta = crate::splitters::zeta(&ctx).unwrap();
        assert!(verify_split(&d2, &zeta).unwrap());
        assert_eq!(ker.dim() + d2.target().dim(), d2.source().dim());
    }
}
