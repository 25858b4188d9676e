//! The graded symmetric algebra Sym V of a based module, truncated at a
//! degree cap.
//!
//! Monomials x^alpha in each degree are indexed by the compositions of that
//! degree in lexicographic order; this order is fixed globally and every
//! matrix in the crate depends on it. The module structure on each graded
//! piece is obtained functorially from the base action, and maps between
//! fixed symmetric powers extend to all degrees through the degree-less
//! lift, realized by divided-power differential operators. Divided powers
//! are defined through binomial coefficients mod p, never through division
//! by a factorial.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock};

use crate::combinatorics::{compositions, Composition};
use crate::error::Error;
use crate::gf::{FieldElement, Matrix, PrimeField};
use crate::modact::{GModule, ModuleHom};
use crate::Result;

/// A homogeneous element of one graded piece, dense in the monomial basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    degree: usize,
    coeffs: Vec<u64>,
}

impl Poly {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }
}

struct DegreeTable {
    monomials: Vec<Composition>,
    index: HashMap<Vec<u32>, usize>,
}

impl DegreeTable {
    fn new(t: usize, d: u32) -> Self {
        // Descending lexicographic, so the degree-1 monomials x_1, ..., x_t
        // appear in basis order and Sym^1 V is V on the nose.
        let mut monomials = compositions(t, d);
        monomials.reverse();
        let index = monomials
            .iter()
            .enumerate()
            .map(|(i, m)| (m.entries().to_vec(), i))
            .collect();
        DegreeTable { monomials, index }
    }
}

/// A family of matrices, one per source degree, all shifting degree by the
/// same amount. Produced by [`SymContext::lift`] and friends.
#[derive(Debug, Clone)]
pub struct GradedEndo {
    shift: i64,
    comps: std::collections::BTreeMap<usize, Matrix>,
}

impl GradedEndo {
    pub fn shift(&self) -> i64 {
        self.shift
    }

    /// The component acting on degree d, when both d and d + shift are in
    /// range.
    pub fn component(&self, d: usize) -> Option<&Matrix> {
        self.comps.get(&d)
    }

    pub fn degrees(&self) -> impl Iterator<Item = usize> + '_ {
        self.comps.keys().copied()
    }
}

/// The symmetric algebra on a based module, up to a degree cap.
pub struct SymContext {
    base: Arc<GModule>,
    field: PrimeField,
    t: usize,
    cap: usize,
    tables: Vec<DegreeTable>,
    powers: Vec<OnceLock<Arc<GModule>>>,
    binom: Vec<Vec<u64>>,
}

/// Which defining identity a splitting map satisfies; selects which
/// commutator the scalar check computes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SplitKind {
    /// phi: Sym^{r-1} -> Sym^r with boundary_r o phi = id.
    BoundarySection,
    /// phi: Sym^r -> Sym^{r-1} with phi o mul_{r-1} = id.
    MulRetraction,
}

impl SymContext {
    /// Default degree cap for a field of characteristic p. The explicit
    /// constructions live in degrees < p; commutator checks on degree d
    /// reach degree d + 1, so callers probing degree p pass `p + 1`.
    pub fn default_cap(p: u64) -> usize {
        p as usize
    }

    pub fn new(base: Arc<GModule>, cap: usize) -> Result<Self> {
        let t = base.dim();
        if t < 2 {
            return Err(Error::Precondition(
                "symmetric algebra context needs a base of dimension >= 2".into(),
            ));
        }
        let field = base.field();
        let tables = (0..=cap).map(|d| DegreeTable::new(t, d as u32)).collect();
        let powers = (0..=cap).map(|_| OnceLock::new()).collect();
        // Small Pascal triangle mod p; entries beyond the cap never occur in
        // comultiplication coefficients.
        let max = cap + 1;
        let mut binom = vec![vec![0u64; max + 1]; max + 1];
        for n in 0..=max {
            binom[n][0] = 1;
            for k in 1..=n {
                binom[n][k] = field.add(binom[n - 1][k - 1], if k < n { binom[n - 1][k] } else { 0 });
            }
        }
        Ok(SymContext {
            base,
            field,
            t,
            cap,
            tables,
            powers,
            binom,
        })
    }

    pub fn base(&self) -> &Arc<GModule> {
        &self.base
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn n(&self) -> usize {
        self.base.n()
    }

    fn check_degree(&self, d: usize) -> Result<()> {
        if d > self.cap {
            return Err(Error::DegreeOutOfRange(d, self.cap));
        }
        Ok(())
    }

    pub fn dim(&self, d: usize) -> usize {
        self.tables[d].monomials.len()
    }

    pub fn monomials(&self, d: usize) -> &[Composition] {
        &self.tables[d].monomials
    }

    pub fn index_of(&self, d: usize, monomial: &Composition) -> Option<usize> {
        self.tables[d].index.get(monomial.entries()).copied()
    }

    /// Degree with the given monomial count; dimensions are strictly
    /// increasing in the degree, so this is unique.
    pub fn degree_of_dim(&self, dim: usize) -> Result<usize> {
        (0..=self.cap)
            .find(|&d| self.dim(d) == dim)
            .ok_or(Error::NoMatchingDegree(dim))
    }

    pub fn zero_poly(&self, d: usize) -> Poly {
        Poly {
            degree: d,
            coeffs: vec![0; self.dim(d)],
        }
    }

    pub fn poly_from_coeffs(&self, d: usize, coeffs: Vec<u64>) -> Result<Poly> {
        self.check_degree(d)?;
        if coeffs.len() != self.dim(d) {
            return Err(Error::ShapeMismatch(format!(
                "degree {d} has {} monomials, got {} coefficients",
                self.dim(d),
                coeffs.len()
            )));
        }
        let coeffs = coeffs.into_iter().map(|c| self.field.reduce(c)).collect();
        Ok(Poly { degree: d, coeffs })
    }

    pub fn monomial_poly(&self, exponents: &[u32]) -> Result<Poly> {
        let comp = Composition::new(exponents.to_vec());
        let d = comp.degree() as usize;
        self.check_degree(d)?;
        let idx = self
            .index_of(d, &comp)
            .ok_or_else(|| Error::ShapeMismatch(format!("monomial {exponents:?} has wrong length")))?;
        let mut poly = self.zero_poly(d);
        poly.coeffs[idx] = 1;
        Ok(poly)
    }

    fn binom_small(&self, n: u32, k: u32) -> u64 {
        self.binom[n as usize][k as usize]
    }

    /// Image of the monomial x^beta under the algebra map induced by a linear
    /// substitution x_i -> sum_j m[j][i] y_j, as a sparse vector in the
    /// degree-|beta| monomial basis of the target variables.
    fn substitute_monomial(&self, matrix: &Matrix, beta: &Composition, out_table: &DegreeTable) -> Vec<(usize, u64)> {
        let f = self.field;
        let out_len = matrix.rows();
        let mut acc: HashMap<Vec<u32>, u64> = HashMap::new();
        acc.insert(vec![0u32; out_len], 1);
        for i in 0..beta.len() {
            for _ in 0..beta.get(i) {
                let mut next: HashMap<Vec<u32>, u64> = HashMap::with_capacity(acc.len() * 2);
                for (mono, c) in &acc {
                    for j in 0..out_len {
                        let a = matrix[(j, i)];
                        if a == 0 {
                            continue;
                        }
                        let mut m2 = mono.clone();
                        m2[j] += 1;
                        let v = f.mul(*c, a);
                        let slot = next.entry(m2).or_insert(0);
                        *slot = f.add(*slot, v);
                    }
                }
                acc = next;
            }
        }
        acc.into_iter()
            .filter(|(_, c)| *c != 0)
            .map(|(mono, c)| (out_table.index[&mono], c))
            .collect()
    }

    /// The r-th symmetric power as a module on the monomial basis, with the
    /// multiplicative extension of the base action. Cached per degree.
    pub fn sym_power(&self, r: usize) -> Result<Arc<GModule>> {
        self.check_degree(r)?;
        Ok(Arc::clone(self.powers[r].get_or_init(|| {
            let dim = self.dim(r);
            let table = &self.tables[r];
            let mut gens = Vec::with_capacity(self.base.n() - 1);
            for m in 1..self.base.n() {
                let g = self.base.gen(m);
                let mut mat = Matrix::zeros(self.field, dim, dim);
                for (col, beta) in table.monomials.iter().enumerate() {
                    for (row, v) in self.substitute_monomial(g, beta, table) {
                        mat[(row, col)] = v;
                    }
                }
                gens.push(mat);
            }
            GModule::new_trusted(self.base.n(), self.field, dim, gens)
                .expect("symmetric power shapes are consistent")
        })))
    }

    /// Product of homogeneous elements: bilinear extension of exponent
    /// addition.
    pub fn multiply(&self, f: &Poly, g: &Poly) -> Result<Poly> {
        let d = f.degree + g.degree;
        self.check_degree(d)?;
        let field = self.field;
        let out_table = &self.tables[d];
        let mut out = self.zero_poly(d);
        for (i, &a) in f.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            let alpha = &self.tables[f.degree].monomials[i];
            for (j, &b) in g.coeffs.iter().enumerate() {
                if b == 0 {
                    continue;
                }
                let beta = &self.tables[g.degree].monomials[j];
                let idx = out_table.index[alpha.add(beta).entries()];
                out.coeffs[idx] = field.add(out.coeffs[idx], field.mul(a, b));
            }
        }
        Ok(out)
    }

    /// Truncated comultiplication Delta_a, as the coefficient matrix of the
    /// image in Sym^a (x) Sym^{d-a}: entry (i, j) is the coefficient of
    /// x^{alpha_i} (x) x^{gamma_j}. Zero (an empty matrix) when d < a.
    pub fn comultiply_a(&self, a: usize, f: &Poly) -> Result<Matrix> {
        self.check_degree(a)?;
        let d = f.degree;
        if d < a {
            return Ok(Matrix::zeros(self.field, self.dim(a), 0));
        }
        let field = self.field;
        let mut out = Matrix::zeros(self.field, self.dim(a), self.dim(d - a));
        let a_table = &self.tables[a];
        let rest_table = &self.tables[d - a];
        for (j, &c) in f.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let beta = &self.tables[d].monomials[j];
            for (i, alpha) in a_table.monomials.iter().enumerate() {
                let Some(rest) = beta.checked_sub(alpha) else {
                    continue;
                };
                let mut coeff = c;
                for s in 0..self.t {
                    coeff = field.mul(coeff, self.binom_small(beta.get(s), alpha.get(s)));
                    if coeff == 0 {
                        break;
                    }
                }
                if coeff == 0 {
                    continue;
                }
                let col = rest_table.index[rest.entries()];
                out[(i, col)] = field.add(out[(i, col)], coeff);
            }
        }
        Ok(out)
    }

    /// The divided-power operator sending x^beta to
    /// prod_i C(beta_i, alpha_i) x^{beta - alpha} when beta >= alpha and to 0
    /// otherwise. No factorial is ever formed.
    pub fn divided_diff(&self, alpha: &Composition, f: &Poly) -> Result<Poly> {
        let a = alpha.degree() as usize;
        let d = f.degree;
        if d < a {
            return Ok(self.zero_poly(0));
        }
        let field = self.field;
        let mut out = self.zero_poly(d - a);
        let out_table = &self.tables[d - a];
        for (j, &c) in f.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let beta = &self.tables[d].monomials[j];
            let Some(rest) = beta.checked_sub(alpha) else {
                continue;
            };
            let mut coeff = c;
            for s in 0..self.t {
                coeff = field.mul(coeff, self.binom_small(beta.get(s), alpha.get(s)));
                if coeff == 0 {
                    break;
                }
            }
            if coeff == 0 {
                continue;
            }
            let idx = out_table.index[rest.entries()];
            out.coeffs[idx] = field.add(out.coeffs[idx], coeff);
        }
        Ok(out)
    }

    /// The degree-d component of the degree-less lift of a map
    /// phi: Sym^a -> Sym^b given by its matrix. The result maps degree d to
    /// degree d + b - a:
    ///   x^beta  |->  sum_{alpha <= beta, |alpha| = a}
    ///                prod_i C(beta_i, alpha_i) x^{beta - alpha} phi(x^alpha).
    pub fn lift_component(&self, phi: &Matrix, a: usize, b: usize, d: usize) -> Result<Matrix> {
        self.check_degree(a)?;
        self.check_degree(b)?;
        self.check_degree(d)?;
        if phi.rows() != self.dim(b) || phi.cols() != self.dim(a) {
            return Err(Error::ShapeMismatch(format!(
                "lift of a {}x{} matrix declared as Sym^{a} -> Sym^{b}",
                phi.rows(),
                phi.cols()
            )));
        }
        if d + b < a {
            return Err(Error::DegreeOutOfRange(d, self.cap));
        }
        let out_degree = d + b - a;
        self.check_degree(out_degree)?;
        let field = self.field;
        let mut out = Matrix::zeros(field, self.dim(out_degree), self.dim(d));
        if d < a {
            return Ok(out);
        }

        let out_table = &self.tables[out_degree];
        let d_table = &self.tables[d];
        let b_monomials = &self.tables[b].monomials;
        // beta = alpha + delta; group the work by the cofactor delta so the
        // monomial ranks are looked up once per (gamma, delta) pair.
        for delta in &self.tables[d - a].monomials {
            let shifted: Vec<usize> = b_monomials
                .iter()
                .map(|gamma| out_table.index[gamma.add(delta).entries()])
                .collect();
            for (acol, alpha) in self.tables[a].monomials.iter().enumerate() {
                let beta = alpha.add(delta);
                let mut coeff = 1u64;
                for s in 0..self.t {
                    coeff = field.mul(coeff, self.binom_small(beta.get(s), alpha.get(s)));
                    if coeff == 0 {
                        break;
                    }
                }
                if coeff == 0 {
                    continue;
                }
                let out_col = d_table.index[beta.entries()];
                for (grow, &target_row) in shifted.iter().enumerate() {
                    let v = phi[(grow, acol)];
                    if v == 0 {
                        continue;
                    }
                    let add = field.mul(coeff, v);
                    let cur = out[(target_row, out_col)];
                    out[(target_row, out_col)] = field.add(cur, add);
                }
            }
        }
        Ok(out)
    }

    /// Degrees of a hom between two symmetric powers of this context,
    /// inferred from the dimensions.
    pub fn hom_degrees(&self, phi: &ModuleHom) -> Result<(usize, usize)> {
        let a = self.degree_of_dim(phi.source().dim())?;
        let b = self.degree_of_dim(phi.target().dim())?;
        Ok((a, b))
    }

    /// The full degree-less lift of phi: one component per source degree for
    /// which both endpoints are within the cap. Zero below the source degree
    /// of phi, and restricting to phi there.
    pub fn lift(&self, phi: &ModuleHom) -> Result<GradedEndo> {
        let (a, b) = self.hom_degrees(phi)?;
        let shift = b as i64 - a as i64;
        let mut comps = std::collections::BTreeMap::new();
        for d in 0..=self.cap {
            let out = d as i64 + shift;
            if out < 0 || out as usize > self.cap {
                continue;
            }
            comps.insert(d, self.lift_component(phi.matrix(), a, b, d)?);
        }
        Ok(GradedEndo { shift, comps })
    }

    /// The boundary operator: lift of a surjection eps: V -> K with
    /// eps(x_i) = 1 on the whole basis, i.e. the sum of the partial
    /// derivatives. Component d is the surjection Sym^d -> Sym^{d-1}.
    pub fn boundary(&self, eps: &ModuleHom) -> Result<GradedEndo> {
        if eps.matrix().rows() != 1 || eps.matrix().cols() != self.t {
            return Err(Error::ShapeMismatch("boundary needs a map V -> K".into()));
        }
        if (0..self.t).any(|j| eps.matrix()[(0, j)] != 1) {
            return Err(Error::Precondition(
                "boundary requires a basis with eps(x_i) = 1 for all i".into(),
            ));
        }
        let mut comps = std::collections::BTreeMap::new();
        for d in 1..=self.cap {
            comps.insert(d, self.lift_component(eps.matrix(), 1, 0, d)?);
        }
        Ok(GradedEndo { shift: -1, comps })
    }

    /// The multiplication operator: lift of an injection iota: K -> V with
    /// iota(1) = sum_i e_i, i.e. multiplication by sum_i e_i. Component d is
    /// the injection Sym^d -> Sym^{d+1}.
    pub fn mul_map(&self, iota: &ModuleHom) -> Result<GradedEndo> {
        if iota.matrix().rows() != self.t || iota.matrix().cols() != 1 {
            return Err(Error::ShapeMismatch("mul needs a map K -> V".into()));
        }
        if (0..self.t).any(|i| iota.matrix()[(i, 0)] != 1) {
            return Err(Error::Precondition(
                "mul requires a basis with iota(1) = sum of the basis".into(),
            ));
        }
        let mut comps = std::collections::BTreeMap::new();
        for d in 0..self.cap {
            comps.insert(d, self.lift_component(iota.matrix(), 0, 1, d)?);
        }
        Ok(GradedEndo { shift: 1, comps })
    }

    /// Verifies the defining identity of a splitting map phi and returns the
    /// scalar by which the associated commutator acts on degree d:
    /// [boundary, lift(phi)] for a section, [lift(phi), mul] for a
    /// retraction. Errors if the action is not scalar.
    pub fn commutator_scalar(
        &self,
        kind: SplitKind,
        helper: &GradedEndo,
        phi: &ModuleHom,
        d: usize,
    ) -> Result<FieldElement> {
        let (a, b) = self.hom_degrees(phi)?;
        let bracket = match kind {
            SplitKind::BoundarySection => {
                if helper.shift != -1 {
                    return Err(Error::Precondition("section check needs the boundary operator".into()));
                }
                if b != a + 1 {
                    return Err(Error::ShapeMismatch("section must map Sym^{r-1} to Sym^r".into()));
                }
                let r = b;
                let dr = helper
                    .component(r)
                    .ok_or(Error::DegreeOutOfRange(r, self.cap))?;
                if !dr.matmul(phi.matrix())?.is_identity() {
                    return Err(Error::VerificationFailed(format!(
                        "boundary_{r} o phi is not the identity"
                    )));
                }
                // [boundary, lift(phi)] on Sym^d.
                let psi_d = self.lift_component(phi.matrix(), a, b, d)?;
                let d_after = helper
                    .component(d + 1)
                    .ok_or(Error::DegreeOutOfRange(d + 1, self.cap))?;
                let mut bracket = d_after.matmul(&psi_d)?;
                if d >= 1 {
                    let psi_prev = self.lift_component(phi.matrix(), a, b, d - 1)?;
                    let d_here = helper
                        .component(d)
                        .ok_or(Error::DegreeOutOfRange(d, self.cap))?;
                    bracket = bracket.sub(&psi_prev.matmul(d_here)?)?;
                }
                bracket
            }
            SplitKind::MulRetraction => {
                if helper.shift != 1 {
                    return Err(Error::Precondition("retraction check needs the mul operator".into()));
                }
                if a != b + 1 {
                    return Err(Error::ShapeMismatch("retraction must map Sym^r to Sym^{r-1}".into()));
                }
                let r = a;
                let x_prev = helper
                    .component(r - 1)
                    .ok_or(Error::DegreeOutOfRange(r - 1, self.cap))?;
                if !phi.matrix().matmul(x_prev)?.is_identity() {
                    return Err(Error::VerificationFailed(format!(
                        "phi o mul_{} is not the identity",
                        r - 1
                    )));
                }
                // [lift(phi), mul] on Sym^d.
                let x_d = helper
                    .component(d)
                    .ok_or(Error::DegreeOutOfRange(d, self.cap))?;
                let psi_next = self.lift_component(phi.matrix(), a, b, d + 1)?;
                let mut bracket = psi_next.matmul(x_d)?;
                if d >= 1 {
                    let psi_d = self.lift_component(phi.matrix(), a, b, d)?;
                    let x_before = helper
                        .component(d - 1)
                        .ok_or(Error::DegreeOutOfRange(d - 1, self.cap))?;
                    bracket = bracket.sub(&x_before.matmul(&psi_d)?)?;
                }
                bracket
            }
        };
        self.scalar_of(&bracket, d)
    }

    /// The scalar by which lift(id on Sym^a) acts on degree d.
    pub fn lift_identity_scalar(&self, a: usize, d: usize) -> Result<FieldElement> {
        let id = Matrix::identity(self.field, self.dim(a));
        let comp = self.lift_component(&id, a, a, d)?;
        self.scalar_of(&comp, d)
    }

    fn scalar_of(&self, m: &Matrix, d: usize) -> Result<FieldElement> {
        if m.rows() != m.cols() {
            return Err(Error::NotScalar(d));
        }
        let c = if m.rows() == 0 { 0 } else { m[(0, 0)] };
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                let expected = if i == j { c } else { 0 };
                if m[(i, j)] != expected {
                    return Err(Error::NotScalar(d));
                }
            }
        }
        Ok(self.field.element(c))
    }
}

/// The map Sym^r W -> Sym^r V induced by an equivariant map of the bases,
/// between the symmetric powers of two contexts over the same group.
pub fn sym_power_hom(
    src_ctx: &SymContext,
    tgt_ctx: &SymContext,
    base_hom: &ModuleHom,
    r: usize,
) -> Result<ModuleHom> {
    if base_hom.matrix().cols() != src_ctx.t() || base_hom.matrix().rows() != tgt_ctx.t() {
        return Err(Error::ShapeMismatch("base hom does not match the contexts".into()));
    }
    let source = src_ctx.sym_power(r)?;
    let target = tgt_ctx.sym_power(r)?;
    let mut mat = Matrix::zeros(tgt_ctx.field(), target.dim(), source.dim());
    let out_table = &tgt_ctx.tables[r];
    for (col, beta) in src_ctx.monomials(r).iter().enumerate() {
        for (row, v) in src_ctx.substitute_monomial(base_hom.matrix(), beta, out_table) {
            mat[(row, col)] = v;
        }
    }
    ModuleHom::new(source, target, mat)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::binomial;
    use crate::gf::binom_mod_p;
    use crate::modact::check_equivariance;
    use crate::spechtmod;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn gf(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn natural_ctx(n: usize, p: u64, cap: usize) -> SymContext {
        let m = spechtmod::natural_module(n, gf(p)).unwrap();
        SymContext::new(m, cap).unwrap()
    }

    fn random_poly(ctx: &SymContext, d: usize, rng: &mut ChaCha8Rng) -> Poly {
        let p = ctx.field().modulus();
        let coeffs = (0..ctx.dim(d)).map(|_| rng.gen_range(0..p)).collect();
        ctx.poly_from_coeffs(d, coeffs).unwrap()
    }

    #[test]
    fn sym_power_dimensions_and_small_cases() {
        let ctx = natural_ctx(5, 5, 4);
        let k = ctx.sym_power(0).unwrap();
        assert_eq!(k.dim(), 1);
        assert!(k.gens().iter().all(|g| g.is_identity()));

        let v = ctx.sym_power(1).unwrap();
        assert_eq!(v.gens(), ctx.base().gens());

        // Stars and bars: dim Sym^3 of a 5-dim space is C(7, 3).
        assert_eq!(ctx.sym_power(3).unwrap().dim() as u128, binomial(7, 3));
        assert!(ctx.sym_power(5).is_err());
    }

    #[test]
    fn context_is_safely_shared_across_threads() {
        let ctx = natural_ctx(5, 5, 3);
        std::thread::scope(|scope| {
            for r in 0..=3usize {
                let ctx = &ctx;
                scope.spawn(move || {
                    let power = ctx.sym_power(r).unwrap();
                    assert_eq!(power.dim(), ctx.dim(r));
                });
            }
        });
    }

    #[test]
    fn sym_power_satisfies_coxeter_relations() {
        for (n, p) in [(4usize, 3u64), (5, 5)] {
            let ctx = natural_ctx(n, p, 3);
            for r in 0..=3 {
                ctx.sym_power(r).unwrap().check_coxeter().unwrap();
            }
        }
        let f = gf(5);
        let (s, _) = spechtmod::specht_n11(5, f).unwrap();
        let ctx = SymContext::new(s, 3).unwrap();
        for r in 0..=3 {
            ctx.sym_power(r).unwrap().check_coxeter().unwrap();
        }
    }

    #[test]
    fn multiplication_examples() {
        let ctx = natural_ctx(3, 5, 4);
        let x1 = ctx.monomial_poly(&[1, 0, 0]).unwrap();
        let x2 = ctx.monomial_poly(&[0, 1, 0]).unwrap();
        let prod = ctx.multiply(&x1, &x2).unwrap();
        assert_eq!(prod, ctx.monomial_poly(&[1, 1, 0]).unwrap());

        let one = ctx.monomial_poly(&[0, 0, 0]).unwrap();
        let f = ctx.poly_from_coeffs(2, (0..ctx.dim(2) as u64).collect()).unwrap();
        assert_eq!(ctx.multiply(&one, &f).unwrap(), f);

        // (x1 + x2)^2 = x1^2 + 2 x1 x2 + x2^2.
        let sum = ctx
            .poly_from_coeffs(1, vec![1, 1, 0])
            .unwrap();
        let sq = ctx.multiply(&sum, &sum).unwrap();
        let mut expected = ctx.zero_poly(2);
        for (mono, c) in [([2, 0, 0], 1u64), ([1, 1, 0], 2), ([0, 2, 0], 1)] {
            let m = ctx.monomial_poly(&mono).unwrap();
            let idx = m.coeffs.iter().position(|&v| v == 1).unwrap();
            expected.coeffs[idx] = c;
        }
        assert_eq!(sq, expected);

        // Degree cap respected.
        let f4 = ctx.monomial_poly(&[4, 0, 0]).unwrap();
        assert!(ctx.multiply(&f4, &x1).is_err());
    }

    #[test]
    fn multiplication_is_associative_on_random_samples() {
        let ctx = natural_ctx(4, 5, 6);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for (da, db, dc) in [(1, 1, 1), (1, 2, 3), (2, 2, 2), (0, 3, 2)] {
            let f = random_poly(&ctx, da, &mut rng);
            let g = random_poly(&ctx, db, &mut rng);
            let h = random_poly(&ctx, dc, &mut rng);
            let left = ctx.multiply(&ctx.multiply(&f, &g).unwrap(), &h).unwrap();
            let right = ctx.multiply(&f, &ctx.multiply(&g, &h).unwrap()).unwrap();
            assert_eq!(left, right);
        }
    }

    #[test]
    fn comultiplication_examples() {
        let ctx = natural_ctx(3, 5, 4);
        // Delta_0(f) = 1 (x) f.
        let f = ctx.monomial_poly(&[1, 2, 0]).unwrap();
        let d0 = ctx.comultiply_a(0, &f).unwrap();
        assert_eq!(d0.rows(), 1);
        assert_eq!(d0.row(0).to_vec(), f.coeffs);

        // Delta_1(x1^2) = 2 x1 (x) x1.
        let x1sq = ctx.monomial_poly(&[2, 0, 0]).unwrap();
        let d1 = ctx.comultiply_a(1, &x1sq).unwrap();
        let i_x1 = ctx.index_of(1, &Composition::new(vec![1, 0, 0])).unwrap();
        for r in 0..d1.rows() {
            for c in 0..d1.cols() {
                let expected = if r == i_x1 && c == i_x1 { 2 } else { 0 };
                assert_eq!(d1[(r, c)], expected);
            }
        }

        // Delta_2(x1^2 x2) = x1^2 (x) x2 + 2 x1 x2 (x) x1 over GF(5).
        let f = ctx.monomial_poly(&[2, 1, 0]).unwrap();
        let d2 = ctx.comultiply_a(2, &f).unwrap();
        let i_x1x1 = ctx.index_of(2, &Composition::new(vec![2, 0, 0])).unwrap();
        let i_x1x2 = ctx.index_of(2, &Composition::new(vec![1, 1, 0])).unwrap();
        let i_x2 = ctx.index_of(1, &Composition::new(vec![0, 1, 0])).unwrap();
        for r in 0..d2.rows() {
            for c in 0..d2.cols() {
                let expected = if (r, c) == (i_x1x1, i_x2) {
                    1
                } else if (r, c) == (i_x1x2, i_x1) {
                    2
                } else {
                    0
                };
                assert_eq!(d2[(r, c)], expected, "entry ({r},{c})");
            }
        }

        // Vanishes below degree a.
        let low = ctx.monomial_poly(&[1, 0, 0]).unwrap();
        assert_eq!(ctx.comultiply_a(3, &low).unwrap().cols(), 0);
    }

    #[test]
    fn comultiplication_is_coassociative_up_to_reindexing() {
        // (Delta_a (x) id) o Delta_{a+b} and (id (x) Delta_b) o Delta_{a+b}
        // give the same three-tensor coefficients.
        let ctx = natural_ctx(3, 5, 4);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for (a, b, d) in [(1usize, 1usize, 3usize), (1, 2, 4), (2, 1, 3)] {
            let f = random_poly(&ctx, d, &mut rng);
            let rest = d - a - b;
            let mut via_left = std::collections::BTreeMap::new();
            let first = ctx.comultiply_a(a + b, &f).unwrap();
            for (i, head) in ctx.monomials(a + b).iter().enumerate() {
                let head_poly = ctx.monomial_poly(head.entries()).unwrap();
                let split = ctx.comultiply_a(a, &head_poly).unwrap();
                for j in 0..ctx.dim(rest) {
                    if first[(i, j)] == 0 {
                        continue;
                    }
                    for u in 0..ctx.dim(a) {
                        for v in 0..ctx.dim(b) {
                            if split[(u, v)] == 0 {
                                continue;
                            }
                            let key = (u, v, j);
                            let e = via_left.entry(key).or_insert(0u64);
                            *e = ctx.field().add(*e, ctx.field().mul(first[(i, j)], split[(u, v)]));
                        }
                    }
                }
            }
            let mut via_right = std::collections::BTreeMap::new();
            let first = ctx.comultiply_a(a, &f).unwrap();
            for j in 0..ctx.dim(d - a) {
                let tail = ctx.monomials(d - a)[j].clone();
                let tail_poly = ctx.monomial_poly(tail.entries()).unwrap();
                let split = ctx.comultiply_a(b, &tail_poly).unwrap();
                for i in 0..ctx.dim(a) {
                    if first[(i, j)] == 0 {
                        continue;
                    }
                    for v in 0..ctx.dim(b) {
                        for w in 0..ctx.dim(rest) {
                            if split[(v, w)] == 0 {
                                continue;
                            }
                            let key = (i, v, w);
                            let e = via_right.entry(key).or_insert(0u64);
                            *e = ctx.field().add(*e, ctx.field().mul(first[(i, j)], split[(v, w)]));
                        }
                    }
                }
            }
            via_left.retain(|_, v| *v != 0);
            via_right.retain(|_, v| *v != 0);
            assert_eq!(via_left, via_right, "a={a} b={b} d={d}");
        }
    }

    #[test]
    fn divided_diff_examples() {
        let ctx = natural_ctx(3, 5, 5);
        let f = ctx.monomial_poly(&[2, 1, 0]).unwrap();
        assert_eq!(ctx.divided_diff(&Composition::zero(3), &f).unwrap(), f);

        // C(5,5) = 1 even though 5! = 0 in GF(5).
        let x1_5 = ctx.monomial_poly(&[5, 0, 0]).unwrap();
        let d = ctx.divided_diff(&Composition::new(vec![5, 0, 0]), &x1_5).unwrap();
        assert_eq!(d, ctx.monomial_poly(&[0, 0, 0]).unwrap());

        // alpha = (1,1) applied to x1^2 x2 gives 2 x1.
        let d = ctx.divided_diff(&Composition::new(vec![1, 1, 0]), &f).unwrap();
        let mut expected = ctx.zero_poly(1);
        let idx = ctx.index_of(1, &Composition::new(vec![1, 0, 0])).unwrap();
        expected.coeffs[idx] = 2;
        assert_eq!(d, expected);
    }

    #[test]
    fn lift_restricts_to_phi_and_vanishes_below() {
        let f = gf(5);
        let m = spechtmod::natural_module(4, f).unwrap();
        let ctx = SymContext::new(m, 4).unwrap();
        let zeta = crate::splitters::zeta(&ctx).unwrap();
        let endo = ctx.lift(&zeta).unwrap();
        assert_eq!(endo.shift(), 1);
        assert_eq!(endo.component(1).unwrap(), zeta.matrix());
        assert!(endo.component(0).unwrap().is_zero());
        // Every component is equivariant.
        for d in 0..=3usize {
            let comp = endo.component(d).unwrap();
            let src = ctx.sym_power(d).unwrap();
            let tgt = ctx.sym_power(d + 1).unwrap();
            assert!(check_equivariance(&src, &tgt, comp), "degree {d}");
        }
    }

    #[test]
    fn lift_of_identity_acts_by_binomial_scalars() {
        let ctx = natural_ctx(4, 5, 5);
        for a in 0..=4usize {
            for d in 0..=5usize {
                let got = ctx.lift_identity_scalar(a, d).unwrap();
                let expected = binom_mod_p(d as u64, a as u64, 5).unwrap();
                assert_eq!(got, expected, "a={a} d={d}");
            }
        }
    }

    #[test]
    fn lift_of_zero_is_zero() {
        let f = gf(5);
        let m = spechtmod::natural_module(4, f).unwrap();
        let ctx = SymContext::new(m, 3).unwrap();
        let zero = ModuleHom::zero(&ctx.sym_power(1).unwrap(), &ctx.sym_power(2).unwrap());
        let endo = ctx.lift(&zero).unwrap();
        for d in endo.degrees().collect::<Vec<_>>() {
            assert!(endo.component(d).unwrap().is_zero());
        }
    }

    #[test]
    fn boundary_is_sum_of_partial_derivatives() {
        let ctx = natural_ctx(3, 5, 3);
        let eps = spechtmod::epsilon(ctx.base()).unwrap();
        let boundary = ctx.boundary(&eps).unwrap();
        assert_eq!(boundary.shift(), -1);

        // boundary(x1) = 1.
        let x1 = ctx.monomial_poly(&[1, 0, 0]).unwrap();
        let img = boundary.component(1).unwrap().mul_vec(x1.coeffs()).unwrap();
        assert_eq!(img, vec![1]);

        // boundary(x1 x2) = x1 + x2.
        let f = ctx.monomial_poly(&[1, 1, 0]).unwrap();
        let img = boundary.component(2).unwrap().mul_vec(f.coeffs()).unwrap();
        let mut expected = ctx.zero_poly(1);
        expected.coeffs[ctx.index_of(1, &Composition::new(vec![1, 0, 0])).unwrap()] = 1;
        expected.coeffs[ctx.index_of(1, &Composition::new(vec![0, 1, 0])).unwrap()] = 1;
        assert_eq!(img, expected.coeffs);
    }

    #[test]
    fn boundary_is_a_derivation_on_random_samples() {
        let ctx = natural_ctx(4, 5, 5);
        let eps = spechtmod::epsilon(ctx.base()).unwrap();
        let boundary = ctx.boundary(&eps).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for (da, db) in [(1usize, 1usize), (1, 2), (2, 2), (2, 3)] {
            let f = random_poly(&ctx, da, &mut rng);
            let g = random_poly(&ctx, db, &mut rng);
            let fg = ctx.multiply(&f, &g).unwrap();
            let left = boundary
                .component(da + db)
                .unwrap()
                .mul_vec(fg.coeffs())
                .unwrap();
            let df = ctx
                .poly_from_coeffs(da - 1, boundary.component(da).unwrap().mul_vec(f.coeffs()).unwrap())
                .unwrap();
            let dg = ctx
                .poly_from_coeffs(db - 1, boundary.component(db).unwrap().mul_vec(g.coeffs()).unwrap())
                .unwrap();
            let mut right = ctx.multiply(&df, &g).unwrap();
            let second = ctx.multiply(&f, &dg).unwrap();
            for (r, s) in right.coeffs.iter_mut().zip(second.coeffs()) {
                *r = ctx.field().add(*r, *s);
            }
            assert_eq!(left, right.coeffs);
        }
    }

    #[test]
    fn boundary_components_are_surjective() {
        // rank of boundary_3 on Sym^3 of the 5-dim natural module is
        // dim Sym^2 = 15; independently, rank of boundary_2 is 5.
        let ctx = natural_ctx(5, 5, 3);
        let eps = spechtmod::epsilon(ctx.base()).unwrap();
        let boundary = ctx.boundary(&eps).unwrap();
        let d3 = boundary.component(3).unwrap();
        assert_eq!((d3.rows(), d3.cols()), (15, 35));
        assert_eq!(d3.rank(), 15);
        let d2 = boundary.component(2).unwrap();
        assert_eq!((d2.rows(), d2.cols()), (5, 15));
        assert_eq!(d2.rank(), 5);
    }

    #[test]
    fn boundary_and_mul_components_are_equivariant() {
        let f = gf(5);
        let m = spechtmod::natural_module(4, f).unwrap();
        let ctx = SymContext::new(m, 4).unwrap();
        let eps = spechtmod::epsilon(ctx.base()).unwrap();
        let boundary = ctx.boundary(&eps).unwrap();
        for d in 1..=4usize {
            let src = ctx.sym_power(d).unwrap();
            let tgt = ctx.sym_power(d - 1).unwrap();
            assert!(check_equivariance(&src, &tgt, boundary.component(d).unwrap()));
        }

        let (s, _) = spechtmod::specht_n11(5, f).unwrap();
        let s_ctx = SymContext::new(Arc::clone(&s), 4).unwrap();
        let iota = spechtmod::iota_trivial_to_specht(&s).unwrap();
        let mul = s_ctx.mul_map(&iota).unwrap();
        for d in 0..4usize {
            let src = s_ctx.sym_power(d).unwrap();
            let tgt = s_ctx.sym_power(d + 1).unwrap();
            assert!(check_equivariance(&src, &tgt, mul.component(d).unwrap()));
        }
    }

    #[test]
    fn boundary_rejects_wrong_basis() {
        let f = gf(5);
        let (s, _) = spechtmod::specht_n11(5, f).unwrap();
        let ctx = SymContext::new(Arc::clone(&s), 2).unwrap();
        // The zero functional is equivariant but not constant 1.
        let k = GModule::trivial(5, f);
        let zero = ModuleHom::new(s, k, Matrix::zeros(f, 1, 4)).unwrap();
        assert!(ctx.boundary(&zero).is_err());
    }

    #[test]
    fn mul_map_examples() {
        let f = gf(5);
        let (s, _) = spechtmod::specht_n11(5, f).unwrap();
        let ctx = SymContext::new(Arc::clone(&s), 3).unwrap();
        let iota = spechtmod::iota_trivial_to_specht(&s).unwrap();
        let mul = ctx.mul_map(&iota).unwrap();
        assert_eq!(mul.shift(), 1);

        // X_0(1) = sum e_i.
        let x0 = mul.component(0).unwrap();
        assert_eq!(x0.column(0), vec![1; 4]);

        // X_1(e_1) = e_1 * sum e_i.
        let e1 = ctx.monomial_poly(&[1, 0, 0, 0]).unwrap();
        let img = mul.component(1).unwrap().mul_vec(e1.coeffs()).unwrap();
        let sum = ctx.poly_from_coeffs(1, vec![1, 1, 1, 1]).unwrap();
        let expected = ctx.multiply(&e1, &sum).unwrap();
        assert_eq!(img, expected.coeffs);

        // Injectivity: rank of X_2 equals dim Sym^2.
        let x2 = mul.component(2).unwrap();
        assert_eq!(x2.rank(), ctx.dim(2));
    }

    #[test]
    fn mul_map_injective_at_larger_size() {
        // X_2 on Sym^2 S for n = 10, p = 5 has full rank C(10, 2) = 45.
        let f = gf(5);
        let (s, _) = spechtmod::specht_n11(10, f).unwrap();
        let ctx = SymContext::new(Arc::clone(&s), 3).unwrap();
        let iota = spechtmod::iota_trivial_to_specht(&s).unwrap();
        let mul = ctx.mul_map(&iota).unwrap();
        let x2 = mul.component(2).unwrap();
        assert_eq!(ctx.dim(2), 45);
        assert_eq!(x2.rank(), 45);
    }

    #[test]
    fn kernel_of_boundary_is_the_symmetric_power_of_the_kernel() {
        // ker(boundary_r on Sym^r M) has dimension C(n + r - 2, r) and equals
        // the image of Sym^r S under the inclusion.
        let n = 5usize;
        let f = gf(5);
        let m = spechtmod::natural_module(n, f).unwrap();
        let (s, s_incl) = spechtmod::specht_n11(n, f).unwrap();
        let m_ctx = SymContext::new(Arc::clone(&m), 4).unwrap();
        let s_ctx = SymContext::new(Arc::clone(&s), 4).unwrap();
        let eps = spechtmod::epsilon(&m).unwrap();
        let boundary = m_ctx.boundary(&eps).unwrap();
        for r in 1..=4usize {
            let dr = boundary.component(r).unwrap();
            let expected = binomial((n + r - 2) as u64, r as u64) as usize;
            let kernel_dim = m_ctx.dim(r) - dr.rank();
            assert_eq!(kernel_dim, expected, "r={r}");

            let incl_r = sym_power_hom(&s_ctx, &m_ctx, &s_incl, r).unwrap();
            assert_eq!(incl_r.rank(), expected);
            assert!(dr.matmul(incl_r.matrix()).unwrap().is_zero());
        }
    }

    #[test]
    fn commutator_scalar_examples() {
        // Case (i) with the squaring section of boundary_2: the commutator
        // acts on Sym^d by C(d, 1).
        let ctx = natural_ctx(4, 5, 4);
        let eps = spechtmod::epsilon(ctx.base()).unwrap();
        let boundary = ctx.boundary(&eps).unwrap();
        let zeta = crate::splitters::zeta(&ctx).unwrap();
        for d in 0..=3usize {
            let got = ctx
                .commutator_scalar(SplitKind::BoundarySection, &boundary, &zeta, d)
                .unwrap();
            assert_eq!(got, binom_mod_p(d as u64, 1, 5).unwrap(), "d={d}");
        }
        // d = 1 is the identity on degree r - 1.
        assert_eq!(
            ctx.commutator_scalar(SplitKind::BoundarySection, &boundary, &zeta, 1)
                .unwrap()
                .value,
            1
        );

        // Case (ii) with gamma: C(5, 2) = 10 = 0 mod 5.
        let f = gf(5);
        let (s, _) = spechtmod::specht_n11(5, f).unwrap();
        let s_ctx = SymContext::new(Arc::clone(&s), 6).unwrap();
        let iota = spechtmod::iota_trivial_to_specht(&s).unwrap();
        let mul = s_ctx.mul_map(&iota).unwrap();
        let gamma = crate::splitters::gamma(&s_ctx).unwrap();
        let got = s_ctx
            .commutator_scalar(SplitKind::MulRetraction, &mul, &gamma, 5)
            .unwrap();
        assert_eq!(got.value, 0);
    }

    #[test]
    fn sym_power_hom_of_inclusion_is_equivariant_and_injective() {
        let f = gf(5);
        let m = spechtmod::natural_module(5, f).unwrap();
        let (s, s_incl) = spechtmod::specht_n11(5, f).unwrap();
        let m_ctx = SymContext::new(m, 3).unwrap();
        let s_ctx = SymContext::new(s, 3).unwrap();
        let h = sym_power_hom(&s_ctx, &m_ctx, &s_incl, 2).unwrap();
        assert_eq!(h.rank(), s_ctx.dim(2));
    }
}
