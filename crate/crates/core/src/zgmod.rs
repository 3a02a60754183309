//! Integral representations: Z-free Z[G]-lattices, finitely presented
//! Z[G]-modules with torsion, and equivariant maps between them.

use std::collections::{BTreeMap, VecDeque};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::burnside::{coset_action, GSet};
use crate::error::{Error, Result};
use crate::exactla::{
    integer_kernel, inverse_unimodular, rank, smith_normal_form, solve_in_basis, ColumnLattice,
    IntMatrix,
};
use crate::grp::{FiniteGroup, Subgroup};

pub const DEFAULT_RETRY_BUDGET: usize = 64;

/// Trace of the action at each element conjugacy class representative.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CharacterVector(pub Vec<BigInt>);

impl CharacterVector {
    pub fn values(&self) -> &[BigInt] {
        &self.0
    }

    pub fn add(&self, other: &CharacterVector) -> CharacterVector {
        CharacterVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

/// A Z-free Z[G]-module of rank `r`, stored as one `r x r` matrix per group
/// element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZGLattice {
    group: Arc<FiniteGroup>,
    rank: usize,
    action: Vec<IntMatrix>,
}

impl ZGLattice {
    /// Validates the homomorphism property over all pairs of elements.
    pub fn new(group: Arc<FiniteGroup>, action: Vec<IntMatrix>) -> Result<Self> {
        let n = group.order();
        if action.len() != n {
            return Err(Error::InvalidModule(format!(
                "{} action matrices for a group of order {n}",
                action.len()
            )));
        }
        let r = action[0].rows();
        if action.iter().any(|m| m.rows() != r || m.cols() != r) {
            return Err(Error::InvalidModule("action matrices must all be square of the same size".into()));
        }
        if action[0] != IntMatrix::identity(r) {
            return Err(Error::InvalidModule("identity must act as the identity matrix".into()));
        }
        for g in 0..n {
            for h in 0..n {
                if action[g].mul(&action[h]) != action[group.mul(g, h)] {
                    return Err(Error::InvalidModule(format!(
                        "rho({g}) rho({h}) != rho({})",
                        group.mul(g, h)
                    )));
                }
            }
        }
        Ok(ZGLattice {
            group,
            rank: r,
            action,
        })
    }

    pub(crate) fn from_parts(group: Arc<FiniteGroup>, rank: usize, action: Vec<IntMatrix>) -> Self {
        debug_assert_eq!(action.len(), group.order());
        ZGLattice { group, rank, action }
    }

    /// Builds the action from the matrices of a generating set of elements;
    /// the remaining elements are filled in by multiplying out.
    pub fn from_generator_images(
        group: Arc<FiniteGroup>,
        rank: usize,
        images: &BTreeMap<usize, IntMatrix>,
    ) -> Result<Self> {
        let action = close_action(&group, rank, images, true)?;
        Self::new(group, action)
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn action(&self, g: usize) -> &IntMatrix {
        &self.action[g]
    }

    pub fn actions(&self) -> &[IntMatrix] {
        &self.action
    }

    pub fn zero(group: Arc<FiniteGroup>) -> Self {
        let n = group.order();
        Self::from_parts(group, 0, vec![IntMatrix::zeros(0, 0); n])
    }

    pub fn direct_sum(&self, other: &ZGLattice) -> ZGLattice {
        assert!(Arc::ptr_eq(&self.group, &other.group) || *self.group == *other.group);
        let action = self
            .action
            .iter()
            .zip(&other.action)
            .map(|(a, b)| a.block_diag(b))
            .collect();
        Self::from_parts(self.group.clone(), self.rank + other.rank, action)
    }

    pub fn power(&self, k: usize) -> ZGLattice {
        (0..k).fold(ZGLattice::zero(self.group.clone()), |acc, _| acc.direct_sum(self))
    }

    /// Saturated basis (as columns) of the vectors fixed by every element of `h`.
    pub fn fixed_sublattice(&self, h: &Subgroup) -> IntMatrix {
        let r = self.rank;
        let id = IntMatrix::identity(r);
        let mut stacked = IntMatrix::zeros(0, r);
        for &x in h.elements() {
            if x != 0 {
                stacked = stacked.vstack(&self.action[x].sub(&id));
            }
        }
        integer_kernel(&stacked)
    }

    pub fn character(&self) -> CharacterVector {
        CharacterVector(
            self.group
                .classes()
                .iter()
                .map(|c| self.action[c.representative].trace())
                .collect(),
        )
    }

    pub fn rationally_isomorphic(&self, other: &ZGLattice) -> bool {
        self.group == other.group && self.character() == other.character()
    }

    /// The same module in the basis given by the columns of the unimodular
    /// matrix `u`: `rho'(g) = u^-1 rho(g) u`.
    pub fn change_basis(&self, u: &IntMatrix) -> Result<ZGLattice> {
        let inv = inverse_unimodular(u)?;
        let action = self.action.iter().map(|m| inv.mul(m).mul(u)).collect();
        Ok(Self::from_parts(self.group.clone(), self.rank, action))
    }

    /// The G-stable sublattice spanned by the columns of `basis`, as a module
    /// in its own right.
    pub fn sublattice(&self, basis: &IntMatrix) -> Result<ZGLattice> {
        if basis.rows() != self.rank {
            return Err(Error::Dimension("sublattice basis has the wrong length".into()));
        }
        let k = basis.cols();
        let mut action = Vec::with_capacity(self.action.len());
        for m in &self.action {
            let coords = solve_in_basis(basis, &m.mul(basis))
                .map_err(|_| Error::InvalidModule("sublattice is not G-stable".into()))?;
            action.push(coords);
        }
        Ok(Self::from_parts(self.group.clone(), k, action))
    }

    /// `Σ_g rho(g)^T rho(g)` style sums: `Σ_g rho_self(g) * m * rho_other(g^-1)`.
    pub fn average_map_from(&self, source: &ZGLattice, m: &IntMatrix) -> IntMatrix {
        let g = &self.group;
        let mut acc = IntMatrix::zeros(self.rank, source.rank);
        for x in 0..g.order() {
            acc = acc.add(&self.action[x].mul(m).mul(&source.action[g.inv(x)]));
        }
        acc
    }

    pub fn restrict(&self, h: &Subgroup) -> ZGLattice {
        let sub = Arc::new(self.group.subgroup_as_group(h));
        let action = h.elements().iter().map(|&x| self.action[x].clone()).collect();
        Self::from_parts(sub, self.rank, action)
    }
}

/// Extends matrices given on a generating set of elements to all of `G` by
/// breadth-first multiplication. With `exact`, products reaching an element
/// twice must agree.
fn close_action(
    group: &FiniteGroup,
    rank: usize,
    images: &BTreeMap<usize, IntMatrix>,
    exact: bool,
) -> Result<Vec<IntMatrix>> {
    let n = group.order();
    for (&g, m) in images {
        if g >= n {
            return Err(Error::InvalidModule(format!("element {g} out of range")));
        }
        if m.rows() != rank || m.cols() != rank {
            return Err(Error::InvalidModule(format!("matrix for element {g} is not {rank}x{rank}")));
        }
    }
    let mut known: Vec<Option<IntMatrix>> = vec![None; n];
    known[0] = Some(IntMatrix::identity(rank));
    let mut queue = VecDeque::from([0]);
    while let Some(x) = queue.pop_front() {
        for (&s, ms) in images {
            let y = group.mul(s, x);
            let my = ms.mul(known[x].as_ref().expect("queued elements are known"));
            match &known[y] {
                Some(existing) if exact && *existing != my => {
                    return Err(Error::InvalidModule(format!("inconsistent action at element {y}")))
                }
                Some(_) => {}
                None => {
                    known[y] = Some(my);
                    queue.push_back(y);
                }
            }
        }
    }
    known
        .into_iter()
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| Error::InvalidModule("the given elements do not generate the group".into()))
}

pub fn trivial_lattice(group: &Arc<FiniteGroup>) -> ZGLattice {
    ZGLattice::from_parts(group.clone(), 1, vec![IntMatrix::identity(1); group.order()])
}

/// Basis = the points of the G-set; `rho(g)` permutes them.
pub fn permutation_lattice(group: &Arc<FiniteGroup>, gset: &GSet) -> ZGLattice {
    let d = gset.degree();
    let action = (0..group.order())
        .map(|g| {
            let mut m = IntMatrix::zeros(d, d);
            for x in 0..d {
                m[(gset.image(g, x), x)] = BigInt::one();
            }
            m
        })
        .collect();
    ZGLattice::from_parts(group.clone(), d, action)
}

/// `Z[G/H]`
pub fn coset_lattice(group: &Arc<FiniteGroup>, h: &Subgroup) -> ZGLattice {
    permutation_lattice(group, &coset_action(group, h))
}

/// `Z[G]`
pub fn regular_lattice(group: &Arc<FiniteGroup>) -> ZGLattice {
    coset_lattice(group, &group.trivial_subgroup())
}

/// Rank one, `g` acting as `+1` on `kernel` and `-1` elsewhere.
pub fn sign_lattice(group: &Arc<FiniteGroup>, kernel: &Subgroup) -> Result<ZGLattice> {
    let index = group.order() / kernel.order();
    if index != 2 {
        return Err(Error::IndexNotTwo(index));
    }
    let action = (0..group.order())
        .map(|g| IntMatrix::scalar(1, if kernel.contains(g) { 1 } else { -1 }))
        .collect();
    Ok(ZGLattice::from_parts(group.clone(), 1, action))
}

/// `Ind_D^G L` for a lattice `L` over `D` (element `i` of `L`'s group is
/// `d.elements()[i]`). Block `(j, i)` of `rho(g)` is `rho_L(t_j^-1 g t_i)`
/// where `g t_i D = t_j D`.
pub fn induced_lattice(group: &Arc<FiniteGroup>, d: &Subgroup, l: &ZGLattice) -> Result<ZGLattice> {
    if l.group().order() != d.order() || **l.group() != group.subgroup_as_group(d) {
        return Err(Error::InvalidModule("inducing lattice is not over the given subgroup".into()));
    }
    let space = group.cosets(d);
    let k = space.len();
    let r = l.rank();
    let pos: BTreeMap<usize, usize> = d.elements().iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let action = (0..group.order())
        .map(|g| {
            let mut m = IntMatrix::zeros(k * r, k * r);
            for i in 0..k {
                let ti = space.representative(i);
                let j = space.act(group, g, i);
                let tj = space.representative(j);
                let inner = group.mul(group.mul(group.inv(tj), g), ti);
                m.set_block(j * r, i * r, l.action(pos[&inner]));
            }
            m
        })
        .collect();
    Ok(ZGLattice::from_parts(group.clone(), k * r, action))
}

pub fn direct_sum(m: &ZGLattice, n: &ZGLattice) -> ZGLattice {
    m.direct_sum(n)
}

pub fn fixed_sublattice(m: &ZGLattice, h: &Subgroup) -> IntMatrix {
    m.fixed_sublattice(h)
}

pub fn character(m: &ZGLattice) -> CharacterVector {
    m.character()
}

pub fn rationally_isomorphic(m: &ZGLattice, n: &ZGLattice) -> bool {
    m.rationally_isomorphic(n)
}

pub fn is_equivariant(source: &ZGLattice, target: &ZGLattice, t: &IntMatrix) -> bool {
    t.rows() == target.rank()
        && t.cols() == source.rank()
        && (0..source.group().order())
            .all(|g| t.mul(source.action(g)) == target.action(g).mul(t))
}

/// An injective G-map `M -> N`: averages `Σ_g rho_N(g) R rho_M(g)^-1` over
/// random integer matrices `R` with entries in `[-3, 3]` until the result has
/// full column rank, then divides out the content of the entries.
pub fn find_equivariant_embedding(
    m: &ZGLattice,
    n: &ZGLattice,
    seed: u64,
    retry_budget: usize,
) -> Result<IntMatrix> {
    if !m.rationally_isomorphic(n) {
        return Err(Error::NotRationallyIsomorphic);
    }
    if m.rank() == 0 {
        return Ok(IntMatrix::zeros(0, 0));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..retry_budget {
        let r = random_matrix(&mut rng, n.rank(), m.rank(), 3);
        let t = n.average_map_from(m, &r);
        if rank(&t) == m.rank() {
            let c = t.content();
            let t = if c.is_one() {
                t
            } else {
                IntMatrix::new(t.rows(), t.cols(), t.entries().iter().map(|x| x / &c).collect())?
            };
            debug_assert!(is_equivariant(m, n, &t));
            return Ok(t);
        }
    }
    Err(Error::RetryBudgetExhausted(retry_budget))
}

pub(crate) fn random_matrix(rng: &mut impl Rng, rows: usize, cols: usize, bound: i64) -> IntMatrix {
    let data = (0..rows * cols)
        .map(|_| BigInt::from(rng.gen_range(-bound..=bound)))
        .collect();
    IntMatrix::new(rows, cols, data).expect("sized correctly")
}

/// `(free rank, torsion order)` of a fixed submodule.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedData {
    pub free_rank: usize,
    pub torsion: BigInt,
}

/// `M/tors` as a lattice, with the projection from generator coordinates.
#[derive(Clone, Debug)]
pub struct LatticeQuotient {
    pub lattice: ZGLattice,
    pub projection: IntMatrix,
}

/// A finitely presented Z[G]-module `Z^n / im(R)`, with `G` acting by integer
/// matrices on the generators that preserve `im(R)`.
#[derive(Clone, Debug)]
pub struct FpModule {
    group: Arc<FiniteGroup>,
    gens: usize,
    relations: IntMatrix,
    action: Vec<IntMatrix>,
    relation_lattice: ColumnLattice,
}

impl FpModule {
    pub fn new(group: Arc<FiniteGroup>, relations: IntMatrix, action: Vec<IntMatrix>) -> Result<Self> {
        let n = relations.rows();
        if action.len() != group.order() {
            return Err(Error::InvalidModule(format!(
                "{} action matrices for a group of order {}",
                action.len(),
                group.order()
            )));
        }
        if action.iter().any(|m| m.rows() != n || m.cols() != n) {
            return Err(Error::InvalidModule(format!("action matrices must be {n}x{n}")));
        }
        let relation_lattice = ColumnLattice::from_generators(&relations);
        let inside = |m: &IntMatrix| relation_lattice.contains_all(m);
        for (g, m) in action.iter().enumerate() {
            if !inside(&m.mul(&relations)) {
                return Err(Error::InvalidModule(format!(
                    "element {g} does not preserve the relations"
                )));
            }
        }
        if !inside(&action[0].sub(&IntMatrix::identity(n))) {
            return Err(Error::InvalidModule("identity must act trivially".into()));
        }
        for g in 0..group.order() {
            for h in 0..group.order() {
                let diff = action[g].mul(&action[h]).sub(&action[group.mul(g, h)]);
                if !inside(&diff) {
                    return Err(Error::InvalidModule(format!(
                        "rho({g}) rho({h}) != rho({}) modulo relations",
                        group.mul(g, h)
                    )));
                }
            }
        }
        Ok(FpModule {
            group,
            gens: n,
            relations,
            action,
            relation_lattice,
        })
    }

    /// As [`ZGLattice::from_generator_images`], with consistency checked
    /// modulo the relations.
    pub fn from_generator_images(
        group: Arc<FiniteGroup>,
        relations: IntMatrix,
        images: &BTreeMap<usize, IntMatrix>,
    ) -> Result<Self> {
        let action = close_action(&group, relations.rows(), images, false)?;
        Self::new(group, relations, action)
    }

    pub fn from_lattice(l: &ZGLattice) -> Self {
        FpModule {
            group: l.group.clone(),
            gens: l.rank,
            relations: IntMatrix::zeros(l.rank, 0),
            action: l.action.clone(),
            relation_lattice: ColumnLattice::zero(l.rank),
        }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn generators(&self) -> usize {
        self.gens
    }

    pub fn relations(&self) -> &IntMatrix {
        &self.relations
    }

    pub fn relation_lattice(&self) -> &ColumnLattice {
        &self.relation_lattice
    }

    pub fn action(&self, g: usize) -> &IntMatrix {
        &self.action[g]
    }

    pub fn is_lattice(&self) -> bool {
        self.relation_lattice.rank() == 0
    }

    pub fn direct_sum(&self, other: &FpModule) -> FpModule {
        let relations = self.relations.block_diag(&other.relations);
        let relation_lattice = ColumnLattice::from_generators(&relations);
        FpModule {
            group: self.group.clone(),
            gens: self.gens + other.gens,
            relations,
            action: self
                .action
                .iter()
                .zip(&other.action)
                .map(|(a, b)| a.block_diag(b))
                .collect(),
            relation_lattice,
        }
    }

    /// `{x : (rho(h) - 1) x ∈ im(R) for all h ∈ H}`, a lattice containing
    /// `im(R)`; the fixed submodule is this lattice modulo `im(R)`.
    ///
    /// Intersects the conditions one generator of `h` at a time.
    pub fn fixed_lattice(&self, h: &Subgroup) -> ColumnLattice {
        let n = self.gens;
        let id = IntMatrix::identity(n);
        let neg_rel = self.relations.neg();
        let mut x = ColumnLattice::full(n);
        for s in h.generators(&self.group) {
            let b = x.basis().clone();
            let k = b.cols();
            let system = self.action[s].sub(&id).mul(&b).hstack(&neg_rel);
            let ker = integer_kernel(&system);
            let coeffs = ker.submatrix(0..k, 0..ker.cols());
            x = ColumnLattice::from_generators(&b.mul(&coeffs));
        }
        x
    }

    pub fn fixed_data(&self, h: &Subgroup) -> FixedData {
        self.fixed_data_from(&self.fixed_lattice(h))
    }

    pub(crate) fn fixed_data_from(&self, fixed: &ColumnLattice) -> FixedData {
        let coords = fixed
            .coordinate_matrix(&self.relations)
            .expect("relations lie in every fixed lattice");
        let snf = smith_normal_form(&coords);
        let factors = snf.invariant_factors();
        FixedData {
            free_rank: fixed.rank() - factors.len(),
            torsion: factors.iter().product(),
        }
    }

    pub fn torsion_order(&self) -> BigInt {
        self.fixed_data(&self.group.trivial_subgroup()).torsion
    }

    pub fn free_rank(&self) -> usize {
        self.gens - self.relation_lattice.rank()
    }

    /// `M/tors` via the Smith form `U R V = D`: the free coordinates are the
    /// rows of `U` past the rank of `R`.
    pub fn lattice_quotient(&self) -> LatticeQuotient {
        let snf = smith_normal_form(&self.relations);
        let k = snf.rank();
        let n = self.gens;
        let projection = snf.u.submatrix(k..n, 0..n);
        let u_inv = inverse_unimodular(&snf.u).expect("Smith transforms are unimodular");
        let lift = u_inv.submatrix(0..n, k..n);
        let action = self
            .action
            .iter()
            .map(|m| projection.mul(m).mul(&lift))
            .collect();
        LatticeQuotient {
            lattice: ZGLattice::from_parts(self.group.clone(), n - k, action),
            projection,
        }
    }

    pub fn character(&self) -> CharacterVector {
        self.lattice_quotient().lattice.character()
    }

    pub fn rationally_isomorphic(&self, other: &FpModule) -> bool {
        self.group == other.group && self.character() == other.character()
    }
}

/// `Z/q` with `G` acting trivially, or through the sign character with the
/// given kernel.
pub fn cyclic_module(group: &Arc<FiniteGroup>, q: u64, sign_kernel: Option<&Subgroup>) -> Result<FpModule> {
    let base = match sign_kernel {
        Some(k) => sign_lattice(group, k)?,
        None => trivial_lattice(group),
    };
    reduce_mod(&base, q)
}

/// `L / qL`
pub fn reduce_mod(l: &ZGLattice, q: u64) -> Result<FpModule> {
    FpModule::new(l.group.clone(), IntMatrix::scalar(l.rank, q), l.action.clone())
}

/// `L / Z·(q v)` for a G-fixed vector `v`; torsion `Z/q` glued onto a lattice.
pub fn quotient_by_fixed_vector(l: &ZGLattice, v: &[BigInt], q: u64) -> Result<FpModule> {
    let col: Vec<BigInt> = v.iter().map(|x| x * BigInt::from(q)).collect();
    FpModule::new(
        l.group.clone(),
        IntMatrix::from_columns(l.rank, &[col]),
        l.action.clone(),
    )
}

pub fn fp_fixed_data(m: &FpModule, h: &Subgroup) -> FixedData {
    m.fixed_data(h)
}

/// Checks that `t` (target generators x source generators) induces a
/// well-defined G-map `M -> N`.
pub fn check_module_map(m: &FpModule, n: &FpModule, t: &IntMatrix) -> Result<()> {
    if t.rows() != n.gens || t.cols() != m.gens {
        return Err(Error::Dimension(format!(
            "map is {}x{}, expected {}x{}",
            t.rows(),
            t.cols(),
            n.gens,
            m.gens
        )));
    }
    if !n.relation_lattice.contains_all(&t.mul(&m.relations)) {
        return Err(Error::IllDefinedMap);
    }
    for g in 0..m.group.order() {
        let diff = t.mul(&m.action[g]).sub(&n.action[g].mul(t));
        if !n.relation_lattice.contains_all(&diff) {
            return Err(Error::NotEquivariant);
        }
    }
    Ok(())
}

/// A G-map between arbitrary FP modules obtained by averaging a lattice map
/// between lifts; `Σ_g rho_N(g) R rho_M(g^-1)`.
pub fn average_presented_map(m: &FpModule, n: &FpModule, r: &IntMatrix) -> IntMatrix {
    let g = &m.group;
    let mut acc = IntMatrix::zeros(n.gens, m.gens);
    for x in 0..g.order() {
        acc = acc.add(&n.action[x].mul(r).mul(&m.action[g.inv(x)]));
    }
    acc
}

pub fn is_zero_vector(v: &[BigInt]) -> bool {
    v.iter().all(Zero::is_zero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::burnside::BurnsideRing;
    use crate::grp::{group_from_generators, DEFAULT_GENERATION_BOUND};

    fn group(gens: &[Vec<usize>]) -> Arc<FiniteGroup> {
        Arc::new(group_from_generators(gens, DEFAULT_GENERATION_BOUND).unwrap())
    }

    fn c2() -> Arc<FiniteGroup> {
        group(&[vec![1, 0]])
    }

    fn v4() -> Arc<FiniteGroup> {
        group(&[vec![1, 0, 2, 3], vec![0, 1, 3, 2]])
    }

    fn chars(v: &[i64]) -> CharacterVector {
        CharacterVector(v.iter().map(|&x| BigInt::from(x)).collect())
    }

    #[test]
    fn trivial_examples() {
        let g = v4();
        let t = trivial_lattice(&g);
        assert_eq!(t.rank(), 1);
        assert_eq!(t.character(), chars(&[1, 1, 1, 1]));
        for h in [g.trivial_subgroup(), g.whole(), g.generate(&[1])] {
            assert_eq!(t.fixed_sublattice(&h).cols(), 1);
        }
        assert!(ZGLattice::new(g.clone(), t.actions().to_vec()).is_ok());
    }

    #[test]
    fn permutation_examples() {
        let g = v4();
        let whole = coset_lattice(&g, &g.whole());
        assert_eq!(whole, trivial_lattice(&g));
        let reg = regular_lattice(&g);
        assert_eq!(reg.rank(), 4);
        assert_eq!(reg.character(), chars(&[4, 0, 0, 0]));
        assert!(ZGLattice::new(g.clone(), reg.actions().to_vec()).is_ok());
    }

    #[test]
    fn sign_examples() {
        let g = c2();
        let s = sign_lattice(&g, &g.trivial_subgroup()).unwrap();
        assert_eq!(s.action(1), &IntMatrix::from_rows(&[[-1]]));
        assert_eq!(s.character(), chars(&[1, -1]));
        assert_eq!(s.fixed_sublattice(&g.whole()).cols(), 0);
        let v = v4();
        assert_eq!(sign_lattice(&v, &v.trivial_subgroup()), Err(Error::IndexNotTwo(4)));
    }

    #[test]
    fn induced_examples() {
        let g = v4();
        // Ind from G itself
        let t = trivial_lattice(&g);
        let whole_as_group = Arc::new(g.subgroup_as_group(&g.whole()));
        let t_over = trivial_lattice(&whole_as_group);
        assert_eq!(induced_lattice(&g, &g.whole(), &t_over).unwrap().actions(), t.actions());

        // Ind of the trivial lattice is the coset lattice, on the nose
        let d = g.generate(&[1]);
        let d_group = Arc::new(g.subgroup_as_group(&d));
        let ind = induced_lattice(&g, &d, &trivial_lattice(&d_group)).unwrap();
        let perm = coset_lattice(&g, &d);
        assert_eq!(ind.character(), perm.character());
        assert_eq!(ind.actions(), perm.actions());

        // Ind of the sign of an order-2 subgroup: induced-character oracle
        let eps = sign_lattice(&d_group, &d_group.trivial_subgroup()).unwrap();
        let ind = induced_lattice(&g, &d, &eps).unwrap();
        assert!(ZGLattice::new(g.clone(), ind.actions().to_vec()).is_ok());
        assert_eq!(ind.rank(), 2);
        let oracle: Vec<i64> = g
            .classes()
            .iter()
            .map(|c| {
                let x = c.representative;
                // (1/|D|) Σ_{y ∈ G, y^-1 x y ∈ D} eps(y^-1 x y)
                let s: i64 = (0..g.order())
                    .filter_map(|y| {
                        let conj = g.mul(g.mul(g.inv(y), x), y);
                        d.contains(conj).then_some(if conj == 0 { 1 } else { -1 })
                    })
                    .sum();
                s / d.order() as i64
            })
            .collect();
        assert_eq!(ind.character(), chars(&oracle));
        let mut sorted = oracle.clone();
        sorted.sort();
        assert_eq!(sorted, vec![-2, 0, 0, 2]);
    }

    #[test]
    fn direct_sum_examples() {
        let g = c2();
        let t = trivial_lattice(&g);
        assert_eq!(t.direct_sum(&ZGLattice::zero(g.clone())), t);
        let s = sign_lattice(&g, &g.trivial_subgroup()).unwrap();
        let sum = t.direct_sum(&s);
        assert_eq!(sum.character(), t.character().add(&s.character()));
        assert_eq!(sum.character(), regular_lattice(&g).character());
    }

    #[test]
    fn fixed_sublattice_ranks() {
        let ring = BurnsideRing::new(group(&[vec![1, 2, 0], vec![1, 0, 2]]), 64).unwrap();
        let g = ring.group().clone();
        let reg = regular_lattice(&g);
        for class in ring.table().classes() {
            let h = &class.representative;
            let fixed = reg.fixed_sublattice(h);
            assert_eq!(fixed.cols(), g.order() / h.order());
            // saturated, and equal to the span of the orbit sums
            let snf = smith_normal_form(&fixed);
            assert!(snf.invariant_factors().iter().all(|d| d.is_one()));
            let gset = coset_action(&g, &g.trivial_subgroup());
            let sums: Vec<Vec<BigInt>> = gset
                .orbits(h)
                .iter()
                .map(|o| (0..g.order()).map(|x| BigInt::from(o.contains(&x) as i64)).collect())
                .collect();
            let oracle = IntMatrix::from_columns(g.order(), &sums);
            assert_eq!(
                ColumnLattice::from_generators(&oracle),
                ColumnLattice::from_generators(&fixed)
            );
            // rank = average trace over H
            let trace_sum: BigInt = h.elements().iter().map(|&x| reg.action(x).trace()).sum();
            assert_eq!(trace_sum, BigInt::from(fixed.cols() * h.order()));
        }
    }

    #[test]
    fn generator_images_fill_in_the_action() {
        let g = v4();
        let reg = regular_lattice(&g);
        let gens = g.whole().generators(&g);
        let images: BTreeMap<usize, IntMatrix> = gens.iter().map(|&s| (s, reg.action(s).clone())).collect();
        let built = ZGLattice::from_generator_images(g.clone(), 4, &images).unwrap();
        assert_eq!(built, reg);

        let partial: BTreeMap<usize, IntMatrix> = [(gens[0], reg.action(gens[0]).clone())].into();
        assert!(ZGLattice::from_generator_images(g.clone(), 4, &partial).is_err());

        let mut bad = reg.actions().to_vec();
        bad[1] = IntMatrix::identity(4).neg();
        assert!(ZGLattice::new(g, bad).is_err());
    }

    #[test]
    fn fp_fixed_data_examples() {
        let g = c2();
        let z5 = cyclic_module(&g, 5, None).unwrap();
        for h in [g.trivial_subgroup(), g.whole()] {
            assert_eq!(
                z5.fixed_data(&h),
                FixedData {
                    free_rank: 0,
                    torsion: BigInt::from(5)
                }
            );
        }

        let reg = FpModule::from_lattice(&regular_lattice(&g));
        let fd = reg.fixed_data(&g.whole());
        assert_eq!(fd.free_rank, regular_lattice(&g).fixed_sublattice(&g.whole()).cols());
        assert!(fd.torsion.is_one());

        // Z/3 with the generator acting by -1: enumerate x with x ≡ -x (mod 3)
        let neg3 = cyclic_module(&g, 3, Some(&g.trivial_subgroup())).unwrap();
        let oracle = (0..3).filter(|x| (2 * x) % 3 == 0).count();
        assert_eq!(
            neg3.fixed_data(&g.whole()),
            FixedData {
                free_rank: 0,
                torsion: BigInt::from(oracle)
            }
        );
        assert_eq!(neg3.fixed_data(&g.trivial_subgroup()).torsion, BigInt::from(3));
    }

    #[test]
    fn fp_fixed_points_by_enumeration() {
        // Z[V4] / 3 Z[V4]: fixed points under H number 3^[G:H]
        let g = v4();
        let m = reduce_mod(&regular_lattice(&g), 3).unwrap();
        for h in [g.trivial_subgroup(), g.generate(&[1]), g.whole()] {
            let fd = m.fixed_data(&h);
            assert_eq!(fd.free_rank, 0);
            assert_eq!(fd.torsion, BigInt::from(3u32.pow((4 / h.order()) as u32)));
        }
    }

    #[test]
    fn lattice_quotient_of_glued_module() {
        // Z[C2] / (3 N) where N = e_0 + e_1 is the norm element
        let g = c2();
        let reg = regular_lattice(&g);
        let m = quotient_by_fixed_vector(&reg, &[BigInt::from(1), BigInt::from(1)], 3).unwrap();
        assert_eq!(m.torsion_order(), BigInt::from(3));
        let q = m.lattice_quotient();
        assert_eq!(q.lattice.rank(), 1);
        assert!(ZGLattice::new(g.clone(), q.lattice.actions().to_vec()).is_ok());
        // Z[C2]/Z·N is the sign representation
        assert_eq!(q.lattice.character(), chars(&[1, -1]));
        // fixed points of G: span of N modulo 3N, i.e. Z/3 and no free part
        let fd = m.fixed_data(&g.whole());
        assert_eq!(fd.free_rank, 0);
        assert_eq!(fd.torsion, BigInt::from(3));
    }

    #[test]
    fn fp_validation() {
        let g = c2();
        // swapping two generators does not preserve im((1, 0)^T)
        let swap = IntMatrix::from_rows(&[[0, 1], [1, 0]]);
        let r = IntMatrix::from_rows(&[[2], [0]]);
        assert!(FpModule::new(g.clone(), r, vec![IntMatrix::identity(2), swap]).is_err());
    }

    #[test]
    fn embedding_examples() {
        let g = v4();
        let t = trivial_lattice(&g);
        let e = find_equivariant_embedding(&t, &t, 7, DEFAULT_RETRY_BUDGET).unwrap();
        assert_eq!(e.entries().len(), 1);
        assert!(e[(0, 0)] == BigInt::one() || e[(0, 0)] == -BigInt::one());

        let reg = regular_lattice(&g);
        let e = find_equivariant_embedding(&reg, &reg, 3, DEFAULT_RETRY_BUDGET).unwrap();
        assert!(is_equivariant(&reg, &reg, &e));
        assert!(is_equivariant(&reg, &reg, &IntMatrix::identity(4)));

        // the V4 Brauer relation pair
        let ring = BurnsideRing::new(g.clone(), 64).unwrap();
        let left = reg.direct_sum(&t).direct_sum(&t);
        let mut right = ZGLattice::zero(g.clone());
        for c in 1..4 {
            right = right.direct_sum(&coset_lattice(&g, ring.representative(c)));
        }
        assert!(left.rationally_isomorphic(&right));
        assert_eq!(left.character(), chars(&[6, 2, 2, 2]));
        for seed in 0..4 {
            let e = find_equivariant_embedding(&left, &right, seed, DEFAULT_RETRY_BUDGET).unwrap();
            assert!(is_equivariant(&left, &right, &e));
            assert_eq!(rank(&e), 6);
        }

        let s = sign_lattice(&c2(), &c2().trivial_subgroup()).unwrap();
        let t2 = trivial_lattice(&c2());
        assert_eq!(
            find_equivariant_embedding(&t2, &s, 0, 8),
            Err(Error::NotRationallyIsomorphic)
        );
        assert!(!t2.rationally_isomorphic(&s));
    }

    #[test]
    fn change_basis_preserves_character() {
        let g = v4();
        let reg = regular_lattice(&g);
        let u = IntMatrix::from_rows(&[[1, 2, 0, 0], [0, 1, 0, 0], [0, 0, 1, -1], [0, 0, 0, 1]]);
        let twisted = reg.change_basis(&u).unwrap();
        assert!(ZGLattice::new(g.clone(), twisted.actions().to_vec()).is_ok());
        assert!(twisted.rationally_isomorphic(&reg));
        assert!(is_equivariant(&twisted, &reg, &u));
    }
}
