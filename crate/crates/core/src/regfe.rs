//! Regulator constants and factor equivalence.
//!
//! For a Brauer relation `Θ = Σ n_H H` and a lattice `M` with a G-invariant
//! positive definite pairing, the regulator constant is
//! `Π_H det((1/|H|) <,> on M^H)^{n_H}`. Two modules are factor equivalent when
//! the index function `H -> [N^H : T(M^H)] / |ker(T)^H|` of an equivariant map
//! `T` with finite kernel and cokernel is trivial on every Brauer relation.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::burnside::{BrauerRelationBasis, BurnsideElement, BurnsideRing};
use crate::error::{Error, Result};
use crate::exactla::{
    determinant, gram_determinant, integer_kernel, lattice_index_of, pow_rational, ColumnLattice,
    IntMatrix,
};
use crate::grp::Subgroup;
use crate::zgmod::{check_module_map, find_equivariant_embedding, FpModule, ZGLattice};

/// A symmetric, positive definite, G-invariant Gram matrix on a lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantPairing {
    gram: IntMatrix,
}

impl InvariantPairing {
    pub fn new(m: &ZGLattice, gram: IntMatrix) -> Result<Self> {
        if gram.rows() != m.rank() || gram.cols() != m.rank() {
            return Err(Error::InvalidPairing(format!(
                "Gram matrix must be {0}x{0}",
                m.rank()
            )));
        }
        if !gram.is_symmetric() {
            return Err(Error::InvalidPairing("not symmetric".into()));
        }
        for k in 1..=gram.rows() {
            if !determinant(&gram.submatrix(0..k, 0..k)).is_positive() {
                return Err(Error::InvalidPairing("not positive definite".into()));
            }
        }
        for (g, rho) in m.actions().iter().enumerate() {
            if rho.transpose().mul(&gram).mul(rho) != gram {
                return Err(Error::InvalidPairing(format!("not invariant under element {g}")));
            }
        }
        Ok(InvariantPairing { gram })
    }

    pub fn gram(&self) -> &IntMatrix {
        &self.gram
    }
}

/// `Σ_g rho(g)^T rho(g)`
pub fn averaged_pairing(m: &ZGLattice) -> InvariantPairing {
    let r = m.rank();
    let gram = m
        .actions()
        .iter()
        .fold(IntMatrix::zeros(r, r), |acc, rho| acc.add(&rho.transpose().mul(rho)));
    InvariantPairing { gram }
}

/// `Σ_g rho(g)^T D rho(g)` for the diagonal matrix `D` of positive weights.
pub fn weighted_pairing(m: &ZGLattice, weights: &[BigInt]) -> Result<InvariantPairing> {
    let r = m.rank();
    if weights.len() != r || weights.iter().any(|w| !w.is_positive()) {
        return Err(Error::InvalidPairing(format!("need {r} positive weights")));
    }
    let mut d = IntMatrix::zeros(r, r);
    for (i, w) in weights.iter().enumerate() {
        d[(i, i)] = w.clone();
    }
    let gram = m
        .actions()
        .iter()
        .fold(IntMatrix::zeros(r, r), |acc, rho| acc.add(&rho.transpose().mul(&d).mul(rho)));
    Ok(InvariantPairing { gram })
}

fn require_relation(ring: &BurnsideRing, theta: &BurnsideElement) -> Result<()> {
    if ring.is_brauer_relation(theta) {
        Ok(())
    } else {
        Err(Error::NotBrauerRelation)
    }
}

fn scale_for(h: &Subgroup) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(h.order()))
}

/// `Π det((1/|H|) basis_H^T P basis_H)^{n_H}` over the support of `theta`.
fn evaluate(
    theta: &BurnsideElement,
    gram: &IntMatrix,
    subgroup: impl Fn(usize) -> Subgroup,
    mut basis: impl FnMut(usize, &Subgroup) -> IntMatrix,
) -> Result<BigRational> {
    let mut acc = BigRational::one();
    for (class, n) in theta.support() {
        let h = subgroup(class);
        let b = basis(class, &h);
        let det = gram_determinant(gram, &b, &scale_for(&h))?;
        acc *= pow_rational(&det, n);
    }
    Ok(acc)
}

pub fn regulator_constant(
    ring: &BurnsideRing,
    theta: &BurnsideElement,
    m: &ZGLattice,
    pairing: Option<&InvariantPairing>,
) -> Result<BigRational> {
    regulator_constant_at(ring, theta, m, pairing, |c| ring.representative(c).clone())
}

/// As [`regulator_constant`], evaluating class `c` at the subgroup
/// `subgroup(c)` instead of the canonical representative.
pub fn regulator_constant_at(
    ring: &BurnsideRing,
    theta: &BurnsideElement,
    m: &ZGLattice,
    pairing: Option<&InvariantPairing>,
    subgroup: impl Fn(usize) -> Subgroup,
) -> Result<BigRational> {
    require_relation(ring, theta)?;
    let owned;
    let p = match pairing {
        Some(p) => p,
        None => {
            owned = averaged_pairing(m);
            &owned
        }
    };
    evaluate(theta, p.gram(), subgroup, |_, h| m.fixed_sublattice(h))
}

pub fn regulator_constants_table(
    ring: &BurnsideRing,
    basis: &BrauerRelationBasis,
    m: &ZGLattice,
) -> Result<Vec<BigRational>> {
    let p = averaged_pairing(m);
    let mut cache: Vec<Option<IntMatrix>> = vec![None; ring.class_count()];
    basis
        .relations()
        .iter()
        .map(|theta| {
            require_relation(ring, theta)?;
            evaluate(
                theta,
                p.gram(),
                |c| ring.representative(c).clone(),
                |c, h| cache[c].get_or_insert_with(|| m.fixed_sublattice(h)).clone(),
            )
        })
        .collect()
}

/// Regulator constant of a module with torsion, computed on `M/tors` with the
/// image of `M^H` standing in for `M^H / tors`.
pub fn regulator_constant_presented(
    ring: &BurnsideRing,
    theta: &BurnsideElement,
    m: &FpModule,
) -> Result<BigRational> {
    require_relation(ring, theta)?;
    let quotient = m.lattice_quotient();
    let p = averaged_pairing(&quotient.lattice);
    evaluate(
        theta,
        p.gram(),
        |c| ring.representative(c).clone(),
        |_, h| {
            let fixed = m.fixed_lattice(h);
            ColumnLattice::from_generators(&quotient.projection.mul(fixed.basis()))
                .basis()
                .clone()
        },
    )
}

pub fn regulator_constants_table_presented(
    ring: &BurnsideRing,
    basis: &BrauerRelationBasis,
    m: &FpModule,
) -> Result<Vec<BigRational>> {
    basis
        .relations()
        .iter()
        .map(|theta| regulator_constant_presented(ring, theta, m))
        .collect()
}

/// A positive rational number per subgroup class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupFunction {
    values: Vec<BigRational>,
}

impl SubgroupFunction {
    pub fn new(values: Vec<BigRational>) -> Result<Self> {
        if values.iter().any(|v| !v.is_positive()) {
            return Err(Error::Dimension("subgroup function values must be positive".into()));
        }
        Ok(SubgroupFunction { values })
    }

    pub fn values(&self) -> &[BigRational] {
        &self.values
    }

    pub fn value(&self, class: usize) -> &BigRational {
        &self.values[class]
    }

    /// `Π f(H)^{n_H}`
    pub fn evaluate(&self, theta: &BurnsideElement) -> BigRational {
        theta
            .support()
            .map(|(c, n)| pow_rational(&self.values[c], n))
            .product()
    }
}

/// `[N^H : T(M^H)] / |ker(T)^H|` for a single subgroup.
pub fn index_at(m: &FpModule, n: &FpModule, t: &IntMatrix, h: &Subgroup) -> Result<BigRational> {
    let xm = m.fixed_lattice(h);
    let xn = n.fixed_lattice(h);
    let image = ColumnLattice::from_generators(&t.mul(xm.basis()).hstack(n.relations()));
    if image.rank() != xn.rank() {
        return Err(Error::InfiniteCokernel);
    }
    let cokernel = lattice_index_of(&image, &xn)?;

    // {x in M^H : T x ∈ im(R_N)} modulo im(R_M)
    let b = xm.basis();
    let k = b.cols();
    let ker = integer_kernel(&t.mul(b).hstack(&n.relations().neg()));
    let y = ColumnLattice::from_generators(&b.mul(&ker.submatrix(0..k, 0..ker.cols())));
    if y.rank() != m.relation_lattice().rank() {
        return Err(Error::InfiniteKernel);
    }
    let kernel = lattice_index_of(m.relation_lattice(), &y)?;
    Ok(cokernel / kernel)
}

pub fn index_function(
    ring: &BurnsideRing,
    m: &FpModule,
    n: &FpModule,
    t: &IntMatrix,
) -> Result<SubgroupFunction> {
    check_module_map(m, n, t)?;
    let values = ring
        .table()
        .classes()
        .iter()
        .map(|c| index_at(m, n, t, &c.representative))
        .collect::<Result<Vec<_>>>()?;
    SubgroupFunction::new(values)
}

pub fn index_function_lattices(
    ring: &BurnsideRing,
    m: &ZGLattice,
    n: &ZGLattice,
    t: &IntMatrix,
) -> Result<SubgroupFunction> {
    index_function(ring, &FpModule::from_lattice(m), &FpModule::from_lattice(n), t)
}

/// Per-relation defects `Π f(H)^{n_H}`; factorisable iff all equal 1.
pub fn is_factorisable(f: &SubgroupFunction, basis: &BrauerRelationBasis) -> (bool, Vec<BigRational>) {
    let defects: Vec<BigRational> = basis.relations().iter().map(|r| f.evaluate(r)).collect();
    (defects.iter().all(One::is_one), defects)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorEquivalenceReport {
    pub relations: Vec<BurnsideElement>,
    pub embedding: IntMatrix,
    pub index_function: SubgroupFunction,
    pub defects: Vec<BigRational>,
    pub regulator_constants_m: Vec<BigRational>,
    pub regulator_constants_n: Vec<BigRational>,
    /// Per relation: does the regulator-constant route say "trivial"?
    pub corollary: Vec<bool>,
    pub verdict: bool,
}

fn assemble_report(
    basis: &BrauerRelationBasis,
    embedding: IntMatrix,
    index_function: SubgroupFunction,
    regulator_constants_m: Vec<BigRational>,
    regulator_constants_n: Vec<BigRational>,
    corollary: Vec<bool>,
) -> Result<FactorEquivalenceReport> {
    let (verdict, defects) = is_factorisable(&index_function, basis);
    if let Some(relation) = defects
        .iter()
        .zip(&corollary)
        .position(|(d, &c)| d.is_one() != c)
    {
        return Err(Error::RouteDisagreement { relation });
    }
    Ok(FactorEquivalenceReport {
        relations: basis.relations().to_vec(),
        embedding,
        index_function,
        defects,
        regulator_constants_m,
        regulator_constants_n,
        corollary,
        verdict,
    })
}

/// Decides factor equivalence of two lattices by the index function of a
/// random equivariant embedding, cross-checked against regulator constants.
pub fn factor_equivalent(
    ring: &BurnsideRing,
    basis: &BrauerRelationBasis,
    m: &ZGLattice,
    n: &ZGLattice,
    seed: u64,
    retry_budget: usize,
) -> Result<FactorEquivalenceReport> {
    let t = find_equivariant_embedding(m, n, seed, retry_budget)?;
    factor_equivalent_with_map(ring, basis, m, n, t)
}

pub fn factor_equivalent_with_map(
    ring: &BurnsideRing,
    basis: &BrauerRelationBasis,
    m: &ZGLattice,
    n: &ZGLattice,
    t: IntMatrix,
) -> Result<FactorEquivalenceReport> {
    let f = index_function_lattices(ring, m, n, &t)?;
    let cm = regulator_constants_table(ring, basis, m)?;
    let cn = regulator_constants_table(ring, basis, n)?;
    let corollary = cm.iter().zip(&cn).map(|(a, b)| a == b).collect();
    assemble_report(basis, t, f, cm, cn, corollary)
}

/// Factor equivalence for modules with torsion along a given map; the
/// regulator route compares `C(M)/C(N)` with `Π (|M_tors^H| / |N_tors^H|)^{2 n_H}`.
pub fn factor_equivalent_presented(
    ring: &BurnsideRing,
    basis: &BrauerRelationBasis,
    m: &FpModule,
    n: &FpModule,
    t: IntMatrix,
) -> Result<FactorEquivalenceReport> {
    let f = index_function(ring, m, n, &t)?;
    let cm = regulator_constants_table_presented(ring, basis, m)?;
    let cn = regulator_constants_table_presented(ring, basis, n)?;
    let corollary = basis
        .relations()
        .iter()
        .zip(cm.iter().zip(&cn))
        .map(|(theta, (a, b))| a / b == torsion_correction(ring, theta, m, n))
        .collect();
    assemble_report(basis, t, f, cm, cn, corollary)
}

/// `Π (|M_tors^H| / |N_tors^H|)^{2 n_H}`
pub fn torsion_correction(ring: &BurnsideRing, theta: &BurnsideElement, m: &FpModule, n: &FpModule) -> BigRational {
    theta
        .support()
        .map(|(c, k)| {
            let h = ring.representative(c);
            let ratio = BigRational::new(m.fixed_data(h).torsion, n.fixed_data(h).torsion);
            pow_rational(&ratio, 2 * k)
        })
        .product()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LemmaCheck {
    pub lhs: BigRational,
    pub rhs: BigRational,
    pub holds: bool,
}

/// Both sides of
/// `C(M) = Π_H (f(H) |M_tors^H| / |N_tors^H|)^{2 n_H} C(N)`
/// for a map `T: M -> N` with finite kernel and cokernel.
pub fn verify_lemma(
    ring: &BurnsideRing,
    theta: &BurnsideElement,
    m: &FpModule,
    n: &FpModule,
    t: &IntMatrix,
) -> Result<LemmaCheck> {
    require_relation(ring, theta)?;
    check_module_map(m, n, t)?;
    let lhs = regulator_constant_presented(ring, theta, m)?;
    let mut rhs = regulator_constant_presented(ring, theta, n)?;
    for (c, k) in theta.support() {
        let h = ring.representative(c);
        let f = index_at(m, n, t, h)?;
        let tors = BigRational::new(m.fixed_data(h).torsion, n.fixed_data(h).torsion);
        rhs *= pow_rational(&(f * tors), 2 * k);
    }
    let holds = lhs == rhs;
    Ok(LemmaCheck { lhs, rhs, holds })
}
