//! Group-theoretic models of S-unit lattices and of the comparison modules
//! for K-groups of rings of integers, with checks of their regulator
//! constants.
//!
//! Places are modelled by a G-set `S = ⊔ G/D_i`; the residue degree of an
//! H-orbit with representative `q` is `|H ∩ Stab(q)|` (everything unramified).

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::One;

use crate::burnside::{coset_action, BrauerRelationBasis, BurnsideElement, BurnsideRing, GSet};
use crate::error::{Error, Result};
use crate::exactla::{lattice_index, pow_rational, IntMatrix};
use crate::grp::{FiniteGroup, Subgroup};
use crate::regfe::{regulator_constant, regulator_constants_table, InvariantPairing};
use crate::zgmod::{
    coset_lattice, induced_lattice, permutation_lattice, regular_lattice, sign_lattice,
    trivial_lattice, ZGLattice,
};

/// The G-set `S = ⊔ G/D_i` of places above the chosen decomposition groups.
#[derive(Clone, Debug)]
pub struct PlaceModel {
    group: Arc<FiniteGroup>,
    decomposition_groups: Vec<Subgroup>,
    places: GSet,
    stabilizers: Vec<Subgroup>,
}

impl PlaceModel {
    pub fn new(group: Arc<FiniteGroup>, decomposition_groups: Vec<Subgroup>) -> Result<Self> {
        let mut parts = decomposition_groups.iter();
        let first = parts
            .next()
            .ok_or_else(|| Error::InvalidPlaceModel("need at least one decomposition group".into()))?;
        let places = parts.fold(coset_action(&group, first), |acc, d| {
            acc.disjoint_union(&coset_action(&group, d))
        });
        let stabilizers = (0..places.degree()).map(|x| places.stabilizer(&group, x)).collect();
        Ok(PlaceModel {
            group,
            decomposition_groups,
            places,
            stabilizers,
        })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn decomposition_groups(&self) -> &[Subgroup] {
        &self.decomposition_groups
    }

    pub fn places(&self) -> &GSet {
        &self.places
    }

    pub fn stabilizer(&self, point: usize) -> &Subgroup {
        &self.stabilizers[point]
    }

    pub fn len(&self) -> usize {
        self.places.degree()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// `I_S = ker(Z[S] -> Z)` with basis `e_0 - e_j`.
#[derive(Clone, Debug)]
pub struct SUnitLattice {
    pub ambient: ZGLattice,
    pub lattice: ZGLattice,
    /// Columns are the basis vectors of `I_S` in the coordinates of `Z[S]`.
    pub basis: IntMatrix,
}

pub fn sunit_lattice(model: &PlaceModel) -> Result<SUnitLattice> {
    let ambient = permutation_lattice(model.group(), model.places());
    let s = model.len();
    let mut basis = IntMatrix::zeros(s, s - 1);
    for j in 1..s {
        basis[(0, j - 1)] = BigInt::one();
        basis[(j, j - 1)] = -BigInt::one();
    }
    let lattice = ambient.sublattice(&basis)?;
    Ok(SUnitLattice {
        ambient,
        lattice,
        basis,
    })
}

/// H-orbits on the places with their residue degrees, `n = Π f`, `l = lcm f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidueData {
    pub orbits: Vec<Vec<usize>>,
    pub degrees: Vec<usize>,
    pub n: BigInt,
    pub l: BigInt,
}

impl ResidueData {
    /// `n / l`
    pub fn expected_index(&self) -> BigRational {
        BigRational::new(self.n.clone(), self.l.clone())
    }
}

pub fn residue_degrees(model: &PlaceModel, h: &Subgroup) -> Result<ResidueData> {
    let orbits = model.places().orbits(h);
    let mut degrees = Vec::with_capacity(orbits.len());
    for orbit in &orbits {
        let stab = model.stabilizer(orbit[0]);
        let f = h.elements().iter().filter(|&&x| stab.contains(x)).count();
        if orbit.len() * f != h.order() {
            return Err(Error::InvalidPlaceModel(format!(
                "orbit of size {} with residue degree {f} in a subgroup of order {}",
                orbit.len(),
                h.order()
            )));
        }
        degrees.push(f);
    }
    let n = degrees.iter().map(|&f| BigInt::from(f)).product();
    let l = degrees
        .iter()
        .fold(BigInt::one(), |acc, &f| acc.lcm(&BigInt::from(f)));
    Ok(ResidueData { orbits, degrees, n, l })
}

/// Images of the basis `p_1 - p_i` of the S-unit lattice of the fixed field,
/// under `p -> f_p Σ_{q | p} q`, in `Z[S]` coordinates.
pub fn subfield_lattice_embedding(model: &PlaceModel, h: &Subgroup) -> Result<IntMatrix> {
    let data = residue_degrees(model, h)?;
    let s = model.len();
    let k = data.orbits.len();
    let mut out = IntMatrix::zeros(s, k - 1);
    let f0 = BigInt::from(data.degrees[0]);
    for i in 1..k {
        for &q in &data.orbits[0] {
            out[(q, i - 1)] += &f0;
        }
        let fi = BigInt::from(data.degrees[i]);
        for &q in &data.orbits[i] {
            out[(q, i - 1)] -= &fi;
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SUnitIndexCheck {
    pub index: BigRational,
    pub expected: BigRational,
    pub fixed_rank: usize,
    pub orbit_count: usize,
    pub holds: bool,
}

/// Compares `[(I_S)^H : image]` with `n(H)/l(H)` and checks
/// `rank (I_S)^H = #orbits - 1`.
pub fn verify_sunit_index(model: &PlaceModel, h: &Subgroup) -> Result<SUnitIndexCheck> {
    let sunit = sunit_lattice(model)?;
    let data = residue_degrees(model, h)?;
    let image = subfield_lattice_embedding(model, h)?;
    let fixed = sunit.basis.mul(&sunit.lattice.fixed_sublattice(h));
    let index = lattice_index(&image, &fixed)?;
    let expected = data.expected_index();
    let fixed_rank = fixed.cols();
    let orbit_count = data.orbits.len();
    let holds = index == expected && fixed_rank + 1 == orbit_count;
    Ok(SUnitIndexCheck {
        index,
        expected,
        fixed_rank,
        orbit_count,
        holds,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedFormCheck {
    pub lhs: BigRational,
    pub rhs: BigRational,
    /// The same regulator constant with the averaged pairing on `I_S`.
    pub lhs_averaged: BigRational,
    pub holds: bool,
}

/// `C(I_S) = C(triv) / Π_i C(Z[G/D_i]) · Π_H (l(H)/n(H))^{2 n_H}`, with the
/// left side computed from the pairing making the points of `S` orthonormal.
pub fn verify_sunit_closed_form(
    ring: &BurnsideRing,
    model: &PlaceModel,
    theta: &BurnsideElement,
) -> Result<ClosedFormCheck> {
    let group = model.group();
    let sunit = sunit_lattice(model)?;
    let orthonormal = InvariantPairing::new(
        &sunit.lattice,
        sunit.basis.transpose().mul(&sunit.basis),
    )?;
    let lhs = regulator_constant(ring, theta, &sunit.lattice, Some(&orthonormal))?;
    let lhs_averaged = regulator_constant(ring, theta, &sunit.lattice, None)?;

    let mut rhs = regulator_constant(ring, theta, &trivial_lattice(group), None)?;
    for d in model.decomposition_groups() {
        rhs /= regulator_constant(ring, theta, &coset_lattice(group, d), None)?;
    }
    for (c, k) in theta.support() {
        let data = residue_degrees(model, ring.representative(c))?;
        rhs *= pow_rational(&BigRational::new(data.l, data.n), 2 * k);
    }
    let holds = lhs == rhs && lhs == lhs_averaged;
    Ok(ClosedFormCheck {
        lhs,
        rhs,
        lhs_averaged,
        holds,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Parity {
    Odd,
    Even,
}

/// For odd parity `⊕ Z[G/D] ⊕ Z[G]^{s2}` over `D` of order at most 2; for
/// even parity `⊕ Ind_D^G(ε) ⊕ Z[G]^{s2}` over `D` of order exactly 2, with
/// `ε` the sign character of `D`.
pub fn kgroup_comparison_module(
    group: &Arc<FiniteGroup>,
    d_real: &[Subgroup],
    s2: usize,
    parity: Parity,
) -> Result<ZGLattice> {
    let mut m = ZGLattice::zero(group.clone());
    for d in d_real {
        let piece = match parity {
            Parity::Odd => {
                if d.order() > 2 {
                    return Err(Error::InvalidModule(format!(
                        "decomposition group at an infinite place has order {}",
                        d.order()
                    )));
                }
                coset_lattice(group, d)
            }
            Parity::Even => {
                if d.order() != 2 {
                    return Err(Error::InvalidModule(format!(
                        "ramified infinite place needs a decomposition group of order 2, found {}",
                        d.order()
                    )));
                }
                let dg = Arc::new(group.subgroup_as_group(d));
                let eps = sign_lattice(&dg, &dg.trivial_subgroup())?;
                induced_lattice(group, d, &eps)?
            }
        };
        m = m.direct_sum(&piece);
    }
    Ok(m.direct_sum(&regular_lattice(group).power(s2)))
}

/// True iff every regulator constant of `m` on the basis equals 1.
pub fn verify_kgroup_triviality(
    ring: &BurnsideRing,
    basis: &BrauerRelationBasis,
    m: &ZGLattice,
) -> Result<bool> {
    Ok(regulator_constants_table(ring, basis, m)?
        .iter()
        .all(One::is_one))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grp::{group_from_generators, DEFAULT_GENERATION_BOUND};

    fn ring(gens: &[Vec<usize>]) -> BurnsideRing {
        let g = Arc::new(group_from_generators(gens, DEFAULT_GENERATION_BOUND).unwrap());
        BurnsideRing::new(g, 64).unwrap()
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn sunit_lattice_examples() {
        let c2 = ring(&[vec![1, 0]]);
        let g = c2.group().clone();

        let whole = PlaceModel::new(g.clone(), vec![g.whole()]).unwrap();
        assert_eq!(sunit_lattice(&whole).unwrap().lattice.rank(), 0);

        let split = PlaceModel::new(g.clone(), vec![g.trivial_subgroup()]).unwrap();
        let s = sunit_lattice(&split).unwrap();
        assert_eq!(s.lattice, sign_lattice(&g, &g.trivial_subgroup()).unwrap());

        let s3 = ring(&[vec![1, 2, 0], vec![1, 0, 2]]);
        let g = s3.group().clone();
        let ds = vec![s3.representative(1).clone(), s3.representative(2).clone()];
        let model = PlaceModel::new(g.clone(), ds.clone()).unwrap();
        let s = sunit_lattice(&model).unwrap();
        assert_eq!(s.lattice.rank(), model.len() - 1);
        let mut expected = trivial_lattice(&g).character().0;
        for x in &mut expected {
            *x = -x.clone();
        }
        for d in &ds {
            for (e, c) in expected.iter_mut().zip(coset_lattice(&g, d).character().0) {
                *e += c;
            }
        }
        assert_eq!(s.lattice.character().0, expected);
        assert!(ZGLattice::new(g, s.lattice.actions().to_vec()).is_ok());
        assert!(PlaceModel::new(s3.group().clone(), vec![]).is_err());
    }

    #[test]
    fn residue_degree_examples() {
        let c2 = ring(&[vec![1, 0]]);
        let g = c2.group().clone();
        let model = PlaceModel::new(g.clone(), vec![g.trivial_subgroup()]).unwrap();
        let trivial = residue_degrees(&model, &g.trivial_subgroup()).unwrap();
        assert!(trivial.degrees.iter().all(|&f| f == 1));
        let data = residue_degrees(&model, &g.whole()).unwrap();
        assert_eq!(data.orbits.len(), 1);
        assert_eq!(data.degrees, vec![1]);
        assert_eq!((data.n, data.l), (BigInt::from(1), BigInt::from(1)));

        let c4 = ring(&[vec![1, 2, 3, 0]]);
        let g = c4.group().clone();
        let model = PlaceModel::new(g.clone(), vec![c4.representative(1).clone()]).unwrap();
        assert_eq!(model.len(), 2);
        let data = residue_degrees(&model, &g.whole()).unwrap();
        assert_eq!(data.orbits.len(), 1);
        assert_eq!((data.n, data.l), (BigInt::from(2), BigInt::from(2)));
    }

    #[test]
    fn embedding_lies_in_augmentation_kernel() {
        let d4 = ring(&[vec![1, 2, 3, 0], vec![0, 3, 2, 1]]);
        let g = d4.group().clone();
        let ds = vec![d4.representative(1).clone(), d4.representative(2).clone(), g.trivial_subgroup()];
        let model = PlaceModel::new(g.clone(), ds).unwrap();
        for class in d4.table().classes() {
            let e = subfield_lattice_embedding(&model, &class.representative).unwrap();
            for j in 0..e.cols() {
                let sum: BigInt = e.column(j).iter().sum();
                assert_eq!(sum, BigInt::from(0));
            }
        }
    }

    #[test]
    fn sunit_index_examples() {
        let c2 = ring(&[vec![1, 0]]);
        let g = c2.group().clone();
        let model = PlaceModel::new(g.clone(), vec![g.trivial_subgroup()]).unwrap();
        let id = verify_sunit_index(&model, &g.trivial_subgroup()).unwrap();
        assert!(id.holds);
        assert_eq!(id.index, rat(1, 1));
        let top = verify_sunit_index(&model, &g.whole()).unwrap();
        assert!(top.holds);
        assert_eq!(top.fixed_rank, 0);

        let v4 = ring(&[vec![1, 0, 2, 3], vec![0, 1, 3, 2]]);
        let g = v4.group().clone();
        let model = PlaceModel::new(g.clone(), vec![g.trivial_subgroup()]).unwrap();
        for c in 1..4 {
            let h = v4.representative(c);
            let check = verify_sunit_index(&model, h).unwrap();
            let data = residue_degrees(&model, h).unwrap();
            assert_eq!(check.index, data.expected_index());
            assert!(check.holds);
        }
        // two places each with full decomposition group: n = 4, l = 2 at H = G
        let model = PlaceModel::new(g.clone(), vec![g.whole(), g.whole()]).unwrap();
        let check = verify_sunit_index(&model, &g.whole()).unwrap();
        assert_eq!(check.expected, rat(4, 1));
        assert!(check.holds);
        let c4 = ring(&[vec![1, 2, 3, 0]]);
        let g = c4.group().clone();
        let model = PlaceModel::new(g.clone(), vec![g.whole(), c4.representative(1).clone()]).unwrap();
        let check = verify_sunit_index(&model, &g.whole()).unwrap();
        assert_eq!(check.expected, rat(8, 4));
        assert_eq!(check.index, rat(2, 1));
    }

    #[test]
    fn closed_form_examples() {
        let v4 = ring(&[vec![1, 0, 2, 3], vec![0, 1, 3, 2]]);
        let g = v4.group().clone();
        let basis = v4.brauer_relation_basis();
        let model = PlaceModel::new(g.clone(), vec![g.trivial_subgroup()]).unwrap();
        let check = verify_sunit_closed_form(&v4, &model, &basis.relations()[0]).unwrap();
        assert!(check.holds, "{check:?}");

        let s3 = ring(&[vec![1, 2, 0], vec![1, 0, 2]]);
        let g = s3.group().clone();
        let basis = s3.brauer_relation_basis();
        let model = PlaceModel::new(g, vec![s3.representative(1).clone(), s3.representative(2).clone()]).unwrap();
        let check = verify_sunit_closed_form(&s3, &model, &basis.relations()[0]).unwrap();
        assert!(check.holds, "{check:?}");

        let c6 = ring(&[vec![1, 2, 3, 4, 5, 0]]);
        let model = PlaceModel::new(c6.group().clone(), vec![c6.group().trivial_subgroup()]).unwrap();
        let check = verify_sunit_closed_form(&c6, &model, &BurnsideElement::zero(c6.class_count())).unwrap();
        assert_eq!((check.lhs.clone(), check.rhs.clone()), (rat(1, 1), rat(1, 1)));
    }

    #[test]
    fn kgroup_examples() {
        let c2 = ring(&[vec![1, 0]]);
        let g = c2.group().clone();
        let m = kgroup_comparison_module(&g, &[g.whole()], 0, Parity::Odd).unwrap();
        assert_eq!(m, trivial_lattice(&g));

        let m = kgroup_comparison_module(&g, &[], 2, Parity::Even).unwrap();
        assert_eq!(m, regular_lattice(&g).power(2));

        let v4 = ring(&[vec![1, 0, 2, 3], vec![0, 1, 3, 2]]);
        let g = v4.group().clone();
        let basis = v4.brauer_relation_basis();
        let m = kgroup_comparison_module(&g, &[v4.representative(1).clone()], 0, Parity::Even).unwrap();
        assert_eq!(m.rank(), 2);
        assert!(verify_kgroup_triviality(&v4, &basis, &m).unwrap());
        assert!(verify_kgroup_triviality(&v4, &basis, &regular_lattice(&g).power(2)).unwrap());
        assert!(kgroup_comparison_module(&g, &[g.whole()], 0, Parity::Even).is_err());
        assert!(kgroup_comparison_module(&g, &[g.trivial_subgroup()], 0, Parity::Even).is_err());

        let c4 = ring(&[vec![1, 2, 3, 0]]);
        let triv = trivial_lattice(c4.group());
        assert!(verify_kgroup_triviality(&c4, &c4.brauer_relation_basis(), &triv).unwrap());
    }
}
