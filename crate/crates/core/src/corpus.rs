//! Built-in small groups and seeded generators of random modules, maps and
//! relation pairs over them.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::burnside::{BurnsideElement, BurnsideRing};
use crate::error::{Error, Result};
use crate::exactla::{IntMatrix, ColumnLattice};
use crate::grp::{group_from_generators, FiniteGroup, Subgroup, DEFAULT_GENERATION_BOUND};
use crate::zgmod::{
    coset_lattice, find_equivariant_embedding, induced_lattice, quotient_by_fixed_vector,
    random_matrix, reduce_mod, regular_lattice, sign_lattice, trivial_lattice, FpModule,
    ZGLattice,
};

pub const BUILTIN_GROUPS: [&str; 7] = ["C2", "C4", "C6", "V4", "S3", "D4", "Q8"];

/// Left multiplications by `i` and `j` on `{±1, ±i, ±j, ±k}`, with `±u`
/// stored at `2u` and `2u + 1`.
fn quaternion_generators() -> Vec<Vec<usize>> {
    // unit products as (sign, unit) over 1, i, j, k
    const UNIT: [[(bool, usize); 4]; 4] = [
        [(false, 0), (false, 1), (false, 2), (false, 3)],
        [(false, 1), (true, 0), (false, 3), (true, 2)],
        [(false, 2), (true, 3), (true, 0), (false, 1)],
        [(false, 3), (false, 2), (true, 1), (true, 0)],
    ];
    let left = |a: usize| {
        (0..8)
            .map(|x| {
                let (neg, u) = UNIT[a][x / 2];
                2 * u + ((x % 2 == 1) != neg) as usize
            })
            .collect()
    };
    vec![left(1), left(2)]
}

pub fn builtin_generators(name: &str) -> Option<Vec<Vec<usize>>> {
    let gens = match name.to_ascii_uppercase().as_str() {
        "C1" => vec![vec![0]],
        "C2" => vec![vec![1, 0]],
        "C3" => vec![vec![1, 2, 0]],
        "C4" => vec![vec![1, 2, 3, 0]],
        "C6" => vec![vec![1, 2, 3, 4, 5, 0]],
        "V4" => vec![vec![1, 0, 2, 3], vec![0, 1, 3, 2]],
        "S3" => vec![vec![1, 2, 0], vec![1, 0, 2]],
        "D4" => vec![vec![1, 2, 3, 0], vec![0, 3, 2, 1]],
        "Q8" => quaternion_generators(),
        "A4" => vec![vec![1, 2, 0, 3], vec![1, 0, 3, 2]],
        _ => return None,
    };
    Some(gens)
}

pub fn builtin_group(name: &str) -> Option<FiniteGroup> {
    builtin_generators(name)
        .map(|g| group_from_generators(&g, DEFAULT_GENERATION_BOUND).expect("built-in groups are valid"))
}

pub fn builtin_ring(name: &str, bound: usize) -> Result<BurnsideRing> {
    let g = builtin_group(name).ok_or_else(|| Error::InvalidGroup(format!("unknown group {name}")))?;
    BurnsideRing::new(Arc::new(g), bound)
}

/// Subgroups of index 2, one per class (they are normal).
pub fn index_two_subgroups(ring: &BurnsideRing) -> Vec<Subgroup> {
    let n = ring.group().order();
    ring.table()
        .classes()
        .iter()
        .filter(|c| 2 * c.order() == n)
        .map(|c| c.representative.clone())
        .collect()
}

/// Class representatives of the subgroups of order exactly `k`.
pub fn subgroups_of_order(ring: &BurnsideRing, k: usize) -> Vec<Subgroup> {
    ring.table()
        .classes()
        .iter()
        .filter(|c| c.order() == k)
        .map(|c| c.representative.clone())
        .collect()
}

/// `I_{G/H} = ker(Z[G/H] -> Z)`
pub fn augmentation_kernel(group: &Arc<FiniteGroup>, h: &Subgroup) -> Result<ZGLattice> {
    let perm = coset_lattice(group, h);
    let s = perm.rank();
    let mut basis = IntMatrix::zeros(s, s.saturating_sub(1));
    for j in 1..s {
        basis[(0, j - 1)] = BigInt::from(1);
        basis[(j, j - 1)] = BigInt::from(-1);
    }
    perm.sublattice(&basis)
}

pub fn induced_sign(group: &Arc<FiniteGroup>, d: &Subgroup) -> Result<ZGLattice> {
    let dg = Arc::new(group.subgroup_as_group(d));
    let eps = sign_lattice(&dg, &dg.trivial_subgroup())?;
    induced_lattice(group, d, &eps)
}

/// One of: trivial, regular, a permutation lattice, a sign lattice, an
/// induced sign lattice, an augmentation kernel.
pub fn random_block(ring: &BurnsideRing, rng: &mut impl Rng) -> ZGLattice {
    let g = ring.group();
    let classes = ring.class_count();
    loop {
        let h = ring.representative(rng.gen_range(0..classes));
        let block = match rng.gen_range(0..6) {
            0 => Some(trivial_lattice(g)),
            1 => Some(regular_lattice(g)),
            2 => Some(coset_lattice(g, h)),
            3 => index_two_subgroups(ring)
                .choose(rng)
                .map(|k| sign_lattice(g, k).expect("index two")),
            4 => subgroups_of_order(ring, 2)
                .choose(rng)
                .map(|d| induced_sign(g, d).expect("order two")),
            _ => (h.order() < g.order()).then(|| augmentation_kernel(g, h).expect("G-stable")),
        };
        if let Some(b) = block {
            return b;
        }
    }
}

/// A unimodular matrix built from a few random elementary operations.
pub fn random_unimodular(n: usize, rng: &mut impl Rng) -> IntMatrix {
    let mut u = IntMatrix::identity(n);
    if n < 2 {
        return u;
    }
    for _ in 0..2 * n {
        let a = rng.gen_range(0..n);
        let b = rng.gen_range(0..n);
        if a != b {
            u.add_row_multiple(a, b, &BigInt::from(rng.gen_range(-2i64..=2)));
        }
    }
    if rng.gen_bool(0.5) {
        u.negate_row(rng.gen_range(0..n));
    }
    u
}

/// A direct sum of `1..=max_blocks` random blocks in a random basis.
pub fn random_lattice(ring: &BurnsideRing, rng: &mut impl Rng, max_blocks: usize) -> ZGLattice {
    let k = rng.gen_range(1..=max_blocks);
    let mut m = ZGLattice::zero(ring.group().clone());
    for _ in 0..k {
        m = m.direct_sum(&random_block(ring, rng));
    }
    let u = random_unimodular(m.rank(), rng);
    m.change_basis(&u).expect("unimodular")
}

/// The G-stable sublattice `T(M) + pM` for a random G-endomorphism `T`,
/// together with its basis in the coordinates of `M`.
pub fn random_sublattice(m: &ZGLattice, p: u64, rng: &mut impl Rng) -> (ZGLattice, IntMatrix) {
    let r = m.rank();
    let t = m.average_map_from(m, &random_matrix(rng, r, r, 2));
    let gens = t.hstack(&IntMatrix::scalar(r, p));
    let basis = ColumnLattice::from_generators(&gens).basis().clone();
    let sub = m.sublattice(&basis).expect("images of G-maps are G-stable");
    (sub, basis)
}

/// `(⊕_{n_H > 0} Z[G/H]^{n_H}, ⊕_{n_H < 0} Z[G/H]^{-n_H})`, rationally
/// isomorphic exactly when `theta` is a Brauer relation.
pub fn relation_pair(ring: &BurnsideRing, theta: &BurnsideElement) -> (ZGLattice, ZGLattice) {
    let g = ring.group();
    let mut pos = ZGLattice::zero(g.clone());
    let mut neg = ZGLattice::zero(g.clone());
    for (c, n) in theta.support() {
        let block = coset_lattice(g, ring.representative(c)).power(n.unsigned_abs() as usize);
        if n > 0 {
            pos = pos.direct_sum(&block);
        } else {
            neg = neg.direct_sum(&block);
        }
    }
    (pos, neg)
}

/// A random integer combination of the basis relations.
pub fn random_relation(ring: &BurnsideRing, rng: &mut impl Rng) -> BurnsideElement {
    let basis = ring.brauer_relation_basis();
    basis
        .relations()
        .iter()
        .fold(BurnsideElement::zero(ring.class_count()), |acc, r| {
            acc.add(&r.scale(rng.gen_range(-2..=2)))
        })
}

/// Two rationally isomorphic lattices of one of several shapes.
#[derive(Clone, Debug)]
pub struct LatticePair {
    pub description: String,
    pub m: ZGLattice,
    pub n: ZGLattice,
}

pub fn random_lattice_pair(ring: &BurnsideRing, rng: &mut impl Rng) -> LatticePair {
    let relations = ring.brauer_relation_basis();
    loop {
        match rng.gen_range(0..4) {
            0 => {
                let m = random_lattice(ring, rng, 3);
                let u = random_unimodular(m.rank(), rng);
                let n = m.change_basis(&u).expect("unimodular");
                return LatticePair { description: "change of basis".into(), m, n };
            }
            1 => {
                let m = random_lattice(ring, rng, 3);
                let p = *[2u64, 3, 5].choose(rng).expect("nonempty");
                let (n, _) = random_sublattice(&m, p, rng);
                return LatticePair { description: format!("sublattice of {p}-power index"), m, n };
            }
            2 if !relations.is_empty() => {
                let theta = relations.relations().choose(rng).expect("nonempty");
                let (pos, neg) = relation_pair(ring, theta);
                let extra = random_block(ring, rng);
                return LatticePair {
                    description: "relation pair".into(),
                    m: pos.direct_sum(&extra),
                    n: neg.direct_sum(&extra),
                };
            }
            3 => {
                let a = random_block(ring, rng);
                let b = random_block(ring, rng);
                return LatticePair {
                    description: "reordered sum".into(),
                    m: a.direct_sum(&b),
                    n: b.direct_sum(&a),
                };
            }
            _ => {}
        }
    }
}

/// A module with torsion, the target, and a map with finite kernel and
/// cokernel between them.
#[derive(Clone, Debug)]
pub struct PresentedMapInstance {
    pub description: String,
    pub m: FpModule,
    pub n: FpModule,
    pub t: IntMatrix,
}

const TORSION_ORDERS: [u64; 3] = [3, 5, 9];

fn random_torsion(ring: &BurnsideRing, rng: &mut impl Rng) -> (ZGLattice, u64) {
    let g = ring.group();
    let q = *TORSION_ORDERS.choose(rng).expect("nonempty");
    let base = match rng.gen_range(0..3) {
        0 => trivial_lattice(g),
        1 => index_two_subgroups(ring)
            .choose(rng)
            .map(|k| sign_lattice(g, k).expect("index two"))
            .unwrap_or_else(|| trivial_lattice(g)),
        _ => coset_lattice(g, ring.representative(rng.gen_range(0..ring.class_count()))),
    };
    (base, q)
}

/// An equivariant map `L_A / q_A -> L_B / q_B`, made well defined by scaling
/// with `q_B / gcd(q_A, q_B)`.
fn torsion_map(a: &(ZGLattice, u64), b: &(ZGLattice, u64), rng: &mut impl Rng) -> IntMatrix {
    let s = b.0.average_map_from(&a.0, &random_matrix(rng, b.0.rank(), a.0.rank(), 2));
    let c = b.1 / a.1.gcd(&b.1);
    s.scale(&BigInt::from(c))
}

/// `M = L_M ⊕ (torsion)`, `N = L_N ⊕ (torsion)` with a block lower
/// triangular map, or a pair of lattices with a glued-on torsion class.
pub fn random_presented_instance(
    ring: &BurnsideRing,
    rng: &mut impl Rng,
    seed: u64,
) -> Result<PresentedMapInstance> {
    if rng.gen_bool(0.25) {
        return glued_instance(ring, rng, seed);
    }
    let pair = random_lattice_pair(ring, rng);
    let e = find_equivariant_embedding(&pair.m, &pair.n, seed, 64)?;
    let a = random_torsion(ring, rng);
    let b = random_torsion(ring, rng);
    let m = FpModule::from_lattice(&pair.m).direct_sum(&reduce_mod(&a.0, a.1)?);
    let n = FpModule::from_lattice(&pair.n).direct_sum(&reduce_mod(&b.0, b.1)?);

    let tors = if rng.gen_bool(0.8) {
        torsion_map(&a, &b, rng)
    } else {
        IntMatrix::zeros(b.0.rank(), a.0.rank())
    };
    let lower = if rng.gen_bool(0.5) {
        b.0.average_map_from(&pair.m, &random_matrix(rng, b.0.rank(), pair.m.rank(), 1))
    } else {
        IntMatrix::zeros(b.0.rank(), pair.m.rank())
    };
    let mut t = IntMatrix::zeros(n.generators(), m.generators());
    t.set_block(0, 0, &e);
    t.set_block(pair.n.rank(), 0, &lower);
    t.set_block(pair.n.rank(), pair.m.rank(), &tors);
    Ok(PresentedMapInstance {
        description: format!("{} with Z/{} and Z/{} summands", pair.description, a.1, b.1),
        m,
        n,
        t,
    })
}

/// `Z[G]/(q·norm)` into `Z[G]/(q'·norm)` by a scalar, plus a lattice summand.
fn glued_instance(ring: &BurnsideRing, rng: &mut impl Rng, seed: u64) -> Result<PresentedMapInstance> {
    let g = ring.group();
    let reg = regular_lattice(g);
    let norm = vec![BigInt::from(1); g.order()];
    let q = *TORSION_ORDERS.choose(rng).expect("nonempty");
    let q2 = *TORSION_ORDERS.choose(rng).expect("nonempty");
    let c = q2 / q.gcd(&q2) * rng.gen_range(1..=2);
    let extra = random_lattice(ring, rng, 2);
    let e = find_equivariant_embedding(&extra, &extra, seed, 64)?;
    let m = quotient_by_fixed_vector(&reg, &norm, q)?.direct_sum(&FpModule::from_lattice(&extra));
    let n = quotient_by_fixed_vector(&reg, &norm, q2)?.direct_sum(&FpModule::from_lattice(&extra));
    let t = IntMatrix::scalar(g.order(), c).block_diag(&e);
    Ok(PresentedMapInstance {
        description: format!("Z[G]/{q}N into Z[G]/{q2}N by {c}"),
        m,
        n,
        t,
    })
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::zgmod::{check_module_map, is_equivariant};

    #[test]
    fn builtin_orders() {
        let orders = [2, 4, 6, 4, 6, 8, 8];
        for (name, order) in BUILTIN_GROUPS.iter().zip(orders) {
            assert_eq!(builtin_group(name).unwrap().order(), order, "{name}");
        }
        assert!(builtin_group("nope").is_none());
    }

    #[test]
    fn quaternion_structure() {
        let q8 = builtin_group("Q8").unwrap();
        // a unique involution, six elements of order 4
        let mut orders: Vec<usize> = (0..8).map(|g| q8.element_order(g)).collect();
        orders.sort();
        assert_eq!(orders, vec![1, 2, 4, 4, 4, 4, 4, 4]);
        assert_eq!(q8.classes().len(), 5);
        let ring = BurnsideRing::new(Arc::new(q8), 64).unwrap();
        assert_eq!(ring.class_count(), 6);
    }

    #[test]
    fn random_constructions_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for name in ["V4", "S3", "D4", "Q8"] {
            let ring = builtin_ring(name, 64).unwrap();
            for _ in 0..5 {
                let m = random_lattice(&ring, &mut rng, 3);
                assert!(ZGLattice::new(ring.group().clone(), m.actions().to_vec()).is_ok());
                let (sub, basis) = random_sublattice(&m, 3, &mut rng);
                assert!(is_equivariant(&sub, &m, &basis));
                let pair = random_lattice_pair(&ring, &mut rng);
                assert!(pair.m.rationally_isomorphic(&pair.n), "{}", pair.description);
                let inst = random_presented_instance(&ring, &mut rng, 11).unwrap();
                check_module_map(&inst.m, &inst.n, &inst.t).unwrap();
            }
        }
    }

    #[test]
    fn relation_pairs_are_isomorphic() {
        for name in BUILTIN_GROUPS {
            let ring = builtin_ring(name, 64).unwrap();
            for theta in ring.brauer_relation_basis().relations() {
                let (a, b) = relation_pair(&ring, theta);
                assert!(a.rationally_isomorphic(&b));
            }
        }
    }
}
