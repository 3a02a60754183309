//! Burnside-ring elements, permutation characters of transitive G-sets and
//! the lattice K(G) of Brauer relations.
//!
//! Two virtual permutation representations agree iff their characters agree,
//! and the character of `Q[G/K]` at `g` is the number of cosets fixed by `g`.
//! So K(G) is the integer kernel of the fixed-point matrix, with rows indexed
//! by element conjugacy classes and columns by subgroup classes.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exactla::{integer_kernel, rank, row_hermite_form, solve_in_basis, IntMatrix};
use crate::grp::{all_subgroups, FiniteGroup, Subgroup, SubgroupClassTable};

/// A finite G-set given by one permutation of its points per group element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GSet {
    degree: usize,
    action: Vec<Vec<usize>>,
}

impl GSet {
    pub fn new(group: &FiniteGroup, action: Vec<Vec<usize>>) -> Result<Self> {
        if action.len() != group.order() {
            return Err(Error::InvalidModule("one permutation per group element required".into()));
        }
        let degree = action.first().map_or(0, Vec::len);
        for g in 0..group.order() {
            if action[g].len() != degree {
                return Err(Error::NotPermutation(format!("element {g} has wrong degree")));
            }
            for h in 0..group.order() {
                let gh = group.mul(g, h);
                if (0..degree).any(|x| action[g][action[h][x]] != action[gh][x]) {
                    return Err(Error::InvalidModule("not a group action".into()));
                }
            }
        }
        if (0..degree).any(|x| action[0][x] != x) {
            return Err(Error::InvalidModule("identity acts non-trivially".into()));
        }
        Ok(GSet { degree, action })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn image(&self, g: usize, x: usize) -> usize {
        self.action[g][x]
    }

    pub fn permutation(&self, g: usize) -> &[usize] {
        &self.action[g]
    }

    pub fn fixed_points(&self, g: usize) -> usize {
        (0..self.degree).filter(|&x| self.action[g][x] == x).count()
    }

    pub fn stabilizer(&self, group: &FiniteGroup, x: usize) -> Subgroup {
        let elems: Vec<usize> = (0..group.order()).filter(|&g| self.action[g][x] == x).collect();
        group.subgroup(&elems).expect("stabilisers are subgroups")
    }

    /// Orbits under the subgroup `h`, each listed with its smallest point first.
    pub fn orbits(&self, h: &Subgroup) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree];
        let mut out = Vec::new();
        for x in 0..self.degree {
            if seen[x] {
                continue;
            }
            let mut orbit: Vec<usize> = h.elements().iter().map(|&g| self.action[g][x]).collect();
            orbit.sort_unstable();
            orbit.dedup();
            for &y in &orbit {
                seen[y] = true;
            }
            out.push(orbit);
        }
        out
    }

    pub fn disjoint_union(&self, other: &GSet) -> GSet {
        let action = self
            .action
            .iter()
            .zip(&other.action)
            .map(|(a, b)| {
                a.iter()
                    .copied()
                    .chain(b.iter().map(|&y| y + self.degree))
                    .collect()
            })
            .collect();
        GSet {
            degree: self.degree + other.degree,
            action,
        }
    }
}

/// `G` acting on the left cosets `G/H`; coset 0 is `H`.
pub fn coset_action(group: &FiniteGroup, h: &Subgroup) -> GSet {
    let space = group.cosets(h);
    let action = (0..group.order())
        .map(|g| (0..space.len()).map(|c| space.act(group, g, c)).collect())
        .collect();
    GSet {
        degree: space.len(),
        action,
    }
}

/// `|{xK : g x K = x K}|`
pub fn fixed_cosets(group: &FiniteGroup, g: usize, k: &Subgroup) -> usize {
    let hits = (0..group.order())
        .filter(|&x| k.contains(group.mul(group.mul(group.inv(x), g), x)))
        .count();
    hits / k.order()
}

/// Rows: element conjugacy classes; columns: subgroup classes.
pub fn fixed_point_matrix(group: &FiniteGroup, table: &SubgroupClassTable) -> IntMatrix {
    let rows = group.classes().len();
    let mut m = IntMatrix::zeros(rows, table.len());
    for (c, class) in group.classes().iter().enumerate() {
        for (k, sc) in table.classes().iter().enumerate() {
            m[(c, k)] = BigInt::from(fixed_cosets(group, class.representative, &sc.representative));
        }
    }
    m
}

/// An element `Σ n_H H` of the Burnside ring, indexed by subgroup class.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BurnsideElement {
    coeffs: Vec<i64>,
}

impl BurnsideElement {
    pub fn new(coeffs: Vec<i64>) -> Self {
        BurnsideElement { coeffs }
    }

    pub fn zero(classes: usize) -> Self {
        BurnsideElement {
            coeffs: vec![0; classes],
        }
    }

    pub fn basis_element(classes: usize, i: usize) -> Self {
        let mut e = Self::zero(classes);
        e.coeffs[i] = 1;
        e
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> i64 {
        self.coeffs[i]
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn add(&self, other: &BurnsideElement) -> BurnsideElement {
        assert_eq!(self.len(), other.len());
        BurnsideElement {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn scale(&self, k: i64) -> BurnsideElement {
        BurnsideElement {
            coeffs: self.coeffs.iter().map(|a| a * k).collect(),
        }
    }

    pub fn neg(&self) -> BurnsideElement {
        self.scale(-1)
    }

    /// Non-zero coefficients as `(class, n_H)`.
    pub fn support(&self) -> impl Iterator<Item = (usize, i64)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| (i, c))
    }

    /// `Σ n_H`, the number of orbits of the virtual G-set.
    pub fn coefficient_sum(&self) -> i64 {
        self.coeffs.iter().sum()
    }

    fn as_column(&self) -> IntMatrix {
        IntMatrix::from_columns(
            self.coeffs.len(),
            &[self.coeffs.iter().map(|&c| BigInt::from(c)).collect()],
        )
    }
}

/// A Z-basis of K(G), sign-normalised and in Hermite form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BrauerRelationBasis {
    relations: Vec<BurnsideElement>,
}

impl BrauerRelationBasis {
    pub fn from_relations(relations: Vec<BurnsideElement>) -> Self {
        BrauerRelationBasis { relations }
    }

    pub fn relations(&self) -> &[BurnsideElement] {
        &self.relations
    }

    pub fn len(&self) -> usize {
        self.relations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.relations.is_empty()
    }
}

/// A group together with its subgroup classes and fixed-point matrix.
#[derive(Clone, Debug)]
pub struct BurnsideRing {
    group: Arc<FiniteGroup>,
    table: SubgroupClassTable,
    marks: IntMatrix,
}

impl BurnsideRing {
    pub fn new(group: Arc<FiniteGroup>, bound: usize) -> Result<Self> {
        let table = all_subgroups(&group, bound)?;
        let marks = fixed_point_matrix(&group, &table);
        Ok(BurnsideRing { group, table, marks })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn table(&self) -> &SubgroupClassTable {
        &self.table
    }

    pub fn class_count(&self) -> usize {
        self.table.len()
    }

    pub fn fixed_point_matrix(&self) -> &IntMatrix {
        &self.marks
    }

    pub fn representative(&self, class: usize) -> &Subgroup {
        self.table.representative(class)
    }

    /// The class of the subgroup generated by `elements`.
    pub fn class_of_generated(&self, elements: &[usize]) -> usize {
        let h = self.group.generate(elements);
        self.table.class_of(&h).expect("every subgroup is classified")
    }

    pub fn element(&self, coeffs: Vec<i64>) -> Result<BurnsideElement> {
        if coeffs.len() != self.class_count() {
            return Err(Error::Dimension(format!(
                "{} coefficients for {} subgroup classes",
                coeffs.len(),
                self.class_count()
            )));
        }
        Ok(BurnsideElement::new(coeffs))
    }

    /// Permutation character of the virtual G-set, one value per element class.
    pub fn character(&self, theta: &BurnsideElement) -> Vec<BigInt> {
        assert_eq!(theta.len(), self.class_count());
        self.marks.mul(&theta.as_column()).column(0)
    }

    pub fn is_brauer_relation(&self, theta: &BurnsideElement) -> bool {
        theta.len() == self.class_count() && self.character(theta).iter().all(Zero::is_zero)
    }

    pub fn brauer_relation_basis(&self) -> BrauerRelationBasis {
        let kernel = integer_kernel(&self.marks);
        if kernel.cols() == 0 {
            return BrauerRelationBasis { relations: Vec::new() };
        }
        let hnf = row_hermite_form(&kernel.transpose());
        let relations = (0..hnf.rows())
            .map(|i| {
                let coeffs = hnf
                    .row(i)
                    .iter()
                    .map(|x| x.to_i64().expect("relation coefficients fit in i64"))
                    .collect();
                BurnsideElement::new(coeffs)
            })
            .collect::<Vec<_>>();
        debug_assert!(relations.iter().all(|r| self.is_brauer_relation(r)));
        debug_assert!(relations
            .iter()
            .all(|r| r.coeffs.iter().find(|&&c| c != 0).is_some_and(|c| *c > 0)));
        BrauerRelationBasis { relations }
    }

    pub fn fixed_point_rank(&self) -> usize {
        rank(&self.marks)
    }

    /// Expresses a Brauer relation in the given basis.
    pub fn basis_coordinates(
        &self,
        basis: &BrauerRelationBasis,
        theta: &BurnsideElement,
    ) -> Result<Vec<BigInt>> {
        if !self.is_brauer_relation(theta) {
            return Err(Error::NotBrauerRelation);
        }
        let cols: Vec<Vec<BigInt>> = basis
            .relations
            .iter()
            .map(|r| r.coeffs.iter().map(|&c| BigInt::from(c)).collect())
            .collect();
        let m = IntMatrix::from_columns(self.class_count(), &cols);
        let coords = solve_in_basis(&m, &theta.as_column()).map_err(|_| Error::NotBrauerRelation)?;
        Ok(coords.column(0))
    }
}

/// `Σ n_H [G:H]`
pub fn degree(group: &FiniteGroup, ring: &BurnsideRing, theta: &BurnsideElement) -> BigInt {
    theta
        .support()
        .map(|(i, n)| BigInt::from(n) * BigInt::from(group.order() / ring.representative(i).order()))
        .sum()
}
