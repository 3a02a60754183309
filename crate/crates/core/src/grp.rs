//! Finite groups given by Cayley tables, element conjugacy classes and the
//! subgroup lattice up to conjugacy.

use std::collections::{BTreeSet, HashMap, VecDeque};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

pub const DEFAULT_GENERATION_BOUND: usize = 2000;
pub const DEFAULT_SUBGROUP_BOUND: usize = 64;

/// Groups up to this order get an exhaustive associativity check.
const EXHAUSTIVE_ASSOCIATIVITY: usize = 64;
const SAMPLED_TRIPLES: usize = 200_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugacyClass {
    pub representative: usize,
    pub members: Vec<usize>,
}

/// A finite group as a multiplication table on `0..n`; element 0 is the
/// identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<usize>,
    inverse: Vec<usize>,
    classes: Vec<ConjugacyClass>,
    class_of: Vec<usize>,
    labels: Option<Vec<String>>,
}

impl FiniteGroup {
    /// Validates a Cayley table and renumbers it so that the identity is 0.
    pub fn from_cayley_table(table: &[Vec<usize>]) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::InvalidGroup("empty Cayley table".into()));
        }
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidGroup(format!("row {i} has length {}", row.len())));
            }
            if let Some(&x) = row.iter().find(|&&x| x >= n) {
                return Err(Error::InvalidGroup(format!("entry {x} out of range")));
            }
            if !is_permutation(row) {
                return Err(Error::InvalidGroup(format!("row {i} is not a permutation")));
            }
        }
        for j in 0..n {
            let col: Vec<usize> = table.iter().map(|r| r[j]).collect();
            if !is_permutation(&col) {
                return Err(Error::InvalidGroup(format!("column {j} is not a permutation")));
            }
        }
        let e = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or_else(|| Error::InvalidGroup("no identity element".into()))?;

        // move the identity to index 0, keep the others in their relative order
        let mut new_of_old = vec![0; n];
        let mut old_of_new = vec![e];
        for x in (0..n).filter(|&x| x != e) {
            new_of_old[x] = old_of_new.len();
            old_of_new.push(x);
        }
        let mut flat = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                flat[a * n + b] = new_of_old[table[old_of_new[a]][old_of_new[b]]];
            }
        }
        Self::from_flat_table(n, flat, None)
    }

    fn from_flat_table(n: usize, table: Vec<usize>, labels: Option<Vec<String>>) -> Result<Self> {
        let mul = |a: usize, b: usize| table[a * n + b];
        let associative = |a: usize, b: usize, c: usize| mul(mul(a, b), c) == mul(a, mul(b, c));
        if n <= EXHAUSTIVE_ASSOCIATIVITY {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if !associative(a, b, c) {
                            return Err(Error::InvalidGroup(format!(
                                "not associative at ({a}, {b}, {c})"
                            )));
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0x6173_736f_6369_6174);
            for _ in 0..SAMPLED_TRIPLES {
                let (a, b, c) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
                if !associative(a, b, c) {
                    return Err(Error::InvalidGroup(format!("not associative at ({a}, {b}, {c})")));
                }
            }
        }
        let inverse = (0..n)
            .map(|a| {
                (0..n)
                    .find(|&b| mul(a, b) == 0)
                    .ok_or_else(|| Error::InvalidGroup(format!("element {a} has no inverse")))
            })
            .collect::<Result<Vec<_>>>()?;
        let mut group = FiniteGroup {
            order: n,
            table,
            inverse,
            classes: Vec::new(),
            class_of: vec![usize::MAX; n],
            labels,
        };
        group.compute_classes();
        Ok(group)
    }

    fn compute_classes(&mut self) {
        let n = self.order;
        for x in 0..n {
            if self.class_of[x] != usize::MAX {
                continue;
            }
            let members: BTreeSet<usize> = (0..n).map(|g| self.conjugate(g, x)).collect();
            let idx = self.classes.len();
            for &m in &members {
                self.class_of[m] = idx;
            }
            self.classes.push(ConjugacyClass {
                representative: x,
                members: members.into_iter().collect(),
            });
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    /// `g x g^-1`
    pub fn conjugate(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inverse[g])
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut x = g;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    pub fn classes(&self) -> &[ConjugacyClass] {
        &self.classes
    }

    pub fn class_of(&self, g: usize) -> usize {
        self.class_of[g]
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, g: usize) -> String {
        match &self.labels {
            Some(l) => l[g].clone(),
            None => g.to_string(),
        }
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.order {
            return Err(Error::InvalidGroup("label count differs from group order".into()));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn cayley_table(&self) -> Vec<Vec<usize>> {
        (0..self.order)
            .map(|a| (0..self.order).map(|b| self.mul(a, b)).collect())
            .collect()
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup {
            elements: (0..self.order).collect(),
        }
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup { elements: vec![0] }
    }

    /// The subgroup generated by `gens`.
    pub fn generate(&self, gens: &[usize]) -> Subgroup {
        let mut seen = vec![false; self.order];
        seen[0] = true;
        let mut elements = vec![0];
        let mut queue = VecDeque::from([0]);
        while let Some(x) = queue.pop_front() {
            for &s in gens {
                let y = self.mul(x, s);
                if !seen[y] {
                    seen[y] = true;
                    elements.push(y);
                    queue.push_back(y);
                }
            }
        }
        elements.sort_unstable();
        Subgroup { elements }
    }

    /// Validates a sorted-or-unsorted element list as a subgroup.
    pub fn subgroup(&self, elements: &[usize]) -> Result<Subgroup> {
        let set: BTreeSet<usize> = elements.iter().copied().collect();
        if set.iter().any(|&x| x >= self.order) || !set.contains(&0) {
            return Err(Error::NotSubgroup);
        }
        for &a in &set {
            if !set.contains(&self.inv(a)) {
                return Err(Error::NotSubgroup);
            }
            for &b in &set {
                if !set.contains(&self.mul(a, b)) {
                    return Err(Error::NotSubgroup);
                }
            }
        }
        Ok(Subgroup {
            elements: set.into_iter().collect(),
        })
    }

    pub fn conjugate_subgroup(&self, g: usize, h: &Subgroup) -> Subgroup {
        let mut elements: Vec<usize> = h.elements.iter().map(|&x| self.conjugate(g, x)).collect();
        elements.sort_unstable();
        Subgroup { elements }
    }

    pub fn intersection(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        Subgroup {
            elements: a.elements.iter().copied().filter(|x| b.contains(*x)).collect(),
        }
    }

    /// The subgroup `h` viewed as a group in its own right; element `i` of the
    /// result is `h.elements()[i]`.
    pub fn subgroup_as_group(&self, h: &Subgroup) -> FiniteGroup {
        let k = h.order();
        let pos: HashMap<usize, usize> = h.elements.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let mut table = vec![0; k * k];
        for (i, &a) in h.elements.iter().enumerate() {
            for (j, &b) in h.elements.iter().enumerate() {
                table[i * k + j] = pos[&self.mul(a, b)];
            }
        }
        let labels = self
            .labels
            .as_ref()
            .map(|l| h.elements.iter().map(|&x| l[x].clone()).collect());
        FiniteGroup::from_flat_table(k, table, labels).expect("subgroup table is a group")
    }

    /// Left cosets `xK`, ordered by their smallest element (so `K` itself is
    /// coset 0).
    pub fn cosets(&self, k: &Subgroup) -> CosetSpace {
        let n = self.order;
        let mut coset_of = vec![usize::MAX; n];
        let mut cosets: Vec<Vec<usize>> = Vec::new();
        for x in 0..n {
            if coset_of[x] != usize::MAX {
                continue;
            }
            let mut members: Vec<usize> = k.elements.iter().map(|&h| self.mul(x, h)).collect();
            members.sort_unstable();
            for &m in &members {
                coset_of[m] = cosets.len();
            }
            cosets.push(members);
        }
        CosetSpace { cosets, coset_of }
    }
}

fn is_permutation(p: &[usize]) -> bool {
    let mut seen = vec![false; p.len()];
    for &x in p {
        if x >= p.len() || seen[x] {
            return false;
        }
        seen[x] = true;
    }
    true
}

/// Cycle notation for a permutation of `0..n`, `()` for the identity.
pub fn cycle_notation(p: &[usize]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] == start {
            continue;
        }
        let mut cycle = vec![start];
        seen[start] = true;
        let mut x = p[start];
        while x != start {
            seen[x] = true;
            cycle.push(x);
            x = p[x];
        }
        let parts: Vec<String> = cycle.iter().map(|c| c.to_string()).collect();
        out.push('(');
        out.push_str(&parts.join(" "));
        out.push(')');
    }
    if out.is_empty() {
        "()".into()
    } else {
        out
    }
}

/// Closure of a set of permutations under composition. The product `a*b` of
/// two permutations is `x -> a[b[x]]`, i.e. `b` acts first.
pub fn group_from_generators(perms: &[Vec<usize>], bound: usize) -> Result<FiniteGroup> {
    let degree = perms.first().map_or(0, Vec::len);
    for (i, p) in perms.iter().enumerate() {
        if p.len() != degree {
            return Err(Error::NotPermutation(format!(
                "generator {i} acts on {} points, expected {degree}",
                p.len()
            )));
        }
        if !is_permutation(p) {
            return Err(Error::NotPermutation(format!("generator {i} is {p:?}")));
        }
    }
    let compose = |a: &[usize], b: &[usize]| -> Vec<usize> { b.iter().map(|&x| a[x]).collect() };

    let identity: Vec<usize> = (0..degree).collect();
    let mut elements = vec![identity.clone()];
    let mut index: HashMap<Vec<usize>, usize> = HashMap::from([(identity, 0)]);
    let mut queue = VecDeque::from([0]);
    while let Some(i) = queue.pop_front() {
        for s in perms {
            let y = compose(s, &elements[i]);
            if !index.contains_key(&y) {
                if elements.len() >= bound {
                    return Err(Error::GroupTooLarge { bound });
                }
                index.insert(y.clone(), elements.len());
                queue.push_back(elements.len());
                elements.push(y);
            }
        }
    }
    let n = elements.len();
    let mut table = vec![0; n * n];
    for a in 0..n {
        for b in 0..n {
            table[a * n + b] = index[&compose(&elements[a], &elements[b])];
        }
    }
    let labels = elements.iter().map(|p| cycle_notation(p)).collect();
    FiniteGroup::from_flat_table(n, table, Some(labels))
}

/// A subgroup, as the sorted list of its element indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subgroup {
    elements: Vec<usize>,
}

impl Subgroup {
    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, g: usize) -> bool {
        self.elements.binary_search(&g).is_ok()
    }

    pub fn is_cyclic(&self, group: &FiniteGroup) -> bool {
        self.elements
            .iter()
            .any(|&g| group.element_order(g) == self.order())
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.elements.iter().all(|&g| other.contains(g))
    }

    /// A small generating set, chosen greedily in element order.
    pub fn generators(&self, group: &FiniteGroup) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = group.trivial_subgroup();
        for &g in &self.elements {
            if !span.contains(g) {
                gens.push(g);
                span = group.generate(&gens);
            }
        }
        gens
    }
}

#[derive(Clone, Debug)]
pub struct CosetSpace {
    pub cosets: Vec<Vec<usize>>,
    pub coset_of: Vec<usize>,
}

impl CosetSpace {
    pub fn len(&self) -> usize {
        self.cosets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cosets.is_empty()
    }

    /// Smallest element of each coset.
    pub fn representative(&self, c: usize) -> usize {
        self.cosets[c][0]
    }

    /// Index of the coset `g * (coset c)`.
    pub fn act(&self, group: &FiniteGroup, g: usize, c: usize) -> usize {
        self.coset_of[group.mul(g, self.representative(c))]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupClass {
    pub representative: Subgroup,
    pub conjugates: Vec<Subgroup>,
    pub is_cyclic: bool,
}

impl SubgroupClass {
    pub fn order(&self) -> usize {
        self.representative.order()
    }
}

/// Conjugacy classes of subgroups in canonical order: by subgroup order, then
/// by the lexicographically smallest member list.
#[derive(Clone, Debug)]
pub struct SubgroupClassTable {
    classes: Vec<SubgroupClass>,
    lookup: HashMap<Subgroup, usize>,
}

impl SubgroupClassTable {
    pub fn classes(&self) -> &[SubgroupClass] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn class(&self, i: usize) -> &SubgroupClass {
        &self.classes[i]
    }

    pub fn representative(&self, i: usize) -> &Subgroup {
        &self.classes[i].representative
    }

    pub fn subgroup_count(&self) -> usize {
        self.classes.iter().map(|c| c.conjugates.len()).sum()
    }

    pub fn cyclic_count(&self) -> usize {
        self.classes.iter().filter(|c| c.is_cyclic).count()
    }

    pub fn class_of(&self, h: &Subgroup) -> Option<usize> {
        self.lookup.get(h).copied()
    }

    pub fn trivial_class(&self) -> usize {
        0
    }

    pub fn whole_class(&self) -> usize {
        self.classes.len() - 1
    }
}

/// Every subgroup of `group`, grouped into conjugacy classes.
///
/// Enumeration starts from the cyclic subgroups and repeatedly adjoins one
/// element to every subgroup found so far until nothing new appears.
pub fn all_subgroups(group: &FiniteGroup, bound: usize) -> Result<SubgroupClassTable> {
    if group.order() > bound {
        return Err(Error::GroupTooLarge { bound });
    }
    let n = group.order();
    let mut found: BTreeSet<Subgroup> = BTreeSet::new();
    let mut frontier: Vec<Subgroup> = Vec::new();
    for g in 0..n {
        let h = group.generate(&[g]);
        if found.insert(h.clone()) {
            frontier.push(h);
        }
    }
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for h in &frontier {
            let mut gens = h.generators(group);
            for g in 0..n {
                if h.contains(g) {
                    continue;
                }
                gens.push(g);
                let k = group.generate(&gens);
                gens.pop();
                if found.insert(k.clone()) {
                    next.push(k);
                }
            }
        }
        frontier = next;
    }

    let mut classes: Vec<SubgroupClass> = Vec::new();
    let mut assigned: BTreeSet<Subgroup> = BTreeSet::new();
    for h in &found {
        if assigned.contains(h) {
            continue;
        }
        let conjugates: BTreeSet<Subgroup> = (0..n).map(|g| group.conjugate_subgroup(g, h)).collect();
        assigned.extend(conjugates.iter().cloned());
        let conjugates: Vec<Subgroup> = conjugates.into_iter().collect();
        let representative = conjugates[0].clone();
        classes.push(SubgroupClass {
            is_cyclic: representative.is_cyclic(group),
            representative,
            conjugates,
        });
    }
    classes.sort_by(|a, b| {
        a.order()
            .cmp(&b.order())
            .then_with(|| a.representative.elements.cmp(&b.representative.elements))
    });
    let mut lookup = HashMap::new();
    for (i, c) in classes.iter().enumerate() {
        for h in &c.conjugates {
            lookup.insert(h.clone(), i);
        }
    }
    Ok(SubgroupClassTable { classes, lookup })
}

pub fn conjugacy_class_of_subgroup(
    group: &FiniteGroup,
    table: &SubgroupClassTable,
    h: &[usize],
) -> Result<usize> {
    let h = group.subgroup(h)?;
    table.class_of(&h).ok_or(Error::NotSubgroup)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubleCosetOrbit {
    /// Smallest element `g` among the cosets `gK` in the orbit.
    pub representative: usize,
    pub orbit_size: usize,
    /// `|H ∩ g K g^-1|`
    pub stabilizer_order: usize,
}

/// The orbits of `h` acting on the left cosets `G/k`.
pub fn double_cosets(group: &FiniteGroup, h: &Subgroup, k: &Subgroup) -> Vec<DoubleCosetOrbit> {
    let space = group.cosets(k);
    let mut seen = vec![false; space.len()];
    let mut out = Vec::new();
    for c in 0..space.len() {
        if seen[c] {
            continue;
        }
        let mut size = 0;
        let mut queue = VecDeque::from([c]);
        seen[c] = true;
        while let Some(x) = queue.pop_front() {
            size += 1;
            for &s in h.elements() {
                let y = space.act(group, s, x);
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        let g = space.representative(c);
        let stab = group.intersection(h, &group.conjugate_subgroup(g, k));
        out.push(DoubleCosetOrbit {
            representative: g,
            orbit_size: size,
            stabilizer_order: stab.order(),
        });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyclic(n: usize) -> FiniteGroup {
        group_from_generators(&[(1..=n).map(|i| i % n).collect()], DEFAULT_GENERATION_BOUND).unwrap()
    }

    fn klein() -> FiniteGroup {
        group_from_generators(&[vec![1, 0, 2, 3], vec![0, 1, 3, 2]], DEFAULT_GENERATION_BOUND).unwrap()
    }

    fn s3() -> FiniteGroup {
        group_from_generators(&[vec![1, 2, 0], vec![1, 0, 2]], DEFAULT_GENERATION_BOUND).unwrap()
    }

    /// All subsets containing the identity that are closed under the table.
    fn brute_force_subgroups(g: &FiniteGroup) -> BTreeSet<Vec<usize>> {
        let n = g.order();
        assert!(n <= 16);
        let mut out = BTreeSet::new();
        for mask in 0u32..(1 << (n - 1)) {
            let set: Vec<usize> = std::iter::once(0)
                .chain((1..n).filter(|&i| mask & (1 << (i - 1)) != 0))
                .collect();
            let mut member = vec![false; n];
            for &x in &set {
                member[x] = true;
            }
            if set.iter().all(|&a| set.iter().all(|&b| member[g.mul(a, b)])) {
                out.insert(set);
            }
        }
        out
    }

    #[test]
    fn generator_examples() {
        let c2 = group_from_generators(&[vec![1, 0]], 10).unwrap();
        assert_eq!(c2.order(), 2);
        assert_eq!(s3().order(), 6);
        let v4 = klein();
        assert_eq!(v4.order(), 4);
        assert!((0..4).all(|g| v4.mul(g, g) == 0));
    }

    #[test]
    fn generator_errors() {
        assert!(matches!(
            group_from_generators(&[vec![0, 0]], 10),
            Err(Error::NotPermutation(_))
        ));
        assert!(matches!(
            group_from_generators(&[vec![1, 2, 3, 4, 0]], 4),
            Err(Error::GroupTooLarge { bound: 4 })
        ));
    }

    #[test]
    fn cayley_table_renumbers_identity() {
        // C3 with the identity stored at index 2
        let table = vec![vec![1, 2, 0], vec![2, 0, 1], vec![0, 1, 2]];
        let g = FiniteGroup::from_cayley_table(&table).unwrap();
        assert_eq!(g.order(), 3);
        assert!((0..3).all(|x| g.mul(0, x) == x && g.mul(x, 0) == x));
        assert_eq!(g.element_order(1), 3);
    }

    #[test]
    fn cayley_table_rejects_non_groups() {
        let latin_not_assoc = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(FiniteGroup::from_cayley_table(&latin_not_assoc).is_err());
        assert!(FiniteGroup::from_cayley_table(&[vec![0, 0], vec![1, 1]]).is_err());
    }

    #[test]
    fn subgroup_counts() {
        let t = all_subgroups(&cyclic(6), 64).unwrap();
        assert_eq!((t.subgroup_count(), t.len()), (4, 4));

        let v4 = klein();
        let t = all_subgroups(&v4, 64).unwrap();
        assert_eq!(brute_force_subgroups(&v4).len(), 5);
        assert_eq!((t.subgroup_count(), t.len()), (5, 5));

        let g = s3();
        let t = all_subgroups(&g, 64).unwrap();
        assert_eq!(brute_force_subgroups(&g).len(), 6);
        assert_eq!((t.subgroup_count(), t.len()), (6, 4));
        let orders: Vec<usize> = t.classes().iter().map(SubgroupClass::order).collect();
        assert_eq!(orders, vec![1, 2, 3, 6]);
    }

    #[test]
    fn enumeration_matches_brute_force() {
        let d4 = group_from_generators(&[vec![1, 2, 3, 0], vec![0, 3, 2, 1]], 100).unwrap();
        let a4 = group_from_generators(&[vec![1, 2, 0, 3], vec![0, 2, 3, 1]], 100).unwrap();
        for g in [cyclic(8), d4, klein(), s3(), a4] {
            let t = all_subgroups(&g, 64).unwrap();
            let listed: BTreeSet<Vec<usize>> = t
                .classes()
                .iter()
                .flat_map(|c| c.conjugates.iter().map(|h| h.elements().to_vec()))
                .collect();
            assert_eq!(listed, brute_force_subgroups(&g));
            for c in t.classes() {
                assert_eq!(g.order() % c.order(), 0);
                // class size is the index of the normaliser
                let h = &c.representative;
                let normaliser = (0..g.order())
                    .filter(|&x| g.conjugate_subgroup(x, h) == *h)
                    .count();
                assert_eq!(c.conjugates.len() * normaliser, g.order());
            }
        }
    }

    #[test]
    fn subgroup_bound() {
        assert!(matches!(all_subgroups(&cyclic(8), 4), Err(Error::GroupTooLarge { .. })));
    }

    #[test]
    fn class_lookup() {
        let g = s3();
        let t = all_subgroups(&g, 64).unwrap();
        assert_eq!(conjugacy_class_of_subgroup(&g, &t, &[0]).unwrap(), 0);
        assert_eq!(
            conjugacy_class_of_subgroup(&g, &t, &(0..6).collect::<Vec<_>>()).unwrap(),
            t.whole_class()
        );
        let involutions: Vec<usize> = (1..6).filter(|&x| g.element_order(x) == 2).collect();
        assert_eq!(involutions.len(), 3);
        for x in involutions {
            assert_eq!(conjugacy_class_of_subgroup(&g, &t, &[0, x]).unwrap(), 1);
        }
        assert_eq!(conjugacy_class_of_subgroup(&g, &t, &[0, 1]).is_err(), g.element_order(1) != 2);
    }

    #[test]
    fn double_coset_examples() {
        let g = s3();
        let t = all_subgroups(&g, 64).unwrap();
        for c in t.classes() {
            let k = &c.representative;
            let index = g.order() / k.order();
            let orbits = double_cosets(&g, &g.trivial_subgroup(), k);
            assert_eq!(orbits.len(), index);
            assert!(orbits.iter().all(|o| o.orbit_size == 1));
            let orbits = double_cosets(&g, &g.whole(), k);
            assert_eq!(orbits.len(), 1);
            assert_eq!(orbits[0].orbit_size, index);
            for h in t.classes() {
                let orbits = double_cosets(&g, &h.representative, k);
                assert_eq!(orbits.iter().map(|o| o.orbit_size).sum::<usize>(), index);
                for o in &orbits {
                    assert_eq!(o.orbit_size * o.stabilizer_order, h.order());
                }
            }
        }

        let v4 = klein();
        let h = v4.generate(&[1]);
        let orbits = double_cosets(&v4, &h, &h);
        assert_eq!(orbits.len(), 2);
        assert!(orbits.iter().all(|o| o.orbit_size == 1 && o.stabilizer_order == 2));
    }
}
