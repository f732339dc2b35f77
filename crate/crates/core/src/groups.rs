//! Finite group multiplication tables and brute-force oracles.
//!
//! Everything here is deliberately naive: these functions are the
//! independent classical side of the cross-checks, so they must not share
//! machinery with the quantum-side computations.

use crate::error::{QgError, QgResult};

#[derive(Clone, Debug)]
pub struct GroupTable {
    pub name: String,
    pub elements: Vec<String>,
    /// `table[i][j]` is the index of element `i * j`; index 0 is the identity.
    pub table: Vec<Vec<usize>>,
}

impl GroupTable {
    pub fn new(name: impl Into<String>, elements: Vec<String>, table: Vec<Vec<usize>>) -> QgResult<GroupTable> {
        let g = GroupTable { name: name.into(), elements, table };
        g.validate()?;
        Ok(g)
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn validate(&self) -> QgResult<()> {
        let n = self.table.len();
        if self.elements.len() != n {
            return Err(QgError::NotAGroup("element name count differs from table size".into()));
        }
        for row in &self.table {
            if row.len() != n || row.iter().any(|&x| x >= n) {
                return Err(QgError::NotAGroup("table is not square over valid indices".into()));
            }
        }
        for i in 0..n {
            if self.table[0][i] != i || self.table[i][0] != i {
                return Err(QgError::NotAGroup("index 0 is not a two-sided identity".into()));
            }
        }
        for i in 0..n {
            if !(0..n).any(|j| self.table[i][j] == 0 && self.table[j][i] == 0) {
                return Err(QgError::NotAGroup(format!("element {i} has no inverse")));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if self.table[self.table[a][b]][c] != self.table[a][self.table[b][c]] {
                        return Err(QgError::NotAGroup(format!(
                            "associativity fails at ({a},{b},{c})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        (0..self.order()).find(|&b| self.mul(a, b) == 0).expect("validated group")
    }

    /// Brute-force center: elements commuting with everything.
    pub fn center_elements(&self) -> Vec<usize> {
        (0..self.order())
            .filter(|&z| (0..self.order()).all(|g| self.mul(z, g) == self.mul(g, z)))
            .collect()
    }

    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        let mut seen = vec![false; n];
        let mut classes = Vec::new();
        for g in 0..n {
            if seen[g] {
                continue;
            }
            let mut class: Vec<usize> = (0..n)
                .map(|t| self.mul(self.mul(t, g), self.inverse(t)))
                .collect();
            class.sort_unstable();
            class.dedup();
            for &x in &class {
                seen[x] = true;
            }
            classes.push(class);
        }
        classes
    }

    pub fn is_subgroup(&self, subset: &[usize]) -> bool {
        if !subset.contains(&0) {
            return false;
        }
        subset.iter().all(|&a| {
            subset.contains(&self.inverse(a))
                && subset.iter().all(|&b| subset.contains(&self.mul(a, b)))
        })
    }

    /// Brute-force normality via conjugation over the whole table.
    pub fn is_normal_subgroup(&self, subset: &[usize]) -> bool {
        self.is_subgroup(subset)
            && (0..self.order()).all(|t| {
                subset
                    .iter()
                    .all(|&h| subset.contains(&self.mul(self.mul(t, h), self.inverse(t))))
            })
    }

    /// Left cosets of a subgroup, each sorted, in order of first appearance.
    pub fn left_cosets(&self, subgroup: &[usize]) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.order()];
        let mut cosets = Vec::new();
        for g in 0..self.order() {
            if seen[g] {
                continue;
            }
            let mut coset: Vec<usize> = subgroup.iter().map(|&h| self.mul(g, h)).collect();
            coset.sort_unstable();
            for &x in &coset {
                seen[x] = true;
            }
            cosets.push(coset);
        }
        cosets
    }
}

pub fn trivial() -> GroupTable {
    GroupTable::new("trivial", vec!["e".into()], vec![vec![0]]).unwrap()
}

pub fn cyclic(n: usize) -> GroupTable {
    let elements = (0..n).map(|i| format!("g{i}")).collect();
    let table = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
    GroupTable::new(format!("z{n}"), elements, table).unwrap()
}

/// Z2 x Z2 encoded by bitwise xor on {0,1,2,3}.
pub fn klein_four() -> GroupTable {
    let elements = vec!["e".into(), "a".into(), "b".into(), "ab".into()];
    let table = (0..4).map(|i| (0..4).map(|j| i ^ j).collect()).collect();
    GroupTable::new("z2xz2", elements, table).unwrap()
}

/// Symmetric group S3 as permutations of three points, identity first.
/// Index 1 is the transposition (12).
pub fn symmetric3() -> GroupTable {
    let perms: Vec<[usize; 3]> = vec![
        [0, 1, 2], // e
        [1, 0, 2], // (12)
        [0, 2, 1], // (23)
        [2, 1, 0], // (13)
        [1, 2, 0], // (123): 0->1, 1->2, 2->0
        [2, 0, 1], // (132)
    ];
    let names = vec!["e", "(12)", "(23)", "(13)", "(123)", "(132)"];
    let compose = |p: &[usize; 3], q: &[usize; 3]| -> [usize; 3] {
        // (p * q)(x) = p(q(x))
        [p[q[0]], p[q[1]], p[q[2]]]
    };
    let table = perms
        .iter()
        .map(|p| {
            perms
                .iter()
                .map(|q| {
                    let pq = compose(p, q);
                    perms.iter().position(|r| *r == pq).unwrap()
                })
                .collect()
        })
        .collect();
    GroupTable::new("s3", names.into_iter().map(String::from).collect(), table).unwrap()
}

/// Dihedral group of the square: elements r^a s^b with
/// (r^a s^b)(r^c s^d) = r^(a + c(-1)^b) s^(b+d). Index = 2a + b... laid out
/// as a in 0..4, b in 0..2 with index 2a+b? Use index = a + 4b instead:
/// 0..3 rotations, 4..7 reflections.
pub fn dihedral4() -> GroupTable {
    let idx = |a: usize, b: usize| a % 4 + 4 * (b % 2);
    let names = vec!["e", "r", "r2", "r3", "s", "rs", "r2s", "r3s"];
    let mut table = vec![vec![0usize; 8]; 8];
    for a in 0..4 {
        for b in 0..2 {
            for c in 0..4 {
                for d in 0..2 {
                    let exp = if b == 1 { (4 - c) % 4 } else { c };
                    table[idx(a, b)][idx(c, d)] = idx((a + exp) % 4, (b + d) % 2);
                }
            }
        }
    }
    GroupTable::new("d4", names.into_iter().map(String::from).collect(), table).unwrap()
}

/// Quaternion group {1,-1,i,-i,j,-j,k,-k} in that order.
pub fn quaternion8() -> GroupTable {
    let names = vec!["1", "-1", "i", "-i", "j", "-j", "k", "-k"];
    // Represent x = (sign, unit) with unit in {1, i, j, k} = 0..4.
    let unit_of = |x: usize| x / 2;
    let sign_of = |x: usize| if x % 2 == 0 { 1i32 } else { -1 };
    let encode = |sign: i32, unit: usize| -> usize { 2 * unit + if sign > 0 { 0 } else { 1 } };
    // unit multiplication: (result sign, result unit)
    let unit_mul = |u: usize, v: usize| -> (i32, usize) {
        match (u, v) {
            (0, x) => (1, x),
            (x, 0) => (1, x),
            (1, 1) => (-1, 0),
            (2, 2) => (-1, 0),
            (3, 3) => (-1, 0),
            (1, 2) => (1, 3),  // i j = k
            (2, 1) => (-1, 3), // j i = -k
            (2, 3) => (1, 1),  // j k = i
            (3, 2) => (-1, 1), // k j = -i
            (3, 1) => (1, 2),  // k i = j
            (1, 3) => (-1, 2), // i k = -j
            _ => unreachable!(),
        }
    };
    let mut table = vec![vec![0usize; 8]; 8];
    for x in 0..8 {
        for y in 0..8 {
            let (s, u) = unit_mul(unit_of(x), unit_of(y));
            table[x][y] = encode(sign_of(x) * sign_of(y) * s, u);
        }
    }
    GroupTable::new("q8", names.into_iter().map(String::from).collect(), table).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tables_are_groups() {
        for g in [trivial(), cyclic(4), klein_four(), symmetric3(), dihedral4(), quaternion8()] {
            assert!(g.validate().is_ok(), "{} failed", g.name);
        }
    }

    #[test]
    fn centers_by_brute_force() {
        assert_eq!(cyclic(4).center_elements().len(), 4);
        assert_eq!(symmetric3().center_elements(), vec![0]);
        assert_eq!(dihedral4().center_elements().len(), 2);
        let q8 = quaternion8();
        assert_eq!(q8.center_elements(), vec![0, 1]); // {1, -1}
    }

    #[test]
    fn conjugacy_class_counts() {
        assert_eq!(symmetric3().conjugacy_classes().len(), 3);
        assert_eq!(quaternion8().conjugacy_classes().len(), 5);
        assert_eq!(dihedral4().conjugacy_classes().len(), 5);
    }

    #[test]
    fn normality_oracle() {
        let s3 = symmetric3();
        // Z3 = {e, (123), (132)} is normal, {e, (12)} is not.
        assert!(s3.is_normal_subgroup(&[0, 4, 5]));
        assert!(s3.is_subgroup(&[0, 1]));
        assert!(!s3.is_normal_subgroup(&[0, 1]));
        let q8 = quaternion8();
        assert!(q8.is_normal_subgroup(&[0, 1]));
    }

    #[test]
    fn bad_tables_rejected() {
        // Constant table: no identity.
        let r = GroupTable::new("bad", vec!["a".into(), "b".into()], vec![vec![0, 0], vec![0, 0]]);
        assert!(r.is_err());
    }

    #[test]
    fn s3_transposition_index() {
        let s3 = symmetric3();
        assert_eq!(s3.elements[1], "(12)");
        assert_eq!(s3.mul(1, 1), 0);
    }
}
