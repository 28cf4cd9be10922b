//! Finite groups as explicit multiplication tables, subgroup lattice
//! enumeration, conjugacy classes of subgroups and the lattice Moebius
//! function.

use std::collections::BTreeSet;

use crate::error::{Error, Result};

/// Largest group order the lattice enumerator accepts by default.
pub const DEFAULT_SUBGROUP_BOUND: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GroupKind {
    Cyclic(u32),
    Explicit,
}

/// A finite group given by its multiplication table over element indices,
/// with the identity at index 0.
#[derive(Clone, Debug)]
pub struct FiniteGroup {
    table: Vec<Vec<usize>>,
    kind: GroupKind,
}

impl FiniteGroup {
    /// The cyclic group of order `n` with `a * b = a + b mod n`.
    #[must_use]
    pub fn cyclic(n: u32) -> Self {
        assert!(n > 0);
        let n = n as usize;
        let table = (0..n)
            .map(|a| (0..n).map(|b| (a + b) % n).collect())
            .collect();
        FiniteGroup {
            table,
            kind: GroupKind::Cyclic(n as u32),
        }
    }

    /// The dihedral group of order `2n`: indices `0..n` are rotations,
    /// `n..2n` are reflections.
    #[must_use]
    pub fn dihedral(n: u32) -> Self {
        assert!(n > 0);
        let n = n as usize;
        let idx = |flip: usize, rot: usize| flip * n + rot;
        let mut table = vec![vec![0; 2 * n]; 2 * n];
        for f1 in 0..2 {
            for r1 in 0..n {
                for f2 in 0..2 {
                    for r2 in 0..n {
                        let rot = if f2 == 1 { (n - r1 % n) % n + r2 } else { r1 + r2 } % n;
                        table[idx(f1, r1)][idx(f2, r2)] = idx((f1 + f2) % 2, rot);
                    }
                }
            }
        }
        let g = FiniteGroup {
            table,
            kind: GroupKind::Explicit,
        };
        debug_assert!(g.verify().is_ok());
        g
    }

    /// Builds a group from an explicit table, verifying the group axioms:
    /// square Latin table, identity at index 0, associativity.
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::Invalid("empty multiplication table".into()));
        }
        let g = FiniteGroup {
            table,
            kind: GroupKind::Explicit,
        };
        g.verify()?;
        Ok(g)
    }

    fn verify(&self) -> Result<()> {
        let n = self.order();
        for (a, row) in self.table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Invalid(format!("table row {a} is not length {n}")));
            }
            if row.iter().any(|&x| x >= n) {
                return Err(Error::Invalid(format!("table row {a} has an out-of-range entry")));
            }
        }
        for a in 0..n {
            if self.table[0][a] != a || self.table[a][0] != a {
                return Err(Error::Invalid("index 0 is not an identity".into()));
            }
            let row: BTreeSet<usize> = self.table[a].iter().copied().collect();
            let col: BTreeSet<usize> = (0..n).map(|b| self.table[b][a]).collect();
            if row.len() != n || col.len() != n {
                return Err(Error::Invalid(format!("table is not a Latin square at index {a}")));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if self.table[self.table[a][b]][c] != self.table[a][self.table[b][c]] {
                        return Err(Error::Invalid(format!(
                            "multiplication is not associative at ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    #[must_use]
    pub fn order(&self) -> usize {
        self.table.len()
    }

    #[must_use]
    pub fn kind(&self) -> GroupKind {
        self.kind
    }

    #[must_use]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    #[must_use]
    pub fn inverse(&self, a: usize) -> usize {
        self.table[a].iter().position(|&x| x == 0).unwrap()
    }

    #[must_use]
    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }
}

/// The full subgroup lattice of a finite group: element sets, inclusion
/// order, conjugacy classes, normaliser indices and Moebius values.
#[derive(Clone, Debug)]
pub struct SubgroupLattice {
    subgroups: Vec<Vec<usize>>,
    masks: Vec<u64>,
    conj_classes: Vec<Vec<usize>>,
    normaliser_index: Vec<usize>,
    mobius: Vec<i64>,
}

fn close_mask(g: &FiniteGroup, seed: u64) -> u64 {
    let mut mask = seed | 1;
    loop {
        let mut next = mask;
        let members: Vec<usize> = (0..g.order()).filter(|&i| mask >> i & 1 == 1).collect();
        for &a in &members {
            for &b in &members {
                next |= 1 << g.mul(a, b);
            }
        }
        if next == mask {
            return mask;
        }
        mask = next;
    }
}

/// Enumerates every subgroup by closing the cyclic subgroups under pairwise
/// joins, then derives conjugacy classes, normaliser indices and the
/// lattice Moebius function mu(1, H).
pub fn enumerate_subgroup_lattice(g: &FiniteGroup) -> Result<SubgroupLattice> {
    enumerate_subgroup_lattice_bounded(g, DEFAULT_SUBGROUP_BOUND)
}

pub fn enumerate_subgroup_lattice_bounded(g: &FiniteGroup, bound: usize) -> Result<SubgroupLattice> {
    let n = g.order();
    if n > bound || n > 64 {
        return Err(Error::BoundExceeded {
            order: n,
            bound: bound.min(64),
        });
    }
    let mut found: BTreeSet<u64> = BTreeSet::new();
    for a in 0..n {
        found.insert(close_mask(g, 1 << a));
    }
    loop {
        let snapshot: Vec<u64> = found.iter().copied().collect();
        let before = found.len();
        for (i, &h) in snapshot.iter().enumerate() {
            for &k in &snapshot[i + 1..] {
                if h & k != h && h & k != k {
                    found.insert(close_mask(g, h | k));
                }
            }
        }
        if found.len() == before {
            break;
        }
    }

    let mut masks: Vec<u64> = found.into_iter().collect();
    masks.sort_by_key(|m| (m.count_ones(), *m));
    let subgroups: Vec<Vec<usize>> = masks
        .iter()
        .map(|&m| (0..n).filter(|&i| m >> i & 1 == 1).collect())
        .collect();

    let conjugate = |mask: u64, x: usize| -> u64 {
        let xinv = g.inverse(x);
        let mut out = 0u64;
        for h in (0..n).filter(|&i| mask >> i & 1 == 1) {
            out |= 1 << g.mul(g.mul(x, h), xinv);
        }
        out
    };

    let index_of = |mask: u64, masks: &[u64]| masks.iter().position(|&m| m == mask).unwrap();
    let mut class_of = vec![usize::MAX; masks.len()];
    let mut conj_classes: Vec<Vec<usize>> = Vec::new();
    let mut normaliser_index = vec![0usize; masks.len()];
    for i in 0..masks.len() {
        if class_of[i] != usize::MAX {
            continue;
        }
        let mut orbit = BTreeSet::new();
        let mut normaliser = 0usize;
        for x in 0..n {
            let c = conjugate(masks[i], x);
            if c == masks[i] {
                normaliser += 1;
            }
            orbit.insert(index_of(c, &masks));
        }
        let class: Vec<usize> = orbit.into_iter().collect();
        debug_assert_eq!(class.len(), n / normaliser);
        for &j in &class {
            class_of[j] = conj_classes.len();
            normaliser_index[j] = n / normaliser;
        }
        conj_classes.push(class);
    }

    let mut mobius = vec![0i64; masks.len()];
    for i in 0..masks.len() {
        if masks[i].count_ones() == 1 {
            mobius[i] = 1;
        } else {
            let mut acc = 0i64;
            for j in 0..masks.len() {
                if j != i && masks[j] & masks[i] == masks[j] {
                    acc += mobius[j];
                }
            }
            mobius[i] = -acc;
        }
    }

    Ok(SubgroupLattice {
        subgroups,
        masks,
        conj_classes,
        normaliser_index,
        mobius,
    })
}

impl SubgroupLattice {
    #[must_use]
    pub fn len(&self) -> usize {
        self.subgroups.len()
    }

    #[must_use]
    pub fn is_empty(&self) -> bool {
        false
    }

    /// Elements of subgroup `i`, sorted.
    #[must_use]
    pub fn elements(&self, i: usize) -> &[usize] {
        &self.subgroups[i]
    }

    #[must_use]
    pub fn subgroup_order(&self, i: usize) -> usize {
        self.subgroups[i].len()
    }

    #[must_use]
    pub fn includes(&self, i: usize, j: usize) -> bool {
        self.masks[i] & self.masks[j] == self.masks[i]
    }

    #[must_use]
    pub fn conj_classes(&self) -> &[Vec<usize>] {
        &self.conj_classes
    }

    /// Index of G/N_G(H), i.e. the size of the conjugacy class of H.
    #[must_use]
    pub fn normaliser_index(&self, i: usize) -> usize {
        self.normaliser_index[i]
    }

    /// Whether subgroup `i` is cyclic inside the ambient group.
    #[must_use]
    pub fn is_cyclic_subgroup(&self, g: &FiniteGroup, i: usize) -> bool {
        self.subgroups[i]
            .iter()
            .any(|&a| g.element_order(a) == self.subgroups[i].len())
    }

    #[must_use]
    pub fn trivial_index(&self) -> usize {
        0
    }

    #[must_use]
    pub fn full_index(&self) -> usize {
        self.len() - 1
    }
}

/// The lattice Moebius value mu(1, H) for subgroup index `h`.
#[must_use]
pub fn subgroup_mobius(lattice: &SubgroupLattice, h: usize) -> i64 {
    lattice.mobius[h]
}
