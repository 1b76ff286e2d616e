//! Brute-force reference implementations for cross-checking the main paths.

use crate::chartable::CharacterTable;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::sectors::tuple_count;

/// Default tuple cap for [`orbit_count_direct`].
pub const ORACLE_CAP: u128 = 1_000_000;

struct UnionFind {
    parent: Vec<u32>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n as u32).collect(),
        }
    }

    fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let up = self.parent[self.parent[x as usize] as usize];
            self.parent[x as usize] = up;
            x = up;
        }
        x
    }

    fn union(&mut self, a: u32, b: u32) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi as usize] = lo;
        true
    }
}

/// Number of orbits of `G^g` under simultaneous conjugation, by union-find
/// with every conjugation as an edge set.
pub fn orbit_count_direct(group: &FiniteGroup, genus: usize, cap: u128) -> Result<u64> {
    let n = group.order();
    let requested = tuple_count(n, genus);
    if requested > cap {
        return Err(Error::CapExceeded { requested, cap });
    }
    let total = requested as usize;
    let mut uf = UnionFind::new(total);
    let mut components = total as u64;
    let mut digits = vec![0usize; genus];
    for t in group.elements() {
        let conj: Vec<usize> = group.elements().map(|x| group.conjugate(t, x)).collect();
        for index in 0..total {
            let mut rest = index;
            for d in digits.iter_mut().rev() {
                *d = rest % n;
                rest /= n;
            }
            let image = digits.iter().fold(0usize, |acc, &x| acc * n + conj[x]);
            if uf.union(index as u32, image as u32) {
                components -= 1;
            }
        }
    }
    Ok(components)
}

/// `N^1_{a_1⋯a_k}` for an abelian group: 1 iff the pointwise product of the
/// characters is the trivial character.
pub fn abelian_fusion_oracle(group: &FiniteGroup, table: &CharacterTable, irreps: &[usize]) -> Result<u64> {
    if !group.is_abelian() {
        return Err(Error::NotAbelian);
    }
    let trivial = (0..table.len()).all(|c| {
        let prod = irreps
            .iter()
            .fold(crate::chartable::C64::new(1.0, 0.0), |acc, &a| acc * table.value(a, c));
        (prod.re - 1.0).abs() < 1e-6 && prod.im.abs() < 1e-6
    });
    Ok(trivial as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin::builtin;
    use crate::double::QuantumDouble;
    use crate::fusion::point_fusion_invariant_dim;
    use crate::group::DEFAULT_ELEMENT_CAP;

    fn group(name: &str) -> FiniteGroup {
        builtin(name, DEFAULT_ELEMENT_CAP).unwrap()
    }

    #[test]
    fn orbit_counts() {
        assert_eq!(orbit_count_direct(&group("S3"), 2, ORACLE_CAP).unwrap(), 11);
        assert_eq!(orbit_count_direct(&group("S3"), 3, ORACLE_CAP).unwrap(), 49);
        assert_eq!(orbit_count_direct(&group("Z3"), 2, ORACLE_CAP).unwrap(), 9);
        assert_eq!(orbit_count_direct(&group("Z1"), 4, ORACLE_CAP).unwrap(), 1);
    }

    #[test]
    fn orbit_cap() {
        let err = orbit_count_direct(&group("A5"), 4, ORACLE_CAP).unwrap_err();
        assert!(matches!(
            err,
            Error::CapExceeded {
                requested: 12_960_000,
                ..
            }
        ));
    }

    #[test]
    fn abelian_examples() {
        let z2 = QuantumDouble::new(group("Z2")).unwrap();
        let t = z2.table();
        assert_eq!(abelian_fusion_oracle(z2.group(), t, &[1, 1]).unwrap(), 1);
        assert_eq!(abelian_fusion_oracle(z2.group(), t, &[1, 0]).unwrap(), 0);

        let z4 = QuantumDouble::new(group("Z4")).unwrap();
        let t = z4.table();
        let a = z4.group().element_by_name("a").unwrap();
        let ca = z4.classes().class_of(a);
        let find = |v: crate::chartable::C64| (0..t.len()).find(|&i| (t.value(i, ca) - v).norm() < 1e-9).unwrap();
        let i_char = find(crate::chartable::C64::new(0.0, 1.0));
        let minus = find(crate::chartable::C64::new(-1.0, 0.0));
        let minus_bar = t.conjugate(minus).unwrap();
        assert_eq!(
            abelian_fusion_oracle(z4.group(), t, &[i_char, i_char, minus_bar]).unwrap(),
            1
        );
        for a in 0..4 {
            for b in 0..4 {
                for c in 0..4 {
                    assert_eq!(
                        abelian_fusion_oracle(z4.group(), t, &[a, b, c]).unwrap(),
                        point_fusion_invariant_dim(t, &[a, b, c]).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn rejects_nonabelian() {
        let s3 = QuantumDouble::new(group("S3")).unwrap();
        assert_eq!(
            abelian_fusion_oracle(s3.group(), s3.table(), &[0]),
            Err(Error::NotAbelian)
        );
    }
}
