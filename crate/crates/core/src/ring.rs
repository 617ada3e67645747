//! Quantales of additive subgroups of the rings `ℤ_n`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::lattice::FiniteLattice;
use crate::quantale::Quantale;

/// An additive subgroup of `ℤ_n` as a residue bitmask.
pub(crate) type Subgroup = u64;

const MAX_MODULUS: usize = 64;

/// Subgroups of `ℤ_n` ordered by size then bitmask; element labels are
/// `0`, `kZ` and `Z`.
pub(crate) fn subgroups(n: usize) -> Vec<Subgroup> {
    let mut groups: Vec<Subgroup> = (0..n).map(|g| generated(n, 1u64 << g)).collect();
    groups.sort_by_key(|&g| (g.count_ones(), g));
    groups.dedup();
    groups
}

/// Smallest additive subgroup containing the residues in `seed`.
pub(crate) fn generated(n: usize, seed: Subgroup) -> Subgroup {
    let mut group: Subgroup = 1;
    loop {
        let mut next = group | seed;
        for x in 0..n {
            if next >> x & 1 == 0 {
                continue;
            }
            for y in 0..n {
                if next >> y & 1 == 1 {
                    next |= 1 << ((x + y) % n);
                }
            }
        }
        if next == group {
            return group;
        }
        group = next;
    }
}

/// The subgroup generated by all products `h·k`.
pub(crate) fn product(n: usize, h: Subgroup, k: Subgroup) -> Subgroup {
    let mut seed = 0;
    for x in (0..n).filter(|x| h >> x & 1 == 1) {
        for y in (0..n).filter(|y| k >> y & 1 == 1) {
            seed |= 1 << ((x * y) % n);
        }
    }
    generated(n, seed)
}

pub(crate) fn subgroup_label(n: usize, g: Subgroup) -> String {
    let step = (1..n).find(|&x| g >> x & 1 == 1).unwrap_or(n);
    match step {
        s if s == n => "0".to_string(),
        1 => "Z".to_string(),
        s => format!("{s}Z"),
    }
}

/// Quantale of a list of subgroups closed under sums and products, ordered
/// by inclusion.
pub(crate) fn subgroup_quantale(n: usize, groups: &[Subgroup]) -> Result<Quantale> {
    let m = groups.len();
    let labels = groups.iter().map(|&g| subgroup_label(n, g)).collect();
    let leq = (0..m * m)
        .map(|i| groups[i / m] & !groups[i % m] == 0)
        .collect();
    let lattice = Arc::new(FiniteLattice::from_order(labels, leq)?);
    let index = |g: Subgroup| {
        groups
            .iter()
            .position(|&h| h == g)
            .ok_or_else(|| Error::InvalidArgument("subgroups are not closed under products".into()))
    };
    let mut mul = Vec::with_capacity(m * m);
    for &h in groups {
        for &k in groups {
            mul.push(index(product(n, h, k))?);
        }
    }
    Quantale::new(lattice, mul)
}

/// `Sub ℤ_n`: additive subgroups with the subgroup-generated product. The
/// whole ring is checked to be the unit.
pub fn sub_ring_quantale(n: usize) -> Result<Quantale> {
    if !(2..=MAX_MODULUS).contains(&n) {
        return Err(Error::InvalidArgument(format!(
            "modulus must be in 2..={MAX_MODULUS}, got {n}"
        )));
    }
    let groups = subgroups(n);
    let q = subgroup_quantale(n, &groups)?;
    let whole = groups.len() - 1;
    Quantale::with_unit(q.lattice().clone(), q.table().to_vec(), whole)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sub_z4() {
        let q = sub_ring_quantale(4).unwrap();
        let labels: Vec<&str> = q.elements().map(|x| q.label(x)).collect();
        assert_eq!(labels, ["0", "2Z", "Z"]);
        assert_eq!(q.mul(1, 1), 0);
        assert_eq!(q.unit(), Some(2));
        // 2Z ← 2Z: every subgroup c has 2Z·c ⊆ 2Z
        assert_eq!(q.residual_left(1, 1), 2);
        let sided = q.sided_sets();
        assert_eq!(sided.two, vec![0, 1, 2]);
        assert!(q.exhaustive_law_failure().is_none());
    }

    #[test]
    fn sub_z6_and_z2() {
        let q = sub_ring_quantale(6).unwrap();
        assert_eq!(q.size(), 4);
        let (two, three) = (q.lattice().index_of("2Z").unwrap(), q.lattice().index_of("3Z").unwrap());
        assert_eq!(q.mul(two, three), q.bottom());
        assert_eq!(q.mul(two, two), two);
        assert_eq!(q.mul(three, three), three);
        assert!(q.exhaustive_law_failure().is_none());

        let z2 = sub_ring_quantale(2).unwrap();
        assert_eq!(z2.size(), 2);
        assert_eq!(z2.unit(), Some(1));
        assert_eq!(z2.mul(1, 1), 1);
    }

    #[test]
    fn invalid_modulus() {
        assert!(sub_ring_quantale(1).is_err());
        assert!(sub_ring_quantale(65).is_err());
    }
}
