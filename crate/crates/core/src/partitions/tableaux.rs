use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::One;

use super::Partition;
use crate::ring::{Mono, Poly};

/// A standard Young tableau in English notation; `rows[0]` is the top row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StandardTableau {
    pub shape: Partition,
    pub rows: Vec<Vec<u32>>,
}

impl StandardTableau {
    /// Rows read from the bottom row up, each left to right.
    pub fn reading_word(&self) -> Vec<u32> {
        self.rows.iter().rev().flatten().copied().collect()
    }
}

/// Every standard tableau of the given shape.
pub fn standard_tableaux(shape: &Partition) -> Vec<StandardTableau> {
    let n = shape.size();
    if n == 0 {
        return vec![StandardTableau { shape: shape.clone(), rows: Vec::new() }];
    }
    let mut out = Vec::new();
    for (smaller, cell) in shape.covers_down() {
        for mut t in standard_tableaux(&smaller) {
            let b = cell.b as usize;
            if t.rows.len() <= b {
                t.rows.push(Vec::new());
            }
            t.rows[b].push(n);
            t.shape = shape.clone();
            out.push(t);
        }
    }
    out
}

/// Cocharge of a standard tableau: `1` gets index 0 and the index steps up
/// each time `r + 1` sits to the left of `r` in the reading word.
pub fn cocharge(tableau: &StandardTableau) -> u32 {
    let word = tableau.reading_word();
    let mut pos: HashMap<u32, usize> = HashMap::with_capacity(word.len());
    for (i, &x) in word.iter().enumerate() {
        pos.insert(x, i);
    }
    let mut index = 0;
    let mut total = 0;
    for r in 1..word.len() as u32 {
        if pos[&(r + 1)] < pos[&r] {
            index += 1;
        }
        total += index;
    }
    total
}

/// `sum over SYT of shape lambda of q^cocharge`.
pub fn cocharge_polynomial(shape: &Partition) -> Poly {
    Poly::from_terms(
        standard_tableaux(shape)
            .iter()
            .map(|t| (Mono::new(cocharge(t), 0, 0), BigInt::one())),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::{part, partitions_of};

    fn hook_count(p: &Partition) -> u64 {
        let n = p.size() as u64;
        let num: u64 = (1..=n).product();
        let hooks: u64 = p
            .parts()
            .iter()
            .enumerate()
            .flat_map(|(i, &len)| (0..len as usize).map(move |j| (i, j)))
            .map(|(i, j)| p.hook(i, j) as u64)
            .product();
        num / hooks
    }

    #[test]
    fn counts_match_hook_length_formula() {
        assert_eq!(standard_tableaux(&part(&[2, 1])).len(), 2);
        assert_eq!(standard_tableaux(&part(&[4])).len(), 1);
        assert_eq!(standard_tableaux(&part(&[2, 2])).len(), 2);
        for n in 1..=7 {
            for p in partitions_of(n) {
                let tabs = standard_tableaux(&p);
                assert_eq!(tabs.len() as u64, hook_count(&p), "{p}");
                for t in &tabs {
                    for row in &t.rows {
                        assert!(row.windows(2).all(|w| w[0] < w[1]));
                    }
                    for (r, row) in t.rows.iter().enumerate().skip(1) {
                        for (c, x) in row.iter().enumerate() {
                            assert!(t.rows[r - 1][c] < *x);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn cocharge_examples() {
        assert_eq!(cocharge_polynomial(&part(&[2, 1])), Poly::parse("q + q^2", "x").unwrap());
        assert_eq!(cocharge_polynomial(&part(&[3])), Poly::one());
        assert_eq!(cocharge_polynomial(&part(&[1, 1, 1, 1])), Poly::parse("q^6", "x").unwrap());
    }
}
