use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::reflgrp::{subgroup_generated, FiniteGroup};

pub const WTILDE_CAP: usize = 2000;

/// JSON form: `{"order", "table", "generators"}`, with `table[a][b]` = a·b.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TableFile {
    pub order: usize,
    pub table: Vec<Vec<usize>>,
    pub generators: Vec<usize>,
}

/// A finite group given by its Cayley table.
#[derive(Debug, Clone)]
pub struct CayleyTable {
    n: usize,
    table: Vec<usize>,
    identity: usize,
    inverse: Vec<usize>,
    gens: Vec<usize>,
}

impl CayleyTable {
    /// Checks shape, the group axioms and that the generators generate.
    /// Associativity is tested as (a·b)·g = a·(b·g) for generators g, which
    /// suffices once the generators are known to generate.
    pub fn new(file: &TableFile) -> Result<Self> {
        let n = file.order;
        let bad = |m: String| Err(Error::Structural(format!("W̃ table: {m}")));
        if n == 0 || n > WTILDE_CAP {
            return bad(format!("order {n} outside 1..={WTILDE_CAP}"));
        }
        if file.table.len() != n || file.table.iter().any(|r| r.len() != n) {
            return bad(format!("expected a {n}x{n} table"));
        }
        if file.table.iter().flatten().any(|&x| x >= n) {
            return bad("entry out of range".into());
        }
        if let Some(&g) = file.generators.iter().find(|&&g| g >= n) {
            return bad(format!("generator {g} out of range"));
        }
        let table: Vec<usize> = file.table.iter().flatten().copied().collect();
        let mut seen = vec![false; n];
        for a in 0..n {
            for rowcol in [true, false] {
                seen.iter_mut().for_each(|s| *s = false);
                for b in 0..n {
                    let v = if rowcol { table[a * n + b] } else { table[b * n + a] };
                    if std::mem::replace(&mut seen[v], true) {
                        return bad(format!(
                            "{} {a} repeats element {v} (not a Latin square)",
                            if rowcol { "row" } else { "column" }
                        ));
                    }
                }
            }
        }
        let Some(identity) = (0..n).find(|&e| (0..n).all(|b| table[e * n + b] == b)) else {
            return bad("no identity element".into());
        };
        let inverse: Vec<usize> = (0..n)
            .map(|a| (0..n).find(|&b| table[a * n + b] == identity).unwrap())
            .collect();
        let t = CayleyTable {
            n,
            table,
            identity,
            inverse,
            gens: file.generators.clone(),
        };
        let closure = subgroup_generated(&t, &t.gens);
        if closure.len() != n {
            return bad(format!(
                "generators span only {} of {n} elements",
                closure.len()
            ));
        }
        for a in 0..n {
            for b in 0..n {
                for &g in &t.gens {
                    if t.mul(t.mul(a, b), g) != t.mul(a, t.mul(b, g)) {
                        return bad(format!("not associative at ({a}, {b}, {g})"));
                    }
                }
            }
        }
        Ok(t)
    }

    pub fn to_file(&self) -> TableFile {
        TableFile {
            order: self.n,
            table: self.table.chunks(self.n).map(<[usize]>::to_vec).collect(),
            generators: self.gens.clone(),
        }
    }
}

impl FiniteGroup for CayleyTable {
    fn order(&self) -> usize {
        self.n
    }

    fn identity(&self) -> usize {
        self.identity
    }

    fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.n + b]
    }

    fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    fn generators(&self) -> Vec<usize> {
        self.gens.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyclic(n: usize) -> TableFile {
        TableFile {
            order: n,
            table: (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect(),
            generators: vec![1 % n],
        }
    }

    #[test]
    fn cyclic_table() {
        let t = CayleyTable::new(&cyclic(6)).unwrap();
        assert_eq!(t.identity(), 0);
        assert_eq!(t.inv(2), 4);
        assert_eq!(t.element_order(2), 3);
    }

    #[test]
    fn malformed_tables_are_structural() {
        let mut f = cyclic(4);
        f.table[1][1] = 1;
        assert!(matches!(CayleyTable::new(&f), Err(Error::Structural(_))));
        let mut f = cyclic(4);
        f.generators = vec![2];
        assert!(matches!(CayleyTable::new(&f), Err(Error::Structural(_))));
        let mut f = cyclic(3);
        f.table.pop();
        assert!(CayleyTable::new(&f).is_err());
    }
}
