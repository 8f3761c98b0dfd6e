//! Coset enumeration for presentations whose generators are involutions,
//! as for Coxeter groups. The table keeps s² = 1 built in: an entry c·s = d
//! is always stored together with d·s = c.

use std::collections::VecDeque;

use crate::error::{Error, Result};

struct Enumeration {
    ngens: usize,
    table: Vec<Vec<Option<usize>>>,
    parent: Vec<usize>,
    cap: usize,
}

impl Enumeration {
    fn find(&mut self, c: usize) -> usize {
        let mut r = c;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut x = c;
        while self.parent[x] != r {
            let next = self.parent[x];
            self.parent[x] = r;
            x = next;
        }
        r
    }

    fn define(&mut self, c: usize, g: usize) -> Result<()> {
        let d = self.table.len();
        if d >= self.cap {
            return Err(Error::Capacity {
                what: "coset enumeration",
                limit: self.cap,
                found: d,
            });
        }
        self.table.push(vec![None; self.ngens]);
        self.parent.push(d);
        self.table[c][g] = Some(d);
        self.table[d][g] = Some(c);
        Ok(())
    }

    fn merge(&mut self, a: usize, b: usize, queue: &mut VecDeque<usize>) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            let (lo, hi) = (a.min(b), a.max(b));
            self.parent[hi] = lo;
            queue.push_back(hi);
        }
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        let mut queue = VecDeque::new();
        self.merge(a, b, &mut queue);
        while let Some(dead) = queue.pop_front() {
            for g in 0..self.ngens {
                let Some(f) = self.table[dead][g] else { continue };
                self.table[f][g] = None;
                self.table[dead][g] = None;
                let (e1, f1) = (self.find(dead), self.find(f));
                if let Some(x) = self.table[e1][g] {
                    self.merge(f1, x, &mut queue);
                } else if let Some(x) = self.table[f1][g] {
                    self.merge(e1, x, &mut queue);
                } else {
                    self.table[e1][g] = Some(f1);
                    self.table[f1][g] = Some(e1);
                }
            }
        }
    }

    /// Traces `word` from c forwards and backwards, filling the one gap if
    /// a single letter is missing and defining new cosets otherwise.
    fn scan_and_fill(&mut self, c: usize, word: &[usize]) -> Result<()> {
        let mut f = c;
        let mut b = c;
        let mut i = 0;
        let mut j = word.len();
        loop {
            while i < j {
                match self.table[f][word[i]] {
                    Some(x) => {
                        f = x;
                        i += 1;
                    }
                    None => break,
                }
            }
            if i == j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j > i {
                match self.table[b][word[j - 1]] {
                    Some(x) => {
                        b = x;
                        j -= 1;
                    }
                    None => break,
                }
            }
            if j == i {
                self.coincidence(f, b);
                return Ok(());
            }
            if j == i + 1 {
                let g = word[i];
                self.table[f][g] = Some(b);
                self.table[b][g] = Some(f);
                return Ok(());
            }
            self.define(f, word[i])?;
        }
    }
}

/// Order of ⟨s_1, …, s_k | s_i², (s_i s_j)^{m_ij}⟩, by enumerating the
/// cosets of the trivial subgroup. Gives up once `cap` cosets have been
/// defined.
pub fn coxeter_group_order(m: &[Vec<usize>], cap: usize) -> Result<usize> {
    let k = m.len();
    let mut relators = Vec::new();
    for i in 0..k {
        for j in i + 1..k {
            let word: Vec<usize> = (0..2 * m[i][j]).map(|t| if t % 2 == 0 { i } else { j }).collect();
            relators.push(word);
        }
    }
    let mut en = Enumeration {
        ngens: k,
        table: vec![vec![None; k]],
        parent: vec![0],
        cap,
    };
    let mut c = 0;
    while c < en.table.len() {
        for rel in &relators {
            if en.find(c) != c {
                break;
            }
            en.scan_and_fill(c, rel)?;
        }
        for g in 0..k {
            if en.find(c) != c {
                break;
            }
            if en.table[c][g].is_none() {
                en.define(c, g)?;
            }
        }
        c += 1;
    }
    Ok((0..en.table.len()).filter(|&c| en.find(c) == c).count())
}
