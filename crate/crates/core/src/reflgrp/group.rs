use std::collections::{HashMap, VecDeque};

use num_rational::BigRational;

use crate::cyclo::{lcm_order, CycMatrix, CycNumber};
use crate::error::{Error, Result};

pub const DEFAULT_GROUP_CAP: usize = 20_000;

/// Groups up to this order keep a full multiplication table; larger ones
/// multiply by walking stored words.
const TABLE_LIMIT: usize = 2048;

/// Index-based view of a finite group. Elements are `0..order()`.
pub trait FiniteGroup {
    fn order(&self) -> usize;
    fn identity(&self) -> usize;
    fn mul(&self, a: usize, b: usize) -> usize;
    fn inv(&self, a: usize) -> usize;
    /// A generating set, as element indices.
    fn generators(&self) -> Vec<usize>;

    fn pow(&self, a: usize, k: i64) -> usize {
        let base = if k < 0 { self.inv(a) } else { a };
        let mut acc = self.identity();
        for _ in 0..k.unsigned_abs() {
            acc = self.mul(acc, base);
        }
        acc
    }

    fn element_order(&self, a: usize) -> usize {
        let id = self.identity();
        let mut x = a;
        let mut k = 1;
        while x != id {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    fn conjugate(&self, w: usize, x: usize) -> usize {
        self.mul(self.mul(w, x), self.inv(w))
    }
}

/// A finite matrix group enumerated by breadth-first closure.
///
/// Element 0 is the identity; element order is discovery order with the
/// generators tried in input order, so indices are reproducible.
#[derive(Debug, Clone)]
pub struct ReflectionGroup {
    rank: usize,
    cyclotomic_order: u32,
    gens: Vec<CycMatrix>,
    gen_elems: Vec<usize>,
    elements: Vec<CycMatrix>,
    words: Vec<Vec<usize>>,
    right_gen: Vec<Vec<usize>>,
    inverse: Vec<usize>,
    table: Option<Vec<u32>>,
    index: HashMap<Vec<BigRational>, usize>,
}

fn matrix_key(m: &CycMatrix, order: u32) -> Result<Vec<BigRational>> {
    let mut key = Vec::new();
    for c in m.entries() {
        key.extend(c.key_at(order)?);
    }
    Ok(key)
}

/// BFS closure of `generators`; fails with the partial count once more than
/// `cap` elements have been found.
pub fn enumerate(generators: &[CycMatrix], cap: usize) -> Result<ReflectionGroup> {
    let first = generators
        .first()
        .ok_or_else(|| Error::domain("at least one generator is required"))?;
    let rank = first.rows();
    let mut order = 1;
    for g in generators {
        if !g.is_square() || g.rows() != rank {
            return Err(Error::domain("generators must be square of a common rank"));
        }
        g.inverse()?;
        for c in g.entries() {
            order = lcm_order(order, c.order())?;
        }
    }

    let id = CycMatrix::identity(rank);
    let mut index = HashMap::new();
    index.insert(matrix_key(&id, order)?, 0);
    let mut elements = vec![id];
    let mut words: Vec<Vec<usize>> = vec![vec![]];
    let mut right_gen: Vec<Vec<usize>> = vec![];
    let mut queue = VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        let mut row = Vec::with_capacity(generators.len());
        for (gi, g) in generators.iter().enumerate() {
            let y = elements[x].mul(g)?;
            let key = matrix_key(&y, order)?;
            let idx = match index.get(&key) {
                Some(&i) => i,
                None => {
                    let i = elements.len();
                    if i >= cap {
                        return Err(Error::Capacity {
                            what: "group enumeration",
                            limit: cap,
                            found: i,
                        });
                    }
                    index.insert(key, i);
                    elements.push(y);
                    let mut w = words[x].clone();
                    w.push(gi);
                    words.push(w);
                    queue.push_back(i);
                    i
                }
            };
            row.push(idx);
        }
        if right_gen.len() <= x {
            right_gen.resize(x + 1, vec![]);
        }
        right_gen[x] = row;
    }

    let n = elements.len();
    let gen_elems: Vec<usize> = (0..generators.len()).map(|g| right_gen[0][g]).collect();
    let mut grp = ReflectionGroup {
        rank,
        cyclotomic_order: order,
        gens: generators.to_vec(),
        gen_elems,
        elements,
        words,
        right_gen,
        inverse: vec![],
        table: None,
        index,
    };
    if n <= TABLE_LIMIT {
        // mul[a][b] = mul[a][parent(b)]·g, filled in discovery order of b
        let mut t = vec![0u32; n * n];
        for a in 0..n {
            t[a * n] = a as u32;
        }
        for b in 1..n {
            let w = &grp.words[b];
            let g = *w.last().unwrap();
            let parent = grp.walk(0, &w[..w.len() - 1]);
            for a in 0..n {
                let ap = t[a * n + parent] as usize;
                t[a * n + b] = grp.right_gen[ap][g] as u32;
            }
        }
        grp.table = Some(t);
    }
    let mut inverse = vec![usize::MAX; n];
    for a in 0..n {
        if inverse[a] != usize::MAX {
            continue;
        }
        let inv = grp.elements[a].inverse()?;
        let b = grp.find(&inv).ok_or_else(|| {
            Error::integrity("closed_under_inverse", format!("element {a}"))
        })?;
        inverse[a] = b;
        inverse[b] = a;
    }
    grp.inverse = inverse;
    Ok(grp)
}

impl ReflectionGroup {
    fn walk(&self, start: usize, word: &[usize]) -> usize {
        word.iter().fold(start, |x, &g| self.right_gen[x][g])
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// lcm of the cyclotomic orders of the generator entries.
    pub fn cyclotomic_order(&self) -> u32 {
        self.cyclotomic_order
    }

    pub fn generator_matrices(&self) -> &[CycMatrix] {
        &self.gens
    }

    /// Element index of each input generator.
    pub fn generator_indices(&self) -> &[usize] {
        &self.gen_elems
    }

    pub fn elements(&self) -> &[CycMatrix] {
        &self.elements
    }

    pub fn matrix(&self, a: usize) -> &CycMatrix {
        &self.elements[a]
    }

    /// A word in the input generators (by position) whose product is `a`.
    pub fn word(&self, a: usize) -> &[usize] {
        &self.words[a]
    }

    /// Right multiplication by the `g`-th input generator.
    pub fn right_generator(&self, a: usize, g: usize) -> usize {
        self.right_gen[a][g]
    }

    pub fn find(&self, m: &CycMatrix) -> Option<usize> {
        if m.rows() != self.rank || !m.is_square() {
            return None;
        }
        let key = matrix_key(m, self.cyclotomic_order).ok()?;
        self.index.get(&key).copied()
    }

    pub fn trace(&self, a: usize) -> CycNumber {
        self.elements[a].trace().expect("square")
    }
}

impl FiniteGroup for ReflectionGroup {
    fn order(&self) -> usize {
        self.elements.len()
    }

    fn identity(&self) -> usize {
        0
    }

    fn mul(&self, a: usize, b: usize) -> usize {
        match &self.table {
            Some(t) => t[a * self.elements.len() + b] as usize,
            None => self.walk(a, &self.words[b]),
        }
    }

    fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    fn generators(&self) -> Vec<usize> {
        self.gen_elems.clone()
    }
}
