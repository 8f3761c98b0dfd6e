use serde::{Deserialize, Serialize};

use super::{catalog, enumerate, ReflectionGroup};
use crate::cyclo::{lcm_order, CycMatrix};
use crate::error::{Error, Result};

/// JSON form of a matrix group: `{"name", "rank", "cyclotomic_order",
/// "generators"}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GroupDatum {
    pub name: String,
    pub rank: usize,
    pub cyclotomic_order: u32,
    pub generators: Vec<CycMatrix>,
}

impl GroupDatum {
    pub fn catalog(m: usize, p: usize, r: usize) -> Result<Self> {
        let generators = catalog(m, p, r)?;
        let mut order = 1;
        for g in &generators {
            for c in g.entries() {
                order = lcm_order(order, c.order())?;
            }
        }
        Ok(GroupDatum {
            name: format!("G({m},{p},{r})"),
            rank: generators[0].rows(),
            cyclotomic_order: order,
            generators,
        })
    }

    /// Checks shapes and the declared field, then enumerates.
    pub fn build(&self, cap: usize) -> Result<ReflectionGroup> {
        if self.generators.is_empty() {
            return Err(Error::Structural("group has no generators".into()));
        }
        for (i, g) in self.generators.iter().enumerate() {
            if g.rows() != self.rank || g.cols() != self.rank {
                return Err(Error::Structural(format!(
                    "generator {i} is {}x{}, expected rank {}",
                    g.rows(),
                    g.cols(),
                    self.rank
                )));
            }
            for c in g.entries() {
                if self.cyclotomic_order == 0 || !self.cyclotomic_order.is_multiple_of(c.order()) {
                    return Err(Error::Structural(format!(
                        "generator {i} has an entry of order {} outside ℚ(ζ_{})",
                        c.order(),
                        self.cyclotomic_order
                    )));
                }
            }
        }
        enumerate(&self.generators, cap)
    }
}
