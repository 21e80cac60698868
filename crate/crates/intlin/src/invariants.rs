use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};

/// A finitely generated abelian group Z^r ⊕ Z/d₁ ⊕ ⋯ ⊕ Z/d_k with d₁ | d₂ | ⋯.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct AbGroupInvariants {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl AbGroupInvariants {
    /// Normalizes arbitrary cyclic orders (units dropped) into a divisibility
    /// chain.
    pub fn new(free_rank: usize, cyclic: Vec<BigInt>) -> Self {
        AbGroupInvariants {
            free_rank,
            torsion: invariant_factors(cyclic),
        }
    }

    pub fn free(rank: usize) -> Self {
        AbGroupInvariants {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    pub fn trivial() -> Self {
        Self::free(0)
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn is_free(&self) -> bool {
        self.torsion.is_empty()
    }
}

/// Turns a list of cyclic orders into invariant factors dᵢ | dᵢ₊₁, dropping 1s.
fn invariant_factors(cyclic: Vec<BigInt>) -> Vec<BigInt> {
    let mut ds: Vec<BigInt> = cyclic.into_iter().map(|d| d.abs()).filter(|d| !d.is_one()).collect();
    // pairwise (a, b) -> (gcd, lcm) until sorted by divisibility
    let n = ds.len();
    for i in 0..n {
        for j in i + 1..n {
            let (a, b) = (ds[i].clone(), ds[j].clone());
            ds[i] = a.gcd(&b);
            ds[j] = a.lcm(&b);
        }
    }
    ds.retain(|d| !d.is_one());
    ds
}

impl fmt::Display for AbGroupInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}
