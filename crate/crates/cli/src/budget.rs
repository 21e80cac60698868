//! Rough basis-size estimates for the `--force` guard.

pub const LIMIT: f64 = 1e6;

fn factorial(n: usize) -> f64 {
    (1..=n).map(|i| i as f64).product()
}

fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    (0..k).map(|i| (n - i) as f64 / (i + 1) as f64).product()
}

/// Size of the standard basis of ℋₙ(U₁) for a wedge of r circles:
/// total orders split among r fibers.
pub fn u1_basis(r: usize, n: usize) -> f64 {
    if r == 0 {
        return if n == 0 { 1.0 } else { 0.0 };
    }
    factorial(n) * binomial(n + r - 1, r - 1)
}

/// Number of bar cells on n points: a coefficient cell on n₀ points times
/// an ordered list of totally ordered blocks on the rest.
pub fn bar_cells(r: usize, n: usize) -> f64 {
    (0..=n)
        .map(|n0| {
            let k = n - n0;
            let blocks = if k == 0 { 1.0 } else { factorial(k) * 2f64.powi(k as i32 - 1) };
            binomial(n, n0) * u1_basis(r, n0) * blocks
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        assert_eq!(u1_basis(2, 2), 6.0);
        assert_eq!(u1_basis(1, 4), 24.0);
        // n = 1: one block, or r coefficient cells
        assert_eq!(bar_cells(2, 1), 3.0);
        assert_eq!(bar_cells(0, 2), 4.0);
    }
}
