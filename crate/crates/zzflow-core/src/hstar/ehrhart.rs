//! Ehrhart side of the h* computation.
//!
//! The flow polytope routes one unit from vertex 1 to vertex `n`; its
//! `t`-th dilate routes `t` units, so lattice points are counted by the
//! same cut-profile recurrence with source supply `t` and no fresh unit at
//! inner vertices. The polytope has dimension `n`.

use num_bigint::{BigInt, BigUint};
use num_integer::binomial;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::flows::cut_transfer_count;
use crate::graph::MIN_N;
use crate::hstar::Polynomial;

/// Lattice points of the `t`-th dilate.
pub fn lattice_count(n: usize, t: u32) -> Result<BigUint> {
    if n < MIN_N {
        return Err(Error::InvalidGraphSize(n));
    }
    Ok(cut_transfer_count(n, t, 0))
}

/// Same count by brute force: every edge value lies in `0..=t` because
/// each edge sits on a source-sink cut of total `t`.
pub fn brute_dilate_count(n: usize, t: u32) -> Result<u64> {
    if n < MIN_N {
        return Err(Error::InvalidGraphSize(n));
    }
    let edges = 2 * n - 1;
    let mut digits = vec![0u32; edges];
    let mut count = 0u64;
    loop {
        let x = |i: usize| digits[i - 1];
        let y = |i: usize| digits[n - 1 + i];
        let mut good = x(1) + y(0) + y(1) == t;
        for i in 2..n {
            if !good {
                break;
            }
            good = x(i - 1) + y(i - 2) == x(i) + y(i);
        }
        if good {
            count += 1;
        }
        let mut pos = 0;
        loop {
            if pos == edges {
                return Ok(count);
            }
            if digits[pos] == t {
                digits[pos] = 0;
                pos += 1;
            } else {
                digits[pos] += 1;
                break;
            }
        }
    }
}

/// h* coefficients from the first `n + 1` dilate counts.
///
/// A negative coefficient would contradict the nonnegativity theorem for
/// lattice polytopes, so it is reported as an inconsistency.
pub fn hstar_ehrhart(n: usize) -> Result<Polynomial> {
    let d = n;
    let counts: Vec<BigInt> = (0..=d)
        .map(|t| lattice_count(n, t as u32).map(BigInt::from))
        .collect::<Result<_>>()?;
    let mut coeffs = Vec::with_capacity(d + 1);
    for k in 0..=d {
        let mut acc = BigInt::zero();
        for j in 0..=k {
            let c = binomial(BigInt::from(d + 1), BigInt::from(k - j));
            let term = c * &counts[j];
            if (k - j) % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        if acc.is_negative() {
            return Err(Error::Inconsistency(format!(
                "h* coefficient {k} is negative for n={n}"
            )));
        }
        let coeff = acc
            .to_u64()
            .ok_or_else(|| Error::InvalidArgument(format!("h* coefficient {k} exceeds u64")))?;
        coeffs.push(coeff);
    }
    Ok(Polynomial::new(coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flows::enumerate_flows;

    #[test]
    fn dilate_counts_match_brute_force() {
        for n in 3..=5 {
            for t in 0..=3 {
                let fast = lattice_count(n, t).unwrap();
                let slow = brute_dilate_count(n, t).unwrap();
                assert_eq!(fast, BigUint::from(slow), "n={n} t={t}");
            }
        }
    }

    #[test]
    fn frozen_dilate_counts() {
        assert_eq!(lattice_count(4, 1).unwrap(), BigUint::from(8u32));
        assert_eq!(lattice_count(4, 2).unwrap(), BigUint::from(31u32));
        assert_eq!(lattice_count(5, 2).unwrap(), BigUint::from(70u32));
    }

    #[test]
    fn hstar_small_cases() {
        assert_eq!(hstar_ehrhart(3).unwrap().coeffs(), [1, 1]);
        assert_eq!(hstar_ehrhart(4).unwrap().coeffs(), [1, 3, 1]);
        assert_eq!(hstar_ehrhart(5).unwrap().coeffs(), [1, 7, 7, 1]);
    }

    #[test]
    fn hstar_sum_is_the_flow_count() {
        for n in 3..=7 {
            let h = hstar_ehrhart(n).unwrap();
            let flows = enumerate_flows(n).unwrap();
            assert_eq!(h.sum() as usize, flows.len(), "n={n}");
        }
    }
}
