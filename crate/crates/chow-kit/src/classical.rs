//! Eulerian and binomial Eulerian polynomials with their combinatorial
//! gamma expansions; independent cross-checks for the Chow pipeline.

use num_bigint::BigInt;
use thiserror::Error;

use crate::descent::{p_recursive, DescentError, PKey};
use crate::poly::{IntPoly, PolyError};
use crate::sets::SmallSet;

#[derive(Debug, Error)]
pub enum ClassicalError {
    #[error("n = {n} exceeds the enumeration bound (S_{max} is the largest group enumerated)")]
    Bound { n: u32, max: u32 },
    #[error(transparent)]
    Descent(#[from] DescentError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

fn check_bound(n: u32, bound: u32) -> Result<(), ClassicalError> {
    // p_bruteforce with parameter n enumerates S_{n+1}, so S_m is fair game
    // for m <= bound + 1.
    if n > bound + 1 {
        return Err(ClassicalError::Bound { n, max: bound + 1 });
    }
    Ok(())
}

fn next_perm(a: &mut [u32]) -> bool {
    if a.len() < 2 {
        return false;
    }
    let mut i = a.len() - 1;
    while i > 0 && a[i - 1] >= a[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = a.len() - 1;
    while a[j] <= a[i - 1] {
        j -= 1;
    }
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

/// Sweeps S_n once and hands each descent mask to the collector.
fn for_each_descent_mask(n: u32, mut visit: impl FnMut(u32)) {
    let mut values: Vec<u32> = (1..=n).collect();
    loop {
        let mut mask = 0u32;
        for i in 1..values.len() {
            if values[i - 1] > values[i] {
                mask |= 1 << (i - 1);
            }
        }
        visit(mask);
        if !next_perm(&mut values) {
            break;
        }
    }
}

/// Eulerian polynomial A_n: descent generating polynomial of S_n.
pub fn eulerian(n: u32, bound: u32) -> Result<IntPoly, ClassicalError> {
    if n == 0 {
        return Ok(IntPoly::one());
    }
    check_bound(n, bound)?;
    let mut counts = vec![0u64; n as usize];
    for_each_descent_mask(n, |mask| {
        counts[mask.count_ones() as usize] += 1;
    });
    Ok(IntPoly::from_coeffs(counts.into_iter().map(Into::into).collect()))
}

/// Binomial Eulerian polynomial: 1 + x * sum over i of C(n,i) A_i(x).
pub fn binomial_eulerian(n: u32, bound: u32) -> Result<IntPoly, ClassicalError> {
    check_bound(n, bound)?;
    let mut acc = IntPoly::one();
    let mut binom = BigInt::from(1);
    for i in 1..=n {
        // C(n,i) built incrementally.
        binom = binom * BigInt::from(n - i + 1) / BigInt::from(i);
        let a_i = eulerian(i, bound)?;
        acc += &a_i.scale(&binom).shift_up(1);
    }
    Ok(acc)
}

/// Combinatorial gamma coefficients of A_n: counts of w in S_n whose descent
/// set is isolated, lies within {1,...,n-2}, and has size i.
pub fn gamma_eulerian(n: u32, bound: u32) -> Result<Vec<i64>, ClassicalError> {
    gamma_counts(n, bound, n.saturating_sub(2))
}

/// Combinatorial gamma coefficients of the binomial Eulerian polynomial:
/// descent sets isolated within {1,...,n-1} of size i.
pub fn gamma_binomial_eulerian(n: u32, bound: u32) -> Result<Vec<i64>, ClassicalError> {
    gamma_counts(n, bound, n.saturating_sub(1))
}

fn gamma_counts(n: u32, bound: u32, hi: u32) -> Result<Vec<i64>, ClassicalError> {
    if n == 0 {
        return Ok(vec![1]);
    }
    check_bound(n, bound)?;
    let allowed = SmallSet::interval(1, hi);
    let mut counts = vec![0i64; n as usize / 2 + 1];
    for_each_descent_mask(n, |mask| {
        let des = SmallSet::from_mask(mask);
        if des.is_isolated() && des.is_subset_of(&allowed) {
            counts[des.len()] += 1;
        }
    });
    while counts.last() == Some(&0) && counts.len() > 1 {
        counts.pop();
    }
    Ok(counts)
}

/// Eulerian data for one n, all routes bundled.
#[derive(Debug, Clone)]
pub struct EulerianData {
    pub n: u32,
    pub eulerian: IntPoly,
    pub binomial_eulerian: IntPoly,
    pub gamma_coeffs: Vec<i64>,
    pub gamma_coeffs_binomial: Vec<i64>,
}

pub fn eulerian_data(n: u32, bound: u32) -> Result<EulerianData, ClassicalError> {
    Ok(EulerianData {
        n,
        eulerian: eulerian(n, bound)?,
        binomial_eulerian: binomial_eulerian(n, bound)?,
        gamma_coeffs: gamma_eulerian(n, bound)?,
        gamma_coeffs_binomial: gamma_binomial_eulerian(n, bound)?,
    })
}

/// Outcome of the descent-family decompositions at the gamma level:
/// A_{n+1} = contract(sum over k of p_{n,k}^{∅⊆[1,n-1]}, degree n) and the
/// binomial analogue with T = [1,n] at degree n+1.
#[derive(Debug, Clone)]
pub struct DecompositionVerdict {
    pub n: u32,
    pub eulerian_ok: bool,
    pub binomial_ok: bool,
    pub eulerian_poly: IntPoly,
    pub eulerian_from_p: IntPoly,
    pub binomial_poly: IntPoly,
    pub binomial_from_p: IntPoly,
}

impl DecompositionVerdict {
    pub fn pass(&self) -> bool {
        self.eulerian_ok && self.binomial_ok
    }
}

pub fn verify_decomposition(n: u32, bound: u32) -> Result<DecompositionVerdict, ClassicalError> {
    assert!(n >= 2, "decomposition needs n >= 2");
    check_bound(n + 1, bound)?;
    let sum_p = |t: SmallSet| -> Result<IntPoly, ClassicalError> {
        let mut acc = IntPoly::zero();
        for k in 0..=n {
            let key = PKey::new(n, k, SmallSet::empty(), t)?;
            acc += &p_recursive(&key)?;
        }
        Ok(acc)
    };
    let eulerian_poly = eulerian(n + 1, bound)?;
    let eulerian_from_p =
        IntPoly::gamma_contract(&sum_p(SmallSet::interval(1, n - 1))?, n as usize)?;
    let binomial_poly = binomial_eulerian(n + 1, bound)?;
    let binomial_from_p =
        IntPoly::gamma_contract(&sum_p(SmallSet::interval(1, n))?, n as usize + 1)?;
    Ok(DecompositionVerdict {
        n,
        eulerian_ok: eulerian_poly == eulerian_from_p,
        binomial_ok: binomial_poly == binomial_from_p,
        eulerian_poly,
        eulerian_from_p,
        binomial_poly,
        binomial_from_p,
    })
}
