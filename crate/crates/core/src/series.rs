//! Generating functions for primitive counts: the double-factorial series
//! φ(t), and the differential equation satisfied by Φ(x,t).

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::primitive::count_primitive;

/// The odd double factorial (2k−1)!!, with (−1)!! = 1 for k = 0.
pub fn odd_double_factorial(k: usize) -> BigUint {
    let mut out = BigUint::one();
    let mut m = 3usize;
    while m < 2 * k {
        out *= BigUint::from(m);
        m += 2;
    }
    out
}

/// Coefficients φ_0..φ_order of
/// φ(t) = (1/2)(1/t − 1/(1 − 1/Σ (2k−1)!! t^k)).
///
/// With S(t) = Σ (2k−1)!! t^k = 1 + t·U(t) where U(t) = Σ (2k+1)!! t^k,
/// the expression collapses to φ = (1 − t − U⁻¹)/(2t), so only one series
/// inversion is needed and all coefficients stay integral.
pub fn phi_series(order: usize) -> Vec<BigUint> {
    let m = order + 2;
    let u: Vec<BigInt> = (0..m)
        .map(|k| BigInt::from(odd_double_factorial(k + 1)))
        .collect();
    // Invert U termwise: c_0 = 1, c_n = −Σ_{j=1..n} U_j c_{n−j}.
    let mut c = vec![BigInt::zero(); m];
    c[0] = BigInt::one();
    for n in 1..m {
        let mut acc = BigInt::zero();
        for j in 1..=n {
            acc += &u[j] * &c[n - j];
        }
        c[n] = -acc;
    }
    let two = BigInt::from(2);
    (0..=order)
        .map(|k| {
            let num = if k == 0 {
                -BigInt::one() - &c[1]
            } else {
                -c[k + 1].clone()
            };
            let (q, r) = (num.clone() / &two, num % &two);
            assert!(r.is_zero(), "phi coefficient {} is not an integer", k);
            q.to_biguint()
                .unwrap_or_else(|| panic!("phi coefficient {} is negative", k))
        })
        .collect()
}

/// Outcome of the generating-function consistency check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OdeReport {
    /// True when every checked coefficient matches.
    pub ok: bool,
    /// The first (x-power, t-power) where the two sides disagree, if any.
    pub first_discrepancy: Option<(usize, usize)>,
    /// True when the boundary series [x²]Φ equals φ(t) up to the truncation.
    pub boundary_ok: bool,
}

/// Checks the differential equation for Φ(x,t) = Σ count_primitive(f,b) x^f t^b
/// against independently computed φ(t) coefficients.
///
/// The equation is verified in the cleared, coefficientwise form
/// t·∂Φ/∂x = (1−x)·Φ + 2t·x·φ(t) − x², which is the transfer recurrence
/// T(f,b) = T(f−1,b) + (f+1)·T(f+1,b−1) + [f=2][b=0]. The table is computed
/// one x-order beyond `max_x`, so no coefficient in range is truncated.
/// Also checks the boundary condition [x²]Φ = φ(t).
pub fn verify_phi_ode(max_x: usize, max_t: usize) -> OdeReport {
    assert!(
        max_x >= 2 && max_t >= 2,
        "truncation orders must be at least 2"
    );
    // T[f][b] for f = 0..=max_x+1 (zero below f=2).
    let mut t_tab = vec![vec![BigInt::zero(); max_t + 1]; max_x + 2];
    for f in 2..=max_x + 1 {
        for b in 0..=max_t {
            t_tab[f][b] = BigInt::from(count_primitive(f, b));
        }
    }
    let phi = phi_series(max_t);
    let mut first = None;
    for f in 0..=max_x {
        for b in 0..=max_t {
            // [x^f t^b] of t·Φ_x.
            let lhs = if b >= 1 {
                &t_tab[f + 1][b - 1] * BigInt::from(f + 1)
            } else {
                BigInt::zero()
            };
            // [x^f t^b] of (1−x)·Φ + 2t·x·φ(t) − x².
            let mut rhs = t_tab[f][b].clone();
            if f >= 1 {
                rhs -= &t_tab[f - 1][b];
            }
            if f == 1 && b >= 1 {
                rhs += BigInt::from(2) * BigInt::from(phi[b - 1].clone());
            }
            if f == 2 && b == 0 {
                rhs -= BigInt::one();
            }
            if lhs != rhs && first.is_none() {
                first = Some((f, b));
            }
        }
    }
    let boundary_ok = (0..=max_t).all(|b| t_tab[2][b] == BigInt::from(phi[b].clone()));
    OdeReport {
        ok: first.is_none() && boundary_ok,
        first_discrepancy: first,
        boundary_ok,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn double_factorials() {
        let want = [1u64, 1, 3, 15, 105, 945, 10395];
        for (k, &w) in want.iter().enumerate() {
            assert_eq!(odd_double_factorial(k), BigUint::from(w));
        }
    }

    #[test]
    fn phi_expansion() {
        assert_eq!(
            phi_series(5),
            [1u64, 3, 21, 207, 2529, 36243]
                .iter()
                .map(|&v| BigUint::from(v))
                .collect::<Vec<_>>()
        );
        assert_eq!(phi_series(0), vec![BigUint::from(1u32)]);
    }

    #[test]
    fn phi_matches_small_family_counts() {
        let phi = phi_series(6);
        for (b, coeff) in phi.iter().enumerate() {
            assert_eq!(*coeff, count_primitive(2, b), "buds {}", b);
        }
    }

    #[test]
    fn doubled_coefficients() {
        let doubled: Vec<BigUint> = phi_series(3)
            .into_iter()
            .map(|c| c * BigUint::from(2u32))
            .collect();
        assert_eq!(
            doubled,
            [2u64, 6, 42, 414]
                .iter()
                .map(|&v| BigUint::from(v))
                .collect::<Vec<_>>()
        );
    }

    #[test]
    fn ode_holds() {
        let report = verify_phi_ode(8, 6);
        assert!(
            report.ok,
            "first discrepancy {:?}",
            report.first_discrepancy
        );
        assert!(report.boundary_ok);
    }
}
