//! Modified Bessel functions `I_0` and `I_1` by direct series summation.
//!
//! All series terms are positive, so the sums carry full relative precision
//! on the audited range `z ∈ [0, 100]`.

use super::{Result, SpecfunError};

/// `I_0(z)` (order 0) or `I_1(z) = I_0'(z)` (order 1) for `z ∈ [0, 100]`.
pub fn bessel_i(order: u32, z: f64) -> Result<f64> {
    if order > 1 {
        return Err(SpecfunError::OutOfRange(format!("unsupported Bessel order {order}")));
    }
    if !z.is_finite() || !(0.0..=100.0).contains(&z) {
        return Err(SpecfunError::OutOfRange(format!("bessel_i requires z in [0, 100], got {z}")));
    }
    let q = 0.25 * z * z;
    let mut term = if order == 0 { 1.0 } else { 0.5 * z };
    let mut sum = term;
    for k in 0..1000 {
        let kf = k as f64;
        term *= match order {
            0 => q / ((kf + 1.0) * (kf + 1.0)),
            _ => q / ((kf + 1.0) * (kf + 2.0)),
        };
        sum += term;
        if term <= f64::EPSILON * sum {
            return Ok(sum);
        }
    }
    Err(SpecfunError::NonConvergence(format!("Bessel series stalled at z={z}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    /// Plain partial-sum oracle, kept deliberately naive.
    fn i0_partial_sums(z: f64) -> f64 {
        let mut sum = 0.0;
        let mut prev = -1.0;
        for k in 0..400 {
            let mut term = 1.0;
            for j in 1..=k {
                term *= z * z / (4.0 * (j * j) as f64);
            }
            sum += term;
            if sum == prev {
                break;
            }
            prev = sum;
        }
        sum
    }

    #[test]
    fn order_zero_at_origin() {
        assert_eq!(bessel_i(0, 0.0).unwrap(), 1.0);
    }

    #[test]
    fn order_one_at_origin() {
        assert_eq!(bessel_i(1, 0.0).unwrap(), 0.0);
    }

    #[test]
    fn matches_partial_sum_oracle() {
        for &z in &[0.1, 1.0, 3.7, 10.0, 25.0] {
            assert_relative_eq!(
                bessel_i(0, z).unwrap(),
                i0_partial_sums(z),
                max_relative = 1e-13
            );
        }
    }

    #[test]
    fn i1_is_derivative_of_i0() {
        // Centered difference of I_0 against I_1.
        for &z in &[0.5, 2.0, 9.0, 40.0] {
            let h = 1e-6;
            let fd = (bessel_i(0, z + h).unwrap() - bessel_i(0, z - h).unwrap()) / (2.0 * h);
            assert_relative_eq!(bessel_i(1, z).unwrap(), fd, max_relative = 1e-8);
        }
    }

    #[test]
    fn increasing_and_at_least_one() {
        let mut prev = 1.0;
        for k in 0..=200 {
            let z = 0.5 * k as f64;
            let v = bessel_i(0, z).unwrap();
            assert!(v >= 1.0);
            assert!(v >= prev);
            prev = v;
        }
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(bessel_i(2, 1.0).is_err());
        assert!(bessel_i(0, -0.5).is_err());
        assert!(bessel_i(0, 101.0).is_err());
    }
}
