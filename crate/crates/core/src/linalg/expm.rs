#[allow(unused_imports)] // inherent float methods need std
use num_traits::Float;

use super::{Matrix, C64};

/// Matrix exponential by scaling and squaring of the Taylor series.
///
/// The argument is scaled by `2^{-s}` until its Frobenius norm is at most
/// 1/2, where the series converges to machine precision in under 20 terms.
pub fn matrix_exp(x: &Matrix) -> Matrix {
    assert!(x.is_square(), "matrix_exp of a non-square matrix");
    let n = x.rows();
    let norm = x.frobenius();
    let mut squarings = 0u32;
    if norm > 0.5 {
        squarings = (norm / 0.5).log2().ceil() as u32;
    }
    let scaled = x.scale_real(0.5f64.powi(squarings as i32));

    let mut sum = Matrix::identity(n);
    let mut term = Matrix::identity(n);
    for k in 1..40 {
        term = (&term * &scaled).scale(C64::new(1.0 / k as f64, 0.0));
        sum = &sum + &term;
        if term.max_abs() <= f64::EPSILON * 1e-2 * sum.max_abs() {
            break;
        }
    }
    for _ in 0..squarings {
        sum = &sum * &sum;
    }
    sum
}
