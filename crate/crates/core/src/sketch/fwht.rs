use crate::error::{Error, Result};
use crate::la::Precision;

/// Normalized Walsh–Hadamard transform of `x` in natural ordering.
pub fn fwht(x: &[f64]) -> Result<Vec<f64>> {
    let mut y = x.to_vec();
    fwht_in_place(&mut y, Precision::Double)?;
    Ok(y)
}

/// In-place normalized transform with every butterfly rounded to `p`.
///
/// The unnormalized butterfly passes run first and the `2^{-k/2}` scaling is
/// applied once at the end.
pub fn fwht_in_place(x: &mut [f64], p: Precision) -> Result<()> {
    let n = x.len();
    if n == 0 || !n.is_power_of_two() {
        return Err(Error::InvalidParameter(format!("transform length {n} is not a power of two")));
    }
    let mut h = 1;
    while h < n {
        for start in (0..n).step_by(2 * h) {
            let (lo, hi) = x[start..start + 2 * h].split_at_mut(h);
            if p.is_double() {
                for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                    let (s, d) = (*a + *b, *a - *b);
                    *a = s;
                    *b = d;
                }
            } else {
                for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                    let (s, d) = (p.round(*a + *b), p.round(*a - *b));
                    *a = s;
                    *b = d;
                }
            }
        }
        h *= 2;
    }
    let k = n.trailing_zeros() as i32;
    let scale = if k % 2 == 0 { 2f64.powi(-k / 2) } else { 2f64.powi(-(k + 1) / 2) * std::f64::consts::SQRT_2 };
    let scale = p.round(scale);
    for v in x.iter_mut() {
        *v = p.round(*v * scale);
    }
    Ok(())
}
