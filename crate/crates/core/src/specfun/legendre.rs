use crate::error::{Result, RotorError};

/// Legendre polynomial P_l(x) by upward three-term recurrence.
pub fn legendre_p(l: i64, x: f64) -> Result<f64> {
    if l < 0 {
        return Err(RotorError::domain("legendre_p", format!("l = {l} < 0")));
    }
    if !(-1.0..=1.0).contains(&x) {
        return Err(RotorError::domain("legendre_p", format!("x = {x} outside [-1, 1]")));
    }
    Ok(*legendre_seq(l as usize, x).last().expect("non-empty"))
}

/// P_0(x) .. P_lmax(x).
pub fn legendre_seq(lmax: usize, x: f64) -> Vec<f64> {
    let mut p = Vec::with_capacity(lmax + 1);
    p.push(1.0);
    if lmax == 0 {
        return p;
    }
    p.push(x);
    for l in 1..lmax {
        let lf = l as f64;
        let next = ((2.0 * lf + 1.0) * x * p[l] - lf * p[l - 1]) / (lf + 1.0);
        p.push(next);
    }
    p
}
