//! Truncated integer power series in one variable `t`.

use std::fmt;

use serde::{Deserialize, Serialize};

/// `Σ c_i t^i` for `i <= degree bound`; coefficients past the bound are
/// discarded by every operation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Series {
    coeffs: Vec<i64>,
}

impl Series {
    pub fn zero(t: usize) -> Self {
        Series { coeffs: vec![0; t + 1] }
    }

    pub fn one(t: usize) -> Self {
        Self::monomial(0, t)
    }

    /// `t^d` truncated at `t`.
    pub fn monomial(d: usize, t: usize) -> Self {
        let mut s = Self::zero(t);
        if d <= t {
            s.coeffs[d] = 1;
        }
        s
    }

    /// `t^d / (1 - t^d) = t^d + t^{2d} + ...`; `d` must be positive.
    pub fn geometric(d: usize, t: usize) -> Self {
        assert!(d > 0, "geometric series needs a positive step");
        let mut s = Self::zero(t);
        for e in (d..=t).step_by(d) {
            s.coeffs[e] = 1;
        }
        s
    }

    pub fn from_coeffs(mut coeffs: Vec<i64>, t: usize) -> Self {
        coeffs.resize(t + 1, 0);
        Series { coeffs }
    }

    pub fn truncation(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn coeff(&self, d: usize) -> i64 {
        self.coeffs.get(d).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn add(&self, o: &Series) -> Series {
        let t = self.truncation().min(o.truncation());
        Series { coeffs: (0..=t).map(|i| self.coeffs[i].checked_add(o.coeffs[i]).expect("series overflow")).collect() }
    }

    pub fn mul(&self, o: &Series) -> Series {
        let t = self.truncation().min(o.truncation());
        let mut out = vec![0i64; t + 1];
        for (i, &a) in self.coeffs.iter().enumerate().take(t + 1) {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.coeffs.iter().enumerate().take(t + 1 - i) {
                out[i + j] =
                    out[i + j].checked_add(a.checked_mul(b).expect("series overflow")).expect("series overflow");
            }
        }
        Series { coeffs: out }
    }

    pub fn scale(&self, c: i64) -> Series {
        Series { coeffs: self.coeffs.iter().map(|&a| a.checked_mul(c).expect("series overflow")).collect() }
    }

    pub fn truncate(&self, t: usize) -> Series {
        Series::from_coeffs(self.coeffs.iter().copied().take(t + 1).collect(), t)
    }

    /// `Σ_i self[i]` as a polynomial in `t` (e.g. a Poincaré polynomial).
    pub fn poly_string(&self) -> String {
        poly_string(&self.coeffs, self.truncation(), false)
    }

    /// Human-readable form with a trailing `+ O(t^{T+1})`.
    pub fn series_string(&self) -> String {
        poly_string(&self.coeffs, self.truncation(), true)
    }
}

/// Polynomial with nonnegative degrees, e.g. `1 + 2t^2 + t^3`.
pub fn poly_string(coeffs: &[i64], t: usize, with_tail: bool) -> String {
    let mut terms = Vec::new();
    for (d, &c) in coeffs.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let mono = match d {
            0 => String::new(),
            1 => "t".to_string(),
            _ => format!("t^{d}"),
        };
        let mag = c.unsigned_abs();
        let body = if mono.is_empty() {
            mag.to_string()
        } else if mag == 1 {
            mono
        } else {
            format!("{mag}{mono}")
        };
        if terms.is_empty() {
            terms.push(if c < 0 { format!("-{body}") } else { body });
        } else {
            terms.push(format!("{} {body}", if c < 0 { "-" } else { "+" }));
        }
    }
    let mut s = if terms.is_empty() { "0".to_string() } else { terms.join(" ") };
    if with_tail {
        s.push_str(&format!(" + O(t^{})", t + 1));
    }
    s
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.series_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        let t = 6;
        let g = Series::geometric(2, t);
        assert_eq!(g.coeffs(), &[0, 0, 1, 0, 1, 0, 1]);
        let one_plus_g = Series::one(t).add(&g);
        // (1/(1-t^2))^2 = Σ (k+1) t^{2k}
        assert_eq!(one_plus_g.mul(&one_plus_g).coeffs(), &[1, 0, 2, 0, 3, 0, 4]);
        assert_eq!(Series::monomial(9, t), Series::zero(t));
    }

    #[test]
    fn printing() {
        let s = Series::from_coeffs(vec![1, 0, 2, -1], 3);
        assert_eq!(s.poly_string(), "1 + 2t^2 - t^3");
        assert_eq!(s.to_string(), "1 + 2t^2 - t^3 + O(t^4)");
        assert_eq!(Series::zero(2).poly_string(), "0");
    }
}
