//! Coefficient rings: the integers or a prime field `Z/p`.
//!
//! All matrix entries are stored as `i64`. Over `Z/p` entries are kept
//! reduced into `0..p`. Arithmetic is checked; an overflow over the
//! integers is an internal limit and panics with a clear message.

use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize, Default)]
pub enum Coeffs {
    #[default]
    Integers,
    /// The prime field with the given characteristic.
    Mod(u32),
}

impl fmt::Display for Coeffs {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coeffs::Integers => write!(f, "Z"),
            Coeffs::Mod(p) => write!(f, "Z/{p}"),
        }
    }
}

fn overflow() -> ! {
    panic!("integer overflow in exact arithmetic; input exceeds supported coefficient range")
}

impl Coeffs {
    /// `Z/p` for a prime `p`; `None` if `p` is not prime.
    pub fn prime(p: u32) -> Option<Coeffs> {
        if p < 2 {
            return None;
        }
        let mut d = 2u32;
        while (d as u64) * (d as u64) <= p as u64 {
            if p.is_multiple_of(d) {
                return None;
            }
            d += 1;
        }
        Some(Coeffs::Mod(p))
    }

    pub fn is_field(self) -> bool {
        matches!(self, Coeffs::Mod(_))
    }

    pub fn characteristic(self) -> u32 {
        match self {
            Coeffs::Integers => 0,
            Coeffs::Mod(p) => p,
        }
    }

    #[inline]
    pub fn reduce(self, x: i64) -> i64 {
        match self {
            Coeffs::Integers => x,
            Coeffs::Mod(p) => x.rem_euclid(p as i64),
        }
    }

    #[inline]
    pub fn add(self, a: i64, b: i64) -> i64 {
        match self {
            Coeffs::Integers => a.checked_add(b).unwrap_or_else(|| overflow()),
            Coeffs::Mod(p) => (a + b).rem_euclid(p as i64),
        }
    }

    #[inline]
    pub fn sub(self, a: i64, b: i64) -> i64 {
        match self {
            Coeffs::Integers => a.checked_sub(b).unwrap_or_else(|| overflow()),
            Coeffs::Mod(p) => (a - b).rem_euclid(p as i64),
        }
    }

    #[inline]
    pub fn mul(self, a: i64, b: i64) -> i64 {
        match self {
            Coeffs::Integers => a.checked_mul(b).unwrap_or_else(|| overflow()),
            Coeffs::Mod(p) => ((a as i128 * b as i128).rem_euclid(p as i128)) as i64,
        }
    }

    #[inline]
    pub fn neg(self, a: i64) -> i64 {
        match self {
            Coeffs::Integers => a.checked_neg().unwrap_or_else(|| overflow()),
            Coeffs::Mod(p) => (-a).rem_euclid(p as i64),
        }
    }

    /// `a - q*b`.
    #[inline]
    pub fn sub_mul(self, a: i64, q: i64, b: i64) -> i64 {
        self.sub(a, self.mul(q, b))
    }

    /// Euclidean size used for pivot selection: `|a|` over `Z`, `1` for a
    /// nonzero element of a field.
    #[inline]
    pub fn norm(self, a: i64) -> u64 {
        match self {
            Coeffs::Integers => a.unsigned_abs(),
            Coeffs::Mod(_) => u64::from(a != 0),
        }
    }

    #[inline]
    pub fn is_unit(self, a: i64) -> bool {
        match self {
            Coeffs::Integers => a == 1 || a == -1,
            Coeffs::Mod(_) => a != 0,
        }
    }

    pub fn inverse(self, a: i64) -> Option<i64> {
        match self {
            Coeffs::Integers => match a {
                1 | -1 => Some(a),
                _ => None,
            },
            Coeffs::Mod(p) => {
                let a = a.rem_euclid(p as i64);
                if a == 0 {
                    return None;
                }
                // extended Euclid
                let (mut r0, mut r1) = (p as i64, a);
                let (mut t0, mut t1) = (0i64, 1i64);
                while r1 != 0 {
                    let q = r0 / r1;
                    (r0, r1) = (r1, r0 - q * r1);
                    (t0, t1) = (t1, t0 - q * t1);
                }
                Some(t0.rem_euclid(p as i64))
            }
        }
    }

    /// Quotient `q` making `a - q*b` small: nearest-integer division over
    /// `Z` (remainder at most `|b|/2` in absolute value), exact division in a
    /// field. `b` must be nonzero.
    #[inline]
    pub fn quotient(self, a: i64, b: i64) -> i64 {
        debug_assert!(b != 0);
        match self {
            Coeffs::Integers => {
                let q = a.div_euclid(b);
                let r = a - q * b;
                // r in [0, |b|); shift toward the nearer multiple
                if 2 * r.unsigned_abs() > b.unsigned_abs() {
                    if b > 0 {
                        q + 1
                    } else {
                        q - 1
                    }
                } else {
                    q
                }
            }
            Coeffs::Mod(_) => self.mul(a, self.inverse(b).expect("nonzero in a field")),
        }
    }

    /// Whether `b` divides `a`.
    #[inline]
    pub fn divides(self, b: i64, a: i64) -> bool {
        match self {
            Coeffs::Integers => {
                if b == 0 {
                    a == 0
                } else {
                    a % b == 0
                }
            }
            Coeffs::Mod(_) => b != 0 || a == 0,
        }
    }

    /// Reduce a coordinate modulo a generator order (`0` = free).
    #[inline]
    pub fn reduce_mod_order(self, x: i64, order: u64) -> i64 {
        let x = self.reduce(x);
        if order == 0 {
            x
        } else {
            x.rem_euclid(order as i64)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nearest_quotient_keeps_remainder_small() {
        let z = Coeffs::Integers;
        for a in -20i64..=20 {
            for b in [-7i64, -3, -2, -1, 1, 2, 3, 7] {
                let q = z.quotient(a, b);
                let r = a - q * b;
                assert!(2 * r.unsigned_abs() <= b.unsigned_abs(), "a={a} b={b} r={r}");
            }
        }
    }

    #[test]
    fn field_inverses() {
        let f = Coeffs::prime(7).unwrap();
        for a in 1..7 {
            let inv = f.inverse(a).unwrap();
            assert_eq!(f.mul(a, inv), 1);
        }
        assert!(Coeffs::prime(9).is_none());
        assert!(Coeffs::prime(1).is_none());
    }
}
