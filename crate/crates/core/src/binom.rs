//! Generalized binomial coefficients ("characters").
//!
//! The character `(m over k)` is the coefficient of `v^k` in `(1 + v)^m` for
//! any upper index `m`. It is always computed by the running product
//! `∏_{j=1..k} (m - j + 1) / j`, so real and negative upper indices need no
//! special treatment.

use crate::scalar::Scalar;

/// A character together with the indices it was built from.
#[derive(Debug, Clone, PartialEq)]
pub struct BinomChar {
    pub upper: Scalar,
    pub lower: usize,
    pub value: Scalar,
}

impl BinomChar {
    pub fn new(upper: Scalar, lower: usize) -> BinomChar {
        let value = binom_char(&upper, lower);
        BinomChar { upper, lower, value }
    }
}

/// `∏_{j=1..k} (m - j + 1) / j`; the empty product is 1.
///
/// Exact input gives an exact result. A nonnegative integer `m < k` yields
/// exactly zero because the factor `m - m` appears in the product.
pub fn binom_char(m: &Scalar, k: usize) -> Scalar {
    let mut acc = match m {
        Scalar::Exact(_) => Scalar::one(),
        Scalar::Float(_) => Scalar::float(1.0),
    };
    for j in 1..=k as i64 {
        acc = &acc * &m.add_int(1 - j);
        if acc.is_zero() {
            return acc;
        }
        acc = acc.div_int(j);
    }
    acc
}

/// `(-1)^k · (m + k - 1 over k)`, which equals `(-m over k)`.
pub fn reflect_char(m: &Scalar, k: usize) -> Scalar {
    let v = binom_char(&m.add_int(k as i64 - 1), k);
    if k.is_multiple_of(2) {
        v
    } else {
        -v
    }
}

/// Step a character from lower index `k` to `k + 1`:
/// `(m over k+1) = (m over k) · (m - k) / (k + 1)`.
pub fn next_char(m: &Scalar, k: usize, current: &Scalar) -> Scalar {
    if current.is_zero() {
        return current.clone();
    }
    (current * &m.add_int(-(k as i64))).div_int(k as i64 + 1)
}
