//! Rule data: the Table 1 coefficients of the relation `b2 b1^2 b2 + R0 = 0`
//! and the letter patterns of every rewrite rule.
//!
//! Patterns are written in the two letters `l = b_j` and `h = b_{j+1}`,
//! each followed by its exponent, e.g. `l2h2l1` is `b_j^2 b_{j+1}^2 b_j`.

use crate::coeff::{Mono, ZPoly, AB};
use num_bigint::BigInt;

/// Table 1 polynomials as `(coefficient, alpha exponent, beta exponent)`.
pub const TABLE1: [(&str, &[(i64, i32, i32)]); 14] = [
    ("A", &[(1, 0, 2), (-1, 1, 0)]),
    ("B", &[(1, 2, 0), (-1, 1, 2), (-1, 0, 1)]),
    ("C", &[(1, 2, 0), (-1, 1, 2)]),
    ("D", &[(1, 0, 0), (2, 1, 1), (1, 2, 2), (-1, 3, 0)]),
    ("E", &[(1, 0, 0), (1, 1, 1), (1, 2, 2), (-1, 3, 0)]),
    ("F", &[(1, 0, 0), (2, 1, 1), (-1, 0, 3)]),
    ("G", &[(1, 1, 3), (-2, 1, 0), (-2, 2, 1)]),
    ("H", &[(1, 1, 3), (-2, 1, 0), (-2, 2, 1), (1, 0, 2)]),
    ("I", &[(1, 4, 0), (-1, 3, 2), (-2, 2, 1), (-3, 1, 0)]),
    ("L", &[(2, 3, 1), (3, 2, 0), (-1, 2, 3), (-1, 1, 2)]),
    ("M", &[(1, 0, 4), (-2, 0, 1), (-3, 1, 2), (1, 2, 0)]),
    ("N", &[(1, 0, 0), (4, 1, 1), (3, 2, 2), (-1, 3, 0), (-1, 1, 4), (-1, 0, 3)]),
    ("O", &[(1, 0, 0), (3, 1, 1), (3, 2, 2), (-1, 3, 0), (-1, 1, 4)]),
    ("P", &[(3, 0, 2), (-1, 0, 5), (-2, 1, 0), (-3, 2, 1), (4, 1, 3)]),
];

/// The 21 lower terms of R0 as `(Table 1 entry, pattern)`; the relation is
/// `h l^2 h = -sum coef * pattern`.
pub const R0_REST: [(&str, &str); 21] = [
    ("A", "l2h2l2"),
    ("B", "l1h2l2"),
    ("B", "l2h2l1"),
    ("C", "l2h1l2"),
    ("D", "l1h2l1"),
    ("E", "l1h1l2"),
    ("E", "l2h1l1"),
    ("F", "h2l2"),
    ("F", "l2h2"),
    ("G", "h1l2"),
    ("G", "l2h1"),
    ("H", "h2l1"),
    ("H", "l1h2"),
    ("I", "l1h1l1"),
    ("L", "h1l1"),
    ("L", "l1h1"),
    ("M", "l2"),
    ("M", "h2"),
    ("N", "l1"),
    ("O", "h1"),
    ("P", ""),
];

/// Scalar weights used by the two mixed rules.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Weight {
    One,
    Alpha,
    MinusAlpha,
    Beta,
    MinusBeta,
}

/// `h l^2 h^2 -> l^2 h^2 l + alpha(h l^2 h - l h^2 l) + beta(h l^2 - h^2 l)`.
pub const C12: [(Weight, &str); 5] = [
    (Weight::One, "l2h2l1"),
    (Weight::Alpha, "h1l2h1"),
    (Weight::MinusAlpha, "l1h2l1"),
    (Weight::Beta, "h1l2"),
    (Weight::MinusBeta, "h2l1"),
];

/// `h^2 l^2 h -> l h^2 l^2 + alpha(h l^2 h - l h^2 l) + beta(l^2 h - l h^2)`.
pub const C21: [(Weight, &str); 5] = [
    (Weight::One, "l1h2l2"),
    (Weight::Alpha, "h1l2h1"),
    (Weight::MinusAlpha, "l1h2l1"),
    (Weight::Beta, "l2h1"),
    (Weight::MinusBeta, "l1h2"),
];

/// The alternative printed form of the C21 right-hand side, whose alpha
/// term carries `h^2 l^2 h^2` instead of `h l^2 h`. It is not an identity
/// of the algebra; the oracle checks that it fails.
pub const C21_VARIANT: [(Weight, &str); 5] = [
    (Weight::One, "l1h2l2"),
    (Weight::Alpha, "h2l2h2"),
    (Weight::MinusAlpha, "l1h2l1"),
    (Weight::Beta, "l2h1"),
    (Weight::MinusBeta, "l1h2"),
];

/// Expands a pattern into `(generator, exponent)` pairs with `l = j`.
pub fn pattern(p: &str, j: u8) -> Vec<(u8, u8)> {
    let b = p.as_bytes();
    b.chunks(2)
        .map(|c| {
            let g = if c[0] == b'l' { j } else { j + 1 };
            (g, c[1] - b'0')
        })
        .collect()
}

/// A Table 1 entry as a polynomial in alpha, beta.
pub fn table1_poly(name: &str) -> ZPoly {
    let (_, terms) = TABLE1
        .iter()
        .find(|(n, _)| *n == name)
        .unwrap_or_else(|| panic!("no Table 1 entry {name}"));
    ZPoly::from_terms(
        AB,
        terms.iter().map(|&(c, i, j)| (Mono::from_slice(&[i, j]), BigInt::from(c))),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pattern_expansion() {
        assert_eq!(pattern("l2h1l2", 1), vec![(1, 2), (2, 1), (1, 2)]);
        assert!(pattern("", 3).is_empty());
    }

    #[test]
    fn r0_has_21_distinct_words() {
        let mut seen: Vec<&str> = R0_REST.iter().map(|(_, p)| *p).collect();
        seen.sort();
        seen.dedup();
        assert_eq!(seen.len(), 21);
    }
}
