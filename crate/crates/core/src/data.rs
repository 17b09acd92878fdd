//! Literal polynomial data: moduli, commutativity polynomials, the printed
//! trace system and the obstruction factors. Texts use the syntax accepted
//! by `QPoly::parse` with `a`, `b` standing for alpha, beta.

/// Type I modulus in alpha, beta; degree 6 in alpha with leading coefficient 8.
pub const H: &str = "8a^6 - 8a^5 b^2 + 2a^4 b^4 + 36a^4 b - 34a^3 b^3 + 17a^3 + 8a^2 b^5 + 32a^2 b^2 - 36a b^4 + 38a b + 8b^6 - 17b^3 + 8";

/// Type II modulus in z, delta; monic of degree 7 in delta.
pub const P: &str = "z^23 + z^18 delta - 2z^16 delta^2 - z^14 delta^3 - 2z^9 delta^4 + 2z^7 delta^5 + delta^6 z^5 + delta^7";

pub const W: &str = "a^3 + 8 - b^3 + 6a b";

/// `W` in its printed factored form.
pub const W_FACTORED: &str = "(a + 2 - b)(a^2 - 2a + 4 + a b + 2b + b^2)";

/// The Table 1 auxiliary quantity w is `((a^2+2b)/(2a-b^2))^(1/2)`; kept as
/// documentation only since no computation needs it.
pub const TABLE1_W_SQUARED: (&str, &str) = ("a^2 + 2b", "2a - b^2");

// Commutativity polynomials in alpha, beta, z, t.
pub const L: &str = "3*a*b^4+5*a^2*b^5-2*a*b+2*a^4*b-7*a^3*b^3-7*a^2*b^2-a*b^7+a^3+(13*a^3*b^2-10*a^2*b^4+13*a^2*b-6*a*b^3-2*a^4+3*a+2*a*b^6)*t +(-6*a^3*b-a*b^5-6*a^2+3*a*b^2+5*a^2*b^3)*t^2+(-16*a^4*b^2-5*a*b^2-2*a^2+3*a^5+2*a*b^5-13*a^3*b+11*a^3*b^4-2*a^2*b^6)*z +(-2*a*b^4+15*a^4*b+2*a^2*b^5-11*a^3*b^3+15*a^3+6*a*b)*z*t+(-3*a-a^3*b^5+6*a^4*b^3-3*a^3*b^2+2*a^2*b^4-9*a^5*b-9*a^2*b-10*a^4)*z^2";
pub const M: &str = "a-a^4+6*a^2*b-2*a^5*b-2*a*b^3+7*a^4*b^3+11*a^3*b^2+a*b^6-7*a^2*b^4-5*a^3*b^5+a^2*b^7 +(-21*a^3*b-2*a^2*b^6+2*a*b^2+14*a^2*b^3-13*a^4*b^2-7*a^2+10*a^3*b^4-2*a*b^5+2*a^5)*t +(-7*a^2*b^2+6*a^4*b+10*a^3+a*b^4+a^2*b^5-5*a^3*b^3)*t^2 +(-3*a^6+2*a^3*b^6+5*a*b+11*a^2*b^2+16*a^5*b^2+8*a^3+25*a^4*b-11*a^4*b^4-4*a*b^4-10*a^3*b^3)*z +(11*a^4*b^3-14*a^2*b+10*a^3*b^2-a+4*a*b^3-15*a^5*b-27*a^4-2*a^3*b^5)*z*t +(4*a*b^2-4*a^2*b^3+a^4*b^5+19*a^5-a^3*b^4+4*a^2-3*a^4*b^2+21*a^3*b-6*a^5*b^3+9*a^6*b)*z^2";
pub const N: &str = "12*a^2*b^3+a*b^8-6*a^2*b^6-2*a^2+3*a*b^2+11*a^3*b^4-4*b^5*a-6*a^4*b^2-7*a^3*b +(-21*a^3*b^3+7*a*b^4+5*a^3+10*a^4*b-2*a*b^7-2*a*b-17*a^2*b^2+12*a^2*b^5)*t +(-4*a^4+10*a^3*b^2-3*a+a*b^6+5*a^2*b-6*a^2*b^4-3*a*b^3)*t^2 +(3*a+3*a*b^3+2*a^2*b^7+16*a^3*b^2-2*a*b^6-7*a^4-13*a^5*b+5*a^2*b-13*a^3*b^5+25*a^4*b^3)*z +(a^2-12*a^3*b+10*a^5+13*a^3*b^4-a^2*b^3-2*a^2*b^6+2*a*b^5-24*a^4*b^2-5*a*b^2)*z*t +(5*a^3+4*a^3*b^3+14*a^5*b^2+8*a^4*b+7*a^2*b^2+a^3*b^6+5*a*b-2*a^2*b^5-6*a^6-7*a^4*b^4)*z^2";

/// The quadratic trace system: `T(R0) = 0` and `T(R1) = 0` in alpha, beta, z, t.
pub const TRACE_EQ0: &str = "(-b^3+3a b+4)t^2 + (3a^2-7a b^2-6b+2b^4)t + (3b^2-b^5-2a-3a^2 b+4a b^3) + (2a b^3+b^2-6a^2 b-10a)z t + (-3a^3+7a^2 b^2+9a b+4-b^3-2a b^4)z + (3a^3 b+7a^2-a^2 b^3-a b^2+2b)z^2";
pub const TRACE_EQ1: &str = "(b^2-2a)t^2 + (4+5a b-2b^3)t + (b^4-2b-3a b^2+a^2) + (2b+5a^2-2a b^2)z t + (b^2+2a b^3-5a^2 b-6a)z + (4+a^2 b^2+a b-2a^3)z^2";

// Type II obstruction factors in z, beta.
pub const Z: &str = "1+7 z b+21 z^2b^2+z^3+35 z^3 b^3+35 z^4 b^4+21 z^5 b^5+7 z^6 b^6+z^7 b^7+z^9 b^6+8 z^8 b^5+23 z^7 b^4+32 z^6 b^3+23 z^5 b^2+8 z^4 b-2 z^6+z^9-z^9 b^3-5 z^8 b^2-6 z^7 b";
pub const B1: &str = "3 z^3+z^4 b+1+z b";
pub const B2: &str = "5 z^3+10 z^4 b+6 z^5 b^2+z^6 b^3+4 z^6+2 z^7 b+1+3 z b+3 z^2b^2 +z^3 b^3";
pub const B3: &str = "b+2 z b^2+4 z^3 b+5 z^4b^2 +z^5b^3 +z^2 b^3 -2 z^5";
pub const B4: &str = "(z b+ z^2b+1+z-z^2) (z b+1+2 z^3) (z^4b^2 -z^3 b^2+z^2b^2+1+2 z b-z-2 z^2b +2 z^2+3 z^3 b+z^3+z^4 b+z^4)";
pub const B5: &str = "1+z^3+z^2b^2 +2 z b";
pub const B6: &str = "z^3 b^3+1+2 z b+2 z^2b^2 +z^3";
pub const B7: &str = "1+4 z b+6z^2 b^2 +2 z^3+4 z^3 b^3+z^4 b^4+z^6 b^3+4 z^5 b^2+5 z^4 b+z^6";
pub const B8: &str = "z^2b^3 +b+2 z b^2-2 z^2-z^3 b";
pub const B9: &str = "1+6 z b+16z^2 b^2 +3 z^3+25 z^3 b^3+25 z^4 b^4+16 z^5 b^5+6 z^6 b^6+z^7 b^7+3 z^8 b^5+13 z^7 b^4+24 z^6 b^3+24 z^5 b^2+13 z^4 b+z^7 b+z^6+z^9";
pub const B10: &str = "1+6 z b+16z^2 b^2 +3 z^3+25 z^3 b^3+25 z^4 b^4+16 z^5 b^5+6 z^6 b^6+z^7 b^7+z^9 b^6+7 z^8 b^5+20 z^7 b^4+31 z^6 b^3+28 z^5 b^2+14 z^4 b+z^6+z^9+z^9 b^3+2 z^8 b^2+2 z^7 b";
pub const B11: &str = "6 z b+16z^2 b^2 +3 z^3+10 z^8 b^2+5 z^8 b^5+z^7 b^7+z^9 b^6+12 z^7 b+12 z^7 b^4+19 z^6 b^3+20 z^5 b^2+12 z^4 b+6 z^6 b^6+3 z^9 b^3+5 z^6+z^9+1+25 z^3 b^3+25 z^4 b^4+16 z^5 b^5";
pub const B12: &str = "2 b+4z^5 b^3 -2 z^5+2z^4 b^5 +8 z b^2+12z^2 b^3 -2 z^2+8 z^3 b^4+3 z^4 b^2-2 z^3 b+z^6b^4";
pub const B13: &str = "1+8 z b+29z^2 b^2 +63 z^3 b^3+80 z^6 b^3+29 z^7 b^7+13 z^9 b^6+17 z^9 b^3+91 z^4 b^4+57 z^5 b^2+23 z^4 b+4 z^3+6 z^6+4 z^9+91 z^5 b^5+63 z^6 b^6+39 z^8 b^5+70 z^7 b^4+30 z^8 b^2+22 z^7 b+z^12+ z^9b^9 -z^12 b^6+z^10 b^4+2 z^10 b^7+8 z^8 b^8-3 z^11 b^5+3 z^11 b^2+7 z^10 b";
pub const B14: &str = "2+8 z b+12 z^2 b^2+4 z^3+8 z^3 b^3+2 z^4 b^4+z^6 b^3+6 z^5 b^2+9 z^4 b+2 z^6";

/// Printed factored L, M, N at type I parameters: `u^2 * factor * H`.
pub const LMN_TYPE_I: [(&str, &str); 3] = [("L", "b"), ("M", "-(a b + 2)"), ("N", "a - b^2")];

/// Printed factored L, M, N at type II parameters:
/// `sign * Z * B_k / (z^p (z b + 1)^q)` as `(name, sign, k, p, q)`.
pub const LMN_TYPE_II: [(&str, i32, usize, i32, u32); 3] =
    [("L", -1, 1, 7, 4), ("M", -1, 2, 9, 5), ("N", 1, 3, 7, 5)];

/// Printed type I CPC obstructions as `u^3 * factor * H * W`; missing
/// labels are printed as trivial or not listed.
pub const CPC_TYPE_I: [((u8, u8), &str); 12] = [
    ((1, 2), "-a(a - b^2)"),
    ((2, 4), "(a - b^2)(a^2 + b)"),
    ((3, 2), "-a^2 b^2 + 2 + a b + a^3"),
    ((3, 3), "a b + 2"),
    ((3, 4), "a b(a - b^2)"),
    ((4, 1), "-(a - b^2)(a^2 + b)"),
    ((4, 2), "a(a^3 + 2 + 2a b - a^2 b^2 - b^3)"),
    ((4, 3), "a(a^3 - a^2 b^2 - 2 - b^3)"),
    ((4, 4), "0"),
    ((5, 3), "-(b^2 + 2a + 2a^2 b)"),
    ((5, 4), "a(-a^3 b^2 - b^2 - a^2 b + a^4)"),
    ((6, 4), "-a(b + 2a^2)(a - b^2)"),
];

/// Printed type II CPC obstructions as `sign * Z * extra * prod B_k /
/// (z^p (z b + 1)^q)`: `(label, sign, factors, extra, p, q)`.
pub const CPC_TYPE_II: [((u8, u8), i32, &[usize], &str, i32, u32); 11] = [
    ((1, 2), -1, &[4, 5, 6], "1", 13, 8),
    ((2, 4), -1, &[4, 6, 7], "1", 15, 9),
    ((3, 2), 1, &[4, 8], "1", 15, 9),
    ((3, 3), -1, &[4, 9], "1", 11, 7),
    ((3, 4), 1, &[4, 5, 6], "b", 13, 8),
    ((4, 1), 1, &[4, 6, 7], "1", 15, 9),
    ((4, 2), 1, &[4, 5, 10], "1", 17, 10),
    ((4, 3), 1, &[4, 5, 11], "1", 17, 10),
    ((5, 3), -1, &[4, 12], "1", 13, 8),
    ((5, 4), -1, &[4, 5, 13], "1", 19, 11),
    ((6, 4), -1, &[4, 5, 6, 14], "1", 17, 10),
];

/// `B_k` by index, `1..=14`.
pub fn b_factor(k: usize) -> &'static str {
    [B1, B2, B3, B4, B5, B6, B7, B8, B9, B10, B11, B12, B13, B14][k - 1]
}
