//! Certificates and real solutions printed in the literature, as data.

use crate::exactmath::{rat, radical_gram, RadicalRow, RatMatrix, Rational};
use crate::rhocalc::build_f_system;

fn row(radicand: Rational, coeffs: Vec<Rational>) -> RadicalRow {
    RadicalRow { radicand, coeffs }
}

fn int(n: i64) -> Rational {
    Rational::from(n)
}

/// The d = 5 Gram matrix obtained with `F_{1,1} = 6`, `F_{2,2} = 3`.
pub fn d5_gram() -> RatMatrix {
    RatMatrix::from_rows(vec![
        vec![int(6), int(-4), rat(59, 40)],
        vec![int(-4), int(3), rat(-5, 4)],
        vec![rat(59, 40), rat(-5, 4), rat(3, 5)],
    ])
    .expect("square")
}

/// SDP range of `F_{1,1}` for d = 5.
pub const D5_F11_BOUNDS: (f64, f64) = (4.68455, 38.41658);
/// SDP range of `F_{2,2}` for d = 5 once `F_{1,1} = 6`.
pub const D5_F22_BOUNDS_AT_F11_6: (f64, f64) = (2.64289, 3.26414);

pub fn d5_rows() -> Vec<RadicalRow> {
    vec![
        row(int(6), vec![int(1), rat(-2, 3), rat(59, 240)]),
        row(int(3), vec![int(0), rat(1, 3), rat(-4, 15)]),
        row(int(154), vec![int(0), int(0), rat(1, 80)]),
    ]
}

pub fn d6_rows() -> Vec<RadicalRow> {
    vec![
        row(int(5), vec![int(1), rat(-3, 5), rat(21, 100)]),
        row(int(5), vec![int(0), rat(1, 5), rat(-3, 25)]),
        row(int(3), vec![int(0), int(0), rat(1, 20)]),
    ]
}

pub fn d7_rows() -> Vec<RadicalRow> {
    vec![
        row(int(7), vec![int(1), rat(-5, 7), rat(9, 28), rat(-17, 245)]),
        row(int(21), vec![int(0), rat(1, 7), rat(-179, 1260), rat(109, 2205)]),
        row(int(429), vec![int(0), int(0), rat(1, 90), rat(-53, 6435)]),
        row(int(4147), vec![int(0), int(0), int(0), rat(1, 5005)]),
    ]
}

/// d = 8 rows with the last entry of the first row as printed, −8/108.
pub fn d8_rows_as_printed() -> Vec<RadicalRow> {
    d8_rows_with(rat(-8, 108))
}

/// d = 8 rows with the last entry of the first row set to −8/105, the value
/// the linear system forces.
pub fn d8_rows() -> Vec<RadicalRow> {
    d8_rows_with(rat(-8, 105))
}

fn d8_rows_with(c14: Rational) -> Vec<RadicalRow> {
    vec![
        row(int(7), vec![int(1), rat(-5, 7), rat(31, 98), c14]),
        row(int(21), vec![int(0), rat(1, 7), rat(-41, 294), rat(16, 315)]),
        row(int(15), vec![int(0), int(0), rat(1, 21), rat(-8, 225)]),
        row(int(35), vec![int(0), int(0), int(0), rat(2, 525)]),
    ]
}

pub fn gram_of(rows: &[RadicalRow]) -> RatMatrix {
    radical_gram(rows).expect("rows have equal length")
}

/// Real `(α, β, δ)` for d = 4.
pub fn d4_real_tuples() -> Vec<(f64, f64, f64)> {
    let (s3, s6) = (3f64.sqrt(), 6f64.sqrt());
    let mut out = Vec::new();
    for (a, b) in [(-s3, 4.0 / 9.0 * s3), (s3, -4.0 / 9.0 * s3)] {
        for dl in [s6 / 9.0, -s6 / 9.0] {
            out.push((a, b, dl));
        }
    }
    out
}

/// Real `(α, β)` for d = 3.
pub fn d3_real_tuples() -> Vec<(f64, f64)> {
    let s2 = 2f64.sqrt();
    vec![(s2 + 3.0, -s2 - 2.0), (-s2 + 3.0, s2 - 2.0), (s2 - 3.0, -s2 + 2.0), (-s2 - 3.0, s2 + 2.0)]
}

/// Residuals of the three coefficient equations for d = 4.
pub fn d4_tuple_residuals(a: f64, b: f64, dl: f64) -> [f64; 3] {
    let lhs = a * a + 1.0;
    [
        lhs - (2.0 * a * a + b * b + 2.0 * a * b + dl * dl),
        -lhs - (6.0 * b * b + 6.0 * a * b + 6.0 * dl * dl),
        lhs - (6.0 * b * b + 6.0 * dl * dl),
    ]
}

/// Residuals of the two coefficient equations for d = 3.
pub fn d3_tuple_residuals(a: f64, b: f64) -> [f64; 2] {
    let lhs = a * a + 1.0;
    [lhs - (2.0 * a * a + b * b + 2.0 * a * b), -lhs - (6.0 * b * b + 6.0 * a * b)]
}

/// Residuals of the generated F-system at a floating-point Gram matrix.
pub fn f_system_residuals_f64(d: usize, f: &[Vec<f64>]) -> Vec<f64> {
    let sys = build_f_system(d).expect("supported degree");
    sys.equations
        .iter()
        .map(|eq| {
            let rhs: f64 = eq.terms.iter().map(|t| t.coeff.to_f64() * f[t.i - 1][t.j - 1]).sum();
            rhs - f64::from(eq.lhs_sign) * (f[0][0] + 1.0)
        })
        .collect()
}

/// Gram matrix of `(α, β)` and `(0, δ)` rows.
pub fn tuple_gram(a: f64, b: f64, dl: f64) -> Vec<Vec<f64>> {
    vec![vec![a * a, a * b], vec![a * b, b * b + dl * dl]]
}
