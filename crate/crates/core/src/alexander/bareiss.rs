use crate::laurent::LaurentPoly;

/// Determinant of a square matrix over `Z[t, t^-1]` by fraction-free
/// (Bareiss) elimination.
///
/// Each row is first multiplied by a power of `t` so every entry lies in
/// `Z[t]`; the unit is undone at the end. Every interior division is exact
/// by Bareiss's identity and is checked at runtime.
pub fn determinant(matrix: &[Vec<LaurentPoly>]) -> LaurentPoly {
    let n = matrix.len();
    assert!(matrix.iter().all(|row| row.len() == n), "matrix must be square");
    if n == 0 {
        return LaurentPoly::one();
    }
    let mut unit_shift = 0i64;
    let mut m: Vec<Vec<LaurentPoly>> = matrix
        .iter()
        .map(|row| {
            let lo = row.iter().filter_map(LaurentPoly::min_degree).min().unwrap_or(0);
            unit_shift += lo;
            row.iter().map(|p| p.shift(-lo)).collect()
        })
        .collect();

    let mut negate = false;
    let mut prev = LaurentPoly::one();
    for k in 0..n - 1 {
        let Some(pivot) = (k..n).find(|&r| !m[r][k].is_zero()) else {
            return LaurentPoly::zero();
        };
        if pivot != k {
            m.swap(pivot, k);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[k][k] * &m[i][j]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num
                    .exact_div(&prev)
                    .expect("nonzero previous pivot")
                    .expect("Bareiss division is exact");
            }
            m[i][k] = LaurentPoly::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].shift(unit_shift);
    if negate {
        -det
    } else {
        det
    }
}
