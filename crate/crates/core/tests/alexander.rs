#![allow(clippy::needless_range_loop)]

mod common;

use std::collections::BTreeMap;

use common::knot_braid;
use knotdom::alexander::{
    alexander_polynomial, alexander_polynomial_with_deletion, connected_sum_delta, determinant,
    determinant_invariant, jones_polynomial, kauffman_bracket, satellite_delta, AlexanderMatrix,
};
use knotdom::diagram::{seifert_circles, BraidWord, PdCode, WirtingerPresentation};
use knotdom::laurent::LaurentPoly;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

const TREFOIL: &str = "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)";
const FIGURE_EIGHT: &str = "X(4,2,5,1) X(8,6,1,5) X(6,3,7,4) X(2,7,3,8)";
const FIVE_TWO: &str = "X(1,4,2,5) X(3,8,4,9) X(5,10,6,1) X(9,6,10,7) X(7,2,8,3)";
const GRANNY: &str = "X(1,11,2,10) X(11,3,12,2) X(3,1,4,12) X(4,8,5,7) X(8,6,9,5) X(6,10,7,9)";
const TREFOIL_RII: &str = "X(1,6,2,7) X(7,2,8,3) X(8,4,9,3) X(9,4,10,5) X(5,10,6,1)";

fn p(s: &str) -> LaurentPoly {
    s.parse().unwrap()
}

fn pd(s: &str) -> PdCode {
    s.parse().unwrap()
}

fn braid(n: u32, letters: Vec<i32>) -> PdCode {
    BraidWord::new(n, letters).unwrap().to_pd().unwrap()
}

/// Laplace expansion along the first row.
fn cofactor_det(m: &[Vec<LaurentPoly>]) -> LaurentPoly {
    if m.is_empty() {
        return LaurentPoly::one();
    }
    let mut acc = LaurentPoly::zero();
    for j in 0..m.len() {
        let minor: Vec<Vec<LaurentPoly>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, x)| x.clone()).collect())
            .collect();
        let term = &m[0][j] * &cofactor_det(&minor);
        acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

/// Gaussian elimination over Q.
fn rational_det(mut m: Vec<Vec<BigRational>>) -> BigRational {
    let n = m.len();
    let mut det = BigRational::one();
    for k in 0..n {
        let Some(piv) = (k..n).find(|&r| !m[r][k].is_zero()) else {
            return BigRational::zero();
        };
        if piv != k {
            m.swap(piv, k);
            det = -det;
        }
        det *= m[k][k].clone();
        for i in k + 1..n {
            let f = &m[i][k] / &m[k][k];
            for j in k..n {
                let d = &f * &m[k][j];
                m[i][j] -= d;
            }
        }
    }
    det
}

/// Kauffman bracket by an independent state sum: loops are traced by walking
/// arc ends through the smoothings, with i64 coefficients.
fn bracket_oracle(pd: &PdCode) -> BTreeMap<i64, i64> {
    let n = pd.crossing_count();
    let mut total: BTreeMap<i64, i64> = BTreeMap::new();
    if n == 0 {
        total.insert(0, 1);
        return total;
    }
    // endpoint (crossing, slot); each label joins the two endpoints carrying it
    let mut ends_of_label: BTreeMap<u32, Vec<(usize, usize)>> = BTreeMap::new();
    for (i, x) in pd.crossings().iter().enumerate() {
        for (s, &l) in x.0.iter().enumerate() {
            ends_of_label.entry(l).or_default().push((i, s));
        }
    }
    for state in 0u32..1 << n {
        let partner = |(i, s): (usize, usize)| -> (usize, usize) {
            let b = state >> i & 1 == 1;
            let t = match (b, s) {
                (false, 0) => 1, (false, 1) => 0, (false, 2) => 3, (false, _) => 2,
                (true, 0) => 3, (true, 3) => 0, (true, 1) => 2, (true, _) => 1,
            };
            (i, t)
        };
        let other_end = |(i, s): (usize, usize)| -> (usize, usize) {
            let l = pd.crossings()[i].0[s];
            let e = &ends_of_label[&l];
            if e[0] == (i, s) { e[1] } else { e[0] }
        };
        let mut seen = vec![[false; 4]; n];
        let mut loops = 0;
        for i in 0..n {
            for s in 0..4 {
                if seen[i][s] {
                    continue;
                }
                loops += 1;
                let mut cur = (i, s);
                while !seen[cur.0][cur.1] {
                    seen[cur.0][cur.1] = true;
                    let q = partner(cur);
                    seen[q.0][q.1] = true;
                    cur = other_end(q);
                }
            }
        }
        let b = state.count_ones() as i64;
        let a_exp = n as i64 - 2 * b;
        // (-A^2 - A^-2)^(loops - 1)
        let mut poly: BTreeMap<i64, i64> = BTreeMap::from([(0, 1)]);
        for _ in 1..loops {
            let mut next = BTreeMap::new();
            for (&e, &c) in &poly {
                *next.entry(e + 2).or_insert(0) -= c;
                *next.entry(e - 2).or_insert(0) -= c;
            }
            poly = next;
        }
        for (e, c) in poly {
            *total.entry(e + a_exp).or_insert(0) += c;
        }
    }
    total.retain(|_, c| *c != 0);
    total
}

fn as_map(p: &LaurentPoly) -> BTreeMap<i64, i64> {
    p.terms().map(|(e, c)| (e, c.to_string().parse().unwrap())).collect()
}

fn span_one_entry() -> impl Strategy<Value = LaurentPoly> {
    (-2i64..=2, -3i64..=3, -3i64..=3).prop_map(|(k, a, b)| LaurentPoly::from_coeffs(k, &[a, b]))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn bareiss_matches_cofactor(entries in prop::collection::vec(span_one_entry(), 16)) {
        let m: Vec<Vec<LaurentPoly>> = entries.chunks(4).map(|r| r.to_vec()).collect();
        prop_assert_eq!(determinant(&m), cofactor_det(&m));
    }

    #[test]
    fn determinant_matches_rational_evaluation(b in knot_braid(4, 8), t0 in 2i64..4) {
        let pd = b.to_pd().unwrap();
        let matrix = AlexanderMatrix::new(&WirtingerPresentation::from_pd(&pd));
        let at = |x: &LaurentPoly| x.eval_int(t0).unwrap();
        let numeric = rational_det(matrix.entries().iter().map(|r| r.iter().map(at).collect()).collect());
        let exact = at(&matrix.determinant());
        prop_assert_eq!(numeric, exact);
    }

    #[test]
    fn knot_polynomial_shape(b in knot_braid(5, 10)) {
        let pd = b.to_pd().unwrap();
        let d = alexander_polynomial(&pd);
        prop_assert!(d.eval_int(1).unwrap().abs().is_one());
        prop_assert!(d.is_palindromic());
        prop_assert!(d.is_normalized());
        let s = seifert_circles(&pd).unwrap();
        prop_assert!(d.max_degree().unwrap() <= 2 * s.genus_upper as i64);
    }

    #[test]
    fn deletion_independence(b in knot_braid(4, 5)) {
        let pd = b.to_pd().unwrap();
        prop_assume!(pd.crossing_count() <= 5);
        let reference = alexander_polynomial(&pd);
        let n = pd.crossing_count();
        for row in 0..n {
            for col in 0..n {
                prop_assert_eq!(alexander_polynomial_with_deletion(&pd, row, col).unwrap(), reference.clone());
            }
        }
    }

    #[test]
    fn braid_moves_preserve_invariants(
        b in knot_braid(4, 7),
        at in 0usize..8,
        gen in 1i32..4,
        rot in 0usize..8,
        stab_sign in prop_oneof![Just(1), Just(-1)],
    ) {
        let n = b.strands();
        let letters = b.letters().to_vec();
        let base = b.to_pd().unwrap();
        let (delta, jones) = (alexander_polynomial(&base), jones_polynomial(&base).unwrap());

        let g = (gen - 1) % (n as i32 - 1) + 1;
        let mut r2 = letters.clone();
        let k = at % (r2.len() + 1);
        r2.splice(k..k, [g, -g]);
        let mut conj = letters.clone();
        conj.rotate_left(rot % letters.len().max(1));
        let mut stab = letters.clone();
        stab.push(stab_sign * n as i32);

        for (strands, word) in [(n, r2), (n, conj), (n + 1, stab)] {
            let moved = braid(strands, word);
            prop_assert_eq!(alexander_polynomial(&moved), delta.clone());
            prop_assert_eq!(jones_polynomial(&moved).unwrap(), jones.clone());
        }
    }

    #[test]
    fn bracket_matches_oracle(b in knot_braid(4, 8)) {
        let pd = b.to_pd().unwrap();
        prop_assert_eq!(as_map(&kauffman_bracket(&pd)), bracket_oracle(&pd));
    }

    #[test]
    fn jones_mirror_and_evaluations(b in knot_braid(4, 8)) {
        let pd = b.to_pd().unwrap();
        let v = jones_polynomial(&pd).unwrap();
        prop_assert_eq!(jones_polynomial(&pd.mirror()).unwrap(), v.mirror());
        let negated: Vec<i32> = b.letters().iter().map(|l| -l).collect();
        prop_assert_eq!(jones_polynomial(&braid(b.strands(), negated)).unwrap(), v.mirror());
        prop_assert!(v.eval_int(1).unwrap().is_one());
        let det = determinant_invariant(&alexander_polynomial(&pd));
        prop_assert_eq!(v.eval_int(-1).unwrap().abs(), BigRational::from_integer(det));
    }
}

#[test]
fn table_polynomials() {
    assert_eq!(alexander_polynomial(&pd(TREFOIL)), p("1 - t + t^2"));
    assert_eq!(alexander_polynomial(&pd(FIGURE_EIGHT)), p("1 - 3*t + t^2"));
    assert_eq!(alexander_polynomial(&pd(FIVE_TWO)), p("2 - 3*t + 2*t^2"));
    assert!(alexander_polynomial(&PdCode::unknot()).is_one());
    assert!(alexander_polynomial(&braid(2, vec![1])).is_one());
    assert_eq!(alexander_polynomial(&braid(2, vec![1, 1, 1])), p("1 - t + t^2"));
    assert_eq!(alexander_polynomial(&braid(2, vec![1, 1, 1, 1, 1])), p("1 - t + t^2 - t^3 + t^4"));
    assert_eq!(alexander_polynomial(&braid(3, vec![1, 1, 1, -2, 1, -2])), p("1 - 3*t + 3*t^2 - 3*t^3 + t^4"));
}

#[test]
fn reidemeister_two_variant_of_trefoil() {
    let a = pd(TREFOIL);
    let b = pd(TREFOIL_RII);
    assert_eq!(b.crossing_count(), a.crossing_count() + 2);
    assert_eq!(alexander_polynomial(&a), alexander_polynomial(&b));
    assert_eq!(jones_polynomial(&a).unwrap(), jones_polynomial(&b).unwrap());
}

#[test]
fn determinants() {
    assert_eq!(determinant_invariant(&p("1 - t + t^2")), BigInt::from(3));
    assert_eq!(determinant_invariant(&p("1 - 3*t + t^2")), BigInt::from(5));
    assert_eq!(determinant_invariant(&p("2 - 3*t + 2*t^2")), BigInt::from(7));
    assert_eq!(determinant_invariant(&LaurentPoly::one()), BigInt::from(1));
}

#[test]
fn composite_formulas() {
    let trefoil = p("1 - t + t^2");
    let granny = connected_sum_delta(&trefoil, &trefoil);
    assert_eq!(granny, p("1 - 2*t + 3*t^2 - 2*t^3 + t^4"));
    assert_eq!(alexander_polynomial(&pd(GRANNY)), granny);
    let fig8 = p("1 - 3*t + t^2");
    assert_eq!(
        satellite_delta(&trefoil, &fig8, 2),
        &(&p("1 - t - t^2") * &p("1 - t + t^2")) * &p("1 + t - t^2")
    );
    assert_eq!(satellite_delta(&trefoil, &fig8, 0), trefoil);
    assert_eq!(satellite_delta(&LaurentPoly::one(), &fig8, 1), fig8);
}

#[test]
fn jones_examples() {
    assert!(jones_polynomial(&PdCode::unknot()).unwrap().is_one());
    let v = jones_polynomial(&pd(TREFOIL)).unwrap();
    assert_eq!(v, p("-t^-4 + t^-3 + t^-1"));
    assert_eq!(jones_polynomial(&pd(TREFOIL).mirror()).unwrap(), p("t + t^3 - t^4"));
    assert_eq!(jones_polynomial(&pd(FIGURE_EIGHT)).unwrap(), p("t^-2 - t^-1 + 1 - t + t^2"));
    assert_eq!(as_map(&kauffman_bracket(&pd(TREFOIL))), bracket_oracle(&pd(TREFOIL)));
    assert_eq!(as_map(&kauffman_bracket(&pd(FIGURE_EIGHT))), bracket_oracle(&pd(FIGURE_EIGHT)));
}
