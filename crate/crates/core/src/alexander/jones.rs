use rayon::prelude::*;

use crate::diagram::PdCode;
use crate::laurent::LaurentPoly;

use super::AlexanderError;

/// Largest diagram the `2^n` state sum accepts.
pub const MAX_BRACKET_CROSSINGS: usize = 24;

/// States per parallel work unit.
const CHUNK: u64 = 1 << 12;

/// Jones polynomial in `t` from the Kauffman bracket state sum.
///
/// Every crossing `X(a,b,c,d)` is smoothed either as the A-smoothing, joining
/// `a-b` and `c-d`, or the B-smoothing, joining `a-d` and `b-c`. The bracket
/// `sum A^(#A - #B) (-A^2 - A^-2)^(loops - 1)` is multiplied by `(-A^3)^-w` and
/// `t = A^-4` is substituted.
pub fn jones_polynomial(pd: &PdCode) -> Result<LaurentPoly, AlexanderError> {
    let n = pd.crossing_count();
    if n > MAX_BRACKET_CROSSINGS {
        return Err(AlexanderError::CrossingBudget { crossings: n, max: MAX_BRACKET_CROSSINGS });
    }
    let bracket = kauffman_bracket(pd);
    let w = pd.writhe();
    // (-A^3)^-w = (-1)^w A^(-3w)
    let correction = LaurentPoly::monomial(if w % 2 == 0 { 1 } else { -1 }, -3 * w);
    let v_a = &bracket * &correction;
    let mut terms = Vec::with_capacity(v_a.len());
    for (e, c) in v_a.terms() {
        assert!(e % 4 == 0, "writhe-corrected bracket has exponent {e} not divisible by 4");
        terms.push((-e / 4, c.clone()));
    }
    Ok(LaurentPoly::from_terms(terms))
}

/// The Kauffman bracket `<D>` as a Laurent polynomial in `A`, normalized so
/// the 0-crossing circle has bracket 1.
pub fn kauffman_bracket(pd: &PdCode) -> LaurentPoly {
    let n = pd.crossing_count();
    if n == 0 {
        return LaurentPoly::one();
    }
    // histogram[b][loops] = number of states with b B-smoothings and that many loops
    let states = 1u64 << n;
    let chunks = states.div_ceil(CHUNK);
    let histogram = (0..chunks)
        .into_par_iter()
        .map(|chunk| {
            let mut h = vec![vec![0u64; n + 2]; n + 1];
            let mut parent = vec![0usize; 2 * n + 1];
            let end = ((chunk + 1) * CHUNK).min(states);
            for state in chunk * CHUNK..end {
                let loops = count_loops(pd, state, &mut parent);
                h[state.count_ones() as usize][loops] += 1;
            }
            h
        })
        .reduce(
            || vec![vec![0u64; n + 2]; n + 1],
            |mut a, b| {
                for (ra, rb) in a.iter_mut().zip(b) {
                    for (x, y) in ra.iter_mut().zip(rb) {
                        *x += y;
                    }
                }
                a
            },
        );

    let loop_value = LaurentPoly::from_terms([(2, (-1).into()), (-2, (-1).into())]);
    let mut powers = vec![LaurentPoly::one()];
    for _ in 1..=n + 1 {
        let next = powers.last().unwrap() * &loop_value;
        powers.push(next);
    }
    let mut bracket = LaurentPoly::zero();
    for (b, row) in histogram.iter().enumerate() {
        let a_exp = n as i64 - 2 * b as i64;
        for (loops, &count) in row.iter().enumerate() {
            if count == 0 {
                continue;
            }
            let term = powers[loops - 1].shift(a_exp).scale(&count.into());
            bracket += &term;
        }
    }
    bracket
}

/// Loops in the resolution where bit `i` of `state` picks the B-smoothing at
/// crossing `i`.
fn count_loops(pd: &PdCode, state: u64, parent: &mut [usize]) -> usize {
    let edges = pd.arc_count();
    for (i, p) in parent.iter_mut().enumerate().take(edges + 1) {
        *p = i;
    }
    let mut components = edges;
    for (i, x) in pd.crossings().iter().enumerate() {
        let [a, b, c, d] = x.0.map(|l| l as usize);
        let pairs = if state >> i & 1 == 0 { [(a, b), (c, d)] } else { [(a, d), (b, c)] };
        for (u, v) in pairs {
            let (ru, rv) = (find(parent, u), find(parent, v));
            if ru != rv {
                parent[ru] = rv;
                components -= 1;
            }
        }
    }
    components
}

fn find(parent: &mut [usize], mut e: usize) -> usize {
    while parent[e] != e {
        parent[e] = parent[parent[e]];
        e = parent[e];
    }
    e
}
