//! Alexander polynomials by Fox calculus, composite formulas, and the Jones
//! polynomial by the Kauffman bracket.

mod bareiss;
mod jones;

pub use bareiss::determinant;
pub use jones::{jones_polynomial, kauffman_bracket, MAX_BRACKET_CROSSINGS};

use num_bigint::BigInt;
use num_traits::Signed;
use thiserror::Error;

use crate::diagram::{PdCode, WirtingerPresentation};
use crate::laurent::LaurentPoly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlexanderError {
    #[error("{crossings} crossings exceed the state-sum budget of {max}")]
    CrossingBudget { crossings: usize, max: usize },
    #[error("deleted row {row} / column {col} out of range for a {size}x{size} Fox matrix")]
    DeletionOutOfRange { row: usize, col: usize, size: usize },
}

/// Fox derivative `d(word)/d(x_gen)` pushed through the abelianization that
/// sends every generator to `t`.
pub fn fox_derivative(word: &[(usize, i8)], gen: usize) -> LaurentPoly {
    let mut acc = LaurentPoly::zero();
    let mut prefix = 0i64;
    for &(g, e) in word {
        debug_assert!(e == 1 || e == -1);
        if g == gen {
            if e == 1 {
                acc += &LaurentPoly::monomial(1, prefix);
            } else {
                acc += &LaurentPoly::monomial(-1, prefix - 1);
            }
        }
        prefix += e as i64;
    }
    acc
}

/// The Fox matrix with one relation row and one generator column removed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlexanderMatrix {
    entries: Vec<Vec<LaurentPoly>>,
}

impl AlexanderMatrix {
    /// Drops the last relation and the highest-numbered generator.
    pub fn new(presentation: &WirtingerPresentation) -> Self {
        let n = presentation.relations.len();
        if n == 0 {
            return Self { entries: Vec::new() };
        }
        Self::with_deletion(presentation, n - 1, presentation.generator_count - 1)
            .expect("default deletion is in range")
    }

    pub fn with_deletion(
        presentation: &WirtingerPresentation,
        row: usize,
        col: usize,
    ) -> Result<Self, AlexanderError> {
        let size = presentation.relations.len();
        if row >= size || col >= presentation.generator_count {
            return Err(AlexanderError::DeletionOutOfRange { row, col, size });
        }
        let entries = presentation
            .relations
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != row)
            .map(|(_, rel)| {
                let word = rel.relator();
                (0..presentation.generator_count)
                    .filter(|&g| g != col)
                    .map(|g| fox_derivative(&word, g))
                    .collect()
            })
            .collect();
        Ok(Self { entries })
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Vec<LaurentPoly>] {
        &self.entries
    }

    pub fn determinant(&self) -> LaurentPoly {
        determinant(&self.entries)
    }
}

/// Normalized Alexander polynomial of the knot presented by `pd`.
pub fn alexander_polynomial(pd: &PdCode) -> LaurentPoly {
    let presentation = WirtingerPresentation::from_pd(pd);
    AlexanderMatrix::new(&presentation).determinant().normalize()
}

/// Same as [`alexander_polynomial`] with an explicit choice of deleted relation
/// and generator.
pub fn alexander_polynomial_with_deletion(
    pd: &PdCode,
    row: usize,
    col: usize,
) -> Result<LaurentPoly, AlexanderError> {
    let presentation = WirtingerPresentation::from_pd(pd);
    Ok(AlexanderMatrix::with_deletion(&presentation, row, col)?
        .determinant()
        .normalize())
}

/// `|delta(-1)|`.
pub fn determinant_invariant(delta: &LaurentPoly) -> BigInt {
    // t = -1 is a unit, so the value is an integer even with negative exponents
    delta.eval_int(-1).expect("-1 is nonzero").to_integer().abs()
}

/// Alexander polynomial of a connected sum.
pub fn connected_sum_delta(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    (a * b).normalize()
}

/// Alexander polynomial of a satellite: `pattern(t) * companion(t^winding)`.
pub fn satellite_delta(pattern: &LaurentPoly, companion: &LaurentPoly, winding: u32) -> LaurentPoly {
    if winding == 0 {
        return pattern.normalize();
    }
    (pattern * &companion.substitute_power(winding as i64)).normalize()
}
