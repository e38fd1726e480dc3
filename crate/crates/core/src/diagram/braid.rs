use std::fmt;
use std::str::FromStr;

use super::pd::{Crossing, PdCode};
use super::DiagramError;

/// A braid word on `strands` strands; letter `i` is `sigma_|i|` with the sign
/// of `i` as crossing sign.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BraidWord {
    strands: u32,
    letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(strands: u32, letters: Vec<i32>) -> Result<Self, DiagramError> {
        if strands == 0 {
            return Err(DiagramError::BraidSyntax("a braid needs at least one strand".into()));
        }
        if let Some(&letter) = letters
            .iter()
            .find(|&&l| l == 0 || l.unsigned_abs() >= strands)
        {
            return Err(DiagramError::BraidLetter { letter, strands });
        }
        Ok(Self { strands, letters })
    }

    pub fn strands(&self) -> u32 {
        self.strands
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    /// Number of components of the trace closure (cycles of the underlying
    /// permutation).
    pub fn closure_components(&self) -> usize {
        let m = self.strands as usize;
        // perm[p] = position at the bottom of the strand entering at top p
        let mut at: Vec<usize> = (0..m).collect();
        for &l in &self.letters {
            let i = l.unsigned_abs() as usize - 1;
            at.swap(i, i + 1);
        }
        let mut perm = vec![0; m];
        for (bottom, &top) in at.iter().enumerate() {
            perm[top] = bottom;
        }
        let mut seen = vec![false; m];
        let mut cycles = 0;
        for start in 0..m {
            if seen[start] {
                continue;
            }
            cycles += 1;
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                p = perm[p];
            }
        }
        cycles
    }

    /// PD code of the trace closure, with arcs relabeled consecutively along
    /// the orientation starting at the incoming under-strand of the first
    /// crossing.
    pub fn to_pd(&self) -> Result<PdCode, DiagramError> {
        let components = self.closure_components();
        if components != 1 {
            return Err(DiagramError::MultiComponent { components });
        }
        if self.letters.is_empty() {
            return Ok(PdCode::unknot());
        }
        let m = self.strands as usize;
        // Temporary edge ids: 0..m are the top ends, then two fresh ids per crossing.
        let mut current: Vec<usize> = (0..m).collect();
        let mut next_id = m;
        let mut raw: Vec<[usize; 4]> = Vec::with_capacity(self.letters.len());
        // For each crossing: (under_in, under_out, over_in, over_out)
        let mut steps: Vec<[usize; 4]> = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            let i = l.unsigned_abs() as usize - 1;
            let (el, er) = (current[i], current[i + 1]);
            let (fl, fr) = (next_id, next_id + 1);
            next_id += 2;
            // Strands run downward. In a positive letter the strand from the
            // right passes over; counterclockwise from the incoming under end
            // the ends are (top-left, bottom-left, bottom-right, top-right).
            if l > 0 {
                raw.push([el, fl, fr, er]);
                steps.push([el, fr, er, fl]);
            } else {
                raw.push([er, el, fl, fr]);
                steps.push([er, fl, el, fr]);
            }
            current[i] = fl;
            current[i + 1] = fr;
        }
        // Close: bottom end at position p is glued to top end p.
        let mut alias: Vec<usize> = (0..next_id).collect();
        for (p, &bottom) in current.iter().enumerate() {
            alias[p] = bottom;
        }
        let rep = |e: usize| alias[e];

        let mut succ = vec![usize::MAX; next_id];
        for s in &steps {
            succ[rep(s[0])] = rep(s[1]);
            succ[rep(s[2])] = rep(s[3]);
        }
        let mut label = vec![0u32; next_id];
        let start = rep(raw[0][0]);
        let mut e = start;
        let mut count = 0u32;
        loop {
            count += 1;
            label[e] = count;
            e = succ[e];
            if e == start {
                break;
            }
        }
        debug_assert_eq!(count as usize, 2 * self.letters.len());
        let crossings = raw
            .iter()
            .map(|x| Crossing(x.map(|e| label[rep(e)])))
            .collect();
        PdCode::new(crossings)
    }
}

impl FromStr for BraidWord {
    type Err = DiagramError;

    /// `B<n>: i1 i2 ...` with signed generator indices.
    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let bad = |reason: &str| DiagramError::BraidSyntax(format!("{reason} in {text:?}"));
        let text = text.trim();
        let rest = text.strip_prefix('B').ok_or_else(|| bad("expected 'B<n>:'"))?;
        let (n, letters) = rest.split_once(':').ok_or_else(|| bad("missing ':'"))?;
        let strands = n.trim().parse().map_err(|_| bad("bad strand count"))?;
        let letters = letters
            .split_whitespace()
            .map(|tok| tok.parse::<i32>().map_err(|_| bad("bad letter")))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(strands, letters)
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "B{}:", self.strands)?;
        for l in &self.letters {
            write!(f, " {l}")?;
        }
        Ok(())
    }
}
