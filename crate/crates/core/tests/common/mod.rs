#![allow(dead_code)]

use knotdom::diagram::BraidWord;
use proptest::prelude::*;

pub const CORPUS: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/data/corpus.json");

/// Cycles of the strand permutation of a braid word, computed independently
/// of the library.
pub fn closure_cycles(strands: usize, letters: &[i32]) -> Vec<Vec<usize>> {
    let mut perm: Vec<usize> = (0..strands).collect();
    for &l in letters {
        let i = l.unsigned_abs() as usize - 1;
        perm.swap(i, i + 1);
    }
    let mut seen = vec![false; strands];
    let mut cycles = vec![];
    for s in 0..strands {
        if seen[s] {
            continue;
        }
        let mut cycle = vec![];
        let mut x = s;
        while !seen[x] {
            seen[x] = true;
            cycle.push(x);
            x = perm[x];
        }
        cycles.push(cycle);
    }
    cycles
}

/// Appends generators joining adjacent strands in different cycles until the
/// closure is a knot.
pub fn make_knot(strands: usize, mut letters: Vec<i32>, sign: i32) -> Vec<i32> {
    loop {
        let cycles = closure_cycles(strands, &letters);
        if cycles.len() == 1 {
            return letters;
        }
        let cycle_of = |x: usize| cycles.iter().position(|c| c.contains(&x)).unwrap();
        let i = (0..strands - 1).find(|&i| cycle_of(i) != cycle_of(i + 1)).unwrap();
        letters.push(sign * (i as i32 + 1));
    }
}

/// Braid words whose closure is a knot, with at most `max_len` letters
/// before the closing generators.
pub fn knot_braid(max_strands: u32, max_len: usize) -> impl Strategy<Value = BraidWord> {
    (2..=max_strands)
        .prop_flat_map(move |n| {
            let letter = (1..n as i32).prop_flat_map(|g| prop_oneof![Just(g), Just(-g)]);
            (Just(n), prop::collection::vec(letter, 0..=max_len), prop_oneof![Just(1), Just(-1)])
        })
        .prop_map(|(n, letters, sign)| {
            BraidWord::new(n, make_knot(n as usize, letters, sign)).expect("valid braid")
        })
}
