use super::pd::PdCode;

/// `x_output = x_over^sign * x_input * x_over^-sign`
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Relation {
    pub output: usize,
    pub over: usize,
    pub input: usize,
    pub sign: i8,
}

impl Relation {
    /// The relator `x_over^s x_input x_over^-s x_output^-1` as a word of
    /// `(generator, exponent)` letters.
    pub fn relator(&self) -> [(usize, i8); 4] {
        let s = self.sign;
        [(self.over, s), (self.input, 1), (self.over, -s), (self.output, -1)]
    }
}

/// Wirtinger presentation of the knot group: one meridian generator per
/// over-arc, one conjugation relation per crossing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WirtingerPresentation {
    pub generator_count: usize,
    pub relations: Vec<Relation>,
}

impl WirtingerPresentation {
    pub fn from_pd(pd: &PdCode) -> Self {
        let (generator_count, arc_of) = over_arcs(pd);
        let relations = pd
            .crossings()
            .iter()
            .enumerate()
            .map(|(i, x)| Relation {
                output: arc_of[x.under_out() as usize],
                over: arc_of[pd.over_strand(i).incoming as usize],
                input: arc_of[x.under_in() as usize],
                sign: pd.sign(i),
            })
            .collect();
        Self { generator_count, relations }
    }

    /// Integer rank of the abelianized relation matrix (rows `e_out - e_in`).
    pub fn abelianized_rank(&self) -> usize {
        let rows: Vec<Vec<i64>> = self
            .relations
            .iter()
            .map(|r| {
                let mut row = vec![0i64; self.generator_count];
                row[r.output] += 1;
                row[r.input] -= 1;
                row
            })
            .collect();
        integer_rank(rows)
    }
}

/// Groups the `2n` edge labels into over-arcs: edges `b` and `d` of a crossing
/// belong to the same arc, an under-crossing starts a new one. Arcs are
/// numbered by first appearance along the orientation. Returns the arc count
/// and a label -> arc table (index 0 unused).
pub fn over_arcs(pd: &PdCode) -> (usize, Vec<usize>) {
    let edges = pd.arc_count();
    if edges == 0 {
        return (1, vec![0]);
    }
    let mut parent: Vec<usize> = (0..=edges).collect();
    fn find(parent: &mut [usize], mut e: usize) -> usize {
        while parent[e] != e {
            parent[e] = parent[parent[e]];
            e = parent[e];
        }
        e
    }
    for x in pd.crossings() {
        let (b, d) = (x.0[1] as usize, x.0[3] as usize);
        let (rb, rd) = (find(&mut parent, b), find(&mut parent, d));
        if rb != rd {
            parent[rb.max(rd)] = rb.min(rd);
        }
    }
    let mut numbering = vec![usize::MAX; edges + 1];
    let mut count = 0;
    let mut arc_of = vec![0usize];
    for e in 1..=edges {
        let r = find(&mut parent, e);
        if numbering[r] == usize::MAX {
            numbering[r] = count;
            count += 1;
        }
        arc_of.push(numbering[r]);
    }
    (count, arc_of)
}

/// Rank over Q of a small integer matrix, by fraction-free row reduction with
/// gcd normalization of each row.
fn integer_rank(mut rows: Vec<Vec<i64>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let pivot_row = rows[rank].clone();
        for row in rows.iter_mut().skip(rank + 1) {
            let f = row[col];
            if f == 0 {
                continue;
            }
            let p = pivot_row[col];
            for (x, &y) in row.iter_mut().zip(&pivot_row) {
                *x = *x * p - f * y;
            }
            let g = row.iter().fold(0i64, |g, &v| num_integer::gcd(g, v));
            if g > 1 {
                row.iter_mut().for_each(|v| *v /= g);
            }
        }
        rank += 1;
    }
    rank
}
