use std::fmt;
use std::str::FromStr;

use super::DiagramError;

/// One crossing `X(a,b,c,d)`: arc ends listed counterclockwise starting from
/// the incoming under-strand `a`; the under-strand leaves along `c`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Crossing(pub [u32; 4]);

impl Crossing {
    pub fn under_in(&self) -> u32 {
        self.0[0]
    }

    pub fn under_out(&self) -> u32 {
        self.0[2]
    }
}

/// Which way the over-strand runs through a crossing, plus its sign.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct OverStrand {
    pub incoming: u32,
    pub outgoing: u32,
    /// `+1` when the over-strand runs `d -> b`, `-1` when it runs `b -> d`.
    pub sign: i8,
}

/// A validated planar-diagram code for a knot.
///
/// Arc labels run `1..=2n` consecutively along the orientation, each label
/// appears exactly twice, and `c = a + 1 (mod 2n)` at every crossing. The
/// empty code is the 0-crossing unknot.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct PdCode {
    crossings: Vec<Crossing>,
    over: Vec<OverStrand>,
}

impl PdCode {
    pub fn new(crossings: Vec<Crossing>) -> Result<Self, DiagramError> {
        let n = crossings.len() as u32;
        if n == 0 {
            return Ok(Self::default());
        }
        let arcs = 2 * n;
        let succ = |e: u32| if e == arcs { 1 } else { e + 1 };

        let mut counts = vec![0u32; arcs as usize + 1];
        for x in &crossings {
            for &label in &x.0 {
                if label == 0 || label > arcs {
                    return Err(DiagramError::LabelOutOfRange { label, max: arcs });
                }
                counts[label as usize] += 1;
            }
        }
        if let Some((arc, &count)) = counts.iter().enumerate().skip(1).find(|(_, &c)| c != 2) {
            return Err(DiagramError::ArcMultiplicity { arc: arc as u32, count });
        }

        let mut over = Vec::with_capacity(crossings.len());
        // successor_seen[e] marks that the step e -> e+1 happens at some crossing
        let mut successor_seen = vec![false; arcs as usize + 1];
        for (index, x) in crossings.iter().enumerate() {
            let [a, b, c, d] = x.0;
            if c != succ(a) {
                return Err(DiagramError::UnderStrand { crossing: index, a, c });
            }
            let strand = if n == 1 {
                // With two arcs b = d + 1 and d = b + 1 coincide; the strand
                // that leaves along c is the one that comes back over.
                if d == c && b != d {
                    OverStrand { incoming: d, outgoing: b, sign: 1 }
                } else if b == c && b != d {
                    OverStrand { incoming: b, outgoing: d, sign: -1 }
                } else {
                    return Err(DiagramError::NotConsecutive { crossing: index, b, d });
                }
            } else if b == succ(d) {
                OverStrand { incoming: d, outgoing: b, sign: 1 }
            } else if d == succ(b) {
                OverStrand { incoming: b, outgoing: d, sign: -1 }
            } else {
                return Err(DiagramError::NotConsecutive { crossing: index, b, d });
            };
            for from in [a, strand.incoming] {
                if std::mem::replace(&mut successor_seen[from as usize], true) {
                    return Err(DiagramError::NotConsecutive { crossing: index, b, d });
                }
            }
            over.push(strand);
        }
        Ok(Self { crossings, over })
    }

    /// The 0-crossing diagram.
    pub fn unknot() -> Self {
        Self::default()
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn arc_count(&self) -> usize {
        2 * self.crossings.len()
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn over_strand(&self, crossing: usize) -> OverStrand {
        self.over[crossing]
    }

    pub fn sign(&self, crossing: usize) -> i8 {
        self.over[crossing].sign
    }

    pub fn writhe(&self) -> i64 {
        self.over.iter().map(|o| o.sign as i64).sum()
    }

    /// Changes every crossing, which presents the mirror image. Labels,
    /// orientation and planar positions are kept; each tuple is rotated so it
    /// starts at the old over-strand.
    pub fn mirror(&self) -> Self {
        let crossings = self
            .crossings
            .iter()
            .zip(&self.over)
            .map(|(x, o)| {
                let [a, b, c, d] = x.0;
                if o.incoming == d {
                    Crossing([d, a, b, c])
                } else {
                    Crossing([b, c, d, a])
                }
            })
            .collect();
        Self::new(crossings).expect("mirror of a valid diagram is valid")
    }
}

impl FromStr for PdCode {
    type Err = DiagramError;

    /// Whitespace-separated `X(a,b,c,d)` tokens, 1-based labels.
    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let syntax = |pos: usize, reason: &str| DiagramError::Syntax {
            pos,
            reason: reason.to_string(),
        };
        let bytes = text.as_bytes();
        let mut pos = 0;
        let skip_ws = |pos: &mut usize| {
            while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
                *pos += 1;
            }
        };
        let mut crossings = Vec::new();
        loop {
            skip_ws(&mut pos);
            if pos == bytes.len() {
                break;
            }
            if bytes[pos] != b'X' {
                return Err(syntax(pos, "expected 'X('"));
            }
            pos += 1;
            skip_ws(&mut pos);
            if pos == bytes.len() || bytes[pos] != b'(' {
                return Err(syntax(pos, "expected '('"));
            }
            pos += 1;
            let mut labels = [0u32; 4];
            for (i, slot) in labels.iter_mut().enumerate() {
                skip_ws(&mut pos);
                let start = pos;
                while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                    pos += 1;
                }
                *slot = text[start..pos]
                    .parse()
                    .map_err(|_| syntax(start, "expected an arc label"))?;
                skip_ws(&mut pos);
                let want = if i == 3 { b')' } else { b',' };
                if pos == bytes.len() || bytes[pos] != want {
                    return Err(syntax(pos, if i == 3 { "expected ')'" } else { "expected ','" }));
                }
                pos += 1;
            }
            crossings.push(Crossing(labels));
        }
        Self::new(crossings)
    }
}

impl fmt::Display for PdCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, x) in self.crossings.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            let [a, b, c, d] = x.0;
            write!(f, "X({a},{b},{c},{d})")?;
        }
        Ok(())
    }
}
