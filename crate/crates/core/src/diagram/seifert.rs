use super::pd::PdCode;
use super::DiagramError;

/// Result of Seifert's algorithm on a diagram.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SeifertData {
    pub circles: usize,
    /// `(n - s + 1) / 2`, the genus of the Seifert surface built from the circles.
    pub genus_upper: u32,
}

/// Smooths every crossing along the orientation and counts the circles.
///
/// At a crossing the incoming under-end joins the outgoing over-end and the
/// incoming over-end joins the outgoing under-end, so each circle is a cycle
/// of the map "edge -> edge taken after smoothing where it ends".
pub fn seifert_circles(pd: &PdCode) -> Result<SeifertData, DiagramError> {
    let n = pd.crossing_count();
    if n == 0 {
        return Ok(SeifertData { circles: 1, genus_upper: 0 });
    }
    if !is_connected(pd) {
        return Err(DiagramError::Disconnected);
    }
    let edges = pd.arc_count();
    let mut next = vec![0usize; edges + 1];
    for (i, x) in pd.crossings().iter().enumerate() {
        let over = pd.over_strand(i);
        next[x.under_in() as usize] = over.outgoing as usize;
        next[over.incoming as usize] = x.under_out() as usize;
    }
    let mut seen = vec![false; edges + 1];
    let mut circles = 0;
    for start in 1..=edges {
        if seen[start] {
            continue;
        }
        circles += 1;
        let mut e = start;
        while !seen[e] {
            seen[e] = true;
            e = next[e];
        }
    }
    let twice_genus = n + 1 - circles;
    debug_assert!(twice_genus.is_multiple_of(2), "n - s + 1 must be even");
    Ok(SeifertData {
        circles,
        genus_upper: (twice_genus / 2) as u32,
    })
}

/// Crossings linked through shared edge labels form a single piece.
fn is_connected(pd: &PdCode) -> bool {
    let n = pd.crossing_count();
    let mut owner: Vec<Vec<usize>> = vec![Vec::new(); pd.arc_count() + 1];
    for (i, x) in pd.crossings().iter().enumerate() {
        for &l in &x.0 {
            owner[l as usize].push(i);
        }
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(i) = stack.pop() {
        for &l in &pd.crossings()[i].0 {
            for &j in &owner[l as usize] {
                if !seen[j] {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
    }
    seen.into_iter().all(|s| s)
}
