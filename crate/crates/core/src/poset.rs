//! The certified domination graph over a corpus, its consistency audit,
//! longest strict chains and chain-length bounds.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::domination::{evaluate_pair_full, same_knot, Certificate, PairEvaluation, RuleId, Verdict};
use crate::knotbase::{Corpus, KnotRecord};
use crate::laurent::is_prime_power_big;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PosetError {
    #[error("no node named {0:?}")]
    UnknownNode(String),
}

type Pair = (String, String);

/// Directed graph of certified dominations, transitively closed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DominationGraph {
    nodes: Vec<String>,
    edges: BTreeMap<Pair, Certificate>,
    verdicts: BTreeMap<Pair, Verdict>,
    audit_log: Vec<String>,
}

/// Evaluates all ordered pairs in parallel, adds certified edges (iterating
/// so connected-sum pairings can use earlier edges), closes under
/// transitivity and audits the result.
pub fn build_graph(corpus: &Corpus) -> DominationGraph {
    let records: Vec<&KnotRecord> = corpus.records().collect();
    let nodes: Vec<String> = records.iter().map(|r| r.name.clone()).collect();
    let pairs: Vec<(usize, usize)> = (0..records.len())
        .flat_map(|i| (0..records.len()).filter(move |&j| j != i).map(move |j| (i, j)))
        .collect();

    let evaluate = |known: &BTreeSet<Pair>, &(i, j): &(usize, usize)| {
        let lookup = |a: &str, b: &str| known.contains(&(a.to_string(), b.to_string()));
        evaluate_pair_full(records[i], records[j], &lookup).expect("corpus records are enriched")
    };
    let mut known = BTreeSet::new();
    let mut results: Vec<PairEvaluation> = pairs.par_iter().map(|p| evaluate(&known, p)).collect();
    loop {
        let direct: BTreeSet<Pair> = pairs
            .iter()
            .zip(&results)
            .filter(|(_, e)| matches!(e.verdict, Verdict::Certified(_)))
            .map(|(&(i, j), _)| (nodes[i].clone(), nodes[j].clone()))
            .collect();
        let closed = transitive_closure(&direct);
        if closed == known {
            break;
        }
        known = closed;
        let retry: Vec<usize> = (0..pairs.len())
            .filter(|&p| {
                matches!(results[p].verdict, Verdict::Unknown(_))
                    && records[pairs[p].0].connected_sum_of.is_some()
            })
            .collect();
        let updated: Vec<PairEvaluation> = retry.par_iter().map(|&p| evaluate(&known, &pairs[p])).collect();
        for (p, e) in retry.into_iter().zip(updated) {
            results[p] = e;
        }
    }

    let mut audit_log = Vec::new();
    let mut edges = BTreeMap::new();
    let mut verdicts = BTreeMap::new();
    let mut evaluations = BTreeMap::new();
    for (&(i, j), e) in pairs.iter().zip(results) {
        let key = (nodes[i].clone(), nodes[j].clone());
        if let Some(c) = &e.certificate {
            if !same_knot(records[i], records[j]) && (!e.obstructions.is_empty() || !e.rigidity.is_empty()) {
                let fired: Vec<&str> = e.obstructions.iter().chain(&e.rigidity).map(|r| r.rule.code()).collect();
                audit_log.push(format!(
                    "certificate {} for {} >= {} coexists with {}",
                    c.rule,
                    key.0,
                    key.1,
                    fired.join(", ")
                ));
            }
        }
        if let Verdict::Certified(c) = &e.verdict {
            edges.insert(key.clone(), c.clone());
        }
        verdicts.insert(key.clone(), e.verdict.clone());
        evaluations.insert(key, e);
    }

    let direct: BTreeSet<Pair> = edges.keys().cloned().collect();
    let adjacency = adjacency(&direct);
    for (key, verdict) in verdicts.iter_mut() {
        if direct.contains(key) {
            continue;
        }
        let Some(path) = shortest_path(&adjacency, &key.0, &key.1) else {
            continue;
        };
        match verdict {
            Verdict::Equal => {}
            Verdict::Obstructed(reports) => {
                let fired: Vec<&str> = reports.iter().map(|r| r.rule.code()).collect();
                audit_log.push(format!(
                    "transitive chain {} conflicts with {}",
                    path.join(" > "),
                    fired.join(", ")
                ));
            }
            _ => {
                let c = Certificate::new(
                    RuleId::C5Transitive,
                    path.clone(),
                    format!("chain {}", path.join(" > ")),
                );
                *verdict = Verdict::Certified(c.clone());
                edges.insert(key.clone(), c);
            }
        }
    }

    for (a, b) in edges.keys() {
        if a < b && edges.contains_key(&(b.clone(), a.clone())) {
            audit_log.push(format!("cycle: {a} >= {b} and {b} >= {a} for distinct knots"));
        }
    }
    for unknot in records.iter().filter(|r| r.flags.unknot == Some(true)) {
        for r in &records {
            let key = (r.name.clone(), unknot.name.clone());
            if !same_knot(r, unknot) && !edges.contains_key(&key) {
                audit_log.push(format!("missing edge {} >= {}", key.0, key.1));
            }
        }
    }

    DominationGraph { nodes, edges, verdicts, audit_log }
}

fn adjacency(edges: &BTreeSet<Pair>) -> BTreeMap<&str, Vec<&str>> {
    let mut adj: BTreeMap<&str, Vec<&str>> = BTreeMap::new();
    for (a, b) in edges {
        adj.entry(a).or_default().push(b);
    }
    adj
}

/// Shortest path by breadth-first search, visiting neighbours in name order.
fn shortest_path(adj: &BTreeMap<&str, Vec<&str>>, from: &str, to: &str) -> Option<Vec<String>> {
    let mut prev: HashMap<&str, &str> = HashMap::new();
    let mut queue = VecDeque::from([from]);
    while let Some(u) = queue.pop_front() {
        for &v in adj.get(u).map(Vec::as_slice).unwrap_or_default() {
            if v == from || prev.contains_key(v) {
                continue;
            }
            prev.insert(v, u);
            if v == to {
                let mut path = vec![to.to_string()];
                let mut cur = to;
                while let Some(&p) = prev.get(cur) {
                    path.push(p.to_string());
                    cur = p;
                    if cur == from {
                        break;
                    }
                }
                path.reverse();
                return Some(path);
            }
            queue.push_back(v);
        }
    }
    None
}

/// Transitive closure of a relation, without reflexive pairs.
pub fn transitive_closure(edges: &BTreeSet<Pair>) -> BTreeSet<Pair> {
    let adj = adjacency(edges);
    let mut closed = BTreeSet::new();
    for &start in adj.keys() {
        let mut seen = BTreeSet::new();
        let mut stack = vec![start];
        while let Some(u) = stack.pop() {
            for &v in adj.get(u).map(Vec::as_slice).unwrap_or_default() {
                if seen.insert(v) {
                    stack.push(v);
                }
            }
        }
        closed.extend(seen.into_iter().filter(|&v| v != start).map(|v| (start.to_string(), v.to_string())));
    }
    closed
}

/// Edges of an acyclic relation not implied by a path of length two.
pub fn transitive_reduction(edges: &BTreeSet<Pair>) -> BTreeSet<Pair> {
    let closed = transitive_closure(edges);
    let adj = adjacency(&closed);
    closed
        .iter()
        .filter(|(a, c)| {
            !adj.get(a.as_str())
                .is_some_and(|mids| mids.iter().any(|&b| b != c && closed.contains(&(b.to_string(), c.clone()))))
        })
        .cloned()
        .collect()
}

impl DominationGraph {
    pub fn nodes(&self) -> &[String] {
        &self.nodes
    }

    pub fn edges(&self) -> &BTreeMap<Pair, Certificate> {
        &self.edges
    }

    pub fn has_edge(&self, from: &str, to: &str) -> bool {
        self.edges.contains_key(&(from.to_string(), to.to_string()))
    }

    pub fn edge_set(&self) -> BTreeSet<Pair> {
        self.edges.keys().cloned().collect()
    }

    /// Final verdict for an ordered pair of distinct nodes.
    pub fn verdict(&self, from: &str, to: &str) -> Option<&Verdict> {
        self.verdicts.get(&(from.to_string(), to.to_string()))
    }

    pub fn verdicts(&self) -> &BTreeMap<Pair, Verdict> {
        &self.verdicts
    }

    pub fn audit_log(&self) -> &[String] {
        &self.audit_log
    }

    pub fn successors<'a>(&'a self, node: &'a str) -> impl Iterator<Item = &'a str> + 'a {
        self.edges.keys().filter(move |(a, _)| a == node).map(|(_, b)| b.as_str())
    }

    fn check_node(&self, name: &str) -> Result<(), PosetError> {
        if self.nodes.iter().any(|n| n == name) {
            Ok(())
        } else {
            Err(PosetError::UnknownNode(name.to_string()))
        }
    }

    /// Every maximal and non-maximal strict chain starting at `start`,
    /// in depth-first name order.
    pub fn chains_from(&self, start: &str) -> Result<Vec<Vec<String>>, PosetError> {
        self.check_node(start)?;
        let mut out = Vec::new();
        let mut path = vec![start.to_string()];
        self.extend_chains(&mut path, &mut out);
        Ok(out)
    }

    fn extend_chains(&self, path: &mut Vec<String>, out: &mut Vec<Vec<String>>) {
        out.push(path.clone());
        let last = path.last().unwrap().clone();
        let next: Vec<String> = self.successors(&last).map(str::to_string).collect();
        for n in next {
            if path.contains(&n) {
                continue;
            }
            path.push(n);
            self.extend_chains(path, out);
            path.pop();
        }
    }

    /// Serialization with sorted nodes, edges sorted by `(from, to)` and
    /// per-verdict pair counts.
    pub fn to_json(&self) -> Value {
        let edges: Vec<Value> = self
            .edges
            .iter()
            .map(|((a, b), c)| {
                json!({
                    "from": a,
                    "to": b,
                    "rule": c.rule,
                    "witnesses": c.witnesses,
                    "detail": c.detail,
                })
            })
            .collect();
        let mut counts: BTreeMap<&str, usize> = BTreeMap::new();
        for v in self.verdicts.values() {
            *counts.entry(v.kind()).or_default() += 1;
        }
        json!({
            "nodes": self.nodes,
            "edges": edges,
            "audit_log": self.audit_log,
            "pair_count": self.verdicts.len(),
            "verdict_counts": counts,
        })
    }
}

/// A maximum-length strict chain of certified edges from `start`; ties go to
/// the lexicographically smallest name sequence.
pub fn longest_chain(g: &DominationGraph, start: &str) -> Result<Vec<String>, PosetError> {
    g.check_node(start)?;
    let mut memo = HashMap::new();
    let mut on_stack = BTreeSet::new();
    Ok(best_from(g, start, &mut memo, &mut on_stack))
}

fn best_from(
    g: &DominationGraph,
    node: &str,
    memo: &mut HashMap<String, Vec<String>>,
    on_stack: &mut BTreeSet<String>,
) -> Vec<String> {
    if let Some(c) = memo.get(node) {
        return c.clone();
    }
    on_stack.insert(node.to_string());
    let mut best: Option<Vec<String>> = None;
    let next: Vec<String> = g.successors(node).map(str::to_string).collect();
    for n in next {
        if on_stack.contains(&n) {
            continue;
        }
        let tail = best_from(g, &n, memo, on_stack);
        let better = match &best {
            None => true,
            Some(b) => tail.len() > b.len() || (tail.len() == b.len() && tail < *b),
        };
        if better {
            best = Some(tail);
        }
    }
    on_stack.remove(node);
    let mut chain = vec![node.to_string()];
    chain.extend(best.unwrap_or_default());
    memo.insert(node.to_string(), chain.clone());
    chain
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundRule {
    /// `n + ghat(k_n) <= ghat(k_0)` for a free `k_0`.
    FreeGhat,
    /// At most `deg Delta(k_0)` alternating knots in a chain.
    AlternatingDegree,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundScope {
    TotalLength,
    AlternatingCount,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ChainBound {
    pub value: u32,
    pub rule: BoundRule,
    pub scope: BoundScope,
}

/// Bounds on strict chains starting at `r`.
pub fn chain_length_bound(r: &KnotRecord) -> Vec<ChainBound> {
    let mut out = Vec::new();
    if let (Some(true), Some(g)) = (r.flags.free, r.ghat) {
        out.push(ChainBound { value: g, rule: BoundRule::FreeGhat, scope: BoundScope::TotalLength });
    }
    if r.flags.alternating == Some(true) {
        if let Some(delta) = &r.delta {
            let lead = delta.leading_coeff().expect("knot polynomial is nonzero");
            if is_prime_power_big(lead) {
                out.push(ChainBound {
                    value: delta.max_degree().unwrap_or(0) as u32,
                    rule: BoundRule::AlternatingDegree,
                    scope: BoundScope::AlternatingCount,
                });
            }
        }
    }
    out
}

/// Checks every certified chain against the bounds of its first knot and
/// returns one line per violation.
pub fn chain_bound_violations(g: &DominationGraph, corpus: &Corpus) -> Vec<String> {
    g.nodes().iter().flat_map(|n| violations_from(g, corpus, n)).collect()
}

/// Violations among the chains starting at `start`.
pub fn violations_from(g: &DominationGraph, corpus: &Corpus, start: &str) -> Vec<String> {
    let mut out = Vec::new();
    let Some(k0) = corpus.get(start) else { return out };
    let bounds = chain_length_bound(k0);
    if bounds.is_empty() {
        return out;
    }
    for chain in g.chains_from(start).unwrap_or_default() {
        let n = chain.len() as u32 - 1;
        let last = corpus.get(chain.last().unwrap());
        for b in &bounds {
            match b.rule {
                BoundRule::FreeGhat => {
                    let tail = last.and_then(|k| k.ghat).unwrap_or(0);
                    if n + tail > b.value {
                        out.push(format!(
                            "chain {} has length {n} and terminal ghat {tail}, exceeding ghat({start}) = {}",
                            chain.join(" > "),
                            b.value
                        ));
                    }
                }
                BoundRule::AlternatingDegree => {
                    let alternating = chain
                        .iter()
                        .filter(|k| corpus.get(k).is_some_and(|r| r.flags.alternating == Some(true)))
                        .count() as u32;
                    if alternating > b.value {
                        out.push(format!(
                            "chain {} has {alternating} alternating knots, exceeding deg Delta({start}) = {}",
                            chain.join(" > "),
                            b.value
                        ));
                    }
                }
            }
        }
    }
    out
}
