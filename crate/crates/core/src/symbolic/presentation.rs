//! Labeled-graph presentations of sofic shifts.

use std::collections::{HashMap, VecDeque};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::algebra::IntegerMatrix;

use super::SymbolicError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub source: usize,
    pub label: usize,
    pub target: usize,
}

/// Essential labeled graph over the alphabet `0..alphabet`. The shift it presents
/// is the set of label sequences of bi-infinite paths.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SoficPresentation {
    alphabet: usize,
    states: Vec<String>,
    edges: Vec<Edge>,
    outgoing: Vec<Vec<usize>>,
    deterministic: bool,
}

impl SoficPresentation {
    /// Builds and trims to the essential part. An empty result is an error.
    pub fn new(alphabet: usize, states: Vec<String>, edges: Vec<Edge>) -> Result<Self, SymbolicError> {
        for e in &edges {
            if e.source >= states.len() || e.target >= states.len() {
                return Err(SymbolicError::InvalidPresentation(format!(
                    "edge {e:?} refers to a missing state"
                )));
            }
            if e.label >= alphabet {
                return Err(SymbolicError::InvalidPresentation(format!(
                    "label {} outside alphabet of size {alphabet}",
                    e.label
                )));
            }
        }
        let mut alive = vec![true; states.len()];
        loop {
            let mut has_in = vec![false; states.len()];
            let mut has_out = vec![false; states.len()];
            for e in edges.iter().filter(|e| alive[e.source] && alive[e.target]) {
                has_out[e.source] = true;
                has_in[e.target] = true;
            }
            let mut changed = false;
            for s in 0..states.len() {
                if alive[s] && !(has_in[s] && has_out[s]) {
                    alive[s] = false;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        let mut index = vec![usize::MAX; states.len()];
        let mut kept = Vec::new();
        for (s, name) in states.into_iter().enumerate() {
            if alive[s] {
                index[s] = kept.len();
                kept.push(name);
            }
        }
        if kept.is_empty() {
            return Err(SymbolicError::EmptyShift);
        }
        let edges: Vec<Edge> = edges
            .into_iter()
            .filter(|e| alive[e.source] && alive[e.target])
            .map(|e| Edge { source: index[e.source], label: e.label, target: index[e.target] })
            .collect();
        let mut outgoing = vec![Vec::new(); kept.len()];
        for (i, e) in edges.iter().enumerate() {
            outgoing[e.source].push(i);
        }
        let deterministic = outgoing.iter().all(|out| {
            let mut labels: Vec<usize> = out.iter().map(|&i| edges[i].label).collect();
            labels.sort_unstable();
            labels.windows(2).all(|w| w[0] != w[1])
        });
        Ok(Self { alphabet, states: kept, edges, outgoing, deterministic })
    }

    /// One state with a loop for every symbol.
    pub fn full_shift(alphabet: usize) -> Self {
        let edges = (0..alphabet).map(|label| Edge { source: 0, label, target: 0 }).collect();
        Self::new(alphabet, vec!["*".into()], edges).expect("nonempty alphabet")
    }

    pub fn alphabet(&self) -> usize {
        self.alphabet
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn state_count(&self) -> usize {
        self.states.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Indices into [`edges`](Self::edges) leaving `state`.
    pub fn outgoing(&self, state: usize) -> &[usize] {
        &self.outgoing[state]
    }

    /// No state has two outgoing edges with the same label.
    pub fn is_deterministic(&self) -> bool {
        self.deterministic
    }

    /// Adjacency matrix counting parallel edges.
    pub fn adjacency(&self) -> IntegerMatrix {
        let mut m = IntegerMatrix::zeros(self.state_count());
        for e in &self.edges {
            m[(e.source, e.target)] += BigInt::from(1);
        }
        m
    }

    /// Number of paths (from any state) whose label sequence is `word`.
    pub fn path_count(&self, word: &[usize]) -> u128 {
        let mut counts = vec![1u128; self.state_count()];
        for &symbol in word {
            let mut next = vec![0u128; self.state_count()];
            for e in self.edges.iter().filter(|e| e.label == symbol) {
                next[e.target] += counts[e.source];
            }
            counts = next;
        }
        counts.iter().sum()
    }

    /// Whether `word` is the label of some path, i.e. lies in the shift's language.
    pub fn accepts(&self, word: &[usize]) -> bool {
        self.path_count(word) > 0
    }
}

/// Vertex presentation of the shift whose length-`window` blocks all lie in `allowed`.
pub fn sft_from_allowed_words(
    alphabet: usize,
    window: usize,
    allowed: &[Vec<usize>],
) -> Result<SoficPresentation, SymbolicError> {
    if window == 0 || allowed.is_empty() {
        return Err(SymbolicError::InvalidArgument("need window ≥ 1 and a nonempty word set".into()));
    }
    for w in allowed {
        if w.len() != window || w.iter().any(|&s| s >= alphabet) {
            return Err(SymbolicError::InvalidArgument(format!("bad allowed word {w:?}")));
        }
    }
    let name = |w: &[usize]| w.iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
    let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut states = Vec::new();
    let mut edges = Vec::new();
    let mut sorted = allowed.to_vec();
    sorted.sort();
    sorted.dedup();
    let mut state_of = |w: &[usize], states: &mut Vec<String>| {
        *index.entry(w.to_vec()).or_insert_with(|| {
            states.push(name(w));
            states.len() - 1
        })
    };
    for w in &sorted {
        let source = state_of(&w[..window - 1], &mut states);
        let target = state_of(&w[1..], &mut states);
        edges.push(Edge { source, label: w[window - 1], target });
    }
    SoficPresentation::new(alphabet, states, edges)
}

/// Strong connectivity, period and a primitivity witness of the underlying graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MixingReport {
    pub irreducible: bool,
    pub mixing: bool,
    /// gcd of cycle lengths (irreducible graphs only).
    pub period: Option<usize>,
    /// Least `k` with every entry of the `k`-th adjacency power positive.
    pub witness: Option<usize>,
}

fn reachable(n: usize, start: usize, next: &[Vec<usize>]) -> Vec<Option<usize>> {
    let mut depth = vec![None; n];
    depth[start] = Some(0);
    let mut queue = VecDeque::from([start]);
    while let Some(u) = queue.pop_front() {
        for &v in &next[u] {
            if depth[v].is_none() {
                depth[v] = Some(depth[u].unwrap() + 1);
                queue.push_back(v);
            }
        }
    }
    depth
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn irreducibility_and_mixing(pres: &SoficPresentation) -> MixingReport {
    let n = pres.state_count();
    let mut fwd = vec![Vec::new(); n];
    let mut back = vec![Vec::new(); n];
    for e in pres.edges() {
        fwd[e.source].push(e.target);
        back[e.target].push(e.source);
    }
    let depth = reachable(n, 0, &fwd);
    let irreducible = depth.iter().all(Option::is_some) && reachable(n, 0, &back).iter().all(Option::is_some);
    if !irreducible {
        return MixingReport { irreducible, mixing: false, period: None, witness: None };
    }
    let period = pres.edges().iter().fold(0, |g, e| {
        let d = depth[e.source].unwrap() as i64 + 1 - depth[e.target].unwrap() as i64;
        gcd(g, d.unsigned_abs() as usize)
    });
    let mixing = period == 1;
    let witness = mixing.then(|| {
        // boolean powers; Wielandt bounds the exponent by (n−1)² + 1
        let mut power: Vec<Vec<bool>> = (0..n).map(|i| (0..n).map(|j| fwd[i].contains(&j)).collect()).collect();
        let mut k = 1;
        while !power.iter().all(|row| row.iter().all(|&x| x)) {
            power = (0..n)
                .map(|i| (0..n).map(|j| (0..n).any(|l| power[i][l] && fwd[l].contains(&j))).collect())
                .collect();
            k += 1;
            assert!(k <= (n - 1) * (n - 1) + 1, "primitive graph exceeded Wielandt bound");
        }
        k
    });
    MixingReport { irreducible, mixing, period: Some(period), witness }
}

/// Reachability relation of a word: `rel[s][t]` iff some path from `s` to `t` carries it.
type Relation = Vec<Vec<bool>>;

fn extend(pres: &SoficPresentation, rel: &Relation, symbol: usize) -> Relation {
    let n = pres.state_count();
    let mut next = vec![vec![false; n]; n];
    for e in pres.edges().iter().filter(|e| e.label == symbol) {
        for s in 0..n {
            if rel[s][e.source] {
                next[s][e.target] = true;
            }
        }
    }
    next
}

fn has_cycle(rel: &Relation) -> bool {
    let n = rel.len();
    let mut closure = rel.clone();
    for k in 0..n {
        for i in 0..n {
            if closure[i][k] {
                for j in 0..n {
                    if closure[k][j] {
                        closure[i][j] = true;
                    }
                }
            }
        }
    }
    (0..n).any(|i| closure[i][i])
}

/// Number of points `x` with `σᵖ x = x`.
///
/// `x = w^∞` for a unique word `w` of length `p`, and `w^∞` lies in the shift
/// exactly when the path relation of `w` contains a cycle. Words are enumerated
/// depth-first, pruning prefixes outside the language.
pub fn periodic_point_count(pres: &SoficPresentation, period: usize) -> Result<u128, SymbolicError> {
    if period == 0 {
        return Err(SymbolicError::InvalidArgument("period must be at least 1".into()));
    }
    let n = pres.state_count();
    let identity: Relation = (0..n).map(|i| (0..n).map(|j| i == j).collect()).collect();
    let mut stack = vec![(identity, 0usize)];
    let mut count = 0u128;
    while let Some((rel, len)) = stack.pop() {
        if len == period {
            if has_cycle(&rel) {
                count += 1;
            }
            continue;
        }
        for symbol in 0..pres.alphabet() {
            let next = extend(pres, &rel, symbol);
            if next.iter().any(|row| row.iter().any(|&x| x)) {
                stack.push((next, len + 1));
            }
        }
    }
    Ok(count)
}

/// Every word of length `len` in the language, in lexicographic order.
pub fn language_words(pres: &SoficPresentation, len: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut word = Vec::with_capacity(len);
    let all = vec![true; pres.state_count()];
    collect_words(pres, &all, len, &mut word, &mut out);
    out
}

fn collect_words(
    pres: &SoficPresentation,
    current: &[bool],
    len: usize,
    word: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if word.len() == len {
        out.push(word.clone());
        return;
    }
    for symbol in 0..pres.alphabet() {
        let mut next = vec![false; current.len()];
        for e in pres.edges().iter().filter(|e| e.label == symbol && current[e.source]) {
            next[e.target] = true;
        }
        if next.iter().any(|&x| x) {
            word.push(symbol);
            collect_words(pres, &next, len, word, out);
            word.pop();
        }
    }
}

#[derive(Serialize, Deserialize)]
struct PresentationJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    alphabet: Option<usize>,
    states: Vec<serde_json::Value>,
    edges: Vec<(serde_json::Value, usize, serde_json::Value)>,
}

fn state_key(v: &serde_json::Value) -> String {
    match v {
        serde_json::Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

impl Serialize for SoficPresentation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let name = |i: usize| serde_json::Value::String(self.states[i].clone());
        PresentationJson {
            alphabet: Some(self.alphabet),
            states: (0..self.state_count()).map(name).collect(),
            edges: self.edges.iter().map(|e| (name(e.source), e.label, name(e.target))).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SoficPresentation {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let raw = PresentationJson::deserialize(d)?;
        let names: Vec<String> = raw.states.iter().map(state_key).collect();
        let mut index = HashMap::new();
        for (i, n) in names.iter().enumerate() {
            if index.insert(n.clone(), i).is_some() {
                return Err(D::Error::custom(format!("duplicate state {n:?}")));
            }
        }
        let mut edges = Vec::with_capacity(raw.edges.len());
        for (src, label, dst) in &raw.edges {
            let lookup = |v: &serde_json::Value| {
                index.get(&state_key(v)).copied().ok_or_else(|| D::Error::custom(format!("unknown state {v}")))
            };
            edges.push(Edge { source: lookup(src)?, label: *label, target: lookup(dst)? });
        }
        let alphabet = raw
            .alphabet
            .unwrap_or_else(|| edges.iter().map(|e| e.label + 1).max().unwrap_or(0));
        SoficPresentation::new(alphabet, names, edges).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn golden() -> SoficPresentation {
        sft_from_allowed_words(2, 2, &[vec![0, 0], vec![0, 1], vec![1, 0]]).unwrap()
    }

    #[test]
    fn golden_shift_adjacency() {
        let g = golden();
        assert_eq!(g.adjacency(), IntegerMatrix::from_i64(&[&[1, 1], &[1, 0]]));
        assert!(g.is_deterministic());
    }

    #[test]
    fn full_shift_from_single_symbols() {
        let f = sft_from_allowed_words(2, 1, &[vec![0], vec![1]]).unwrap();
        assert_eq!(f.state_count(), 1);
        assert_eq!(f.edges().len(), 2);
    }

    #[test]
    fn empty_shift_reported() {
        assert_eq!(sft_from_allowed_words(2, 2, &[vec![0, 1]]), Err(SymbolicError::EmptyShift));
    }

    #[test]
    fn trimming_removes_dead_ends() {
        // state 2 has no way out
        let p = SoficPresentation::new(
            2,
            vec!["a".into(), "b".into(), "c".into()],
            vec![
                Edge { source: 0, label: 0, target: 0 },
                Edge { source: 0, label: 1, target: 1 },
                Edge { source: 1, label: 0, target: 0 },
                Edge { source: 1, label: 1, target: 2 },
            ],
        )
        .unwrap();
        assert_eq!(p.states(), ["a", "b"]);
        assert_eq!(p.edges().len(), 3);
    }

    #[test]
    fn mixing_examples() {
        let r = irreducibility_and_mixing(&golden());
        assert!(r.irreducible && r.mixing);
        assert_eq!(r.witness, Some(2));
        let two_cycle = SoficPresentation::new(
            1,
            vec!["a".into(), "b".into()],
            vec![Edge { source: 0, label: 0, target: 1 }, Edge { source: 1, label: 0, target: 0 }],
        )
        .unwrap();
        let r = irreducibility_and_mixing(&two_cycle);
        assert!(r.irreducible && !r.mixing);
        assert_eq!(r.period, Some(2));
        let loops = SoficPresentation::new(
            2,
            vec!["a".into(), "b".into()],
            vec![Edge { source: 0, label: 0, target: 0 }, Edge { source: 1, label: 1, target: 1 }],
        )
        .unwrap();
        assert!(!irreducibility_and_mixing(&loops).irreducible);
    }

    #[test]
    fn periodic_points() {
        assert_eq!(periodic_point_count(&SoficPresentation::full_shift(2), 3).unwrap(), 8);
        assert_eq!(periodic_point_count(&golden(), 1).unwrap(), 1);
        assert_eq!(periodic_point_count(&golden(), 4).unwrap(), 7);
        // explicit enumeration: cyclic binary words of length 4 with no cyclic 11
        let explicit = (0u32..16)
            .filter(|w| (0..4).all(|i| !((w >> i) & 1 == 1 && (w >> ((i + 1) % 4)) & 1 == 1)))
            .count();
        assert_eq!(explicit, 7);
        for p in 1..=8 {
            let trace = golden().adjacency().pow(p as u32).trace();
            assert_eq!(BigInt::from(periodic_point_count(&golden(), p).unwrap()), trace);
        }
    }

    #[test]
    fn json_round_trip() {
        let text = r#"{"states": [0, 1], "edges": [[0, 0, 0], [0, 1, 1], [1, 0, 0]]}"#;
        let p: SoficPresentation = serde_json::from_str(text).unwrap();
        assert_eq!(p.adjacency(), golden().adjacency());
        let back: SoficPresentation = serde_json::from_str(&serde_json::to_string(&p).unwrap()).unwrap();
        assert_eq!(back, p);
        assert!(serde_json::from_str::<SoficPresentation>(r#"{"states": [0], "edges": [[0, 0, 7]]}"#).is_err());
    }

    #[test]
    fn words_and_counts() {
        let words = language_words(&golden(), 3);
        assert_eq!(words.len(), 5);
        assert!(!words.contains(&vec![0, 1, 1]));
        // a vertex presentation counts 00 once per possible predecessor symbol
        assert_eq!(golden().path_count(&[0, 0]), 2);
        assert_eq!(golden().path_count(&[1, 1]), 0);
    }
}
