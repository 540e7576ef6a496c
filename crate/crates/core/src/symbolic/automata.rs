//! Higher-block recoding, subset constructions and language comparisons.

use std::collections::{HashMap, VecDeque};

use super::{Edge, SlidingBlockCode, SoficPresentation, SymbolicError};

/// Cap on subset states (or subset pairs) visited by any determinization.
pub const SUBSET_LIMIT: usize = 1 << 16;

/// Paths of length `m + a` in a presentation as vertices, paths of length
/// `m + 1 + a` as edges. Each edge remembers its input window.
pub(crate) struct WindowGraph {
    pub vertex_count: usize,
    pub edges: Vec<WindowEdge>,
}

pub(crate) struct WindowEdge {
    pub source: usize,
    pub target: usize,
    pub window: Vec<usize>,
}

impl WindowEdge {
    /// The input symbol entering on this step.
    pub fn newest(&self) -> usize {
        *self.window.last().expect("nonempty window")
    }
}

pub(crate) fn window_graph(pres: &SoficPresentation, width: usize) -> WindowGraph {
    if width == 1 {
        let edges = pres
            .edges()
            .iter()
            .map(|e| WindowEdge { source: e.source, target: e.target, window: vec![e.label] })
            .collect();
        return WindowGraph { vertex_count: pres.state_count(), edges };
    }
    // all edge paths of length width, depth first from every edge
    let mut paths: Vec<Vec<usize>> = (0..pres.edges().len()).map(|i| vec![i]).collect();
    for _ in 1..width {
        paths = paths
            .into_iter()
            .flat_map(|p| {
                let end = pres.edges()[*p.last().unwrap()].target;
                pres.outgoing(end).iter().map(move |&next| {
                    let mut q = p.clone();
                    q.push(next);
                    q
                })
            })
            .collect();
    }
    let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut vertex = |p: &[usize]| {
        let n = index.len();
        *index.entry(p.to_vec()).or_insert(n)
    };
    let edges = paths
        .iter()
        .map(|p| WindowEdge {
            source: vertex(&p[..width - 1]),
            target: vertex(&p[1..]),
            window: p.iter().map(|&e| pres.edges()[e].label).collect(),
        })
        .collect();
    WindowGraph { vertex_count: index.len(), edges }
}

/// Presentation of the image shift: the window graph relabeled through the code.
pub fn image_presentation(
    code: &SlidingBlockCode,
    pres: &SoficPresentation,
) -> Result<SoficPresentation, SymbolicError> {
    if pres.alphabet() > code.alphabet_in() {
        return Err(SymbolicError::AlphabetMismatch { expected: code.alphabet_in(), found: pres.alphabet() });
    }
    let graph = window_graph(pres, code.window_len());
    let states = (0..graph.vertex_count).map(|i| format!("w{i}")).collect();
    let edges = graph
        .edges
        .iter()
        .map(|e| Edge { source: e.source, label: code.rule(&e.window), target: e.target })
        .collect();
    SoficPresentation::new(code.alphabet_out(), states, edges)
}

#[derive(Clone, PartialEq, Eq, Hash)]
struct StateSet(Vec<u64>);

impl StateSet {
    fn full(n: usize) -> Self {
        let mut bits = vec![u64::MAX; n.div_ceil(64)];
        if !n.is_multiple_of(64) {
            *bits.last_mut().unwrap() = (1u64 << (n % 64)) - 1;
        }
        Self(bits)
    }

    fn is_empty(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    fn contains(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    fn step(&self, pres: &SoficPresentation, symbol: usize) -> Self {
        let mut next = vec![0u64; self.0.len()];
        for e in pres.edges() {
            if e.label == symbol && self.contains(e.source) {
                next[e.target / 64] |= 1 << (e.target % 64);
            }
        }
        Self(next)
    }
}

/// Breadth-first search over pairs of determinized subsets, both started from
/// all states. Returns the shortest word on which `violates(first_nonempty,
/// second_nonempty)` holds.
fn search_pairs(
    first: &SoficPresentation,
    second: &SoficPresentation,
    violates: impl Fn(bool, bool) -> bool,
) -> Result<Option<Vec<usize>>, SymbolicError> {
    let alphabet = first.alphabet().max(second.alphabet());
    let start = (StateSet::full(first.state_count()), StateSet::full(second.state_count()));
    let mut parent: HashMap<(StateSet, StateSet), Option<(usize, usize)>> = HashMap::new();
    let mut order: Vec<(StateSet, StateSet)> = vec![start.clone()];
    parent.insert(start.clone(), None);
    let mut queue = VecDeque::from([0usize]);
    while let Some(at) = queue.pop_front() {
        let (a, b) = order[at].clone();
        for symbol in 0..alphabet {
            let next = (a.step(first, symbol), b.step(second, symbol));
            let (ne, se) = (!next.0.is_empty(), !next.1.is_empty());
            if violates(ne, se) {
                let mut word = vec![symbol];
                let mut cursor = at;
                while let Some(Some((prev, s))) = parent.get(&order[cursor]).cloned() {
                    word.push(s);
                    cursor = prev;
                }
                word.reverse();
                return Ok(Some(word));
            }
            if !ne && !se || parent.contains_key(&next) {
                continue;
            }
            if order.len() >= SUBSET_LIMIT {
                return Err(SymbolicError::SubsetLimit { limit: SUBSET_LIMIT });
            }
            parent.insert(next.clone(), Some((at, symbol)));
            order.push(next);
            queue.push_back(order.len() - 1);
        }
    }
    Ok(None)
}

/// Shortest word in the language of `sub` but not of `sup`, if any.
pub fn language_inclusion_gap(
    sub: &SoficPresentation,
    sup: &SoficPresentation,
) -> Result<Option<Vec<usize>>, SymbolicError> {
    search_pairs(sub, sup, |in_sub, in_sup| in_sub && !in_sup)
}

/// Shortest word in exactly one of the two languages, if any.
pub fn language_difference(
    first: &SoficPresentation,
    second: &SoficPresentation,
) -> Result<Option<Vec<usize>>, SymbolicError> {
    search_pairs(first, second, |a, b| a != b)
}

/// Exact equality of factor languages. Shift spaces are determined by their
/// languages, so this is equality of the presented shifts. Words up to
/// `spot_check_len` are additionally compared one by one.
pub fn language_equal(
    first: &SoficPresentation,
    second: &SoficPresentation,
    spot_check_len: usize,
) -> Result<bool, SymbolicError> {
    let equal = language_difference(first, second)?.is_none();
    if equal {
        for len in 1..=spot_check_len {
            let a = super::language_words(first, len);
            if a != super::language_words(second, len) {
                return Err(SymbolicError::Inconsistent(format!(
                    "subset search found equal languages but words of length {len} differ"
                )));
            }
        }
    }
    Ok(equal)
}

/// Shortest word over the output alphabet with no preimage, if any.
pub fn orphan_word(code: &SlidingBlockCode) -> Result<Option<Vec<usize>>, SymbolicError> {
    let source = SoficPresentation::full_shift(code.alphabet_in());
    let image = image_presentation(code, &source)?;
    language_inclusion_gap(&SoficPresentation::full_shift(code.alphabet_out()), &image)
}

/// Whether the global map of `code` is onto the full shift on its output alphabet.
pub fn surjective_on_full_shift(code: &SlidingBlockCode) -> Result<bool, SymbolicError> {
    Ok(orphan_word(code)?.is_none())
}

/// Whether the code maps the shift of `pres` into itself.
pub fn preserves(code: &SlidingBlockCode, pres: &SoficPresentation) -> Result<bool, SymbolicError> {
    let image = image_presentation(code, pres)?;
    Ok(language_inclusion_gap(&image, pres)?.is_none())
}

/// Whether the code maps the shift of `pres` onto itself.
pub fn surjective_on(code: &SlidingBlockCode, pres: &SoficPresentation) -> Result<bool, SymbolicError> {
    let image = image_presentation(code, pres)?;
    Ok(language_difference(&image, pres)?.is_none())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::sft_from_allowed_words;

    fn golden() -> SoficPresentation {
        sft_from_allowed_words(2, 2, &[vec![0, 0], vec![0, 1], vec![1, 0]]).unwrap()
    }

    #[test]
    fn surjectivity_examples() {
        assert!(surjective_on_full_shift(&SlidingBlockCode::identity(2)).unwrap());
        assert!(surjective_on_full_shift(&SlidingBlockCode::xor()).unwrap());
        let zero = SlidingBlockCode::constant(2, 0).unwrap();
        assert!(!surjective_on_full_shift(&zero).unwrap());
        assert_eq!(orphan_word(&zero).unwrap(), Some(vec![1]));
    }

    #[test]
    fn identity_image_is_language_equal() {
        let g = golden();
        let image = image_presentation(&SlidingBlockCode::identity(2), &g).unwrap();
        assert!(language_equal(&image, &g, 8).unwrap());
        // higher-block recoding via the shift map
        let shifted = image_presentation(&SlidingBlockCode::shift(2), &g).unwrap();
        assert!(language_equal(&shifted, &g, 8).unwrap());
    }

    #[test]
    fn constant_image_is_fixed_point() {
        let image = image_presentation(&SlidingBlockCode::constant(2, 0).unwrap(), &SoficPresentation::full_shift(2)).unwrap();
        let point = sft_from_allowed_words(2, 1, &[vec![0]]).unwrap();
        assert!(language_equal(&image, &point, 6).unwrap());
    }

    #[test]
    fn golden_differs_from_full_shift() {
        let gap = language_difference(&golden(), &SoficPresentation::full_shift(2)).unwrap();
        assert_eq!(gap, Some(vec![1, 1]));
        assert!(!language_equal(&golden(), &SoficPresentation::full_shift(2), 4).unwrap());
    }

    #[test]
    fn xor_onto_itself() {
        let full = SoficPresentation::full_shift(2);
        assert!(surjective_on(&SlidingBlockCode::xor(), &full).unwrap());
        assert!(preserves(&SlidingBlockCode::identity(2), &golden()).unwrap());
        // the bit flip sends 0^∞ to 1^∞, outside the golden shift
        let flip = SlidingBlockCode::from_fn(2, 2, 0, 0, |w| 1 - w[0]).unwrap();
        assert!(!preserves(&flip, &golden()).unwrap());
    }
}
