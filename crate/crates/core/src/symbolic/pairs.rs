//! Pre-injectivity of a sliding block code restricted to a sofic shift.

use std::collections::VecDeque;

use serde::Serialize;

use super::automata::{language_inclusion_gap, window_graph, image_presentation};
use super::{SlidingBlockCode, SoficPresentation, SymbolicError};

/// Verdict with, on failure, two distinct finite patterns that can be swapped
/// inside a common context without changing the image.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PreInjectivity {
    pub pre_injective: bool,
    pub witness: Option<(Vec<usize>, Vec<usize>)>,
}

struct PairEdge {
    target: usize,
    agree: bool,
    first: usize,
    second: usize,
}

/// Vertices whose every member has an infinite path through `keep`-edges in the
/// given direction: repeatedly strip vertices with no such edge left.
fn infinite_closure(vertex_count: usize, arcs: &[(usize, usize)]) -> Vec<bool> {
    let mut degree = vec![0usize; vertex_count];
    let mut reverse = vec![Vec::new(); vertex_count];
    for &(from, to) in arcs {
        degree[from] += 1;
        reverse[to].push(from);
    }
    let mut alive = vec![true; vertex_count];
    let mut queue: VecDeque<usize> = (0..vertex_count).filter(|&v| degree[v] == 0).collect();
    while let Some(v) = queue.pop_front() {
        if !alive[v] {
            continue;
        }
        alive[v] = false;
        for &u in &reverse[v] {
            degree[u] -= 1;
            if degree[u] == 0 && alive[u] {
                queue.push_back(u);
            }
        }
    }
    alive
}

/// Decides whether two distinct configurations of the shift that agree outside a
/// finite window can share an image.
///
/// Pairs of paths in the window graph are explored in lockstep on equal output.
/// A step *agrees* when both paths read the same new input symbol. A collision
/// exists exactly when some pair vertex with an infinite agreeing past reaches,
/// through at least one disagreeing step, a pair vertex with an infinite
/// agreeing future.
pub fn pre_injective_code(
    code: &SlidingBlockCode,
    pres: &SoficPresentation,
) -> Result<PreInjectivity, SymbolicError> {
    let image = image_presentation(code, pres)?;
    if let Some(word) = language_inclusion_gap(&image, pres)? {
        return Err(SymbolicError::NotPreserved(word));
    }
    let graph = window_graph(pres, code.window_len());
    let v = graph.vertex_count;
    let pair = |a: usize, b: usize| a * v + b;
    let outputs: Vec<usize> = graph.edges.iter().map(|e| code.rule(&e.window)).collect();
    let mut by_output = vec![Vec::new(); code.alphabet_out()];
    for (i, &o) in outputs.iter().enumerate() {
        by_output[o].push(i);
    }
    let mut adjacency: Vec<Vec<PairEdge>> = (0..v * v).map(|_| Vec::new()).collect();
    let mut agreeing = Vec::new();
    for group in &by_output {
        for &i in group {
            for &j in group {
                let (e, f) = (&graph.edges[i], &graph.edges[j]);
                let from = pair(e.source, f.source);
                let to = pair(e.target, f.target);
                let agree = e.newest() == f.newest();
                if agree {
                    agreeing.push((from, to));
                }
                adjacency[from].push(PairEdge { target: to, agree, first: i, second: j });
            }
        }
    }
    let infinite_future = infinite_closure(v * v, &agreeing);
    let flipped: Vec<(usize, usize)> = agreeing.iter().map(|&(a, b)| (b, a)).collect();
    let infinite_past = infinite_closure(v * v, &flipped);

    // states: (pair vertex, a disagreeing step has been taken)
    let mut seen = vec![[false; 2]; v * v];
    let mut parent: Vec<[Option<(usize, bool, usize, usize)>; 2]> = vec![[None; 2]; v * v];
    let mut queue = VecDeque::new();
    for start in (0..v * v).filter(|&p| infinite_past[p]) {
        seen[start][0] = true;
        queue.push_back((start, false));
    }
    while let Some((at, flagged)) = queue.pop_front() {
        for edge in &adjacency[at] {
            let next_flag = flagged || !edge.agree;
            let slot = next_flag as usize;
            if seen[edge.target][slot] {
                continue;
            }
            seen[edge.target][slot] = true;
            parent[edge.target][slot] = Some((at, flagged, edge.first, edge.second));
            if next_flag && infinite_future[edge.target] {
                let witness = trace_back(&graph, &parent, edge.target);
                return Ok(PreInjectivity { pre_injective: false, witness: Some(witness) });
            }
            queue.push_back((edge.target, next_flag));
        }
    }
    Ok(PreInjectivity { pre_injective: true, witness: None })
}

type Parent = [Option<(usize, bool, usize, usize)>; 2];

fn trace_back(
    graph: &super::automata::WindowGraph,
    parent: &[Parent],
    end: usize,
) -> (Vec<usize>, Vec<usize>) {
    let mut steps = Vec::new();
    let (mut at, mut flagged) = (end, true);
    while let Some((prev, prev_flag, i, j)) = parent[at][flagged as usize] {
        steps.push((i, j));
        at = prev;
        flagged = prev_flag;
    }
    steps.reverse();
    // the shared context of the first window, then one new symbol per step
    let (first_edge, _) = steps[0];
    let context = &graph.edges[first_edge].window[..graph.edges[first_edge].window.len() - 1];
    let mut left = context.to_vec();
    let mut right = context.to_vec();
    for (i, j) in steps {
        left.push(graph.edges[i].newest());
        right.push(graph.edges[j].newest());
    }
    (left, right)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::sft_from_allowed_words;

    fn full() -> SoficPresentation {
        SoficPresentation::full_shift(2)
    }

    #[test]
    fn known_cases() {
        assert!(pre_injective_code(&SlidingBlockCode::identity(2), &full()).unwrap().pre_injective);
        let zero = pre_injective_code(&SlidingBlockCode::constant(2, 0).unwrap(), &full()).unwrap();
        assert!(!zero.pre_injective);
        let (u, w) = zero.witness.unwrap();
        assert_ne!(u, w);
        assert!(pre_injective_code(&SlidingBlockCode::xor(), &full()).unwrap().pre_injective);
    }

    #[test]
    fn witness_patterns_share_an_image() {
        // rule 0 and rule 8 both collapse patterns
        for rule in [0u8, 8, 32, 128, 136] {
            let code = SlidingBlockCode::elementary(rule);
            let out = pre_injective_code(&code, &full()).unwrap();
            assert!(!out.pre_injective, "rule {rule}");
            let (u, w) = out.witness.unwrap();
            assert_eq!(u.len(), w.len());
            assert_ne!(u, w);
        }
    }

    #[test]
    fn refuses_code_leaving_the_shift() {
        let golden = sft_from_allowed_words(2, 2, &[vec![0, 0], vec![0, 1], vec![1, 0]]).unwrap();
        let flip = SlidingBlockCode::from_fn(2, 2, 0, 0, |w| 1 - w[0]).unwrap();
        assert!(matches!(pre_injective_code(&flip, &golden), Err(SymbolicError::NotPreserved(_))));
    }

    #[test]
    fn shift_is_pre_injective_on_golden() {
        let golden = sft_from_allowed_words(2, 2, &[vec![0, 0], vec![0, 1], vec![1, 0]]).unwrap();
        assert!(pre_injective_code(&SlidingBlockCode::shift(2), &golden).unwrap().pre_injective);
    }
}
