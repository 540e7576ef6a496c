//! The golden-mean cover of the even shift, and the search for a surjective
//! but not pre-injective self-map of the even shift.

use serde::Serialize;

use super::automata::{image_presentation, language_difference, language_equal, language_inclusion_gap};
use super::pairs::pre_injective_code;
use super::{language_words, sft_from_allowed_words, Edge, SlidingBlockCode, SoficPresentation, SymbolicError};

/// Word lengths over which the cover's preimage bound is checked.
pub const PREIMAGE_CHECK_LEN: usize = 12;

#[derive(Clone, Debug, Serialize)]
pub struct PreimageBounds {
    pub max_len: usize,
    pub words_checked: usize,
    pub min_preimages: u128,
    pub max_preimages: u128,
}

#[derive(Clone, Debug, Serialize)]
pub struct EvenShiftSystem {
    /// Two states; its edge shift is conjugate to the golden-mean shift.
    pub cover: SoficPresentation,
    /// Factor code from the golden-mean vertex shift onto the even shift.
    pub label_code: SlidingBlockCode,
    /// Independent three-state presentation of the even shift.
    pub even: SoficPresentation,
    pub golden: SoficPresentation,
    pub preimages: PreimageBounds,
}

pub fn golden_mean_shift() -> SoficPresentation {
    sft_from_allowed_words(2, 2, &[vec![0, 0], vec![0, 1], vec![1, 0]]).expect("nonempty")
}

/// Binary sequences with an even number of 0s between any two 1s.
pub fn even_shift() -> SoficPresentation {
    let edge = |source, label, target| Edge { source, label, target };
    SoficPresentation::new(
        2,
        vec!["a".into(), "b".into(), "c".into()],
        vec![edge(0, 1, 0), edge(0, 0, 1), edge(1, 0, 2), edge(2, 0, 1), edge(2, 1, 0)],
    )
    .expect("nonempty")
}

fn cover() -> SoficPresentation {
    let edge = |source, label, target| Edge { source, label, target };
    SoficPresentation::new(
        2,
        vec!["s0".into(), "s1".into()],
        vec![edge(0, 1, 0), edge(0, 0, 1), edge(1, 0, 0)],
    )
    .expect("nonempty")
}

/// Golden symbol `x_i` and its predecessor name the cover edge taken at `i`:
/// `1` is `s0→s1`, `10` ends in `s1→s0`, `00` is the loop at `s0`.
fn label_code() -> SlidingBlockCode {
    SlidingBlockCode::from_fn(2, 2, 1, 0, |w| usize::from(w == [0, 0])).expect("valid")
}

/// Counts cover paths over every even-shift word up to `max_len` and checks
/// that no word outside the even shift is a cover label.
pub fn check_preimage_bounds(
    cover: &SoficPresentation,
    even: &SoficPresentation,
    max_len: usize,
) -> Result<PreimageBounds, SymbolicError> {
    let mut bounds = PreimageBounds { max_len, words_checked: 0, min_preimages: u128::MAX, max_preimages: 0 };
    for len in 1..=max_len {
        let words = language_words(even, len);
        for word in &words {
            let count = cover.path_count(word);
            bounds.min_preimages = bounds.min_preimages.min(count);
            bounds.max_preimages = bounds.max_preimages.max(count);
        }
        bounds.words_checked += words.len();
        let covered = language_words(cover, len).len();
        if covered != words.len() {
            return Err(SymbolicError::Inconsistent(format!(
                "cover has {covered} words of length {len}, even shift has {}",
                words.len()
            )));
        }
    }
    Ok(bounds)
}

pub fn even_shift_system() -> Result<EvenShiftSystem, SymbolicError> {
    let cover = cover();
    let even = even_shift();
    let preimages = check_preimage_bounds(&cover, &even, PREIMAGE_CHECK_LEN)?;
    if preimages.min_preimages < 1 || preimages.max_preimages > 2 {
        return Err(SymbolicError::Inconsistent(format!(
            "preimage counts range over {}..={}",
            preimages.min_preimages, preimages.max_preimages
        )));
    }
    Ok(EvenShiftSystem { cover, label_code: label_code(), even, golden: golden_mean_shift(), preimages })
}

/// Found counterexample to the Moore property.
#[derive(Clone, Debug, Serialize)]
pub struct MooreWitness {
    pub radius: usize,
    /// Position of the code in the enumeration order.
    pub candidate_index: u64,
    pub candidates_checked: u64,
    pub code: SlidingBlockCode,
    /// Patterns exchanged without changing the image.
    pub erasable_pair: (Vec<usize>, Vec<usize>),
}

/// Most rule tables examined at a single radius.
pub const CANDIDATE_LIMIT: u64 = 1 << 22;

/// Enumerates codes with memory = anticipation = `r` for `r = 0..=max_radius`.
///
/// Only windows occurring in the shift matter, so tables range over assignments
/// to those windows (in lexicographic window order, first window most
/// significant); windows outside the language map to 0. The first code that
/// maps the shift onto itself without being pre-injective is returned.
pub fn moore_counterexample_search(
    shift: &SoficPresentation,
    max_radius: usize,
) -> Result<Option<MooreWitness>, SymbolicError> {
    let alphabet = shift.alphabet();
    let mut checked = 0u64;
    for radius in 0..=max_radius {
        let width = 2 * radius + 1;
        let windows = language_words(shift, width);
        let tables = (alphabet as u64)
            .checked_pow(windows.len() as u32)
            .filter(|&n| n <= CANDIDATE_LIMIT)
            .ok_or(SymbolicError::CandidateLimit { radius, windows: windows.len() })?;
        let size = alphabet.pow(width as u32);
        let index_of = |w: &[usize]| w.iter().fold(0, |acc, &s| acc * alphabet + s);
        for candidate in 0..tables {
            checked += 1;
            let mut table = vec![0usize; size];
            let mut rest = candidate;
            for w in windows.iter().rev() {
                table[index_of(w)] = (rest % alphabet as u64) as usize;
                rest /= alphabet as u64;
            }
            let code = SlidingBlockCode::new(alphabet, alphabet, radius, radius, table)?;
            let image = image_presentation(&code, shift)?;
            if language_inclusion_gap(&image, shift)?.is_some() {
                continue;
            }
            if language_difference(&image, shift)?.is_some() {
                continue;
            }
            let verdict = pre_injective_code(&code, shift)?;
            if let Some(pair) = verdict.witness {
                return Ok(Some(MooreWitness {
                    radius,
                    candidate_index: candidate,
                    candidates_checked: checked,
                    code,
                    erasable_pair: pair,
                }));
            }
        }
    }
    Ok(None)
}

/// Re-derives both verdicts of a claimed counterexample.
pub fn replay_moore_witness(
    shift: &SoficPresentation,
    code: &SlidingBlockCode,
) -> Result<(bool, bool), SymbolicError> {
    let image = image_presentation(code, shift)?;
    let surjective = language_equal(&image, shift, 8)?;
    let pre_injective = pre_injective_code(code, shift)?.pre_injective;
    Ok((surjective, pre_injective))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::irreducibility_and_mixing;

    #[test]
    fn cover_and_declared_presentation_agree() {
        let sys = even_shift_system().unwrap();
        assert!(language_equal(&sys.cover, &sys.even, 10).unwrap());
        let image = image_presentation(&sys.label_code, &sys.golden).unwrap();
        assert!(language_equal(&image, &sys.even, 10).unwrap());
        assert!(!language_equal(&sys.golden, &sys.even, 4).unwrap());
        assert_eq!(sys.preimages.min_preimages, 1);
        assert_eq!(sys.preimages.max_preimages, 2);
    }

    #[test]
    fn even_words_by_hand() {
        let even = even_shift();
        for w in [[1, 1].as_slice(), &[1, 0, 0, 1], &[0, 1, 0], &[0, 0, 0]] {
            assert!(even.accepts(w), "{w:?}");
        }
        assert!(!even.accepts(&[1, 0, 1]));
        assert!(!even.accepts(&[1, 0, 0, 0, 1]));
        // all-zero word is covered by the two alternating cover paths
        assert_eq!(even_shift_system().unwrap().cover.path_count(&[0; 7]), 2);
    }

    #[test]
    fn golden_cover_is_mixing() {
        let sys = even_shift_system().unwrap();
        let report = irreducibility_and_mixing(&sys.cover);
        assert!(report.mixing);
        assert_eq!(report.witness, Some(2));
    }

    #[test]
    fn no_one_block_counterexample() {
        assert!(moore_counterexample_search(&even_shift(), 0).unwrap().is_none());
    }
}
