//! Surjectivity and pre-injectivity of all 256 elementary cellular automata.

use serde::Serialize;

use super::automata::surjective_on_full_shift;
use super::pairs::pre_injective_code;
use super::{SlidingBlockCode, SoficPresentation, SymbolicError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CensusRow {
    pub rule: u8,
    pub surjective: bool,
    pub pre_injective: bool,
}

pub fn elementary_census() -> Result<Vec<CensusRow>, SymbolicError> {
    let full = SoficPresentation::full_shift(2);
    (0..=255u8)
        .map(|rule| {
            let code = SlidingBlockCode::elementary(rule);
            Ok(CensusRow {
                rule,
                surjective: surjective_on_full_shift(&code)?,
                pre_injective: pre_injective_code(&code, &full)?.pre_injective,
            })
        })
        .collect()
}

/// `rule,surjective,pre_injective` with a header line.
pub fn census_csv(rows: &[CensusRow]) -> String {
    let mut out = String::from("rule,surjective,pre_injective\n");
    for r in rows {
        out.push_str(&format!("{},{},{}\n", r.rule, r.surjective, r.pre_injective));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_and_constants() {
        let rows = elementary_census().unwrap();
        assert!(rows[204].surjective && rows[204].pre_injective);
        for rule in [0, 255] {
            assert!(!rows[rule].surjective && !rows[rule].pre_injective);
        }
        assert!(rows.iter().all(|r| r.surjective == r.pre_injective));
    }

    #[test]
    fn csv_shape() {
        let rows = elementary_census().unwrap();
        let csv = census_csv(&rows);
        assert_eq!(csv.lines().count(), 257);
        assert_eq!(csv.lines().nth(205), Some("204,true,true"));
    }
}
