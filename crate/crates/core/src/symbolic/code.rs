//! Sliding block codes with memory and anticipation.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::SymbolicError;

/// `(τx)_i = rule(x_{i−m} … x_{i+a})`. The table is indexed by the window read
/// as a base-`alphabet_in` numeral, most significant symbol first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SlidingBlockCode {
    alphabet_in: usize,
    alphabet_out: usize,
    memory: usize,
    anticipation: usize,
    table: Vec<usize>,
}

impl SlidingBlockCode {
    pub fn new(
        alphabet_in: usize,
        alphabet_out: usize,
        memory: usize,
        anticipation: usize,
        table: Vec<usize>,
    ) -> Result<Self, SymbolicError> {
        if alphabet_in == 0 || alphabet_out == 0 {
            return Err(SymbolicError::InvalidCode("empty alphabet".into()));
        }
        let width = (memory + anticipation + 1) as u32;
        let expected = alphabet_in
            .checked_pow(width)
            .filter(|&n| n <= 1 << 24)
            .ok_or_else(|| SymbolicError::InvalidCode("window table too large".into()))?;
        if table.len() != expected {
            return Err(SymbolicError::InvalidCode(format!(
                "table has {} entries, expected {expected}",
                table.len()
            )));
        }
        if let Some(bad) = table.iter().find(|&&s| s >= alphabet_out) {
            return Err(SymbolicError::InvalidCode(format!("output symbol {bad} outside alphabet")));
        }
        Ok(Self { alphabet_in, alphabet_out, memory, anticipation, table })
    }

    pub fn from_fn(
        alphabet_in: usize,
        alphabet_out: usize,
        memory: usize,
        anticipation: usize,
        rule: impl Fn(&[usize]) -> usize,
    ) -> Result<Self, SymbolicError> {
        let width = memory + anticipation + 1;
        let size = alphabet_in.pow(width as u32);
        let mut window = vec![0; width];
        let table = (0..size)
            .map(|index| {
                decode_window(index, alphabet_in, &mut window);
                rule(&window)
            })
            .collect();
        Self::new(alphabet_in, alphabet_out, memory, anticipation, table)
    }

    pub fn identity(alphabet: usize) -> Self {
        Self::from_fn(alphabet, alphabet, 0, 0, |w| w[0]).expect("valid")
    }

    /// The left shift `(σx)_i = x_{i+1}`.
    pub fn shift(alphabet: usize) -> Self {
        Self::from_fn(alphabet, alphabet, 0, 1, |w| w[1]).expect("valid")
    }

    pub fn constant(alphabet: usize, symbol: usize) -> Result<Self, SymbolicError> {
        Self::from_fn(alphabet, alphabet, 0, 0, |_| symbol)
    }

    /// `x_i + x_{i+1} mod 2`.
    pub fn xor() -> Self {
        Self::from_fn(2, 2, 0, 1, |w| (w[0] + w[1]) % 2).expect("valid")
    }

    /// Elementary cellular automaton in Wolfram numbering.
    pub fn elementary(rule: u8) -> Self {
        Self::from_fn(2, 2, 1, 1, |w| ((rule >> (4 * w[0] + 2 * w[1] + w[2])) & 1) as usize).expect("valid")
    }

    pub fn alphabet_in(&self) -> usize {
        self.alphabet_in
    }

    pub fn alphabet_out(&self) -> usize {
        self.alphabet_out
    }

    pub fn memory(&self) -> usize {
        self.memory
    }

    pub fn anticipation(&self) -> usize {
        self.anticipation
    }

    /// `m + 1 + a`.
    pub fn window_len(&self) -> usize {
        self.memory + self.anticipation + 1
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn window_index(&self, window: &[usize]) -> usize {
        window.iter().fold(0, |acc, &s| acc * self.alphabet_in + s)
    }

    pub fn rule(&self, window: &[usize]) -> usize {
        self.table[self.window_index(window)]
    }

    /// Slides the rule along `word`; the output is `m + a` symbols shorter.
    pub fn apply(&self, word: &[usize]) -> Result<Vec<usize>, SymbolicError> {
        let width = self.window_len();
        if word.len() < width {
            return Err(SymbolicError::WordTooShort { len: word.len(), needed: width });
        }
        if let Some(bad) = word.iter().find(|&&s| s >= self.alphabet_in) {
            return Err(SymbolicError::InvalidArgument(format!("symbol {bad} outside input alphabet")));
        }
        Ok(word.windows(width).map(|w| self.rule(w)).collect())
    }
}

pub fn apply_code(code: &SlidingBlockCode, word: &[usize]) -> Result<Vec<usize>, SymbolicError> {
    code.apply(word)
}

pub(crate) fn decode_window(mut index: usize, alphabet: usize, window: &mut [usize]) {
    for slot in window.iter_mut().rev() {
        *slot = index % alphabet;
        index /= alphabet;
    }
}

#[derive(Serialize, Deserialize)]
struct CodeJson {
    m: usize,
    a: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    alphabet_in: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    alphabet_out: Option<usize>,
    table: BTreeMap<String, usize>,
}

impl Serialize for SlidingBlockCode {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::Error;
        if self.alphabet_in > 10 {
            return Err(S::Error::custom("window keys need an alphabet of at most 10 symbols"));
        }
        let mut window = vec![0; self.window_len()];
        let table = (0..self.table.len())
            .map(|i| {
                decode_window(i, self.alphabet_in, &mut window);
                (window.iter().map(ToString::to_string).collect::<String>(), self.table[i])
            })
            .collect();
        CodeJson {
            m: self.memory,
            a: self.anticipation,
            alphabet_in: Some(self.alphabet_in),
            alphabet_out: Some(self.alphabet_out),
            table,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SlidingBlockCode {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let raw = CodeJson::deserialize(d)?;
        let width = raw.m + raw.a + 1;
        let mut windows = Vec::with_capacity(raw.table.len());
        for (key, &symbol) in &raw.table {
            let digits: Option<Vec<usize>> = key.chars().map(|c| c.to_digit(10).map(|x| x as usize)).collect();
            match digits {
                Some(w) if w.len() == width => windows.push((w, symbol)),
                _ => return Err(D::Error::custom(format!("bad window {key:?}, expected {width} digits"))),
            }
        }
        let inferred_in = windows.iter().flat_map(|(w, _)| w.iter()).max().map_or(1, |&x| x + 1);
        let inferred_out = windows.iter().map(|&(_, s)| s).max().map_or(1, |x| x + 1);
        let shared = inferred_in.max(inferred_out);
        let alphabet_in = raw.alphabet_in.unwrap_or(shared);
        let alphabet_out = raw.alphabet_out.unwrap_or(shared);
        if windows.iter().any(|(w, _)| w.iter().any(|&x| x >= alphabet_in)) {
            return Err(D::Error::custom("window symbol outside input alphabet"));
        }
        let size = alphabet_in
            .checked_pow(width as u32)
            .filter(|&n| n <= 1 << 24)
            .ok_or_else(|| D::Error::custom("window table too large"))?;
        let mut table = vec![None; size];
        let weight = |w: &[usize]| w.iter().fold(0, |acc, &s| acc * alphabet_in + s);
        for (w, s) in windows {
            table[weight(&w)] = Some(s);
        }
        let table: Option<Vec<usize>> = table.into_iter().collect();
        let table = table.ok_or_else(|| D::Error::custom("table is not total"))?;
        SlidingBlockCode::new(alphabet_in, alphabet_out, raw.m, raw.a, table).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_cases() {
        let word = [0, 0, 1, 1];
        assert_eq!(SlidingBlockCode::identity(2).apply(&word).unwrap(), word);
        assert_eq!(SlidingBlockCode::xor().apply(&word).unwrap(), vec![0, 1, 0]);
        assert_eq!(SlidingBlockCode::shift(2).apply(&word).unwrap(), vec![0, 1, 1]);
        assert!(matches!(
            SlidingBlockCode::elementary(110).apply(&[0, 1]),
            Err(SymbolicError::WordTooShort { len: 2, needed: 3 })
        ));
    }

    #[test]
    fn wolfram_numbering() {
        // rule 110: 111→0 110→1 101→1 100→0 011→1 010→1 001→1 000→0
        let r = SlidingBlockCode::elementary(110);
        let expected = [(0, 0, 0, 0), (0, 0, 1, 1), (0, 1, 0, 1), (0, 1, 1, 1), (1, 0, 0, 0), (1, 0, 1, 1), (1, 1, 0, 1), (1, 1, 1, 0)];
        for (l, c, rr, out) in expected {
            assert_eq!(r.rule(&[l, c, rr]), out);
        }
        assert_eq!(SlidingBlockCode::elementary(204), SlidingBlockCode::from_fn(2, 2, 1, 1, |w| w[1]).unwrap());
    }

    #[test]
    fn json_format() {
        let code: SlidingBlockCode =
            serde_json::from_str(r#"{"m": 0, "a": 1, "table": {"00": 0, "01": 1, "10": 1, "11": 0}}"#).unwrap();
        assert_eq!(code, SlidingBlockCode::xor());
        let text = serde_json::to_string(&code).unwrap();
        assert_eq!(serde_json::from_str::<SlidingBlockCode>(&text).unwrap(), code);
        assert!(serde_json::from_str::<SlidingBlockCode>(r#"{"m": 0, "a": 1, "table": {"00": 0, "01": 1}}"#).is_err());
        assert!(serde_json::from_str::<SlidingBlockCode>(r#"{"m": 0, "a": 0, "table": {"00": 0}}"#).is_err());
    }

    #[test]
    fn commutes_with_shift_on_windows() {
        // applying then shifting equals shifting then applying
        let code = SlidingBlockCode::elementary(30);
        let word = [1, 0, 1, 1, 0, 0, 1, 0, 1];
        let lhs = code.apply(&word).unwrap()[1..].to_vec();
        let rhs = code.apply(&word[1..]).unwrap();
        assert_eq!(lhs, rhs);
    }
}
