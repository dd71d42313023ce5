use std::collections::HashMap;

use inglenook_core::WagonId;

/// Mapping between user wagon tokens and canonical labels `1..=w`.
///
/// Tokens that are exactly the numbers `1..=w` keep their values. Any other
/// token set is sorted (numbers by value first, then the rest by text) and
/// numbered in that order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabelTable {
    names: Vec<String>,
    ids: HashMap<String, WagonId>,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum LabelError {
    #[error("wagon `{0}` appears more than once")]
    Duplicate(String),
    #[error("expected {expected} wagons, found {found}")]
    Count { expected: usize, found: usize },
}

impl LabelTable {
    pub fn canonical(w: usize) -> Self {
        Self::from_sorted((1..=w).map(|i| i.to_string()).collect())
    }

    pub fn from_tokens<S: AsRef<str>>(tokens: &[S], w: usize) -> Result<Self, LabelError> {
        let mut names: Vec<String> = tokens.iter().map(|t| t.as_ref().to_owned()).collect();
        names.sort_by(|a, b| sort_key(a).cmp(&sort_key(b)));
        if let Some(pair) = names.windows(2).find(|p| p[0] == p[1]) {
            return Err(LabelError::Duplicate(pair[0].clone()));
        }
        if names.len() != w {
            return Err(LabelError::Count { expected: w, found: names.len() });
        }
        let canonical = names.iter().enumerate().all(|(i, n)| *n == (i + 1).to_string());
        if canonical {
            return Ok(Self::canonical(w));
        }
        Ok(Self::from_sorted(names))
    }

    fn from_sorted(names: Vec<String>) -> Self {
        let ids =
            names.iter().enumerate().map(|(i, n)| (n.clone(), WagonId::new(i as u8 + 1).expect("nonzero"))).collect();
        LabelTable { names, ids }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn id(&self, token: &str) -> Option<WagonId> {
        self.ids.get(token).copied()
    }

    pub fn name(&self, id: WagonId) -> &str {
        &self.names[id.get() as usize - 1]
    }
}

fn sort_key(s: &str) -> (u8, u128, &str) {
    match s.parse::<u128>() {
        Ok(n) if !s.starts_with('0') || s == "0" => (0, n, s),
        _ => (1, 0, s),
    }
}
