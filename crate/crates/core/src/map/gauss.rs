use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use super::{Label, Passage, SphericalCurveMap, MAX_REALIZE_CROSSINGS};
use crate::error::MapError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mark {
    Over,
    Under,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GaussToken {
    pub label: Label,
    pub mark: Option<Mark>,
}

/// A double-occurrence word of crossing labels, optionally annotated with
/// over/under marks. Text form: `1 2 3 1 2 3` or `O1 U2 O3 U1 O2 U3`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussCode(Vec<GaussToken>);

impl GaussCode {
    pub fn new(tokens: Vec<GaussToken>) -> Self {
        GaussCode(tokens)
    }

    pub fn tokens(&self) -> &[GaussToken] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_annotated(&self) -> bool {
        self.0.iter().any(|t| t.mark.is_some())
    }

    /// The same word without over/under marks.
    pub fn unmarked(&self) -> GaussCode {
        GaussCode(
            self.0
                .iter()
                .map(|t| GaussToken { label: t.label, mark: None })
                .collect(),
        )
    }

    /// Checks the double-occurrence and marking rules.
    pub fn validate(&self) -> Result<(), MapError> {
        let mut seen: BTreeMap<Label, Vec<Option<Mark>>> = BTreeMap::new();
        for t in &self.0 {
            seen.entry(t.label).or_default().push(t.mark);
        }
        let annotated = self.is_annotated();
        for (label, marks) in seen {
            if marks.len() != 2 {
                return Err(MapError::MalformedCode(format!(
                    "label {label} occurs {} times",
                    marks.len()
                )));
            }
            if annotated {
                match (marks[0], marks[1]) {
                    (Some(Mark::Over), Some(Mark::Under)) | (Some(Mark::Under), Some(Mark::Over)) => {}
                    _ => {
                        return Err(MapError::MalformedCode(format!(
                            "label {label} needs one over and one under mark"
                        )))
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for GaussCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            match t.mark {
                Some(Mark::Over) => write!(f, "O{}", t.label)?,
                Some(Mark::Under) => write!(f, "U{}", t.label)?,
                None => write!(f, "{}", t.label)?,
            }
        }
        Ok(())
    }
}

impl FromStr for GaussCode {
    type Err = MapError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut tokens = Vec::new();
        for tok in s.split_whitespace() {
            let (mark, digits) = match tok.as_bytes()[0] {
                b'O' | b'o' => (Some(Mark::Over), &tok[1..]),
                b'U' | b'u' => (Some(Mark::Under), &tok[1..]),
                _ => (None, tok),
            };
            let label = digits
                .parse::<Label>()
                .map_err(|_| MapError::MalformedCode(format!("bad token `{tok}`")))?;
            tokens.push(GaussToken { label, mark });
        }
        let code = GaussCode(tokens);
        if code.is_annotated() && code.0.iter().any(|t| t.mark.is_none()) {
            return Err(MapError::MalformedCode("mixed marked and unmarked tokens".into()));
        }
        code.validate()?;
        Ok(code)
    }
}

/// Realizes a Gauss code as a spherical curve. Among all rotation choices,
/// the first one (in the enumeration order of [`realizations`]) is returned.
pub fn build_from_gauss_code(code: &GaussCode) -> Result<SphericalCurveMap, MapError> {
    let mut first = None;
    search(code, &mut |m| {
        first = Some(m);
        false
    })?;
    first.ok_or(MapError::NotRealizable)
}

/// Every spherical embedding of a Gauss code, one per admissible choice of
/// crossing orientations.
pub fn realizations(code: &GaussCode) -> Result<Vec<SphericalCurveMap>, MapError> {
    let mut all = Vec::new();
    search(code, &mut |m| {
        all.push(m);
        true
    })?;
    Ok(all)
}

/// Backtracks over the orientation bit of every crossing (in first-visit
/// order, `false` before `true`) and reports each assignment whose
/// rotation system has Euler characteristic 2. The visitor returns whether
/// to keep going.
fn search(
    code: &GaussCode,
    visit: &mut dyn FnMut(SphericalCurveMap) -> bool,
) -> Result<(), MapError> {
    code.validate()?;
    let n = code.len() / 2;
    if n == 0 {
        visit(SphericalCurveMap::circle());
        return Ok(());
    }
    if n > MAX_REALIZE_CROSSINGS {
        return Err(MapError::TooLarge(n));
    }
    let mut order: Vec<Label> = Vec::with_capacity(n);
    for t in code.tokens() {
        if !order.contains(&t.label) {
            order.push(t.label);
        }
    }
    let mut passages: Vec<Passage> = code
        .tokens()
        .iter()
        .map(|t| Passage { label: t.label, leftward: false })
        .collect();
    let mut bits = vec![false; n];
    loop {
        let flags: BTreeMap<Label, bool> = order.iter().copied().zip(bits.iter().copied()).collect();
        let mut first_seen = BTreeMap::new();
        for p in passages.iter_mut() {
            let first = first_seen.insert(p.label, ()).is_none();
            p.leftward = flags[&p.label] == first;
        }
        let map = SphericalCurveMap::from_passages_unchecked(passages.clone())?;
        if map.face_table().faces.len() == n + 2 && !visit(map) {
            return Ok(());
        }
        // next assignment in lexicographic order
        let mut i = n;
        loop {
            if i == 0 {
                return Ok(());
            }
            i -= 1;
            if !bits[i] {
                bits[i] = true;
                for b in bits.iter_mut().skip(i + 1) {
                    *b = false;
                }
                break;
            }
        }
    }
}
