//! Line-oriented text files for curves and diagrams.
//!
//! ```text
//! curve <n>
//! dart <id> twin <id> vnext <id> snext <id>    # 4n lines
//! basepoint <dart-id>
//! outer <dart-id>                              # or `left` / `right` for the circle
//! over <label> <dart-id>                       # diagrams only, one per crossing
//! ```
//!
//! `vnext` is the next dart counterclockwise around the crossing and
//! `snext` the next dart along the curve. The basepoint dart is the
//! incoming half-edge right after the basepoint. An `over` line gives the
//! crossing that owns the dart its label and makes the passage through
//! that dart the over-strand; curves without `over` lines get labels in
//! first-visit order. Diagram input may also be a single `braid <strands>
//! <word>` line or an annotated Gauss code such as `O1 U2 O3 U1 O2 U3`.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use crate::diagram::KnotDiagram;
use crate::error::{MapError, ParseError};
use crate::map::{DartId, FaceAnchor, GaussCode, Label, Passage, Side, SphericalCurveMap};

pub fn write_curve(map: &SphericalCurveMap) -> String {
    write_with_over(map, None)
}

pub fn write_diagram(d: &KnotDiagram) -> String {
    write_with_over(d.map(), Some(d))
}

fn write_with_over(map: &SphericalCurveMap, d: Option<&KnotDiagram>) -> String {
    let mut out = String::new();
    writeln!(out, "curve {}", map.crossing_count()).unwrap();
    for dart in map.darts() {
        writeln!(
            out,
            "dart {} twin {} vnext {} snext {}",
            dart.id, dart.twin, dart.vertex_next, dart.strand_next
        )
        .unwrap();
    }
    if let Some(b) = map.basepoint() {
        writeln!(out, "basepoint {b}").unwrap();
    }
    match map.outer_anchor() {
        Some(FaceAnchor::Dart(x)) => writeln!(out, "outer {x}").unwrap(),
        Some(FaceAnchor::Circle(Side::Left)) => writeln!(out, "outer left").unwrap(),
        Some(FaceAnchor::Circle(Side::Right)) => writeln!(out, "outer right").unwrap(),
        None => {}
    }
    if let Some(d) = d {
        for label in map.labels() {
            writeln!(out, "over {label} {}", d.over_dart(label).expect("every crossing has an over passage")).unwrap();
        }
    }
    out
}

/// Non-blank lines with comments removed, paired with 1-based line numbers.
fn content_lines(text: &str) -> Vec<(usize, Vec<&str>)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").split_whitespace().collect::<Vec<_>>()))
        .filter(|(_, w)| !w.is_empty())
        .collect()
}

#[derive(Debug, Clone, Copy)]
struct RawDart {
    twin: DartId,
    vnext: DartId,
    snext: DartId,
}

struct RawCurve {
    darts: BTreeMap<DartId, RawDart>,
    basepoint: Option<(usize, DartId)>,
    outer: Option<(usize, String)>,
    over: Vec<(usize, Label, DartId)>,
}

fn number<T: std::str::FromStr>(line: usize, w: &str) -> Result<T, ParseError> {
    w.parse().map_err(|_| ParseError::at(line, format!("expected a number, found `{w}`")))
}

fn read_raw(lines: &[(usize, Vec<&str>)]) -> Result<RawCurve, ParseError> {
    let (first, header) = &lines[0];
    let n: usize = match header.as_slice() {
        ["curve", n] => number(*first, n)?,
        _ => return Err(ParseError::at(*first, "expected `curve <n>`")),
    };
    let mut raw = RawCurve { darts: BTreeMap::new(), basepoint: None, outer: None, over: Vec::new() };
    for (line, words) in &lines[1..] {
        let line = *line;
        match words.as_slice() {
            ["dart", id, "twin", t, "vnext", v, "snext", s] => {
                let id = number(line, id)?;
                let dart = RawDart { twin: number(line, t)?, vnext: number(line, v)?, snext: number(line, s)? };
                if raw.darts.insert(id, dart).is_some() {
                    return Err(ParseError::at(line, format!("dart {id} listed twice")));
                }
            }
            ["basepoint", b] if raw.basepoint.is_none() => raw.basepoint = Some((line, number(line, b)?)),
            ["outer", o] if raw.outer.is_none() => raw.outer = Some((line, o.to_string())),
            ["over", l, d] => raw.over.push((line, number(line, l)?, number(line, d)?)),
            _ => return Err(ParseError::at(line, format!("unexpected line `{}`", words.join(" ")))),
        }
    }
    if raw.darts.len() != 4 * n {
        return Err(ParseError::at(*first, format!("curve {n} needs {} darts, found {}", 4 * n, raw.darts.len())));
    }
    Ok(raw)
}

fn invalid(msg: impl Into<String>) -> ParseError {
    ParseError::Map(MapError::InvalidMap(msg.into()))
}

/// Rebuilds the traversal word from a dart table and checks that the
/// table is exactly the one the word induces. Returns the map and, for
/// every file dart, the dart it became.
fn assemble(raw: &RawCurve) -> Result<(SphericalCurveMap, HashMap<DartId, DartId>), ParseError> {
    let get = |d: DartId| raw.darts.get(&d).copied().ok_or(ParseError::Map(MapError::NoSuchDart(d)));
    if raw.darts.is_empty() {
        if let Some((line, _)) = raw.basepoint {
            return Err(ParseError::at(line, "the circle has no darts"));
        }
        return Ok((SphericalCurveMap::circle(), HashMap::new()));
    }
    let (_, base) = raw.basepoint.ok_or_else(|| invalid("missing basepoint"))?;
    let outgoing = |d: DartId| -> Result<bool, ParseError> {
        let x = get(d)?;
        Ok(x.snext == x.twin)
    };
    // walk the curve: incoming dart, outgoing dart, incoming dart, ...
    let mut ins = Vec::new();
    let mut outs = Vec::new();
    let mut d = base;
    loop {
        if outgoing(d)? {
            return Err(invalid(format!("dart {d} is reached as incoming but leaves its crossing")));
        }
        let o = get(d)?.snext;
        if !outgoing(o)? {
            return Err(invalid(format!("dart {o} follows an incoming dart but is not outgoing")));
        }
        ins.push(d);
        outs.push(o);
        d = get(o)?.snext;
        if d == base {
            break;
        }
        if ins.len() > raw.darts.len() {
            return Err(invalid("curve does not close up"));
        }
    }
    if 2 * ins.len() != raw.darts.len() {
        return Err(invalid("dart table has more than one component"));
    }
    let mut position = HashMap::new();
    for (k, (&i, &o)) in ins.iter().zip(&outs).enumerate() {
        if position.insert(i, 2 * k).is_some() || position.insert(o, 2 * k + 1).is_some() {
            return Err(invalid("curve visits a dart twice"));
        }
    }
    // crossings are the vnext orbits
    let mut vertex = HashMap::new();
    let mut vertices = 0;
    for &start in raw.darts.keys() {
        if vertex.contains_key(&start) {
            continue;
        }
        let mut x = start;
        for _ in 0..4 {
            vertex.insert(x, vertices);
            x = get(x)?.vnext;
        }
        if x != start {
            return Err(invalid(format!("crossing at dart {start} is not 4-valent")));
        }
        vertices += 1;
    }
    let mut labels: HashMap<usize, Label> = HashMap::new();
    for &(line, label, dart) in &raw.over {
        let v = *vertex.get(&dart).ok_or(ParseError::Map(MapError::NoSuchDart(dart)))?;
        if labels.insert(v, label).is_some() || labels.values().filter(|&&l| l == label).count() > 1 {
            return Err(ParseError::at(line, format!("crossing {label} given twice")));
        }
    }
    if !raw.over.is_empty() && labels.len() != vertices {
        return Err(invalid("some crossings have no `over` line"));
    }
    let mut passages = Vec::with_capacity(ins.len());
    for (&i, &o) in ins.iter().zip(&outs) {
        let v = vertex[&i];
        if vertex[&o] != v {
            return Err(invalid(format!("darts {i} and {o} pass through different crossings")));
        }
        let next = labels.len() as Label + 1;
        let label = *labels.entry(v).or_insert(next);
        passages.push(Passage { label, leftward: outgoing(get(o)?.vnext)? });
    }
    let map = SphericalCurveMap::from_passages(passages)?;
    for (&file, &ours) in &position {
        let x = get(file)?;
        let y = map.dart(ours);
        let same = |a: DartId, b: DartId| position.get(&a) == Some(&b);
        if !(same(x.twin, y.twin) && same(x.vnext, y.vertex_next) && same(x.snext, y.strand_next)) {
            return Err(invalid(format!("dart {file} does not match the rotation its curve induces")));
        }
    }
    Ok((map, position))
}

fn with_outer(map: SphericalCurveMap, raw: &RawCurve, position: &HashMap<DartId, DartId>) -> Result<SphericalCurveMap, ParseError> {
    let Some((line, o)) = &raw.outer else { return Ok(map) };
    let anchor = match o.as_str() {
        "left" if map.is_circle() => FaceAnchor::Circle(Side::Left),
        "right" if map.is_circle() => FaceAnchor::Circle(Side::Right),
        w => {
            let d: DartId = number(*line, w)?;
            FaceAnchor::Dart(*position.get(&d).ok_or(ParseError::Map(MapError::NoSuchDart(d)))?)
        }
    };
    Ok(map.with_outer(Some(anchor)))
}

/// Reads a curve file. `over` lines, if present, only fix the labels.
pub fn parse_curve(text: &str) -> Result<SphericalCurveMap, ParseError> {
    let lines = content_lines(text);
    if lines.is_empty() {
        return Err(ParseError::at(1, "empty input"));
    }
    let raw = read_raw(&lines)?;
    let (map, position) = assemble(&raw)?;
    with_outer(map, &raw, &position)
}

/// Reads a diagram file, a `braid` line or an annotated Gauss code.
pub fn parse_diagram(text: &str) -> Result<KnotDiagram, ParseError> {
    let lines = content_lines(text);
    let Some((first, words)) = lines.first() else {
        return Err(ParseError::at(1, "empty input"));
    };
    match words[0] {
        "curve" => {}
        "braid" => {
            if lines.len() > 1 {
                return Err(ParseError::at(lines[1].0, "braid input is a single line"));
            }
            let strands: usize = match words.get(1) {
                Some(w) => number(*first, w)?,
                None => return Err(ParseError::at(*first, "expected `braid <strands> <word>`")),
            };
            let word = words[2..].iter().map(|w| number(*first, w)).collect::<Result<Vec<i64>, _>>()?;
            return Ok(KnotDiagram::from_braid(&word, strands)?);
        }
        _ => {
            if lines.len() > 1 {
                return Err(ParseError::at(lines[1].0, "a Gauss code is a single line"));
            }
            let code: GaussCode = words.join(" ").parse()?;
            return Ok(KnotDiagram::from_gauss_code(&code)?);
        }
    }
    let raw = read_raw(&lines)?;
    let (map, position) = assemble(&raw)?;
    let map = with_outer(map, &raw, &position)?;
    if map.crossing_count() > 0 && raw.over.is_empty() {
        return Err(ParseError::Diagram(crate::error::DiagramError::MissingCrossing(map.labels()[0])));
    }
    let mut over = BTreeMap::new();
    for &(_, label, dart) in &raw.over {
        let p = SphericalCurveMap::passage_of_dart(position[&dart]);
        debug_assert_eq!(map.passages()[p].label, label);
        over.insert(label, p);
    }
    Ok(KnotDiagram::with_over_passages(map, &over)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::{dn_diagram, gamma_curve};

    #[test]
    fn round_trips() {
        for n in 2..5 {
            let d = dn_diagram(n).unwrap();
            let text = write_diagram(&d);
            let back = parse_diagram(&text).unwrap();
            assert_eq!(back, d);
            assert_eq!(write_diagram(&back), text);
            let g = gamma_curve(n).unwrap();
            assert_eq!(parse_curve(&write_curve(&g)).unwrap(), g.relabeled().0);
        }
        let t = KnotDiagram::trivial();
        assert_eq!(parse_diagram(&write_diagram(&t)).unwrap(), t);
        let c = SphericalCurveMap::circle().with_outer(Some(FaceAnchor::Circle(Side::Right)));
        assert_eq!(parse_curve(&write_curve(&c)).unwrap(), c);
    }

    #[test]
    fn renumbered_darts() {
        let d = dn_diagram(2).unwrap();
        let text = write_diagram(&d);
        // shift every dart id by 100
        let shifted: String = text
            .lines()
            .map(|l| {
                let w: Vec<String> = l
                    .split_whitespace()
                    .enumerate()
                    .map(|(i, w)| match (l.starts_with("over"), w.parse::<usize>()) {
                        (true, Ok(x)) if i == 2 => (x + 100).to_string(),
                        (false, Ok(x)) if !l.starts_with("curve") => (x + 100).to_string(),
                        _ => w.to_string(),
                    })
                    .collect();
                w.join(" ") + "\n"
            })
            .collect();
        assert_eq!(parse_diagram(&shifted).unwrap(), d);
    }

    #[test]
    fn other_inputs() {
        let b = parse_diagram("# D_2\nbraid 3 -1 -2 -1 2\n").unwrap();
        assert_eq!(b.crossing_count(), 4);
        let g = parse_diagram("O1 U2 O3 U1 O2 U3").unwrap();
        assert_eq!(g.crossing_count(), 3);
        assert!(parse_diagram("1 2 1 2").is_err());
    }

    #[test]
    fn rejects_bad_tables() {
        let d = dn_diagram(2).unwrap();
        let text = write_diagram(&d);
        assert!(matches!(parse_diagram("curve x"), Err(ParseError::Syntax { line: 1, .. })));
        let missing: String = text.lines().filter(|l| !l.starts_with("dart 3 ")).map(|l| format!("{l}\n")).collect();
        assert!(parse_diagram(&missing).is_err());
        let swapped = text.replacen("vnext", "vnext 0 #", 1);
        assert!(parse_diagram(&swapped).is_err());
        let no_over: String = text.lines().filter(|l| !l.starts_with("over")).map(|l| format!("{l}\n")).collect();
        assert!(parse_diagram(&no_over).is_err());
        assert!(parse_curve(&no_over).is_ok());
    }
}
