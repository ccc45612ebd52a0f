//! The line-oriented structure file format.
//!
//! ```text
//! # comment
//! elements: a b c
//! compose: a b -> c
//! star: a -> e        (optional, all-or-none)
//! E: e f              (optional, defaults to the star image)
//! ```
//!
//! Mapping files use `map: a -> x` lines plus `source:`/`target:` file
//! references. Tokens are separated by runs of spaces or tabs, `->` is a
//! mandatory literal, and names match `[A-Za-z0-9_{},|⊥]+`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use sgpd_core::{ElementId, RestrictionSemigroupoid, Semigroupoid, StarMap};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for ParseError {}

fn err(line: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        message: message.into(),
    }
}

fn valid_name(token: &str) -> bool {
    !token.is_empty()
        && token
            .chars()
            .all(|c| c.is_ascii_alphanumeric() || "_{},|⊥".contains(c))
}

/// The parsed sections of a structure or mapping file, before resolution.
#[derive(Debug, Default, Clone)]
pub struct DocumentModel {
    pub elements: Vec<String>,
    pub compose: Vec<(usize, String, String, String)>,
    pub star: Vec<(usize, String, String)>,
    pub e_line: Option<(usize, Vec<String>)>,
    pub maps: Vec<(usize, String, String)>,
    pub source: Option<String>,
    pub target: Option<String>,
}

impl DocumentModel {
    pub fn is_mapping(&self) -> bool {
        !self.maps.is_empty() || self.source.is_some() || self.target.is_some()
    }
}

pub fn parse(text: &str) -> Result<DocumentModel, ParseError> {
    let mut doc = DocumentModel::default();
    let mut seen_elements = false;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        };
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let (keyword, rest) = line
            .split_once(':')
            .ok_or_else(|| err(line_no, "expected `keyword: ...`"))?;
        let tokens: Vec<&str> = rest.split_whitespace().collect();
        match keyword.trim() {
            "elements" => {
                if seen_elements {
                    return Err(err(line_no, "duplicate elements line"));
                }
                seen_elements = true;
                for t in &tokens {
                    if !valid_name(t) {
                        return Err(err(line_no, format!("invalid element name `{t}`")));
                    }
                }
                doc.elements = tokens.iter().map(|t| t.to_string()).collect();
            }
            "compose" => {
                let [a, b, arrow, c] = tokens[..] else {
                    return Err(err(line_no, "expected `compose: a b -> c`"));
                };
                if arrow != "->" {
                    return Err(err(line_no, "expected `->` between pair and value"));
                }
                doc.compose
                    .push((line_no, a.to_string(), b.to_string(), c.to_string()));
            }
            "star" => {
                let [a, arrow, e] = tokens[..] else {
                    return Err(err(line_no, "expected `star: a -> e`"));
                };
                if arrow != "->" {
                    return Err(err(line_no, "expected `->` in star line"));
                }
                doc.star.push((line_no, a.to_string(), e.to_string()));
            }
            "E" => {
                if doc.e_line.is_some() {
                    return Err(err(line_no, "duplicate E line"));
                }
                doc.e_line = Some((line_no, tokens.iter().map(|t| t.to_string()).collect()));
            }
            "map" => {
                let [a, arrow, x] = tokens[..] else {
                    return Err(err(line_no, "expected `map: a -> x`"));
                };
                if arrow != "->" {
                    return Err(err(line_no, "expected `->` in map line"));
                }
                doc.maps.push((line_no, a.to_string(), x.to_string()));
            }
            "source" => {
                if doc.source.is_some() {
                    return Err(err(line_no, "duplicate source line"));
                }
                doc.source = Some(rest.trim().to_string());
            }
            "target" => {
                if doc.target.is_some() {
                    return Err(err(line_no, "duplicate target line"));
                }
                doc.target = Some(rest.trim().to_string());
            }
            other => {
                return Err(err(line_no, format!("unknown section keyword `{other}`")));
            }
        }
    }
    Ok(doc)
}

/// A structure file resolved into core values.
#[derive(Debug, Clone)]
pub enum BuiltStructure {
    Plain(Semigroupoid),
    Restriction(RestrictionSemigroupoid),
}

impl BuiltStructure {
    pub fn base(&self) -> &Semigroupoid {
        match self {
            BuiltStructure::Plain(s) => s,
            BuiltStructure::Restriction(rs) => rs.base(),
        }
    }
}

/// Resolves names and assembles the semigroupoid (plus star map and
/// distinct set when star lines are present).
pub fn build(doc: &DocumentModel) -> Result<BuiltStructure, ParseError> {
    if doc.is_mapping() {
        return Err(err(0, "expected a structure file, found mapping sections"));
    }
    let names = &doc.elements;
    let lookup = |line: usize, token: &str| -> Result<usize, ParseError> {
        names
            .iter()
            .position(|n| n == token)
            .ok_or_else(|| err(line, format!("unknown element `{token}`")))
    };
    let mut uniq = BTreeSet::new();
    for name in names {
        if !uniq.insert(name) {
            return Err(err(1, format!("duplicate name `{name}`")));
        }
    }

    let mut table = BTreeMap::new();
    for (line, a, b, c) in &doc.compose {
        let key = (lookup(*line, a)?, lookup(*line, b)?);
        let value = lookup(*line, c)?;
        if table.insert(key, value).is_some() {
            return Err(err(*line, format!("duplicate compose key `{a} {b}`")));
        }
    }
    let base = Semigroupoid::from_entries(names.clone(), table.iter().map(|(&k, &v)| (k, v)))
        .map_err(|e| err(0, e.to_string()))?;

    if doc.star.is_empty() {
        if let Some((line, _)) = &doc.e_line {
            return Err(err(*line, "E line requires star lines"));
        }
        return Ok(BuiltStructure::Plain(base));
    }

    let mut star = vec![None; names.len()];
    for (line, a, e) in &doc.star {
        let slot = lookup(*line, a)?;
        if star[slot].is_some() {
            return Err(err(*line, format!("duplicate star key `{a}`")));
        }
        star[slot] = Some(ElementId::new(lookup(*line, e)?));
    }
    let star: Vec<ElementId> = star
        .into_iter()
        .enumerate()
        .map(|(i, v)| v.ok_or_else(|| err(0, format!("star line missing for `{}`", names[i]))))
        .collect::<Result<_, _>>()?;
    let star = StarMap::new(star);

    let rs = match &doc.e_line {
        Some((line, tokens)) => {
            let mut e_set = BTreeSet::new();
            for t in tokens {
                e_set.insert(ElementId::new(lookup(*line, t)?));
            }
            RestrictionSemigroupoid::new(base, star, e_set).map_err(|e| err(0, e.to_string()))?
        }
        None => RestrictionSemigroupoid::with_star_image(base, star)
            .map_err(|e| err(0, e.to_string()))?,
    };
    Ok(BuiltStructure::Restriction(rs))
}

/// Resolves a mapping file against already-built source and target
/// structures.
pub fn build_mapping(
    doc: &DocumentModel,
    source: &Semigroupoid,
    target: &Semigroupoid,
) -> Result<sgpd_core::ElementMapping, ParseError> {
    let mut map = vec![None; source.len()];
    for (line, a, x) in &doc.maps {
        let from = source
            .id_of(a)
            .ok_or_else(|| err(*line, format!("unknown source element `{a}`")))?;
        let to = target
            .id_of(x)
            .ok_or_else(|| err(*line, format!("unknown target element `{x}`")))?;
        if map[from.index()].is_some() {
            return Err(err(*line, format!("duplicate map key `{a}`")));
        }
        map[from.index()] = Some(to);
    }
    let map: Vec<ElementId> = map
        .into_iter()
        .enumerate()
        .map(|(i, v)| {
            v.ok_or_else(|| {
                err(
                    0,
                    format!("map line missing for `{}`", source.name(ElementId::new(i))),
                )
            })
        })
        .collect::<Result<_, _>>()?;
    sgpd_core::ElementMapping::new(source.len(), target.len(), map)
        .map_err(|e| err(0, e.to_string()))
}

/// Canonical serialization: elements, compose lines sorted by pair, star
/// lines in element order, then the distinct set.
pub fn emit_plain(s: &Semigroupoid) -> String {
    let mut out = String::new();
    out.push_str("elements:");
    for name in s.names() {
        out.push(' ');
        out.push_str(name);
    }
    out.push('\n');
    for (a, b) in s.composable_pairs() {
        let v = s.product(a, b).expect("validated table");
        out.push_str(&format!(
            "compose: {} {} -> {}\n",
            s.name(a),
            s.name(b),
            s.name(v)
        ));
    }
    out
}

pub fn emit_restriction(rs: &RestrictionSemigroupoid) -> String {
    let mut out = emit_plain(rs.base());
    for s in rs.element_ids() {
        out.push_str(&format!(
            "star: {} -> {}\n",
            rs.name(s),
            rs.name(rs.star_of(s))
        ));
    }
    out.push_str("E:");
    for &e in rs.distinct_set() {
        out.push(' ');
        out.push_str(rs.name(e));
    }
    out.push('\n');
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const SL2: &str = "\
# two-element meet semilattice
elements: e f
compose: e e -> e
compose: e f -> e
compose: f e -> e
compose: f f -> f
star: e -> e
star: f -> f
E: e f
";

    #[test]
    fn parses_and_rebuilds_the_semilattice() {
        let doc = parse(SL2).unwrap();
        let built = build(&doc).unwrap();
        let BuiltStructure::Restriction(rs) = built else {
            panic!("star lines must build a restriction structure");
        };
        assert_eq!(rs, sgpd_core::fixtures::sl2());
        // canonical round trip
        let emitted = emit_restriction(&rs);
        let again = build(&parse(&emitted).unwrap()).unwrap();
        let BuiltStructure::Restriction(rs2) = again else {
            panic!()
        };
        assert_eq!(rs, rs2);
        assert_eq!(emit_restriction(&rs2), emitted);
    }

    #[test]
    fn reports_unknown_elements_with_line_numbers() {
        let text = "elements: a b\ncompose: a b -> z\n";
        let e = build(&parse(text).unwrap()).unwrap_err();
        assert_eq!(e.line, 2);
        assert!(e.message.contains("unknown element `z`"));
    }

    #[test]
    fn rejects_duplicates_and_unknown_keywords() {
        let dup = "elements: a\ncompose: a a -> a\ncompose: a a -> a\n";
        let e = build(&parse(dup).unwrap()).unwrap_err();
        assert!(e.message.contains("duplicate compose key"));

        let unknown = "elements: a\nfoo: bar\n";
        assert!(parse(unknown)
            .unwrap_err()
            .message
            .contains("unknown section"));

        let partial_star = "elements: a b\ncompose: a a -> a\nstar: a -> a\n";
        let e = build(&parse(partial_star).unwrap()).unwrap_err();
        assert!(e.message.contains("star line missing"));
    }
}
